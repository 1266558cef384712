//! Formal sums: sparse finite linear combinations of opaque generator
//! symbols with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{ExactScalar, ScalarError};

/// An interned-by-content generator symbol. Symbols are totally ordered by
/// their canonical text, which fixes printing and echelon pivoting.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub String);

impl Sym {
    pub fn new(s: impl Into<String>) -> Self {
        Sym(s.into())
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A sparse linear combination of symbols of type `K` with nonzero exact
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSum<K: Ord + Clone = Sym> {
    terms: BTreeMap<K, ExactScalar>,
}

impl<K: Ord + Clone> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: ExactScalar) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff).expect("single term");
        s
    }

    pub fn gen(key: K) -> Self {
        Self::single(key, ExactScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> ExactScalar {
        self.terms.get(key).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// First (smallest) term, used as the pivot in echelon reduction.
    pub fn leading(&self) -> Option<(&K, &ExactScalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: K, coeff: ExactScalar) -> Result<(), ScalarError> {
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff)?;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FormalSum {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Result<Self, ScalarError> {
        if c.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for (k, x) in self.iter() {
            out.add_term(k.clone(), x.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> FormalSum<L> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c.clone()).expect("map_keys");
        }
        out
    }

    /// Apply a linear substitution to every symbol.
    pub fn bind<L: Ord + Clone>(
        &self,
        f: impl Fn(&K) -> Result<FormalSum<L>, ScalarError>,
    ) -> Result<FormalSum<L>, ScalarError> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            let image = f(k)?;
            for (l, d) in image.iter() {
                out.add_term(l.clone(), c.mul(d)?)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FormalSum<Sym> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.iter() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "[{k}]")?;
            } else {
                write!(f, "({c})·[{k}]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_cancel() {
        let a = Sym::new("a");
        let mut s = FormalSum::single(a.clone(), ExactScalar::from_int(2));
        s.add_term(a.clone(), ExactScalar::from_int(-2)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn bind_substitutes_linearly() {
        let a = Sym::new("a");
        let b = Sym::new("b");
        let s = FormalSum::single(a.clone(), ExactScalar::from_int(3));
        let t = s
            .bind(|_| {
                Ok(FormalSum::single(b.clone(), ExactScalar::from_int(2)))
            })
            .unwrap();
        assert_eq!(t.coeff(&b), ExactScalar::from_int(6));
    }
}
