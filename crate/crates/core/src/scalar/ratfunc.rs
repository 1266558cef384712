//! Multivariate rational functions over Q in named variables.
//!
//! Fractions are kept reduced (numerator and denominator coprime, the
//! denominator integer-primitive with positive leading coefficient), so
//! equality is representation equality.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use super::mpoly::MPoly;
use super::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    vars: Vec<String>,
    num: MPoly,
    den: MPoly,
}

pub fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.sort();
    out
}

impl RatFunc {
    pub fn new(vars: Vec<String>, num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(vars, num, den))
    }

    fn reduced(vars: Vec<String>, num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: MPoly::one(vars.len()),
                vars,
            };
        }
        let g = num.gcd(&den);
        let mut num = num.divexact(&g).unwrap();
        let mut den = den.divexact(&g).unwrap();
        let (dc, dp) = den.integer_primitive();
        den = dp;
        num = num.scale(&dc.recip());
        RatFunc { vars, num, den }
    }

    pub fn constant(vars: Vec<String>, c: BigRational) -> Self {
        let n = vars.len();
        RatFunc {
            num: MPoly::constant(n, c),
            den: MPoly::one(n),
            vars,
        }
    }

    pub fn var(name: &str) -> Self {
        RatFunc {
            num: MPoly::var(1, 0),
            den: MPoly::one(1),
            vars: vec![name.to_string()],
        }
    }

    pub fn var_in(vars: Vec<String>, name: &str) -> Option<Self> {
        let idx = vars.iter().position(|v| v == name)?;
        let n = vars.len();
        Some(RatFunc {
            num: MPoly::var(n, idx),
            den: MPoly::one(n),
            vars,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }

    /// Re-embed in a superset variable list (sorted).
    pub fn extend_vars(&self, target: &[String]) -> RatFunc {
        if self.vars == target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v).expect("superset"))
            .collect();
        let remap = |p: &MPoly| -> MPoly {
            MPoly::from_terms(
                target.len(),
                p.terms().map(|(e, c)| {
                    let mut e2 = vec![0u32; target.len()];
                    for (i, &x) in e.iter().enumerate() {
                        e2[map[i]] = x;
                    }
                    (e2, c.clone())
                }),
            )
        };
        RatFunc {
            vars: target.to_vec(),
            num: remap(&self.num),
            den: remap(&self.den),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(self.vars.clone(), num, den)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            vars: self.vars.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        Self::reduced(
            self.vars.clone(),
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(
            self.vars.clone(),
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::constant(self.vars.clone(), BigRational::zero());
        }
        RatFunc {
            vars: self.vars.clone(),
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Tie-break sign from the numerator's lex-leading coefficient.
    pub fn lex_sign(&self) -> i32 {
        use num_traits::Signed;
        let (c, _) = self.num.integer_primitive();
        if c.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.display_with(&self.vars);
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({})", self.den.display_with(&self.vars))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn t() -> RatFunc {
        RatFunc::var("t")
    }

    #[test]
    fn cancel_factorization() {
        // (t^2 - 1)/(t - 1) = t + 1
        let one = RatFunc::constant(vec!["t".into()], BigRational::one());
        let t2m1 = t().mul(&t()).add(&one.neg());
        let tm1 = t().add(&one.neg());
        let q = t2m1.mul(&tm1.inv().unwrap());
        let tp1 = t().add(&one);
        assert_eq!(q, tp1);
    }

    #[test]
    fn reduced_invariants() {
        // -t/2 over (t): denominator normalized primitive positive
        let half = RatFunc::constant(vec!["t".into()], BigRational::new(BigInt::from(-1), BigInt::from(2)));
        let x = t().mul(&half);
        assert_eq!(x.denominator().constant_term(), BigRational::one());
    }
}
