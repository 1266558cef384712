//! Real quadratic towers Q(sqrt(d1), ..., sqrt(dk)) with exact arithmetic.
//!
//! Radicands are kept as square-free integers, sorted and multiplicatively
//! independent modulo squares, so a field has one canonical description and
//! degree 2^k. Elements are coordinate vectors over the basis of subset
//! products of the adjoined roots. Towers whose radicands are all positive
//! carry the real embedding fixing every adjoined root positive; adjoining a
//! negative radicand is allowed but forfeits sign and embedding queries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use super::embed::DyadicInterval;
use super::factor::{int_squarefree_decompose, rational_sqrt};
use super::ScalarError;

/// A finite tower of quadratic extensions of the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TowerField {
    /// Square-free integer radicands, sorted by (|d|, sign), pairwise
    /// multiplicatively independent modulo squares.
    radicands: Vec<BigInt>,
}

impl TowerField {
    pub fn rationals() -> Self {
        TowerField { radicands: vec![] }
    }

    pub fn radicands(&self) -> &[BigInt] {
        &self.radicands
    }

    pub fn degree_log2(&self) -> usize {
        self.radicands.len()
    }

    /// True when all radicands are positive, i.e. the canonical real
    /// embedding (every adjoined root positive) exists.
    pub fn is_real(&self) -> bool {
        self.radicands.iter().all(|d| d.is_positive())
    }

    fn dim(&self) -> usize {
        1usize << self.radicands.len()
    }

    /// Express sqrt(r) over this tower, growing it by at most one radicand.
    ///
    /// Returns the containing field and a witness element squaring to `r`.
    /// The witness is the positive root on real towers, lex-positive
    /// otherwise.
    pub fn adjoin_rational_sqrt(&self, r: &BigRational) -> (TowerField, TowerElement) {
        if r.is_zero() {
            return (self.clone(), TowerElement::zero(self.clone()));
        }
        // sqrt(m/n) = sqrt(m*n)/n
        let w = r.numer() * r.denom();
        let (s, core) = int_squarefree_decompose(&w);
        let coeff = BigRational::new(s, r.denom().clone());
        if core.is_one() {
            return (
                self.clone(),
                TowerElement::from_rational(self.clone(), coeff),
            );
        }
        // Try to express sqrt(core) as a subset product of existing roots.
        let k = self.radicands.len();
        for mask in 1usize..(1 << k) {
            let mut prod = BigInt::one();
            for (i, d) in self.radicands.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod *= d;
                }
            }
            let (sq, rest) = int_squarefree_decompose(&prod);
            if rest == core {
                // prod = sq^2 * core, so sqrt(core) = (1/sq) * prod of roots
                let mut el = TowerElement::zero(self.clone());
                el.coords[mask] = &coeff / BigRational::from_integer(sq);
                return (self.clone(), el);
            }
        }
        // Genuinely new radicand: insert in sorted position.
        let keyed = |d: &BigInt| (d.magnitude().clone(), d.is_negative());
        let pos = self
            .radicands
            .iter()
            .position(|d| keyed(d) > keyed(&core))
            .unwrap_or(k);
        let mut radicands = self.radicands.clone();
        radicands.insert(pos, core);
        let field = TowerField { radicands };
        let mut root = TowerElement::zero(field.clone());
        root.coords[1 << pos] = coeff;
        (field, root)
    }

    /// True if this field's radicand list is a subset of `other`'s.
    pub fn subfield_of(&self, other: &TowerField) -> bool {
        self.radicands.iter().all(|d| other.radicands.contains(d))
    }
}

impl fmt::Display for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicands.is_empty() {
            return write!(f, "Q");
        }
        let list: Vec<String> = self.radicands.iter().map(|d| d.to_string()).collect();
        write!(f, "Q(sqrt {})", list.join(", sqrt "))
    }
}

/// An element of a [`TowerField`], as coordinates over the subset-product
/// basis: coordinate at bitmask S multiplies the product of sqrt(d_i) for
/// i in S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElement {
    field: TowerField,
    coords: Vec<BigRational>,
}

impl TowerElement {
    pub fn zero(field: TowerField) -> Self {
        let dim = field.dim();
        TowerElement {
            field,
            coords: vec![BigRational::zero(); dim],
        }
    }

    pub fn from_rational(field: TowerField, r: BigRational) -> Self {
        let mut el = Self::zero(field);
        el.coords[0] = r;
        el
    }

    pub fn field(&self) -> &TowerField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        TowerElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        TowerElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TowerElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let dim = self.field.dim();
        let mut coords = vec![BigRational::zero(); dim];
        for (s, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // basis_S * basis_T = prod_{i in S&T} d_i * basis_{S^T}
                let mut factor = BigInt::one();
                let common = s & t;
                for (i, d) in self.field.radicands.iter().enumerate() {
                    if common & (1 << i) != 0 {
                        factor *= d;
                    }
                }
                coords[s ^ t] += a * b * BigRational::from_integer(factor);
            }
        }
        TowerElement {
            field: self.field.clone(),
            coords,
        }
    }

    /// Drop the last radicand, splitting x = a + b*sqrt(d_last) with a, b in
    /// the subtower.
    fn split_top(&self) -> (TowerElement, TowerElement, BigInt) {
        let k = self.field.radicands.len();
        assert!(k > 0);
        let sub = TowerField {
            radicands: self.field.radicands[..k - 1].to_vec(),
        };
        let half = 1usize << (k - 1);
        let a = TowerElement {
            field: sub.clone(),
            coords: self.coords[..half].to_vec(),
        };
        let b = TowerElement {
            field: sub,
            coords: self.coords[half..].to_vec(),
        };
        (a, b, self.field.radicands[k - 1].clone())
    }

    fn join_top(field: &TowerField, a: &TowerElement, b: &TowerElement) -> TowerElement {
        let mut coords = a.coords.clone();
        coords.extend(b.coords.iter().cloned());
        TowerElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.field.radicands.is_empty() {
            return Ok(TowerElement::from_rational(
                self.field.clone(),
                self.coords[0].recip(),
            ));
        }
        let (a, b, d) = self.split_top();
        if b.is_zero() {
            let ai = a.inv()?;
            return Ok(Self::join_top(&self.field, &ai, &TowerElement::zero(ai.field.clone())));
        }
        // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d); the denominator is
        // nonzero because sqrt(d) is independent of the subtower.
        let denom = a.mul(&a).add(&b.mul(&b).scale(&-BigRational::from_integer(d)));
        let di = denom.inv()?;
        let na = a.mul(&di);
        let nb = b.mul(&di).neg();
        Ok(Self::join_top(&self.field, &na, &nb))
    }

    /// Sign under the real embedding (all adjoined roots positive).
    pub fn sign(&self) -> Result<i32, ScalarError> {
        if !self.field.is_real() {
            return Err(ScalarError::NotEmbeddable);
        }
        Ok(self.sign_unchecked())
    }

    fn sign_unchecked(&self) -> i32 {
        if self.field.radicands.is_empty() {
            let c = &self.coords[0];
            return if c.is_zero() {
                0
            } else if c.is_positive() {
                1
            } else {
                -1
            };
        }
        let (a, b, d) = self.split_top();
        let sa = a.sign_unchecked();
        let sb = b.sign_unchecked();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // mixed signs: compare a^2 against b^2 d
        let diff = a.mul(&a).add(&b.mul(&b).scale(&-BigRational::from_integer(d)));
        sa * diff.sign_unchecked()
    }

    /// Deterministic tie-break sign: the sign of the first nonzero
    /// coordinate (+1 for zero). Not the real sign.
    pub fn lex_sign(&self) -> i32 {
        for c in &self.coords {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        1
    }

    /// Exact square root within the same tower, if one exists.
    ///
    /// The returned root is positive on real towers and lex-positive
    /// otherwise.
    pub fn sqrt_in_tower(&self) -> Option<TowerElement> {
        let root = self.sqrt_search()?;
        debug_assert_eq!(root.mul(&root), *self);
        let flip = if self.field.is_real() {
            root.sign_unchecked() < 0
        } else {
            root.lex_sign() < 0
        };
        Some(if flip { root.neg() } else { root })
    }

    fn sqrt_search(&self) -> Option<TowerElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.field.radicands.is_empty() {
            return rational_sqrt(&self.coords[0])
                .map(|r| TowerElement::from_rational(self.field.clone(), r));
        }
        let (y0, y1, d) = self.split_top();
        let dq = BigRational::from_integer(d.clone());
        if y1.is_zero() {
            // x = a with a^2 = y0, or x = b sqrt(d) with b^2 = y0/d
            if let Some(a) = y0.sqrt_search() {
                let zero = TowerElement::zero(a.field.clone());
                return Some(Self::join_top(&self.field, &a, &zero));
            }
            let quot = y0.scale(&dq.recip());
            if let Some(b) = quot.sqrt_search() {
                let zero = TowerElement::zero(b.field.clone());
                return Some(Self::join_top(&self.field, &zero, &b));
            }
            return None;
        }
        // x = a + b sqrt(d), a,b != 0: a^2 = (y0 +- n)/2 with
        // n^2 = y0^2 - y1^2 d, and b = y1/(2a).
        let n2 = y0.mul(&y0).add(&y1.mul(&y1).scale(&-dq.clone()));
        let n = n2.sqrt_search()?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for cand in [y0.add(&n).scale(&half), y0.add(&n.neg()).scale(&half)] {
            if cand.is_zero() {
                continue;
            }
            if let Some(a) = cand.sqrt_search() {
                if a.is_zero() {
                    continue;
                }
                if let Ok(ai) = a.inv() {
                    let b = y1.mul(&ai).scale(&half);
                    let x = Self::join_top(&self.field, &a, &b);
                    if x.mul(&x) == *self {
                        return Some(x);
                    }
                }
            }
        }
        None
    }

    /// Interval-certified real value with width below 2^(-precision).
    pub fn embed(&self, precision: u32) -> Result<DyadicInterval, ScalarError> {
        if !self.field.is_real() {
            return Err(ScalarError::NotEmbeddable);
        }
        // guard bits: products of up to 2^k roots plus summation slack
        let work = precision + 16 + 4 * self.field.radicands.len() as u32;
        let roots: Vec<DyadicInterval> = self
            .field
            .radicands
            .iter()
            .map(|d| DyadicInterval::sqrt_of_int(d, work))
            .collect::<Result<_, _>>()?;
        let mut acc = DyadicInterval::zero(work);
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = DyadicInterval::from_rational(c, work);
            for (i, r) in roots.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    term = term.mul(r);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc.round_to(precision))
    }

    /// Rebuild the element over the canonical minimal tower containing it.
    ///
    /// The canonical field is derived from the F2-span (over prime
    /// exponents mod squares, with the sign as an extra coordinate) of the
    /// radicand products actually used by nonzero coordinates, taken in
    /// reduced echelon form. Two equal values in different tower
    /// presentations canonicalize to identical representations.
    pub fn canonical_minimal(&self) -> TowerElement {
        use super::factor::factor_biguint;
        if let Some(r) = self.as_rational() {
            return TowerElement::from_rational(TowerField::rationals(), r);
        }
        // prime-exponent vectors (mod 2) of each radicand
        let mut primes: Vec<BigInt> = Vec::new();
        let rad_vecs: Vec<(bool, Vec<usize>)> = self
            .field
            .radicands
            .iter()
            .map(|d| {
                let neg = d.is_negative();
                let mut idxs = Vec::new();
                for (p, e) in factor_biguint(d.magnitude()) {
                    if e % 2 == 1 {
                        let p = BigInt::from(p);
                        let idx = match primes.iter().position(|q| *q == p) {
                            Some(i) => i,
                            None => {
                                primes.push(p);
                                primes.len() - 1
                            }
                        };
                        idxs.push(idx);
                    }
                }
                (neg, idxs)
            })
            .collect();
        let np = primes.len();
        let vec_of_mask = |mask: usize| -> Vec<bool> {
            // coordinate 0: sign; 1..: primes
            let mut v = vec![false; np + 1];
            for (i, (neg, idxs)) in rad_vecs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    if *neg {
                        v[0] ^= true;
                    }
                    for &j in idxs {
                        v[j + 1] ^= true;
                    }
                }
            }
            v
        };
        let used: Vec<usize> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| m)
            .collect();
        // F2 reduced echelon basis of the span of the used vectors
        let mut basis: Vec<Vec<bool>> = Vec::new();
        for &m in &used {
            if m == 0 {
                continue;
            }
            let mut v = vec_of_mask(m);
            for b in &basis {
                let pivot = b.iter().position(|&x| x).unwrap();
                if v[pivot] {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            if v.iter().any(|&x| x) {
                basis.push(v);
                basis.sort_by_key(|b| b.iter().position(|&x| x).unwrap());
            }
        }
        // back-substitution for a unique reduced basis
        for i in (0..basis.len()).rev() {
            let pivot = basis[i].iter().position(|&x| x).unwrap();
            for j in 0..i {
                if basis[j][pivot] {
                    let (lower, upper) = basis.split_at_mut(i);
                    for (x, y) in lower[j].iter_mut().zip(upper[0].iter()) {
                        *x ^= y;
                    }
                }
            }
        }
        // canonical radicands from the basis vectors
        let radicand_of = |v: &Vec<bool>| -> BigInt {
            let mut d = BigInt::one();
            if v[0] {
                d = -d;
            }
            for (j, p) in primes.iter().enumerate() {
                if v[j + 1] {
                    d *= p;
                }
            }
            d
        };
        let mut target = TowerField::rationals();
        let mut basis_rads: Vec<BigInt> = basis.iter().map(radicand_of).collect();
        basis_rads.sort_by_key(|d| (d.magnitude().clone(), d.is_negative()));
        for d in &basis_rads {
            let (f2, _) = target.adjoin_rational_sqrt(&BigRational::from_integer(d.clone()));
            target = f2;
        }
        // express each used mask's root product in the target field
        let mut out = TowerElement::zero(target.clone());
        for &m in &used {
            let c = self.coords[m].clone();
            if m == 0 {
                out.coords[0] += c;
                continue;
            }
            // the radicand product for this mask
            let mut prod = BigInt::one();
            for (i, d) in self.field.radicands.iter().enumerate() {
                if m & (1 << i) != 0 {
                    prod *= d;
                }
            }
            let (s, core) = super::factor::int_squarefree_decompose(&prod);
            // sqrt(core) in the target tower (must exist by construction)
            let (f_same, root) = target.adjoin_rational_sqrt(&BigRational::from_integer(core));
            debug_assert_eq!(f_same, target, "canonical field misses a root");
            let term = root.scale(&(BigRational::from_integer(s) * c));
            out = out.add(&term);
        }
        out
    }

    /// Embed into a larger tower whose radicands include this field's.
    pub fn lift_to(&self, target: &TowerField) -> TowerElement {
        assert!(self.field.subfield_of(target));
        let positions: Vec<usize> = self
            .field
            .radicands
            .iter()
            .map(|d| target.radicands.iter().position(|e| e == d).unwrap())
            .collect();
        let mut out = TowerElement::zero(target.clone());
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut tmask = 0usize;
            for (i, p) in positions.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    tmask |= 1 << p;
                }
            }
            out.coords[tmask] += c;
        }
        out
    }

    /// Bring two elements of possibly different towers into one common
    /// tower (the smallest containing both).
    pub fn merge_pair(a: TowerElement, b: TowerElement) -> Result<(TowerElement, TowerElement), ScalarError> {
        if a.field == b.field {
            return Ok((a, b));
        }
        if a.field.subfield_of(&b.field) {
            let a2 = a.lift_to(&b.field);
            return Ok((a2, b));
        }
        if b.field.subfield_of(&a.field) {
            let b2 = b.lift_to(&a.field);
            return Ok((a, b2));
        }
        // Grow a's field by b's radicands, collecting root expressions.
        let mut field = a.field.clone();
        let mut root_exprs = Vec::new();
        for d in &b.field.radicands {
            let (f2, root) = field.adjoin_rational_sqrt(&BigRational::from_integer(d.clone()));
            field = f2;
            root_exprs.push(root);
        }
        let root_exprs: Vec<TowerElement> =
            root_exprs.into_iter().map(|r| r.lift_to(&field)).collect();
        let a2 = a.lift_to(&field);
        let mut b2 = TowerElement::zero(field.clone());
        for (mask, c) in b.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = TowerElement::from_rational(field.clone(), c.clone());
            for (i, root) in root_exprs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    term = term.mul(root);
                }
            }
            b2 = b2.add(&term);
        }
        Ok((a2, b2))
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{c}")?;
            } else {
                let mut parts = Vec::new();
                for (i, d) in self.field.radicands.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        parts.push(format!("sqrt({d})"));
                    }
                }
                if c.is_one() {
                    write!(f, "{}", parts.join("*"))?;
                } else {
                    write!(f, "{}*{}", c, parts.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

/// Convenience: numeric f64 view for diagnostics only (never for decisions).
pub fn approx_f64(el: &TowerElement) -> Option<f64> {
    el.embed(80).ok().and_then(|iv| iv.midpoint_f64().to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn tower_with(rads: &[i64]) -> (TowerField, Vec<TowerElement>) {
        let mut f = TowerField::rationals();
        let mut roots = Vec::new();
        for &d in rads {
            let (f2, r) = f.adjoin_rational_sqrt(&rq(d, 1));
            f = f2;
            roots.push(r);
        }
        let roots = roots.into_iter().map(|r| r.lift_to(&f)).collect();
        (f, roots)
    }

    #[test]
    fn sqrt2_times_sqrt3_is_sqrt6() {
        let (f, roots) = tower_with(&[2, 3]);
        let prod = roots[0].mul(&roots[1]);
        let (f6, r6) = f.adjoin_rational_sqrt(&rq(6, 1));
        // sqrt(6) is already a subset product: field unchanged
        assert_eq!(f6, f);
        assert_eq!(prod, r6);
    }

    #[test]
    fn inverse_roundtrip() {
        let (_, roots) = tower_with(&[2, 5]);
        let x = roots[0]
            .add(&roots[1].scale(&rq(3, 7)))
            .add(&TowerElement::from_rational(roots[0].field().clone(), rq(-2, 3)));
        let xi = x.inv().unwrap();
        let prod = x.mul(&xi);
        assert_eq!(prod.as_rational(), Some(rq(1, 1)));
    }

    #[test]
    fn sign_of_mixed_element() {
        let (_, roots) = tower_with(&[2]);
        // 3 - 2*sqrt(2) > 0, 1 - sqrt(2) < 0
        let f = roots[0].field().clone();
        let a = TowerElement::from_rational(f.clone(), rq(3, 1)).add(&roots[0].scale(&rq(-2, 1)));
        assert_eq!(a.sign().unwrap(), 1);
        let b = TowerElement::from_rational(f, rq(1, 1)).add(&roots[0].neg());
        assert_eq!(b.sign().unwrap(), -1);
    }

    #[test]
    fn sqrt_detection_nested() {
        let (f, roots) = tower_with(&[2]);
        // (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
        let x = TowerElement::from_rational(f, rq(1, 1)).add(&roots[0].clone());
        let sq = x.mul(&x);
        let back = sq.sqrt_in_tower().expect("is a square");
        assert_eq!(back, x);
        // 2 is a square in the tower, witness sqrt(2)
        let two = TowerElement::from_rational(roots[0].field().clone(), rq(2, 1));
        assert_eq!(two.sqrt_in_tower().unwrap(), roots[0]);
        // 3 is not a square in Q(sqrt 2)
        let three = TowerElement::from_rational(roots[0].field().clone(), rq(3, 1));
        assert!(three.sqrt_in_tower().is_none());
    }

    #[test]
    fn merge_dependent_radicands() {
        let (_, r6) = tower_with(&[6]);
        let (_, r23) = tower_with(&[2, 3]);
        let x = r6[0].clone(); // sqrt(6)
        let y = r23[0].mul(&r23[1]); // sqrt(2)*sqrt(3)
        let (x2, y2) = TowerElement::merge_pair(x, y).unwrap();
        assert_eq!(x2, y2);
        // merged field must not contain a redundant radicand
        assert!(x2.field().degree_log2() <= 2);
    }

    #[test]
    fn embed_sqrt2() {
        let (_, roots) = tower_with(&[2]);
        let iv = roots[0].embed(128).unwrap();
        assert!(iv.width_le_pow2(-128));
        let lo = iv.lo_f64();
        assert!((lo - 1.4142135623730951).abs() < 1e-12);
    }
}
