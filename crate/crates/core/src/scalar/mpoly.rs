//! Sparse multivariate polynomials over Q with exact gcd.
//!
//! Monomials are exponent vectors ordered lexicographically; the leading
//! term is the lex-largest. The gcd is a recursive primitive
//! pseudo-remainder sequence, which is slow in theory and entirely adequate
//! at the degrees this crate sees.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::factor::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Lex-leading (exponent, coefficient).
    fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn max_var_degree(&self) -> u32 {
        (0..self.nvars).map(|v| self.degree_in(v)).max().unwrap_or(0)
    }

    pub fn min_exponent(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    pub fn shift_exponent(&self, v: usize, delta: i64) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[v] = (e2[v] as i64 + delta) as u32;
            p.terms.insert(e2, c.clone());
        }
        p
    }

    pub fn occurring_variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn first_variable(&self) -> Option<usize> {
        self.occurring_variables().into_iter().next()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            p.add_term(e2, c * BigRational::from_integer(BigInt::from(e[v])));
        }
        p
    }

    /// Exact division over Q; None if not divisible.
    pub fn divexact(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if d.is_zero() {
            return None;
        }
        let (dlead_e, dlead_c) = d.leading().unwrap();
        let dlead_e = dlead_e.clone();
        let dlead_c = dlead_c.clone();
        let mut rem = self.clone();
        let mut quo = Self::zero(self.nvars);
        while !rem.is_zero() {
            let (rl_e, rl_c) = rem.leading().unwrap();
            let mut qe = Vec::with_capacity(self.nvars);
            for (a, b) in rl_e.iter().zip(&dlead_e) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = rl_c / &dlead_c;
            let mono = MPoly::from_terms(self.nvars, [(qe, qc)]);
            quo = quo.add(&mono);
            rem = rem.sub(&mono.mul(d));
        }
        Some(quo)
    }

    /// Pull out the rational content and normalize the lex-leading
    /// coefficient positive: self = content * primitive.
    pub fn integer_primitive(&self) -> (BigRational, MPoly) {
        if self.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut content = BigRational::new(num, den);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Coefficients as polynomials (with v-exponent zeroed), index = power of v.
    pub fn coeffs_wrt(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_wrt(nvars: usize, v: usize, coeffs: &[MPoly]) -> MPoly {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                p.add_term(e2, x.clone());
            }
        }
        p
    }

    /// Content with respect to v: the gcd of the coefficient polynomials.
    pub fn content_wrt(&self, v: usize) -> MPoly {
        let coeffs = self.coeffs_wrt(v);
        let mut g = Self::zero(self.nvars);
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_constant() {
                break;
            }
        }
        if g.is_zero() {
            Self::one(self.nvars)
        } else {
            g
        }
    }

    /// Integer-primitive gcd (lex-leading coefficient positive); gcd of
    /// constants is normalized to 1.
    pub fn gcd(&self, other: &Self) -> MPoly {
        if self.is_zero() {
            if other.is_zero() {
                return Self::one(self.nvars);
            }
            return other.integer_primitive().1;
        }
        if other.is_zero() {
            return self.integer_primitive().1;
        }
        if self.is_constant() || other.is_constant() {
            return Self::one(self.nvars);
        }
        // main variable: the largest occurring in either
        let v = self
            .occurring_variables()
            .into_iter()
            .chain(other.occurring_variables())
            .max()
            .unwrap();
        let ca = self.content_wrt(v);
        let cb = other.content_wrt(v);
        let pa = self.divexact(&ca).unwrap();
        let pb = other.divexact(&cb).unwrap();
        let cg = ca.gcd(&cb);
        // primitive PRS in v
        let (mut a, mut b) = if pa.degree_in(v) >= pb.degree_in(v) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        loop {
            if b.is_zero() {
                break;
            }
            if b.degree_in(v) == 0 {
                // a nonzero v-free remainder: the v-parts are coprime
                a = Self::one(self.nvars);
                break;
            }
            let r = pseudo_rem(&a, &b, v);
            a = b;
            b = match r {
                None => Self::zero(self.nvars),
                Some(r) => {
                    let cr = r.content_wrt(v);
                    let (_, p) = r.divexact(&cr).unwrap().integer_primitive();
                    p
                }
            };
        }
        let (_, ap) = a.integer_primitive();
        let g = cg.mul(&ap);
        g.integer_primitive().1
    }

    /// Collapse to a univariate integer polynomial in v (all other
    /// variables must be absent), clearing denominators.
    pub fn to_univariate_z(&self, v: usize) -> ZPoly {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut coeffs = vec![BigInt::zero(); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            debug_assert!(e
                .iter()
                .enumerate()
                .all(|(i, &x)| i == v || x == 0));
            coeffs[e[v] as usize] = c.numer() * (&den / c.denom());
        }
        ZPoly::trim(coeffs)
    }

    pub fn from_univariate_z(nvars: usize, v: usize, z: &ZPoly) -> MPoly {
        let mut p = Self::zero(nvars);
        for (k, c) in z.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; nvars];
            e[v] = k as u32;
            p.terms.insert(e, BigRational::from_integer(c.clone()));
        }
        p
    }

    /// Kronecker substitution: x_i -> y^(b^i), injective on monomials with
    /// all exponents < b. Denominators are cleared.
    pub fn kronecker_substitute(&self, b: u32) -> ZPoly {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut max_code = 0usize;
        let codes: Vec<(usize, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut code = 0usize;
                let mut base = 1usize;
                for &x in e {
                    code += x as usize * base;
                    base *= b as usize;
                }
                max_code = max_code.max(code);
                (code, c.numer() * (&den / c.denom()))
            })
            .collect();
        let mut coeffs = vec![BigInt::zero(); max_code + 1];
        for (code, c) in codes {
            coeffs[code] += c;
        }
        ZPoly::trim(coeffs)
    }

    /// Inverse Kronecker: decode exponents base b; None when a term does
    /// not decode into the variable budget.
    pub fn kronecker_unsubstitute(nvars: usize, b: u32, z: &ZPoly) -> Option<MPoly> {
        let mut p = Self::zero(nvars);
        for (k, c) in z.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut rest = k;
            let mut e = vec![0u32; nvars];
            for slot in e.iter_mut() {
                *slot = (rest % b as usize) as u32;
                rest /= b as usize;
            }
            if rest != 0 {
                return None;
            }
            p.add_term(e, BigRational::from_integer(c.clone()));
        }
        Some(p)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term *= &point[v];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                if k == 1 {
                    factors.push(vars[v].clone());
                } else if k > 1 {
                    factors.push(format!("{}^{}", vars[v], k));
                }
            }
            let mono = factors.join("*");
            let s = if mono.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                mono
            } else if *c == -BigRational::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(s);
        }
        let mut out = String::new();
        for (i, s) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(s);
            } else if let Some(stripped) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(s);
            }
        }
        out
    }
}

/// Pseudo-remainder of a by b in variable v; None when it vanishes.
fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize) -> Option<MPoly> {
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    assert!(db > 0 && da >= db);
    let b_coeffs = b.coeffs_wrt(v);
    let lb = b_coeffs.last().unwrap().clone();
    let mut r = a.scale(&BigRational::one());
    // premultiply so every reduction step divides exactly
    let mut power = MPoly::one(a.num_vars());
    for _ in 0..(da - db + 1) {
        power = power.mul(&lb);
    }
    r = r.mul(&power);
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < db {
            break;
        }
        let r_coeffs = r.coeffs_wrt(v);
        let lr = r_coeffs.last().unwrap().clone();
        let q = lr.divexact(&lb).expect("pseudo-remainder step divides");
        // r -= q * v^(dr-db) * b
        let sub = q.mul(&b.shift_exponent(v, (dr - db) as i64));
        r = r.sub(&sub);
        debug_assert!(r.is_zero() || r.degree_in(v) < dr, "degree must drop");
    }
    if r.is_zero() {
        None
    } else {
        Some(r)
    }
}

/// Deterministic ordering for factor lists.
pub fn factor_order(a: &(MPoly, u32), b: &(MPoly, u32)) -> Ordering {
    let ka = (a.0.total_degree(), a.0.num_terms());
    let kb = (b.0.total_degree(), b.0.num_terms());
    ka.cmp(&kb)
        .then_with(|| {
            let ta: Vec<_> = a.0.terms().collect();
            let tb: Vec<_> = b.0.terms().collect();
            ta.cmp(&tb)
        })
        .then(a.1.cmp(&b.1))
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn mul_and_divexact() {
        let t = MPoly::var(2, 0);
        let u = MPoly::var(2, 1);
        // (t + u)(t - u) = t^2 - u^2
        let a = t.add(&u);
        let b = t.sub(&u);
        let p = a.mul(&b);
        assert_eq!(p.divexact(&a).unwrap(), b);
        assert_eq!(p.divexact(&MPoly::var(2, 0)), None);
    }

    #[test]
    fn gcd_univariate_embedded() {
        let t = MPoly::var(1, 0);
        // gcd((t^2-1), (t-1)) = t-1
        let a = t.mul(&t).sub(&MPoly::one(1));
        let b = t.sub(&MPoly::one(1));
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn gcd_multivariate() {
        let t = MPoly::var(2, 0);
        let u = MPoly::var(2, 1);
        let g = t.add(&u); // t+u
        let a = g.mul(&t); // t(t+u)
        let b = g.mul(&u.add(&MPoly::one(2))); // (u+1)(t+u)
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn kronecker_roundtrip() {
        let t = MPoly::var(2, 0);
        let u = MPoly::var(2, 1);
        let p = t.mul(&t).add(&u.scale(&c(3))).add(&MPoly::constant(2, c(-7)));
        let b = p.max_var_degree() + 1;
        let z = p.kronecker_substitute(b);
        let back = MPoly::kronecker_unsubstitute(2, b, &z).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn content_and_primitive() {
        let t = MPoly::var(1, 0);
        let p = t.scale(&BigRational::new(BigInt::from(-2), BigInt::from(3)));
        let (content, prim) = p.integer_primitive();
        assert_eq!(content, BigRational::new(BigInt::from(-2), BigInt::from(3)));
        assert_eq!(prim, t);
    }
}
