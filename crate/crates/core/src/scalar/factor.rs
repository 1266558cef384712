//! Exact factorization: integers, rationals, and polynomials over Q.
//!
//! Univariate polynomials go through the classical route (Yun squarefree
//! decomposition, Berlekamp mod p, Hensel lifting, subset recombination);
//! multivariate ones reduce to the univariate case by Kronecker
//! substitution. Everything is deterministic.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mpoly::MPoly;

// ---------------------------------------------------------------------------
// integers
// ---------------------------------------------------------------------------

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

pub fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % bp).is_zero() {
            return false;
        }
    }
    // Miller-Rabin with a fixed witness set; deterministic far beyond the
    // magnitudes this crate manipulates.
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Prime factorization of a positive integer.
pub fn factor_biguint(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    fn push(p: BigUint, e: u32, out: &mut Vec<(BigUint, u32)>) {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    }
    let mut rest = n.clone();
    if rest.is_zero() || rest.is_one() {
        return out;
    }
    for &p in &SMALL_PRIMES {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            push(bp, e, &mut out);
        }
    }
    let mut d = 101u64;
    while BigUint::from(d) * BigUint::from(d) <= rest && d < 100_000 {
        let bd = BigUint::from(d);
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            push(bd, e, &mut out);
        }
        d += 2;
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(m, 1, &mut out);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let f = pollard_rho(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort();
    out
}

/// w = s^2 * core with core square-free carrying the sign of w (s > 0).
pub fn int_squarefree_decompose(w: &BigInt) -> (BigInt, BigInt) {
    if w.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let factors = factor_biguint(w.magnitude());
    let mut s = BigUint::one();
    let mut core = BigUint::one();
    for (p, e) in factors {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
    }
    let core = BigInt::from_biguint(w.sign(), core);
    (BigInt::from_biguint(Sign::Plus, s), core)
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &ns * &ns == *r.numer() && &ds * &ds == *r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Factor a nonzero rational as sign * prod p^e over integer primes.
pub fn factor_rational(r: &BigRational) -> (i8, Vec<(BigInt, i64)>) {
    assert!(!r.is_zero());
    let sign = if r.is_negative() { -1 } else { 1 };
    let mut map: Vec<(BigInt, i64)> = Vec::new();
    for (p, e) in factor_biguint(r.numer().magnitude()) {
        map.push((BigInt::from(p), e as i64));
    }
    for (p, e) in factor_biguint(r.denom().magnitude()) {
        let p = BigInt::from(p);
        if let Some(slot) = map.iter_mut().find(|(q, _)| *q == p) {
            slot.1 -= e as i64;
        } else {
            map.push((p, -(e as i64)));
        }
    }
    map.retain(|(_, e)| *e != 0);
    map.sort();
    (sign, map)
}

// ---------------------------------------------------------------------------
// dense univariate integer polynomials (internal to the factor engine)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly(pub Vec<BigInt>);

impl ZPoly {
    pub fn trim(mut v: Vec<BigInt>) -> Self {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        ZPoly(v)
    }

    pub fn zero() -> Self {
        ZPoly(vec![])
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::trim(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.0.iter().enumerate() {
            out[i] -= b;
        }
        Self::trim(out)
    }

    /// Division with remainder by a monic divisor, exact over Z.
    fn divmod_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.lc().is_one());
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return (Self::zero(), Self::trim(rem));
        }
        let mut quo = vec![BigInt::zero(); rem.len() - d.0.len() + 1];
        for i in (0..quo.len()).rev() {
            let c = rem[i + d.0.len() - 1].clone();
            if c.is_zero() {
                continue;
            }
            quo[i] = c.clone();
            for (j, dc) in d.0.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
        }
        (Self::trim(quo), Self::trim(rem))
    }

    /// Try exact division over Z.
    pub fn divexact(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_zero() || self.0.len() < d.0.len() {
            return None;
        }
        let mut rem = self.0.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - d.0.len() + 1];
        let dl = d.lc();
        for i in (0..quo.len()).rev() {
            let c = &rem[i + d.0.len() - 1];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            quo[i] = q.clone();
            for (j, dc) in d.0.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::trim(quo))
        } else {
            None
        }
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        ZPoly(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// univariate polynomials over Q (for the squarefree step)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn trim(mut v: Vec<BigRational>) -> Self {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        QPoly(v)
    }

    fn to_z_primitive(&self) -> ZPoly {
        // clear denominators, strip content, positive leading coefficient
        let mut den = BigInt::one();
        for c in &self.0 {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        ZPoly::trim(ints).primitive()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.0.iter().enumerate() {
            out[i] -= b;
        }
        Self::trim(out)
    }

    fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return (QPoly(vec![]), Self::trim(rem));
        }
        let mut quo = vec![BigRational::zero(); rem.len() - d.0.len() + 1];
        let dl = d.0.last().unwrap().clone();
        for i in (0..quo.len()).rev() {
            let c = &rem[i + d.0.len() - 1] / &dl;
            if c.is_zero() {
                continue;
            }
            quo[i] = c.clone();
            for (j, dc) in d.0.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
        }
        (Self::trim(quo), Self::trim(rem))
    }

    fn divexact(&self, d: &Self) -> Self {
        let (q, r) = self.divmod(d);
        debug_assert!(r.is_zero(), "inexact division in Yun");
        q
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        // normalize monic
        if let Some(l) = a.0.last().cloned() {
            if !l.is_zero() {
                for c in a.0.iter_mut() {
                    *c /= &l;
                }
            }
        }
        a
    }

    fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return QPoly(vec![]);
        }
        Self::trim(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }
}

/// Yun squarefree decomposition over Q: f = prod parts[i]^(mult[i]).
fn yun_squarefree(f: &QPoly) -> Vec<(QPoly, u32)> {
    let fp = f.derivative();
    let a = f.gcd(&fp);
    let mut b = f.divexact(&a);
    let mut c = fp.divexact(&a);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.deg() > 0 {
        let g = b.gcd(&d);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        b = b.divexact(&g);
        c = d.divexact(&g);
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// arithmetic mod m (m = p^k), symmetric representatives
// ---------------------------------------------------------------------------

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

fn poly_mod(p: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::trim(p.0.iter().map(|c| sym_mod(c, m)).collect())
}

fn poly_mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    poly_mod(&a.mul(b), m)
}

fn poly_divmod_monic_mod(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let (q, r) = a.divmod_monic(d);
    (poly_mod(&q, m), poly_mod(&r, m))
}

// ---------------------------------------------------------------------------
// factorization mod a small prime (Berlekamp, deterministic)
// ---------------------------------------------------------------------------

fn fp_normalize(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    fp_normalize(&mut out);
    out
}

fn fp_inv(p: u64, a: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    ((t % p as i128 + p as i128) % p as i128) as u64
}

fn fp_rem(p: u64, a: &[u64], d: &[u64]) -> Vec<u64> {
    let mut rem: Vec<u64> = a.to_vec();
    fp_normalize(&mut rem);
    let dl_inv = fp_inv(p, *d.last().unwrap());
    while rem.len() >= d.len() && !rem.is_empty() {
        let c = (*rem.last().unwrap() as u128 * dl_inv as u128 % p as u128) as u64;
        let off = rem.len() - d.len();
        if c != 0 {
            for (j, &dc) in d.iter().enumerate() {
                let sub = (c as u128 * dc as u128) % p as u128;
                let idx = off + j;
                rem[idx] = ((rem[idx] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        rem.pop();
        fp_normalize(&mut rem);
    }
    rem
}

fn fp_quo(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.len() < b.len() {
        return vec![];
    }
    let mut rem = a.to_vec();
    let mut quo = vec![0u64; a.len() - b.len() + 1];
    let inv = fp_inv(p, *b.last().unwrap());
    for i in (0..quo.len()).rev() {
        let idx = i + b.len() - 1;
        let c = if idx < rem.len() {
            (rem[idx] as u128 * inv as u128 % p as u128) as u64
        } else {
            0
        };
        quo[i] = c;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let sub = (c as u128 * bc as u128) % p as u128;
                rem[i + j] = ((rem[i + j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
    }
    fp_normalize(&mut quo);
    quo
}

fn fp_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c) % p;
    }
    fp_normalize(&mut out);
    out
}

fn fp_divexact(p: u64, a: &[u64], d: &[u64]) -> Vec<u64> {
    fp_quo(p, a, d)
}

fn fp_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_normalize(&mut a);
    fp_normalize(&mut b);
    while !b.is_empty() {
        let r = fp_rem(p, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = fp_inv(p, l);
        for c in a.iter_mut() {
            *c = (*c as u128 * inv as u128 % p as u128) as u64;
        }
    }
    a
}

fn fp_pow_mod(p: u64, base: &[u64], mut e: u64, modulus: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = fp_rem(p, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_rem(p, &fp_mul(p, &result, &b), modulus);
        }
        b = fp_rem(p, &fp_mul(p, &b, &b), modulus);
        e >>= 1;
    }
    result
}

fn fp_derivative(p: u64, f: &[u64]) -> Vec<u64> {
    if f.len() <= 1 {
        return vec![];
    }
    let mut out: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (c as u128 * (i as u128 % p as u128) % p as u128) as u64)
        .collect();
    fp_normalize(&mut out);
    out
}

fn fp_nullspace(p: u64, mut mat: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let mut sel = None;
        for r in row..n {
            if mat[r][col] != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        mat.swap(row, sel);
        let inv = fp_inv(p, mat[row][col]);
        for c in 0..n {
            mat[row][c] = (mat[row][c] as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..n {
            if r != row && mat[r][col] != 0 {
                let factor = mat[r][col];
                for c in 0..n {
                    let sub = (factor as u128 * mat[row][c] as u128) % p as u128;
                    mat[r][c] = ((mat[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let c = mat[r][free];
            if c != 0 {
                v[pc] = (p - c) % p;
            }
        }
        basis.push(v);
    }
    basis
}

/// Berlekamp factorization of a squarefree monic polynomial mod p.
fn berlekamp(p: u64, f: &[u64]) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let xp = fp_pow_mod(p, &[0, 1], p, f);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        rows.push(row);
        cur = fp_rem(p, &fp_mul(p, &cur, &xp), f);
    }
    // nullspace of (Q^T - I): vectors v with v(x)^p = v(x) mod f
    let mut mat = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            mat[j][i] = rows[i][j];
        }
    }
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let basis = fp_nullspace(p, mat);
    let r = basis.len();
    let mut factors: Vec<Vec<u64>> = vec![f.to_vec()];
    if r == 1 {
        return factors;
    }
    for v in basis.iter() {
        if factors.len() == r {
            break;
        }
        if v.iter().skip(1).all(|&c| c == 0) {
            continue;
        }
        let mut vpoly = v.clone();
        fp_normalize(&mut vpoly);
        let mut next: Vec<Vec<u64>> = Vec::new();
        for g in factors.into_iter() {
            if g.len() - 1 <= 1 || next.len() + 1 == r {
                next.push(g);
                continue;
            }
            let mut pieces: Vec<Vec<u64>> = Vec::new();
            let mut rest = g.clone();
            for c in 0..p {
                if rest.len() <= 1 {
                    break;
                }
                let mut shifted = vpoly.clone();
                shifted[0] = (shifted[0] + p - c) % p;
                fp_normalize(&mut shifted);
                if shifted.is_empty() {
                    continue;
                }
                let d = fp_gcd(p, &rest, &shifted);
                if d.len() > 1 && d.len() < rest.len() {
                    rest = fp_divexact(p, &rest, &d);
                    pieces.push(d);
                }
            }
            if rest.len() > 1 {
                pieces.push(rest);
            }
            next.extend(pieces);
        }
        factors = next;
    }
    factors.sort();
    factors
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 2;
    loop {
        if is_probable_prime(&BigUint::from(q)) {
            return q;
        }
        q += 2;
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting (monic, binary tree)
// ---------------------------------------------------------------------------

/// Solve U*g + V*h = rhs (mod m), deg V < deg g, deg U < deg h, given
/// Bezout data s*g + t*h = 1 (mod m). g and h monic.
fn solve_dioph(g: &ZPoly, h: &ZPoly, t: &ZPoly, rhs: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let (_, v) = poly_divmod_monic_mod(&poly_mul_mod(t, rhs, m), g, m);
    let num = poly_mod(&rhs.sub(&v.mul(h)), m);
    let (u, r) = poly_divmod_monic_mod(&num, g, m);
    debug_assert!(poly_mod(&r, m).is_zero(), "diophantine solve not exact mod m");
    (u, v)
}

fn add_scaled(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    // a + m*b
    let scaled = ZPoly(b.0.iter().map(|c| c * m).collect());
    let n = a.0.len().max(scaled.0.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.0.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in scaled.0.iter().enumerate() {
        out[i] += c;
    }
    ZPoly::trim(out)
}

/// One Hensel step: from f = g*h (mod m) to (mod m^2). All monic.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = poly_mod(&f.sub(&g.mul(h)), &m2);
    let e_div = poly_mod(&ZPoly(e.0.iter().map(|c| c / m).collect()), m);
    // G1*h + H1*g = e/m with deg G1 < deg g, deg H1 < deg h
    let (h1, g1) = solve_dioph(g, h, t, &e_div, m);
    let g_new = poly_mod(&add_scaled(g, &g1, m), &m2);
    let h_new = poly_mod(&add_scaled(h, &h1, m), &m2);
    // Bezout lift: s*g* + t*h* = 1 (mod m^2)
    let one = ZPoly::one();
    let delta = poly_mod(&one.sub(&s.mul(&g_new)).sub(&t.mul(&h_new)), &m2);
    let delta_div = poly_mod(&ZPoly(delta.0.iter().map(|c| c / m).collect()), m);
    let (a, b) = solve_dioph(g, h, t, &delta_div, m);
    let s_new = poly_mod(&add_scaled(s, &a, m), &m2);
    let t_new = poly_mod(&add_scaled(t, &b, m), &m2);
    (g_new, h_new, s_new, t_new)
}

/// Bezout cofactors for coprime monic g, h mod prime p.
fn fp_bezout(p: u64, g: &ZPoly, h: &ZPoly) -> (ZPoly, ZPoly) {
    let gp: Vec<u64> = to_fp(p, g);
    let hp: Vec<u64> = to_fp(p, h);
    let (mut r0, mut r1) = (gp, hp);
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let q = fp_quo(p, &r0, &r1);
        let r2 = fp_sub(p, &r0, &fp_mul(p, &q, &r1));
        let s2 = fp_sub(p, &s0, &fp_mul(p, &q, &s1));
        let t2 = fp_sub(p, &t0, &fp_mul(p, &q, &t1));
        r0 = r1;
        r1 = {
            let mut r = r2;
            fp_normalize(&mut r);
            r
        };
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = fp_inv(p, r0[0]);
    let scale = |v: &[u64]| -> ZPoly {
        let bp = BigInt::from(p);
        ZPoly::trim(
            v.iter()
                .map(|&c| {
                    let c = (c as u128 * inv as u128 % p as u128) as u64;
                    sym_mod(&BigInt::from(c), &bp)
                })
                .collect(),
        )
    };
    (scale(&s0), scale(&t0))
}

fn to_fp(p: u64, f: &ZPoly) -> Vec<u64> {
    let bp = BigInt::from(p);
    let mut v: Vec<u64> = f
        .0
        .iter()
        .map(|c| {
            let r = c.mod_floor(&bp);
            r.magnitude().iter_u64_digits().next().unwrap_or(0)
        })
        .collect();
    fp_normalize(&mut v);
    v
}

fn from_fp(p: u64, f: &[u64]) -> ZPoly {
    let bp = BigInt::from(p);
    ZPoly::trim(f.iter().map(|&c| sym_mod(&BigInt::from(c), &bp)).collect())
}

/// Lift the modular factor list of monic squarefree f to the first modulus
/// p^(2^j) at or above `bound`.
fn hensel_lift_tree(f: &ZPoly, factors: &[ZPoly], p: u64, bound: &BigInt) -> Vec<ZPoly> {
    let mut target = BigInt::from(p);
    while &target < bound {
        target = &target * &target;
    }
    if factors.len() == 1 {
        return vec![poly_mod(f, &target)];
    }
    let mid = factors.len() / 2;
    let bp = BigInt::from(p);
    let g0 = poly_mod(
        &factors[..mid].iter().fold(ZPoly::one(), |acc, x| acc.mul(x)),
        &bp,
    );
    let h0 = poly_mod(
        &factors[mid..].iter().fold(ZPoly::one(), |acc, x| acc.mul(x)),
        &bp,
    );
    let (mut s, mut t) = fp_bezout(p, &g0, &h0);
    let mut g = g0;
    let mut h = h0;
    let mut m = bp;
    while &m < bound {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    let mut left = hensel_lift_tree(&g, &factors[..mid], p, bound);
    let right = hensel_lift_tree(&h, &factors[mid..], p, bound);
    left.extend(right);
    left
}

// ---------------------------------------------------------------------------
// factorization over Z / Q, univariate
// ---------------------------------------------------------------------------

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn factor_monic_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut p = 3u64;
    let fp = loop {
        let fp = to_fp(p, f);
        if fp.len() == f.0.len() {
            let dp = fp_derivative(p, &fp);
            if !dp.is_empty() && fp_gcd(p, &fp, &dp).len() == 1 {
                break fp;
            }
        }
        p = next_prime(p);
    };
    let modular = berlekamp(p, &fp);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let norm2: BigInt = f.0.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << (n as u32 + 2)) * norm2 * 2;
    let modular_z: Vec<ZPoly> = modular.iter().map(|g| from_fp(p, g)).collect();
    let mut target = BigInt::from(p);
    while &target < &bound {
        target = &target * &target;
    }
    let lifted = hensel_lift_tree(f, &modular_z, p, &bound);

    let mut pool: Vec<ZPoly> = lifted;
    let mut rest = f.clone();
    let mut out: Vec<ZPoly> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut found = true;
        while found && 2 * size <= pool.len() {
            found = false;
            for idx in subsets_of_size(pool.len(), size) {
                let mut candidate = ZPoly::one();
                for &i in &idx {
                    candidate = poly_mod(&candidate.mul(&pool[i]), &target);
                }
                if let Some(q) = rest.divexact(&candidate) {
                    out.push(candidate);
                    rest = q;
                    let mut keep = Vec::new();
                    for (i, g) in pool.into_iter().enumerate() {
                        if !idx.contains(&i) {
                            keep.push(g);
                        }
                    }
                    pool = keep;
                    found = true;
                    break;
                }
            }
        }
        size += 1;
    }
    if rest.deg() >= 1 {
        out.push(rest);
    }
    out.sort_by(|a, b| (a.deg(), &a.0).cmp(&(b.deg(), &b.0)));
    out
}

fn factor_squarefree_primitive(g: &ZPoly) -> Vec<ZPoly> {
    if g.deg() <= 1 {
        return vec![g.primitive()];
    }
    let lc = g.lc();
    if lc.is_one() {
        return factor_monic_squarefree(g);
    }
    // monic transform: G(y) = lc^(n-1) g(y/lc) is monic over Z
    let n = g.deg();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (i, c) in g.0.iter().enumerate().take(n) {
        coeffs[i] = c * lc.pow((n - 1 - i) as u32);
    }
    coeffs[n] = BigInt::one();
    let gm = ZPoly::trim(coeffs);
    let factors = factor_monic_squarefree(&gm);
    factors
        .into_iter()
        .map(|h| {
            // map back: h(y) -> primitive part of h(lc*x)
            let back: Vec<BigInt> = h
                .0
                .iter()
                .enumerate()
                .map(|(i, c)| c * lc.pow(i as u32))
                .collect();
            ZPoly::trim(back).primitive()
        })
        .collect()
}

/// Factor a univariate polynomial with rational coefficients:
/// f = unit * prod factor_i^mult_i with primitive integer irreducible
/// factors (positive leading coefficient).
pub fn factor_qpoly(coeffs: &[BigRational]) -> (BigRational, Vec<(ZPoly, u32)>) {
    let f = QPoly::trim(coeffs.to_vec());
    assert!(!f.is_zero());
    if f.deg() == 0 {
        return (f.0[0].clone(), vec![]);
    }
    let parts = yun_squarefree(&f);
    let mut out: Vec<(ZPoly, u32)> = Vec::new();
    for (part, mult) in parts {
        let z = part.to_z_primitive();
        for irr in factor_squarefree_primitive(&z) {
            out.push((irr, mult));
        }
    }
    // unit = lc(f) / prod lc(factor)^mult
    let mut lc_prod = BigRational::one();
    for (g, m) in &out {
        for _ in 0..*m {
            lc_prod *= BigRational::from_integer(g.lc());
        }
    }
    let unit = f.0.last().unwrap() / lc_prod;
    out.sort_by(|a, b| (a.0.deg(), &a.0 .0, a.1).cmp(&(b.0.deg(), &b.0 .0, b.1)));
    (unit, out)
}

// ---------------------------------------------------------------------------
// multivariate factorization via Kronecker substitution
// ---------------------------------------------------------------------------

/// Factor a multivariate polynomial over Q.
///
/// Returns (rational unit, irreducible factors with multiplicity); factors
/// are integer-primitive with positive leading coefficient in graded-lex
/// order, and unit * prod factor^mult reproduces the input exactly.
pub fn factor_mpoly(f: &MPoly) -> (BigRational, Vec<(MPoly, u32)>) {
    assert!(!f.is_zero());
    let nv = f.num_vars();
    let mut factors: Vec<(MPoly, u32)> = Vec::new();
    let mut unit = BigRational::one();

    // monomial content
    let mut g = f.clone();
    for v in 0..nv {
        let e = g.min_exponent(v);
        if e > 0 {
            g = g.shift_exponent(v, -(e as i64));
            factors.push((MPoly::var(nv, v), e));
        }
    }
    factor_mpoly_inner(&g, 1, &mut unit, &mut factors);
    factors.sort_by(super::mpoly::factor_order);
    // merge duplicate factors
    let mut merged: Vec<(MPoly, u32)> = Vec::new();
    for (p, m) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += m;
                continue;
            }
        }
        merged.push((p, m));
    }
    (unit, merged)
}

fn factor_mpoly_inner(f: &MPoly, outer_mult: u32, unit: &mut BigRational, out: &mut Vec<(MPoly, u32)>) {
    let (content, prim) = f.integer_primitive();
    *unit *= pow_rational(&content, outer_mult);
    if prim.is_constant() {
        *unit *= pow_rational(&prim.constant_term(), outer_mult);
        return;
    }
    let v = prim.first_variable().expect("nonconstant");
    let cont_v = prim.content_wrt(v);
    let prim_v = prim.divexact(&cont_v).expect("content divides");
    if !cont_v.is_constant() {
        factor_mpoly_inner(&cont_v, outer_mult, unit, out);
    } else {
        *unit *= pow_rational(&cont_v.constant_term(), outer_mult);
    }
    // Yun with respect to v on the v-primitive part
    let deriv = prim_v.derivative(v);
    let g0 = prim_v.gcd(&deriv);
    let mut b = prim_v.divexact(&g0).unwrap();
    let mut c = deriv.divexact(&g0).unwrap();
    let mut d = c.sub(&b.derivative(v));
    let mut mult = 1u32;
    while b.degree_in(v) > 0 {
        let piece = b.gcd(&d);
        if !piece.is_constant() {
            let (cc, pp) = piece.integer_primitive();
            *unit *= pow_rational(&cc, mult * outer_mult);
            for h in factor_squarefree_mpoly(&pp) {
                let (hc, hp) = h.integer_primitive();
                *unit *= pow_rational(&hc, mult * outer_mult);
                out.push((hp, mult * outer_mult));
            }
        }
        b = b.divexact(&piece).unwrap();
        c = d.divexact(&piece).unwrap();
        d = c.sub(&b.derivative(v));
        mult += 1;
    }
    if b.is_constant() {
        *unit *= pow_rational(&b.constant_term(), outer_mult);
    }
}

fn pow_rational(c: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= c;
    }
    acc
}

/// Factor a squarefree multivariate polynomial, primitive with respect to
/// its first variable.
fn factor_squarefree_mpoly(f: &MPoly) -> Vec<MPoly> {
    let occurring = f.occurring_variables();
    if occurring.len() <= 1 {
        let v = occurring[0];
        let z = f.to_univariate_z(v);
        let irr = factor_squarefree_primitive(&z.primitive());
        return irr
            .into_iter()
            .map(|h| MPoly::from_univariate_z(f.num_vars(), v, &h))
            .collect();
    }
    let b = f.max_var_degree() + 1;
    let uni = f.kronecker_substitute(b);
    let irr = factor_squarefree_primitive(&uni.primitive());
    if irr.len() == 1 {
        let (_, prim) = f.integer_primitive();
        return vec![prim];
    }
    let mut pool = irr;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    while size < pool.len() {
        let mut advanced = true;
        while advanced && size < pool.len() {
            advanced = false;
            for idx in subsets_of_size(pool.len(), size) {
                let mut cand_uni = ZPoly::one();
                for &i in &idx {
                    cand_uni = cand_uni.mul(&pool[i]);
                }
                let Some(cand) = MPoly::kronecker_unsubstitute(f.num_vars(), b, &cand_uni) else {
                    continue;
                };
                let (_, cand) = cand.integer_primitive();
                if let Some(q) = rest.divexact(&cand) {
                    out.push(cand);
                    rest = q;
                    let mut keep = Vec::new();
                    for (i, g) in pool.into_iter().enumerate() {
                        if !idx.contains(&i) {
                            keep.push(g);
                        }
                    }
                    pool = keep;
                    advanced = true;
                    break;
                }
            }
        }
        size += 1;
    }
    if !rest.is_constant() {
        let (_, r) = rest.integer_primitive();
        out.push(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::trim(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn qp(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn squarefree_int() {
        let (s, core) = int_squarefree_decompose(&BigInt::from(8));
        assert_eq!(s, BigInt::from(2));
        assert_eq!(core, BigInt::from(2));
        let (s, core) = int_squarefree_decompose(&BigInt::from(-4));
        assert_eq!(s, BigInt::from(2));
        assert_eq!(core, BigInt::from(-1));
    }

    #[test]
    fn factor_simple_quadratics() {
        let (unit, fs) = factor_qpoly(&qp(&[-1, 0, 1])); // x^2 - 1
        assert!(unit.is_one());
        assert_eq!(fs.len(), 2);
        let (_, fs) = factor_qpoly(&qp(&[1, 0, 1])); // x^2 + 1
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0, zp(&[1, 0, 1]));
    }

    #[test]
    fn factor_product_of_quadratics() {
        // (x^2+1)(x^2+2) = x^4 + 3x^2 + 2
        let (_, fs) = factor_qpoly(&qp(&[2, 0, 3, 0, 1]));
        let mut degs: Vec<usize> = fs.iter().map(|(g, _)| g.deg()).collect();
        degs.sort();
        assert_eq!(degs, vec![2, 2]);
    }

    #[test]
    fn factor_with_multiplicity_and_lc() {
        // 4 (2x+1)^2 (x-3): unit 4, factors (2x+1)^2 and (x-3)
        let f = zp(&[1, 2]).mul(&zp(&[1, 2])).mul(&zp(&[-3, 1])).mul(&zp(&[4]));
        let coeffs: Vec<BigRational> =
            f.0.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let (unit, fs) = factor_qpoly(&coeffs);
        assert_eq!(unit, BigRational::from_integer(4.into()));
        let mut sig: Vec<(usize, u32)> = fs.iter().map(|(g, m)| (g.deg(), *m)).collect();
        sig.sort();
        assert_eq!(sig, vec![(1, 1), (1, 2)]);
        // reconstruct
        let mut prod = zp(&[4]);
        for (g, m) in &fs {
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn factor_degree_six() {
        // (x^3 - 2)(x^2 + x + 1)(x + 5)
        let f = zp(&[-2, 0, 0, 1]).mul(&zp(&[1, 1, 1])).mul(&zp(&[5, 1]));
        let coeffs: Vec<BigRational> =
            f.0.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let (unit, fs) = factor_qpoly(&coeffs);
        assert!(unit.is_one());
        let mut degs: Vec<usize> = fs.iter().map(|(g, _)| g.deg()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 3]);
    }

    #[test]
    fn rational_sqrt_detects() {
        let r = BigRational::new(BigInt::from(49), BigInt::from(9));
        assert_eq!(
            rational_sqrt(&r),
            Some(BigRational::new(BigInt::from(7), BigInt::from(3)))
        );
        assert_eq!(rational_sqrt(&BigRational::from_integer(8.into())), None);
    }

    #[test]
    fn factor_rational_basic() {
        let (s, f) = factor_rational(&BigRational::new((-4).into(), 9.into()));
        assert_eq!(s, -1);
        assert_eq!(f, vec![(BigInt::from(2), 2), (BigInt::from(3), -2)]);
    }
}
