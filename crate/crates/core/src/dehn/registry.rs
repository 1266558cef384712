//! Multiplicative canonicalization of tower values.
//!
//! Rationals and rational functions factor exactly, but multiplicative
//! relations among quadratic-tower values (cross-ratios of line
//! configurations, mostly) are found heuristically: values are embedded
//! into the complex numbers at high precision, candidate relations come
//! from LLL on their logs, and every candidate is verified by exact tower
//! arithmetic before it is used. Soundness is therefore exact; only
//! completeness is heuristic, which matches the declared-generator-list
//! contract for tower slots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::linear::tensor::canonical_token;
use crate::linear::Sym;
use crate::relations::bigfloat::{atan2, ln, pi};
use crate::relations::lll::{lll_reduce, sort_by_norm};
use crate::scalar::factor::factor_rational;
use crate::scalar::{DyadicInterval, ExactScalar, ScalarError, TowerElement};

/// A complex interval.
#[derive(Debug, Clone)]
struct ComplexIv {
    re: DyadicInterval,
    im: DyadicInterval,
}

/// Principal complex embedding of a tower element: every positive radicand
/// maps to its positive root, every negative one to +i sqrt(|d|).
fn embed_complex(t: &TowerElement, prec: u32) -> Result<ComplexIv, ScalarError> {
    let work = prec + 24;
    let field = t.field().clone();
    let roots: Vec<ComplexIv> = field
        .radicands()
        .iter()
        .map(|d| {
            if d.is_negative() {
                Ok(ComplexIv {
                    re: DyadicInterval::zero(work),
                    im: DyadicInterval::sqrt_of_int(&-d.clone(), work)?,
                })
            } else {
                Ok(ComplexIv {
                    re: DyadicInterval::sqrt_of_int(d, work)?,
                    im: DyadicInterval::zero(work),
                })
            }
        })
        .collect::<Result<_, ScalarError>>()?;
    let mut acc = ComplexIv {
        re: DyadicInterval::zero(work),
        im: DyadicInterval::zero(work),
    };
    for (mask, c) in t.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = ComplexIv {
            re: DyadicInterval::from_rational(c, work),
            im: DyadicInterval::zero(work),
        };
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                term = ComplexIv {
                    re: term.re.mul(&r.re).sub(&term.im.mul(&r.im)),
                    im: term.re.mul(&r.im).add(&term.im.mul(&r.re)),
                };
            }
        }
        acc = ComplexIv {
            re: acc.re.add(&term.re),
            im: acc.im.add(&term.im),
        };
    }
    Ok(ComplexIv {
        re: acc.re.round_to(prec),
        im: acc.im.round_to(prec),
    })
}

/// (ln |z|, arg z) of a nonzero tower value.
fn log_embedding(t: &TowerElement, prec: u32) -> Result<(DyadicInterval, DyadicInterval), ScalarError> {
    let z = embed_complex(t, prec + 16)?;
    let norm2 = z.re.mul(&z.re).add(&z.im.mul(&z.im));
    if !norm2.is_strictly_positive() {
        return Err(ScalarError::NotEmbeddable); // precision exhausted; caller raises it
    }
    let half_ln = ln(&norm2).scale_pow2(-1);
    let arg = atan2(&z.im, &z.re);
    Ok((half_ln.round_to(prec), arg.round_to(prec)))
}

/// Is x a root of unity? Orders in quadratic towers divide 24 or 30 at the
/// degrees supported here; checked exactly.
pub fn is_torsion(x: &ExactScalar) -> bool {
    if x.is_zero() {
        return false;
    }
    if let Some(r) = x.as_rational() {
        return r.is_one() || (-r).is_one();
    }
    let mut p = x.clone();
    for _ in 1..=30 {
        p = match p.mul(x) {
            Ok(v) => v,
            Err(_) => return false,
        };
        if let Some(r) = p.as_rational() {
            if r.is_one() || (-r).is_one() {
                return true;
            }
        }
    }
    false
}

/// Registry of multiplicatively independent tower values with verified
/// expansions of everything previously seen.
#[derive(Debug)]
pub struct MulRegistry {
    precision: u32,
    height: BigInt,
    basis: Vec<ExactScalar>,
    basis_logs: Vec<(DyadicInterval, DyadicInterval)>,
    memo: BTreeMap<String, Vec<(Sym, BigRational)>>,
}

impl Default for MulRegistry {
    fn default() -> Self {
        MulRegistry::new(320, BigInt::from(10_000))
    }
}

impl MulRegistry {
    pub fn new(precision: u32, height: BigInt) -> Self {
        MulRegistry {
            precision,
            height,
            basis: Vec::new(),
            basis_logs: Vec::new(),
            memo: BTreeMap::new(),
        }
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// Expand a nonzero field element into multiplicative basis symbols
    /// with rational exponents, modulo torsion. Rationals and rational
    /// functions use exact factorization; tower values go through the
    /// verified heuristic basis.
    pub fn expand(&mut self, x: &ExactScalar) -> Result<Vec<(Sym, BigRational)>, ScalarError> {
        if x.is_zero() {
            return Err(ScalarError::ZeroElement);
        }
        let x = x.clone().simplify();
        match &x {
            ExactScalar::Rat(r) => {
                let (_, primes) = factor_rational(r);
                Ok(primes
                    .into_iter()
                    .map(|(p, e)| (Sym::new(format!("p:{p}")), BigRational::from_integer(e.into())))
                    .collect())
            }
            ExactScalar::Fun(_) => {
                // delegate to the exact expansion in the tensor layer
                let v = crate::linear::tensor::mult_expand(&x)
                    .map_err(|_| ScalarError::ZeroElement)?;
                Ok(v.into_iter()
                    .map(|(s, e)| (s, BigRational::from_integer(e.into())))
                    .collect())
            }
            ExactScalar::Tower(t) => {
                let t = t.canonical_minimal();
                // rational content splits off exactly
                let content = tower_content(&t);
                let prim = t.scale(&content.recip());
                let mut out: Vec<(Sym, BigRational)> = Vec::new();
                let c_abs = content.abs();
                if !c_abs.is_one() {
                    let (_, primes) = factor_rational(&c_abs);
                    for (p, e) in primes {
                        push_merge(&mut out, Sym::new(format!("p:{p}")), BigRational::from_integer(e.into()));
                    }
                }
                let prim_scalar = ExactScalar::Tower(prim.clone()).simplify();
                if let Some(r) = prim_scalar.as_rational() {
                    // primitive part collapsed to ±1
                    debug_assert!(r.is_one() || (-r).is_one());
                    out.retain(|(_, e)| !e.is_zero());
                    return Ok(out);
                }
                for (s, e) in self.expand_primitive(&prim)? {
                    push_merge(&mut out, s, e);
                }
                out.retain(|(_, e)| !e.is_zero());
                out.sort();
                Ok(out)
            }
        }
    }

    fn expand_primitive(&mut self, prim: &TowerElement) -> Result<Vec<(Sym, BigRational)>, ScalarError> {
        let token = canonical_token(&ExactScalar::Tower(prim.clone()));
        if let Some(hit) = self.memo.get(&token) {
            return Ok(hit.clone());
        }
        let value = ExactScalar::Tower(prim.clone());
        if is_torsion(&value) {
            self.memo.insert(token, vec![]);
            return Ok(vec![]);
        }
        // relation search against the current basis
        if let Some(expansion) = self.search_relation(&value)? {
            self.memo.insert(token.clone(), expansion.clone());
            return Ok(expansion);
        }
        // independent as far as we can tell: new basis element
        self.basis.push(value.clone());
        let logs = log_embedding(prim, self.precision)?;
        self.basis_logs.push(logs);
        let sym = Sym::new(format!("u:{token}"));
        let expansion = vec![(sym, BigRational::one())];
        self.memo.insert(token, expansion.clone());
        Ok(expansion)
    }

    fn search_relation(&mut self, value: &ExactScalar) -> Result<Option<Vec<(Sym, BigRational)>>, ScalarError> {
        if self.basis.is_empty() {
            return Ok(None);
        }
        let prec = self.precision;
        let ExactScalar::Tower(t) = value else {
            return Ok(None);
        };
        let vlogs = log_embedding(t, prec)?;
        // lattice rows: identity | N*ln | N*arg, plus a 2*pi row for the
        // argument ambiguity
        let m = self.basis.len();
        let scale_bits = prec.saturating_sub(48);
        let scaled = |iv: &DyadicInterval| -> BigInt {
            let mid = &iv.lo + &iv.hi;
            let shift = iv.prec as i64 + 1 - scale_bits as i64;
            if shift >= 0 {
                mid >> shift as u32
            } else {
                mid << (-shift) as u32
            }
        };
        let two_pi = pi(prec).scale_pow2(1);
        let cols = m + 2 + 2;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, logs) in self.basis_logs.iter().enumerate() {
            let mut r = vec![BigInt::zero(); cols];
            r[i] = BigInt::one();
            r[m + 2] = scaled(&logs.0);
            r[m + 3] = scaled(&logs.1);
            rows.push(r);
        }
        {
            let mut r = vec![BigInt::zero(); cols];
            r[m] = BigInt::one();
            r[m + 2] = scaled(&vlogs.0);
            r[m + 3] = scaled(&vlogs.1);
            rows.push(r);
        }
        {
            // the 2*pi*i row only contributes to the argument column
            let mut r = vec![BigInt::zero(); cols];
            r[m + 1] = BigInt::one();
            r[m + 3] = scaled(&two_pi);
            rows.push(r);
        }
        let mut reduced = lll_reduce(rows);
        sort_by_norm(&mut reduced);
        for cand in &reduced {
            let e_val = cand[m].clone();
            if e_val.is_zero() {
                continue;
            }
            if cand[..m + 2]
                .iter()
                .any(|c| c.magnitude() > self.height.magnitude())
            {
                continue;
            }
            // exact verification: value^e * prod basis^e_i must be torsion
            let mut acc = pow_scalar(value, &e_val)?;
            for (i, b) in self.basis.iter().enumerate() {
                if cand[i].is_zero() {
                    continue;
                }
                acc = acc.mul(&pow_scalar(b, &cand[i])?)?;
            }
            if is_torsion(&acc) {
                // value = -(1/e_val) * sum e_i [b_i] modulo torsion
                let inv = BigRational::from_integer(e_val).recip();
                let mut expansion = Vec::new();
                for (i, b) in self.basis.iter().enumerate() {
                    if cand[i].is_zero() {
                        continue;
                    }
                    let coeff = -BigRational::from_integer(cand[i].clone()) * &inv;
                    let token = canonical_token(b);
                    expansion.push((Sym::new(format!("u:{token}")), coeff));
                }
                expansion.sort();
                return Ok(Some(expansion));
            }
        }
        Ok(None)
    }
}

fn push_merge(out: &mut Vec<(Sym, BigRational)>, s: Sym, e: BigRational) {
    if let Some(slot) = out.iter_mut().find(|(t, _)| *t == s) {
        slot.1 += e;
    } else {
        out.push((s, e));
    }
}

fn pow_scalar(x: &ExactScalar, e: &BigInt) -> Result<ExactScalar, ScalarError> {
    let mut n = e.magnitude().clone();
    let base = if e.is_negative() { x.inv()? } else { x.clone() };
    let mut acc = ExactScalar::one();
    let mut sq = base;
    while !n.is_zero() {
        if (&n % 2u32) == num_bigint::BigUint::from(1u32) {
            acc = acc.mul(&sq)?;
        }
        sq = sq.mul(&sq)?;
        n >>= 1;
    }
    Ok(acc)
}

fn tower_content(t: &TowerElement) -> BigRational {
    use num_integer::Integer;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in t.coords() {
        if c.is_zero() {
            continue;
        }
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    let mut content = BigRational::new(num, den);
    if t.lex_sign() < 0 {
        content = -content;
    }
    content
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse::parse_scalar;

    fn expand_sum(reg: &mut MulRegistry, vals: &[(&ExactScalar, i64)]) -> Vec<(Sym, BigRational)> {
        let mut acc: Vec<(Sym, BigRational)> = Vec::new();
        for (v, mult) in vals {
            for (s, e) in reg.expand(v).unwrap() {
                push_merge(&mut acc, s, e * BigRational::from_integer((*mult).into()));
            }
        }
        acc.retain(|(_, e)| !e.is_zero());
        acc
    }

    #[test]
    fn product_relation_detected_and_verified() {
        let mut reg = MulRegistry::default();
        let a = parse_scalar("1 + sqrt(2)").unwrap();
        let b = parse_scalar("3 + sqrt(2)").unwrap();
        let c = a.mul(&b).unwrap(); // (1+r2)(3+r2) = 5 + 4 r2
        // [a] + [b] - [ab] = 0
        let total = expand_sum(&mut reg, &[(&a, 1), (&b, 1), (&c, -1)]);
        assert!(total.is_empty(), "leftover: {total:?}");
    }

    #[test]
    fn inverse_and_torsion() {
        let mut reg = MulRegistry::default();
        let i = parse_scalar("sqrt(0-1)").unwrap();
        assert!(reg.expand(&i).unwrap().is_empty()); // i^4 = 1
        let x = parse_scalar("2 + sqrt(3)").unwrap();
        let total = expand_sum(&mut reg, &[(&x, 1), (&x.inv().unwrap(), 1)]);
        assert!(total.is_empty());
    }

    #[test]
    fn independent_values_stay_independent() {
        let mut reg = MulRegistry::default();
        let a = parse_scalar("1 + sqrt(2)").unwrap();
        let b = parse_scalar("1 + sqrt(3)").unwrap();
        let ea = reg.expand(&a).unwrap();
        let eb = reg.expand(&b).unwrap();
        assert_eq!(ea.len(), 1);
        assert_eq!(eb.len(), 1);
        assert_ne!(ea[0].0, eb[0].0);
        assert_eq!(reg.basis_len(), 2);
    }

    #[test]
    fn unit_circle_triple_product() {
        // complex values on the unit circle: z = (3+4i)/5, w = (5+12i)/13,
        // zw: the triple [z] + [w] - [zw] must die
        let mut reg = MulRegistry::default();
        let i = parse_scalar("sqrt(0-1)").unwrap();
        let z = ExactScalar::from_int(3)
            .add(&ExactScalar::from_int(4).mul(&i).unwrap())
            .unwrap()
            .div(&ExactScalar::from_int(5))
            .unwrap();
        let w = ExactScalar::from_int(5)
            .add(&ExactScalar::from_int(12).mul(&i).unwrap())
            .unwrap()
            .div(&ExactScalar::from_int(13))
            .unwrap();
        let zw = z.mul(&w).unwrap();
        let total = expand_sum(&mut reg, &[(&z, 1), (&w, 1), (&zw, -1)]);
        assert!(total.is_empty(), "leftover: {total:?}");
    }
}
