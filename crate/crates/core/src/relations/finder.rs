//! Heuristic integer-relation detection over certified high-precision
//! reals, with exact-arithmetic post-verification hooks.
//!
//! The search is LLL on the classical relation lattice. A found relation
//! is re-evaluated at twice the precision and must shrink accordingly,
//! otherwise the finder downgrades the answer. "No relation" is a bounded
//! claim (height and precision echoed in the certificate), never a proof.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::DyadicInterval;

use super::lll::{lll_reduce, sort_by_norm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Outcome {
    RelationFound { coefficients: Vec<String> },
    NoRelationUpToHeight,
}

/// Echo of a relation query with its verdict; heuristic by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub outcome: Outcome,
    pub precision_digits: u32,
    pub height_bound: String,
    /// log10 of the certified residual bound for a found relation.
    pub residual_log10: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FinderError {
    #[error("insufficient precision: candidate relation in the ambiguity zone")]
    InsufficientPrecision,
    #[error("relation query needs at least 128 bits of precision")]
    PrecisionTooLow,
}

pub fn digits_to_bits(digits: u32) -> u32 {
    // log2(10) ~ 3.3219
    (digits as f64 * 3.3219897).ceil() as u32 + 16
}

/// Search for integer coefficients c, |c| <= height, with sum c_i v_i = 0.
///
/// `values_at` must return certified intervals for the fixed value list at
/// any requested precision; it is called again at doubled precision to
/// confirm a candidate.
pub fn find_relation(
    values_at: &dyn Fn(u32) -> Vec<DyadicInterval>,
    precision_bits: u32,
    height_bound: &BigInt,
) -> Result<(RelationCertificate, Option<Vec<BigInt>>), FinderError> {
    if precision_bits < 128 {
        return Err(FinderError::PrecisionTooLow);
    }
    let digits = (precision_bits as f64 / 3.3219897) as u32;
    let values = values_at(precision_bits);
    let m = values.len();
    let mk_cert = |outcome: Outcome, residual: Option<i64>| RelationCertificate {
        outcome,
        precision_digits: digits,
        height_bound: height_bound.to_string(),
        residual_log10: residual,
    };
    if m == 0 {
        return Ok((mk_cert(Outcome::NoRelationUpToHeight, None), None));
    }
    // scale: leave a margin so honest relations round to tiny tails
    let margin = 32 + m as u32 * 4;
    let scale_bits = precision_bits.saturating_sub(margin);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    for (i, v) in values.iter().enumerate() {
        let mut row = vec![BigInt::zero(); m + 1];
        row[i] = BigInt::from(1);
        let mid = &v.lo + &v.hi;
        // value scaled to 2^scale_bits (mid is at 2^(prec+1))
        let shift = v.prec as i64 + 1 - scale_bits as i64;
        row[m] = if shift >= 0 {
            mid >> shift as u32
        } else {
            mid << (-shift) as u32
        };
        rows.push(row);
    }
    let mut reduced = lll_reduce(rows);
    sort_by_norm(&mut reduced);

    for cand in &reduced {
        let coeffs = &cand[..m];
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        if coeffs.iter().any(|c| c.magnitude() > height_bound.magnitude()) {
            continue;
        }
        // certified residual at the query precision
        let resid = combine(&values, coeffs);
        let threshold_exp = -(3 * precision_bits as i64 / 4);
        if !resid.contains_zero() && !resid.abs().bounded_by_pow2(threshold_exp) {
            continue;
        }
        // soundness check: re-evaluate at doubled precision
        let values2 = values_at(precision_bits * 2);
        let resid2 = combine(&values2, coeffs);
        let confirm_exp = -(precision_bits as i64);
        if resid2.contains_zero() || resid2.abs().bounded_by_pow2(confirm_exp) {
            let log10 = resid2
                .abs()
                .log2_magnitude_upper()
                .min(confirm_exp)
                * 10
                / 33;
            let c = mk_cert(
                Outcome::RelationFound {
                    coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
                },
                Some(log10),
            );
            return Ok((c, Some(coeffs.to_vec())));
        }
        // passed the first screen but failed confirmation: ambiguity zone
        return Err(FinderError::InsufficientPrecision);
    }
    Ok((mk_cert(Outcome::NoRelationUpToHeight, None), None))
}

fn combine(values: &[DyadicInterval], coeffs: &[BigInt]) -> DyadicInterval {
    let prec = values[0].prec;
    let mut acc = DyadicInterval::zero(prec);
    for (v, c) in values.iter().zip(coeffs) {
        let c_iv = DyadicInterval {
            lo: c << prec,
            hi: c << prec,
            prec,
        };
        acc = acc.add(&v.round_to(prec).mul(&c_iv));
    }
    acc
}

impl DyadicInterval {
    /// |self| <= 2^e, certified.
    pub fn bounded_by_pow2(&self, e: i64) -> bool {
        let bound_exp = e + self.prec as i64;
        if bound_exp < 0 {
            return self.lo.is_zero() && self.hi.is_zero();
        }
        let bound = BigInt::from(1) << bound_exp as u32;
        self.lo.magnitude() <= bound.magnitude() && self.hi.magnitude() <= bound.magnitude()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::bigfloat::{acos, pi};
    use num_rational::BigRational;

    #[test]
    fn pi_over_two_relation() {
        // values (pi/2, pi): relation (2, -1)
        let provider = |p: u32| {
            let pp = pi(p);
            vec![pp.scale_pow2(-1), pp]
        };
        let (cert, coeffs) = find_relation(&provider, 300, &BigInt::from(1000)).unwrap();
        let c = coeffs.expect("relation exists");
        assert!(matches!(cert.outcome, Outcome::RelationFound { .. }));
        let normalized: Vec<BigInt> = if c[0].is_negative() {
            c.iter().map(|x| -x).collect()
        } else {
            c
        };
        assert_eq!(normalized, vec![BigInt::from(2), BigInt::from(-1)]);
    }

    #[test]
    fn acos_minus_half_is_two_thirds_pi() {
        let provider = |p: u32| {
            let x = DyadicInterval::from_rational(&BigRational::new((-1).into(), 2.into()), p);
            vec![acos(&x), pi(p)]
        };
        let (_, coeffs) = find_relation(&provider, 300, &BigInt::from(1000)).unwrap();
        let c = coeffs.expect("relation exists");
        let normalized: Vec<BigInt> = if c[0].is_negative() {
            c.iter().map(|x| -x).collect()
        } else {
            c
        };
        assert_eq!(normalized, vec![BigInt::from(3), BigInt::from(-2)]);
    }

    #[test]
    fn tetrahedral_angle_has_no_small_relation() {
        let provider = |p: u32| {
            let third = DyadicInterval::from_rational(&BigRational::new(1.into(), 3.into()), p);
            vec![acos(&third), pi(p)]
        };
        let (cert, coeffs) = find_relation(&provider, 700, &BigInt::from(1_000_000)).unwrap();
        assert!(coeffs.is_none());
        assert_eq!(cert.outcome, Outcome::NoRelationUpToHeight);
    }

    #[test]
    fn determinism() {
        let provider = |p: u32| {
            let pp = pi(p);
            vec![pp.scale_pow2(-2), pp.scale_pow2(-1), pp]
        };
        let a = find_relation(&provider, 256, &BigInt::from(100)).unwrap();
        let b = find_relation(&provider, 256, &BigInt::from(100)).unwrap();
        assert_eq!(a.0, b.0);
    }
}
