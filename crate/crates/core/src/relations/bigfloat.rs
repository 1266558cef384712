//! High-precision transcendental evaluation over certified dyadic
//! intervals: pi, ln, atan/atan2, acos. Deterministic for a given
//! precision; every result interval contains the true value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalar::DyadicInterval;

fn widen(iv: &DyadicInterval, ulps: u64) -> DyadicInterval {
    DyadicInterval {
        lo: &iv.lo - BigInt::from(ulps),
        hi: &iv.hi + BigInt::from(ulps),
        prec: iv.prec,
    }
}

fn exact(num: BigInt, prec: u32) -> DyadicInterval {
    DyadicInterval {
        lo: num.clone(),
        hi: num,
        prec,
    }
}

/// arctan(1/n) for integer n >= 2, by the alternating series.
fn atan_inv_int(n: u64, prec: u32) -> DyadicInterval {
    let work = prec + 16;
    let one = BigInt::from(1) << work;
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut term = one.div_floor(&BigInt::from(n)); // x^(2k+1)/n^(2k+1) scaled
    let mut acc = BigInt::zero();
    let mut k = 0u64;
    loop {
        let contrib = term.div_floor(&BigInt::from(2 * k + 1));
        if contrib.is_zero() {
            break;
        }
        if k % 2 == 0 {
            acc += &contrib;
        } else {
            acc -= &contrib;
        }
        term = term.div_floor(&n2);
        k += 1;
        if term.is_zero() {
            break;
        }
    }
    // truncation error below one ulp of the working precision; rounding
    // error at most k ulps
    let iv = DyadicInterval {
        lo: &acc - BigInt::from(k + 2),
        hi: &acc + BigInt::from(k + 2),
        prec: work,
    };
    iv.round_to(prec)
}

/// pi by the Machin formula 16 atan(1/5) - 4 atan(1/239).
pub fn pi(prec: u32) -> DyadicInterval {
    let work = prec + 8;
    let a = atan_inv_int(5, work);
    let b = atan_inv_int(239, work);
    let sixteen = exact(BigInt::from(16) << work, work);
    let four = exact(BigInt::from(4) << work, work);
    a.mul(&sixteen).sub(&b.mul(&four)).round_to(prec)
}

fn ln2(prec: u32) -> DyadicInterval {
    // ln 2 = 2 atanh(1/3)
    let work = prec + 16;
    let third = DyadicInterval::from_rational(
        &num_rational::BigRational::new(1.into(), 3.into()),
        work,
    );
    atanh_small(&third, work).scale_pow2(1).round_to(prec)
}

/// atanh for |x| <= 1/2, by the odd series.
fn atanh_small(x: &DyadicInterval, prec: u32) -> DyadicInterval {
    let x2 = x.mul(x);
    let mut power = x.clone();
    let mut acc = DyadicInterval::zero(prec);
    let mut k = 0u64;
    loop {
        let denom = exact(BigInt::from(2 * k + 1), 0);
        let term = DyadicInterval {
            lo: power.lo.div_floor(&denom.lo),
            hi: {
                let q = power.hi.div_floor(&denom.lo);
                if (&power.hi % &denom.lo).is_zero() {
                    q
                } else {
                    q + 1
                }
            },
            prec,
        };
        if term.lo.magnitude().max(term.hi.magnitude()) < &num_bigint::BigUint::from(1u32) {
            break;
        }
        acc = acc.add(&term);
        power = power.mul(&x2);
        k += 1;
        if k > 4 * prec as u64 {
            break;
        }
    }
    // geometric tail bound: |x| <= 1/2 so the tail is below 2 ulps
    widen(&acc, k + 4)
}

/// Natural log of a strictly positive interval.
pub fn ln(x: &DyadicInterval) -> DyadicInterval {
    let prec = x.prec;
    let work = prec + 24;
    let x = x.round_to(work);
    assert!(x.is_strictly_positive(), "ln needs a positive argument");
    // range reduction: x = m * 2^e with m in [1, 2)
    let bits = x.lo.bits() as i64;
    let e = bits - 1 - work as i64;
    let m = x.scale_pow2(-e);
    // ln m = 2 atanh((m-1)/(m+1))
    let one = exact(BigInt::from(1) << work, work);
    let num = m.sub(&one);
    let den = m.add(&one);
    let t = num.div(&den).expect("denominator positive");
    let ln_m = atanh_small(&t, work).scale_pow2(1);
    let l2 = ln2(work);
    let e_iv = exact(BigInt::from(e) << work, work);
    ln_m.add(&l2.mul(&e_iv)).round_to(prec)
}

/// arctan over the whole line.
pub fn atan(x: &DyadicInterval) -> DyadicInterval {
    let prec = x.prec;
    let work = prec + 24;
    let mut x = x.round_to(work);
    let mut negate = false;
    if x.hi.is_negative() {
        x = x.neg();
        negate = true;
    } else if x.lo.is_negative() {
        // straddles zero: small argument, series is fine after clamping
    }
    // |x| > 1: atan(x) = pi/2 - atan(1/x)
    let one_scaled = BigInt::from(1) << work;
    let big = x.lo.magnitude() > one_scaled.magnitude();
    let mut result = if big {
        let inv = exact(one_scaled.clone(), work).div(&x).expect("nonzero");
        let half_pi = pi(work).scale_pow2(-1);
        half_pi.sub(&atan_reduced(&inv, work))
    } else {
        atan_reduced(&x, work)
    };
    if negate {
        result = result.neg();
    }
    result.round_to(prec)
}

/// arctan for |x| <= 1 via argument halving then the Taylor series.
fn atan_reduced(x: &DyadicInterval, prec: u32) -> DyadicInterval {
    let mut x = x.clone();
    let mut doublings = 0u32;
    let threshold = BigInt::from(1) << (prec - 4); // 1/16
    for _ in 0..6 {
        if x.lo.magnitude().max(x.hi.magnitude()) <= threshold.magnitude() {
            break;
        }
        // x <- x / (1 + sqrt(1 + x^2))
        let one = exact(BigInt::from(1) << prec, prec);
        let s = one.add(&x.mul(&x)).sqrt().expect("positive");
        let den = one.add(&s);
        x = x.div(&den).expect("positive denominator");
        doublings += 1;
    }
    let x2 = x.mul(&x).neg(); // alternating series via (-x^2)^k
    let mut power = x.clone();
    let mut acc = DyadicInterval::zero(prec);
    let mut k = 0u64;
    loop {
        let d = BigInt::from(2 * k + 1);
        let term = DyadicInterval {
            lo: power.lo.div_floor(&d),
            hi: {
                let q = power.hi.div_floor(&d);
                if (&power.hi % &d).is_zero() {
                    q
                } else {
                    q + 1
                }
            },
            prec,
        };
        if term.lo.magnitude().max(term.hi.magnitude()) < &num_bigint::BigUint::from(1u32) {
            break;
        }
        acc = acc.add(&term);
        power = power.mul(&x2);
        k += 1;
        if k > 4 * prec as u64 {
            break;
        }
    }
    let mut out = widen(&acc, k + 4);
    out = out.scale_pow2(doublings as i64);
    out
}

/// Two-argument arctangent with the usual quadrant conventions; the result
/// lies in (-pi, pi].
pub fn atan2(y: &DyadicInterval, x: &DyadicInterval) -> DyadicInterval {
    let prec = y.prec.max(x.prec);
    let x = x.round_to(prec);
    let y = y.round_to(prec);
    if x.is_strictly_positive() {
        return atan(&y.div(&x).expect("x nonzero"));
    }
    if x.is_strictly_negative() {
        let base = atan(&y.div(&x).expect("x nonzero"));
        let p = pi(prec);
        if y.is_strictly_negative() {
            return base.sub(&p);
        }
        return base.add(&p);
    }
    // x straddles or equals zero: fall back to y's sign (quarter turns)
    let p = pi(prec);
    if y.is_strictly_positive() {
        return p.scale_pow2(-1);
    }
    if y.is_strictly_negative() {
        return p.scale_pow2(-1).neg();
    }
    panic!("atan2 of an interval pair straddling the origin");
}

/// arccos on [-1, 1], as atan2(sqrt(1 - x^2), x); the result lies in
/// [0, pi].
pub fn acos(x: &DyadicInterval) -> DyadicInterval {
    let prec = x.prec;
    let work = prec + 16;
    let x = x.round_to(work);
    let one = exact(BigInt::from(1) << work, work);
    let mut s2 = one.sub(&x.mul(&x));
    // clamp tiny negative rounding slack at the endpoints
    if s2.lo.is_negative() {
        s2.lo = BigInt::zero();
        if s2.hi.is_negative() {
            s2.hi = BigInt::zero();
        }
    }
    let s = s2.sqrt().expect("nonnegative");
    atan2(&s, &x).round_to(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> DyadicInterval {
        DyadicInterval::from_rational(&BigRational::new(n.into(), d.into()), 256)
    }

    #[test]
    fn pi_digits() {
        let p = pi(256);
        let s = p.decimal_string(50);
        assert!(s.starts_with("3.14159265358979323846264338327950288419716939937510"[..45].to_string().as_str()));
        assert!(p.width_le_pow2(-250));
    }

    #[test]
    fn ln_of_e_vicinity() {
        // ln 2 + ln(1/2) = 0
        let l2 = ln(&rat(2, 1));
        let lh = ln(&rat(1, 2));
        let sum = l2.add(&lh);
        assert!(sum.contains_rational(&BigRational::from_integer(0.into())));
        // ln 2 = 0.693147...
        assert!(l2.decimal_string(10).starts_with("0.6931471805"));
    }

    #[test]
    fn acos_of_special_values() {
        let p = pi(256);
        // acos(0) = pi/2
        let a = acos(&rat(0, 1));
        let diff = a.scale_pow2(1).sub(&p);
        assert!(diff.contains_zero() || diff.abs().width_le_pow2(-240));
        // acos(-1/2) = 2 pi / 3
        let a = acos(&rat(-1, 2));
        let three_a = a.mul(&rat(3, 1).scale_pow2(0));
        let two_pi = p.scale_pow2(1);
        let d = three_a.sub(&two_pi);
        assert!(d.contains_zero());
        // acos(1/3) = 1.23095941734... (tetrahedral angle)
        let a = acos(&rat(1, 3));
        assert!(a.decimal_string(10).starts_with("1.2309594173"));
    }

    #[test]
    fn atan_large_and_small() {
        let p = pi(256);
        // atan(1) = pi/4
        let a = atan(&rat(1, 1));
        let d = a.scale_pow2(2).sub(&p);
        assert!(d.contains_zero());
        // atan(x) + atan(1/x) = pi/2 for x > 0
        let x = rat(7, 3);
        let s = atan(&x).add(&atan(&rat(3, 7)));
        let d = s.scale_pow2(1).sub(&p);
        assert!(d.contains_zero());
    }
}
