//! Directed-rounding dyadic interval arithmetic.
//!
//! An interval holds integer endpoints at a fixed binary scale; all
//! operations round outward, so the true real value is always contained.
//! This is the certified layer under `embed_float` and the high-precision
//! transcendental evaluations of the relation finder.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ScalarError;

/// The closed interval [lo, hi] / 2^prec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn shift_floor(x: &BigInt, bits: u32) -> BigInt {
    // arithmetic shift right is floor division for BigInt
    x >> bits
}

fn shift_ceil(x: &BigInt, bits: u32) -> BigInt {
    let mask = (BigInt::from(1) << bits) - 1;
    if (x & &mask).is_zero() {
        x >> bits
    } else {
        (x >> bits) + 1
    }
}

impl DyadicInterval {
    pub fn zero(prec: u32) -> Self {
        DyadicInterval {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            prec,
        }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        let v = n << prec;
        DyadicInterval {
            lo: v.clone(),
            hi: v,
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let scaled = r.numer() << prec;
        let lo = scaled.div_floor(r.denom());
        let hi = if (&scaled % r.denom()).is_zero() {
            lo.clone()
        } else {
            &lo + 1
        };
        DyadicInterval { lo, hi, prec }
    }

    /// sqrt(d) for a nonnegative integer d.
    pub fn sqrt_of_int(d: &BigInt, prec: u32) -> Result<Self, ScalarError> {
        if d.is_negative() {
            return Err(ScalarError::NotEmbeddable);
        }
        let scaled = d << (2 * prec);
        let lo = scaled.sqrt();
        let hi = if &lo * &lo == scaled { lo.clone() } else { &lo + 1 };
        Ok(DyadicInterval { lo, hi, prec })
    }

    /// Outward square root of a nonnegative interval.
    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        if self.lo.is_negative() {
            // tolerate tiny negative slack from rounding: clamp at zero
            if self.hi.is_negative() {
                return Err(ScalarError::NotEmbeddable);
            }
        }
        let p = self.prec;
        let lo_c = if self.lo.is_negative() { BigInt::zero() } else { self.lo.clone() };
        let lo = (lo_c << p).sqrt();
        let hi_scaled = &self.hi << p;
        let hs = hi_scaled.sqrt();
        let hi = if &hs * &hs == hi_scaled { hs } else { hs + 1 };
        Ok(DyadicInterval { lo, hi, prec: p })
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prec, other.prec);
        DyadicInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DyadicInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prec, other.prec);
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        DyadicInterval {
            lo: shift_floor(&lo, self.prec),
            hi: shift_ceil(&hi, self.prec),
            prec: self.prec,
        }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        let c_iv = DyadicInterval::from_rational(c, self.prec);
        self.mul(&c_iv)
    }

    /// Multiply by 2^k (k may be negative).
    pub fn scale_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            DyadicInterval {
                lo: &self.lo << k as u32,
                hi: &self.hi << k as u32,
                prec: self.prec,
            }
        } else {
            DyadicInterval {
                lo: shift_floor(&self.lo, (-k) as u32),
                hi: shift_ceil(&self.hi, (-k) as u32),
                prec: self.prec,
            }
        }
    }

    /// Outward reciprocal; fails if the interval straddles zero.
    pub fn recip(&self) -> Result<Self, ScalarError> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(ScalarError::DivisionByZero);
        }
        let p = self.prec;
        let scaled = BigInt::from(1) << (2 * p);
        let lo = scaled.div_floor(&self.hi);
        let hi = shift_ceil_div(&scaled, &self.lo);
        Ok(DyadicInterval { lo, hi, prec: p })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn round_to(&self, prec: u32) -> Self {
        if prec == self.prec {
            return self.clone();
        }
        if prec > self.prec {
            let k = prec - self.prec;
            return DyadicInterval {
                lo: &self.lo << k,
                hi: &self.hi << k,
                prec,
            };
        }
        let k = self.prec - prec;
        DyadicInterval {
            lo: shift_floor(&self.lo, k),
            hi: shift_ceil(&self.hi, k),
            prec,
        }
    }

    pub fn width_le_pow2(&self, e: i64) -> bool {
        // width <= 2^e  <=>  hi - lo <= 2^(e + prec)
        let w = &self.hi - &self.lo;
        let bound_exp = e + self.prec as i64;
        if bound_exp < 0 {
            return w.is_zero();
        }
        w <= (BigInt::from(1) << bound_exp as u32)
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        // lo/2^p <= r <= hi/2^p
        let scaled_num = r.numer() << self.prec;
        &self.lo * r.denom() <= scaled_num && scaled_num <= &self.hi * r.denom()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            DyadicInterval {
                lo: BigInt::zero(),
                hi: self.hi.magnitude().max(self.lo.magnitude()).clone().into(),
                prec: self.prec,
            }
        }
    }

    /// Largest e with |x| < 2^e certain, as a rough magnitude log; None for
    /// intervals containing zero.
    pub fn log2_magnitude_upper(&self) -> i64 {
        let m = self.lo.magnitude().max(self.hi.magnitude());
        (m.bits() as i64) - self.prec as i64
    }

    pub fn midpoint_f64(&self) -> BigRational {
        let two = BigInt::from(2);
        BigRational::new(&self.lo + &self.hi, &two << self.prec)
    }

    pub fn lo_f64(&self) -> f64 {
        BigRational::new(self.lo.clone(), BigInt::from(1) << self.prec)
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Decimal rendering of the midpoint with the given number of digits.
    pub fn decimal_string(&self, digits: usize) -> String {
        let mid_num = &self.lo + &self.hi;
        let den = BigInt::from(2) << self.prec;
        let neg = mid_num.is_negative();
        let num = mid_num.magnitude().clone();
        let scale = num_bigint::BigUint::from(10u32).pow(digits as u32);
        let scaled = (&num * &scale) / den.magnitude();
        let s = scaled.to_string();
        let (int_part, frac_part) = if s.len() > digits {
            (s[..s.len() - digits].to_string(), s[s.len() - digits..].to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", s, width = digits))
        };
        format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
    }
}

fn shift_ceil_div(num: &BigInt, den: &BigInt) -> BigInt {
    let q = num.div_floor(den);
    if (num - &q * den).is_zero() {
        q
    } else {
        q + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_containment() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        let iv = DyadicInterval::from_rational(&r, 80);
        assert!(iv.contains_rational(&r));
        assert!(iv.width_le_pow2(-79));
    }

    #[test]
    fn sqrt_and_mul() {
        let iv = DyadicInterval::sqrt_of_int(&BigInt::from(2), 120).unwrap();
        let sq = iv.mul(&iv);
        let two = BigRational::from_integer(2.into());
        assert!(sq.contains_rational(&two));
        assert!(sq.width_le_pow2(-110));
    }

    #[test]
    fn recip_of_three() {
        let iv = DyadicInterval::from_int(&BigInt::from(3), 100);
        let r = iv.recip().unwrap();
        assert!(r.contains_rational(&BigRational::new(1.into(), 3.into())));
    }
}
