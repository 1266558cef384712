//! Exact arithmetic in the base fields: the rationals, real quadratic
//! towers with square roots adjoined on demand, and multivariate rational
//! function fields over the rationals.
//!
//! Every value has decidable equality; towers with only positive radicands
//! additionally have a decidable sign and a certified real embedding.

pub mod embed;
pub mod factor;
pub mod mpoly;
pub mod parse;
pub mod ratfunc;
pub mod tower;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub use embed::DyadicInterval;
pub use ratfunc::RatFunc;
pub use tower::{TowerElement, TowerField};

/// Errors raised by field arithmetic and field-changing operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("negative radicand: the real embedding cannot be extended by sqrt({0})")]
    NegativeRadicand(String),
    #[error("value has no canonical real embedding")]
    NotEmbeddable,
    #[error("zero element has no multiplicative factorization")]
    ZeroElement,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("square root of {0} is not expressible with rational radicands")]
    IrrationalRadicand(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Tag identifying which field a computation runs in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldTag {
    /// The rational numbers.
    Rational,
    /// A quadratic tower over the rationals.
    Tower(TowerField),
    /// A rational function field over the rationals in the named variables.
    FunField(Vec<String>),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Tower(t) => write!(f, "{t}"),
            FieldTag::FunField(vs) => write!(f, "Q({})", vs.join(",")),
        }
    }
}

/// An element of one of the supported computable fields.
///
/// Arithmetic between a rational and a tower or function-field element
/// promotes the rational; arithmetic between two tower elements merges the
/// towers. Mixing a tower element with a function-field element is a
/// `FieldMismatch`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactScalar {
    Rat(BigRational),
    Tower(TowerElement),
    Fun(RatFunc),
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> FieldTag {
        match self {
            ExactScalar::Rat(_) => FieldTag::Rational,
            ExactScalar::Tower(t) => FieldTag::Tower(t.field().clone()),
            ExactScalar::Fun(r) => FieldTag::FunField(r.vars().to_vec()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_zero(),
            ExactScalar::Tower(t) => t.is_zero(),
            ExactScalar::Fun(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_one(),
            ExactScalar::Tower(t) => t.as_rational().map(|r| r.is_one()).unwrap_or(false),
            ExactScalar::Fun(r) => r.is_one(),
        }
    }

    /// The rational value, if the element happens to be rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            ExactScalar::Rat(r) => Some(r.clone()),
            ExactScalar::Tower(t) => t.as_rational(),
            ExactScalar::Fun(r) => r.as_rational(),
        }
    }

    /// Collapse tower elements with all-zero root coordinates back to `Rat`
    /// and constant function-field elements back to `Rat`.
    pub fn simplify(self) -> Self {
        match self {
            ExactScalar::Tower(t) => match t.as_rational() {
                Some(r) => ExactScalar::Rat(r),
                None => ExactScalar::Tower(t),
            },
            ExactScalar::Fun(f) => match f.as_rational() {
                Some(r) => ExactScalar::Rat(r),
                None => ExactScalar::Fun(f),
            },
            s => s,
        }
    }

    fn promote_pair(a: Self, b: Self) -> Result<(Self, Self), ScalarError> {
        use ExactScalar::*;
        Ok(match (a, b) {
            (Rat(x), Rat(y)) => (Rat(x), Rat(y)),
            (Rat(x), Tower(y)) => {
                let t = TowerElement::from_rational(y.field().clone(), x);
                (Tower(t), Tower(y))
            }
            (Tower(x), Rat(y)) => {
                let t = TowerElement::from_rational(x.field().clone(), y);
                (Tower(x), Tower(t))
            }
            (Rat(x), Fun(y)) => {
                let f = RatFunc::constant(y.vars().to_vec(), x);
                (Fun(f), Fun(y))
            }
            (Fun(x), Rat(y)) => {
                let f = RatFunc::constant(x.vars().to_vec(), y);
                (Fun(x), Fun(f))
            }
            (Tower(x), Tower(y)) => {
                let (x, y) = TowerElement::merge_pair(x, y)?;
                (Tower(x), Tower(y))
            }
            (Fun(x), Fun(y)) => {
                if x.vars() != y.vars() {
                    let merged = ratfunc::merge_vars(x.vars(), y.vars());
                    (Fun(x.extend_vars(&merged)), Fun(y.extend_vars(&merged)))
                } else {
                    (Fun(x), Fun(y))
                }
            }
            (Tower(_), Fun(_)) | (Fun(_), Tower(_)) => {
                return Err(ScalarError::FieldMismatch(
                    "cannot mix tower and function-field elements".into(),
                ))
            }
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        let (a, b) = Self::promote_pair(self.clone(), other.clone())?;
        Ok(match (a, b) {
            (ExactScalar::Rat(x), ExactScalar::Rat(y)) => ExactScalar::Rat(x + y),
            (ExactScalar::Tower(x), ExactScalar::Tower(y)) => ExactScalar::Tower(x.add(&y)),
            (ExactScalar::Fun(x), ExactScalar::Fun(y)) => ExactScalar::Fun(x.add(&y)),
            _ => unreachable!(),
        }
        .simplify())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactScalar::Rat(r) => ExactScalar::Rat(-r.clone()),
            ExactScalar::Tower(t) => ExactScalar::Tower(t.neg()),
            ExactScalar::Fun(f) => ExactScalar::Fun(f.neg()),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let (a, b) = Self::promote_pair(self.clone(), other.clone())?;
        Ok(match (a, b) {
            (ExactScalar::Rat(x), ExactScalar::Rat(y)) => ExactScalar::Rat(x * y),
            (ExactScalar::Tower(x), ExactScalar::Tower(y)) => ExactScalar::Tower(x.mul(&y)),
            (ExactScalar::Fun(x), ExactScalar::Fun(y)) => ExactScalar::Fun(x.mul(&y)),
            _ => unreachable!(),
        }
        .simplify())
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            ExactScalar::Rat(r) => ExactScalar::Rat(r.recip()),
            ExactScalar::Tower(t) => ExactScalar::Tower(t.inv()?).simplify(),
            ExactScalar::Fun(f) => ExactScalar::Fun(f.inv()?).simplify(),
        })
    }

    /// Scale by a rational without field promotion ceremony.
    pub fn scale(&self, c: &BigRational) -> Self {
        match self {
            ExactScalar::Rat(r) => ExactScalar::Rat(r * c),
            ExactScalar::Tower(t) => ExactScalar::Tower(t.scale(c)),
            ExactScalar::Fun(f) => ExactScalar::Fun(f.scale(c)),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = ExactScalar::one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Sign under the real embedding: -1, 0 or +1.
    ///
    /// Fails for function-field elements and for towers containing a
    /// negative radicand.
    pub fn sign(&self) -> Result<i32, ScalarError> {
        match self {
            ExactScalar::Rat(r) => Ok(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }),
            ExactScalar::Tower(t) => t.sign(),
            ExactScalar::Fun(_) => Err(ScalarError::NotEmbeddable),
        }
    }

    /// Deterministic tie-break sign: +1 for zero-or-"lex-positive", -1
    /// otherwise. Total on every field and used only to pick canonical
    /// representatives, never as the real sign.
    pub fn lex_sign(&self) -> i32 {
        match self {
            ExactScalar::Rat(r) => {
                if r.is_negative() {
                    -1
                } else {
                    1
                }
            }
            ExactScalar::Tower(t) => t.lex_sign(),
            ExactScalar::Fun(f) => f.lex_sign(),
        }
    }

    /// Interval-certified real approximation with error below
    /// `2^(-precision_bits)`.
    pub fn embed_float(&self, precision_bits: u32) -> Result<DyadicInterval, ScalarError> {
        match self {
            ExactScalar::Rat(r) => Ok(DyadicInterval::from_rational(r, precision_bits + 2)),
            ExactScalar::Tower(t) => t.embed(precision_bits),
            ExactScalar::Fun(_) => Err(ScalarError::NotEmbeddable),
        }
    }

    /// Exact square root within the same kind of field, when one exists.
    pub fn sqrt_exact(&self) -> Option<ExactScalar> {
        match self {
            ExactScalar::Rat(r) => factor::rational_sqrt(r).map(ExactScalar::Rat),
            ExactScalar::Tower(t) => t.sqrt_in_tower().map(ExactScalar::Tower),
            ExactScalar::Fun(_) => None,
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rat(r) => write!(f, "{r}"),
            ExactScalar::Tower(t) => write!(f, "{t}"),
            ExactScalar::Fun(r) => write!(f, "{r}"),
        }
    }
}

/// Result of adjoining a square root to a tower.
#[derive(Debug, Clone)]
pub struct Adjoined {
    /// The (possibly unchanged) tower containing the root.
    pub field: TowerField,
    /// An element of `field` squaring to the requested radicand.
    pub root: TowerElement,
    /// True when the input already contained the root.
    pub already_present: bool,
}

/// Adjoin the square root of `d` (an element of `f` or a rational) to the
/// tower `f`, returning the smallest tower containing it together with a
/// witness root.
///
/// Radicands must be nonnegative under the real embedding when the tower is
/// real-embeddable; negative rational radicands are permitted via
/// [`adjoin_sqrt_formal`] only.
pub fn adjoin_sqrt(f: &TowerField, d: &ExactScalar) -> Result<Adjoined, ScalarError> {
    if f.is_real() {
        let d_sign = match d {
            ExactScalar::Rat(r) => {
                if r.is_negative() {
                    -1
                } else if r.is_zero() {
                    0
                } else {
                    1
                }
            }
            ExactScalar::Tower(t) => t.sign()?,
            ExactScalar::Fun(_) => return Err(ScalarError::UnsupportedField("Q(t)".into())),
        };
        if d_sign < 0 {
            return Err(ScalarError::NegativeRadicand(d.to_string()));
        }
    }
    adjoin_sqrt_formal(f, d)
}

/// Like [`adjoin_sqrt`] but permits negative rational radicands, producing a
/// formally adjoined root with no real embedding.
pub fn adjoin_sqrt_formal(f: &TowerField, d: &ExactScalar) -> Result<Adjoined, ScalarError> {
    let elem = match d {
        ExactScalar::Rat(r) => TowerElement::from_rational(f.clone(), r.clone()),
        ExactScalar::Tower(t) => {
            let (a, _) = TowerElement::merge_pair(t.clone(), TowerElement::zero(f.clone()))?;
            a
        }
        ExactScalar::Fun(_) => return Err(ScalarError::UnsupportedField("Q(t)".into())),
    };
    let field = elem.field().clone();
    if elem.is_zero() {
        return Ok(Adjoined {
            field: field.clone(),
            root: TowerElement::zero(field),
            already_present: true,
        });
    }
    // Square detection first: the radicand may already be a square.
    if let Some(root) = elem.sqrt_in_tower() {
        return Ok(Adjoined {
            field,
            root,
            already_present: true,
        });
    }
    // Otherwise only rational radicands can grow the tower.
    let r = elem
        .as_rational()
        .ok_or_else(|| ScalarError::IrrationalRadicand(elem.to_string()))?;
    let (field, root) = field.adjoin_rational_sqrt(&r);
    Ok(Adjoined {
        field,
        root,
        already_present: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d)
    }

    #[test]
    fn rational_arith() {
        let a = q(1, 3).add(&q(1, 6)).unwrap();
        assert_eq!(a, q(1, 2));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let adj = adjoin_sqrt(&TowerField::rationals(), &ExactScalar::from_int(2)).unwrap();
        assert!(!adj.already_present);
        let two = adj.root.mul(&adj.root);
        assert_eq!(two.as_rational(), Some(BigRational::from_integer(2.into())));
    }

    #[test]
    fn adjoin_square_gives_witness() {
        let adj = adjoin_sqrt(&TowerField::rationals(), &ExactScalar::from_int(9)).unwrap();
        assert!(adj.already_present);
        assert_eq!(adj.field, TowerField::rationals());
        assert_eq!(adj.root.as_rational(), Some(BigRational::from_integer(3.into())));
    }

    #[test]
    fn adjoin_eight_over_sqrt2_tower() {
        let adj2 = adjoin_sqrt(&TowerField::rationals(), &ExactScalar::from_int(2)).unwrap();
        let adj8 = adjoin_sqrt(&adj2.field, &ExactScalar::from_int(8)).unwrap();
        // sqrt(8) = 2*sqrt(2) already lives in the degree-2 tower
        assert!(adj8.already_present);
        assert_eq!(adj8.field, adj2.field);
        let sq = adj8.root.mul(&adj8.root);
        assert_eq!(sq.as_rational(), Some(BigRational::from_integer(8.into())));
        assert!(adj8.root.sign().unwrap() > 0);
    }

    #[test]
    fn negative_radicand_rejected_on_real_tower() {
        let err = adjoin_sqrt(&TowerField::rationals(), &ExactScalar::from_int(-1));
        assert!(matches!(err, Err(ScalarError::NegativeRadicand(_))));
        // formal adjunction is allowed and drops the embedding
        let adj = adjoin_sqrt_formal(&TowerField::rationals(), &ExactScalar::from_int(-1)).unwrap();
        assert!(!adj.field.is_real());
        let m1 = adj.root.mul(&adj.root);
        assert_eq!(m1.as_rational(), Some(BigRational::from_integer((-1).into())));
        assert!(adj.root.sign().is_err());
    }

    #[test]
    fn division_by_zero_detected() {
        assert_eq!(q(1, 1).div(&q(0, 1)), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn tower_fun_mismatch() {
        let t = adjoin_sqrt(&TowerField::rationals(), &ExactScalar::from_int(2))
            .unwrap()
            .root;
        let f = RatFunc::var("t");
        let err = ExactScalar::Tower(t).add(&ExactScalar::Fun(f));
        assert!(matches!(err, Err(ScalarError::FieldMismatch(_))));
    }
}
