//! Bilinearity-normalized tensors with typed slots.
//!
//! Slots come in four kinds: additive (a field element, normalized by
//! pulling the rational content into the coefficient), multiplicative (an
//! element of F* written additively through factorization, torsion
//! dropped), exterior powers of multiplicative slots (sorted with sign),
//! and presented-space slots (symbols reduced modulo the space relations).
//! Canonical forms are unique given the factor bases, so equality of
//! normalized tensors is decidable term-wise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

use crate::scalar::factor::{factor_mpoly, factor_rational};
use crate::scalar::{ExactScalar, RatFunc, TowerElement};

use super::formal::{FormalSum, Sym};
use super::space::PresentedSpace;
use super::LinearError;

/// Kind of one tensor factor.
#[derive(Debug, Clone)]
pub enum SlotKind {
    /// Field element; content goes to the coefficient, the primitive part
    /// becomes the basis marker.
    Additive,
    /// Element of F*, written additively via factorization.
    Multiplicative,
    /// k-fold exterior power of a multiplicative slot.
    Exterior(usize),
    /// Formal symbol in a presented space.
    Space(Arc<PresentedSpace>),
}

/// Raw (pre-normalization) content of one slot in one term.
#[derive(Debug, Clone)]
pub enum RawSlot {
    Scalar(ExactScalar),
    /// Product with integer exponents feeding a multiplicative slot.
    Product(Vec<(ExactScalar, i64)>),
    /// Already-canonicalized multiplicative expansion (registry output).
    PreExpanded(Vec<(Sym, BigRational)>),
    Wedge(Vec<ExactScalar>),
    /// Wedge of already-expanded multiplicative factors.
    WedgePre(Vec<Vec<(Sym, BigRational)>>),
    Symbol(Sym),
    SymbolSum(FormalSum),
}

/// One raw term: coefficient times a tuple of slot contents.
#[derive(Debug, Clone)]
pub struct RawTerm {
    pub coeff: ExactScalar,
    pub slots: Vec<RawSlot>,
}

/// Canonical basis marker of one slot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SlotKey {
    One(Sym),
    Wedge(Vec<Sym>),
}

/// Canonical basis marker of a full tensor term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorKey(pub Vec<SlotKey>);

impl fmt::Display for TensorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|k| match k {
                SlotKey::One(s) => s.to_string(),
                SlotKey::Wedge(v) => {
                    if v.is_empty() {
                        "1".to_string()
                    } else {
                        v.iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(" ^ ")
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" (x) "))
    }
}

/// A normalized element of a tensor product of slot spaces.
#[derive(Debug, Clone)]
pub struct TensorElement {
    kinds: Arc<Vec<SlotKind>>,
    sum: FormalSum<TensorKey>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.sum == other.sum
    }
}

impl TensorElement {
    pub fn zero(kinds: Arc<Vec<SlotKind>>) -> Self {
        TensorElement {
            kinds,
            sum: FormalSum::zero(),
        }
    }

    pub fn kinds(&self) -> &Arc<Vec<SlotKind>> {
        &self.kinds
    }

    pub fn sum(&self) -> &FormalSum<TensorKey> {
        &self.sum
    }

    pub fn is_zero(&self) -> bool {
        self.sum.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinearError> {
        Ok(TensorElement {
            kinds: self.kinds.clone(),
            sum: self.sum.add(&other.sum).map_err(LinearError::Scalar)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinearError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TensorElement {
            kinds: self.kinds.clone(),
            sum: self.sum.neg(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Result<Self, LinearError> {
        Ok(TensorElement {
            kinds: self.kinds.clone(),
            sum: self.sum.scale(c).map_err(LinearError::Scalar)?,
        })
    }

    /// Normalize raw terms into canonical form.
    pub fn normalize(kinds: Arc<Vec<SlotKind>>, terms: Vec<RawTerm>) -> Result<Self, LinearError> {
        let mut sum: FormalSum<TensorKey> = FormalSum::zero();
        for term in terms {
            if term.coeff.is_zero() {
                continue;
            }
            if term.slots.len() != kinds.len() {
                return Err(LinearError::SlotMismatch(format!(
                    "term has {} slots, expected {}",
                    term.slots.len(),
                    kinds.len()
                )));
            }
            // partial expansions: (key prefix, coefficient)
            let mut partial: Vec<(Vec<SlotKey>, ExactScalar)> = vec![(vec![], term.coeff.clone())];
            for (kind, raw) in kinds.iter().zip(&term.slots) {
                let mut next: Vec<(Vec<SlotKey>, ExactScalar)> = Vec::new();
                match (kind, raw) {
                    (SlotKind::Additive, RawSlot::Scalar(x)) => {
                        if x.is_zero() {
                            partial.clear();
                            break;
                        }
                        let (content, marker) = additive_split(x);
                        for (mut prefix, c) in partial.drain(..) {
                            prefix.push(SlotKey::One(marker.clone()));
                            next.push((prefix, c.scale(&content)));
                        }
                    }
                    (SlotKind::Multiplicative, raw) => {
                        let expansion: Vec<(Sym, BigRational)> = match raw {
                            RawSlot::Scalar(x) => to_rational_exp(mult_expand(x)?),
                            RawSlot::Product(factors) => {
                                let mut acc: Vec<(Sym, i64)> = Vec::new();
                                for (x, e) in factors {
                                    for (s, k) in mult_expand(x)? {
                                        acc.push((s, k * e));
                                    }
                                }
                                to_rational_exp(acc)
                            }
                            RawSlot::PreExpanded(v) => v.clone(),
                            _ => {
                                return Err(LinearError::SlotMismatch(
                                    "multiplicative slot needs a scalar".into(),
                                ))
                            }
                        };
                        for (prefix, c) in partial.drain(..) {
                            for (base, e) in &expansion {
                                let mut p2 = prefix.clone();
                                p2.push(SlotKey::One(base.clone()));
                                let scaled = c.scale(e);
                                next.push((p2, scaled));
                            }
                        }
                    }
                    (SlotKind::Exterior(k), RawSlot::Wedge(xs)) => {
                        if xs.len() != *k {
                            return Err(LinearError::SlotMismatch(format!(
                                "wedge of {} factors in an exterior-{} slot",
                                xs.len(),
                                k
                            )));
                        }
                        // expand each factor, then take the alternating product
                        let mut factor_exps: Vec<Vec<(Sym, BigRational)>> = Vec::new();
                        for x in xs {
                            factor_exps.push(to_rational_exp(mult_expand(x)?));
                        }
                        let mut combos: Vec<(Vec<Sym>, ExactScalar)> =
                            vec![(vec![], ExactScalar::one())];
                        for exp in &factor_exps {
                            let mut grown = Vec::new();
                            for (bases, c) in combos.drain(..) {
                                for (b, e) in exp {
                                    let mut b2 = bases.clone();
                                    b2.push(b.clone());
                                    grown.push((b2, c.scale(e)));
                                }
                            }
                            combos = grown;
                        }
                        for (prefix, c) in partial.drain(..) {
                            for (bases, wc) in &combos {
                                let Some((sorted, sign)) = sort_wedge(bases) else {
                                    continue; // repeated factor
                                };
                                let mut p2 = prefix.clone();
                                p2.push(SlotKey::Wedge(sorted));
                                let mut coeff = c.mul(wc).map_err(LinearError::Scalar)?;
                                if sign < 0 {
                                    coeff = coeff.neg();
                                }
                                next.push((p2, coeff));
                            }
                        }
                    }
                    (SlotKind::Exterior(k), RawSlot::WedgePre(factor_exps)) => {
                        if factor_exps.len() != *k {
                            return Err(LinearError::SlotMismatch(format!(
                                "wedge of {} factors in an exterior-{} slot",
                                factor_exps.len(),
                                k
                            )));
                        }
                        let mut combos: Vec<(Vec<Sym>, ExactScalar)> =
                            vec![(vec![], ExactScalar::one())];
                        for exp in factor_exps {
                            let mut grown = Vec::new();
                            for (bases, c) in combos.drain(..) {
                                for (b, e) in exp {
                                    let mut b2 = bases.clone();
                                    b2.push(b.clone());
                                    grown.push((b2, c.scale(e)));
                                }
                            }
                            combos = grown;
                        }
                        for (prefix, c) in partial.drain(..) {
                            for (bases, wc) in &combos {
                                let Some((sorted, sign)) = sort_wedge(bases) else {
                                    continue;
                                };
                                let mut p2 = prefix.clone();
                                p2.push(SlotKey::Wedge(sorted));
                                let mut coeff = c.mul(wc).map_err(LinearError::Scalar)?;
                                if sign < 0 {
                                    coeff = coeff.neg();
                                }
                                next.push((p2, coeff));
                            }
                        }
                    }
                    (SlotKind::Space(_), RawSlot::Symbol(s)) => {
                        for (mut prefix, c) in partial.drain(..) {
                            prefix.push(SlotKey::One(s.clone()));
                            next.push((prefix, c));
                        }
                    }
                    (SlotKind::Space(_), RawSlot::SymbolSum(f)) => {
                        for (prefix, c) in partial.drain(..) {
                            for (sym, d) in f.iter() {
                                let mut p2 = prefix.clone();
                                p2.push(SlotKey::One(sym.clone()));
                                next.push((p2, c.mul(d).map_err(LinearError::Scalar)?));
                            }
                        }
                    }
                    _ => {
                        return Err(LinearError::SlotMismatch(
                            "slot content does not match slot kind".into(),
                        ))
                    }
                }
                partial = next;
            }
            for (keys, c) in partial {
                sum.add_term(TensorKey(keys), c).map_err(LinearError::Scalar)?;
            }
        }
        let mut out = TensorElement { kinds, sum };
        out.reduce_space_slots()?;
        Ok(out)
    }

    /// Reduce every presented-space slot modulo its relations, one slot at
    /// a time; the result is a canonical representative on free symbols.
    fn reduce_space_slots(&mut self) -> Result<(), LinearError> {
        for (pos, kind) in self.kinds.clone().iter().enumerate() {
            let SlotKind::Space(space) = kind else { continue };
            if space.relations().is_empty() {
                // still validate the symbols
                for key in self.sum.keys() {
                    if let SlotKey::One(s) = &key.0[pos] {
                        if !space.contains(s) {
                            return Err(LinearError::UnknownGenerator(format!(
                                "{s} in {}",
                                space.name()
                            )));
                        }
                    }
                }
                continue;
            }
            // group terms by the key with slot `pos` removed
            let mut groups: std::collections::BTreeMap<Vec<SlotKey>, FormalSum> =
                std::collections::BTreeMap::new();
            for (key, c) in self.sum.iter() {
                let SlotKey::One(sym) = &key.0[pos] else {
                    return Err(LinearError::SlotMismatch(
                        "space slot holds a wedge key".into(),
                    ));
                };
                let mut rest = key.0.clone();
                rest.remove(pos);
                groups
                    .entry(rest)
                    .or_default()
                    .add_term(sym.clone(), c.clone())
                    .map_err(LinearError::Scalar)?;
            }
            let mut new_sum: FormalSum<TensorKey> = FormalSum::zero();
            for (rest, group) in groups {
                let reduced = space.canonical_form(&group)?;
                for (sym, c) in reduced.iter() {
                    let mut keys = rest.clone();
                    keys.insert(pos, SlotKey::One(sym.clone()));
                    new_sum
                        .add_term(TensorKey(keys), c.clone())
                        .map_err(LinearError::Scalar)?;
                }
            }
            self.sum = new_sum;
        }
        Ok(())
    }
}

fn to_rational_exp(v: Vec<(Sym, i64)>) -> Vec<(Sym, BigRational)> {
    v.into_iter()
        .map(|(s, e)| (s, BigRational::from_integer(e.into())))
        .collect()
}

fn sort_wedge(bases: &[Sym]) -> Option<(Vec<Sym>, i32)> {
    let mut v: Vec<(usize, &Sym)> = bases.iter().enumerate().collect();
    v.sort_by(|a, b| a.1.cmp(b.1));
    for w in v.windows(2) {
        if w[0].1 == w[1].1 {
            return None;
        }
    }
    // permutation sign by inversion count
    let perm: Vec<usize> = v.iter().map(|(i, _)| *i).collect();
    let mut sign = 1i32;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    Some((v.into_iter().map(|(_, s)| s.clone()).collect(), sign))
}

/// Canonical injective text for a field element, stable across equal
/// representations (towers are first rebuilt over their minimal canonical
/// field).
pub fn canonical_token(x: &ExactScalar) -> String {
    match x.clone().simplify() {
        ExactScalar::Rat(r) => format!("{r}"),
        ExactScalar::Tower(t) => format!("{}", t.canonical_minimal()),
        ExactScalar::Fun(f) => format!("{f}"),
    }
}

/// Split a nonzero field element into rational content and a primitive
/// lex-positive marker symbol.
pub fn additive_split(x: &ExactScalar) -> (BigRational, Sym) {
    let x = x.clone().simplify();
    match &x {
        ExactScalar::Rat(r) => (r.clone(), Sym::new("a:1")),
        ExactScalar::Tower(t) => {
            let t = t.canonical_minimal();
            let content = tower_content(&t);
            let prim = t.scale(&content.recip());
            (content, Sym::new(format!("a:{prim}")))
        }
        ExactScalar::Fun(f) => {
            let (cn, pn) = f.numerator().integer_primitive();
            let prim = RatFunc::new(
                f.vars().to_vec(),
                pn,
                f.denominator().clone(),
            )
            .expect("nonzero denominator");
            (cn, Sym::new(format!("a:{prim}")))
        }
    }
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

/// Expand a nonzero element of F* into basis symbols with integer
/// exponents, modulo torsion (signs and roots of unity are dropped: they
/// die in the rationalized group).
pub fn mult_expand(x: &ExactScalar) -> Result<Vec<(Sym, i64)>, LinearError> {
    if x.is_zero() {
        return Err(LinearError::ZeroInMultiplicativeSlot);
    }
    let x = x.clone().simplify();
    match &x {
        ExactScalar::Rat(r) => {
            let (_, primes) = factor_rational(r);
            Ok(primes
                .into_iter()
                .map(|(p, e)| (Sym::new(format!("p:{p}")), e))
                .collect())
        }
        ExactScalar::Fun(f) => {
            let mut out: Vec<(Sym, i64)> = Vec::new();
            let push = |s: Sym, e: i64, out: &mut Vec<(Sym, i64)>| {
                if e == 0 {
                    return;
                }
                if let Some(slot) = out.iter_mut().find(|(t, _)| *t == s) {
                    slot.1 += e;
                } else {
                    out.push((s, e));
                }
            };
            let (un, nf) = factor_mpoly(f.numerator());
            let (ud, df) = factor_mpoly(f.denominator());
            let unit = un / ud;
            if !unit.is_one() && !(-unit.clone()).is_one() {
                let (_, primes) = factor_rational(&unit);
                for (p, e) in primes {
                    push(Sym::new(format!("p:{p}")), e, &mut out);
                }
            }
            for (poly, e) in nf {
                push(
                    Sym::new(format!("q:{}", poly.display_with(&var_names(f)))),
                    e as i64,
                    &mut out,
                );
            }
            for (poly, e) in df {
                push(
                    Sym::new(format!("q:{}", poly.display_with(&var_names(f)))),
                    -(e as i64),
                    &mut out,
                );
            }
            out.retain(|(_, e)| *e != 0);
            out.sort();
            Ok(out)
        }
        ExactScalar::Tower(t) => {
            let t = t.canonical_minimal();
            let content = tower_content(&t);
            let prim = t.scale(&content.recip());
            let mut out: Vec<(Sym, i64)> = Vec::new();
            let content_abs = if content.is_negative() { -content } else { content };
            if !content_abs.is_one() {
                let (_, primes) = factor_rational(&content_abs);
                for (p, e) in primes {
                    out.push((Sym::new(format!("p:{p}")), e));
                }
            }
            if let Some(expansion) = tower_unit_expand(&prim)? {
                out.extend(expansion);
            }
            out.sort();
            // merge duplicates (content primes can collide with inverse expansion)
            let mut merged: Vec<(Sym, i64)> = Vec::new();
            for (s, e) in out {
                if let Some(last) = merged.last_mut() {
                    if last.0 == s {
                        last.1 += e;
                        continue;
                    }
                }
                merged.push((s, e));
            }
            merged.retain(|(_, e)| *e != 0);
            Ok(merged)
        }
    }
}

/// Canonicalize a primitive lex-positive tower element in F*/torsion:
/// None when it is a root of unity, otherwise the inverse-normalized
/// symbol expansion.
fn tower_unit_expand(prim: &TowerElement) -> Result<Option<Vec<(Sym, i64)>>, LinearError> {
    // torsion detection: prim^k = ±1 for small k (roots of unity in
    // quadratic towers have order dividing 24 or equal 30 at the degrees
    // supported here)
    let mut power = prim.clone();
    for _k in 1..=30 {
        if let Some(r) = power.as_rational() {
            if r.is_one() || (-r.clone()).is_one() {
                return Ok(None);
            }
        }
        power = power.mul(prim);
    }
    // inverse normalization: pick the lexicographically smaller token of
    // the primitive parts of x and 1/x
    let inv = prim.inv().map_err(|e| LinearError::Scalar(e))?;
    let inv = inv.canonical_minimal();
    let inv_content = tower_content(&inv);
    let inv_prim = inv.scale(&inv_content.recip());
    let tok = format!("{prim}");
    let tok_inv = format!("{inv_prim}");
    if tok <= tok_inv {
        Ok(Some(vec![(Sym::new(format!("u:{tok}")), 1)]))
    } else {
        // [x] = -[x^-1 primitive] - [content primes]
        let mut out = vec![(Sym::new(format!("u:{tok_inv}")), -1)];
        let c_abs = if inv_content.is_negative() {
            -inv_content
        } else {
            inv_content
        };
        if !c_abs.is_one() {
            let (_, primes) = factor_rational(&c_abs);
            for (p, e) in primes {
                out.push((Sym::new(format!("p:{p}")), -e));
            }
        }
        Ok(Some(out))
    }
}

fn var_names(f: &RatFunc) -> Vec<String> {
    f.vars().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse::parse_scalar;

    fn kinds(v: Vec<SlotKind>) -> Arc<Vec<SlotKind>> {
        Arc::new(v)
    }

    #[test]
    fn three_tensor_four_becomes_two_three_tensor_two() {
        // 3 (x) 4 in Q (x) Q* -> 2*(3 (x) 2)
        let k = kinds(vec![SlotKind::Additive, SlotKind::Multiplicative]);
        let t = TensorElement::normalize(
            k.clone(),
            vec![RawTerm {
                coeff: ExactScalar::one(),
                slots: vec![
                    RawSlot::Scalar(ExactScalar::from_int(3)),
                    RawSlot::Scalar(ExactScalar::from_int(4)),
                ],
            }],
        )
        .unwrap();
        let expected = TensorElement::normalize(
            k,
            vec![RawTerm {
                coeff: ExactScalar::from_int(2),
                slots: vec![
                    RawSlot::Scalar(ExactScalar::from_int(3)),
                    RawSlot::Scalar(ExactScalar::from_int(2)),
                ],
            }],
        )
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn repeated_wedge_dies() {
        let k = kinds(vec![SlotKind::Additive, SlotKind::Exterior(2)]);
        let b = parse_scalar("t + 1").unwrap();
        let t = TensorElement::normalize(
            k,
            vec![RawTerm {
                coeff: ExactScalar::one(),
                slots: vec![
                    RawSlot::Scalar(parse_scalar("t").unwrap()),
                    RawSlot::Wedge(vec![b.clone(), b]),
                ],
            }],
        )
        .unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn bilinearity_over_function_field() {
        // t (x) ((t-1)*t^2) = (t (x) t-1) + 2 (t (x) t)
        let k = kinds(vec![SlotKind::Additive, SlotKind::Multiplicative]);
        let lhs = TensorElement::normalize(
            k.clone(),
            vec![RawTerm {
                coeff: ExactScalar::one(),
                slots: vec![
                    RawSlot::Scalar(parse_scalar("t").unwrap()),
                    RawSlot::Scalar(parse_scalar("(t - 1)*t*t").unwrap()),
                ],
            }],
        )
        .unwrap();
        let rhs = TensorElement::normalize(
            k,
            vec![
                RawTerm {
                    coeff: ExactScalar::one(),
                    slots: vec![
                        RawSlot::Scalar(parse_scalar("t").unwrap()),
                        RawSlot::Scalar(parse_scalar("t - 1").unwrap()),
                    ],
                },
                RawTerm {
                    coeff: ExactScalar::from_int(2),
                    slots: vec![
                        RawSlot::Scalar(parse_scalar("t").unwrap()),
                        RawSlot::Scalar(parse_scalar("t").unwrap()),
                    ],
                },
            ],
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn torsion_and_inverse_cancel_in_tower_slots() {
        let k = kinds(vec![SlotKind::Additive, SlotKind::Multiplicative]);
        let sqrt2 = parse_scalar("sqrt(2)").unwrap();
        let a = ExactScalar::from_int(5);
        // a (x) (-1) = 0
        let t = TensorElement::normalize(
            k.clone(),
            vec![RawTerm {
                coeff: ExactScalar::one(),
                slots: vec![RawSlot::Scalar(a.clone()), RawSlot::Scalar(ExactScalar::from_int(-1))],
            }],
        )
        .unwrap();
        assert!(t.is_zero());
        // a (x) (1+sqrt2) + a (x) (1/(1+sqrt2)) = 0 (inverse normalization;
        // note 1/(1+sqrt2) = sqrt2 - 1)
        let x = ExactScalar::one().add(&sqrt2).unwrap();
        let t = TensorElement::normalize(
            k,
            vec![
                RawTerm {
                    coeff: ExactScalar::one(),
                    slots: vec![RawSlot::Scalar(a.clone()), RawSlot::Scalar(x.clone())],
                },
                RawTerm {
                    coeff: ExactScalar::one(),
                    slots: vec![RawSlot::Scalar(a), RawSlot::Scalar(x.inv().unwrap())],
                },
            ],
        )
        .unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn space_slot_reduction() {
        let g1 = Sym::new("g1");
        let g2 = Sym::new("g2");
        let rel = FormalSum::gen(g1.clone()).sub(&FormalSum::gen(g2.clone())).unwrap();
        let sp = PresentedSpace::new("V", vec![g1.clone(), g2.clone()], vec![rel]).unwrap();
        let k = kinds(vec![SlotKind::Space(sp), SlotKind::Multiplicative]);
        let t = TensorElement::normalize(
            k,
            vec![
                RawTerm {
                    coeff: ExactScalar::one(),
                    slots: vec![RawSlot::Symbol(g1), RawSlot::Scalar(ExactScalar::from_int(2))],
                },
                RawTerm {
                    coeff: ExactScalar::from_int(-1),
                    slots: vec![RawSlot::Symbol(g2), RawSlot::Scalar(ExactScalar::from_int(2))],
                },
            ],
        )
        .unwrap();
        assert!(t.is_zero());
    }
}
