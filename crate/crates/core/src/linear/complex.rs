//! Finite cochain complexes of presented spaces, with exact homology.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::formal::FormalSum;
#[cfg(test)]
use super::formal::Sym;
use super::space::{kernel_basis, LinearMap, PresentedSpace, SpanEchelon};
use super::LinearError;

/// A finite complex: presented spaces indexed by consecutive cohomological
/// degrees, with differentials raising the degree by one.
#[derive(Debug, Clone, Default)]
pub struct FiniteComplex {
    pub terms: BTreeMap<i64, Arc<PresentedSpace>>,
    pub differentials: BTreeMap<i64, LinearMap>,
}

/// Result of a homology computation in one degree.
#[derive(Debug, Clone)]
pub struct Homology {
    pub degree: i64,
    pub dimension: usize,
    pub representatives: Vec<FormalSum>,
}

impl FiniteComplex {
    pub fn term(&self, degree: i64) -> Option<&Arc<PresentedSpace>> {
        self.terms.get(&degree)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    fn zero_space() -> Arc<PresentedSpace> {
        PresentedSpace::free("0", vec![]).expect("empty space")
    }

    /// Verify d∘d = 0 on every generator; the witness names the first
    /// generator whose double image fails to reduce to zero.
    pub fn verify(&self) -> Result<(), LinearError> {
        for (&deg, d1) in &self.differentials {
            let Some(d2) = self.differentials.get(&(deg + 1)) else {
                continue;
            };
            let Some(source) = self.terms.get(&deg) else {
                continue;
            };
            let target2 = self.terms.get(&(deg + 2)).cloned().unwrap_or_else(Self::zero_space);
            for g in source.generators() {
                let once = d1.apply(&FormalSum::gen(g.clone()))?;
                let twice = d2.apply(&once)?;
                let reduced = target2.canonical_form(&twice)?;
                if !reduced.is_zero() {
                    return Err(LinearError::NotAComplex {
                        witness: g.to_string(),
                        degree: deg,
                    });
                }
            }
        }
        Ok(())
    }

    /// Exact homology in one degree: dim ker d − rank of the incoming
    /// differential, with explicit representative cycles.
    pub fn homology(&self, degree: i64) -> Result<Homology, LinearError> {
        self.verify()?;
        let Some(space) = self.terms.get(&degree) else {
            return Ok(Homology {
                degree,
                dimension: 0,
                representatives: vec![],
            });
        };
        // kernel of the outgoing differential (zero map if absent)
        let outgoing = self.differentials.get(&degree).cloned().unwrap_or_default();
        let target = self
            .terms
            .get(&(degree + 1))
            .cloned()
            .unwrap_or_else(Self::zero_space);
        let kernel = kernel_basis(space, &target, &outgoing)?;
        // image span of the incoming differential
        let mut image = SpanEchelon::new();
        if let Some(incoming) = self.differentials.get(&(degree - 1)) {
            if let Some(prev) = self.terms.get(&(degree - 1)) {
                for g in prev.free_generators() {
                    let img = incoming.apply(&FormalSum::gen(g))?;
                    let img = space.canonical_form(&img)?;
                    if !img.is_zero() {
                        image.insert(&img)?;
                    }
                }
            }
        }
        // representatives: kernel vectors reduced modulo the image, then
        // made independent
        let mut reps = SpanEchelon::new();
        let mut representatives = Vec::new();
        for k in kernel {
            let r = image.reduce(&k)?;
            if r.is_zero() {
                continue;
            }
            if let Some(row) = reps.insert(&r)? {
                representatives.push(row);
            }
        }
        Ok(Homology {
            degree,
            dimension: representatives.len(),
            representatives,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    fn sym(s: &str) -> Sym {
        Sym::new(s)
    }

    fn complex_two_terms(identity: bool) -> FiniteComplex {
        let a = PresentedSpace::free("A", vec![sym("a")]).unwrap();
        let b = PresentedSpace::free("B", vec![sym("b")]).unwrap();
        let mut cx = FiniteComplex::default();
        cx.terms.insert(0, a);
        cx.terms.insert(1, b);
        let mut images = BTreeMap::new();
        if identity {
            images.insert(sym("a"), FormalSum::gen(sym("b")));
        }
        cx.differentials.insert(0, LinearMap::new(images));
        cx
    }

    #[test]
    fn identity_complex_has_no_homology() {
        let cx = complex_two_terms(true);
        let h0 = cx.homology(0).unwrap();
        let h1 = cx.homology(1).unwrap();
        assert_eq!(h0.dimension, 0);
        assert_eq!(h1.dimension, 0);
    }

    #[test]
    fn zero_differentials_give_term_dimensions() {
        let cx = complex_two_terms(false);
        assert_eq!(cx.homology(0).unwrap().dimension, 1);
        assert_eq!(cx.homology(1).unwrap().dimension, 1);
    }

    #[test]
    fn non_complex_reports_witness() {
        // A -> B -> C with d(a) = b, d(b) = c: d∘d ≠ 0
        let a = PresentedSpace::free("A", vec![sym("a")]).unwrap();
        let b = PresentedSpace::free("B", vec![sym("b")]).unwrap();
        let c = PresentedSpace::free("C", vec![sym("c")]).unwrap();
        let mut cx = FiniteComplex::default();
        cx.terms.insert(0, a);
        cx.terms.insert(1, b);
        cx.terms.insert(2, c);
        cx.differentials.insert(
            0,
            LinearMap::new([(sym("a"), FormalSum::gen(sym("b")))].into_iter().collect()),
        );
        cx.differentials.insert(
            1,
            LinearMap::new([(sym("b"), FormalSum::gen(sym("c")))].into_iter().collect()),
        );
        let err = cx.homology(0);
        assert!(matches!(
            err,
            Err(LinearError::NotAComplex { witness, .. }) if witness == "a"
        ));
    }

    #[test]
    fn homology_with_relations() {
        // 0 -> Q^2/(x=y) --0--> 0 : H^0 has dimension 1
        let rel = FormalSum::gen(sym("x")).sub(&FormalSum::gen(sym("y"))).unwrap();
        let v = PresentedSpace::new("V", vec![sym("x"), sym("y")], vec![rel]).unwrap();
        let mut cx = FiniteComplex::default();
        cx.terms.insert(0, v);
        let h = cx.homology(0).unwrap();
        assert_eq!(h.dimension, 1);
        let rep = &h.representatives[0];
        assert_eq!(rep.coeff(&sym("y")), ExactScalar::one());
    }
}
