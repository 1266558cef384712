//! Canonical symbols for scissor-congruence generators.
//!
//! An E-generator (sub-simplex with a volume form) is identified by the
//! Gram matrix of its edge vectors together with the signed volume pairing:
//! a complete invariant under the affine-invariance relation. An
//! S-generator (hyperplane arrangement with a form and volume) is
//! identified by the Gram matrix of its unit-normalized normals and the
//! volume pairing, up to hyperplane reordering (with sign) and normal sign
//! flips. Canonicalization enumerates the finite symmetry orbit and takes
//! the lexicographically least encoding; when the orbit identifies an
//! element with its own negative the generator is torsion and normalizes
//! to zero.

use num_rational::BigRational;

use crate::geom::la::{self, Matrix, Vector};
use crate::geom::quad::QuadSpace;
use crate::linear::tensor::canonical_token;
use crate::linear::Sym;
use crate::scalar::{adjoin_sqrt_formal, ExactScalar, TowerField};

use super::DehnError;

/// Result of canonicalizing a generator: zero, or a symbol with a sign.
#[derive(Debug, Clone, PartialEq)]
pub enum CanonSymbol {
    Zero,
    Term { sym: Sym, coeff: BigRational },
}

pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    // all permutations with their signs, deterministic order
    let mut out = vec![(vec![], 1i32)];
    for k in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for (p, s) in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                // inserting k at `pos` among k existing entries costs
                // (k - pos) transpositions
                let flips = (k - pos) % 2;
                next.push((q, if flips == 1 { -s } else { *s }));
            }
        }
        out = next;
    }
    out
}

/// Square root within the working field, adjoining a formal radical when
/// the value is not already a square.
pub fn sqrt_adjoined(x: &ExactScalar) -> Result<ExactScalar, DehnError> {
    if let Some(r) = x.sqrt_exact() {
        return Ok(r);
    }
    let field = match x {
        ExactScalar::Tower(t) => t.field().clone(),
        _ => TowerField::rationals(),
    };
    let adj = adjoin_sqrt_formal(&field, x).map_err(|_| DehnError::AdjunctionRequired {
        radicand: x.to_string(),
    })?;
    Ok(ExactScalar::Tower(adj.root).simplify())
}

/// Canonical symbol of an E-generator presented by the Gram matrix of its
/// edge vectors (in construction order) and the volume pairing sigma of
/// those edge vectors against the carried volume form.
///
/// `gram` is (m-1)x(m-1) for m points; the enumeration runs over the m!
/// point reorderings (sign = permutation sign) and the volume sign.
pub fn canonical_e_symbol(gram: &Matrix, sigma: &ExactScalar) -> Result<CanonSymbol, DehnError> {
    let m = gram.len() + 1; // number of points
    let pair = |a: usize, b: usize| -> ExactScalar {
        // <e_a, e_b> in the affine frame with e_0 = 0
        if a == 0 || b == 0 {
            ExactScalar::zero()
        } else {
            gram[a - 1][b - 1].clone()
        }
    };
    let bil = |a: usize, b: usize, c: usize, d: usize| -> Result<ExactScalar, DehnError> {
        // <e_a - e_b, e_c - e_d>
        let t = pair(a, c)
            .sub(&pair(a, d))
            .and_then(|x| x.sub(&pair(b, c)))
            .and_then(|x| x.add(&pair(b, d)))
            .map_err(DehnError::Scalar)?;
        Ok(t)
    };
    let sigma_tok = canonical_token(sigma);
    let sigma_neg_tok = canonical_token(&sigma.neg());
    let mut best: Option<(String, BigRational)> = None;
    let mut torsion = false;
    for (perm, psign) in permutations(m) {
        let mut enc = String::from("E:");
        let mut entries: Vec<String> = Vec::new();
        for i in 1..m {
            for j in i..m {
                let v = bil(perm[i], perm[0], perm[j], perm[0])?;
                entries.push(canonical_token(&v));
            }
        }
        enc.push_str(&entries.join("|"));
        for vol_sign in [1i32, -1i32] {
            // sigma transforms by sgn(perm) under reordering and by the
            // explicit volume sign
            let total = psign * vol_sign;
            let st = if total > 0 { &sigma_tok } else { &sigma_neg_tok };
            let full = format!("{enc};s={st}");
            let coeff = BigRational::from_integer((psign * vol_sign).into());
            match &mut best {
                None => best = Some((full, coeff)),
                Some((b_enc, b_coeff)) => match full.cmp(b_enc) {
                    std::cmp::Ordering::Less => {
                        *b_enc = full;
                        *b_coeff = coeff;
                        torsion = false;
                    }
                    std::cmp::Ordering::Equal => {
                        if *b_coeff != coeff {
                            torsion = true;
                        }
                    }
                    std::cmp::Ordering::Greater => {}
                },
            }
        }
    }
    let (enc, coeff) = best.expect("nonempty orbit");
    if torsion {
        return Ok(CanonSymbol::Zero);
    }
    Ok(CanonSymbol::Term {
        sym: Sym::new(enc),
        coeff,
    })
}

/// Canonical symbol of an S-generator: 2l hyperplane covectors in a
/// 2l-dimensional quadratic space with a volume form given by its scale in
/// the presentation basis.
///
/// Returns zero when the hyperplanes fail to intersect only at the origin
/// (relation i) or when the symmetry orbit identifies the generator with
/// its negative.
pub fn canonical_s_symbol(
    space: &QuadSpace,
    covectors: &[Vector],
    vol_scale: &ExactScalar,
) -> Result<CanonSymbol, DehnError> {
    let dim = space.dim();
    let m = covectors.len();
    debug_assert_eq!(m, dim);
    let rank = la::rank(&covectors.to_vec()).map_err(DehnError::Scalar)?;
    if rank < dim {
        return Ok(CanonSymbol::Zero);
    }
    // dual normals, unit-normalized
    let mut normals: Vec<Vector> = Vec::with_capacity(m);
    for phi in covectors {
        let n = la::solve(space.gram(), phi)
            .map_err(DehnError::Scalar)?
            .expect("nondegenerate gram");
        let q = la::dot(phi, &n).map_err(DehnError::Scalar)?; // <n, n>
        if q.is_zero() {
            return Err(DehnError::NotGenericPosition {
                witness: "isotropic hyperplane normal".into(),
            });
        }
        let root = sqrt_adjoined(&q)?;
        let inv = root.inv().map_err(DehnError::Scalar)?;
        normals.push(la::scale_vec(&n, &inv).map_err(DehnError::Scalar)?);
    }
    let mut h = vec![vec![ExactScalar::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            h[i][j] = space.bilinear(&normals[i], &normals[j])?;
        }
    }
    let tau = vol_scale
        .mul(&la::det(&normals.to_vec()).map_err(DehnError::Scalar)?)
        .map_err(DehnError::Scalar)?;
    let mut h_tok = vec![vec![(String::new(), String::new()); m]; m];
    for i in 0..m {
        for j in 0..m {
            h_tok[i][j] = (
                canonical_token(&h[i][j]),
                canonical_token(&h[i][j].neg()),
            );
        }
    }
    let tau_tok = (canonical_token(&tau), canonical_token(&tau.neg()));

    let mut best: Option<(String, BigRational)> = None;
    let mut torsion = false;
    for (perm, psign) in permutations(m) {
        for flips in 0usize..(1 << m) {
            let det_d = if (flips.count_ones() % 2) == 1 { -1 } else { 1 };
            let mut enc = String::from("S:");
            for i in 0..m {
                for j in (i + 1)..m {
                    let (pi, pj) = (perm[i], perm[j]);
                    let sign = ((flips >> i) & 1) ^ ((flips >> j) & 1);
                    let cell = &h_tok[pi][pj];
                    enc.push_str(if sign == 0 { &cell.0 } else { &cell.1 });
                    enc.push('|');
                }
            }
            let t_total = psign * det_d;
            enc.push_str(";t=");
            enc.push_str(if t_total > 0 { &tau_tok.0 } else { &tau_tok.1 });
            let coeff = BigRational::from_integer(psign.into());
            match &mut best {
                None => best = Some((enc, coeff)),
                Some((b_enc, b_coeff)) => match enc.cmp(b_enc) {
                    std::cmp::Ordering::Less => {
                        *b_enc = enc;
                        *b_coeff = coeff;
                        torsion = false;
                    }
                    std::cmp::Ordering::Equal => {
                        if *b_coeff != coeff {
                            torsion = true;
                        }
                    }
                    std::cmp::Ordering::Greater => {}
                },
            }
        }
    }
    let (enc, coeff) = best.expect("nonempty orbit");
    if torsion {
        return Ok(CanonSymbol::Zero);
    }
    Ok(CanonSymbol::Term {
        sym: Sym::new(enc),
        coeff,
    })
}

/// Canonical grouping key of a quadratic-space presentation, used to pool
/// arrangements living over the same Gram matrix.
pub fn gram_key(space: &QuadSpace) -> String {
    let mut s = String::from("G:");
    for row in space.gram() {
        for x in row {
            s.push_str(&canonical_token(x));
            s.push('|');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::quad::VolumeForm;

    fn sc(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn e_symbol_sign_under_swap() {
        let q = QuadSpace::standard(3);
        let pts = [
            vec![sc(0), sc(0), sc(0)],
            vec![sc(2), sc(0), sc(0)],
            vec![sc(0), sc(3), sc(0)],
            vec![sc(1), sc(1), sc(4)],
        ];
        let grams = |order: &[usize]| -> (Matrix, ExactScalar) {
            let dirs: Vec<Vector> = (1..4)
                .map(|i| la::sub_vec(&pts[order[i]], &pts[order[0]]).unwrap())
                .collect();
            let face = q.induced_form(&dirs).unwrap();
            let vol = VolumeForm::canonical(&face).unwrap();
            (face.gram().clone(), vol.scale)
        };
        let (g1, s1) = grams(&[0, 1, 2, 3]);
        let (g2, s2) = grams(&[1, 0, 2, 3]);
        let c1 = canonical_e_symbol(&g1, &s1).unwrap();
        let c2 = canonical_e_symbol(&g2, &s2).unwrap();
        match (c1, c2) {
            (
                CanonSymbol::Term { sym: a, coeff: ca },
                CanonSymbol::Term { sym: b, coeff: cb },
            ) => {
                assert_eq!(a, b);
                assert_eq!(ca, -cb);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn s_symbol_zero_for_rank_deficient() {
        let q = QuadSpace::standard(4);
        let cov = vec![
            vec![sc(1), sc(0), sc(0), sc(0)],
            vec![sc(0), sc(1), sc(0), sc(0)],
            vec![sc(0), sc(0), sc(1), sc(0)],
            vec![sc(1), sc(1), sc(0), sc(0)],
        ];
        let c = canonical_s_symbol(&q, &cov, &ExactScalar::one()).unwrap();
        assert_eq!(c, CanonSymbol::Zero);
    }

    #[test]
    fn s_symbol_orthogonal_arrangement_is_torsion() {
        let q = QuadSpace::standard(4);
        let cov = (0..4)
            .map(|i| {
                let mut v = vec![sc(0); 4];
                v[i] = sc(1);
                v
            })
            .collect::<Vec<_>>();
        let c = canonical_s_symbol(&q, &cov, &ExactScalar::one()).unwrap();
        assert_eq!(c, CanonSymbol::Zero);
    }

    #[test]
    fn s_symbol_gl_invariance() {
        let q = QuadSpace::standard(4);
        let cov = vec![
            vec![sc(1), sc(1), sc(0), sc(0)],
            vec![sc(0), sc(1), sc(1), sc(0)],
            vec![sc(0), sc(0), sc(1), sc(1)],
            vec![sc(1), sc(0), sc(0), sc(3)],
        ];
        let c1 = canonical_s_symbol(&q, &cov, &ExactScalar::one()).unwrap();
        // transform by an invertible A: gram -> A^{-T} G A^{-1},
        // covectors -> phi A^{-1}, volume scale -> scale/det(A)
        let a = vec![
            vec![sc(2), sc(1), sc(0), sc(0)],
            vec![sc(0), sc(1), sc(0), sc(0)],
            vec![sc(0), sc(0), sc(1), sc(0)],
            vec![sc(0), sc(0), sc(0), sc(1)],
        ];
        let det_a = la::det(&a).unwrap();
        let mut a_inv_cols: Vec<Vector> = Vec::new();
        for i in 0..4 {
            let mut e = vec![sc(0); 4];
            e[i] = ExactScalar::one();
            a_inv_cols.push(la::solve(&a, &e).unwrap().unwrap());
        }
        let mut gram2 = vec![vec![sc(0); 4]; 4];
        for (i, ci) in a_inv_cols.iter().enumerate() {
            for (j, cj) in a_inv_cols.iter().enumerate() {
                gram2[i][j] = q.bilinear(ci, cj).unwrap();
            }
        }
        let q2 = QuadSpace::new(gram2).unwrap();
        let cov2: Vec<Vector> = cov
            .iter()
            .map(|phi| {
                a_inv_cols
                    .iter()
                    .map(|c| la::dot(phi, c).unwrap())
                    .collect()
            })
            .collect();
        let scale2 = ExactScalar::one().div(&det_a).unwrap();
        let c2 = canonical_s_symbol(&q2, &cov2, &scale2).unwrap();
        assert_eq!(c1, c2);
    }
}
