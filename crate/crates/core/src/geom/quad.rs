//! Quadratic spaces: nondegenerate symmetric forms, restrictions,
//! quotients, volume forms, and the star operator.

use std::collections::BTreeMap;

use crate::scalar::{adjoin_sqrt_formal, ExactScalar, TowerField};

use super::la::{self, Matrix, Vector};
use super::GeomError;

/// A finite-dimensional space with a nondegenerate symmetric bilinear form,
/// presented by its Gram matrix on the coordinate basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadSpace {
    dim: usize,
    gram: Matrix,
}

impl QuadSpace {
    pub fn new(gram: Matrix) -> Result<Self, GeomError> {
        let dim = gram.len();
        for row in &gram {
            if row.len() != dim {
                return Err(GeomError::Shape("gram matrix is not square".into()));
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if gram[i][j] != gram[j][i] {
                    return Err(GeomError::Shape("gram matrix is not symmetric".into()));
                }
            }
        }
        let d = la::det(&gram)?;
        if d.is_zero() {
            return Err(GeomError::DegenerateForm);
        }
        Ok(QuadSpace { dim, gram })
    }

    pub fn standard(dim: usize) -> Self {
        let gram = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            ExactScalar::one()
                        } else {
                            ExactScalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        QuadSpace { dim, gram }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn det(&self) -> Result<ExactScalar, GeomError> {
        Ok(la::det(&self.gram)?)
    }

    pub fn bilinear(&self, u: &[ExactScalar], v: &[ExactScalar]) -> Result<ExactScalar, GeomError> {
        let gv = la::mat_vec(&self.gram, v)?;
        Ok(la::dot(u, &gv)?)
    }

    pub fn quadratic(&self, v: &[ExactScalar]) -> Result<ExactScalar, GeomError> {
        self.bilinear(v, v)
    }

    /// Gram matrix of the restriction to the span of `basis`.
    ///
    /// Errors with the radical vector as witness when the restriction is
    /// degenerate.
    pub fn induced_form(&self, basis: &[Vector]) -> Result<QuadSpace, GeomError> {
        if la::rank(&basis.to_vec())? != basis.len() {
            return Err(GeomError::Shape("basis vectors are dependent".into()));
        }
        let k = basis.len();
        let mut gram = vec![vec![ExactScalar::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                gram[i][j] = self.bilinear(&basis[i], &basis[j])?;
            }
        }
        let d = la::det(&gram)?;
        if d.is_zero() {
            // find a radical vector: kernel of the restricted gram
            let ns = la::nullspace(&gram, k)?;
            let coeffs = &ns[0];
            let mut witness = vec![ExactScalar::zero(); self.dim];
            for (c, b) in coeffs.iter().zip(basis) {
                for (w, x) in witness.iter_mut().zip(b) {
                    *w = w.add(&c.mul(x)?)?;
                }
            }
            return Err(GeomError::DegenerateRestriction {
                witness: witness.iter().map(|x| x.to_string()).collect(),
            });
        }
        Ok(QuadSpace { dim: k, gram })
    }

    /// Basis of the orthogonal complement of the span of `basis`.
    pub fn orthogonal_complement(&self, basis: &[Vector]) -> Result<Vec<Vector>, GeomError> {
        // rows: B(b_i, -) as covectors
        let rows: Matrix = basis
            .iter()
            .map(|b| la::mat_vec(&self.gram, b))
            .collect::<Result<_, _>>()?;
        Ok(la::nullspace(&rows, self.dim)?)
    }

    /// The form induced on the quotient by the span of `basis`, presented
    /// on the orthogonal-complement basis. Requires the restriction to the
    /// subspace to be nondegenerate.
    pub fn quotient_form(&self, basis: &[Vector]) -> Result<(QuadSpace, Vec<Vector>), GeomError> {
        self.induced_form(basis)?; // nondegeneracy check
        let comp = self.orthogonal_complement(basis)?;
        let q = self.induced_form(&comp)?;
        Ok((q, comp))
    }

    /// Scale of a Euclidean volume form: an exact square root of det(gram)
    /// in the working field, adjoining one formally when needed.
    pub fn volume_scale(&self) -> Result<ExactScalar, GeomError> {
        let d = self.det()?;
        if let Some(r) = d.sqrt_exact() {
            return Ok(r);
        }
        let field = match &d {
            ExactScalar::Tower(t) => t.field().clone(),
            _ => TowerField::rationals(),
        };
        let adj = adjoin_sqrt_formal(&field, &d).map_err(|_| GeomError::AdjunctionRequired {
            radicand: d.to_string(),
        })?;
        Ok(ExactScalar::Tower(adj.root).simplify())
    }
}

/// A Euclidean volume form on a quadratic space, as a scale against the
/// wedge of the coordinate basis, certified by scale^2 = det(gram).
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeForm {
    pub scale: ExactScalar,
}

impl VolumeForm {
    pub fn new(space: &QuadSpace, scale: ExactScalar) -> Result<Self, GeomError> {
        let d = space.det()?;
        let sq = scale.mul(&scale)?;
        if sq.sub(&d).map(|x| !x.is_zero()).unwrap_or(true) {
            return Err(GeomError::InvalidVolumeForm {
                scale: scale.to_string(),
                det: d.to_string(),
            });
        }
        Ok(VolumeForm { scale })
    }

    /// The canonical positive-scale form (lex-positive on formal towers).
    pub fn canonical(space: &QuadSpace) -> Result<Self, GeomError> {
        let mut s = space.volume_scale()?;
        let positive = match s.sign() {
            Ok(sig) => sig > 0,
            Err(_) => s.lex_sign() > 0,
        };
        if !positive {
            s = s.neg();
        }
        Ok(VolumeForm { scale: s })
    }

    pub fn flip(&self) -> Self {
        VolumeForm {
            scale: self.scale.neg(),
        }
    }

    /// Pair the wedge of dim-many vectors against the form.
    pub fn pair(&self, vectors: &[Vector]) -> Result<ExactScalar, GeomError> {
        let d = la::det(&vectors.to_vec())?;
        Ok(self.scale.mul(&d)?)
    }
}

/// An exterior-algebra element in the coordinate basis: sorted index sets
/// with exact coefficients.
pub type ExtElement = BTreeMap<Vec<usize>, ExactScalar>;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

fn merge_sign(a: &[usize], b: &[usize]) -> i32 {
    // sign of sorting the concatenation (a, b); 0 if they intersect
    let mut inv = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return 0;
            }
            if x > y {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Induced pairing on the k-th exterior power: det of the Gram submatrix.
fn ext_pairing(space: &QuadSpace, s: &[usize], t: &[usize]) -> Result<ExactScalar, GeomError> {
    let k = s.len();
    let mut m = vec![vec![ExactScalar::zero(); k]; k];
    for (i, &si) in s.iter().enumerate() {
        for (j, &tj) in t.iter().enumerate() {
            m[i][j] = space.gram[si][tj].clone();
        }
    }
    Ok(la::det(&m)?)
}

/// The star operator on degree-k elements of an even-dimensional space:
/// the unique map with star(x) ∧ y = <x,y> * (volume element).
///
/// On the middle degree of a 2n-dimensional space, star∘star is +1 for n
/// even and -1 for n odd.
pub fn star_operator(
    space: &QuadSpace,
    vol: &VolumeForm,
    k: usize,
    x: &ExtElement,
) -> Result<ExtElement, GeomError> {
    let n = space.dim;
    if n % 2 != 0 {
        return Err(GeomError::Shape("star operator needs an even dimension".into()));
    }
    let s_inv = vol.scale.inv().map_err(|_| GeomError::DegenerateForm)?;
    let mut out: ExtElement = BTreeMap::new();
    let tsets = subsets(n, k);
    for (sset, coeff) in x {
        if sset.len() != k {
            return Err(GeomError::Shape("exterior element has mixed degree".into()));
        }
        for t in &tsets {
            let pairing = ext_pairing(space, sset, t)?;
            if pairing.is_zero() {
                continue;
            }
            let comp: Vec<usize> = (0..n).filter(|i| !t.contains(i)).collect();
            let sign = merge_sign(&comp, t);
            debug_assert!(sign != 0);
            let mut c = coeff.mul(&pairing)?.mul(&s_inv)?;
            if sign < 0 {
                c = c.neg();
            }
            match out.entry(comp) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    if !c.is_zero() {
                        v.insert(c);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = o.get().add(&c)?;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn q2(a: i64, b: i64, c: i64) -> QuadSpace {
        QuadSpace::new(vec![
            vec![sc(a), ExactScalar::from_ratio(b, 1)],
            vec![ExactScalar::from_ratio(b, 1), sc(c)],
        ])
        .unwrap()
    }

    #[test]
    fn induced_form_standard() {
        let q = QuadSpace::standard(3);
        let basis = vec![
            vec![sc(1), sc(0), sc(0)],
            vec![sc(0), sc(1), sc(0)],
        ];
        let r = q.induced_form(&basis).unwrap();
        assert_eq!(r.gram(), QuadSpace::standard(2).gram());
    }

    #[test]
    fn isotropic_restriction_degenerate() {
        // diag(1,-1) restricted to span(e1+e2)
        let q = q2(1, 0, -1);
        let err = q.induced_form(&[vec![sc(1), sc(1)]]);
        assert!(matches!(err, Err(GeomError::DegenerateRestriction { .. })));
    }

    #[test]
    fn quotient_form_diagonal() {
        // diag(1,2,3) mod span(e1) -> diag(2,3)
        let q = QuadSpace::new(vec![
            vec![sc(1), sc(0), sc(0)],
            vec![sc(0), sc(2), sc(0)],
            vec![sc(0), sc(0), sc(3)],
        ])
        .unwrap();
        let (r, _) = q.quotient_form(&[vec![sc(1), sc(0), sc(0)]]).unwrap();
        assert_eq!(r.det().unwrap(), sc(6));
        assert_eq!(r.dim(), 2);
    }

    #[test]
    fn star_squares_to_minus_one_in_dim_two() {
        let q = QuadSpace::standard(2);
        let vol = VolumeForm::canonical(&q).unwrap();
        let mut x: ExtElement = BTreeMap::new();
        x.insert(vec![0], ExactScalar::one());
        let sx = star_operator(&q, &vol, 1, &x).unwrap();
        let ssx = star_operator(&q, &vol, 1, &sx).unwrap();
        assert_eq!(ssx.get(&vec![0usize]).unwrap(), &sc(-1));
    }

    #[test]
    fn star_identity_on_zero_forms() {
        // star(1) = the volume element (coefficient 1/scale on e_full)
        let q = QuadSpace::standard(2);
        let vol = VolumeForm::canonical(&q).unwrap();
        let mut x: ExtElement = BTreeMap::new();
        x.insert(vec![], ExactScalar::one());
        let sx = star_operator(&q, &vol, 0, &x).unwrap();
        assert_eq!(sx.get(&vec![0usize, 1usize]).unwrap(), &ExactScalar::one());
    }

    #[test]
    fn flipping_vol_negates_star() {
        let q = q2(2, 1, 3);
        let vol = VolumeForm::canonical(&q).unwrap();
        let mut x: ExtElement = BTreeMap::new();
        x.insert(vec![1], sc(4));
        let s1 = star_operator(&q, &vol, 1, &x).unwrap();
        let s2 = star_operator(&q, &vol.flip(), 1, &x).unwrap();
        for (k, v) in &s1 {
            assert_eq!(s2.get(k).unwrap(), &v.neg());
        }
    }
}
