//! Euclidean simplices: point simplices in odd-dimensional affine spaces
//! and hyperplane arrangements in even-dimensional vector spaces.

use crate::scalar::ExactScalar;

use super::la::{self, Matrix, Vector};
use super::quad::{QuadSpace, VolumeForm};
use super::GeomError;

/// A point simplex (x_0, ..., x_{2n-1}; vol) in a (2n-1)-dimensional
/// Euclidean affine space, the generator datum of the weight-n Euclidean
/// scissor congruence group.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSimplex {
    pub space: QuadSpace,
    pub points: Vec<Vector>,
    pub vol: VolumeForm,
}

fn factorial(n: usize) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for k in 2..=n {
        acc = acc.mul(&ExactScalar::from_int(k as i64)).unwrap();
    }
    acc
}

impl PointSimplex {
    pub fn new(space: QuadSpace, points: Vec<Vector>, vol: VolumeForm) -> Result<Self, GeomError> {
        let dim = space.dim();
        if dim % 2 != 1 {
            return Err(GeomError::Shape(format!(
                "point simplices live in odd dimension, got {dim}"
            )));
        }
        if points.len() != dim + 1 {
            return Err(GeomError::Shape(format!(
                "expected {} points in dimension {dim}, got {}",
                dim + 1,
                points.len()
            )));
        }
        for p in &points {
            if p.len() != dim {
                return Err(GeomError::Shape("point has wrong coordinate count".into()));
            }
        }
        Ok(PointSimplex { space, points, vol })
    }

    /// Weight n, from ambient dimension 2n-1.
    pub fn weight(&self) -> usize {
        (self.space.dim() + 1) / 2
    }

    /// Edge vectors x_i - x_0.
    pub fn edge_vectors(&self) -> Result<Vec<Vector>, GeomError> {
        (1..self.points.len())
            .map(|i| la::sub_vec(&self.points[i], &self.points[0]).map_err(GeomError::Scalar))
            .collect()
    }

    /// Exact signed volume: (1/(2n-1)!) <v_1 ∧ ... ∧ v_{2n-1}, vol>.
    pub fn volume(&self) -> Result<ExactScalar, GeomError> {
        let vs = self.edge_vectors()?;
        let pairing = self.vol.pair(&vs)?;
        let f = factorial(self.space.dim());
        Ok(pairing.div(&f.clone()).map_err(GeomError::Scalar)?)
    }

    pub fn is_degenerate(&self) -> Result<bool, GeomError> {
        let vs = self.edge_vectors()?;
        Ok(la::rank(&vs).map_err(GeomError::Scalar)? < self.space.dim())
    }

    /// Direction basis of the affine span of the points at `indices`.
    pub fn face_directions(&self, indices: &[usize]) -> Result<Vec<Vector>, GeomError> {
        let base = &self.points[indices[0]];
        indices[1..]
            .iter()
            .map(|&i| la::sub_vec(&self.points[i], base).map_err(GeomError::Scalar))
            .collect()
    }

    /// The Euclidean-simplex condition: the induced form on the direction
    /// space of every face (every point subset of size >= 2) is
    /// nondegenerate. The witness is the first failing subset.
    pub fn euclidean_check(&self) -> Result<(), GeomError> {
        let n = self.points.len();
        for mask in 1usize..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if subset.len() < 2 {
                continue;
            }
            let dirs = self.face_directions(&subset)?;
            let rank = la::rank(&dirs).map_err(GeomError::Scalar)?;
            if rank < dirs.len() {
                // affinely dependent subset: not a face of full dimension;
                // only relevant when all points are involved elsewhere
                continue;
            }
            if self.space.induced_form(&dirs).is_err() {
                return Err(GeomError::NotEuclideanSimplex {
                    witness: format!("{subset:?}"),
                });
            }
        }
        Ok(())
    }

    /// Dilate about the origin: the scissor-group F*-action.
    pub fn dilate(&self, f: &ExactScalar) -> Result<Self, GeomError> {
        let points = self
            .points
            .iter()
            .map(|p| la::scale_vec(p, f))
            .collect::<Result<_, _>>()
            .map_err(GeomError::Scalar)?;
        Ok(PointSimplex {
            space: self.space.clone(),
            points,
            vol: self.vol.clone(),
        })
    }

    /// Apply an invertible affine map (A, b); the quadratic form and the
    /// volume form are transported along, which realizes the affine
    /// invariance relation.
    pub fn affine_image(&self, a: &Matrix, b: &Vector) -> Result<Self, GeomError> {
        let dim = self.space.dim();
        let det_a = la::det(a).map_err(GeomError::Scalar)?;
        if det_a.is_zero() {
            return Err(GeomError::Shape("affine map is singular".into()));
        }
        // columns of A^{-1}: solve A x = e_i
        let mut a_inv_cols: Vec<Vector> = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = vec![ExactScalar::zero(); dim];
            e[i] = ExactScalar::one();
            let col = la::solve(a, &e).map_err(GeomError::Scalar)?.expect("invertible");
            a_inv_cols.push(col);
        }
        // G' = A^{-T} G A^{-1}: entries (A^{-1} e_i) . G . (A^{-1} e_j)
        let mut gram = vec![vec![ExactScalar::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                gram[i][j] = self
                    .space
                    .bilinear(&a_inv_cols[i], &a_inv_cols[j])?;
            }
        }
        let space = QuadSpace::new(gram)?;
        let scale = self.vol.scale.div(&det_a).map_err(GeomError::Scalar)?;
        let vol = VolumeForm::new(&space, scale)?;
        let points = self
            .points
            .iter()
            .map(|p| {
                let ap = la::mat_vec(a, p)?;
                la::add_vec(&ap, b)
            })
            .collect::<Result<_, _>>()
            .map_err(GeomError::Scalar)?;
        Ok(PointSimplex { space, points, vol })
    }
}

/// A hyperplane arrangement (M_1, ..., M_{2n}; Q, vol): 2n codimension-one
/// subspaces of a 2n-dimensional quadratic space, the generator datum of
/// the weight-n scissor congruence Hopf algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneSimplex {
    pub space: QuadSpace,
    /// Normal covectors of the hyperplanes (through the origin).
    pub normals: Vec<Vector>,
    pub vol: VolumeForm,
}

impl HyperplaneSimplex {
    pub fn new(space: QuadSpace, normals: Vec<Vector>, vol: VolumeForm) -> Result<Self, GeomError> {
        let dim = space.dim();
        if dim % 2 != 0 {
            return Err(GeomError::Shape(format!(
                "hyperplane simplices live in even dimension, got {dim}"
            )));
        }
        if normals.len() != dim {
            return Err(GeomError::Shape(format!(
                "expected {dim} hyperplanes, got {}",
                normals.len()
            )));
        }
        Ok(HyperplaneSimplex { space, normals, vol })
    }

    pub fn weight(&self) -> usize {
        self.space.dim() / 2
    }

    /// The intersection of all hyperplanes; nonzero intersection means the
    /// generator represents zero (relation i).
    pub fn common_intersection_trivial(&self) -> Result<bool, GeomError> {
        Ok(la::rank(&self.normals).map_err(GeomError::Scalar)? == self.space.dim())
    }

    /// Basis of the face M_I = intersection of the hyperplanes at `indices`.
    pub fn face(&self, indices: &[usize]) -> Result<Vec<Vector>, GeomError> {
        let rows: Matrix = indices.iter().map(|&i| self.normals[i].clone()).collect();
        Ok(la::nullspace(&rows, self.space.dim()).map_err(GeomError::Scalar)?)
    }

    /// Generic position to Q: the restriction of the form to every face is
    /// nondegenerate.
    pub fn generic_position_check(&self) -> Result<(), GeomError> {
        let n = self.normals.len();
        for mask in 1usize..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let face = self.face(&subset)?;
            if face.is_empty() {
                continue;
            }
            if self.space.induced_form(&face).is_err() {
                return Err(GeomError::NotGenericPosition {
                    witness: format!("{subset:?}"),
                });
            }
        }
        Ok(())
    }
}

/// Vertices of the affine simplex cut out by 2k affine hyperplanes
/// (normal, offset) in a (2k-1)-dimensional chart: vertex i solves all
/// equations but the i-th, ordered by omitted index.
pub fn points_from_hyperplanes(
    space: &QuadSpace,
    hyperplanes: &[(Vector, ExactScalar)],
    vol: VolumeForm,
) -> Result<PointSimplex, GeomError> {
    let dim = space.dim();
    if hyperplanes.len() != dim + 1 {
        return Err(GeomError::Shape(format!(
            "expected {} hyperplanes in dimension {dim}",
            dim + 1
        )));
    }
    let mut points = Vec::with_capacity(dim + 1);
    for omit in 0..hyperplanes.len() {
        let rows: Matrix = hyperplanes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, (n, _))| n.clone())
            .collect();
        let rhs: Vector = hyperplanes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, (_, c))| c.clone())
            .collect();
        let sol = la::solve(&rows, &rhs).map_err(GeomError::Scalar)?;
        let Some(x) = sol else {
            return Err(GeomError::NotGenericPosition {
                witness: format!("hyperplanes other than {omit} do not meet in a point"),
            });
        };
        points.push(x);
    }
    PointSimplex::new(space.clone(), points, vol)
}

/// Facet description of a point simplex: for each omitted vertex index,
/// the affine hyperplane (normal covector, offset) spanned by the others.
pub fn facet_hyperplanes(s: &PointSimplex) -> Result<Vec<(Vector, ExactScalar)>, GeomError> {
    let n = s.points.len();
    let mut out = Vec::with_capacity(n);
    for omit in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&i| i != omit).collect();
        let dirs = s.face_directions(&keep)?;
        let normals = la::nullspace(&dirs, s.space.dim()).map_err(GeomError::Scalar)?;
        if normals.len() != 1 {
            return Err(GeomError::NotGenericPosition {
                witness: format!("facet omitting {omit} is degenerate"),
            });
        }
        let normal = normals.into_iter().next().unwrap();
        let offset = la::dot(&normal, &s.points[keep[0]]).map_err(GeomError::Scalar)?;
        out.push((normal, offset));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn unit_corner() -> PointSimplex {
        let q = QuadSpace::standard(3);
        let vol = VolumeForm::canonical(&q).unwrap();
        PointSimplex::new(
            q,
            vec![
                vec![sc(0), sc(0), sc(0)],
                vec![sc(1), sc(0), sc(0)],
                vec![sc(0), sc(1), sc(0)],
                vec![sc(0), sc(0), sc(1)],
            ],
            vol,
        )
        .unwrap()
    }

    #[test]
    fn unit_corner_volume() {
        assert_eq!(unit_corner().volume().unwrap(), ExactScalar::from_ratio(1, 6));
    }

    #[test]
    fn transposition_flips_volume() {
        let mut s = unit_corner();
        s.points.swap(1, 2);
        assert_eq!(s.volume().unwrap(), ExactScalar::from_ratio(-1, 6));
    }

    #[test]
    fn dilation_scales_by_dim_power() {
        let s = unit_corner();
        let d = s.dilate(&sc(2)).unwrap();
        // 2^3 * 1/6
        assert_eq!(d.volume().unwrap(), ExactScalar::from_ratio(8, 6));
    }

    #[test]
    fn affine_invariance_of_volume() {
        let s = unit_corner();
        let a = vec![
            vec![sc(1), sc(2), sc(0)],
            vec![sc(0), sc(1), sc(0)],
            vec![sc(3), sc(0), sc(1)],
        ];
        let b = vec![sc(5), sc(-1), sc(2)];
        let im = s.affine_image(&a, &b).unwrap();
        assert_eq!(im.volume().unwrap(), s.volume().unwrap());
    }

    #[test]
    fn hyperplane_roundtrip() {
        let s = unit_corner();
        let facets = facet_hyperplanes(&s).unwrap();
        let back = points_from_hyperplanes(&s.space, &facets, s.vol.clone()).unwrap();
        // vertex i lies on every facet except the i-th
        assert_eq!(back.points.len(), 4);
        for (i, p) in back.points.iter().enumerate() {
            assert_eq!(p, &s.points[i]);
        }
    }

    #[test]
    fn parallel_hyperplanes_rejected() {
        let q = QuadSpace::standard(3);
        let vol = VolumeForm::canonical(&q).unwrap();
        let h = vec![
            (vec![sc(1), sc(0), sc(0)], sc(0)),
            (vec![sc(1), sc(0), sc(0)], sc(1)), // parallel to the first
            (vec![sc(0), sc(1), sc(0)], sc(0)),
            (vec![sc(0), sc(0), sc(1)], sc(0)),
        ];
        let err = points_from_hyperplanes(&q, &h, vol);
        assert!(matches!(err, Err(GeomError::NotGenericPosition { .. })));
    }

    #[test]
    fn euclidean_check_catches_isotropic_face() {
        // split form diag(1,-1,1): the edge 0 -> (1,1,0) is isotropic
        let q = QuadSpace::new(vec![
            vec![sc(1), sc(0), sc(0)],
            vec![sc(0), sc(-1), sc(0)],
            vec![sc(0), sc(0), sc(1)],
        ])
        .unwrap();
        let vol = VolumeForm::canonical(&q).unwrap();
        let s = PointSimplex::new(
            q,
            vec![
                vec![sc(0), sc(0), sc(0)],
                vec![sc(1), sc(1), sc(0)],
                vec![sc(0), sc(1), sc(0)],
                vec![sc(0), sc(0), sc(1)],
            ],
            vol,
        )
        .unwrap();
        assert!(matches!(
            s.euclidean_check(),
            Err(GeomError::NotEuclideanSimplex { .. })
        ));
    }
}
