//! Isotropic lines of a 2-dimensional quadratic space, the alpha/beta
//! ordering induced by the star operator, and exact cross-ratios of lines.

use crate::scalar::ExactScalar;

use super::la::Vector;
use super::quad::{QuadSpace, VolumeForm};
use super::GeomError;

/// Projectively normalize a direction vector: first nonzero coordinate 1.
pub fn normalize_line(v: &Vector) -> Result<Vector, GeomError> {
    let lead = v.iter().find(|c| !c.is_zero()).ok_or(GeomError::CoincidentLines)?;
    let inv = lead.inv().map_err(GeomError::Scalar)?;
    Ok(v.iter()
        .map(|c| c.mul(&inv))
        .collect::<Result<_, _>>()
        .map_err(GeomError::Scalar)?)
}

fn det2(u: &Vector, v: &Vector) -> Result<ExactScalar, GeomError> {
    let a = u[0].mul(&v[1]).map_err(GeomError::Scalar)?;
    let b = u[1].mul(&v[0]).map_err(GeomError::Scalar)?;
    Ok(a.sub(&b).map_err(GeomError::Scalar)?)
}

/// Discriminant whose square root produces the isotropic lines.
pub fn isotropic_discriminant(space: &QuadSpace) -> Result<ExactScalar, GeomError> {
    let g = space.gram();
    let b2 = g[0][1].mul(&g[0][1]).map_err(GeomError::Scalar)?;
    let ac = g[0][0].mul(&g[1][1]).map_err(GeomError::Scalar)?;
    Ok(b2.sub(&ac).map_err(GeomError::Scalar)?)
}

/// The two isotropic lines of a 2-dimensional form, ordered so the first
/// is the alpha line: the eigenline of the star operator whose eigenvalue
/// is lex-positive for the given volume form. Flipping the form swaps the
/// pair. The caller supplies a square root `w` of the discriminant.
pub fn isotropic_lines_with_root(
    space: &QuadSpace,
    vol: &VolumeForm,
    w: &ExactScalar,
) -> Result<(Vector, Vector), GeomError> {
    if space.dim() != 2 {
        return Err(GeomError::Shape("isotropic lines need dimension 2".into()));
    }
    let g = space.gram();
    let a = g[0][0].clone();
    let b = g[0][1].clone();
    let c = g[1][1].clone();
    let (l1, l2) = if c.is_zero() {
        // Q = a x^2 + 2b xy = x (a x + 2 b y)
        let two_b = b.mul(&ExactScalar::from_int(2)).map_err(GeomError::Scalar)?;
        (
            vec![ExactScalar::zero(), ExactScalar::one()],
            vec![two_b, a.neg()],
        )
    } else {
        // lines (c, -b ± w) with w^2 = b^2 - a c
        let m_plus = b.neg().add(w).map_err(GeomError::Scalar)?;
        let m_minus = b.neg().sub(w).map_err(GeomError::Scalar)?;
        (vec![c.clone(), m_plus], vec![c, m_minus])
    };
    let l1 = normalize_line(&l1)?;
    let l2 = normalize_line(&l2)?;
    // eigenvalue of the star operator on an isotropic line v = (x, y):
    // star v = (1/s) (b x + c y, -(a x + b y)) = lambda v
    let eig = |v: &Vector| -> Result<ExactScalar, GeomError> {
        let g = space.gram();
        let num0 = g[0][1]
            .mul(&v[0])
            .and_then(|p| g[1][1].mul(&v[1]).and_then(|q| p.add(&q)))
            .map_err(GeomError::Scalar)?;
        let num1 = g[0][0]
            .mul(&v[0])
            .and_then(|p| g[0][1].mul(&v[1]).and_then(|q| p.add(&q)))
            .map_err(GeomError::Scalar)?
            .neg();
        let (num, den) = if !v[0].is_zero() {
            (num0, v[0].clone())
        } else {
            (num1, v[1].clone())
        };
        num.div(&den)
            .and_then(|x| x.div(&vol.scale))
            .map_err(GeomError::Scalar)
    };
    let lambda1 = eig(&l1)?;
    if lambda1.lex_sign() > 0 {
        Ok((l1, l2))
    } else {
        Ok((l2, l1))
    }
}

/// Isotropic lines when the discriminant is already a square in the
/// working field; errors with the required adjunction otherwise.
pub fn isotropic_lines_2d(
    space: &QuadSpace,
    vol: &VolumeForm,
) -> Result<(Vector, Vector), GeomError> {
    let disc = isotropic_discriminant(space)?;
    let w = disc.sqrt_exact().ok_or(GeomError::IrrationalDiscriminant {
        radicand: disc.to_string(),
    })?;
    isotropic_lines_with_root(space, vol, &w)
}

/// Exact cross-ratio of four pairwise distinct lines in a 2-dimensional
/// space, computed projectively: on slope coordinates this is
/// (a-c)(b-d) / ((a-d)(b-c)) with infinities handled by limits.
pub fn cross_ratio(
    m1: &Vector,
    m2: &Vector,
    l1: &Vector,
    l2: &Vector,
) -> Result<ExactScalar, GeomError> {
    for (u, v) in [
        (m1, m2),
        (m1, l1),
        (m1, l2),
        (m2, l1),
        (m2, l2),
        (l1, l2),
    ] {
        if det2(u, v)?.is_zero() {
            return Err(GeomError::CoincidentLines);
        }
    }
    let n = det2(m1, l1)?.mul(&det2(m2, l2)?).map_err(GeomError::Scalar)?;
    let d = det2(m1, l2)?.mul(&det2(m2, l1)?).map_err(GeomError::Scalar)?;
    Ok(n.div(&d).map_err(GeomError::Scalar)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse::parse_scalar;

    fn sc(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn line(a: i64, b: i64) -> Vector {
        vec![sc(a), sc(b)]
    }

    #[test]
    fn split_form_lines_are_axes() {
        // Q = xy: gram [[0,1/2],[1/2,0]]
        let q = QuadSpace::new(vec![
            vec![sc(0), ExactScalar::from_ratio(1, 2)],
            vec![ExactScalar::from_ratio(1, 2), sc(0)],
        ])
        .unwrap();
        let vol = VolumeForm::canonical(&q).unwrap();
        let (l1, l2) = isotropic_lines_2d(&q, &vol).unwrap();
        let axes = [line(0, 1), line(1, 0)];
        assert!(axes.contains(&l1) && axes.contains(&l2));
        // flipping the volume form swaps the pair
        let (f1, f2) = isotropic_lines_2d(&q, &vol.flip()).unwrap();
        assert_eq!((f1, f2), (l2, l1));
    }

    #[test]
    fn definite_form_needs_imaginary_discriminant() {
        let q = QuadSpace::standard(2);
        let vol = VolumeForm::canonical(&q).unwrap();
        let err = isotropic_lines_2d(&q, &vol);
        assert!(matches!(err, Err(GeomError::IrrationalDiscriminant { .. })));
    }

    #[test]
    fn cross_ratio_of_slopes() {
        // slopes (1, 2, 0, inf) -> 1/2
        let r = cross_ratio(&line(1, 1), &line(1, 2), &line(1, 0), &line(0, 1)).unwrap();
        assert_eq!(r, ExactScalar::from_ratio(1, 2));
    }

    #[test]
    fn perpendicular_lines_give_minus_one() {
        // slopes (0, inf) against (i, -i)
        let i = parse_scalar("sqrt(0 - 1)").unwrap();
        let li = vec![ExactScalar::one(), i.clone()];
        let lmi = vec![ExactScalar::one(), i.neg()];
        let r = cross_ratio(&line(1, 0), &line(0, 1), &li, &lmi).unwrap();
        assert_eq!(r, ExactScalar::from_int(-1));
    }

    #[test]
    fn swapping_isotropics_inverts() {
        let r1 = cross_ratio(&line(1, 1), &line(1, 2), &line(1, 0), &line(0, 1)).unwrap();
        let r2 = cross_ratio(&line(1, 1), &line(1, 2), &line(0, 1), &line(1, 0)).unwrap();
        assert_eq!(r1.mul(&r2).unwrap(), ExactScalar::one());
    }
}
