//! Small dense exact linear algebra over `ExactScalar` vectors.

use crate::scalar::{ExactScalar, ScalarError};

pub type Vector = Vec<ExactScalar>;
pub type Matrix = Vec<Vec<ExactScalar>>;

pub fn dot(a: &[ExactScalar], b: &[ExactScalar]) -> Result<ExactScalar, ScalarError> {
    let mut acc = ExactScalar::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y)?)?;
    }
    Ok(acc)
}

pub fn sub_vec(a: &[ExactScalar], b: &[ExactScalar]) -> Result<Vector, ScalarError> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn add_vec(a: &[ExactScalar], b: &[ExactScalar]) -> Result<Vector, ScalarError> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn scale_vec(a: &[ExactScalar], c: &ExactScalar) -> Result<Vector, ScalarError> {
    a.iter().map(|x| x.mul(c)).collect()
}

pub fn mat_vec(m: &Matrix, v: &[ExactScalar]) -> Result<Vector, ScalarError> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Exact determinant by fraction-free-ish Gaussian elimination with
/// division (the field is exact, so plain elimination is fine).
pub fn det(m: &Matrix) -> Result<ExactScalar, ScalarError> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut acc = ExactScalar::one();
    for col in 0..n {
        let mut pivot = None;
        for r in col..n {
            if !a[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else {
            return Ok(ExactScalar::zero());
        };
        if p != col {
            a.swap(p, col);
            acc = acc.neg();
        }
        let d = a[col][col].clone();
        acc = acc.mul(&d)?;
        let dinv = d.inv()?;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&dinv)?;
            for c in col..n {
                let delta = f.mul(&a[col][c])?;
                a[r][c] = a[r][c].sub(&delta)?;
            }
        }
    }
    Ok(acc)
}

/// Rank of the rows.
pub fn rank(m: &Matrix) -> Result<usize, ScalarError> {
    if m.is_empty() {
        return Ok(0);
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut rank = 0usize;
    for col in 0..cols {
        let mut pivot = None;
        for r in rank..rows {
            if !a[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        a.swap(p, rank);
        let dinv = a[rank][col].inv()?;
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].mul(&dinv)?;
                for c in 0..cols {
                    let delta = f.mul(&a[rank][c])?;
                    a[r][c] = a[r][c].sub(&delta)?;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

/// Solve A x = b for square nonsingular A; None if singular.
pub fn solve(a: &Matrix, b: &[ExactScalar]) -> Result<Option<Vector>, ScalarError> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let mut pivot = None;
        for r in col..n {
            if !m[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else {
            return Ok(None);
        };
        m.swap(p, col);
        let dinv = m[col][col].inv()?;
        for c in col..=n {
            m[col][c] = m[col][c].mul(&dinv)?;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = f.mul(&m[col][c])?;
                    m[r][c] = m[r][c].sub(&delta)?;
                }
            }
        }
    }
    Ok(Some(m.into_iter().map(|row| row[n].clone()).collect()))
}

/// Basis of the nullspace of the ROW system: vectors v with M v = 0.
pub fn nullspace(m: &Matrix, cols: usize) -> Result<Vec<Vector>, ScalarError> {
    let rows = m.len();
    let mut a = m.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0usize;
    for col in 0..cols {
        let mut sel = None;
        for r in row..rows {
            if !a[r][col].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        a.swap(row, sel);
        let dinv = a[row][col].inv()?;
        for c in 0..cols {
            a[row][c] = a[row][c].mul(&dinv)?;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let delta = f.mul(&a[row][c])?;
                    a[r][c] = a[r][c].sub(&delta)?;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![ExactScalar::zero(); cols];
        v[free] = ExactScalar::one();
        for (col, p) in pivot_of_col.iter().enumerate() {
            if let Some(r) = p {
                if !a[*r][free].is_zero() {
                    v[col] = a[*r][free].neg();
                }
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| ExactScalar::from_int(x)).collect()
    }

    #[test]
    fn det_and_solve() {
        let m = vec![v(&[2, 1]), v(&[1, 3])];
        assert_eq!(det(&m).unwrap(), ExactScalar::from_int(5));
        let x = solve(&m, &v(&[3, 4])).unwrap().unwrap();
        assert_eq!(x, vec![ExactScalar::from_int(1), ExactScalar::from_int(1)]);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![v(&[1, 2, 3])];
        let ns = nullspace(&m, 3).unwrap();
        assert_eq!(ns.len(), 2);
        for b in ns {
            assert!(dot(&m[0], &b).unwrap().is_zero());
        }
    }
}
