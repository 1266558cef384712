//! Finitely presented vector spaces and exact maps between them.
//!
//! A `PresentedSpace` is an ordered list of generator symbols together with
//! a finite list of relations (formal sums declared zero). Construction
//! precomputes a reduced row echelon of the relation span, pivoting by
//! generator position with full fraction reduction, so `canonical_form` is
//! a deterministic projection onto the quotient.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalar::ExactScalar;

use super::formal::{FormalSum, Sym};
use super::LinearError;

pub const DEFAULT_GENERATOR_CAP: usize = 10_000;

#[derive(Debug, Clone)]
pub struct PresentedSpace {
    name: String,
    generators: Vec<Sym>,
    index: BTreeMap<Sym, usize>,
    relations: Vec<FormalSum>,
    echelon: Vec<(usize, BTreeMap<usize, ExactScalar>)>,
    weights: BTreeMap<Sym, i64>,
    twist: Option<i64>,
}

impl PresentedSpace {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Sym>,
        relations: Vec<FormalSum>,
    ) -> Result<Arc<Self>, LinearError> {
        Self::with_cap(name, generators, relations, DEFAULT_GENERATOR_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        generators: Vec<Sym>,
        relations: Vec<FormalSum>,
        cap: usize,
    ) -> Result<Arc<Self>, LinearError> {
        if generators.len() > cap {
            return Err(LinearError::DimensionOverflow(generators.len(), cap));
        }
        let mut index = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(LinearError::UnknownGenerator(format!(
                    "duplicate generator {g}"
                )));
            }
        }
        let mut space = PresentedSpace {
            name: name.into(),
            generators,
            index,
            relations: Vec::new(),
            echelon: Vec::new(),
            weights: BTreeMap::new(),
            twist: None,
        };
        for r in relations {
            space.insert_relation_internal(&r)?;
            space.relations.push(r);
        }
        Ok(Arc::new(space))
    }

    pub fn free(name: impl Into<String>, generators: Vec<Sym>) -> Result<Arc<Self>, LinearError> {
        Self::new(name, generators, vec![])
    }

    pub fn with_weights(mut self: Arc<Self>, weights: BTreeMap<Sym, i64>) -> Arc<Self> {
        Arc::make_mut(&mut self).weights = weights;
        self
    }

    pub fn with_twist(mut self: Arc<Self>, twist: i64) -> Arc<Self> {
        Arc::make_mut(&mut self).twist = Some(twist);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Sym] {
        &self.generators
    }

    pub fn relations(&self) -> &[FormalSum] {
        &self.relations
    }

    pub fn twist(&self) -> Option<i64> {
        self.twist
    }

    pub fn weight_of(&self, g: &Sym) -> Option<i64> {
        self.weights.get(g).copied()
    }

    pub fn contains(&self, g: &Sym) -> bool {
        self.index.contains_key(g)
    }

    fn to_coords(&self, x: &FormalSum) -> Result<BTreeMap<usize, ExactScalar>, LinearError> {
        let mut out = BTreeMap::new();
        for (sym, c) in x.iter() {
            let idx = self
                .index
                .get(sym)
                .ok_or_else(|| LinearError::UnknownGenerator(format!("{sym} in {}", self.name)))?;
            out.insert(*idx, c.clone());
        }
        Ok(out)
    }

    fn from_coords(&self, v: &BTreeMap<usize, ExactScalar>) -> FormalSum {
        let mut out = FormalSum::zero();
        for (i, c) in v {
            out.add_term(self.generators[*i].clone(), c.clone())
                .expect("coords");
        }
        out
    }

    fn reduce_coords(
        &self,
        mut v: BTreeMap<usize, ExactScalar>,
    ) -> Result<BTreeMap<usize, ExactScalar>, LinearError> {
        for (pivot, row) in &self.echelon {
            let Some(c) = v.get(pivot).cloned() else {
                continue;
            };
            // v -= c * row  (row has coefficient 1 at pivot)
            for (j, rj) in row {
                let delta = c.mul(rj).map_err(LinearError::Scalar)?.neg();
                let entry = v.remove(j).unwrap_or_else(ExactScalar::zero);
                let sum = entry.add(&delta).map_err(LinearError::Scalar)?;
                if !sum.is_zero() {
                    v.insert(*j, sum);
                }
            }
        }
        Ok(v)
    }

    fn insert_relation_internal(&mut self, rel: &FormalSum) -> Result<(), LinearError> {
        let coords = self.to_coords(rel)?;
        let mut reduced = self.reduce_coords(coords)?;
        let Some((&pivot, _)) = reduced.iter().next() else {
            return Ok(()); // dependent relation
        };
        let lead = reduced.get(&pivot).cloned().unwrap();
        let inv = lead.inv().map_err(LinearError::Scalar)?;
        for c in reduced.values_mut() {
            *c = c.mul(&inv).map_err(LinearError::Scalar)?;
        }
        // back-substitute into existing rows
        for (_, row) in self.echelon.iter_mut() {
            let Some(c) = row.get(&pivot).cloned() else {
                continue;
            };
            for (j, rj) in &reduced {
                let delta = c.mul(rj).map_err(LinearError::Scalar)?.neg();
                let entry = row.remove(j).unwrap_or_else(ExactScalar::zero);
                let sum = entry.add(&delta).map_err(LinearError::Scalar)?;
                if !sum.is_zero() {
                    row.insert(*j, sum);
                }
            }
        }
        self.echelon.push((pivot, reduced));
        self.echelon.sort_by_key(|(p, _)| *p);
        Ok(())
    }

    /// Reduce x modulo the relation row-space; zero iff x lies in the span
    /// of the relations.
    pub fn canonical_form(&self, x: &FormalSum) -> Result<FormalSum, LinearError> {
        let coords = self.to_coords(x)?;
        let reduced = self.reduce_coords(coords)?;
        Ok(self.from_coords(&reduced))
    }

    /// Generators that are not relation pivots; their classes form a basis
    /// of the quotient.
    pub fn free_generators(&self) -> Vec<Sym> {
        let pivots: Vec<usize> = self.echelon.iter().map(|(p, _)| *p).collect();
        self.generators
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, g)| g.clone())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.generators.len() - self.echelon.len()
    }
}

impl fmt::Display for PresentedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} generators, {} relations, dim {})",
            self.name,
            self.generators.len(),
            self.relations.len(),
            self.dim()
        )
    }
}

/// A linear map between presented spaces, given by generator images.
#[derive(Debug, Clone, Default)]
pub struct LinearMap {
    pub images: BTreeMap<Sym, FormalSum>,
}

impl LinearMap {
    pub fn new(images: BTreeMap<Sym, FormalSum>) -> Self {
        LinearMap { images }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn apply(&self, x: &FormalSum) -> Result<FormalSum, LinearError> {
        x.bind(|sym| {
            Ok(self
                .images
                .get(sym)
                .cloned()
                .unwrap_or_else(FormalSum::zero))
        })
        .map_err(LinearError::Scalar)
    }
}

/// Exact basis of the kernel of the map induced on quotient spaces.
pub fn kernel_basis(
    source: &PresentedSpace,
    target: &PresentedSpace,
    map: &LinearMap,
) -> Result<Vec<FormalSum>, LinearError> {
    let src_free = source.free_generators();
    let tgt_free = target.free_generators();
    let tgt_index: BTreeMap<&Sym, usize> = tgt_free.iter().enumerate().map(|(i, g)| (g, i)).collect();
    // columns: images of the free source generators, in target coordinates
    let mut cols: Vec<Vec<ExactScalar>> = Vec::with_capacity(src_free.len());
    for g in &src_free {
        let img = map.apply(&FormalSum::gen(g.clone()))?;
        let img = target.canonical_form(&img)?;
        let mut col = vec![ExactScalar::zero(); tgt_free.len()];
        for (sym, c) in img.iter() {
            let idx = tgt_index
                .get(sym)
                .ok_or_else(|| LinearError::UnknownGenerator(format!("{sym} not free in target")))?;
            col[*idx] = c.clone();
        }
        cols.push(col);
    }
    let null = nullspace(&cols, tgt_free.len())?;
    let mut out = Vec::new();
    for v in null {
        let mut s = FormalSum::zero();
        for (j, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                s.add_term(src_free[j].clone(), c).map_err(LinearError::Scalar)?;
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Nullspace of the matrix whose columns are given (dense, exact).
/// Returns one coefficient vector per kernel basis element.
fn nullspace(cols: &[Vec<ExactScalar>], nrows: usize) -> Result<Vec<Vec<ExactScalar>>, LinearError> {
    let ncols = cols.len();
    // build row-major working copy
    let mut m: Vec<Vec<ExactScalar>> = (0..nrows)
        .map(|r| (0..ncols).map(|c| cols[c][r].clone()).collect())
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0usize;
    for col in 0..ncols {
        let mut sel = None;
        for r in row..nrows {
            if !m[r][col].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(row, sel);
        let inv = m[row][col].inv().map_err(LinearError::Scalar)?;
        for c in 0..ncols {
            m[row][c] = m[row][c].mul(&inv).map_err(LinearError::Scalar)?;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let delta = factor.mul(&m[row][c]).map_err(LinearError::Scalar)?;
                    m[r][c] = m[r][c].sub(&delta).map_err(LinearError::Scalar)?;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![ExactScalar::zero(); ncols];
        v[free] = ExactScalar::one();
        for (col, p) in pivot_of_col.iter().enumerate() {
            if let Some(r) = p {
                let c = m[*r][free].clone();
                if !c.is_zero() {
                    v[col] = c.neg();
                }
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Incremental echelon of formal sums over an ambient free basis; used for
/// image spans and homology representatives.
#[derive(Debug, Clone, Default)]
pub struct SpanEchelon {
    rows: Vec<FormalSum>,
}

impl SpanEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce x by the current rows; the result has no term at any row's
    /// leading symbol.
    pub fn reduce(&self, x: &FormalSum) -> Result<FormalSum, LinearError> {
        let mut v = x.clone();
        loop {
            let mut changed = false;
            for row in &self.rows {
                let (lead, _) = row.leading().expect("nonzero row");
                let c = v.coeff(lead);
                if !c.is_zero() {
                    let delta = row.scale(&c).map_err(LinearError::Scalar)?;
                    v = v.sub(&delta).map_err(LinearError::Scalar)?;
                    changed = true;
                }
            }
            if !changed {
                return Ok(v);
            }
        }
    }

    /// Insert x into the span; returns the normalized new row when the
    /// rank grew.
    pub fn insert(&mut self, x: &FormalSum) -> Result<Option<FormalSum>, LinearError> {
        let v = self.reduce(x)?;
        let Some((_, lead_c)) = v.leading() else {
            return Ok(None);
        };
        let inv = lead_c.inv().map_err(LinearError::Scalar)?;
        let v = v.scale(&inv).map_err(LinearError::Scalar)?;
        self.rows.push(v.clone());
        self.rows
            .sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
        Ok(Some(v))
    }

    pub fn rows(&self) -> &[FormalSum] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(names: &[&str]) -> Vec<Sym> {
        names.iter().map(|n| Sym::new(*n)).collect()
    }

    #[test]
    fn canonical_form_kills_relation() {
        let g = syms(&["g1", "g2"]);
        let rel = FormalSum::gen(g[0].clone())
            .sub(&FormalSum::gen(g[1].clone()))
            .unwrap();
        let sp = PresentedSpace::new("V", g.clone(), vec![rel.clone()]).unwrap();
        let reduced = sp.canonical_form(&rel).unwrap();
        assert!(reduced.is_zero());
        assert_eq!(sp.dim(), 1);
        // x = 2 g1 reduces to 2 g2
        let x = FormalSum::single(g[0].clone(), ExactScalar::from_int(2));
        let r = sp.canonical_form(&x).unwrap();
        assert_eq!(r.coeff(&g[1]), ExactScalar::from_int(2));
    }

    #[test]
    fn canonical_form_is_projection() {
        let g = syms(&["a", "b", "c"]);
        let r1 = FormalSum::gen(g[0].clone())
            .add(&FormalSum::gen(g[1].clone()))
            .unwrap();
        let r2 = FormalSum::gen(g[1].clone())
            .add(&FormalSum::single(g[2].clone(), ExactScalar::from_ratio(1, 2)))
            .unwrap();
        let sp = PresentedSpace::new("V", g.clone(), vec![r1, r2]).unwrap();
        let x = FormalSum::single(g[0].clone(), ExactScalar::from_int(7));
        let once = sp.canonical_form(&x).unwrap();
        let twice = sp.canonical_form(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let g = syms(&["x", "y", "z"]);
        let sp = PresentedSpace::free("V", g.clone()).unwrap();
        let zero = LinearMap::zero();
        let k = kernel_basis(&sp, &sp, &zero).unwrap();
        assert_eq!(k.len(), 3);
        let id = LinearMap::new(
            g.iter()
                .map(|s| (s.clone(), FormalSum::gen(s.clone())))
                .collect(),
        );
        let k = kernel_basis(&sp, &sp, &id).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn unknown_generator_rejected() {
        let sp = PresentedSpace::free("V", syms(&["x"])).unwrap();
        let bad = FormalSum::gen(Sym::new("nope"));
        assert!(matches!(
            sp.canonical_form(&bad),
            Err(LinearError::UnknownGenerator(_))
        ));
    }
}
