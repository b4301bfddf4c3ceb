//! Compactly supported cohomology of locally closed semilinear sets.
//!
//! A set `S` is first cut down to `T = S ∩ (−R, R)^n` where `R` exceeds the
//! norm of every vertex of the arrangement formed by the constraint
//! hyperplanes of `S` together with the hyperplanes of the sup-norm fan
//! (`x_i = 0`, `x_i = ±x_j`). Beyond that radius `S` is radially a product, so
//! `H*_c(S) = H*_c(T)`, and `T` is bounded.
//!
//! * A single convex cell `T` has `H^k_c(T) = H̃^{k−1}(Z)` where `Z` is the
//!   part of the boundary of `cl T` missing from `T`; `Z` is a union of closed
//!   faces and is computed through its nerve.
//! * A general `T` is handled through the face complex of its arrangement:
//!   cells of `cl T` form a regular cell complex in which `cl T ∖ T` is a
//!   subcomplex, and `H*_c(T)` is the relative cellular cohomology.

mod faces;
pub mod rank;
mod simplicial;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::convex::combinations;
use crate::geom::{AffineConstraint, Cell, GeomError, PLSet, Relation};
use crate::linalg::{rank as dense_rank, solve};
use crate::rational::Rational;

pub use faces::{arrangement_witnesses, Face, FaceComplex};
pub use rank::sparse_rank;
pub use simplicial::{order_complex, SimplicialPair};

/// Degree → dimension, with zero entries omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        GradedDims(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(i64, usize)]) -> Self {
        let mut g = GradedDims::new();
        for &(k, v) in pairs {
            g.add(k, v);
        }
        g
    }

    /// Dimension one in a single degree.
    pub fn single(degree: i64) -> Self {
        Self::from_pairs(&[(degree, 1)])
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn add(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    /// Every degree moved by `offset`.
    pub fn shifted(&self, offset: i64) -> Self {
        GradedDims(self.0.iter().map(|(&k, &v)| (k + offset, v)).collect())
    }

    /// Multiplies every dimension by `r`.
    pub fn scaled(&self, r: usize) -> Self {
        let mut g = GradedDims::new();
        for (k, v) in self.iter() {
            g.add(k, v * r);
        }
        g
    }

    /// Direct sum.
    pub fn plus(&self, other: &GradedDims) -> Self {
        let mut g = self.clone();
        for (k, v) in other.iter() {
            g.add(k, v);
        }
        g
    }

    /// Graded tensor product (degrees add).
    pub fn tensor(&self, other: &GradedDims) -> Self {
        let mut g = GradedDims::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                g.add(a + b, x * y);
            }
        }
        g
    }

    /// `Σ (−1)^k dim`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(k, v)| if k.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum()
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HcError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("set is not locally closed: the point {} of cell(s) {cells:?} lies in the closure of the complement", fmt_point(point))]
    NotLocallyClosed { point: Vec<Rational>, cells: Vec<usize> },
    #[error("set is unbounded")]
    Unbounded,
    #[error("set is not closed")]
    NotClosed,
    #[error("subcomplex is not contained in the complex")]
    NotSubset,
}

fn fmt_point(p: &[Rational]) -> alloc::string::String {
    let parts: Vec<alloc::string::String> = p.iter().map(|x| alloc::format!("{x}")).collect();
    alloc::format!("({})", parts.join(", "))
}

fn unit(n: usize, i: usize, s: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(s);
    v
}

fn fan_hyperplanes(n: usize) -> Vec<AffineConstraint> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(AffineConstraint::eq(unit(n, i, 1), Rational::zero()));
        for j in i + 1..n {
            let mut d = unit(n, i, 1);
            d[j] = -Rational::one();
            out.push(AffineConstraint::eq(d.clone(), Rational::zero()));
            d[j] = Rational::one();
            out.push(AffineConstraint::eq(d, Rational::zero()));
        }
    }
    out
}

/// An integer radius exceeding by at least one the sup-norm of every vertex
/// of the arrangement of the constraint hyperplanes of `s` and the sup-norm
/// fan.
pub fn critical_radius(s: &PLSet) -> Rational {
    let n = s.dim();
    let own = s.hyperplanes();
    let mut all = own.clone();
    for f in fan_hyperplanes(n) {
        if !own.contains(&f) {
            all.push(f);
        }
    }
    let mut max = Rational::zero();
    if n > 0 {
        for subset in combinations(all.len(), n) {
            if subset[0] >= own.len() {
                break;
            }
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| all[i].coeffs.clone()).collect();
            let rhs: Vec<Rational> = subset.iter().map(|&i| all[i].rhs.clone()).collect();
            if dense_rank(&rows, n) < n {
                continue;
            }
            if let Some(x) = solve(&rows, &rhs, n) {
                for c in x {
                    let a = c.abs();
                    if a > max {
                        max = a;
                    }
                }
            }
        }
    }
    let ceil = -(-max).floor();
    &ceil + &Rational::one()
}

fn open_box(n: usize, r: &Rational) -> Vec<AffineConstraint> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        out.push(AffineConstraint::lt(unit(n, i, 1), r.clone()));
        out.push(AffineConstraint::lt(unit(n, i, -1), r.clone()));
    }
    out
}

fn box_hyperplanes(n: usize, r: &Rational) -> Vec<AffineConstraint> {
    (0..n).flat_map(|i| [AffineConstraint::eq(unit(n, i, 1), r.clone()), AffineConstraint::eq(unit(n, i, 1), -r)]).collect()
}

/// `H*_c(s; Q)`.
pub fn hc(s: &PLSet) -> Result<GradedDims, HcError> {
    if s.is_empty() {
        return Ok(GradedDims::new());
    }
    if s.dim() == 0 {
        return Ok(GradedDims::single(0));
    }
    hc_with_radius(s, &critical_radius(s))
}

/// `H*_c(s ∩ (−r, r)^n)`; equals `hc(s)` for any `r ≥ critical_radius(s)`.
pub fn hc_with_radius(s: &PLSet, r: &Rational) -> Result<GradedDims, HcError> {
    let t = truncate(s, r)?;
    match t.as_slice() {
        [] => Ok(GradedDims::new()),
        [c] => Ok(hc_bounded_convex(c)),
        _ => hc_cellular(s, r, &t),
    }
}

/// Same as [`hc`] but always through the cellular model (no convex shortcut).
pub fn hc_cellular_only(s: &PLSet) -> Result<GradedDims, HcError> {
    if s.is_empty() {
        return Ok(GradedDims::new());
    }
    if s.dim() == 0 {
        return Ok(GradedDims::single(0));
    }
    let r = critical_radius(s);
    let t = truncate(s, &r)?;
    if t.is_empty() {
        return Ok(GradedDims::new());
    }
    hc_cellular(s, &r, &t)
}

fn truncate(s: &PLSet, r: &Rational) -> Result<Vec<Cell>, HcError> {
    let bx = open_box(s.dim(), r);
    let mut cells = Vec::new();
    for c in s.cells() {
        if let Some(t) = c.with(&bx)? {
            cells.push(t);
        }
    }
    Ok(cells)
}

/// `H*_c` of a bounded nonempty convex cell via the nerve of its missing
/// boundary faces.
fn hc_bounded_convex(t: &Cell) -> GradedDims {
    let n = t.dim();
    let mut eq_rows = Vec::new();
    let mut other = Vec::new();
    let mut strict = Vec::new();
    for c in t.constraints() {
        match c.rel {
            Relation::Eq => eq_rows.push(c.clone()),
            Relation::Le => other.push(c.clone()),
            Relation::Lt => {
                strict.push(other.len());
                other.push(c.clone());
            }
        }
    }
    if strict.is_empty() {
        return GradedDims::single(0);
    }
    let closed = t.closure();
    let eq_mat: Vec<Vec<Rational>> = eq_rows.iter().map(|c| c.coeffs.clone()).collect();
    let eq_rank = dense_rank(&eq_mat, n);
    let need = n - eq_rank;

    // Tight strict-row sets at each vertex of cl T.
    let mut tight_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut seen_vertices = BTreeSet::new();
    for subset in combinations(other.len(), need) {
        let mut rows = eq_mat.clone();
        let mut rhs: Vec<Rational> = eq_rows.iter().map(|c| c.rhs.clone()).collect();
        for &i in &subset {
            rows.push(other[i].coeffs.clone());
            rhs.push(other[i].rhs.clone());
        }
        if dense_rank(&rows, n) < n {
            continue;
        }
        let Some(x) = solve(&rows, &rhs, n) else { continue };
        if !closed.contains(&x) || !seen_vertices.insert(x.clone()) {
            continue;
        }
        let tight: Vec<usize> =
            strict.iter().enumerate().filter(|(_, &i)| other[i].slack(&x).is_zero()).map(|(j, _)| j).collect();
        if !tight.is_empty() {
            tight_sets.insert(tight);
        }
    }
    if tight_sets.is_empty() {
        return GradedDims::single(0);
    }

    // Nerve simplices of size ≤ n + 1.
    let mut simplices: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); n + 1];
    for ts in &tight_sets {
        for k in 1..=ts.len().min(n + 1) {
            for sub in combinations(ts.len(), k) {
                simplices[k - 1].insert(sub.iter().map(|&i| ts[i]).collect());
            }
        }
    }
    let lists: Vec<Vec<Vec<usize>>> = simplices.into_iter().map(|s| s.into_iter().collect()).collect();
    let index: Vec<BTreeMap<&Vec<usize>, usize>> =
        lists.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    // rank δ^j : C^j → C^{j+1}, for j = 0..n−1; δ^{−1} has rank 1.
    let mut ranks = vec![0usize; n];
    for (j, r) in ranks.iter_mut().enumerate() {
        let rows: Vec<rank::SparseRow> = lists[j + 1]
            .iter()
            .map(|tau| {
                let mut row: rank::SparseRow = (0..tau.len())
                    .map(|i| {
                        let mut sigma = tau.clone();
                        sigma.remove(i);
                        (index[j][&sigma], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        *r = sparse_rank(&rows);
    }
    let mut out = GradedDims::new();
    for j in 0..n {
        let below = if j == 0 { 1 } else { ranks[j - 1] };
        let reduced = lists[j].len() - ranks[j] - below;
        out.add(j as i64 + 1, reduced);
    }
    out
}

struct CellularModel {
    complex: FaceComplex,
    in_t: Vec<bool>,
}

fn cellular_model(s: &PLSet, r: &Rational, t: &[Cell]) -> Result<CellularModel, HcError> {
    let n = s.dim();
    let mut hs: BTreeSet<AffineConstraint> = s.hyperplanes().into_iter().collect();
    hs.extend(box_hyperplanes(n, r));
    let hs: Vec<AffineConstraint> = hs.into_iter().collect();
    let closures = faces::closures(t);
    let complex = FaceComplex::build(n, &closures, &hs);
    let bx = open_box(n, r);
    let in_t: Vec<bool> = complex
        .faces
        .iter()
        .map(|f| s.member(&f.witness) && bx.iter().all(|c| c.satisfied(&f.witness)))
        .collect();
    for (fi, facets) in complex.facets.iter().enumerate() {
        if in_t[fi] {
            continue;
        }
        if let Some(&(gi, _)) = facets.iter().find(|(gi, _)| in_t[*gi]) {
            let point = complex.faces[gi].witness.clone();
            let cells = s.cells().iter().enumerate().filter(|(_, c)| c.contains(&point)).map(|(i, _)| i).collect();
            return Err(HcError::NotLocallyClosed { point, cells });
        }
    }
    Ok(CellularModel { complex, in_t })
}

fn hc_cellular(s: &PLSet, r: &Rational, t: &[Cell]) -> Result<GradedDims, HcError> {
    let n = s.dim();
    let CellularModel { complex, in_t } = cellular_model(s, r, t)?;
    let mut idx = vec![usize::MAX; complex.faces.len()];
    let mut counts = vec![0usize; n + 1];
    for (i, f) in complex.faces.iter().enumerate() {
        if in_t[i] {
            idx[i] = counts[f.dim];
            counts[f.dim] += 1;
        }
    }
    let mut rows: Vec<Vec<rank::SparseRow>> = vec![Vec::new(); n + 1];
    for (fi, f) in complex.faces.iter().enumerate() {
        if !in_t[fi] || f.dim == 0 {
            continue;
        }
        let mut row: rank::SparseRow =
            complex.facets[fi].iter().filter(|(g, _)| in_t[*g]).map(|&(g, s)| (idx[g], s)).collect();
        row.sort_unstable();
        rows[f.dim - 1].push(row);
    }
    let ranks: Vec<usize> = rows.iter().map(|r| sparse_rank(r)).collect();
    let mut out = GradedDims::new();
    for k in 0..=n {
        let below = if k == 0 { 0 } else { ranks[k - 1] };
        out.add(k as i64, counts[k] - ranks[k] - below);
    }
    Ok(out)
}

fn model_pair(complex: &FaceComplex, in_sub: &[bool]) -> SimplicialPair {
    let coords = complex.faces.iter().map(|f| f.witness.clone()).collect();
    let lower: Vec<Vec<usize>> = complex.facets.iter().map(|fs| fs.iter().map(|&(g, _)| g).collect()).collect();
    order_complex(coords, &lower, in_sub)
}

/// The compact pair `(cl T, cl T ∖ T)` with `T = s ∩ (−R, R)^n`, triangulated
/// by barycentric subdivision of its face complex. Its relative cohomology
/// is `H*_c(s)`.
pub fn hc_model(s: &PLSet) -> Result<SimplicialPair, HcError> {
    let n = s.dim();
    let r = critical_radius(s);
    let t = truncate(s, &r)?;
    if t.is_empty() {
        return Ok(SimplicialPair { vertices: Vec::new(), simplices: vec![Vec::new(); n + 1], in_sub: vec![Vec::new(); n + 1] });
    }
    let m = cellular_model(s, &r, &t)?;
    let sub: Vec<bool> = m.in_t.iter().map(|b| !b).collect();
    Ok(model_pair(&m.complex, &sub))
}

fn is_bounded(c: &Cell) -> bool {
    let body = crate::convex::ConvexBody::new(c.clone());
    (0..c.dim()).all(|i| {
        [1, -1].iter().all(|&s| {
            crate::convex::support_function(&body, &unit(c.dim(), i, s)).map(|v| v.is_finite()).unwrap_or(false)
        })
    })
}

/// Triangulates a compact polyhedral pair `(x, a)` with `a ⊆ x` closed.
pub fn triangulate_pair(x: &PLSet, a: &PLSet) -> Result<SimplicialPair, HcError> {
    let n = x.dim();
    crate::geom::check_dim(n, a.dim())?;
    for c in x.cells().iter().chain(a.cells()) {
        if !c.is_closed() {
            return Err(HcError::NotClosed);
        }
        if !is_bounded(c) {
            return Err(HcError::Unbounded);
        }
    }
    if !a.is_subset(x)? {
        return Err(HcError::NotSubset);
    }
    let mut hs: BTreeSet<AffineConstraint> = x.hyperplanes().into_iter().collect();
    hs.extend(a.hyperplanes());
    let hs: Vec<AffineConstraint> = hs.into_iter().collect();
    let complex = FaceComplex::build(n, x.cells(), &hs);
    let sub: Vec<bool> = complex.faces.iter().map(|f| a.member(&f.witness)).collect();
    Ok(model_pair(&complex, &sub))
}
