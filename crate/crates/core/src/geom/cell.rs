use alloc::vec;
use alloc::vec::Vec;

use super::lp::{maximize, maximize_from, LpOutcome, Row, RowKind};
use super::{check_dim, AffineConstraint, GeomError, Normalized, Relation};
use crate::rational::Rational;

/// A nonempty convex set given as a conjunction of affine constraints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    dim: usize,
    constraints: Vec<AffineConstraint>,
}

/// Adds `c` to canonical rows `out` (unsorted); false if `c` is constant-false.
fn merge(out: &mut Vec<AffineConstraint>, c: &AffineConstraint) -> bool {
    match c.normalize() {
        Normalized::Always => true,
        Normalized::Never => false,
        Normalized::Constraint(c) => {
            // A strict row makes the non-strict twin redundant.
            if let Some(prev) = out.iter_mut().find(|p| p.coeffs == c.coeffs && p.rhs == c.rhs) {
                match (prev.rel, c.rel) {
                    (a, b) if a == b => return true,
                    (Relation::Le, Relation::Lt) => {
                        prev.rel = Relation::Lt;
                        return true;
                    }
                    (Relation::Lt, Relation::Le) => return true,
                    _ => {}
                }
            }
            out.push(c);
            true
        }
    }
}

/// Canonicalizes and deduplicates; `None` if some constraint is constant-false.
fn canonical(dim: usize, cs: &[AffineConstraint]) -> Result<Option<Vec<AffineConstraint>>, GeomError> {
    let mut out: Vec<AffineConstraint> = Vec::with_capacity(cs.len());
    for c in cs {
        check_dim(dim, c.dim())?;
        if !merge(&mut out, c) {
            return Ok(None);
        }
    }
    out.sort();
    Ok(Some(out))
}

/// `cs` (already canonical) extended by `extra`.
fn extended(dim: usize, cs: &[AffineConstraint], extra: &[AffineConstraint]) -> Result<Option<Vec<AffineConstraint>>, GeomError> {
    let mut out = cs.to_vec();
    for c in extra {
        check_dim(dim, c.dim())?;
        if !merge(&mut out, c) {
            return Ok(None);
        }
    }
    out.sort();
    Ok(Some(out))
}

fn lp_rows(cs: &[AffineConstraint], extra: usize, strict_slack: bool) -> Vec<Row> {
    cs.iter()
        .map(|c| {
            let mut coeffs = c.coeffs.clone();
            coeffs.resize(c.coeffs.len() + extra, Rational::zero());
            let kind = if c.rel == Relation::Eq { RowKind::Eq } else { RowKind::Le };
            if strict_slack && c.rel != Relation::Eq && extra > 0 {
                coeffs[c.coeffs.len()] = Rational::one();
            }
            Row { coeffs, kind, rhs: c.rhs.clone() }
        })
        .collect()
}

/// Finds a point satisfying every constraint, treating strict rows exactly:
/// maximize ε subject to `a·x + ε ≤ b` on strict rows and `ε ≤ 1`.
/// With `all_slack` the ε-margin is demanded on non-strict rows too.
fn witness(dim: usize, cs: &[AffineConstraint], all_slack: bool) -> Option<Vec<Rational>> {
    let any_strict = cs.iter().any(|c| c.rel == Relation::Lt);
    if !any_strict && !all_slack {
        let rows = lp_rows(cs, 0, false);
        return match maximize(dim, &rows, &vec![Rational::zero(); dim]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        };
    }
    let mut rows: Vec<Row> = cs
        .iter()
        .map(|c| {
            let mut coeffs = c.coeffs.clone();
            coeffs.push(Rational::zero());
            let kind = if c.rel == Relation::Eq { RowKind::Eq } else { RowKind::Le };
            if c.rel == Relation::Lt || (all_slack && c.rel == Relation::Le) {
                coeffs[dim] = Rational::one();
            }
            Row { coeffs, kind, rhs: c.rhs.clone() }
        })
        .collect();
    let mut cap = vec![Rational::zero(); dim + 1];
    cap[dim] = Rational::one();
    rows.push(Row { coeffs: cap.clone(), kind: RowKind::Le, rhs: Rational::one() });
    match maximize(dim + 1, &rows, &cap) {
        LpOutcome::Optimal { value, mut x } if value.is_positive() => {
            x.pop();
            Some(x)
        }
        _ => None,
    }
}

/// Like [`witness`], starting from a point `start` of the closure.
fn witness_from(dim: usize, cs: &[AffineConstraint], start: &[Rational]) -> Option<Vec<Rational>> {
    if cs.iter().all(|c| c.rel != Relation::Lt) {
        return Some(start.to_vec());
    }
    let mut rows = lp_rows(cs, 1, false);
    for (r, c) in rows.iter_mut().zip(cs) {
        if c.rel == Relation::Lt {
            r.coeffs[dim] = Rational::one();
        }
    }
    let mut cap = vec![Rational::zero(); dim + 1];
    cap[dim] = Rational::one();
    rows.push(Row { coeffs: cap.clone(), kind: RowKind::Le, rhs: Rational::one() });
    let mut w = start.to_vec();
    w.push(Rational::zero());
    match maximize_from(dim + 1, &rows, &cap, &w) {
        LpOutcome::Optimal { value, mut x } if value.is_positive() => {
            x.pop();
            Some(x)
        }
        _ => None,
    }
}

/// Whether the conjunction of `constraints` has a rational solution in `Q^dim`.
pub fn cell_nonempty(constraints: &[AffineConstraint], dim: usize) -> Result<bool, GeomError> {
    match canonical(dim, constraints)? {
        None => Ok(false),
        Some(cs) => Ok(witness(dim, &cs, false).is_some()),
    }
}

impl Cell {
    /// Canonicalizes `constraints`; `Ok(None)` when the cell is empty.
    pub fn new(dim: usize, constraints: Vec<AffineConstraint>) -> Result<Option<Cell>, GeomError> {
        let Some(cs) = canonical(dim, &constraints)? else {
            return Ok(None);
        };
        if witness(dim, &cs, false).is_none() {
            return Ok(None);
        }
        Ok(Some(Cell { dim, constraints: cs }))
    }

    pub fn universe(dim: usize) -> Cell {
        Cell { dim, constraints: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[AffineConstraint] {
        &self.constraints
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.dim && self.constraints.iter().all(|c| c.satisfied(p))
    }

    pub fn is_closed(&self) -> bool {
        self.constraints.iter().all(|c| c.rel != Relation::Lt)
    }

    /// Some point of the cell, pushed away from non-strict walls when the
    /// cell has interior relative to them.
    pub fn interior_witness(&self) -> Vec<Rational> {
        witness(self.dim, &self.constraints, true)
            .or_else(|| witness(self.dim, &self.constraints, false))
            .expect("stored cells are nonempty")
    }

    /// Intersection with another cell, `None` if empty.
    pub fn meet(&self, other: &Cell) -> Result<Option<Cell>, GeomError> {
        check_dim(self.dim, other.dim)?;
        let mut cs = self.constraints.clone();
        cs.extend(other.constraints.iter().cloned());
        Cell::new(self.dim, cs)
    }

    /// Intersection with extra constraints, `None` if empty.
    pub fn with(&self, extra: &[AffineConstraint]) -> Result<Option<Cell>, GeomError> {
        let mut cs = self.constraints.clone();
        cs.extend(extra.iter().cloned());
        Cell::new(self.dim, cs)
    }

    /// Like [`Cell::with`], also returning the point that proves nonemptiness.
    pub(crate) fn with_point(&self, extra: &[AffineConstraint]) -> Result<Option<(Cell, Vec<Rational>)>, GeomError> {
        let Some(cs) = extended(self.dim, &self.constraints, extra)? else {
            return Ok(None);
        };
        Ok(witness(self.dim, &cs, false).map(|p| (Cell { dim: self.dim, constraints: cs }, p)))
    }

    /// Like [`Cell::with_point`], given a point `start` of the closure of the
    /// result.
    pub(crate) fn with_point_from(&self, extra: &[AffineConstraint], start: &[Rational]) -> Option<(Cell, Vec<Rational>)> {
        let cs = extended(self.dim, &self.constraints, extra).expect("dimensions agree")?;
        witness_from(self.dim, &cs, start).map(|p| (Cell { dim: self.dim, constraints: cs }, p))
    }

    /// Maximum of `c·x` over the closure and a maximizer, starting from a
    /// point `w` of the cell; `None` if unbounded.
    pub(crate) fn sup_from(&self, c: &[Rational], w: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
        match maximize_from(self.dim, &lp_rows(&self.constraints, 0, false), c, w) {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }

    /// Adds constraints known to hold at some point of the cell.
    pub(crate) fn with_known_point(&self, extra: &[AffineConstraint]) -> Cell {
        let cs = extended(self.dim, &self.constraints, extra).expect("dimensions agree").expect("satisfiable");
        Cell { dim: self.dim, constraints: cs }
    }

    /// Topological closure (strict rows relaxed); exact because the cell is nonempty.
    pub fn closure(&self) -> Cell {
        let cs: Vec<AffineConstraint> = self.constraints.iter().map(|c| c.relaxed()).collect();
        Cell { dim: self.dim, constraints: canonical(self.dim, &cs).unwrap().unwrap() }
    }

    /// Complement as pairwise disjoint constraint lists.
    pub fn complement_pieces(&self) -> Vec<Vec<AffineConstraint>> {
        let mut pieces = Vec::new();
        let mut prefix: Vec<AffineConstraint> = Vec::new();
        for c in &self.constraints {
            for neg in c.complement() {
                let mut piece = prefix.clone();
                piece.push(neg);
                pieces.push(piece);
            }
            prefix.push(c.clone());
        }
        pieces
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Relation::*;
    use crate::rational::{q, qi};

    fn c(coeffs: &[i64], rel: crate::geom::Relation, rhs: i64) -> AffineConstraint {
        AffineConstraint::raw(coeffs.iter().map(|&x| qi(x)).collect(), rel, qi(rhs))
    }

    #[test]
    fn emptiness_examples() {
        assert!(!cell_nonempty(&[c(&[-1], Le, 0), c(&[1], Lt, 0)], 1).unwrap());
        assert!(cell_nonempty(&[c(&[1, 1], Le, 1), c(&[-1, 0], Le, 0), c(&[0, -1], Le, 0)], 2).unwrap());
        assert!(!cell_nonempty(&[c(&[1], Lt, 1), c(&[-1], Lt, -1)], 1).unwrap());
        assert!(cell_nonempty(&[c(&[1], Le, 1), c(&[-1], Le, -1)], 1).unwrap());
        assert!(matches!(
            cell_nonempty(&[c(&[1, 0], Le, 1)], 1),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn witness_respects_strict_rows() {
        let cell = Cell::new(1, vec![c(&[1], Lt, 1), c(&[-1], Lt, 0)]).unwrap().unwrap();
        let w = cell.interior_witness();
        assert!(cell.contains(&w));
        assert!(w[0] > qi(0) && w[0] < qi(1));
        let seg = Cell::new(1, vec![c(&[2], Le, 1), c(&[-1], Le, 0)]).unwrap().unwrap();
        let w = seg.interior_witness();
        assert!(w[0] > qi(0) && w[0] < q(1, 2));
    }

    #[test]
    fn strict_twin_absorbs() {
        let cell = Cell::new(1, vec![c(&[1], Le, 1), c(&[2], Lt, 2)]).unwrap().unwrap();
        assert_eq!(cell.constraints().len(), 1);
        assert!(!cell.contains(&[qi(1)]));
    }
}
