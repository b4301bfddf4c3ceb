use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{check_dim, AffineConstraint, AffineMap, Cell, GeomError};
use crate::linalg::{dot, vec_mat};
use crate::rational::Rational;

/// A finite union of cells in `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLSet {
    dim: usize,
    cells: Vec<Cell>,
}

impl PLSet {
    pub fn empty(dim: usize) -> Self {
        PLSet { dim, cells: Vec::new() }
    }

    pub fn universe(dim: usize) -> Self {
        PLSet { dim, cells: alloc::vec![Cell::universe(dim)] }
    }

    pub fn from_cell(cell: Cell) -> Self {
        PLSet { dim: cell.dim(), cells: alloc::vec![cell] }
    }

    pub fn from_cells(dim: usize, cells: Vec<Cell>) -> Result<Self, GeomError> {
        for c in &cells {
            check_dim(dim, c.dim())?;
        }
        Ok(PLSet { dim, cells })
    }

    /// The set cut out by one conjunction of constraints.
    pub fn from_constraints(dim: usize, constraints: Vec<AffineConstraint>) -> Result<Self, GeomError> {
        Ok(match Cell::new(dim, constraints)? {
            Some(c) => Self::from_cell(c),
            None => Self::empty(dim),
        })
    }

    /// Union of conjunctions.
    pub fn from_conjunctions(dim: usize, cells: Vec<Vec<AffineConstraint>>) -> Result<Self, GeomError> {
        let mut out = Vec::new();
        for cs in cells {
            if let Some(c) = Cell::new(dim, cs)? {
                out.push(c);
            }
        }
        Ok(PLSet { dim, cells: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn member(&self, p: &[Rational]) -> bool {
        p.len() == self.dim && self.cells.iter().any(|c| c.contains(p))
    }

    pub fn union(&self, other: &PLSet) -> Result<PLSet, GeomError> {
        check_dim(self.dim, other.dim)?;
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Ok(PLSet { dim: self.dim, cells })
    }

    pub fn intersect(&self, other: &PLSet) -> Result<PLSet, GeomError> {
        check_dim(self.dim, other.dim)?;
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                if let Some(c) = a.meet(b)? {
                    cells.push(c);
                }
            }
        }
        Ok(PLSet { dim: self.dim, cells })
    }

    /// Intersection with one extra conjunction.
    pub fn restrict(&self, extra: &[AffineConstraint]) -> Result<PLSet, GeomError> {
        let mut cells = Vec::new();
        for a in &self.cells {
            if let Some(c) = a.with(extra)? {
                cells.push(c);
            }
        }
        Ok(PLSet { dim: self.dim, cells })
    }

    fn subtract_cell(cells: Vec<Cell>, b: &Cell) -> Result<Vec<Cell>, GeomError> {
        let pieces = b.complement_pieces();
        let mut out = Vec::new();
        for a in cells {
            if a.meet(b)?.is_none() {
                out.push(a);
                continue;
            }
            for piece in &pieces {
                if let Some(c) = a.with(piece)? {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    pub fn subtract(&self, other: &PLSet) -> Result<PLSet, GeomError> {
        check_dim(self.dim, other.dim)?;
        let mut cells = self.cells.clone();
        for b in &other.cells {
            if cells.is_empty() {
                break;
            }
            cells = Self::subtract_cell(cells, b)?;
        }
        Ok(PLSet { dim: self.dim, cells })
    }

    /// Same point set with pairwise disjoint cells.
    pub fn disjointify(&self) -> PLSet {
        let mut out: Vec<Cell> = Vec::new();
        for c in &self.cells {
            let mut fresh = alloc::vec![c.clone()];
            for prev in &out {
                fresh = Self::subtract_cell(fresh, prev).expect("dimensions agree");
                if fresh.is_empty() {
                    break;
                }
            }
            out.extend(fresh);
        }
        PLSet { dim: self.dim, cells: out }
    }

    pub fn is_subset(&self, other: &PLSet) -> Result<bool, GeomError> {
        Ok(self.subtract(other)?.is_empty())
    }

    /// Exact point-set equality.
    pub fn set_eq(&self, other: &PLSet) -> Result<bool, GeomError> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn product(&self, other: &PLSet) -> PLSet {
        let (n, m) = (self.dim, other.dim);
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                let mut cs: Vec<AffineConstraint> = a.constraints().iter().map(|c| c.embed(0, m)).collect();
                cs.extend(b.constraints().iter().map(|c| c.embed(n, 0)));
                // Product of nonempty cells is nonempty; constraints stay canonical.
                cells.push(Cell::new(n + m, cs).unwrap().expect("product of nonempty cells"));
            }
        }
        PLSet { dim: n + m, cells }
    }

    /// `{x : f(x) ∈ self}`.
    pub fn preimage(&self, f: &AffineMap) -> Result<PLSet, GeomError> {
        check_dim(self.dim, f.out_dim())?;
        let n = f.in_dim();
        let pull = |c: &AffineConstraint| {
            AffineConstraint::raw(vec_mat(&c.coeffs, &f.matrix, n), c.rel, &c.rhs - &dot(&c.coeffs, &f.offset))
        };
        PLSet::from_conjunctions(n, self.cells.iter().map(|c| c.constraints().iter().map(pull).collect()).collect())
    }

    /// `self + v`.
    pub fn translate(&self, v: &[Rational]) -> Result<PLSet, GeomError> {
        check_dim(self.dim, v.len())?;
        let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
        self.preimage(&AffineMap::translation(&neg))
    }

    /// Image under `x ↦ −x`.
    pub fn negate(&self) -> PLSet {
        self.preimage(&AffineMap::antipodal(self.dim)).expect("dimensions agree")
    }

    pub fn closure(&self) -> PLSet {
        PLSet { dim: self.dim, cells: self.cells.iter().map(Cell::closure).collect() }
    }

    /// Distinct hyperplanes `a·x = b` supporting some constraint.
    pub fn hyperplanes(&self) -> Vec<AffineConstraint> {
        let mut set = BTreeSet::new();
        for c in &self.cells {
            for k in c.constraints() {
                if let Some(h) = k.hyperplane() {
                    set.insert(h);
                }
            }
        }
        set.into_iter().collect()
    }
}
