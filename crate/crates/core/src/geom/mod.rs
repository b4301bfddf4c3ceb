//! Semilinear sets over `Q^n`: affine constraints, convex cells, finite
//! unions of cells and affine maps between them.

mod affine;
mod cell;
pub mod lp;
mod plset;

use alloc::vec::Vec;

use crate::linalg::dot;
use crate::rational::Rational;

pub use affine::AffineMap;
pub use cell::{cell_nonempty, Cell};
pub use plset::PLSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("input is not a cone: constraint {index} has nonzero right-hand side")]
    NotACone { index: usize },
    #[error("empty convex body")]
    EmptyBody,
    #[error("{0}")]
    Unsupported(&'static str),
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), GeomError> {
    if expected == found {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, found })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Le,
    Lt,
}

/// `coeffs · x  rel  rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineConstraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

/// Result of normalizing a constraint: constant-true, constant-false, or a
/// constraint in canonical scaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    Always,
    Never,
    Constraint(AffineConstraint),
}

impl AffineConstraint {
    /// Builds a constraint without normalizing it.
    pub fn raw(coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        AffineConstraint { coeffs, rel, rhs }
    }

    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::raw(coeffs, Relation::Le, rhs)
    }

    pub fn lt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::raw(coeffs, Relation::Lt, rhs)
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::raw(coeffs, Relation::Eq, rhs)
    }

    /// `coeffs · x ≥ rhs`.
    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::le(coeffs.iter().map(|c| -c).collect(), -rhs)
    }

    /// `coeffs · x > rhs`.
    pub fn gt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::lt(coeffs.iter().map(|c| -c).collect(), -rhs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Canonical scaling: inequalities are divided by the absolute value of
    /// the first nonzero coefficient, equalities by that coefficient itself.
    /// Constraints with all-zero coefficients collapse to a truth value.
    pub fn normalize(&self) -> Normalized {
        let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()) else {
            let holds = match self.rel {
                Relation::Eq => self.rhs.is_zero(),
                Relation::Le => !self.rhs.is_negative(),
                Relation::Lt => self.rhs.is_positive(),
            };
            return if holds { Normalized::Always } else { Normalized::Never };
        };
        let s = match self.rel {
            Relation::Eq => lead.recip(),
            _ => lead.abs().recip(),
        };
        if s == Rational::one() {
            return Normalized::Constraint(self.clone());
        }
        Normalized::Constraint(AffineConstraint {
            coeffs: self.coeffs.iter().map(|c| c * &s).collect(),
            rel: self.rel,
            rhs: &self.rhs * &s,
        })
    }

    /// `coeffs · p − rhs`.
    pub fn slack(&self, p: &[Rational]) -> Rational {
        &dot(&self.coeffs, p) - &self.rhs
    }

    pub fn satisfied(&self, p: &[Rational]) -> bool {
        let s = self.slack(p);
        match self.rel {
            Relation::Eq => s.is_zero(),
            Relation::Le => !s.is_positive(),
            Relation::Lt => s.is_negative(),
        }
    }

    /// The same constraint with `<` relaxed to `≤`.
    pub fn relaxed(&self) -> Self {
        let rel = if self.rel == Relation::Lt { Relation::Le } else { self.rel };
        Self::raw(self.coeffs.clone(), rel, self.rhs.clone())
    }

    /// Disjoint cells (as single constraints) whose union is the complement.
    pub fn complement(&self) -> Vec<AffineConstraint> {
        let neg: Vec<Rational> = self.coeffs.iter().map(|c| -c).collect();
        match self.rel {
            Relation::Le => alloc::vec![Self::lt(neg, -&self.rhs)],
            Relation::Lt => alloc::vec![Self::le(neg, -&self.rhs)],
            Relation::Eq => alloc::vec![
                Self::lt(self.coeffs.clone(), self.rhs.clone()),
                Self::lt(neg, -&self.rhs),
            ],
        }
    }

    /// Pads the coefficient vector: `before` zeros in front, `after` behind.
    pub fn embed(&self, before: usize, after: usize) -> Self {
        let mut coeffs = Vec::with_capacity(before + self.coeffs.len() + after);
        coeffs.resize(before, Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        coeffs.resize(before + self.coeffs.len() + after, Rational::zero());
        Self::raw(coeffs, self.rel, self.rhs.clone())
    }

    /// The hyperplane `coeffs · x = rhs` in canonical equality scaling.
    pub fn hyperplane(&self) -> Option<AffineConstraint> {
        match Self::eq(self.coeffs.clone(), self.rhs.clone()).normalize() {
            Normalized::Constraint(c) => Some(c),
            _ => None,
        }
    }
}
