use alloc::vec;
use alloc::vec::Vec;

use super::{check_dim, GeomError};
use crate::linalg::{add, identity, mat_mul, mat_vec, Matrix};
use crate::rational::Rational;

/// `x ↦ M x + o` from `Q^n` to `Q^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Matrix,
    pub offset: Vec<Rational>,
    in_dim: usize,
}

impl AffineMap {
    pub fn new(matrix: Matrix, offset: Vec<Rational>, in_dim: usize) -> Result<Self, GeomError> {
        check_dim(matrix.len(), offset.len())?;
        for row in &matrix {
            check_dim(in_dim, row.len())?;
        }
        Ok(AffineMap { matrix, offset, in_dim })
    }

    pub fn linear(matrix: Matrix, in_dim: usize) -> Result<Self, GeomError> {
        let m = matrix.len();
        Self::new(matrix, vec![Rational::zero(); m], in_dim)
    }

    pub fn identity(n: usize) -> Self {
        AffineMap { matrix: identity(n), offset: vec![Rational::zero(); n], in_dim: n }
    }

    pub fn translation(v: &[Rational]) -> Self {
        let n = v.len();
        AffineMap { matrix: identity(n), offset: v.to_vec(), in_dim: n }
    }

    /// `x ↦ −x`.
    pub fn antipodal(n: usize) -> Self {
        let m = identity(n).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
        AffineMap { matrix: m, offset: vec![Rational::zero(); n], in_dim: n }
    }

    /// `x ↦ (x, −1)` from `Q^n` into `Q^{n+1}`.
    pub fn embedding_minus_one(n: usize) -> Self {
        let mut m = identity(n);
        m.push(vec![Rational::zero(); n]);
        let mut o = vec![Rational::zero(); n + 1];
        o[n] = -Rational::one();
        AffineMap { matrix: m, offset: o, in_dim: n }
    }

    /// `(x, y) ↦ x + y` on `Q^n × Q^n`.
    pub fn sum(n: usize) -> Self {
        let m = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| if j == i || j == i + n { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        AffineMap { matrix: m, offset: vec![Rational::zero(); n], in_dim: 2 * n }
    }

    /// Coordinate projection onto `indices` (in that order).
    pub fn projection(n: usize, indices: &[usize]) -> Self {
        let m = indices
            .iter()
            .map(|&i| (0..n).map(|j| if j == i { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        AffineMap { matrix: m, offset: vec![Rational::zero(); indices.len()], in_dim: n }
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        add(&mat_vec(&self.matrix, x), &self.offset)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap, GeomError> {
        check_dim(self.in_dim, inner.out_dim())?;
        let matrix = mat_mul(&self.matrix, &inner.matrix, inner.in_dim);
        let offset = self.apply(&inner.offset);
        Ok(AffineMap { matrix, offset, in_dim: inner.in_dim })
    }
}
