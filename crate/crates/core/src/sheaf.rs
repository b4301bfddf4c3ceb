//! Finite sums of shifted constant sheaves on semilinear sets, and kernels.
//!
//! A term `(P, d, r)` stands for `k_P[d]^r`; its stalk at a point of `P` is
//! `r` in cohomological degree `−d`.

use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::GradedDims;
use crate::geom::{check_dim, AffineConstraint, AffineMap, GeomError, PLSet, Relation};
use crate::linalg::{dot, mat_vec, Matrix};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedTerm {
    pub set: PLSet,
    pub shift: i64,
    pub rank: usize,
}

impl ShiftedTerm {
    pub fn new(set: PLSet, shift: i64, rank: usize) -> Self {
        ShiftedTerm { set, shift, rank }
    }

    /// Cohomological degree of the stalk on `set`.
    pub fn degree(&self) -> i64 {
        -self.shift
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleObject {
    dim: usize,
    terms: Vec<ShiftedTerm>,
}

impl ConstructibleObject {
    /// Empty sets and zero ranks are dropped.
    pub fn new(dim: usize, terms: Vec<ShiftedTerm>) -> Result<Self, GeomError> {
        for t in &terms {
            check_dim(dim, t.set.dim())?;
        }
        let terms = terms.into_iter().filter(|t| t.rank > 0 && !t.set.is_empty()).collect();
        Ok(ConstructibleObject { dim, terms })
    }

    pub fn zero(dim: usize) -> Self {
        ConstructibleObject { dim, terms: Vec::new() }
    }

    /// `k_set`.
    pub fn constant(set: PLSet) -> Self {
        Self::shifted_constant(set, 0)
    }

    /// `k_set[shift]`.
    pub fn shifted_constant(set: PLSet, shift: i64) -> Self {
        let dim = set.dim();
        Self::new(dim, vec![ShiftedTerm::new(set, shift, 1)]).expect("one term")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[ShiftedTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn stalk(&self, p: &[Rational]) -> GradedDims {
        let mut out = GradedDims::new();
        for t in &self.terms {
            if t.set.member(p) {
                out.add(t.degree(), t.rank);
            }
        }
        out
    }

    /// `k_P[a] ⊗ k_Q[b] = k_{P∩Q}[a+b]`, termwise.
    pub fn tensor(&self, other: &Self) -> Result<Self, GeomError> {
        check_dim(self.dim, other.dim)?;
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ShiftedTerm::new(a.set.intersect(&b.set)?, a.shift + b.shift, a.rank * b.rank));
            }
        }
        Self::new(self.dim, terms)
    }

    pub fn shift(&self, d: i64) -> Self {
        let terms =
            self.terms.iter().map(|t| ShiftedTerm::new(t.set.clone(), t.shift + d, t.rank)).collect();
        ConstructibleObject { dim: self.dim, terms }
    }

    pub fn dsum(&self, other: &Self) -> Result<Self, GeomError> {
        check_dim(self.dim, other.dim)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(ConstructibleObject { dim: self.dim, terms })
    }

    /// External product on `Q^{n+m}`.
    pub fn external(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ShiftedTerm::new(a.set.product(&b.set), a.shift + b.shift, a.rank * b.rank));
            }
        }
        ConstructibleObject { dim: self.dim + other.dim, terms }
    }

    /// `f⁻¹` of the object along an affine map into its ambient space.
    pub fn pullback_affine(&self, f: &AffineMap) -> Result<Self, GeomError> {
        check_dim(self.dim, f.out_dim())?;
        let mut terms = Vec::new();
        for t in &self.terms {
            terms.push(ShiftedTerm::new(t.set.preimage(f)?, t.shift, t.rank));
        }
        Self::new(f.in_dim(), terms)
    }

    /// Restriction to (intersection with) one conjunction.
    pub fn restrict(&self, extra: &[AffineConstraint]) -> Result<Self, GeomError> {
        let mut terms = Vec::new();
        for t in &self.terms {
            terms.push(ShiftedTerm::new(t.set.restrict(extra)?, t.shift, t.rank));
        }
        Self::new(self.dim, terms)
    }

    /// Every constraint hyperplane of every term.
    pub fn hyperplanes(&self) -> Vec<AffineConstraint> {
        let mut out: Vec<AffineConstraint> = Vec::new();
        for t in &self.terms {
            for h in t.set.hyperplanes() {
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out.sort();
        out
    }

    /// Stable under `x ↦ λx` for rational `λ > 0`: every constraint is
    /// homogeneous.
    pub fn is_conic(&self) -> bool {
        self.terms.iter().all(|t| {
            t.set.cells().iter().all(|c| c.constraints().iter().all(|k| k.rhs.is_zero()))
        })
    }
}

/// A constraint on the free block `x ∈ Q^{n1}` whose coefficients and
/// right-hand side move affinely with the parameter block `w ∈ Q^{n2}`:
/// `(coeffs + coupling·w)·x  rel  rhs + rhs_coupling·w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamConstraint {
    pub coeffs: Vec<Rational>,
    /// `n1 × n2`.
    pub coupling: Matrix,
    pub rel: Relation,
    pub rhs: Rational,
    pub rhs_coupling: Vec<Rational>,
}

impl ParamConstraint {
    fn at(&self, w: &[Rational]) -> AffineConstraint {
        let shift = mat_vec(&self.coupling, w);
        let coeffs = self.coeffs.iter().zip(&shift).map(|(a, b)| a + b).collect();
        AffineConstraint::raw(coeffs, self.rel, &self.rhs + &dot(&self.rhs_coupling, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTerm {
    /// Union of conjunctions.
    pub cells: Vec<Vec<ParamConstraint>>,
    pub shift: i64,
    pub rank: usize,
}

/// A sheaf on `Q^{n1} × Q^{n2}` read as a family over the second factor.
/// Semilinear objects embed directly; the pairing kernels `{⟨x,y⟩ ≤ t}` are
/// bilinear across the factors and only become semilinear fiberwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub n1: usize,
    pub n2: usize,
    pub terms: Vec<KernelTerm>,
}

impl Kernel {
    /// An object on `Q^{n1+n2}` with the first factor first.
    pub fn from_object(object: &ConstructibleObject, n1: usize, n2: usize) -> Result<Self, GeomError> {
        let free: Vec<usize> = (0..n1).collect();
        let param: Vec<usize> = (n1..n1 + n2).collect();
        Self::from_object_split(object, &free, &param)
    }

    /// An object on some `Q^m` with the free and parameter coordinates given
    /// by index lists (together a permutation of `0..m`).
    pub fn from_object_split(
        object: &ConstructibleObject,
        free: &[usize],
        param: &[usize],
    ) -> Result<Self, GeomError> {
        check_dim(object.dim(), free.len() + param.len())?;
        let (n1, n2) = (free.len(), param.len());
        let convert = |c: &AffineConstraint| ParamConstraint {
            coeffs: free.iter().map(|&i| c.coeffs[i].clone()).collect(),
            coupling: vec![vec![Rational::zero(); n2]; n1],
            rel: c.rel,
            rhs: c.rhs.clone(),
            rhs_coupling: param.iter().map(|&i| -&c.coeffs[i]).collect(),
        };
        let terms = object
            .terms()
            .iter()
            .map(|t| KernelTerm {
                cells: t.set.cells().iter().map(|cell| cell.constraints().iter().map(convert).collect()).collect(),
                shift: t.shift,
                rank: t.rank,
            })
            .collect();
        Ok(Kernel { n1, n2, terms })
    }

    /// `k_{{(x, w) : xᵀ B y ≤ t}}`, free block `x ∈ Q^n` optionally followed by
    /// a free `t`; parameter block `y ∈ Q^m` optionally followed by a
    /// parameter `t`. With neither, the right-hand side is 0.
    pub fn pairing_halfspace(b: &Matrix, m: usize, free_t: bool, param_t: bool) -> Self {
        let n = b.len();
        let n1 = n + free_t as usize;
        let n2 = m + param_t as usize;
        let mut coupling = vec![vec![Rational::zero(); n2]; n1];
        for i in 0..n {
            for j in 0..m {
                coupling[i][j] = b[i][j].clone();
            }
        }
        let mut coeffs = vec![Rational::zero(); n1];
        if free_t {
            coeffs[n] = -Rational::one();
        }
        let mut rhs_coupling = vec![Rational::zero(); n2];
        if param_t {
            rhs_coupling[m] = Rational::one();
        }
        let c = ParamConstraint { coeffs, coupling, rel: Relation::Le, rhs: Rational::zero(), rhs_coupling };
        Kernel { n1, n2, terms: vec![KernelTerm { cells: vec![vec![c]], shift: 0, rank: 1 }] }
    }

    /// The object on the first factor obtained by fixing the second at `w`.
    pub fn fiber(&self, w: &[Rational]) -> Result<ConstructibleObject, GeomError> {
        check_dim(self.n2, w.len())?;
        let mut terms = Vec::new();
        for t in &self.terms {
            let cells = t.cells.iter().map(|cs| cs.iter().map(|c| c.at(w)).collect()).collect();
            terms.push(ShiftedTerm::new(PLSet::from_conjunctions(self.n1, cells)?, t.shift, t.rank));
        }
        ConstructibleObject::new(self.n1, terms)
    }
}
