//! Stalk evaluators for kernel transforms.
//!
//! Nothing here builds a pushed-forward object. Each stalk is the compactly
//! supported cohomology of one semilinear fiber, summed over pairs of terms
//! with their shifts and ranks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::{hc, GradedDims, HcError};
use crate::geom::{check_dim, AffineConstraint, AffineMap, GeomError, PLSet};
use crate::linalg::{identity, mat_vec, Matrix};
use crate::rational::Rational;
use crate::sample::SampleSet;
use crate::sheaf::{ConstructibleObject, Kernel};
use crate::verify::{Report, Status};
use crate::Point;

/// `⟨x, y⟩ = xᵀ B y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    matrix: Matrix,
}

impl Pairing {
    pub fn identity(n: usize) -> Self {
        Pairing { matrix: identity(n) }
    }

    /// Square matrices only.
    pub fn new(matrix: Matrix) -> Result<Self, GeomError> {
        let n = matrix.len();
        for row in &matrix {
            check_dim(n, row.len())?;
        }
        Ok(Pairing { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        crate::linalg::dot(x, &mat_vec(&self.matrix, y))
    }

    /// `B y`, the covector `x ↦ ⟨x, y⟩`.
    pub fn covector(&self, y: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, y)
    }

    /// `k_{⟨x,y⟩ ≤ 0}` as a family over `y`.
    pub fn fourier_sato_kernel(&self) -> Kernel {
        Kernel::pairing_halfspace(&self.matrix, self.dim(), false, false)
    }

    /// `k_{⟨x,y⟩ ≤ t}` as a family over `(y, t)`.
    pub fn nh_kernel(&self) -> Kernel {
        Kernel::pairing_halfspace(&self.matrix, self.dim(), false, true)
    }

    /// `k_{⟨x,y⟩ ≤ t}` with `(x, t)` free and `y` as parameter, the layout
    /// [`tcomp_stalk`] expects of its second argument.
    pub fn tamarkin_kernel(&self) -> Kernel {
        Kernel::pairing_halfspace(&self.matrix, self.dim(), true, false)
    }
}

fn pair_sum(left: &ConstructibleObject, right: &ConstructibleObject) -> Result<GradedDims, HcError> {
    let mut out = GradedDims::new();
    for a in left.terms() {
        for b in right.terms() {
            let fiber = a.set.intersect(&b.set)?;
            if fiber.is_empty() {
                continue;
            }
            let h = hc(&fiber)?;
            out = out.plus(&h.scaled(a.rank * b.rank).shifted(-(a.shift + b.shift)));
        }
    }
    Ok(out)
}

/// `(f ∘ k)_w = RΓ_c(V; f ⊗ k|_{V×{w}})`.
pub fn stalk_compose(f: &ConstructibleObject, k: &Kernel, w: &[Rational]) -> Result<GradedDims, HcError> {
    check_dim(k.n1, f.dim())?;
    pair_sum(f, &k.fiber(w)?)
}

/// Stalk of `f^∧` at `y`: fiber `{x : ⟨x,y⟩ ≤ 0}`.
pub fn fourier_sato_stalk(f: &ConstructibleObject, y: &[Rational], pairing: &Pairing) -> Result<GradedDims, HcError> {
    check_dim(pairing.dim(), f.dim())?;
    check_dim(pairing.dim(), y.len())?;
    let half = PLSet::from_constraints(f.dim(), vec![AffineConstraint::le(pairing.covector(y), Rational::zero())])?;
    pair_sum(f, &ConstructibleObject::constant(half))
}

/// Stalk of `(Ri_! f)^∧` at `(y, t)`: fiber `{x : ⟨x,y⟩ ≤ t}`.
pub fn nh_fourier_stalk(f: &ConstructibleObject, yt: &[Rational], pairing: &Pairing) -> Result<GradedDims, HcError> {
    let n = pairing.dim();
    check_dim(n, f.dim())?;
    check_dim(n + 1, yt.len())?;
    let half = PLSet::from_constraints(n, vec![AffineConstraint::le(pairing.covector(&yt[..n]), yt[n].clone())])?;
    pair_sum(f, &ConstructibleObject::constant(half))
}

/// Stalk of the conification `f^cone` at `x`: the ray fiber
/// `{s > 0 : s·x ∈ P}` per term, one degree lower.
pub fn conification_stalk(f: &ConstructibleObject, x: &[Rational]) -> Result<GradedDims, HcError> {
    let n = f.dim();
    check_dim(n, x.len())?;
    let ray = AffineMap::linear(x.iter().map(|c| vec![c.clone()]).collect(), 1)?;
    let positive = [AffineConstraint::gt(vec![Rational::one()], Rational::zero())];
    let mut out = GradedDims::new();
    for t in f.terms() {
        let fiber = t.set.preimage(&ray)?.restrict(&positive)?;
        if fiber.is_empty() {
            continue;
        }
        out = out.plus(&hc(&fiber)?.scaled(t.rank).shifted(-t.shift - 1));
    }
    Ok(out)
}

/// Stalk of `f ⋆ g` at `x`: fiber `P ∩ (x − Q)`.
pub fn convolution_stalk(f: &ConstructibleObject, g: &ConstructibleObject, x: &[Rational]) -> Result<GradedDims, HcError> {
    let n = f.dim();
    check_dim(n, g.dim())?;
    check_dim(n, x.len())?;
    let reflect = AffineMap::new(crate::geom::AffineMap::antipodal(n).matrix, x.to_vec(), n)?;
    pair_sum(f, &g.pullback_affine(&reflect)?)
}

/// Stalk of `g ⊗̃ g'` at `(x, t)`: fiber `{t₁ : (x,t₁) ∈ P, (x,t−t₁) ∈ Q}`.
pub fn ttens_stalk(g: &ConstructibleObject, g2: &ConstructibleObject, xt: &[Rational]) -> Result<GradedDims, HcError> {
    let m = g.dim();
    check_dim(m, g2.dim())?;
    check_dim(m, xt.len())?;
    let n = m - 1;
    let column = |sign: i64| {
        let mut mat: Matrix = vec![vec![Rational::zero()]; m];
        mat[n][0] = Rational::from_integer(sign);
        mat
    };
    let mut off1 = xt.to_vec();
    off1[n] = Rational::zero();
    let first = AffineMap::new(column(1), off1, 1)?;
    let second = AffineMap::new(column(-1), xt.to_vec(), 1)?;
    pair_sum(&g.pullback_affine(&first)?, &g2.pullback_affine(&second)?)
}

/// Stalk of `L₁₂ ∘̃ L₂₃` at `(x₁, x₃, t)`: fiber
/// `{(x₂, t₁) : (x₁,x₂,t₁) ∈ L₁₂, (x₂,x₃,t−t₁) ∈ L₂₃}`.
///
/// Both kernels are families over their outer factor with free block
/// `(x₂, t)`: `l12` over `x₁`, `l23` over `x₃`. `point` is `(x₁, x₃, t)`.
pub fn tcomp_stalk(l12: &Kernel, l23: &Kernel, point: &[Rational]) -> Result<GradedDims, HcError> {
    check_dim(l12.n1, l23.n1)?;
    check_dim(l12.n2 + l23.n2 + 1, point.len())?;
    let m = l12.n1;
    let (x1, rest) = point.split_at(l12.n2);
    let (x3, t) = rest.split_at(l23.n2);
    let a = l12.fiber(x1)?;
    let b = l23.fiber(x3)?;
    // (x₂, t₁) ↦ (x₂, t − t₁).
    let mut mat = identity(m);
    mat[m - 1][m - 1] = -Rational::one();
    let mut off = vec![Rational::zero(); m];
    off[m - 1] = t[0].clone();
    let flip = AffineMap::new(mat, off, m)?;
    pair_sum(&a, &b.pullback_affine(&flip)?)
}

/// `k_{{t ≥ 0}}` on `Q^{n+1}` (last coordinate `t`), optionally with `x = 0`.
pub fn t_nonnegative(n: usize, at_origin: bool) -> ConstructibleObject {
    let mut cs = Vec::new();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    cs.push(AffineConstraint::ge(c, Rational::zero()));
    if at_origin {
        for i in 0..n {
            let mut c = vec![Rational::zero(); n + 1];
            c[i] = Rational::one();
            cs.push(AffineConstraint::eq(c, Rational::zero()));
        }
    }
    ConstructibleObject::constant(PLSet::from_constraints(n + 1, cs).expect("dimensions agree"))
}

/// `F̃ = F ⊠ k_{{t ≥ 0}}`.
pub fn tilde(f: &ConstructibleObject) -> ConstructibleObject {
    f.external(&t_nonnegative(0, false))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub point: Point,
    pub expected: GradedDims,
    pub actual: GradedDims,
}

/// Whether `g ⊗̃ k_{{t≥0}}` and `g` agree at every sample; the first
/// disagreement is returned.
pub fn tamarkin_check(g: &ConstructibleObject, samples: &[Point]) -> Result<Option<Counterexample>, HcError> {
    let unit = t_nonnegative(g.dim().saturating_sub(1), false);
    for p in samples {
        let expected = g.stalk(p);
        let actual = ttens_stalk(g, &unit, p)?;
        if expected != actual {
            return Ok(Some(Counterexample { point: p.clone(), expected, actual }));
        }
    }
    Ok(None)
}

/// Compares `evaluator` against `predicted` at every sample, in order.
pub fn match_predicted<E, P>(
    scenario: &str,
    seed: u64,
    mut evaluator: E,
    mut predicted: P,
    samples: &SampleSet,
) -> Report
where
    E: FnMut(&[Rational]) -> Result<GradedDims, HcError>,
    P: FnMut(&[Rational]) -> Result<GradedDims, HcError>,
{
    let mut report = Report::new(scenario, seed);
    for (i, p) in samples.points().iter().enumerate() {
        let outcome = evaluator(p).and_then(|a| predicted(p).map(|e| (e, a)));
        match outcome {
            Err(e) => {
                report.status = Status::Error;
                report.samples = i;
                report.error = Some(error_context(p, &e));
                return report;
            }
            Ok((expected, actual)) if expected != actual => {
                report.status = Status::Fail;
                report.samples = i + 1;
                report.counterexample = Some(Counterexample { point: p.clone(), expected, actual });
                return report;
            }
            Ok(_) => {}
        }
    }
    report.status = Status::Pass;
    report.samples = samples.len();
    report
}

fn error_context(p: &[Rational], e: &HcError) -> String {
    let parts: Vec<String> = p.iter().map(|x| alloc::format!("{x}")).collect();
    alloc::format!("at ({}): {e}", parts.join(", "))
}
