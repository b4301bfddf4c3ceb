//! Floating-point check of the Paley–Wiener growth bound
//! `|ψ(y)| ≤ c (1+|y|)^m e^{σ_A(−Re y)}` for `ψ(y) = ∫_A e^{−⟨x,y⟩} φ(x) dx`,
//! with `φ` an indicator or a bump on a box or a simplex.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

pub use num_complex::Complex64;
use num_traits::Float;

use crate::convex::{recession_cone, vertices, ConvexBody};
use crate::geom::{AffineConstraint, GeomError};
use crate::rational::Rational;

/// Stabilization tolerance of the growth verdict.
pub const TOL: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PwError {
    #[error("support is unbounded")]
    Unbounded,
    #[error("support must be a box or a simplex")]
    Unsupported,
    #[error("need at least 8 quadrature points, got {0}")]
    TooFewPoints(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dim { expected: usize, got: usize },
    #[error("bad grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Indicator,
    /// Product of `exp(−1/(1−u²))` over box axes, or of `exp(−1/λ_j)` over
    /// barycentric coordinates of a simplex.
    Bump,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// Vertices `v_0, …, v_n`.
    Simplex { verts: Vec<Vec<f64>> },
}

#[derive(Debug, Clone)]
pub struct TestFunction {
    kind: Kind,
    body: ConvexBody,
    shape: Shape,
    /// Exact vertices of the support, as floats.
    corners: Vec<Vec<f64>>,
}

fn f64s(v: &[Rational]) -> Vec<f64> {
    v.iter().map(Rational::to_f64).collect()
}

fn is_bounded(body: &ConvexBody) -> bool {
    let rc = recession_cone(body);
    let n = body.dim();
    // The recession cone is {0} iff every coordinate is pinned to zero.
    (0..n).all(|i| {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        [AffineConstraint::gt(e.clone(), Rational::zero()), AffineConstraint::lt(e, Rational::zero())]
            .into_iter()
            .all(|c| rc.with(&[c]).map(|o| o.is_none()).unwrap_or(false))
    })
}

impl TestFunction {
    /// `body` must be a bounded box or simplex.
    pub fn new(kind: Kind, body: ConvexBody) -> Result<Self, PwError> {
        if !is_bounded(&body) {
            return Err(PwError::Unbounded);
        }
        let n = body.dim();
        let vs = vertices(&body);
        let corners: Vec<Vec<f64>> = vs.iter().map(|v| f64s(v)).collect();
        let shape = if vs.len() == n + 1 {
            Shape::Simplex { verts: corners.clone() }
        } else {
            let lo: Vec<Rational> = (0..n).map(|i| vs.iter().map(|v| v[i].clone()).min().expect("nonempty")).collect();
            let hi: Vec<Rational> = (0..n).map(|i| vs.iter().map(|v| v[i].clone()).max().expect("nonempty")).collect();
            let corner_like = vs.iter().all(|v| (0..n).all(|i| v[i] == lo[i] || v[i] == hi[i]));
            if vs.len() != 1 << n || !corner_like {
                return Err(PwError::Unsupported);
            }
            Shape::Box { lo: f64s(&lo), hi: f64s(&hi) }
        };
        Ok(TestFunction { kind, body, shape, corners })
    }

    /// `[−r, r]^n`.
    pub fn centered_box(kind: Kind, r: &Rational, n: usize) -> Result<Self, PwError> {
        let mut cs = Vec::new();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            cs.push(AffineConstraint::le(e.clone(), r.clone()));
            cs.push(AffineConstraint::ge(e, -r));
        }
        Self::new(kind, ConvexBody::from_constraints(n, cs)?)
    }

    /// `{x ≥ 0, Σ x ≤ r}`.
    pub fn corner_simplex(kind: Kind, r: &Rational, n: usize) -> Result<Self, PwError> {
        let mut cs = Vec::new();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            cs.push(AffineConstraint::ge(e, Rational::zero()));
        }
        cs.push(AffineConstraint::le(vec![Rational::one(); n], r.clone()));
        Self::new(kind, ConvexBody::from_constraints(n, cs)?)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn support(&self) -> &ConvexBody {
        &self.body
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    /// `φ(x)`.
    pub fn value(&self, x: &[f64]) -> f64 {
        match (&self.shape, self.kind) {
            (Shape::Box { lo, hi }, kind) => {
                let mut p = 1.0;
                for ((&x, &a), &b) in x.iter().zip(lo).zip(hi) {
                    if x < a || x > b {
                        return 0.0;
                    }
                    if kind == Kind::Bump {
                        let u = (2.0 * x - a - b) / (b - a);
                        if u.abs() >= 1.0 {
                            return 0.0;
                        }
                        p *= Float::exp(-1.0 / (1.0 - u * u));
                    }
                }
                p
            }
            (Shape::Simplex { verts }, kind) => {
                let Some(lam) = barycentric(verts, x) else { return 0.0 };
                if lam.iter().any(|&l| l < 0.0) {
                    return 0.0;
                }
                match kind {
                    Kind::Indicator => 1.0,
                    Kind::Bump if lam.iter().any(|&l| l <= 0.0) => 0.0,
                    Kind::Bump => lam.iter().map(|&l| Float::exp(-1.0 / l)).product(),
                }
            }
        }
    }

    /// `σ_A(−Re y)`, the maximum of `−⟨v, Re y⟩` over the vertices of `A`.
    pub fn sigma_neg_re(&self, y: &[Complex64]) -> f64 {
        sigma_neg_re(&self.corners, y)
    }
}

fn sigma_neg_re(corners: &[Vec<f64>], y: &[Complex64]) -> f64 {
    corners
        .iter()
        .map(|v| -v.iter().zip(y).map(|(a, b)| a * b.re).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Solves `x = v_0 + Σ λ_j (v_j − v_0)` by Gaussian elimination.
fn barycentric(verts: &[Vec<f64>], x: &[f64]) -> Option<Vec<f64>> {
    let n = x.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (1..=n).map(|j| verts[j][i] - verts[0][i]).collect();
            row.push(x[i] - verts[0][i]);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
        if m[p][c] == 0.0 {
            return None;
        }
        m.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let tail: Vec<f64> = (0..n).map(|i| m[i][n] / m[i][i]).collect();
    let mut lam = vec![1.0 - tail.iter().sum::<f64>()];
    lam.extend(tail);
    Some(lam)
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; q];
    let mut ws = vec![0.0; q];
    for i in 0..(q + 1) / 2 {
        let mut z = Float::cos(PI * (i as f64 + 0.75) / (q as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_q(z) and P_q'(z) by the three-term recurrence.
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=q {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if q == 0 { 1.0 } else if q == 1 { z } else { p1 };
            let pm = if q == 1 { 1.0 } else { p0 };
            dp = q as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        xs[i] = -z;
        xs[q - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        ws[i] = w;
        ws[q - 1 - i] = w;
    }
    (xs, ws)
}

/// A tensor quadrature rule for `∫_A · φ`, with `φ` folded into the weights.
#[derive(Debug, Clone)]
pub struct Quadrature {
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl Quadrature {
    pub fn new(phi: &TestFunction, q: usize) -> Result<Self, PwError> {
        if q < 8 {
            return Err(PwError::TooFewPoints(q));
        }
        let n = phi.dim();
        let (gx, gw) = gauss_legendre(q);
        // Points of [0,1]^n with tensor weights.
        let mut unit: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
        for _ in 0..n {
            let mut next = Vec::with_capacity(unit.len() * q);
            for (p, w) in &unit {
                for (x, v) in gx.iter().zip(&gw) {
                    let mut p = p.clone();
                    p.push((x + 1.0) / 2.0);
                    next.push((p, w * v / 2.0));
                }
            }
            unit = next;
        }
        let mut nodes = Vec::with_capacity(unit.len());
        let mut weights = Vec::with_capacity(unit.len());
        for (u, w) in unit {
            let (x, jac) = match &phi.shape {
                Shape::Box { lo, hi } => {
                    let x: Vec<f64> = (0..n).map(|i| lo[i] + u[i] * (hi[i] - lo[i])).collect();
                    (x, (0..n).map(|i| hi[i] - lo[i]).product::<f64>())
                }
                Shape::Simplex { verts } => {
                    // Collapsed coordinates: λ_k = u_k ∏_{j<k} (1 − u_j).
                    let mut lam = Vec::with_capacity(n);
                    let mut rest = 1.0;
                    let mut jac = 1.0;
                    for (k, &uk) in u.iter().enumerate() {
                        lam.push(uk * rest);
                        if k + 1 < n {
                            jac *= Float::powi(1.0 - uk, (n - 1 - k) as i32);
                        }
                        rest *= 1.0 - uk;
                    }
                    let x: Vec<f64> =
                        (0..n).map(|i| verts[0][i] + (0..n).map(|j| lam[j] * (verts[j + 1][i] - verts[0][i])).sum::<f64>()).collect();
                    (x, jac * det_abs(verts))
                }
            };
            let v = phi.value(&x);
            if v != 0.0 {
                weights.push(w * jac * v);
                nodes.push(x);
            }
        }
        Ok(Quadrature { nodes, weights })
    }

    /// `∫_A e^{−⟨x,y⟩} φ(x) dx`.
    pub fn laplace(&self, y: &[Complex64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let e: Complex64 = x.iter().zip(y).map(|(a, b)| b * *a).sum();
            s += (-e).exp() * *w;
        }
        s
    }
}

/// `|det(v_1 − v_0, …, v_n − v_0)|`.
fn det_abs(verts: &[Vec<f64>]) -> f64 {
    let n = verts.len() - 1;
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| (1..=n).map(|j| verts[j][i] - verts[0][i]).collect()).collect();
    let mut d = 1.0;
    for c in 0..n {
        let Some(p) = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else { return 0.0 };
        if m[p][c] == 0.0 {
            return 0.0;
        }
        m.swap(c, p);
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d.abs()
}

pub fn laplace_numeric(phi: &TestFunction, y: &[Complex64], quad_points: usize) -> Result<Complex64, PwError> {
    if y.len() != phi.dim() {
        return Err(PwError::Dim { expected: phi.dim(), got: y.len() });
    }
    Ok(Quadrature::new(phi, quad_points)?.laplace(y))
}

/// Frequencies `y = σ + iτ` with each `σ_i, τ_i` on `count` equally spaced
/// points of `[−ymax, ymax]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub ymax: f64,
    pub count: usize,
}

impl GridSpec {
    fn axis(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![0.0];
        }
        (0..self.count).map(|i| -self.ymax + 2.0 * self.ymax * i as f64 / (self.count - 1) as f64).collect()
    }

    /// All grid points of `C^n`, in lexicographic order of `(σ_1, τ_1, σ_2, …)`.
    pub fn points(&self, n: usize) -> Vec<Vec<Complex64>> {
        let axis = self.axis();
        let mut out: Vec<Vec<f64>> = vec![Vec::new()];
        for _ in 0..2 * n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&a| {
                        let mut p = p.clone();
                        p.push(a);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(|p| p.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()).collect()
    }

    /// Whether `y` lies in the inner half-grid `max |σ_i|, |τ_i| ≤ ymax/2`.
    pub fn is_inner(&self, y: &[Complex64]) -> bool {
        let h = self.ymax / 2.0 * (1.0 + 1e-12);
        y.iter().all(|z| z.re.abs() <= h && z.im.abs() <= h)
    }

    fn validate(&self) -> Result<(), PwError> {
        if !(self.ymax.is_finite() && self.ymax > 0.0) || self.count < 3 {
            return Err(PwError::Grid(alloc::format!("need ymax > 0 and count ≥ 3, got {} and {}", self.ymax, self.count)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    Unbounded,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Bounded => "BOUNDED",
            Verdict::Unbounded => "UNBOUNDED",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCertificate {
    pub order: i32,
    /// Maximum of `|ψ(y)| (1+|y|)^{−m} e^{−σ_A(−Re y)}` over the grid.
    pub constant: f64,
    /// The same maximum over the inner half-grid.
    pub inner: f64,
    pub verdict: Verdict,
}

/// Per order `m`, the growth constant over the grid and the verdict
/// BOUNDED iff `constant ≤ (1 + TOL) · inner`.
pub fn growth_certificate(
    phi: &TestFunction,
    grid: &GridSpec,
    orders: &[i32],
    quad_points: usize,
) -> Result<Vec<GrowthCertificate>, PwError> {
    growth_certificate_against(phi, &phi.body, grid, orders, quad_points)
}

/// Like [`growth_certificate`], with the exponential weight taken from
/// `sigma_body` instead of the support of `phi`.
pub fn growth_certificate_against(
    phi: &TestFunction,
    sigma_body: &ConvexBody,
    grid: &GridSpec,
    orders: &[i32],
    quad_points: usize,
) -> Result<Vec<GrowthCertificate>, PwError> {
    grid.validate()?;
    if sigma_body.dim() != phi.dim() {
        return Err(PwError::Dim { expected: phi.dim(), got: sigma_body.dim() });
    }
    if !is_bounded(sigma_body) {
        return Err(PwError::Unbounded);
    }
    let corners: Vec<Vec<f64>> = vertices(sigma_body).iter().map(|v| f64s(v)).collect();
    let quad = Quadrature::new(phi, quad_points)?;
    // (inner?, ln|ψ| − σ, ln(1+|y|)) per grid point.
    let samples: Vec<(bool, f64, f64)> = grid
        .points(phi.dim())
        .iter()
        .map(|y| {
            let psi = quad.laplace(y);
            let norm = Float::sqrt(y.iter().map(|z| z.norm_sqr()).sum::<f64>());
            (grid.is_inner(y), Float::ln(psi.norm()) - sigma_neg_re(&corners, y), Float::ln_1p(norm))
        })
        .collect();
    Ok(orders
        .iter()
        .map(|&m| {
            let (mut all, mut inner) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
            for &(is_inner, base, lw) in &samples {
                let v = base - m as f64 * lw;
                all = all.max(v);
                if is_inner {
                    inner = inner.max(v);
                }
            }
            let (constant, inner) = (Float::exp(all), Float::exp(inner));
            let verdict = if constant <= (1.0 + TOL) * inner { Verdict::Bounded } else { Verdict::Unbounded };
            GrowthCertificate { order: m, constant, inner, verdict }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        for q in [8, 13, 64] {
            let (x, w) = gauss_legendre(q);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            let x4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
            assert!((x4 - 0.4).abs() < 1e-13, "{q}: {x4}");
        }
    }

    #[test]
    fn indicator_examples() {
        let phi = TestFunction::centered_box(Kind::Indicator, &qi(1), 1).unwrap();
        let v = laplace_numeric(&phi, &[c(1.0, 0.0)], 64).unwrap();
        let want = 2.0 * 1f64.sinh();
        assert!(((v.re - want) / want).abs() < 1e-10 && v.im.abs() < 1e-12);
        let v = laplace_numeric(&phi, &[c(0.0, 0.0)], 64).unwrap();
        assert!((v.re - 2.0).abs() < 1e-13);
        let v = laplace_numeric(&phi, &[c(0.0, PI)], 64).unwrap();
        assert!(v.norm() < 1e-10);
    }

    #[test]
    fn simplex_volume_and_bump_support() {
        let s = TestFunction::corner_simplex(Kind::Indicator, &q(3, 2), 2).unwrap();
        let v = laplace_numeric(&s, &[c(0.0, 0.0), c(0.0, 0.0)], 16).unwrap();
        assert!((v.re - 9.0 / 8.0).abs() < 1e-12);
        let b = TestFunction::corner_simplex(Kind::Bump, &qi(1), 2).unwrap();
        assert_eq!(b.value(&[0.0, 0.5]), 0.0);
        assert!(b.value(&[0.3, 0.3]) > 0.0);
    }

    #[test]
    fn unbounded_or_odd_supports_are_rejected() {
        let half = ConvexBody::from_constraints(1, vec![AffineConstraint::ge(vec![qi(1)], qi(0))]).unwrap();
        assert_eq!(TestFunction::new(Kind::Indicator, half).unwrap_err(), PwError::Unbounded);
        let kite = ConvexBody::from_constraints(
            2,
            vec![
                AffineConstraint::le(vec![qi(1), qi(1)], qi(1)),
                AffineConstraint::le(vec![qi(-1), qi(1)], qi(1)),
                AffineConstraint::le(vec![qi(1), qi(-1)], qi(1)),
                AffineConstraint::le(vec![qi(-1), qi(-1)], qi(1)),
            ],
        )
        .unwrap();
        assert_eq!(TestFunction::new(Kind::Indicator, kite).unwrap_err(), PwError::Unsupported);
        let phi = TestFunction::centered_box(Kind::Indicator, &qi(1), 1).unwrap();
        assert_eq!(laplace_numeric(&phi, &[c(0.0, 0.0)], 4).unwrap_err(), PwError::TooFewPoints(4));
    }

    #[test]
    fn grid_layout() {
        let g = GridSpec { ymax: 2.0, count: 5 };
        let pts = g.points(1);
        assert_eq!(pts.len(), 25);
        assert_eq!(pts[0], vec![c(-2.0, -2.0)]);
        assert_eq!(pts.iter().filter(|y| g.is_inner(y)).count(), 9);
    }
}
