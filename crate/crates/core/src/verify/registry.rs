use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::quadric;
use super::{Evaluator, Report, Scenario};
use crate::cohomology::GradedDims;
use crate::convex::{
    cone_over_embedding, gamma_hk_predicate, gamma_hk_sides, interior, polar_cone, recession_cone, vertices,
    ConvexBody,
};
use crate::geom::{AffineConstraint, Cell, GeomError, PLSet};
use crate::linalg::vec_mat;
use crate::rational::{q, qi, Rational};
use crate::sample::{random_points, sample_set, stream, SampleSet};
use crate::sheaf::{ConstructibleObject, Kernel};
use crate::transforms::{
    conification_stalk, convolution_stalk, fourier_sato_stalk, match_predicted, nh_fourier_stalk, stalk_compose,
    t_nonnegative, tcomp_stalk, tilde, ttens_stalk, Pairing,
};
use crate::Point;

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| qi(x)).collect()
}

fn le(c: &[i64], b: i64) -> AffineConstraint {
    AffineConstraint::le(v(c), qi(b))
}

fn ge(c: &[i64], b: i64) -> AffineConstraint {
    AffineConstraint::ge(v(c), qi(b))
}

fn lt(c: &[i64], b: i64) -> AffineConstraint {
    AffineConstraint::lt(v(c), qi(b))
}

fn gt(c: &[i64], b: i64) -> AffineConstraint {
    AffineConstraint::gt(v(c), qi(b))
}

fn eq(c: &[i64], b: i64) -> AffineConstraint {
    AffineConstraint::eq(v(c), qi(b))
}

fn cell(n: usize, cs: Vec<AffineConstraint>) -> Cell {
    Cell::new(n, cs).expect("dimensions agree").expect("nonempty")
}

fn set(n: usize, cells: Vec<Vec<AffineConstraint>>) -> PLSet {
    PLSet::from_conjunctions(n, cells).expect("dimensions agree")
}

fn constant(s: PLSet) -> ConstructibleObject {
    ConstructibleObject::constant(s)
}

fn indicator(b: bool, degree: i64) -> GradedDims {
    if b {
        GradedDims::single(degree)
    } else {
        GradedDims::new()
    }
}

fn failed(seed: u64, e: impl core::fmt::Display) -> Report {
    Report::error("", seed, format!("{e}"))
}

/// Coordinate hyperplanes of `Q^n`.
fn axes(n: usize) -> Vec<AffineConstraint> {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            eq(&e, 0)
        })
        .collect()
}

fn merged(mut a: Vec<AffineConstraint>, b: Vec<AffineConstraint>) -> Vec<AffineConstraint> {
    for h in b {
        if let Some(h) = h.hyperplane() {
            if !a.contains(&h) {
                a.push(h);
            }
        }
    }
    a.sort();
    a
}

/// Directions `y` in the plane parallel to some constraint normal of `f`:
/// where the line `⟨x,y⟩ = c` turns parallel to an edge.
fn dual_hyperplanes(f: &ConstructibleObject) -> Vec<AffineConstraint> {
    if f.dim() != 2 {
        return axes(f.dim());
    }
    let mut out = axes(2);
    for h in f.hyperplanes() {
        let d = AffineConstraint::eq(vec![h.coeffs[1].clone(), -&h.coeffs[0]], Rational::zero());
        if let Some(d) = d.hyperplane() {
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}

/// Hyperplanes `h × Q` in `Q^{n+1}` for hyperplanes `h` of `Q^n`.
fn lift(hs: &[AffineConstraint]) -> Vec<AffineConstraint> {
    hs.iter().map(|h| h.embed(0, 1)).collect()
}

// ---------------------------------------------------------------------------
// Predictions, built from the convex-geometry layer.

/// `k_{Int γ°}`.
pub(crate) fn fex_closed_prediction(gamma: &Cell, pairing: &Pairing) -> Result<ConstructibleObject, GeomError> {
    let n = gamma.dim();
    let polar = polar_cone(gamma, pairing.matrix())?;
    Ok(match interior(&polar)? {
        Some(int) => constant(PLSet::from_cell(int)),
        None => ConstructibleObject::zero(n),
    })
}

/// `k_{γ°a}[−n]`.
pub(crate) fn fex_open_prediction(gamma: &Cell, pairing: &Pairing) -> Result<ConstructibleObject, GeomError> {
    let n = gamma.dim();
    let polar = polar_cone(gamma, pairing.matrix())?;
    Ok(ConstructibleObject::shifted_constant(PLSet::from_cell(polar).negate(), -(n as i64)))
}

/// `t ≥ ⟨v, y⟩` on `Q^{n+1}` as `vᵀB·y − t ≤ 0`.
fn above_plane(v: &[Rational], pairing: &Pairing) -> AffineConstraint {
    let mut c = vec_mat(v, pairing.matrix(), pairing.dim());
    c.push(-Rational::one());
    AffineConstraint::le(c, Rational::zero())
}

/// `q₁⁻¹k_{Int λ°} ⊗ k_{t ≥ −σ_A(−y)}` for closed line-free `A`, with
/// `−σ_A(−y) = min_v ⟨v, y⟩` over the vertices of `A`.
pub(crate) fn conefou_closed_prediction(a: &ConvexBody, pairing: &Pairing) -> Result<ConstructibleObject, GeomError> {
    let n = a.dim();
    let polar = polar_cone(&recession_cone(a), pairing.matrix())?;
    let Some(int) = interior(&polar)? else {
        return Ok(ConstructibleObject::zero(n + 1));
    };
    let base: Vec<AffineConstraint> = int.constraints().iter().map(|c| c.embed(0, 1)).collect();
    let cells = vertices(a)
        .iter()
        .map(|vx| {
            let mut cs = base.clone();
            cs.push(above_plane(vx, pairing));
            cs
        })
        .collect();
    Ok(constant(PLSet::from_conjunctions(n + 1, cells)?))
}

/// `q₁⁻¹k_{Int λ°a} ⊗ k_{t ≥ σ_A(y)}[−n]` for open `A` with line-free
/// closure, with `σ_A(y) = max_v ⟨v, y⟩` over the vertices of `cl A`.
pub(crate) fn conefou_open_prediction(a: &ConvexBody, pairing: &Pairing) -> Result<ConstructibleObject, GeomError> {
    let n = a.dim();
    let closed = ConvexBody::new(a.cell().closure());
    let polar = polar_cone(&recession_cone(&closed), pairing.matrix())?;
    let Some(int) = interior(&polar)? else {
        return Ok(ConstructibleObject::zero(n + 1));
    };
    let int_a = PLSet::from_cell(int).negate();
    let caps: Vec<AffineConstraint> = vertices(&closed).iter().map(|vx| above_plane(vx, pairing)).collect();
    let s = int_a.product(&PLSet::universe(1)).restrict(&caps)?;
    Ok(ConstructibleObject::shifted_constant(s, -(n as i64)))
}

// ---------------------------------------------------------------------------
// Corpus of objects used by the identity checks.

fn sum_object() -> ConstructibleObject {
    let a = constant(set(1, vec![vec![ge(&[1], 0), le(&[1], 1)]]));
    let b = ConstructibleObject::shifted_constant(set(1, vec![vec![gt(&[1], 0)]]), 1);
    a.dsum(&b).expect("same ambient")
}

fn square_boundary() -> PLSet {
    let sq = [le(&[1, 0], 1), ge(&[1, 0], 0), le(&[0, 1], 1), ge(&[0, 1], 0)];
    let walls = [eq(&[1, 0], 0), eq(&[1, 0], 1), eq(&[0, 1], 0), eq(&[0, 1], 1)];
    set(
        2,
        walls
            .iter()
            .map(|w| {
                let mut c = sq.to_vec();
                c.push(w.clone());
                c
            })
            .collect(),
    )
}

fn quadratic_cone_2() -> PLSet {
    set(2, vec![vec![le(&[1, -1], 0), le(&[-1, -1], 0)], vec![le(&[1, 1], 0), le(&[-1, 1], 0)]])
}

/// Named objects on `Q¹` and `Q²`; the flag marks conic ones.
pub fn corpus() -> Vec<(&'static str, ConstructibleObject, bool)> {
    let rank2 = ConstructibleObject::new(
        2,
        vec![crate::sheaf::ShiftedTerm::new(
            set(2, vec![vec![ge(&[1, 0], 0), ge(&[0, 1], 0), lt(&[1, 1], 1)]]),
            -1,
            2,
        )],
    )
    .expect("same ambient");
    let punctured = PLSet::universe(2).subtract(&set(2, vec![vec![eq(&[1, 0], 0), eq(&[0, 1], 0)]])).expect("same ambient");
    vec![
        ("interval", constant(set(1, vec![vec![ge(&[1], 0), le(&[1], 1)]])), false),
        ("closed-ray", constant(set(1, vec![vec![ge(&[1], 0)]])), true),
        ("open-ray", constant(set(1, vec![vec![gt(&[1], 0)]])), true),
        ("open-interval", constant(set(1, vec![vec![gt(&[1], 0), lt(&[1], 1)]])), false),
        ("half-open-interval", constant(set(1, vec![vec![ge(&[1], 0), lt(&[1], 1)]])), false),
        ("point", constant(PLSet::from_constraints(1, vec![AffineConstraint::eq(v(&[2]), qi(1))]).unwrap()), false),
        ("shifted-sum", sum_object(), false),
        ("box", constant(set(2, vec![vec![ge(&[1, 0], 0), le(&[1, 0], 1), ge(&[0, 1], 0), le(&[0, 1], 1)]])), false),
        ("open-quadrant", constant(set(2, vec![vec![gt(&[1, 0], 0), gt(&[0, 1], 0)]])), true),
        ("quadratic-cone", constant(quadratic_cone_2()), true),
        ("square-boundary", constant(square_boundary()), false),
        ("punctured-plane", constant(punctured), true),
        ("half-plane", constant(set(2, vec![vec![ge(&[0, 1], 0)]])), true),
        ("half-open-triangle-rank2", rank2, false),
    ]
}

fn corpus_object(name: &str) -> ConstructibleObject {
    corpus().into_iter().find(|(n, _, _)| *n == name).map(|(_, o, _)| o).expect("corpus name")
}

// ---------------------------------------------------------------------------
// Scenario builders.

#[derive(Clone, Copy)]
enum Bug {
    None,
    Shift,
    Region,
}

const FEX_CLOSED: &str = "The Fourier-Sato transform of the constant sheaf on a proper closed convex cone is the constant sheaf on the interior of its polar cone.";
const FEX_OPEN: &str = "The Fourier-Sato transform of the constant sheaf on an open convex cone is the constant sheaf on the antipodal polar cone, shifted down by the dimension.";
const NEG_SHIFT: &str = "Negative control: closed-cone prediction with the shift off by one; must fail.";
const NEG_REGION: &str = "Negative control: closed-cone prediction on the closed polar instead of its interior; must fail on the boundary.";

fn fex(name: &'static str, gamma: Cell, pairing: Pairing, open: bool, bug: Bug) -> Scenario {
    let notes = match (open, bug) {
        (_, Bug::Shift) => NEG_SHIFT,
        (_, Bug::Region) => NEG_REGION,
        (true, Bug::None) => FEX_OPEN,
        (false, Bug::None) => FEX_CLOSED,
    };
    let s = Scenario::new(name, Evaluator::Fs, notes, move |seed, random| {
        let n = gamma.dim();
        let f = constant(PLSet::from_cell(gamma.clone()));
        let pred = match (open, bug) {
            (true, _) => fex_open_prediction(&gamma, &pairing),
            (false, Bug::Region) => polar_cone(&gamma, pairing.matrix()).map(|p| constant(PLSet::from_cell(p))),
            (false, _) => fex_closed_prediction(&gamma, &pairing),
        };
        let pred = match pred {
            Ok(p) if matches!(bug, Bug::Shift) => p.shift(1),
            Ok(p) => p,
            Err(e) => return failed(seed, e),
        };
        let hs = merged(pred.hyperplanes(), axes(n));
        let samples = sample_set(n, &hs, vec![vec![Rational::zero(); n]], random, seed, name);
        match_predicted(name, seed, |y| fourier_sato_stalk(&f, y, &pairing), |y| Ok(pred.stalk(y)), &samples)
    });
    if matches!(bug, Bug::None) {
        s
    } else {
        s.negative()
    }
}

fn fex_scenarios() -> Vec<Scenario> {
    let id = Pairing::identity;
    let skew = Pairing::new(vec![v(&[2, 1]), v(&[0, 1])]).expect("square");
    vec![
        fex("fex-closed-cone-dim1", cell(1, vec![ge(&[1], 0)]), id(1), false, Bug::None),
        fex("fex-closed-cone-dim2", cell(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0)]), id(2), false, Bug::None),
        fex("fex-closed-cone-dim2-wedge-skew", cell(2, vec![ge(&[-1, 1], 0), ge(&[1, 1], 0)]), skew, false, Bug::None),
        fex("fex-closed-cone-dim2-ray", cell(2, vec![ge(&[1, 0], 0), eq(&[0, 1], 0)]), id(2), false, Bug::None),
        fex(
            "fex-closed-cone-dim3",
            cell(3, vec![ge(&[1, 0, 0], 0), ge(&[0, 1, 0], 0), ge(&[0, 0, 1], 0)]),
            id(3),
            false,
            Bug::None,
        ),
        fex(
            "fex-closed-cone-dim3-pyramid",
            cell(3, vec![le(&[1, 0, -1], 0), le(&[-1, 0, -1], 0), le(&[0, 1, -1], 0), le(&[0, -1, -1], 0)]),
            id(3),
            false,
            Bug::None,
        ),
        fex(
            "fex-closed-cone-dim3-pentagon",
            cell(
                3,
                vec![
                    le(&[1, 0, -1], 0),
                    le(&[-1, 0, -1], 0),
                    le(&[0, -1, 0], 0),
                    le(&[1, 1, -2], 0),
                    le(&[-1, 1, -2], 0),
                ],
            ),
            id(3),
            false,
            Bug::None,
        ),
        fex("fex-open-cone-dim1", cell(1, vec![gt(&[1], 0)]), id(1), true, Bug::None),
        fex("fex-open-cone-dim2", cell(2, vec![gt(&[1, 0], 0), gt(&[0, 1], 0)]), id(2), true, Bug::None),
        fex("fex-open-cone-dim2-halfplane", cell(2, vec![gt(&[0, 1], 0)]), id(2), true, Bug::None),
        fex("fex-open-cone-dim2-plane", Cell::universe(2), id(2), true, Bug::None),
        fex(
            "fex-open-cone-dim3-pyramid",
            cell(3, vec![lt(&[1, 0, -1], 0), lt(&[-1, 0, -1], 0), lt(&[0, 1, -1], 0), lt(&[0, -1, -1], 0)]),
            id(3),
            true,
            Bug::None,
        ),
        fex("negative-shift-bug", cell(1, vec![ge(&[1], 0)]), id(1), false, Bug::Shift),
        fex("negative-region-bug", cell(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0)]), id(2), false, Bug::Region),
    ]
}

const CONEFOU_CLOSED: &str = "Non-homogeneous transform of the constant sheaf on a closed line-free convex body: constant on the interior of the polar of the recession cone, above the graph of minus the support function at minus y.";
const CONEFOU_OPEN: &str = "Non-homogeneous transform of the constant sheaf on an open convex body: constant on the interior of the antipodal polar of the recession cone, above the graph of the support function, shifted down by the dimension.";
const TAMARKIN: &str = "The predicted non-homogeneous transform is unchanged by the t-convolution with the constant sheaf on t >= 0.";

fn conefou_bodies() -> Vec<(&'static str, ConvexBody, bool)> {
    let b = |n: usize, cs: Vec<AffineConstraint>| ConvexBody::from_constraints(n, cs).expect("nonempty");
    vec![
        ("closed-interval", b(1, vec![ge(&[1], 0), le(&[1], 1)]), false),
        ("closed-halfline", b(1, vec![ge(&[1], 1)]), false),
        ("closed-box", b(2, vec![ge(&[1, 0], 0), le(&[1, 0], 1), ge(&[0, 1], 0), le(&[0, 1], 1)]), false),
        ("closed-simplex", b(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), le(&[1, 1], 1)]), false),
        ("closed-orthant", b(2, vec![ge(&[1, 0], 1), ge(&[0, 1], 1)]), false),
        ("closed-halfstrip", b(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), le(&[0, 1], 1)]), false),
        ("closed-point", b(2, vec![eq(&[1, 0], 1), eq(&[0, 2], -1)]), false),
        ("closed-segment", b(2, vec![eq(&[1, -2], 0), ge(&[1, 0], 0), le(&[1, 0], 2)]), false),
        ("open-interval", b(1, vec![gt(&[1], 0), lt(&[1], 1)]), true),
        ("open-box", b(2, vec![gt(&[1, 0], 0), lt(&[1, 0], 1), gt(&[0, 1], 0), lt(&[0, 1], 1)]), true),
        ("open-simplex", b(2, vec![gt(&[1, 0], 0), gt(&[0, 1], 0), lt(&[1, 1], 1)]), true),
    ]
}

fn conefou_prediction(a: &ConvexBody, open: bool, pairing: &Pairing) -> Result<ConstructibleObject, GeomError> {
    if open {
        conefou_open_prediction(a, pairing)
    } else {
        conefou_closed_prediction(a, pairing)
    }
}

fn conefou_samples(pred: &ConstructibleObject, seed: u64, random: usize, name: &str) -> SampleSet {
    let m = pred.dim();
    let hs = merged(pred.hyperplanes(), axes(m));
    sample_set(m, &hs, Vec::new(), random, seed, name)
}

fn conefou_scenarios() -> Vec<Scenario> {
    let mut out = Vec::new();
    for (suffix, a, open) in conefou_bodies() {
        let name: String = format!("conefou-{suffix}");
        let notes = if open { CONEFOU_OPEN } else { CONEFOU_CLOSED };
        let body = a.clone();
        let nm = name.clone();
        out.push(Scenario::new(name, Evaluator::Nhfs, notes, move |seed, random| {
            let pairing = Pairing::identity(body.dim());
            let pred = match conefou_prediction(&body, open, &pairing) {
                Ok(p) => p,
                Err(e) => return failed(seed, e),
            };
            let f = constant(body.to_plset());
            let samples = conefou_samples(&pred, seed, random, &nm);
            match_predicted(&nm, seed, |p| nh_fourier_stalk(&f, p, &pairing), |p| Ok(pred.stalk(p)), &samples)
        }));

        let name: String = format!("tamarkin-{suffix}");
        let nm = name.clone();
        out.push(Scenario::new(name, Evaluator::Ttens, TAMARKIN, move |seed, random| {
            let n = a.dim();
            let pred = match conefou_prediction(&a, open, &Pairing::identity(n)) {
                Ok(p) => p,
                Err(e) => return failed(seed, e),
            };
            let unit = t_nonnegative(n, false);
            let samples = conefou_samples(&pred, seed, random, &nm);
            match_predicted(&nm, seed, |p| ttens_stalk(&pred, &unit, p), |p| Ok(pred.stalk(p)), &samples)
        }));
    }
    out
}

const QCONE: &str = "Fourier-Sato transform of the constant sheaf on the piecewise-linear quadratic cone |x'| <= |x''| (x''' = 0) is the constant sheaf on |y'| >= |y''| shifted down by one.";
const QUADRIC: &str = "Non-homogeneous transform of the region x1^2 - x2^2 <= 1, through a polygonal surrogate rebuilt per sample, is concentrated in degree one on y1^2 >= y2^2 and t >= -sqrt(y1^2 - y2^2).";

fn qcone_scenarios() -> Vec<Scenario> {
    let pq = Scenario::new("qcone-pq1", Evaluator::Fs, QCONE, |seed, random| {
        let f = constant(quadratic_cone_2());
        let dual = set(2, vec![vec![le(&[-1, 1], 0), le(&[-1, -1], 0)], vec![le(&[1, 1], 0), le(&[1, -1], 0)]]);
        let pred = ConstructibleObject::shifted_constant(dual, -1);
        let id = Pairing::identity(2);
        let samples = sample_set(2, &merged(pred.hyperplanes(), axes(2)), Vec::new(), random, seed, "qcone-pq1");
        match_predicted("qcone-pq1", seed, |y| fourier_sato_stalk(&f, y, &id), |y| Ok(pred.stalk(y)), &samples)
    });
    let pqr = Scenario::new("qcone-pqr1", Evaluator::Fs, QCONE, |seed, random| {
        let f = constant(set(
            3,
            vec![
                vec![le(&[1, -1, 0], 0), le(&[-1, -1, 0], 0), eq(&[0, 0, 1], 0)],
                vec![le(&[1, 1, 0], 0), le(&[-1, 1, 0], 0), eq(&[0, 0, 1], 0)],
            ],
        ));
        let dual = set(3, vec![vec![le(&[-1, 1, 0], 0), le(&[-1, -1, 0], 0)], vec![le(&[1, 1, 0], 0), le(&[1, -1, 0], 0)]]);
        let pred = ConstructibleObject::shifted_constant(dual, -1);
        let id = Pairing::identity(3);
        let samples = sample_set(3, &merged(pred.hyperplanes(), axes(3)), Vec::new(), random, seed, "qcone-pqr1");
        match_predicted("qcone-pqr1", seed, |y| fourier_sato_stalk(&f, y, &id), |y| Ok(pred.stalk(y)), &samples)
    });
    let quad = Scenario::new("quadric-c1", Evaluator::Nhfs, QUADRIC, |seed, random| {
        let id = Pairing::identity(2);
        let hs: Vec<AffineConstraint> = [[1, -1, 0], [1, 1, 0], [0, 0, 1], [1, 0, 1], [1, 0, -1], [0, 1, 1], [0, 1, -1]]
            .iter()
            .map(|c| eq(c, 0))
            .collect();
        // Tangency points t = −√(y₁² − y₂²) and their neighbours.
        let mut user: Vec<Point> = Vec::new();
        for (a, b, c) in [(1, 0, 1), (5, 3, 4), (5, -4, 3), (13, 5, 12), (17, -8, 15), (-5, 3, 4), (-1, 0, 1)] {
            for d in [q(0, 1), q(1, 8), q(-1, 8)] {
                user.push(vec![qi(a), qi(b), &qi(-c) + &d]);
            }
        }
        for p in [[0, 0, 0], [0, 0, -1], [0, 0, 2], [1, 1, 0], [1, 1, -1], [2, -2, 1], [1, 2, -3], [1, 2, 3]] {
            user.push(v(&p));
        }
        let samples = sample_set(3, &hs, user, random, seed, "quadric-c1");
        match_predicted(
            "quadric-c1",
            seed,
            |p| nh_fourier_stalk(&constant(quadric::surrogate(&p[..2], &p[2])), p, &id),
            |p| Ok(indicator(quadric::predicate(p), 1)),
            &samples,
        )
    });
    vec![pq, pqr, quad]
}

const GAMMAHK: &str = "The polar of the closed cone over the embedded body equals the set of (y, t) with y in the polar of the recession cone and t at most minus the support function at minus y. Degree 0 records the double-description polar, degree 1 the ray/vertex description; both are compared with a direct LP.";

fn gammahk_scenarios() -> Vec<Scenario> {
    let b = |n: usize, cs: Vec<AffineConstraint>| ConvexBody::from_constraints(n, cs).expect("nonempty");
    let bodies = vec![
        ("gammahk-point", b(1, vec![eq(&[1], 0)])),
        ("gammahk-interval", b(1, vec![ge(&[1], -1), le(&[1], 1)])),
        ("gammahk-halfline", b(1, vec![ge(&[1], 1)])),
        ("gammahk-box", b(2, vec![ge(&[1, 0], 0), le(&[1, 0], 1), ge(&[0, 1], 0), le(&[0, 1], 1)])),
        ("gammahk-orthant", b(2, vec![ge(&[1, 0], 1), ge(&[0, 1], 1)])),
        ("gammahk-halfstrip", b(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), le(&[0, 1], 1)])),
        ("gammahk-simplex", b(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), le(&[1, 1], 1)])),
    ];
    bodies
        .into_iter()
        .map(|(name, a)| {
            Scenario::new(name, Evaluator::Check, GAMMAHK, move |seed, random| {
                let (lhs, rhs) = match gamma_hk_sides(&a) {
                    Ok(s) => s,
                    Err(e) => return failed(seed, e),
                };
                let (l, r) = (PLSet::from_cell(lhs.clone()), PLSet::from_cell(rhs.clone()));
                let mut user = Vec::new();
                for d in [l.subtract(&r), r.subtract(&l)] {
                    match d {
                        Ok(d) => user.extend(d.cells().iter().map(Cell::interior_witness)),
                        Err(e) => return failed(seed, e),
                    }
                }
                let hs = merged(l.hyperplanes(), r.hyperplanes());
                let samples = sample_set(a.dim() + 1, &hs, user, random, seed, name);
                match_predicted(
                    name,
                    seed,
                    |p| Ok(indicator(lhs.contains(p), 0).plus(&indicator(rhs.contains(p), 1))),
                    |p| {
                        let inside = gamma_hk_predicate(&a, p)?;
                        Ok(indicator(inside, 0).plus(&indicator(inside, 1)))
                    },
                    &samples,
                )
            })
        })
        .collect()
}

const FIF_RESTRICTION: &str = "The non-homogeneous transform restricted to t = 0 is the Fourier-Sato transform.";
const FIF_VANISHING: &str = "The non-homogeneous transform vanishes on y = 0, t < 0.";
const FIF_CONIC: &str = "For a conic object the non-homogeneous transform is the external product of its Fourier-Sato transform with the constant sheaf on t >= 0.";
const CONE_CONIC: &str = "Conification leaves a conic object unchanged.";
const CONE_IAF: &str = "Conification of the constant sheaf on the embedded copy of A at height -1 is the constant sheaf on the cone over it, shifted by one.";
const PHI: &str = "Tamarkin's transform of F~ = F boxtimes k_{t>=0} with kernel <x,y> <= t agrees with the non-homogeneous transform of F.";

fn fif_scenarios() -> Vec<Scenario> {
    let mut out = Vec::new();
    for (oname, f, conic) in corpus() {
        let n = f.dim();
        let name = format!("fif-restriction-{oname}");
        let nm = name.clone();
        let g = f.clone();
        out.push(Scenario::new(name, Evaluator::Nhfs, FIF_RESTRICTION, move |seed, random| {
            let id = Pairing::identity(n);
            let samples = sample_set(n, &dual_hyperplanes(&g), Vec::new(), random, seed, &nm);
            match_predicted(
                &nm,
                seed,
                |y| {
                    let mut yt = y.to_vec();
                    yt.push(Rational::zero());
                    nh_fourier_stalk(&g, &yt, &id)
                },
                |y| fourier_sato_stalk(&g, y, &id),
                &samples,
            )
        }));

        let name = format!("fif-vanishing-{oname}");
        let nm = name.clone();
        let g = f.clone();
        out.push(Scenario::new(name, Evaluator::Nhfs, FIF_VANISHING, move |seed, random| {
            let id = Pairing::identity(n);
            let mut samples = SampleSet::new();
            let mut rng = stream(seed, &nm);
            let ts = random_points(1, random.max(1), &mut rng);
            for (i, t) in ts.into_iter().enumerate() {
                let mut p = vec![Rational::zero(); n];
                // Strictly negative: −|t| − 1/(i+2).
                p.push(&-t[0].abs() - &Rational::new(1, i as i64 + 2));
                samples.push(p, crate::sample::Provenance::Random);
            }
            match_predicted(&nm, seed, |p| nh_fourier_stalk(&g, p, &id), |_| Ok(GradedDims::new()), &samples)
        }));

        if conic {
            let name = format!("fif-conic-product-{oname}");
            let nm = name.clone();
            let g = f.clone();
            out.push(Scenario::new(name, Evaluator::Nhfs, FIF_CONIC, move |seed, random| {
                let id = Pairing::identity(n);
                let mut hs = lift(&dual_hyperplanes(&g));
                let mut t = vec![0; n + 1];
                t[n] = 1;
                hs.push(eq(&t, 0));
                let samples = sample_set(n + 1, &hs, Vec::new(), random, seed, &nm);
                match_predicted(
                    &nm,
                    seed,
                    |p| nh_fourier_stalk(&g, p, &id),
                    |p| {
                        if p[n].is_negative() {
                            Ok(GradedDims::new())
                        } else {
                            fourier_sato_stalk(&g, &p[..n], &id)
                        }
                    },
                    &samples,
                )
            }));

            let name = format!("cone-conic-{oname}");
            let nm = name.clone();
            let g = f.clone();
            out.push(Scenario::new(name, Evaluator::Cone, CONE_CONIC, move |seed, random| {
                let hs = merged(g.hyperplanes(), axes(n));
                let samples = sample_set(n, &hs, vec![vec![Rational::zero(); n]], random, seed, &nm);
                match_predicted(&nm, seed, |x| conification_stalk(&g, x), |x| Ok(g.stalk(x)), &samples)
            }));
        }
    }
    out
}

fn iaf_scenarios() -> Vec<Scenario> {
    let sets: Vec<(&'static str, PLSet)> = vec![
        ("point", PLSet::from_constraints(1, vec![eq(&[1], 1)]).unwrap()),
        ("interval", set(1, vec![vec![ge(&[1], 0), le(&[1], 1)]])),
        ("halfline", set(1, vec![vec![ge(&[1], 1)]])),
        ("open-interval", set(1, vec![vec![gt(&[1], 0), lt(&[1], 1)]])),
        ("half-open-interval", set(1, vec![vec![ge(&[1], 0), lt(&[1], 1)]])),
        ("box", set(2, vec![vec![ge(&[1, 0], 0), le(&[1, 0], 1), ge(&[0, 1], 0), le(&[0, 1], 1)]])),
        ("strip-half-open", set(2, vec![vec![gt(&[1, 0], 0), lt(&[1, 0], 1), ge(&[0, 1], 0), le(&[0, 1], 1)]])),
        ("square-boundary", square_boundary()),
    ];
    sets.into_iter()
        .map(|(suffix, a)| {
            let name = format!("cone-iaf-{suffix}");
            let nm = name.clone();
            Scenario::new(name, Evaluator::Cone, CONE_IAF, move |seed, random| {
                let n = a.dim();
                let level = PLSet::from_constraints(1, vec![eq(&[1], -1)]).unwrap();
                let embedded = constant(a.product(&level));
                let pred = ConstructibleObject::shifted_constant(cone_over_embedding(&a), 1);
                let hs = merged(merged(pred.hyperplanes(), embedded.hyperplanes()), axes(n + 1));
                let samples = sample_set(n + 1, &hs, Vec::new(), random, seed, &nm);
                match_predicted(&nm, seed, |x| conification_stalk(&embedded, x), |x| Ok(pred.stalk(x)), &samples)
            })
        })
        .collect()
}

const CONVF: &str = "The Fourier-Sato transform of a tensor product equals the convolution of the transforms shifted by the dimension, on cones whose transforms are representable.";
const FOUETENS: &str = "The Fourier-Sato transform of an external product is the external product of the transforms.";
const TCOMP_TOY: &str = "Tamarkin composition of tilde kernels equals the tilde of the ordinary composition.";

fn convf_scenarios() -> Vec<Scenario> {
    let pairs = vec![
        ("convf-witness", cell(1, vec![ge(&[1], 0)]), cell(1, vec![le(&[1], 0)])),
        ("convf-witness-rays", cell(1, vec![ge(&[1], 0)]), cell(1, vec![ge(&[1], 0)])),
        (
            "convf-witness-quadrants",
            cell(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0)]),
            cell(2, vec![le(&[1, 0], 0), le(&[0, 1], 0)]),
        ),
    ];
    pairs
        .into_iter()
        .map(|(name, a, b)| {
            Scenario::new(name, Evaluator::Conv, CONVF, move |seed, random| {
                let n = a.dim();
                let id = Pairing::identity(n);
                let (fa, fb) = (constant(PLSet::from_cell(a.clone())), constant(PLSet::from_cell(b.clone())));
                let prod = match fa.tensor(&fb) {
                    Ok(p) => p,
                    Err(e) => return failed(seed, e),
                };
                let (ha, hb) = match (fex_closed_prediction(&a, &id), fex_closed_prediction(&b, &id)) {
                    (Ok(x), Ok(y)) => (x, y),
                    (Err(e), _) | (_, Err(e)) => return failed(seed, e),
                };
                let hs = merged(merged(ha.hyperplanes(), hb.hyperplanes()), axes(n));
                let samples = sample_set(n, &hs, Vec::new(), random, seed, name);
                match_predicted(
                    name,
                    seed,
                    |y| fourier_sato_stalk(&prod, y, &id),
                    |y| Ok(convolution_stalk(&ha, &hb, y)?.shifted(-(n as i64))),
                    &samples,
                )
            })
        })
        .collect()
}

fn fouetens_scenarios() -> Vec<Scenario> {
    let pairs = [("closed-ray", "open-ray"), ("closed-ray", "quadratic-cone"), ("open-quadrant", "open-ray")];
    pairs
        .iter()
        .map(|&(a, b)| {
            let name = format!("fouetens-{a}-{b}");
            let nm = name.clone();
            Scenario::new(name, Evaluator::Fs, FOUETENS, move |seed, random| {
                let (f1, f2) = (corpus_object(a), corpus_object(b));
                let (n1, n2) = (f1.dim(), f2.dim());
                let prod = f1.external(&f2);
                let hs = merged(lift_all(&dual_hyperplanes(&f1), 0, n2), lift_all(&dual_hyperplanes(&f2), n1, 0));
                let samples = sample_set(n1 + n2, &hs, Vec::new(), random, seed, &nm);
                let (id, id1, id2) = (Pairing::identity(n1 + n2), Pairing::identity(n1), Pairing::identity(n2));
                match_predicted(
                    &nm,
                    seed,
                    |y| fourier_sato_stalk(&prod, y, &id),
                    |y| Ok(fourier_sato_stalk(&f1, &y[..n1], &id1)?.tensor(&fourier_sato_stalk(&f2, &y[n1..], &id2)?)),
                    &samples,
                )
            })
        })
        .collect()
}

fn lift_all(hs: &[AffineConstraint], before: usize, after: usize) -> Vec<AffineConstraint> {
    hs.iter().map(|h| h.embed(before, after)).collect()
}

fn phi_scenarios() -> Vec<Scenario> {
    ["interval", "closed-ray", "half-open-interval", "point", "shifted-sum", "box"]
        .iter()
        .map(|&oname| {
            let name = format!("phi-compat-{oname}");
            let nm = name.clone();
            Scenario::new(name, Evaluator::Tcomp, PHI, move |seed, random| {
                let f = corpus_object(oname);
                let n = f.dim();
                let id = Pairing::identity(n);
                let ft = match Kernel::from_object(&tilde(&f), n + 1, 0) {
                    Ok(k) => k,
                    Err(e) => return failed(seed, e),
                };
                let k = id.tamarkin_kernel();
                let mut hs = lift(&dual_hyperplanes(&f));
                let mut t = vec![0; n + 1];
                t[n] = 1;
                hs.push(eq(&t, 0));
                let samples = sample_set(n + 1, &hs, Vec::new(), random, seed, &nm);
                match_predicted(&nm, seed, |p| tcomp_stalk(&ft, &k, p), |p| nh_fourier_stalk(&f, p, &id), &samples)
            })
        })
        .collect()
}

fn tcomp_scenarios() -> Vec<Scenario> {
    let toys = vec![
        (
            "tcomp-toy",
            constant(set(1, vec![vec![ge(&[1], 0), le(&[1], 1)]])),
            constant(set(2, vec![vec![le(&[1, -1], 0)]])),
        ),
        (
            "tcomp-toy-open",
            constant(set(1, vec![vec![gt(&[1], 0), lt(&[1], 1)]])),
            constant(set(2, vec![vec![ge(&[1, -1], -1), lt(&[1, -1], 0)]])),
        ),
    ];
    toys.into_iter()
        .map(|(name, k12, k23)| {
            Scenario::new(name, Evaluator::Tcomp, TCOMP_TOY, move |seed, random| {
                let built = (|| -> Result<(Kernel, Kernel, Kernel), GeomError> {
                    Ok((
                        Kernel::from_object(&tilde(&k12), 2, 0)?,
                        Kernel::from_object_split(&tilde(&k23), &[0, 2], &[1])?,
                        Kernel::from_object(&k23, 1, 1)?,
                    ))
                })();
                let (l12, l23, plain) = match built {
                    Ok(k) => k,
                    Err(e) => return failed(seed, e),
                };
                let hs = vec![eq(&[0, 1], 0), eq(&[1, 0], 0), eq(&[1, 0], 1), eq(&[1, 0], 2), eq(&[1, 0], -1)];
                let samples = sample_set(2, &hs, Vec::new(), random, seed, name);
                match_predicted(
                    name,
                    seed,
                    |p| tcomp_stalk(&l12, &l23, p),
                    |p| {
                        if p[1].is_negative() {
                            Ok(GradedDims::new())
                        } else {
                            stalk_compose(&k12, &plain, &p[..1])
                        }
                    },
                    &samples,
                )
            })
        })
        .collect()
}

/// Every registered scenario, in a fixed order.
pub fn registry() -> Vec<Scenario> {
    let mut out = fex_scenarios();
    out.extend(conefou_scenarios());
    out.extend(qcone_scenarios());
    out.extend(gammahk_scenarios());
    out.extend(fif_scenarios());
    out.extend(iaf_scenarios());
    out.extend(convf_scenarios());
    out.extend(fouetens_scenarios());
    out.extend(phi_scenarios());
    out.extend(tcomp_scenarios());
    out
}

