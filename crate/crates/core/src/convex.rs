//! Convex-geometric quantities of polyhedral bodies: support functions,
//! recession cones, polar cones, the cone over the embedded body `x ↦ (x,−1)`
//! and the polar description of that cone.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::geom::lp::{maximize, LpOutcome, Row, RowKind};
use crate::geom::{check_dim, AffineConstraint, Cell, GeomError, PLSet, Relation};
use crate::linalg::{dot, mat_vec, nullspace, rank, transpose, Matrix};
use crate::rational::Rational;

/// A rational number or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    PosInf,
}

impl ExtRational {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::PosInf => None,
        }
    }

    pub fn add(&self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::PosInf,
        }
    }

    /// Multiplication by a positive rational.
    pub fn scale(&self, s: &Rational) -> ExtRational {
        debug_assert!(s.is_positive());
        match self {
            ExtRational::Finite(a) => ExtRational::Finite(a * s),
            ExtRational::PosInf => ExtRational::PosInf,
        }
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::PosInf) => Ordering::Less,
            (ExtRational::PosInf, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::PosInf, ExtRational::PosInf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::PosInf => f.write_str("+inf"),
        }
    }
}

/// A nonempty convex polyhedral set, possibly with strict walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexBody {
    cell: Cell,
}

impl ConvexBody {
    pub fn new(cell: Cell) -> Self {
        ConvexBody { cell }
    }

    pub fn from_constraints(dim: usize, constraints: Vec<AffineConstraint>) -> Result<Self, GeomError> {
        Cell::new(dim, constraints)?.map(ConvexBody::new).ok_or(GeomError::EmptyBody)
    }

    /// A single-cell set as a convex body.
    pub fn from_plset(s: &PLSet) -> Result<Self, GeomError> {
        match s.cells() {
            [] => Err(GeomError::EmptyBody),
            [c] => Ok(ConvexBody::new(c.clone())),
            _ => Err(GeomError::Unsupported("convex body must be a single conjunctive cell")),
        }
    }

    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    pub fn dim(&self) -> usize {
        self.cell.dim()
    }

    pub fn to_plset(&self) -> PLSet {
        PLSet::from_cell(self.cell.clone())
    }
}

fn closed_rows(cell: &Cell) -> Vec<Row> {
    cell.constraints()
        .iter()
        .map(|c| Row {
            coeffs: c.coeffs.clone(),
            kind: if c.rel == Relation::Eq { RowKind::Eq } else { RowKind::Le },
            rhs: c.rhs.clone(),
        })
        .collect()
}

/// `sup_{x ∈ A} ⟨x, y⟩`. The supremum over a set equals that over its
/// closure, so strict walls are relaxed.
pub fn support_function(a: &ConvexBody, y: &[Rational]) -> Result<ExtRational, GeomError> {
    check_dim(a.dim(), y.len())?;
    match maximize(a.dim(), &closed_rows(&a.cell), y) {
        LpOutcome::Optimal { value, .. } => Ok(ExtRational::Finite(value)),
        LpOutcome::Unbounded => Ok(ExtRational::PosInf),
        LpOutcome::Infeasible => Err(GeomError::EmptyBody),
    }
}

/// Directions along which the closure of `a` is unbounded: `{M x ≤ 0, E x = 0}`.
pub fn recession_cone(a: &ConvexBody) -> Cell {
    let cs = a
        .cell
        .constraints()
        .iter()
        .map(|c| {
            let rel = if c.rel == Relation::Eq { Relation::Eq } else { Relation::Le };
            AffineConstraint::raw(c.coeffs.clone(), rel, Rational::zero())
        })
        .collect();
    Cell::new(a.dim(), cs).expect("dimensions agree").expect("cones contain the origin")
}

/// Scales a nonzero vector so its first nonzero entry is ±1.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector").abs();
    v.iter().map(|x| x / &lead).collect()
}

/// Generators of a closed polyhedral cone: extreme rays modulo the lineality
/// space, and a basis of the lineality space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

fn cone_rows(cone: &Cell) -> Result<Vec<Vec<Rational>>, GeomError> {
    let mut rows = Vec::new();
    for (i, c) in cone.constraints().iter().enumerate() {
        if !c.rhs.is_zero() {
            return Err(GeomError::NotACone { index: i });
        }
        rows.push(c.coeffs.clone());
        if c.rel == Relation::Eq {
            rows.push(c.coeffs.iter().map(|x| -x).collect());
        }
    }
    Ok(rows)
}

struct DdRay {
    v: Vec<Rational>,
    tight: Vec<bool>,
}

/// Double-description conversion of the closed cone `{a_i · x ≤ 0}` (strict
/// rows are read as non-strict) into generators.
pub fn cone_generators(cone: &Cell) -> Result<ConeGenerators, GeomError> {
    let n = cone.dim();
    let rows = cone_rows(cone)?;
    let mut lineality: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();
    let mut processed: Vec<Vec<Rational>> = Vec::new();

    for a in &rows {
        let k = processed.len();
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut al0 = dot(a, &l0);
            if al0.is_positive() {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let f = &dot(a, l) / &al0;
                if !f.is_zero() {
                    *l = l.iter().zip(&l0).map(|(x, y)| x - &(&f * y)).collect();
                }
            }
            for r in rays.iter_mut() {
                let f = &dot(a, &r.v) / &al0;
                if !f.is_zero() {
                    r.v = r.v.iter().zip(&l0).map(|(x, y)| x - &(&f * y)).collect();
                }
                r.tight.push(true);
            }
            let mut tight = vec![true; k];
            tight.push(false);
            rays.push(DdRay { v: l0, tight });
            processed.push(a.clone());
            continue;
        }

        let vals: Vec<Rational> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let target_rank = n - lineality.len();
        let mut next: Vec<DdRay> = Vec::new();
        for (r, val) in rays.iter().zip(&vals) {
            if !val.is_positive() {
                let mut tight = r.tight.clone();
                tight.push(val.is_zero());
                next.push(DdRay { v: r.v.clone(), tight });
            }
        }
        for (i, p) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: Vec<usize> = (0..k).filter(|&c| p.tight[c] && q.tight[c]).collect();
                if target_rank < 2 {
                    continue;
                }
                let normals: Vec<Vec<Rational>> = common.iter().map(|&c| processed[c].clone()).collect();
                if rank(&normals, n) != target_rank - 2 {
                    continue;
                }
                // (a·p) q − (a·q) p lies on the hyperplane a·x = 0.
                let v: Vec<Rational> =
                    q.v.iter().zip(&p.v).map(|(qx, px)| &(&vals[i] * qx) - &(&vals[j] * px)).collect();
                let mut tight: Vec<bool> = (0..k).map(|c| p.tight[c] && q.tight[c]).collect();
                tight.push(true);
                next.push(DdRay { v, tight });
            }
        }
        rays = next;
        processed.push(a.clone());
    }

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rays {
        let p = primitive(&r.v);
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(ConeGenerators { rays: out, lineality })
}

/// `{y : ⟨x, y⟩ ≥ 0 ∀ x ∈ cone}` with `⟨x, y⟩ = xᵀ B y`. The polar of a
/// cone and of its closure agree, so strict rows are read as non-strict.
pub fn polar_cone(cone: &Cell, pairing: &Matrix) -> Result<Cell, GeomError> {
    let n = cone.dim();
    check_dim(n, pairing.len())?;
    let m = pairing.first().map_or(n, |r| r.len());
    let gens = cone_generators(cone)?;
    let bt = transpose(pairing, m);
    let mut cs = Vec::new();
    for g in &gens.rays {
        let w = mat_vec(&bt, g);
        cs.push(AffineConstraint::le(w.iter().map(|x| -x).collect(), Rational::zero()));
    }
    for l in &gens.lineality {
        cs.push(AffineConstraint::eq(mat_vec(&bt, l), Rational::zero()));
    }
    Ok(Cell::new(m, cs)?.expect("polar cones contain the origin"))
}

/// The interior of a full-dimensional polyhedral cone, or `None` if it has
/// empty interior.
pub fn interior(cell: &Cell) -> Result<Option<Cell>, GeomError> {
    if cell.constraints().iter().any(|c| c.rel == Relation::Eq) {
        return Ok(None);
    }
    let cs = cell
        .constraints()
        .iter()
        .map(|c| AffineConstraint::lt(c.coeffs.clone(), c.rhs.clone()))
        .collect();
    Cell::new(cell.dim(), cs)
}

/// `γ_A = R⁺·{(x, −1) : x ∈ A}` in `Q^{n+1}`, by homogenizing each
/// constraint `a·x rel b` to `a·x + b·s rel 0` on `{s < 0}`.
pub fn cone_over_embedding(a: &PLSet) -> PLSet {
    let n = a.dim();
    let mut s_neg = vec![Rational::zero(); n + 1];
    s_neg[n] = Rational::one();
    let cells = a
        .cells()
        .iter()
        .map(|c| {
            let mut cs: Vec<AffineConstraint> = c
                .constraints()
                .iter()
                .map(|k| {
                    let mut coeffs = k.coeffs.clone();
                    coeffs.push(k.rhs.clone());
                    AffineConstraint::raw(coeffs, k.rel, Rational::zero())
                })
                .collect();
            cs.push(AffineConstraint::lt(s_neg.clone(), Rational::zero()));
            cs
        })
        .collect();
    PLSet::from_conjunctions(n + 1, cells).expect("dimensions agree")
}

/// Closure of `γ_A` for a nonempty convex body: homogenized rows relaxed,
/// together with `s ≤ 0`.
pub fn closed_cone_over_embedding(a: &ConvexBody) -> Cell {
    let n = a.dim();
    let mut cs: Vec<AffineConstraint> = a
        .cell
        .constraints()
        .iter()
        .map(|k| {
            let mut coeffs = k.coeffs.clone();
            coeffs.push(k.rhs.clone());
            let rel = if k.rel == Relation::Eq { Relation::Eq } else { Relation::Le };
            AffineConstraint::raw(coeffs, rel, Rational::zero())
        })
        .collect();
    let mut s = vec![Rational::zero(); n + 1];
    s[n] = Rational::one();
    cs.push(AffineConstraint::le(s, Rational::zero()));
    Cell::new(n + 1, cs).expect("dimensions agree").expect("contains the origin")
}

/// Subsets of `0..n` of size `k`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertices of the closure of `a ∩ L⊥`, where `L` is the lineality space of
/// the closure, by enumerating square subsystems. Independent of the
/// double-description code.
pub fn vertices(a: &ConvexBody) -> Vec<Vec<Rational>> {
    let n = a.dim();
    let closed = a.cell.closure();
    let normals: Vec<Vec<Rational>> = closed.constraints().iter().map(|c| c.coeffs.clone()).collect();
    let lin = nullspace(&normals, n);
    let mut eq_rows: Vec<(Vec<Rational>, Rational)> = lin.iter().map(|l| (l.clone(), Rational::zero())).collect();
    let mut ineq: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in closed.constraints() {
        if c.rel == Relation::Eq {
            eq_rows.push((c.coeffs.clone(), c.rhs.clone()));
        } else {
            ineq.push((c.coeffs.clone(), c.rhs.clone()));
        }
    }
    let eq_rank = rank(&eq_rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>(), n);
    let need = n - eq_rank;
    let mut found = BTreeSet::new();
    for subset in combinations(ineq.len(), need) {
        let mut mat: Vec<Vec<Rational>> = eq_rows.iter().map(|r| r.0.clone()).collect();
        let mut rhs: Vec<Rational> = eq_rows.iter().map(|r| r.1.clone()).collect();
        for &i in &subset {
            mat.push(ineq[i].0.clone());
            rhs.push(ineq[i].1.clone());
        }
        if rank(&mat, n) != n {
            continue;
        }
        let Some(x) = crate::linalg::solve(&mat, &rhs, n) else { continue };
        let on_lin = lin.iter().all(|l| dot(l, &x).is_zero());
        if on_lin && closed.contains(&x) {
            found.insert(x);
        }
    }
    found.into_iter().collect()
}

/// Generators of a closed cone by enumerating square subsystems (extreme
/// rays of the pointed part) plus a nullspace basis for the lineality space.
pub fn cone_generators_brute(cone: &Cell) -> Result<ConeGenerators, GeomError> {
    let n = cone.dim();
    let rows = cone_rows(cone)?;
    let lin = nullspace(&rows, n);
    let pointed_dim = n - lin.len();
    let mut rays = BTreeSet::new();
    if pointed_dim >= 1 {
        for subset in combinations(rows.len(), pointed_dim - 1) {
            let mut mat: Vec<Vec<Rational>> = lin.clone();
            mat.extend(subset.iter().map(|&i| rows[i].clone()));
            let ns = nullspace(&mat, n);
            if ns.len() != 1 {
                continue;
            }
            for sign in [Rational::one(), -Rational::one()] {
                let r: Vec<Rational> = ns[0].iter().map(|x| x * &sign).collect();
                if rows.iter().all(|a| !dot(a, &r).is_positive()) {
                    rays.insert(primitive(&r));
                }
            }
        }
    }
    Ok(ConeGenerators { rays: rays.into_iter().collect(), lineality: lin })
}

/// Both sides of the polar identity for the cone over the embedded body:
/// the polar of the closure of `γ_A`, and the cell
/// `{(y, t) : y ∈ λ_A°, t ≤ ⟨v, y⟩ for all vertices v}`.
pub fn gamma_hk_sides(a: &ConvexBody) -> Result<(Cell, Cell), GeomError> {
    let n = a.dim();
    let lhs = polar_cone(&closed_cone_over_embedding(a), &crate::linalg::identity(n + 1))?;

    let gens = cone_generators_brute(&recession_cone(a))?;
    let mut cs = Vec::new();
    for r in &gens.rays {
        let mut c: Vec<Rational> = r.iter().map(|x| -x).collect();
        c.push(Rational::zero());
        cs.push(AffineConstraint::le(c, Rational::zero()));
    }
    for l in &gens.lineality {
        let mut c = l.clone();
        c.push(Rational::zero());
        cs.push(AffineConstraint::eq(c, Rational::zero()));
    }
    for v in vertices(a) {
        let mut c: Vec<Rational> = v.iter().map(|x| -x).collect();
        c.push(Rational::one());
        cs.push(AffineConstraint::le(c, Rational::zero()));
    }
    let rhs = Cell::new(n + 1, cs)?.expect("contains the origin");
    Ok((lhs, rhs))
}

/// Membership in `{(y,t) : t ≤ −h_A(−y)}` decided directly by LP.
pub fn gamma_hk_predicate(a: &ConvexBody, yt: &[Rational]) -> Result<bool, GeomError> {
    let n = a.dim();
    check_dim(n + 1, yt.len())?;
    let neg_y: Vec<Rational> = yt[..n].iter().map(|x| -x).collect();
    Ok(match support_function(a, &neg_y)? {
        ExtRational::PosInf => false,
        ExtRational::Finite(h) => yt[n] <= -h,
    })
}

/// Exact check of the polar identity: the two H-descriptions must be equal
/// as point sets, and both must agree with the LP predicate at `probes`.
pub fn gamma_hk_check(a: &ConvexBody) -> Result<bool, GeomError> {
    gamma_hk_check_with(a, &[])
}

pub fn gamma_hk_check_with(a: &ConvexBody, probes: &[Vec<Rational>]) -> Result<bool, GeomError> {
    let (lhs, rhs) = gamma_hk_sides(a)?;
    let (l, r) = (PLSet::from_cell(lhs.clone()), PLSet::from_cell(rhs.clone()));
    if !l.set_eq(&r)? {
        return Ok(false);
    }
    for p in probes {
        let pred = gamma_hk_predicate(a, p)?;
        if lhs.contains(p) != pred || rhs.contains(p) != pred {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;
    use crate::rational::{q, qi};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    fn body(dim: usize, cs: Vec<AffineConstraint>) -> ConvexBody {
        ConvexBody::from_constraints(dim, cs).unwrap()
    }

    fn unit_box(n: usize) -> ConvexBody {
        let mut cs = Vec::new();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            cs.push(AffineConstraint::le(e.clone(), qi(1)));
            cs.push(AffineConstraint::ge(e, qi(0)));
        }
        body(n, cs)
    }

    #[test]
    fn support_function_examples() {
        assert_eq!(support_function(&unit_box(2), &v(&[1, -2])).unwrap(), ExtRational::Finite(qi(1)));
        let half = body(1, vec![AffineConstraint::ge(v(&[1]), qi(1))]);
        assert_eq!(support_function(&half, &v(&[-1])).unwrap(), ExtRational::Finite(qi(-1)));
        assert_eq!(support_function(&half, &v(&[1])).unwrap(), ExtRational::PosInf);
    }

    #[test]
    fn recession_examples() {
        let half = body(1, vec![AffineConstraint::ge(v(&[1]), qi(1))]);
        let rc = PLSet::from_cell(recession_cone(&half));
        let expect = PLSet::from_constraints(1, vec![AffineConstraint::ge(v(&[1]), qi(0))]).unwrap();
        assert!(rc.set_eq(&expect).unwrap());
        let rb = PLSet::from_cell(recession_cone(&unit_box(2)));
        assert!(rb.member(&v(&[0, 0])) && !rb.member(&v(&[1, 0])) && !rb.member(&v(&[0, -1])));
    }

    #[test]
    fn polar_examples() {
        let quadrant = Cell::new(2, vec![AffineConstraint::ge(v(&[1, 0]), qi(0)), AffineConstraint::ge(v(&[0, 1]), qi(0))])
            .unwrap()
            .unwrap();
        let p = polar_cone(&quadrant, &identity(2)).unwrap();
        assert!(PLSet::from_cell(p).set_eq(&PLSet::from_cell(quadrant)).unwrap());

        let vee = Cell::new(2, vec![AffineConstraint::ge(v(&[-1, 1]), qi(0)), AffineConstraint::ge(v(&[1, 1]), qi(0))])
            .unwrap()
            .unwrap();
        let p = polar_cone(&vee, &identity(2)).unwrap();
        assert!(PLSet::from_cell(p).set_eq(&PLSet::from_cell(vee)).unwrap());

        let not_cone = Cell::new(1, vec![AffineConstraint::ge(v(&[1]), qi(1))]).unwrap().unwrap();
        assert!(matches!(polar_cone(&not_cone, &identity(1)), Err(GeomError::NotACone { .. })));

        let whole = Cell::universe(2);
        let p = polar_cone(&whole, &identity(2)).unwrap();
        assert!(p.contains(&v(&[0, 0])) && !p.contains(&v(&[1, 0])));
    }

    #[test]
    fn double_description_matches_brute_force() {
        // Square pyramid: x3 ≥ |x1|, x3 ≥ |x2|.
        let cs = vec![
            AffineConstraint::le(v(&[1, 0, -1]), qi(0)),
            AffineConstraint::le(v(&[-1, 0, -1]), qi(0)),
            AffineConstraint::le(v(&[0, 1, -1]), qi(0)),
            AffineConstraint::le(v(&[0, -1, -1]), qi(0)),
        ];
        let cone = Cell::new(3, cs).unwrap().unwrap();
        let a = cone_generators(&cone).unwrap();
        let b = cone_generators_brute(&cone).unwrap();
        let sa: BTreeSet<_> = a.rays.into_iter().collect();
        let sb: BTreeSet<_> = b.rays.into_iter().collect();
        assert_eq!(sa.len(), 4);
        assert_eq!(sa, sb);
    }

    #[test]
    fn cone_over_embedding_examples() {
        let pt = PLSet::from_constraints(1, vec![AffineConstraint::eq(v(&[1]), qi(1))]).unwrap();
        let g = cone_over_embedding(&pt);
        assert!(g.member(&v(&[2, -2])) && !g.member(&v(&[0, 0])) && !g.member(&v(&[1, -2])));
        let half = PLSet::from_constraints(1, vec![AffineConstraint::ge(v(&[1]), qi(1))]).unwrap();
        let g = cone_over_embedding(&half);
        let expect = PLSet::from_constraints(2, vec![AffineConstraint::lt(v(&[0, 1]), qi(0)), AffineConstraint::ge(v(&[1, 1]), qi(0))]).unwrap();
        assert!(g.set_eq(&expect).unwrap());
        let g = cone_over_embedding(&PLSet::universe(1));
        let expect = PLSet::from_constraints(2, vec![AffineConstraint::lt(v(&[0, 1]), qi(0))]).unwrap();
        assert!(g.set_eq(&expect).unwrap());
    }

    #[test]
    fn gamma_hk_examples() {
        let half = body(1, vec![AffineConstraint::ge(v(&[1]), qi(1))]);
        assert!(gamma_hk_check(&half).unwrap());
        let (lhs, _) = gamma_hk_sides(&half).unwrap();
        let expect = PLSet::from_constraints(2, vec![AffineConstraint::ge(v(&[1, 0]), qi(0)), AffineConstraint::le(v(&[-1, 1]), qi(0))]).unwrap();
        assert!(PLSet::from_cell(lhs).set_eq(&expect).unwrap());

        let seg = body(1, vec![AffineConstraint::le(v(&[1]), qi(1)), AffineConstraint::ge(v(&[1]), qi(-1))]);
        assert!(gamma_hk_check(&seg).unwrap());
        let (lhs, _) = gamma_hk_sides(&seg).unwrap();
        assert!(lhs.contains(&[qi(2), qi(-2)]) && !lhs.contains(&[qi(2), q(-3, 2)]));

        let point = body(1, vec![AffineConstraint::eq(v(&[1]), qi(0))]);
        let probes = vec![v(&[3, 0]), v(&[-5, 1]), v(&[0, -1])];
        assert!(gamma_hk_check_with(&point, &probes).unwrap());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
