//! Face complex of a hyperplane arrangement restricted to a union of closed
//! convex polytopes, with facet incidences and orientation signs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{AffineConstraint, Cell};
use crate::linalg::{det, nullspace, rref, sub};
use crate::rational::Rational;

/// A relatively open face, identified by its sign vector against the
/// arrangement's hyperplanes.
#[derive(Debug, Clone)]
pub struct Face {
    pub sign: Vec<i8>,
    pub dim: usize,
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct FaceComplex {
    pub n: usize,
    pub faces: Vec<Face>,
    /// For each face, its facets with orientation sign `[F : G]`.
    pub facets: Vec<Vec<(usize, i64)>>,
}

fn sign_constraint(h: &AffineConstraint, s: i8) -> AffineConstraint {
    match s {
        0 => h.clone(),
        -1 => AffineConstraint::lt(h.coeffs.clone(), h.rhs.clone()),
        _ => AffineConstraint::gt(h.coeffs.clone(), h.rhs.clone()),
    }
}

fn sign_at(h: &AffineConstraint, p: &[Rational]) -> i8 {
    h.slack(p).signum() as i8
}

fn along(w: &[Rational], x: &[Rational], lambda: &Rational) -> Vec<Rational> {
    w.iter().zip(x).map(|(a, b)| a + &(lambda * &(b - a))).collect()
}

/// The signs of `h` taken on the closed cell `poly`, from its range there.
fn signs_on(poly: &Cell, w: &[Rational], h: &AffineConstraint) -> Vec<i8> {
    let neg: Vec<Rational> = h.coeffs.iter().map(|c| -c).collect();
    let hi = poly.sup_from(&h.coeffs, w).map(|(v, _)| v);
    let lo = poly.sup_from(&neg, w).map(|(v, _)| -v);
    let mut out = Vec::new();
    if lo.as_ref().map_or(true, |l| l < &h.rhs) {
        out.push(-1);
    }
    if lo.as_ref().map_or(true, |l| l <= &h.rhs) && hi.as_ref().map_or(true, |u| u >= &h.rhs) {
        out.push(0);
    }
    if hi.as_ref().map_or(true, |u| u > &h.rhs) {
        out.push(1);
    }
    out
}

/// Enumerates all faces of the arrangement lying in the closed cell `poly`.
///
/// Each node carries a point of its region. Splitting by a hyperplane takes
/// one LP per side: the optimum `x` over the closure lies past the
/// hyperplane or not, and points of the half-open segment from the current
/// point to `x` supply the new witnesses.
fn faces_in(poly: &Cell, hyperplanes: &[AffineConstraint], out: &mut BTreeMap<Vec<i8>, Vec<Rational>>) {
    struct Node {
        region: Cell,
        witness: Vec<Rational>,
        sign: Vec<i8>,
    }
    let w0 = poly.interior_witness();
    // A hyperplane missing `poly` or containing it has one sign throughout.
    let fixed: Vec<Option<i8>> = hyperplanes
        .iter()
        .map(|h| match signs_on(poly, &w0, h).as_slice() {
            [s] => Some(*s),
            _ => None,
        })
        .collect();
    let start = Node { witness: w0, region: poly.clone(), sign: Vec::new() };
    let mut stack = vec![start];
    let half = Rational::new(1, 2);
    while let Some(node) = stack.pop() {
        let depth = node.sign.len();
        if depth == hyperplanes.len() {
            out.entry(node.sign).or_insert(node.witness);
            continue;
        }
        let h = &hyperplanes[depth];
        if let Some(s) = fixed[depth] {
            let mut node = node;
            node.sign.push(s);
            stack.push(node);
            continue;
        }
        let w = &node.witness;
        let s0 = sign_at(h, w);
        let hw = crate::linalg::dot(&h.coeffs, w);
        let mut found: Vec<(i8, Option<Vec<Rational>>)> = vec![(s0, Some(w.clone()))];
        let mut touch = None;
        for s in [-1i8, 1] {
            if s == s0 {
                continue;
            }
            let dir: Vec<Rational> = h.coeffs.iter().map(|c| if s > 0 { c.clone() } else { -c }).collect();
            match node.region.sup_from(&dir, w) {
                Some((_, x)) => {
                    let hx = crate::linalg::dot(&h.coeffs, &x);
                    let past = if s > 0 { hx > h.rhs } else { hx < h.rhs };
                    if past {
                        let l0 = &(&h.rhs - &hw) / &(&hx - &hw);
                        let ls = if s0 == 0 { half.clone() } else { &(&l0 + &Rational::one()) * &half };
                        found.push((s, Some(along(w, &x, &ls))));
                        if s0 != 0 {
                            found.push((0, Some(along(w, &x, &l0))));
                        }
                    } else if s0 != 0 && hx == h.rhs {
                        // The closure touches the hyperplane at x; the region may not.
                        if let Some(hit) = node.region.with_point_from(&[h.clone()], &x) {
                            touch = Some(hit);
                        }
                    }
                }
                None => {
                    found.push((s, None));
                    if s0 != 0 {
                        found.push((0, None));
                    }
                }
            }
        }
        if let Some((region, witness)) = touch {
            let mut sign = node.sign.clone();
            sign.push(0);
            stack.push(Node { region, witness, sign });
        }
        for (s, p) in found {
            let mut sign = node.sign.clone();
            sign.push(s);
            let c = sign_constraint(h, s);
            match p {
                Some(p) => {
                    let region = node.region.with_known_point(&[c]);
                    stack.push(Node { region, witness: p, sign });
                }
                None => {
                    if let Some((region, witness)) = node.region.with_point(&[c]).expect("dimensions agree") {
                        stack.push(Node { region, witness, sign });
                    }
                }
            }
        }
    }
}

struct Frame {
    vectors: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    det_sign: i32,
}

fn frame_of(n: usize, sign: &[i8], hyperplanes: &[AffineConstraint]) -> Frame {
    let zero: Vec<Vec<Rational>> = hyperplanes
        .iter()
        .zip(sign)
        .filter(|(_, &s)| s == 0)
        .map(|(h, _)| h.coeffs.clone())
        .collect();
    let vectors = nullspace(&zero, n);
    let mut m = vectors.clone();
    let pivots = rref(&mut m, n);
    let sq: Vec<Vec<Rational>> = vectors.iter().map(|v| pivots.iter().map(|&c| v[c].clone()).collect()).collect();
    let det_sign = if sq.is_empty() { 1 } else { det(&sq).signum() };
    Frame { vectors, pivots, det_sign }
}

impl FaceComplex {
    /// Builds the face complex of `hyperplanes` inside the union of the
    /// closed cells `polys` (each a closed cell whose walls lie on
    /// `hyperplanes`).
    pub fn build(n: usize, polys: &[Cell], hyperplanes: &[AffineConstraint]) -> FaceComplex {
        let mut found: BTreeMap<Vec<i8>, Vec<Rational>> = BTreeMap::new();
        for p in polys {
            faces_in(p, hyperplanes, &mut found);
        }
        let faces: Vec<Face> = found
            .into_iter()
            .map(|(sign, witness)| {
                let zero: Vec<Vec<Rational>> = hyperplanes
                    .iter()
                    .zip(&sign)
                    .filter(|(_, &s)| s == 0)
                    .map(|(h, _)| h.coeffs.clone())
                    .collect();
                let dim = n - crate::linalg::rank(&zero, n);
                Face { sign, dim, witness }
            })
            .collect();

        let frames: Vec<Frame> = faces.iter().map(|f| frame_of(n, &f.sign, hyperplanes)).collect();
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, f) in faces.iter().enumerate() {
            by_dim[f.dim].push(i);
        }
        let mut facets = vec![Vec::new(); faces.len()];
        for k in 1..=n {
            for &fi in &by_dim[k] {
                let f = &faces[fi];
                for &gi in &by_dim[k - 1] {
                    let g = &faces[gi];
                    let below = f.sign.iter().zip(&g.sign).all(|(a, b)| *b == 0 || a == b);
                    if !below {
                        continue;
                    }
                    // Orientation: (outward vector, frame of G) against frame of F.
                    let fr = &frames[fi];
                    let out = sub(&g.witness, &f.witness);
                    let mut rows = Vec::with_capacity(k);
                    rows.push(fr.pivots.iter().map(|&c| out[c].clone()).collect::<Vec<_>>());
                    for v in &frames[gi].vectors {
                        rows.push(fr.pivots.iter().map(|&c| v[c].clone()).collect());
                    }
                    let s = det(&rows).signum() * fr.det_sign;
                    debug_assert!(s != 0);
                    facets[fi].push((gi, s as i64));
                }
            }
        }
        FaceComplex { n, faces, facets }
    }
}

/// Closed cells whose union is the closure of `cells`.
pub fn closures(cells: &[Cell]) -> Vec<Cell> {
    cells.iter().map(Cell::closure).collect()
}

/// One relative-interior point per face of the arrangement of `hyperplanes`
/// inside the closed cell `poly`, ordered by sign vector.
pub fn arrangement_witnesses(poly: &Cell, hyperplanes: &[AffineConstraint]) -> Vec<Vec<Rational>> {
    let mut found = BTreeMap::new();
    faces_in(poly, hyperplanes, &mut found);
    found.into_values().collect()
}
