//! Polygonal stand-in for the region `{x₁² − x₂² ≤ 1}` between the two
//! branches of a hyperbola, rebuilt for each half-plane `{⟨x,y⟩ ≤ t}`.
//!
//! Rational points of the right branch are `P(m) = ((m + 1/m)/2, (m − 1/m)/2)`
//! for `m > 0`, and the left branch is the mirror image. The line
//! `⟨x,y⟩ = t` meets the right branch where
//! `(y₁+y₂)m² − 2tm + (y₁−y₂) = 0` and the left one where
//! `(y₂−y₁)m² − 2tm − (y₁+y₂) = 0`. The polygon uses vertices that
//! separate all positive roots (or hit them exactly when rational), the
//! parabola apex, and end parameters beyond every root; its end rays run
//! parallel to the asymptotes. Each branch of the polygon therefore crosses
//! the line in the same pattern as the true branch, and the pair
//! (region, region ∩ half-plane) has the same topology.

use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{AffineConstraint, PLSet};
use crate::rational::Rational;

fn eval(a: &Rational, b: &Rational, c: &Rational, m: &Rational) -> Rational {
    &(&(a * m) * m) + &(&(b * m) + c)
}

/// A power of two above `floor` past which `a m² + b m + c` keeps the sign it
/// has at infinity.
fn upper_end(a: &Rational, b: &Rational, c: &Rational, floor: &Rational) -> Rational {
    let two = Rational::from_integer(2);
    let mut m = if floor > &Rational::one() { floor * &two } else { two.clone() };
    loop {
        let ok = if !a.is_zero() {
            eval(a, b, c, &m).signum() == a.signum() && {
                let apex = -(b / &(a * &two));
                m > apex
            }
        } else if !b.is_zero() {
            m > -(c / b)
        } else {
            true
        };
        if ok {
            return m;
        }
        m = &m * &two;
    }
}

/// The apex (or the root, for a linear polynomial) when positive, and two
/// end parameters outside every positive root.
fn branch_params(a: &Rational, b: &Rational, c: &Rational, out: &mut Vec<Rational>) {
    let zero = Rational::zero();
    if !a.is_zero() {
        let apex = -(b / &(a * &Rational::from_integer(2)));
        if apex > zero {
            out.push(apex);
        }
    } else if !b.is_zero() {
        let root = -(c / b);
        if root > zero {
            out.push(root);
        }
    }
    let floor = out.iter().max().cloned().unwrap_or_else(Rational::one);
    out.push(upper_end(a, b, c, &floor));
    // m ↦ 1/m turns a m² + b m + c into c u² + b u + a.
    let floor_u = out.iter().filter(|m| m.is_positive()).map(Rational::recip).max().unwrap_or_else(Rational::one);
    out.push(upper_end(c, b, a, &floor_u).recip());
}

fn point(m: &Rational) -> (Rational, Rational) {
    let inv = m.recip();
    let half = Rational::new(1, 2);
    (&(m + &inv) * &half, &(m - &inv) * &half)
}

/// Region between the polygonal branches, adapted to `{⟨x,y⟩ ≤ t}`.
pub fn surrogate(y: &[Rational], t: &Rational) -> PLSet {
    let two_t = t * &Rational::from_integer(2);
    let mut params = vec![Rational::one()];
    branch_params(&(&y[0] + &y[1]), &-&two_t, &(&y[0] - &y[1]), &mut params);
    branch_params(&(&y[1] - &y[0]), &-&two_t, &-&(&y[0] + &y[1]), &mut params);
    params.sort();
    params.dedup();
    let pts: Vec<(Rational, Rational)> = params.iter().map(point).collect();

    let le = |c: [Rational; 2], r: Rational| AffineConstraint::le(c.to_vec(), r);
    let one = Rational::one();
    let zero = Rational::zero();
    let mut cells = Vec::new();
    // Strips between consecutive vertex heights: |x₁| under the chord.
    for w in pts.windows(2) {
        let ((x0, h0), (x1, h1)) = (&w[0], &w[1]);
        let dh = h1 - h0;
        let dx = x1 - x0;
        let rhs = &(&dh * x0) - &(&dx * h0);
        cells.push(vec![
            le([zero.clone(), -&one], -h0.clone()),
            le([zero.clone(), one.clone()], h1.clone()),
            le([dh.clone(), -&dx], rhs.clone()),
            le([-&dh, -&dx], rhs),
        ]);
    }
    // End pieces along the asymptote directions (1, 1) and (1, −1).
    let (xt, ht) = pts.last().expect("nonempty");
    cells.push(vec![
        le([zero.clone(), -&one], -ht.clone()),
        le([one.clone(), -&one], xt - ht),
        le([-&one, -&one], xt - ht),
    ]);
    let (xb, hb) = &pts[0];
    cells.push(vec![
        le([zero.clone(), one.clone()], hb.clone()),
        le([one.clone(), one.clone()], xb + hb),
        le([-&one, one.clone()], xb + hb),
    ]);
    PLSet::from_conjunctions(2, cells).expect("dimensions agree")
}

/// `{y₁² ≥ y₂²} ∩ {t ≥ −√(y₁² − y₂²)}`, decided exactly.
pub fn predicate(yt: &[Rational]) -> bool {
    let d = &(&yt[0] * &yt[0]) - &(&yt[1] * &yt[1]);
    !d.is_negative() && (!yt[2].is_negative() || &yt[2] * &yt[2] <= d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn vertices_lie_on_the_hyperbola() {
        for m in [q(1, 3), qi(1), qi(2), q(7, 5)] {
            let (a, b) = point(&m);
            assert_eq!(&(&a * &a) - &(&b * &b), qi(1));
        }
    }

    #[test]
    fn surrogate_contains_the_axis_and_excludes_far_points() {
        let s = surrogate(&[qi(1), qi(0)], &qi(0));
        for p in [[qi(0), qi(0)], [qi(1), qi(0)], [qi(-1), qi(0)], [qi(0), qi(50)], [qi(30), qi(-30)]] {
            assert!(s.member(&p), "{p:?}");
        }
        for p in [[qi(2), qi(0)], [qi(-2), qi(1)], [qi(40), qi(10)]] {
            assert!(!s.member(&p), "{p:?}");
        }
    }

    #[test]
    fn predicate_examples() {
        assert!(predicate(&[qi(5), qi(3), qi(-4)]));
        assert!(!predicate(&[qi(5), qi(3), q(-41, 10)]));
        assert!(!predicate(&[qi(1), qi(2), qi(0)]));
        assert!(predicate(&[qi(0), qi(0), qi(0)]));
        assert!(!predicate(&[qi(1), qi(1), q(-1, 100)]));
    }
}
