//! The `hc` property suite, one function per property. Each runs `cases`
//! deterministic random inputs and reports the first failure.

use plsheaf_core::cohomology::{hc_cellular_only, hc_model, hc_with_radius};
use plsheaf_core::{critical_radius, hc, qi, AffineConstraint, GradedDims, PLSet, Rational};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

use super::{constraint, runner, semilinear_set, set_in};

pub type Outcome = Result<(), String>;

fn check(cases: u32, strategy: impl Strategy<Value = PLSet>, f: impl Fn(&PLSet) -> Result<(), TestCaseError>) -> Outcome {
    runner(cases).run(&strategy, |s| f(&s)).map_err(|e| e.to_string())
}

pub fn radius_independence(cases: u32) -> Outcome {
    check(cases, semilinear_set(), |s| {
        let h = hc(s).unwrap();
        let r = critical_radius(s);
        let far = &r * &qi(3) + qi(2);
        prop_assert_eq!(&hc_with_radius(s, &r).unwrap(), &h);
        prop_assert_eq!(&hc_with_radius(s, &far).unwrap(), &h);
        Ok(())
    })
}

pub fn convex_shortcut_agrees(cases: u32) -> Outcome {
    check(cases, semilinear_set(), |s| {
        prop_assert_eq!(hc_cellular_only(s).unwrap(), hc(s).unwrap());
        Ok(())
    })
}

pub fn refinement_independence(cases: u32) -> Outcome {
    check(cases, (1usize..=2).prop_flat_map(set_in), |s| {
        let h = hc(s).unwrap();
        let model = hc_model(s).unwrap();
        prop_assert!(model.coboundary_squares_to_zero());
        prop_assert_eq!(&model.relative_cohomology(), &h);
        prop_assert_eq!(&model.barycentric_refinement().relative_cohomology(), &h);
        Ok(())
    })
}

/// Pairs in total dimension ≤ 3.
pub fn kunneth(cases: u32) -> Outcome {
    let pair = (1usize..=2).prop_flat_map(|n| (set_in(n), set_in(1)));
    runner(cases)
        .run(&pair, |(a, b)| {
            let want = hc(&a).unwrap().tensor(&hc(&b).unwrap());
            prop_assert_eq!(hc(&a.product(&b)).unwrap(), want);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `χ_c(P) = χ_c(P ∩ H) + χ_c(P ∖ H)` for a random half-space or hyperplane `H`.
pub fn euler_additivity(cases: u32) -> Outcome {
    let cut = (1usize..=3).prop_flat_map(|n| (set_in(n), constraint(n)));
    runner(cases)
        .run(&cut, |(s, c)| {
            let inside = s.restrict(&[c.clone()]).unwrap();
            let outside = s.subtract(&PLSet::from_constraints(s.dim(), vec![c]).unwrap()).unwrap();
            let chi = |p: &PLSet| hc(p).unwrap().euler_characteristic();
            prop_assert_eq!(chi(&s), chi(&inside) + chi(&outside));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn unit_box(n: usize, closed: bool) -> PLSet {
    let mut cs = Vec::new();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = qi(1);
        if closed {
            cs.push(AffineConstraint::ge(e.clone(), qi(0)));
            cs.push(AffineConstraint::le(e, qi(1)));
        } else {
            cs.push(AffineConstraint::gt(e.clone(), qi(0)));
            cs.push(AffineConstraint::lt(e, qi(1)));
        }
    }
    PLSet::from_constraints(n, cs).unwrap()
}

pub fn normalizations() -> Outcome {
    let expect = |what: &str, got: GradedDims, want: GradedDims| {
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: got {got}, want {want}"))
        }
    };
    for n in 0..=4usize {
        expect(&format!("Q^{n}"), hc(&PLSet::universe(n)).unwrap(), GradedDims::single(n as i64))?;
    }
    for n in 1..=3 {
        expect(&format!("open box in Q^{n}"), hc(&unit_box(n, false)).unwrap(), GradedDims::single(n as i64))?;
        expect(&format!("closed box in Q^{n}"), hc(&unit_box(n, true)).unwrap(), GradedDims::single(0))?;
    }
    let half_open =
        PLSet::from_constraints(1, vec![AffineConstraint::ge(vec![qi(1)], qi(0)), AffineConstraint::lt(vec![qi(1)], qi(1))]).unwrap();
    expect("[0, 1)", hc(&half_open).unwrap(), GradedDims::new())?;
    expect("empty set", hc(&PLSet::empty(2)).unwrap(), GradedDims::new())
}

/// Guards against a generator that only produces trivial sets: at least half
/// nonempty and a few with total Betti number ≥ 2.
pub fn generator_coverage(cases: u32) -> Outcome {
    let mut runner = runner(cases);
    let strategy = semilinear_set();
    let (mut nonempty, mut rich) = (0, 0);
    for _ in 0..cases {
        let s = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let h = hc(&s).map_err(|e| e.to_string())?;
        nonempty += usize::from(!h.is_zero());
        rich += usize::from(h.iter().map(|(_, d)| d).sum::<usize>() >= 2);
    }
    if nonempty >= cases as usize / 2 && rich >= 5 {
        Ok(())
    } else {
        Err(format!("{nonempty} nonempty and {rich} rich sets out of {cases}"))
    }
}

/// Every property, in order, with its name.
pub fn all(cases: u32) -> Vec<(&'static str, Outcome)> {
    vec![
        ("radius independence", radius_independence(cases)),
        ("convex shortcut", convex_shortcut_agrees(cases)),
        ("barycentric refinement", refinement_independence(cases)),
        ("Künneth", kunneth(cases)),
        ("Euler additivity", euler_additivity(cases)),
        ("normalization", normalizations()),
        ("generator coverage", generator_coverage(cases)),
    ]
}
