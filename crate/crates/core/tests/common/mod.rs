//! Shared generators for the property suites.
#![allow(dead_code)]

use plsheaf_core::{q, qi, AffineConstraint, PLSet, Rational, Relation};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub mod suite;

pub fn constraint_with(n: usize, rel: impl Strategy<Value = Relation>) -> impl Strategy<Value = AffineConstraint> {
    (proptest::collection::vec(-2i64..=2, n), -3i64..=3, rel)
        .prop_filter("nonzero normal", |(a, _, _)| a.iter().any(|&x| x != 0))
        .prop_map(|(a, b, rel)| AffineConstraint::raw(a.into_iter().map(qi).collect(), rel, qi(b)))
}

pub fn constraint(n: usize) -> impl Strategy<Value = AffineConstraint> {
    constraint_with(n, prop_oneof![3 => Just(Relation::Le), 3 => Just(Relation::Lt), 1 => Just(Relation::Eq)])
}

/// A finite union of cells cut out by constraints with relations from `rel`,
/// or the whole space.
pub fn union_of(n: usize, rel: impl Strategy<Value = Relation> + Clone) -> impl Strategy<Value = PLSet> {
    prop_oneof![
        1 => Just(PLSet::universe(n)),
        4 => proptest::collection::vec(proptest::collection::vec(constraint_with(n, rel), 1..=2), 1..=3)
            .prop_map(move |cells| PLSet::from_conjunctions(n, cells).expect("well-formed")),
    ]
}

/// A closed set meets an open set: always locally closed.
pub fn set_in(n: usize) -> impl Strategy<Value = PLSet> {
    let closed = union_of(n, prop_oneof![3 => Just(Relation::Le), 1 => Just(Relation::Eq)]);
    let open = union_of(n, Just(Relation::Lt));
    (closed, open).prop_map(|(c, o)| c.intersect(&o).expect("same dim"))
}

pub fn semilinear_set() -> impl Strategy<Value = PLSet> {
    (1usize..=3).prop_flat_map(set_in)
}

/// `p/q` with `|p| ≤ 12`, `q ∈ 1..=4`.
pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, d)| q(p, d))
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational(), n)
}

/// Deterministic runner: the suites sample the same cases on every run.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}
