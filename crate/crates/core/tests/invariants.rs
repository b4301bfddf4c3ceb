//! Compositional laws of the set calculus, convex-analysis identities and
//! stalk laws of the object layer, over seeded random inputs.

mod common;

use common::{constraint_with, point, rational, runner, union_of};
use plsheaf_core::convex::{cone_generators, polar_cone, recession_cone, support_function, ConvexBody};
use plsheaf_core::linalg::identity;
use plsheaf_core::sheaf::ShiftedTerm;
use plsheaf_core::{cell_nonempty, gamma_hk_check, qi, AffineConstraint, AffineMap, Cell, ConstructibleObject, PLSet, Rational, Relation};
use proptest::prelude::*;

const CASES: u32 = 50;

fn any_rel() -> impl Strategy<Value = Relation> + Clone {
    prop_oneof![3 => Just(Relation::Le), 3 => Just(Relation::Lt), 1 => Just(Relation::Eq)]
}

fn closed_rel() -> impl Strategy<Value = Relation> + Clone {
    prop_oneof![4 => Just(Relation::Le), 1 => Just(Relation::Eq)]
}

fn any_set(n: usize) -> impl Strategy<Value = PLSet> {
    union_of(n, any_rel())
}

fn affine_map(n_in: usize, n_out: usize) -> impl Strategy<Value = AffineMap> {
    (proptest::collection::vec(proptest::collection::vec(-2i64..=2, n_in), n_out), proptest::collection::vec(-2i64..=2, n_out))
        .prop_map(move |(m, b)| {
            let m = m.into_iter().map(|r| r.into_iter().map(qi).collect()).collect();
            AffineMap::new(m, b.into_iter().map(qi).collect(), n_in).unwrap()
        })
}

#[test]
fn membership_is_compositional() {
    let input = (1usize..=3).prop_flat_map(|n| {
        (
            any_set(n),
            any_set(n),
            any_set(1),
            (1usize..=3).prop_flat_map(move |k| affine_map(k, n)),
            point(n),
            proptest::collection::vec(point(n + 1), 1000),
        )
    });
    runner(CASES)
        .run(&input, |(a, b, c, f, v, pts)| {
            let n = a.dim();
            let meet = a.intersect(&b).unwrap();
            let join = a.union(&b).unwrap();
            let minus = a.subtract(&b).unwrap();
            let prod = a.product(&c);
            let moved = a.translate(&v).unwrap();
            let neg = a.negate();
            let pre = a.preimage(&f).unwrap();
            for p in &pts {
                let x = &p[..n];
                let (ia, ib) = (a.member(x), b.member(x));
                prop_assert_eq!(meet.member(x), ia && ib);
                prop_assert_eq!(join.member(x), ia || ib);
                prop_assert_eq!(minus.member(x), ia && !ib);
                prop_assert_eq!(prod.member(p), ia && c.member(&p[n..]));
                let back: Vec<Rational> = x.iter().zip(&v).map(|(x, v)| x - v).collect();
                prop_assert_eq!(moved.member(x), a.member(&back));
                let flip: Vec<Rational> = x.iter().map(|x| -x).collect();
                prop_assert_eq!(neg.member(x), a.member(&flip));
                let y = &p[..f.in_dim().min(n + 1)];
                if y.len() == f.in_dim() {
                    prop_assert_eq!(pre.member(y), a.member(&f.apply(y)));
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn disjointify_preserves_points_and_separates_cells() {
    let input = (1usize..=3).prop_flat_map(|n| (any_set(n), proptest::collection::vec(point(n), 200)));
    runner(CASES)
        .run(&input, |(a, pts)| {
            let d = a.disjointify();
            for p in &pts {
                prop_assert_eq!(d.member(p), a.member(p));
                prop_assert!(d.cells().iter().filter(|c| c.contains(p)).count() <= 1);
            }
            let cells = d.cells();
            for i in 0..cells.len() {
                for j in i + 1..cells.len() {
                    prop_assert!(cells[i].meet(&cells[j]).unwrap().is_none());
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn emptiness_agrees_with_point_search() {
    let input = (1usize..=3).prop_flat_map(|n| {
        (Just(n), proptest::collection::vec(constraint_with(n, any_rel()), 1..=5), proptest::collection::vec(point(n), 300))
    });
    runner(CASES * 4)
        .run(&input, |(n, cs, pts)| {
            let found = pts.iter().any(|p| cs.iter().all(|c| c.satisfied(p)));
            let nonempty = cell_nonempty(&cs, n).unwrap();
            if found {
                prop_assert!(nonempty);
            }
            if let Some(cell) = Cell::new(n, cs.clone()).unwrap() {
                prop_assert!(nonempty);
                let w = cell.interior_witness();
                prop_assert!(cs.iter().all(|c| c.satisfied(&w)));
            } else {
                prop_assert!(!nonempty);
            }
            Ok(())
        })
        .unwrap();
}

fn body(n: usize) -> impl Strategy<Value = ConvexBody> {
    proptest::collection::vec(constraint_with(n, closed_rel()), 1..=5)
        .prop_filter_map("nonempty", move |cs| ConvexBody::from_constraints(n, cs).ok())
}

#[test]
fn support_function_is_sublinear() {
    let input = (1usize..=3).prop_flat_map(|n| (body(n), point(n), point(n), rational()));
    runner(CASES * 2)
        .run(&input, |(a, y1, y2, lambda)| {
            let lambda = lambda.abs() + qi(1);
            let scaled: Vec<Rational> = y1.iter().map(|x| x * &lambda).collect();
            let h1 = support_function(&a, &y1).unwrap();
            prop_assert_eq!(support_function(&a, &scaled).unwrap(), h1.scale(&lambda));
            let sum: Vec<Rational> = y1.iter().zip(&y2).map(|(a, b)| a + b).collect();
            let h2 = support_function(&a, &y2).unwrap();
            prop_assert!(support_function(&a, &sum).unwrap() <= h1.add(&h2));
            Ok(())
        })
        .unwrap();
}

#[test]
fn bipolar_of_closed_cone_is_itself() {
    let cone = (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec((proptest::collection::vec(-2i64..=2, n), closed_rel()), 1..=4).prop_map(move |rows| {
            let cs = rows
                .into_iter()
                .map(|(a, rel)| AffineConstraint::raw(a.into_iter().map(qi).collect(), rel, Rational::zero()))
                .collect();
            Cell::new(n, cs).unwrap().expect("contains the origin")
        })
    });
    runner(CASES)
        .run(&cone, |g| {
            let id = identity(g.dim());
            let back = polar_cone(&polar_cone(&g, &id).unwrap(), &id).unwrap();
            prop_assert!(PLSet::from_cell(back).set_eq(&PLSet::from_cell(g)).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn gamma_hk_on_random_line_free_bodies() {
    let input = (1usize..=2).prop_flat_map(body).prop_filter("line-free", |a| {
        cone_generators(&recession_cone(a)).map(|g| g.lineality.is_empty()).unwrap_or(false)
    });
    runner(CASES)
        .run(&input, |a| {
            prop_assert!(gamma_hk_check(&a).unwrap());
            Ok(())
        })
        .unwrap();
}

fn object(n: usize) -> impl Strategy<Value = ConstructibleObject> {
    proptest::collection::vec((any_set(n), -2i64..=2, 1usize..=2), 1..=3).prop_map(move |ts| {
        ConstructibleObject::new(n, ts.into_iter().map(|(s, d, r)| ShiftedTerm::new(s, d, r)).collect()).unwrap()
    })
}

#[test]
fn stalk_laws() {
    let input = (1usize..=2).prop_flat_map(|n| {
        (object(n), object(n), object(1), (1usize..=2).prop_flat_map(move |k| affine_map(k, n)), proptest::collection::vec(point(n + 1), 50))
    });
    runner(CASES)
        .run(&input, |(f, g, h, m, pts)| {
            let n = f.dim();
            let tensor = f.tensor(&g).unwrap();
            let sum = f.dsum(&g).unwrap();
            let ext = f.external(&h);
            let pulled = f.pullback_affine(&m).unwrap();
            for p in &pts {
                let x = &p[..n];
                let (sf, sg) = (f.stalk(x), g.stalk(x));
                prop_assert_eq!(tensor.stalk(x), sf.tensor(&sg));
                prop_assert_eq!(sum.stalk(x), sf.plus(&sg));
                prop_assert_eq!(ext.stalk(p), sf.tensor(&h.stalk(&p[n..])));
                let y = &p[..m.in_dim()];
                prop_assert_eq!(pulled.stalk(y), f.stalk(&m.apply(y)));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn shifts_move_degrees() {
    let input = (object(2), -3i64..=3, point(2));
    runner(CASES)
        .run(&input, |(f, d, p)| {
            prop_assert_eq!(f.shift(d).stalk(&p), f.stalk(&p).shifted(-d));
            Ok(())
        })
        .unwrap();
}
