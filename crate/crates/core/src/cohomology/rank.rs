//! Exact rank of sparse integer matrices by fraction-free elimination.
//!
//! Rows are reduced against an echelon basis kept in a column-indexed map;
//! every stored row is divided by its content so entries stay small. The
//! fast path runs on `i64` with checked arithmetic and restarts on `BigInt`
//! if anything overflows.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

fn reduce_content<T: Integer + Signed + Clone>(row: &mut [(usize, T)]) {
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.clone() / g.clone();
        }
    }
}

/// `a·r − b·p`, merged by column.
fn combine<T>(a: &T, r: &[(usize, T)], b: &T, p: &[(usize, T)]) -> Option<Vec<(usize, T)>>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
        let cj = p.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a.checked_mul(&r[i - 1].1)?)
        } else if cj < ci {
            j += 1;
            (cj, T::zero().checked_sub(&b.checked_mul(&p[j - 1].1)?)?)
        } else {
            i += 1;
            j += 1;
            let x = a.checked_mul(&r[i - 1].1)?;
            let y = b.checked_mul(&p[j - 1].1)?;
            (ci, x.checked_sub(&y)?)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    Some(out)
}

fn rank_generic<T>(rows: impl Iterator<Item = Vec<(usize, T)>>) -> Option<usize>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
    for mut r in rows {
        reduce_content(&mut r);
        while let Some(&(c, _)) = r.first() {
            match pivots.get(&c) {
                None => {
                    pivots.insert(c, r);
                    break;
                }
                Some(p) => {
                    let (pa, ra) = (p[0].1.clone(), r[0].1.clone());
                    let g = pa.gcd(&ra);
                    let (a, b) = (pa / g.clone(), ra / g);
                    r = combine(&a, &r, &b, p)?;
                    reduce_content(&mut r);
                }
            }
        }
    }
    Some(pivots.len())
}

/// Rank over `Q` of a sparse integer matrix given by rows.
pub fn sparse_rank(rows: &[SparseRow]) -> usize {
    if let Some(r) = rank_generic(rows.iter().cloned()) {
        return r;
    }
    rank_generic(rows.iter().map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()))
        .expect("big integers do not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use alloc::vec;
    use crate::rational::qi;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(sparse_rank(&[]), 0);
        assert_eq!(sparse_rank(&[vec![(0, 1), (1, -1)], vec![(1, 1), (2, -1)], vec![(0, 1), (2, -1)]]), 2);
        assert_eq!(sparse_rank(&[vec![(3, 7)]]), 1);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 3;
        let rows = vec![vec![(0, big), (1, 1)], vec![(0, big - 1), (1, big)], vec![(0, 1), (1, big - 7)]];
        assert_eq!(sparse_rank(&rows), 2);
    }

    proptest! {
        #[test]
        fn agrees_with_dense(m in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 0..7)) {
            let sparse: Vec<SparseRow> = m.iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
                .collect();
            let dense: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect();
            prop_assert_eq!(sparse_rank(&sparse), rank(&dense, 5));
        }
    }
}
