//! Finite simplicial pairs, order complexes and relative cohomology.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::rank::{sparse_rank, SparseRow};
use super::GradedDims;
use crate::rational::Rational;

/// A simplicial complex `X` with a subcomplex `A`, vertices in `Q^n`.
#[derive(Debug, Clone)]
pub struct SimplicialPair {
    pub vertices: Vec<Vec<Rational>>,
    /// `simplices[k]` lists the `k`-simplices as increasing vertex indices.
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// `in_sub[k][i]` marks membership of `simplices[k][i]` in `A`.
    pub in_sub: Vec<Vec<bool>>,
}

impl SimplicialPair {
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|s| !s.is_empty())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    fn index(&self, k: usize) -> BTreeMap<&[usize], usize> {
        self.simplices[k].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()
    }

    /// Coboundary `δ^k : C^k(X, A) → C^{k+1}(X, A)` as sparse rows indexed by
    /// the `(k+1)`-simplices outside `A`; columns are indices into
    /// `simplices[k]`.
    pub fn coboundary(&self, k: usize) -> Vec<SparseRow> {
        if k + 1 >= self.simplices.len() {
            return Vec::new();
        }
        let idx = self.index(k);
        let mut rows = Vec::new();
        for (t, tau) in self.simplices[k + 1].iter().enumerate() {
            if self.in_sub[k + 1][t] {
                continue;
            }
            let mut row: SparseRow = Vec::with_capacity(tau.len());
            for i in 0..tau.len() {
                let mut sigma = tau.clone();
                sigma.remove(i);
                let s = idx[sigma.as_slice()];
                if !self.in_sub[k][s] {
                    row.push((s, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            row.sort_unstable();
            rows.push(row);
        }
        rows
    }

    /// Checks `δ^{k+1} ∘ δ^k = 0` for every `k`.
    pub fn coboundary_squares_to_zero(&self) -> bool {
        let top = self.simplices.len();
        for k in 0..top.saturating_sub(2) {
            let d0 = self.coboundary(k);
            let d1 = self.coboundary(k + 1);
            // Column form of δ^k: for each k-simplex, the (k+1)-rows it appears in.
            let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            let mut row_of = vec![usize::MAX; self.count(k + 1)];
            for (r, i) in (0..self.count(k + 1)).filter(|&i| !self.in_sub[k + 1][i]).enumerate() {
                row_of[i] = r;
            }
            for (r2, row) in d1.iter().enumerate() {
                for &(mid, v1) in row {
                    for &(col, v0) in &d0[row_of[mid]] {
                        *acc.entry((r2, col)).or_insert(0) += v1 * v0;
                    }
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }

    /// `H^*(X, A; Q)`.
    pub fn relative_cohomology(&self) -> GradedDims {
        let top = self.simplices.len();
        let ranks: Vec<usize> = (0..top).map(|k| sparse_rank(&self.coboundary(k))).collect();
        let mut out = GradedDims::new();
        for k in 0..top {
            let c = self.in_sub[k].iter().filter(|&&b| !b).count();
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            out.add(k as i64, c - ranks[k] - below);
        }
        out
    }

    /// One round of barycentric subdivision.
    pub fn barycentric_refinement(&self) -> SimplicialPair {
        let mut coords = Vec::new();
        let mut lower = Vec::new();
        let mut sub = Vec::new();
        let mut offsets = Vec::new();
        let mut off = 0;
        for k in 0..self.simplices.len() {
            offsets.push(off);
            off += self.simplices[k].len();
        }
        for k in 0..self.simplices.len() {
            let idx_below = if k > 0 { Some(self.index(k - 1)) } else { None };
            for (i, s) in self.simplices[k].iter().enumerate() {
                let n = self.vertices[0].len();
                let mut c = vec![Rational::zero(); n];
                for &v in s {
                    for (a, b) in c.iter_mut().zip(&self.vertices[v]) {
                        *a += b;
                    }
                }
                let len = Rational::from_integer(s.len() as i64);
                coords.push(c.iter().map(|x| x / &len).collect());
                let mut covers = Vec::new();
                if let Some(idx) = &idx_below {
                    for j in 0..s.len() {
                        let mut f = s.clone();
                        f.remove(j);
                        covers.push(offsets[k - 1] + idx[f.as_slice()]);
                    }
                }
                lower.push(covers);
                sub.push(self.in_sub[k][i]);
            }
        }
        order_complex(coords, &lower, &sub)
    }
}

/// The order complex of a graded poset given by lower covers. Vertices are
/// the poset elements; a chain is in the subcomplex iff its top element is.
pub fn order_complex(coords: Vec<Vec<Rational>>, lower: &[Vec<usize>], in_sub: &[bool]) -> SimplicialPair {
    let m = coords.len();
    // All chains ending (at the top) in each element, built bottom-up via memo.
    let mut height = vec![usize::MAX; m];
    fn h(i: usize, lower: &[Vec<usize>], memo: &mut [usize]) -> usize {
        if memo[i] != usize::MAX {
            return memo[i];
        }
        let v = lower[i].iter().map(|&j| h(j, lower, memo) + 1).max().unwrap_or(0);
        memo[i] = v;
        v
    }
    for i in 0..m {
        h(i, lower, &mut height);
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (height[i], i));
    let mut rank_of = vec![0; m];
    for (r, &i) in order.iter().enumerate() {
        rank_of[i] = r;
    }

    let mut chains_at: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m];
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut subs: Vec<Vec<bool>> = Vec::new();
    for &i in &order {
        // Elements strictly below i (transitively).
        let mut below = alloc::collections::BTreeSet::new();
        let mut stack = lower[i].clone();
        while let Some(j) = stack.pop() {
            if below.insert(j) {
                stack.extend(lower[j].iter().copied());
            }
        }
        let mut mine = vec![vec![rank_of[i]]];
        for &j in &below {
            for c in &chains_at[j] {
                let mut c2 = c.clone();
                c2.push(rank_of[i]);
                mine.push(c2);
            }
        }
        for c in &mine {
            let k = c.len() - 1;
            while simplices.len() <= k {
                simplices.push(Vec::new());
                subs.push(Vec::new());
            }
            simplices[k].push(c.clone());
            subs[k].push(in_sub[i]);
        }
        chains_at[i] = mine;
    }
    let vertices = order.iter().map(|&i| coords[i].clone()).collect();
    for (k, list) in simplices.iter_mut().enumerate() {
        let mut paired: Vec<(Vec<usize>, bool)> = list.drain(..).zip(subs[k].drain(..)).collect();
        paired.sort();
        for (s, b) in paired {
            list.push(s);
            subs[k].push(b);
        }
    }
    SimplicialPair { vertices, simplices, in_sub: subs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn interval_pair(endpoints_in_sub: bool) -> SimplicialPair {
        let coords = vec![vec![qi(0)], vec![qi(1)], vec![qi(0)]];
        let lower = vec![vec![], vec![], vec![0, 1]];
        let sub = vec![endpoints_in_sub, endpoints_in_sub, false];
        order_complex(coords, &lower, &sub)
    }

    #[test]
    fn interval_rel_boundary() {
        let p = interval_pair(true);
        assert_eq!(p.count(0), 3);
        assert_eq!(p.count(1), 2);
        assert!(p.coboundary_squares_to_zero());
        assert_eq!(p.relative_cohomology(), GradedDims::from_pairs(&[(1, 1)]));
        assert_eq!(interval_pair(false).relative_cohomology(), GradedDims::from_pairs(&[(0, 1)]));
        let r = p.barycentric_refinement();
        assert_eq!(r.relative_cohomology(), GradedDims::from_pairs(&[(1, 1)]));
    }
}
