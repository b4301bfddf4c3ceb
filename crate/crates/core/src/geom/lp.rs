//! Exact linear programming by a dense two-phase simplex method with Bland's
//! rule. Problem sizes here are tiny (a handful of variables, a few dozen
//! rows), so a dense tableau over rationals is the simplest correct choice.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{dot, nullspace, rank, solve, transpose};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Eq,
}

/// One row `a · x (≤ | =) b` over free variables `x`.
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub kind: RowKind,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
    obj: Vec<Rational>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if inv != Rational::one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let t = &f * &prow[j];
                row[j] -= &t;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                let t = &f * &prow[j];
                self.obj[j] -= &t;
            }
        }
        self.basis[r] = c;
    }

    /// Sets the objective row to reduced costs of `cost` (maximization):
    /// `obj[j] = cost_j − Σ cost_{basis_i} T[i][j]`, and `obj[rhs] = −value`.
    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *o -= &(cb * t);
                }
            }
        }
        self.obj = obj;
    }

    fn value(&self) -> Rational {
        -&self.obj[self.ncols]
    }

    /// Maximizes the current objective. Returns false if unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(c) = (0..self.ncols).find(|&j| allowed[j] && self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximizes `cost · x` subject to `rows`, with `x ∈ Q^n` free.
pub fn maximize(n: usize, rows: &[Row], cost: &[Rational]) -> LpOutcome {
    debug_assert_eq!(cost.len(), n);
    let m = rows.len();
    // Columns: x⁺ (n), x⁻ (n), one slack per Le row, one artificial per row needing it.
    let n_slack = rows.iter().filter(|r| r.kind == RowKind::Le).count();
    let needs_art: Vec<bool> = rows
        .iter()
        .map(|r| r.kind == RowKind::Eq || r.rhs.is_negative())
        .collect();
    let n_art = needs_art.iter().filter(|&&b| b).count();
    let ncols = 2 * n + n_slack + n_art;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        basis: vec![0; m],
        ncols,
        obj: Vec::new(),
    };
    let (mut si, mut ai) = (2 * n, 2 * n + n_slack);
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        let flip = r.rhs.is_negative();
        for (j, a) in r.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = if flip { -a } else { a.clone() };
            row[n + j] = -&a;
            row[j] = a;
        }
        row[ncols] = if flip { -&r.rhs } else { r.rhs.clone() };
        if r.kind == RowKind::Le {
            row[si] = if flip { -Rational::one() } else { Rational::one() };
            if !needs_art[i] {
                t.basis[i] = si;
            }
            si += 1;
        }
        if needs_art[i] {
            row[ai] = Rational::one();
            t.basis[i] = ai;
            ai += 1;
        }
        t.rows.push(row);
    }

    let art_start = 2 * n + n_slack;
    if n_art > 0 {
        let mut cost1 = vec![Rational::zero(); ncols];
        for c in cost1.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        t.set_objective(&cost1);
        let allowed = vec![true; ncols];
        t.optimize(&allowed);
        if !t.value().is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.swap_remove(i);
                        t.basis.swap_remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost2 = vec![Rational::zero(); ncols];
    for (j, c) in cost.iter().enumerate() {
        cost2[j] = c.clone();
        cost2[n + j] = -c;
    }
    t.set_objective(&cost2);
    let allowed: Vec<bool> = (0..ncols).map(|j| j < art_start).collect();
    if !t.optimize(&allowed) {
        return LpOutcome::Unbounded;
    }
    let mut vals = vec![Rational::zero(); ncols];
    for (i, &b) in t.basis.iter().enumerate() {
        vals[b] = t.rows[i][ncols].clone();
    }
    let x = (0..n).map(|j| &vals[j] - &vals[n + j]).collect();
    LpOutcome::Optimal { value: t.value(), x }
}

/// Smallest step `t ≥ 0` along `d` at which an inactive inequality row
/// becomes tight, with the lowest such row index; `None` if unblocked.
/// Also returns every row's rate `a·d`.
fn ratio(rows: &[Row], active: &[bool], slack: &[Rational], d: &[Rational]) -> (Option<(usize, Rational)>, Vec<Rational>) {
    let rates: Vec<Rational> = rows.iter().map(|r| dot(&r.coeffs, d)).collect();
    let mut best: Option<(usize, Rational)> = None;
    for (i, r) in rows.iter().enumerate() {
        if active[i] || r.kind == RowKind::Eq || !rates[i].is_positive() {
            continue;
        }
        let t = &slack[i] / &rates[i];
        if best.as_ref().map_or(true, |(_, bt)| t < *bt) {
            best = Some((i, t));
        }
    }
    (best, rates)
}

fn step(x: &mut [Rational], slack: &mut [Rational], d: &[Rational], rates: &[Rational], t: &Rational) {
    if t.is_zero() {
        return;
    }
    for (xi, di) in x.iter_mut().zip(d) {
        if !di.is_zero() {
            *xi += &(t * di);
        }
    }
    for (si, ri) in slack.iter_mut().zip(rates) {
        if !ri.is_zero() {
            *si -= &(t * ri);
        }
    }
}

/// [`maximize`] started from a known feasible point `w`.
///
/// Active-set simplex in `x`-space: walk from `w` to a vertex, then
/// exchange tight rows by Bland's rule. Each step costs `O(mn + n³)`
/// instead of a full tableau pivot. Falls back to [`maximize`] if the
/// walk runs unusually long.
pub fn maximize_from(n: usize, rows: &[Row], cost: &[Rational], w: &[Rational]) -> LpOutcome {
    debug_assert!(rows.iter().all(|r| {
        let s = &r.rhs - &dot(&r.coeffs, w);
        if r.kind == RowKind::Eq { s.is_zero() } else { !s.is_negative() }
    }));
    let mut x = w.to_vec();
    let mut slack: Vec<Rational> = rows.iter().map(|r| &r.rhs - &dot(&r.coeffs, w)).collect();
    let mut active = vec![false; rows.len()];
    // Basis rows: a row index, or a lineality direction held fixed.
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut tags: Vec<Option<usize>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if r.kind == RowKind::Eq && basis.len() < n {
            basis.push(r.coeffs.clone());
            if rank(&basis, n) == basis.len() {
                tags.push(Some(i));
                active[i] = true;
            } else {
                basis.pop();
            }
        }
    }
    while basis.len() < n {
        let mut d = nullspace(&basis, n).swap_remove(0);
        if dot(cost, &d).is_negative() {
            d = d.iter().map(|v| -v).collect();
        }
        let mut hit = ratio(rows, &active, &slack, &d);
        if hit.0.is_none() && dot(cost, &d).is_zero() {
            d = d.iter().map(|v| -v).collect();
            hit = ratio(rows, &active, &slack, &d);
        }
        match hit {
            (Some((i, t)), rates) => {
                step(&mut x, &mut slack, &d, &rates, &t);
                basis.push(rows[i].coeffs.clone());
                tags.push(Some(i));
                active[i] = true;
            }
            (None, _) if dot(cost, &d).is_positive() => return LpOutcome::Unbounded,
            (None, _) => {
                basis.push(d);
                tags.push(None);
            }
        }
    }
    let cap = 20 * (rows.len() + n) + 50;
    for _ in 0..cap {
        let lam = solve(&transpose(&basis, n), cost, n).expect("basis is nonsingular");
        let leave = (0..n)
            .filter(|&k| matches!(tags[k], Some(i) if rows[i].kind == RowKind::Le) && lam[k].is_negative())
            .min_by_key(|&k| tags[k]);
        let Some(k) = leave else {
            return LpOutcome::Optimal { value: dot(cost, &x), x };
        };
        let mut e = vec![Rational::zero(); n];
        e[k] = -Rational::one();
        let d = solve(&basis, &e, n).expect("basis is nonsingular");
        let (Some((i, t)), rates) = ratio(rows, &active, &slack, &d) else {
            return LpOutcome::Unbounded;
        };
        step(&mut x, &mut slack, &d, &rates, &t);
        active[tags[k].expect("inequality row")] = false;
        active[i] = true;
        basis[k] = rows[i].coeffs.clone();
        tags[k] = Some(i);
    }
    maximize(n, rows, cost)
}
