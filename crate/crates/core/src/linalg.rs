//! Dense exact linear algebra over [`Rational`].

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// `vᵀ M`, i.e. the row vector `Σ v_i M_i`.
pub fn vec_mat(v: &[Rational], m: &[Vec<Rational>], cols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); cols];
    for (vi, row) in v.iter().zip(m) {
        if vi.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *o += &(vi * r);
            }
        }
    }
    out
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>], cols: usize) -> Matrix {
    a.iter().map(|row| vec_mat(row, b, cols)).collect()
}

pub fn transpose(m: &[Vec<Rational>], cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if inv != Rational::one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    let mut m: Matrix = rows.to_vec();
    rref(&mut m, cols).len()
}

/// A basis of `{x : M x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Matrix = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[i][free];
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `M x = b`, or `None` if inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], cols: usize) -> Option<Vec<Rational>> {
    let mut m: Matrix = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = m[i][cols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix by elimination.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m: Matrix = rows.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= &t;
            }
        }
    }
    d
}
