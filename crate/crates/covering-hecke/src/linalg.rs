//! Small exact linear algebra over Z and Q.
//!
//! Matrices are row-major `Vec<Vec<i64>>`; a lattice basis is stored as the
//! columns of a square matrix. All sizes here are tiny (rank <= 8), so the
//! naive algorithms are fine.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::Rat;

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_vec_rat(m: &[Vec<i64>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| Rat::from_integer(*a) * b)
                .fold(Rat::zero(), |acc, x| acc + x)
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![0i64; p]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * bk[j];
            }
        }
    }
    out
}

/// Inverse of an integer matrix, provided the inverse is again integral
/// (determinant +-1). Returns `None` otherwise.
pub fn mat_inv_integer(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let rat: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect();
    let inv = mat_inv_rat(&rat)?;
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if !inv[i][j].is_integer() {
                return None;
            }
            out[i][j] = inv[i][j].to_integer();
        }
    }
    Some(out)
}

pub fn mat_inv_rat(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let t = a[col][j] * f;
                    a[r][j] -= t;
                    let t = inv[col][j] * f;
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Solves `A x = b` over Q for a general (possibly non-square) `A`,
/// setting free variables to zero. Returns `None` when inconsistent.
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pv = m[row][col];
        for j in col..=cols {
            m[row][j] /= pv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in col..=cols {
                    let t = m[row][j] * f;
                    m[r][j] -= t;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for &(r, c) in &pivots {
        x[c] = m[r][cols];
    }
    Some(x)
}

/// Column-style Hermite normal form with transform tracking.
///
/// Returns `(h, u)` with `m * u = h`, `u` unimodular, and `h` in column HNF:
/// pivots march down-right, each pivot is positive, and in every pivot row the
/// entries of the earlier columns are reduced into `[0, pivot)`.
pub fn hnf_columns_transform(m: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h: Vec<Vec<i64>> = m.to_vec();
    let mut u = identity(cols);
    let col_get = |h: &Vec<Vec<i64>>, r: usize, c: usize| h[r][c];
    let mut pivot_col = 0;
    for row in 0..rows {
        if pivot_col == cols {
            break;
        }
        // Clear the row to a single nonzero entry among columns >= pivot_col.
        loop {
            let mut nz: Vec<usize> = (pivot_col..cols)
                .filter(|&c| col_get(&h, row, c) != 0)
                .collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&c| h[row][c].unsigned_abs());
            let c0 = nz[0];
            for &c in &nz[1..] {
                let f = h[row][c].div_euclid(h[row][c0]);
                for r in 0..rows {
                    h[r][c] -= f * h[r][c0];
                }
                for r in 0..cols {
                    u[r][c] -= f * u[r][c0];
                }
            }
        }
        let Some(c) = (pivot_col..cols).find(|&c| h[row][c] != 0) else {
            continue;
        };
        if c != pivot_col {
            for r in 0..rows {
                h[r].swap(c, pivot_col);
            }
            for r in 0..cols {
                u[r].swap(c, pivot_col);
            }
        }
        if h[row][pivot_col] < 0 {
            for r in 0..rows {
                h[r][pivot_col] = -h[r][pivot_col];
            }
            for r in 0..cols {
                u[r][pivot_col] = -u[r][pivot_col];
            }
        }
        let p = h[row][pivot_col];
        for c in 0..pivot_col {
            let f = h[row][c].div_euclid(p);
            if f != 0 {
                for r in 0..rows {
                    h[r][c] -= f * h[r][pivot_col];
                }
                for r in 0..cols {
                    u[r][c] -= f * u[r][pivot_col];
                }
            }
        }
        pivot_col += 1;
    }
    (h, u)
}

/// Column HNF of the lattice spanned by the columns of `m`, with zero columns
/// dropped.
pub fn hnf_columns(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (h, _) = hnf_columns_transform(m);
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let keep: Vec<usize> = (0..cols)
        .filter(|&c| (0..rows).any(|r| h[r][c] != 0))
        .collect();
    (0..rows)
        .map(|r| keep.iter().map(|&c| h[r][c]).collect())
        .collect()
}

/// Basis (as HNF columns of a square matrix) of `{ y in Z^r : B y = 0 mod n }`.
pub fn kernel_mod(b: &[Vec<i64>], n: i64) -> Vec<Vec<i64>> {
    let r = b.len();
    assert!(n >= 1);
    // (y, x) with B y - n x = 0; the y-parts of the kernel span the lattice.
    let mut m = vec![vec![0i64; 2 * r]; r];
    for i in 0..r {
        for j in 0..r {
            m[i][j] = b[i][j];
        }
        m[i][r + i] = -n;
    }
    let (h, u) = hnf_columns_transform(&m);
    let zero_cols: Vec<usize> = (0..2 * r)
        .filter(|&c| (0..r).all(|row| h[row][c] == 0))
        .collect();
    let gens: Vec<Vec<i64>> = (0..r)
        .map(|row| zero_cols.iter().map(|&c| u[row][c]).collect())
        .collect();
    let basis = hnf_columns(&gens);
    assert_eq!(basis[0].len(), r, "kernel mod n must have full rank");
    basis
}

/// Solves `A x = b` over Z. Returns `None` when no integral solution exists.
pub fn solve_integer(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let (h, u) = hnf_columns_transform(a);
    // Forward-substitute along pivot structure of h.
    let mut z = vec![0i64; cols];
    let mut resid: Vec<i64> = b.to_vec();
    let mut col = 0;
    for row in 0..rows {
        if col < cols && h[row][col] != 0 {
            let p = h[row][col];
            if resid[row] % p != 0 {
                return None;
            }
            let f = resid[row] / p;
            z[col] = f;
            for r in 0..rows {
                resid[r] -= f * h[r][col];
            }
            col += 1;
        } else if resid[row] != 0 {
            return None;
        }
    }
    if resid.iter().any(|&x| x != 0) {
        return None;
    }
    Some(mat_vec(&u, &z))
}

/// Reduces `v` modulo the lattice spanned by the columns of the square
/// lower-triangular HNF basis `c`, yielding the canonical box representative.
pub fn lattice_reduce(c: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let r = c.len();
    let mut out = v.to_vec();
    for i in 0..r {
        let d = c[i][i];
        assert!(d > 0, "basis must be lower-triangular HNF");
        let f = out[i].div_euclid(d);
        if f != 0 {
            for row in 0..r {
                out[row] -= f * c[row][i];
            }
        }
    }
    out
}

pub fn in_lattice(c: &[Vec<i64>], v: &[i64]) -> bool {
    lattice_reduce(c, v).iter().all(|&x| x == 0)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Smallest nonnegative `k` with `k * s = t (mod modulus)`, if any.
pub fn solve_congruence(s: i64, t: i64, modulus: i64) -> Option<i64> {
    assert!(modulus >= 1);
    let s = s.rem_euclid(modulus);
    let t = t.rem_euclid(modulus);
    if modulus == 1 {
        return Some(0);
    }
    let (g, x, _) = egcd(s, modulus);
    let g = g.max(1);
    if t % g != 0 {
        return None;
    }
    let step = modulus / g;
    // x inverts s/g modulo modulus/g.
    let k = ((t / g) % step * (x.rem_euclid(step))).rem_euclid(step);
    debug_assert_eq!((k * s - t).rem_euclid(modulus), 0);
    Some(k)
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}
