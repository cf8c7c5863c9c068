//! Quadratic form data of a degree-n cover and its endoscopic root datum.
//!
//! The cover is encoded by an integer bilinear form D on Y; Q(y) = D(y, y)
//! and B_Q = D + D^t. Validity means Weyl invariance of Q, equivalently
//! B_Q(y, alpha_vee) = <alpha, y> Q(alpha_vee) for all roots and all y.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg;
use crate::root_datum::{DatumError, RootDatum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverError {
    /// B_Q(e_i, alpha_vee) != <alpha, e_i> Q(alpha_vee): Q is not Weyl-invariant.
    NotInvariant { root: usize, basis: usize },
    Shape(String),
    BadDegree(i64),
    Datum(DatumError),
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::NotInvariant { root, basis } => write!(
                f,
                "quadratic form not Weyl-invariant: B_Q(e_{basis}, coroot {root}) != <root {root}, e_{basis}> Q(coroot {root})"
            ),
            CoverError::Shape(s) => write!(f, "shape error: {s}"),
            CoverError::BadDegree(n) => write!(f, "cover degree must be >= 1, got {n}"),
            CoverError::Datum(e) => write!(f, "endoscopic datum: {e}"),
        }
    }
}

/// Degree-n cover data (D, n) over a root datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCoverData {
    datum: RootDatum,
    d: Vec<Vec<i64>>,
    n: i64,
}

/// The endoscopic root datum together with the lattice it lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoscopicDatum {
    /// Columns: HNF basis of Y_{Q,n} inside Y.
    pub lattice_basis: Vec<Vec<i64>>,
    /// Root datum with Y_{Q,n} as cocharacter lattice, roots alpha / n_alpha
    /// and coroots n_alpha alpha_vee, indexed compatibly with the source.
    pub datum: RootDatum,
}

impl QuadraticCoverData {
    pub fn new(datum: RootDatum, d: Vec<Vec<i64>>, n: i64) -> Result<Self, CoverError> {
        if n < 1 {
            return Err(CoverError::BadDegree(n));
        }
        let r = datum.rank();
        if d.len() != r || d.iter().any(|row| row.len() != r) {
            return Err(CoverError::Shape(format!("D must be {r} x {r}")));
        }
        let cover = QuadraticCoverData { datum, d, n };
        for root in 0..cover.datum.num_roots() {
            let qa = cover.q_of(cover.datum.coroot(root));
            for basis in 0..r {
                let mut e = vec![0i64; r];
                e[basis] = 1;
                if cover.b_of(&e, cover.datum.coroot(root)) != cover.datum.pair_root(root, &e) * qa
                {
                    return Err(CoverError::NotInvariant { root, basis });
                }
            }
        }
        Ok(cover)
    }

    /// Trivial cover (n = 1, D = 0): the linear-group degeneration.
    pub fn trivial(datum: RootDatum) -> Self {
        let r = datum.rank();
        QuadraticCoverData {
            datum,
            d: vec![vec![0; r]; r],
            n: 1,
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn d_matrix(&self) -> &[Vec<i64>] {
        &self.d
    }

    pub fn degree(&self) -> i64 {
        self.n
    }

    /// D(y, z), the unsymmetrized form (enters the torus cocycle).
    pub fn d_of(&self, y: &[i64], z: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, yi) in y.iter().enumerate() {
            for (j, zj) in z.iter().enumerate() {
                acc += yi * self.d[i][j] * zj;
            }
        }
        acc
    }

    pub fn q_of(&self, y: &[i64]) -> i64 {
        self.d_of(y, y)
    }

    /// B_Q(y, z) = Q(y + z) - Q(y) - Q(z) = (D + D^t)(y, z).
    pub fn b_of(&self, y: &[i64], z: &[i64]) -> i64 {
        self.d_of(y, z) + self.d_of(z, y)
    }

    pub fn b_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.datum.rank();
        let mut b = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                b[i][j] = self.d[i][j] + self.d[j][i];
            }
        }
        b
    }

    /// n_alpha = n / gcd(n, Q(alpha_vee)).
    pub fn n_alpha(&self, root: usize) -> i64 {
        let q = self.q_of(self.datum.coroot(root));
        self.n / linalg::gcd(self.n, q).max(1)
    }

    /// HNF basis (columns) of Y_{Q,n} = { y : B_Q(y, -) in n Z }.
    pub fn lattice_yqn(&self) -> Vec<Vec<i64>> {
        linalg::kernel_mod(&self.b_matrix(), self.n)
    }

    /// Builds the endoscopic datum on Y_{Q,n} with the modified roots.
    pub fn endoscopic_datum(&self) -> Result<EndoscopicDatum, CoverError> {
        let basis = self.lattice_yqn();
        let r = self.datum.rank();
        let mut roots = Vec::with_capacity(self.datum.num_roots());
        let mut coroots = Vec::with_capacity(self.datum.num_roots());
        for i in 0..self.datum.num_roots() {
            let na = self.n_alpha(i);
            // alpha_{Q,n} = alpha / n_alpha in coordinates dual to the basis.
            let mut root = Vec::with_capacity(r);
            for j in 0..r {
                let col: Vec<i64> = (0..r).map(|row| basis[row][j]).collect();
                let v = self.datum.pair_root(i, &col);
                if v % na != 0 {
                    return Err(CoverError::Shape(format!(
                        "pairing of root {i} with Y_Qn not divisible by n_alpha"
                    )));
                }
                root.push(v / na);
            }
            // alpha_vee_{Q,n} = n_alpha alpha_vee, in basis coordinates.
            let target: Vec<i64> = self.datum.coroot(i).iter().map(|&c| c * na).collect();
            let coroot = linalg::solve_integer(&basis, &target).ok_or_else(|| {
                CoverError::Shape(format!("coroot {i} scaled by n_alpha leaves Y_Qn"))
            })?;
            roots.push(root);
            coroots.push(coroot);
        }
        let datum = RootDatum::new(
            r,
            roots,
            coroots,
            self.datum.simple_indices().to_vec(),
            linalg::identity(r),
        )
        .map_err(CoverError::Datum)?;
        Ok(EndoscopicDatum {
            lattice_basis: basis,
            datum,
        })
    }
}

/// Minimal Weyl-invariant integral D for a datum: symmetrize the sum of
/// rank-one forms <alpha, ->^2, divide by the content, double if a diagonal
/// entry is odd, and take the upper-triangular half.
pub fn minimal_invariant_d(datum: &RootDatum) -> Vec<Vec<i64>> {
    let r = datum.rank();
    let mut b = vec![vec![0i64; r]; r];
    for root in 0..datum.num_roots() {
        let vals: Vec<i64> = (0..r)
            .map(|j| {
                let mut e = vec![0i64; r];
                e[j] = 1;
                datum.pair_root(root, &e)
            })
            .collect();
        for i in 0..r {
            for j in 0..r {
                b[i][j] += vals[i] * vals[j];
            }
        }
    }
    let mut g = 0;
    for row in &b {
        for &x in row {
            g = linalg::gcd(g, x);
        }
    }
    if g > 1 {
        for row in b.iter_mut() {
            for x in row.iter_mut() {
                *x /= g;
            }
        }
    }
    if (0..r).any(|i| b[i][i] % 2 != 0) {
        for row in b.iter_mut() {
            for x in row.iter_mut() {
                *x *= 2;
            }
        }
    }
    let mut d = vec![vec![0i64; r]; r];
    for i in 0..r {
        d[i][i] = b[i][i] / 2;
        for j in i + 1..r {
            d[i][j] = b[i][j];
        }
    }
    d
}
