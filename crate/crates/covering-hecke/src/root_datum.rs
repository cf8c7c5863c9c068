//! Root data, Weyl groups, and the extended affine Weyl group.
//!
//! A `RootDatum` stores aligned root/coroot lists together with the pairing
//! matrix between the character lattice X and the cocharacter lattice Y.
//! Extended affine elements are pairs `w = w0 * t_{y0}` acting on
//! V = Y (x) Q by `v -> w0(v + y0)`; affine roots `alpha + k` are pairs of a
//! root index and an integer offset.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

use crate::linalg;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumError {
    /// Pairing of a root with its own coroot is not 2.
    BadSelfPairing { root: usize },
    /// The root list is not closed under the reflections it defines.
    NotReflectionClosed { root: usize, reflection: usize },
    /// Simple roots are dependent or some root is not a signed integral
    /// combination of them.
    BadSimpleSystem(String),
    /// Mismatched dimensions in the input data.
    Shape(String),
    /// Unknown preset name or unusable parameter.
    BadPreset(String),
}

impl fmt::Display for DatumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumError::BadSelfPairing { root } => {
                write!(f, "pairing of root {root} with its coroot is not 2")
            }
            DatumError::NotReflectionClosed { root, reflection } => write!(
                f,
                "root list not closed: reflection {reflection} applied to root {root}"
            ),
            DatumError::BadSimpleSystem(s) => write!(f, "bad simple system: {s}"),
            DatumError::Shape(s) => write!(f, "shape error: {s}"),
            DatumError::BadPreset(s) => write!(f, "bad preset: {s}"),
        }
    }
}

/// Affine root `alpha + k`, referencing a root of the ambient datum by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub offset: i64,
}

impl AffineRoot {
    pub fn new(root: usize, offset: i64) -> Self {
        AffineRoot { root, offset }
    }
}

/// Element of the finite Weyl group as an integer matrix acting on Y.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: linalg::identity(rank),
        }
    }

    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Self {
        WeylElement { matrix }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.rank())
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: linalg::mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn inv(&self) -> WeylElement {
        WeylElement {
            matrix: linalg::mat_inv_integer(&self.matrix)
                .expect("Weyl matrices are unimodular"),
        }
    }

    pub fn apply(&self, y: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.matrix, y)
    }

    pub fn apply_rat(&self, y: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec_rat(&self.matrix, y)
    }
}

/// Element `w = w0 * t_{y0}` of the extended affine Weyl group Y x| W.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtendedAffineElement {
    pub linear: WeylElement,
    pub translation: Vec<i64>,
}

impl ExtendedAffineElement {
    pub fn identity(rank: usize) -> Self {
        ExtendedAffineElement {
            linear: WeylElement::identity(rank),
            translation: vec![0; rank],
        }
    }

    pub fn from_weyl(w: WeylElement) -> Self {
        let rank = w.rank();
        ExtendedAffineElement {
            linear: w,
            translation: vec![0; rank],
        }
    }

    pub fn translation_by(y: &[i64]) -> Self {
        ExtendedAffineElement {
            linear: WeylElement::identity(y.len()),
            translation: y.to_vec(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|&x| x == 0)
    }

    /// Group law: (w0, y0)(w0', y0') = (w0 w0', w0'^{-1} y0 + y0').
    pub fn mul(&self, other: &ExtendedAffineElement) -> ExtendedAffineElement {
        let linear = self.linear.mul(&other.linear);
        let mut translation = other.linear.inv().apply(&self.translation);
        for (t, o) in translation.iter_mut().zip(&other.translation) {
            *t += o;
        }
        ExtendedAffineElement {
            linear,
            translation,
        }
    }

    pub fn inv(&self) -> ExtendedAffineElement {
        let linv = self.linear.inv();
        let mut t = self.linear.apply(&self.translation);
        for x in t.iter_mut() {
            *x = -*x;
        }
        ExtendedAffineElement {
            linear: linv,
            translation: t,
        }
    }

    /// Action on a point of V: v -> w0(v + y0).
    pub fn apply_point(&self, v: &[Rat]) -> Vec<Rat> {
        let shifted: Vec<Rat> = v
            .iter()
            .zip(&self.translation)
            .map(|(a, b)| *a + Rat::from_integer(*b))
            .collect();
        self.linear.apply_rat(&shifted)
    }

    pub fn pow(&self, k: u32) -> ExtendedAffineElement {
        let mut acc = ExtendedAffineElement::identity(self.linear.rank());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Root datum (X, Phi, Delta; Y, Phi_vee, Delta_vee) with explicit pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple_indices: Vec<usize>,
    pairing: Vec<Vec<i64>>,
    /// Regular rational point with value 1 on every simple root.
    regular_point: Vec<Rat>,
}

impl RootDatum {
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple_indices: Vec<usize>,
        pairing: Vec<Vec<i64>>,
    ) -> Result<Self, DatumError> {
        if roots.len() != coroots.len() {
            return Err(DatumError::Shape(format!(
                "{} roots vs {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        if pairing.len() != rank || pairing.iter().any(|r| r.len() != rank) {
            return Err(DatumError::Shape("pairing matrix must be rank x rank".into()));
        }
        for v in roots.iter().chain(coroots.iter()) {
            if v.len() != rank {
                return Err(DatumError::Shape("root/coroot of wrong dimension".into()));
            }
        }
        for &s in &simple_indices {
            if s >= roots.len() {
                return Err(DatumError::Shape("simple index out of range".into()));
            }
        }
        let regular_point = regular_point(&roots, &simple_indices, &pairing, rank)?;
        let datum = RootDatum {
            rank,
            roots,
            coroots,
            simple_indices,
            pairing,
            regular_point,
        };
        datum.validate()?;
        Ok(datum)
    }

    fn validate(&self) -> Result<(), DatumError> {
        for i in 0..self.roots.len() {
            if self.pair(&self.roots[i], &self.coroots[i]) != 2 {
                return Err(DatumError::BadSelfPairing { root: i });
            }
        }
        // Closure under every reflection, with aligned coroots.
        for s in 0..self.roots.len() {
            for i in 0..self.roots.len() {
                let r = self.reflect_root(s, i);
                let c = self.reflect_coroot(s, i);
                match self.root_index(&r) {
                    Some(j) if self.coroots[j] == c => {}
                    _ => {
                        return Err(DatumError::NotReflectionClosed {
                            root: i,
                            reflection: s,
                        })
                    }
                }
            }
        }
        // Every root must be a signed integral combination of the simples.
        let srows: Vec<Vec<Rat>> = (0..self.rank)
            .map(|row| {
                self.simple_indices
                    .iter()
                    .map(|&s| Rat::from_integer(self.roots[s][row]))
                    .collect()
            })
            .collect();
        for (i, root) in self.roots.iter().enumerate() {
            let b: Vec<Rat> = root.iter().map(|&x| Rat::from_integer(x)).collect();
            let Some(coeffs) = linalg::solve_rat(&srows, &b) else {
                return Err(DatumError::BadSimpleSystem(format!(
                    "root {i} outside simple span"
                )));
            };
            let mut sign = 0i64;
            for c in &coeffs {
                if !c.is_integer() {
                    return Err(DatumError::BadSimpleSystem(format!(
                        "root {i} has non-integral simple coordinates"
                    )));
                }
                let v = c.to_integer();
                if v > 0 && sign < 0 || v < 0 && sign > 0 {
                    return Err(DatumError::BadSimpleSystem(format!(
                        "root {i} has mixed-sign simple coordinates"
                    )));
                }
                if v != 0 {
                    sign = v.signum();
                }
            }
            if sign == 0 {
                return Err(DatumError::BadSimpleSystem(format!("root {i} is zero")));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_indices
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    /// <x, y> through the pairing matrix.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * self.pairing[i][j] * yj;
            }
        }
        acc
    }

    pub fn pair_rat(&self, x: &[i64], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += Rat::from_integer(xi * self.pairing[i][j]) * yj;
            }
        }
        acc
    }

    /// <root_i, y> for y in Y coordinates.
    pub fn pair_root(&self, i: usize, y: &[i64]) -> i64 {
        self.pair(&self.roots[i], y)
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }

    pub fn coroot_index(&self, coroot: &[i64]) -> Option<usize> {
        self.coroots.iter().position(|c| c == coroot)
    }

    pub fn negative_of(&self, i: usize) -> usize {
        let neg: Vec<i64> = self.roots[i].iter().map(|&x| -x).collect();
        self.root_index(&neg).expect("roots come in +- pairs")
    }

    fn reflect_root(&self, s: usize, i: usize) -> Vec<i64> {
        let c = self.pair(&self.roots[i], &self.coroots[s]);
        self.roots[i]
            .iter()
            .zip(&self.roots[s])
            .map(|(&a, &b)| a - c * b)
            .collect()
    }

    fn reflect_coroot(&self, s: usize, i: usize) -> Vec<i64> {
        let c = self.pair(&self.roots[s], &self.coroots[i]);
        self.coroots[i]
            .iter()
            .zip(&self.coroots[s])
            .map(|(&a, &b)| a - c * b)
            .collect()
    }

    pub fn is_positive_root(&self, i: usize) -> bool {
        self.pair_rat(&self.roots[i], &self.regular_point) > Rat::zero()
    }

    /// Reflection s_alpha as a matrix on Y: y -> y - <alpha, y> alpha_vee.
    pub fn reflection(&self, i: usize) -> WeylElement {
        let mut m = linalg::identity(self.rank);
        for col in 0..self.rank {
            let mut e = vec![0i64; self.rank];
            e[col] = 1;
            let c = self.pair_root(i, &e);
            for row in 0..self.rank {
                m[row][col] -= c * self.coroots[i][row];
            }
        }
        WeylElement::from_matrix(m)
    }

    pub fn simple_reflection(&self, k: usize) -> WeylElement {
        self.reflection(self.simple_indices[k])
    }

    /// Index of w(alpha_i) in the root list, for w a Weyl element.
    pub fn transport_root(&self, w: &WeylElement, i: usize) -> usize {
        let image = w.apply(&self.coroots[i]);
        self.coroot_index(&image)
            .expect("Weyl elements permute coroots")
    }

    /// Closure of the simple reflections; BFS order starting at the identity.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let gens: Vec<WeylElement> = self
            .simple_indices
            .iter()
            .map(|&s| self.reflection(s))
            .collect();
        let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        let id = WeylElement::identity(self.rank);
        seen.insert(id.matrix.clone());
        let mut order = vec![id];
        let mut frontier = 0;
        while frontier < order.len() {
            let w = order[frontier].clone();
            frontier += 1;
            for g in &gens {
                let next = g.mul(&w);
                if seen.insert(next.matrix.clone()) {
                    order.push(next);
                }
            }
        }
        order
    }

    /// Highest roots, one per irreducible component of Phi.
    pub fn highest_roots(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.is_positive_root(i))
            .filter(|&i| {
                self.simple_indices.iter().all(|&s| {
                    let sum: Vec<i64> = self.roots[i]
                        .iter()
                        .zip(&self.roots[s])
                        .map(|(a, b)| a + b)
                        .collect();
                    self.root_index(&sum).is_none()
                })
            })
            .collect()
    }

    /// Delta_af = Delta union { -beta + 1 : beta highest }.
    pub fn simple_affine_roots(&self) -> Vec<AffineRoot> {
        let mut out: Vec<AffineRoot> = self
            .simple_indices
            .iter()
            .map(|&s| AffineRoot::new(s, 0))
            .collect();
        for h in self.highest_roots() {
            out.push(AffineRoot::new(self.negative_of(h), 1));
        }
        out
    }

    /// Rational interior point of the base alcove A_0.
    pub fn base_alcove_point(&self) -> Vec<Rat> {
        let h = self
            .highest_roots()
            .into_iter()
            .map(|i| self.pair_rat(&self.roots[i], &self.regular_point))
            .max()
            .unwrap_or_else(Rat::zero);
        let denom = h + Rat::from_integer(1);
        self.regular_point
            .iter()
            .map(|x| x / denom)
            .collect()
    }

    /// Whether `alpha + k` is a positive affine root.
    pub fn affine_is_positive(&self, a: AffineRoot) -> bool {
        if self.is_positive_root(a.root) {
            a.offset >= 0
        } else {
            a.offset >= 1
        }
    }

    /// w(alpha + k) = w0(alpha) + k - <alpha, y0> for w = w0 t_{y0}.
    pub fn affine_action(&self, w: &ExtendedAffineElement, a: AffineRoot) -> AffineRoot {
        let image = self.transport_root(&w.linear, a.root);
        let shift = self.pair_root(a.root, &w.translation);
        AffineRoot::new(image, a.offset - shift)
    }

    /// Evaluation (alpha + k)(x) for x in V.
    pub fn affine_eval(&self, a: AffineRoot, x: &[Rat]) -> Rat {
        self.pair_rat(&self.roots[a.root], x) + Rat::from_integer(a.offset)
    }

    /// N(w): positive affine roots sent negative by w.
    pub fn n_set(&self, w: &ExtendedAffineElement) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for root in 0..self.roots.len() {
            let k_min = if self.is_positive_root(root) { 0 } else { 1 };
            let image = self.transport_root(&w.linear, root);
            let shift = self.pair_root(root, &w.translation);
            // w(alpha + k) = image + (k - shift), negative iff
            // k - shift <= -1 (image positive) or <= 0 (image negative).
            let k_max = shift - i64::from(self.is_positive_root(image));
            for k in k_min..=k_max {
                out.push(AffineRoot::new(root, k));
            }
        }
        out.sort();
        out
    }

    /// Length of w as the number of separating affine hyperplanes.
    pub fn length(&self, w: &ExtendedAffineElement) -> usize {
        self.n_set(w).len()
    }

    /// s_{alpha + k} = (s_alpha, k alpha_vee) as an extended element.
    pub fn affine_reflection(&self, a: AffineRoot) -> ExtendedAffineElement {
        ExtendedAffineElement {
            linear: self.reflection(a.root),
            translation: self.coroots[a.root].iter().map(|&c| c * a.offset).collect(),
        }
    }

    /// Connected components of the simple-root Dynkin graph, as lists of
    /// positions into `simple_indices`.
    pub fn dynkin_components(&self) -> Vec<Vec<usize>> {
        let s = self.simple_indices.len();
        let adj = |i: usize, j: usize| {
            self.pair(
                &self.roots[self.simple_indices[i]],
                &self.coroots[self.simple_indices[j]],
            ) != 0
        };
        let mut seen = vec![false; s];
        let mut comps = Vec::new();
        for start in 0..s {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                k += 1;
                for j in 0..s {
                    if !seen[j] && adj(i, j) {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    /// Builds a named preset.
    ///
    /// Recognized: `SL(n)` and `PGL(n)` for n >= 2, `GL(n)` for n >= 1,
    /// `Sp(2m)` for m >= 1, `SO(m)` for m >= 3, and `G2`.
    pub fn preset(name: &str, param: usize) -> Result<RootDatum, DatumError> {
        match name {
            "SL" if param >= 2 => from_cartan(&type_a_cartan(param - 1)),
            "PGL" if param >= 2 => adjoint_from_cartan(&type_a_cartan(param - 1)),
            "GL" if param >= 1 => gl_datum(param),
            "Sp" if param >= 2 && param % 2 == 0 => sp_datum(param / 2),
            "SO" if param >= 3 => so_datum(param),
            "G2" => from_cartan(&[vec![2, -1], vec![-3, 2]]),
            _ => Err(DatumError::BadPreset(format!("{name}({param})"))),
        }
    }
}

/// Rational point with value 1 on every simple root (free coordinates zero).
fn regular_point(
    roots: &[Vec<i64>],
    simple_indices: &[usize],
    pairing: &[Vec<i64>],
    rank: usize,
) -> Result<Vec<Rat>, DatumError> {
    let rows: Vec<Vec<Rat>> = simple_indices
        .iter()
        .map(|&s| {
            (0..rank)
                .map(|j| {
                    let mut acc = 0i64;
                    for (i, x) in roots[s].iter().enumerate() {
                        acc += x * pairing[i][j];
                    }
                    Rat::from_integer(acc)
                })
                .collect()
        })
        .collect();
    let b = vec![Rat::from_integer(1); simple_indices.len()];
    linalg::solve_rat(&rows, &b)
        .ok_or_else(|| DatumError::BadSimpleSystem("simple roots are dependent".into()))
}

/// Generates the full aligned root/coroot lists from simple pairs by closing
/// under the simple reflections, then builds the datum. Simples come first.
fn from_simples(
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    pairing: Vec<Vec<i64>>,
) -> Result<RootDatum, DatumError> {
    let pair = |x: &[i64], y: &[i64]| -> i64 {
        let mut acc = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += xi * pairing[i][j] * yj;
            }
        }
        acc
    };
    let mut roots = simple_roots.clone();
    let mut coroots = simple_coroots.clone();
    let mut seen: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut frontier = 0;
    while frontier < roots.len() {
        let (r, c) = (roots[frontier].clone(), coroots[frontier].clone());
        frontier += 1;
        for s in 0..simple_roots.len() {
            let cr = pair(&r, &simple_coroots[s]);
            let new_root: Vec<i64> = r
                .iter()
                .zip(&simple_roots[s])
                .map(|(&a, &b)| a - cr * b)
                .collect();
            if seen.insert(new_root.clone()) {
                let cc = pair(&simple_roots[s], &c);
                let new_coroot: Vec<i64> = c
                    .iter()
                    .zip(&simple_coroots[s])
                    .map(|(&a, &b)| a - cc * b)
                    .collect();
                roots.push(new_root);
                coroots.push(new_coroot);
            }
        }
    }
    let simple_indices = (0..simple_roots.len()).collect();
    RootDatum::new(rank, roots, coroots, simple_indices, pairing)
}

fn type_a_cartan(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    if i == j {
                        2
                    } else if i.abs_diff(j) == 1 {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// Simply connected datum from a Cartan matrix a[i][j] = <alpha_j, alpha_vee_i>:
/// Y has the simple coroots as basis, X the fundamental weights, pairing = I.
fn from_cartan(cartan: &[Vec<i64>]) -> Result<RootDatum, DatumError> {
    let rank = cartan.len();
    let simple_roots: Vec<Vec<i64>> = (0..rank)
        .map(|j| (0..rank).map(|i| cartan[i][j]).collect())
        .collect();
    let simple_coroots: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            e
        })
        .collect();
    from_simples(rank, simple_roots, simple_coroots, linalg::identity(rank))
}

/// Adjoint datum: X has the simple roots as basis, Y the fundamental
/// coweights, pairing = I; coroot coordinates are Cartan columns.
fn adjoint_from_cartan(cartan: &[Vec<i64>]) -> Result<RootDatum, DatumError> {
    let rank = cartan.len();
    let simple_roots: Vec<Vec<i64>> = (0..rank)
        .map(|j| {
            let mut e = vec![0i64; rank];
            e[j] = 1;
            e
        })
        .collect();
    let simple_coroots: Vec<Vec<i64>> = (0..rank)
        .map(|j| (0..rank).map(|i| cartan[i][j]).collect())
        .collect();
    from_simples(rank, simple_roots, simple_coroots, linalg::identity(rank))
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0i64; rank];
    e[i] = 1;
    e
}

fn gl_datum(n: usize) -> Result<RootDatum, DatumError> {
    let mut sr = Vec::new();
    let mut sc = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v[i + 1] = -1;
        sr.push(v.clone());
        sc.push(v);
    }
    from_simples(n, sr, sc, linalg::identity(n))
}

fn sp_datum(m: usize) -> Result<RootDatum, DatumError> {
    let mut sr = Vec::new();
    let mut sc = Vec::new();
    for i in 0..m - 1 {
        let mut v = vec![0i64; m];
        v[i] = 1;
        v[i + 1] = -1;
        sr.push(v.clone());
        sc.push(v);
    }
    let mut long = vec![0i64; m];
    long[m - 1] = 2;
    sr.push(long);
    sc.push(unit(m, m - 1));
    from_simples(m, sr, sc, linalg::identity(m))
}

fn so_datum(n: usize) -> Result<RootDatum, DatumError> {
    if n % 2 == 1 {
        // B_m: short simple root e_m with coroot 2 e_m.
        let m = n / 2;
        let mut sr = Vec::new();
        let mut sc = Vec::new();
        for i in 0..m.saturating_sub(1) {
            let mut v = vec![0i64; m];
            v[i] = 1;
            v[i + 1] = -1;
            sr.push(v.clone());
            sc.push(v);
        }
        sr.push(unit(m, m - 1));
        let mut c = vec![0i64; m];
        c[m - 1] = 2;
        sc.push(c);
        from_simples(m, sr, sc, linalg::identity(m))
    } else {
        // D_m: last simple root e_{m-1} + e_m.
        let m = n / 2;
        if m < 2 {
            return Err(DatumError::BadPreset(format!("SO({n})")));
        }
        let mut sr = Vec::new();
        let mut sc = Vec::new();
        for i in 0..m - 1 {
            let mut v = vec![0i64; m];
            v[i] = 1;
            v[i + 1] = -1;
            sr.push(v.clone());
            sc.push(v);
        }
        let mut v = vec![0i64; m];
        v[m - 2] = 1;
        v[m - 1] = 1;
        sr.push(v.clone());
        sc.push(v);
        from_simples(m, sr, sc, linalg::identity(m))
    }
}
