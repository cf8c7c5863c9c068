//! The comparison between a cover-side Hecke algebra and its linear
//! endoscopic counterpart: character transfer, the group isomorphism Psi
//! between the extended stabilizers, the sampled algebra-isomorphism check,
//! and the fullness and 2-torsion report that decides (non-)isomorphism of
//! the full algebras when the group-level criteria decide it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

use crate::chi_geometry::{ChiGeometry, GeometryError};
use crate::cover_torus::GenuineCharacter;
use crate::hecke_algebra::{HeckeAlgebra, HeckeElement};
use crate::linalg;
use crate::quad_cover::{CoverError, QuadraticCoverData};
use crate::rng::SplitMix64;
use crate::root_datum::ExtendedAffineElement;
use crate::tame_arith::TameField;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShimuraError {
    Cover(CoverError),
    Geometry(GeometryError),
    Field(crate::tame_arith::FieldError),
    /// Linear-side wall does not land on a residue-zero cover wall.
    WallMismatch { root: usize },
    /// Psi produced a non-integral element; implementation bug.
    PsiNotIntegral,
    /// Psi image escaped the extended stabilizer.
    PsiOutsideTarget,
}

impl fmt::Display for ShimuraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShimuraError::Cover(e) => write!(f, "{e}"),
            ShimuraError::Geometry(e) => write!(f, "{e}"),
            ShimuraError::Field(e) => write!(f, "{e}"),
            ShimuraError::WallMismatch { root } => {
                write!(f, "wall sets differ at root index {root}")
            }
            ShimuraError::PsiNotIntegral => write!(f, "Psi image is not integral"),
            ShimuraError::PsiOutsideTarget => {
                write!(f, "Psi image lies outside the extended stabilizer")
            }
        }
    }
}

impl From<CoverError> for ShimuraError {
    fn from(e: CoverError) -> Self {
        ShimuraError::Cover(e)
    }
}

impl From<GeometryError> for ShimuraError {
    fn from(e: GeometryError) -> Self {
        ShimuraError::Geometry(e)
    }
}

impl From<crate::tame_arith::FieldError> for ShimuraError {
    fn from(e: crate::tame_arith::FieldError) -> Self {
        ShimuraError::Field(e)
    }
}

/// The linear endoscopic side, run through the identical machinery as a
/// degree-1 cover of the endoscopic datum.
#[derive(Debug, Clone)]
pub struct LinearSide {
    /// Columns: HNF basis of Y_{Q,n} inside Y (the coordinate embedding).
    pub embed: Vec<Vec<i64>>,
    pub cover: QuadraticCoverData,
    pub field: TameField,
    pub chi: GenuineCharacter,
    pub geom: ChiGeometry,
}

/// Restricts chi through the lattice basis and computes the full linear-side
/// geometry with n = 1 and the zero form.
pub fn transfer_char(
    cover: &QuadraticCoverData,
    field: &TameField,
    chi: &GenuineCharacter,
) -> Result<LinearSide, ShimuraError> {
    let endo = cover.endoscopic_datum()?;
    let rank = endo.datum.rank();
    let m: Vec<i64> = (0..rank)
        .map(|j| {
            let col: Vec<i64> = (0..rank).map(|i| endo.lattice_basis[i][j]).collect();
            chi.m_of(field, &col)
        })
        .collect();
    let lin_field = TameField::new(field.p(), field.f(), 1)?;
    let lin_chi = GenuineCharacter::depth_zero(&lin_field, m);
    let lin_cover = QuadraticCoverData::trivial(endo.datum);
    let geom = ChiGeometry::compute(&lin_cover, &lin_field, &lin_chi)?;
    Ok(LinearSide {
        embed: endo.lattice_basis,
        cover: lin_cover,
        field: lin_field,
        chi: lin_chi,
        geom,
    })
}

/// Rational affine pair in the extended-group law
/// (A, u)(B, w) = (AB, B^{-1}u + w).
#[derive(Debug, Clone)]
struct RatAffine {
    lin: Vec<Vec<Rat>>,
    trans: Vec<Rat>,
}

impl RatAffine {
    fn mul(&self, other: &RatAffine) -> RatAffine {
        let binv = linalg::mat_inv_rat(&other.lin).expect("Weyl linear parts are invertible");
        let mut trans = rat_mat_vec(&binv, &self.trans);
        for (t, w) in trans.iter_mut().zip(&other.trans) {
            *t += *w;
        }
        RatAffine {
            lin: rat_mat_mul(&self.lin, &other.lin),
            trans,
        }
    }

    fn inv(&self) -> RatAffine {
        let ainv = linalg::mat_inv_rat(&self.lin).expect("invertible");
        let mut trans = rat_mat_vec(&self.lin, &self.trans);
        for t in trans.iter_mut() {
            *t = -*t;
        }
        RatAffine { lin: ainv, trans }
    }
}

fn rat_mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| *a * *b).sum())
        .collect()
}

fn rat_mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, bk) in b.iter().enumerate() {
                out[i][j] += a[i][k] * bk[j];
            }
        }
    }
    out
}

fn to_rat_mat(m: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    m.iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect()
}

/// The group map Psi from the linear extended stabilizer into the cover one:
/// first transport along the lattice embedding, then conjugate by the
/// alcove-aligning element w0 t_v.
pub struct Psi {
    embed: Vec<Vec<Rat>>,
    g: RatAffine,
    g_inv: RatAffine,
    rank: usize,
}

impl Psi {
    pub fn new(cover_geom: &ChiGeometry, embed: &[Vec<i64>]) -> Psi {
        let rank = embed.len();
        let g = RatAffine {
            lin: to_rat_mat(cover_geom.mover.linear.matrix()),
            trans: cover_geom.shift.clone(),
        };
        let g_inv = g.inv();
        Psi {
            embed: to_rat_mat(embed),
            g,
            g_inv,
            rank,
        }
    }

    /// Transport without the conjugation: (M', y') to (C M' C^{-1}, C y').
    fn stage_one(&self, w: &ExtendedAffineElement) -> RatAffine {
        let c_inv = linalg::mat_inv_rat(&self.embed).expect("basis");
        let lin = rat_mat_mul(&rat_mat_mul(&self.embed, &to_rat_mat(w.linear.matrix())), &c_inv);
        let wt: Vec<Rat> = w.translation.iter().map(|&x| Rat::from_integer(x)).collect();
        let trans = rat_mat_vec(&self.embed, &wt);
        RatAffine { lin, trans }
    }

    pub fn apply(&self, w: &ExtendedAffineElement) -> Result<ExtendedAffineElement, ShimuraError> {
        let conj = self.g_inv.mul(&self.stage_one(w)).mul(&self.g);
        let mut matrix = Vec::with_capacity(self.rank);
        for row in &conj.lin {
            let mut out = Vec::with_capacity(self.rank);
            for x in row {
                if !x.is_integer() {
                    return Err(ShimuraError::PsiNotIntegral);
                }
                out.push(x.to_integer());
            }
            matrix.push(out);
        }
        let mut translation = Vec::with_capacity(self.rank);
        for x in &conj.trans {
            if !x.is_integer() {
                return Err(ShimuraError::PsiNotIntegral);
            }
            translation.push(x.to_integer());
        }
        Ok(ExtendedAffineElement {
            linear: crate::root_datum::WeylElement::from_matrix(matrix),
            translation,
        })
    }
}

/// Exact rational check that every linear-side wall family coincides with
/// the residue-zero cover wall family of the same root index, and that the
/// relevant index sets agree.
pub fn wall_set_check(
    cover: &QuadraticCoverData,
    cover_geom: &ChiGeometry,
    linear: &LinearSide,
) -> Result<(), ShimuraError> {
    let datum = cover.datum();
    let endo_datum = linear.cover.datum();
    for root in 0..datum.num_roots() {
        let cov = cover_geom.system.is_relevant(root);
        let lin = linear.geom.system.is_relevant(root);
        if cov != lin {
            return Err(ShimuraError::WallMismatch { root });
        }
        if !cov {
            continue;
        }
        // alpha(C y') = n_alpha * alpha'(y') for all basis y'.
        let na = cover.n_alpha(root);
        for j in 0..datum.rank() {
            let col: Vec<i64> = (0..datum.rank()).map(|i| linear.embed[i][j]).collect();
            let lhs = datum.pair(datum.root(root), &col);
            let ej: Vec<i64> = (0..datum.rank()).map(|i| i64::from(i == j)).collect();
            let rhs = na * endo_datum.pair(endo_datum.root(root), &ej);
            if lhs != rhs {
                return Err(ShimuraError::WallMismatch { root });
            }
        }
    }
    Ok(())
}

/// Outcome of the sampled algebra-isomorphism verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsilonReport {
    pub wall_sets_match: bool,
    pub simple_bijection: bool,
    pub coxeter_match: bool,
    pub omega_match: bool,
    pub homomorphism_ok: bool,
    pub product_transport_ok: bool,
}

impl UpsilonReport {
    pub fn verdict(&self) -> bool {
        self.wall_sets_match
            && self.simple_bijection
            && self.coxeter_match
            && self.omega_match
            && self.homomorphism_ok
            && self.product_transport_ok
    }
}

fn random_element(
    gens: &[ExtendedAffineElement],
    rank: usize,
    max_len: u64,
    rng: &mut SplitMix64,
) -> ExtendedAffineElement {
    let mut w = ExtendedAffineElement::identity(rank);
    if gens.is_empty() {
        return w;
    }
    let len = rng.below(max_len + 1);
    for _ in 0..len {
        let g = &gens[rng.below(gens.len() as u64) as usize];
        w = if rng.below(2) == 0 { w.mul(g) } else { w.mul(&g.inv()) };
    }
    w
}

/// Verifies the generator-and-relation content of the algebra isomorphism:
/// wall sets, the simple-reflection bijection with equal Coxeter matrices,
/// stabilizer transport, Psi multiplicativity, and structure-constant
/// transport on sampled basis products.
pub fn upsilon_check(
    cover: &QuadraticCoverData,
    cover_geom: &ChiGeometry,
    linear: &LinearSide,
    seed: u64,
    samples: u32,
) -> Result<UpsilonReport, ShimuraError> {
    let datum = cover.datum();
    let endo_datum = linear.cover.datum();
    let wall_sets_match = wall_set_check(cover, cover_geom, linear).is_ok();
    let psi = Psi::new(cover_geom, &linear.embed);

    // Images of the linear simple-wall reflections against the cover ones.
    let cover_simples: Vec<ExtendedAffineElement> = cover_geom
        .delta_chi
        .iter()
        .map(|&a| datum.affine_reflection(a))
        .collect();
    let mut image_of = Vec::with_capacity(linear.geom.delta_chi.len());
    let mut simple_bijection = linear.geom.delta_chi.len() == cover_simples.len();
    for &a in &linear.geom.delta_chi {
        let img = psi.apply(&endo_datum.affine_reflection(a))?;
        match cover_simples.iter().position(|s| *s == img) {
            Some(k) => image_of.push(k),
            None => {
                simple_bijection = false;
                image_of.push(usize::MAX);
            }
        }
    }
    if simple_bijection {
        let mut seen = image_of.clone();
        seen.sort_unstable();
        seen.dedup();
        simple_bijection = seen.len() == cover_simples.len();
    }

    let coxeter_match = simple_bijection
        && linear.geom.coxeter.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &m)| m == cover_geom.coxeter[image_of[i]][image_of[j]])
        });

    // Stabilizer transport: generators land in the cover extended group.
    let mut omega_match = true;
    for g in linear.geom.wchi_ex.generators() {
        let img = psi.apply(&g)?;
        if !cover_geom.wchi_ex.contains(&img) {
            omega_match = false;
        }
    }

    let lin_gens = linear.geom.wchi_ex.generators();
    let mut rng = SplitMix64::new(seed);
    let mut homomorphism_ok = true;
    for _ in 0..samples {
        let a = random_element(&lin_gens, endo_datum.rank(), 3, &mut rng);
        let b = random_element(&lin_gens, endo_datum.rank(), 3, &mut rng);
        if psi.apply(&a.mul(&b))? != psi.apply(&a)?.mul(&psi.apply(&b)?) {
            homomorphism_ok = false;
            break;
        }
    }

    // Structure-constant transport through both multiplication routines.
    let lin_alg = HeckeAlgebra::new(endo_datum, &linear.geom);
    let cov_alg = HeckeAlgebra::new(datum, cover_geom);
    let mut product_transport_ok = true;
    'outer: for _ in 0..samples {
        let a = random_element(&lin_gens, endo_datum.rank(), 2, &mut rng);
        let b = random_element(&lin_gens, endo_datum.rank(), 2, &mut rng);
        let lhs = lin_alg.basis_product(&a, &b)?;
        let rhs = cov_alg.basis_product(&psi.apply(&a)?, &psi.apply(&b)?)?;
        let mut mapped = HeckeElement::zero();
        for (w, c) in lhs.support() {
            let img = psi.apply(w)?;
            mapped = mapped.add(&HeckeElement::basis(img).scale(c));
        }
        if mapped != rhs {
            product_transport_ok = false;
            break 'outer;
        }
    }

    Ok(UpsilonReport {
        wall_sets_match,
        simple_bijection,
        coxeter_match,
        omega_match,
        homomorphism_ok,
        product_transport_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Undetermined,
}

/// Fullness and 2-torsion comparison of the full (non-extended-restricted)
/// algebras, per the group-level criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub cover_full: bool,
    pub linear_full: bool,
    /// A nontrivial square root of the identity in the cover stabilizer.
    pub cover_torsion: Option<ExtendedAffineElement>,
    /// Same on the linear side, in linear-side coordinates.
    pub linear_torsion: Option<ExtendedAffineElement>,
    pub verdict: Verdict,
}

/// Searches one coset group for a nontrivial element of order 2: a coset
/// (M, ybar) with M^2 = 1, M != 1, contains one iff the congruence
/// (1 + M)(ybar + L z) = 0 has an integer solution z over the lattice L.
fn find_two_torsion(
    group: &crate::chi_geometry::CosetGroup,
) -> Option<ExtendedAffineElement> {
    let rank = group.lattice.len();
    for (m, ybar) in &group.cosets {
        if m.is_identity() || !m.mul(m).is_identity() {
            continue;
        }
        // Rows of (1 + M) C and target -(1 + M) ybar.
        let mm = m.matrix();
        let mut a = vec![vec![0i64; rank]; rank];
        let mut b = vec![0i64; rank];
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let one_plus = i64::from(i == k) + mm[i][k];
                    a[i][j] += one_plus * group.lattice[k][j];
                }
            }
            for k in 0..rank {
                let one_plus = i64::from(i == k) + mm[i][k];
                b[i] -= one_plus * ybar[k];
            }
        }
        if let Some(z) = linalg::solve_integer(&a, &b) {
            let mut y = ybar.clone();
            for (i, yi) in y.iter_mut().enumerate() {
                for (j, zj) in z.iter().enumerate() {
                    *yi += group.lattice[i][j] * zj;
                }
            }
            let w = ExtendedAffineElement {
                linear: m.clone(),
                translation: y,
            };
            debug_assert!(w.mul(&w).is_identity());
            return Some(w);
        }
    }
    None
}

pub fn fullness_and_torsion(cover_geom: &ChiGeometry, linear: &LinearSide) -> TorsionReport {
    let cover_full = cover_geom.wchi.cosets == cover_geom.wchi_ex.cosets;
    let linear_full = linear.geom.wchi.cosets == linear.geom.wchi_ex.cosets;
    let cover_torsion = find_two_torsion(&cover_geom.wchi);
    let linear_torsion = find_two_torsion(&linear.geom.wchi);
    let verdict = if cover_full && linear_full {
        Verdict::Isomorphic
    } else if cover_torsion.is_some() != linear_torsion.is_some() {
        Verdict::NotIsomorphic
    } else {
        Verdict::Undetermined
    };
    TorsionReport {
        cover_full,
        linear_full,
        cover_torsion,
        linear_torsion,
        verdict,
    }
}

/// One-call comparison bundle.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub linear: LinearSide,
    pub upsilon: UpsilonReport,
    pub torsion: TorsionReport,
}

pub fn compare(
    cover: &QuadraticCoverData,
    field: &TameField,
    chi: &GenuineCharacter,
    cover_geom: &ChiGeometry,
    seed: u64,
    samples: u32,
) -> Result<Comparison, ShimuraError> {
    let linear = transfer_char(cover, field, chi)?;
    let upsilon = upsilon_check(cover, cover_geom, &linear, seed, samples)?;
    let torsion = fullness_and_torsion(cover_geom, &linear);
    Ok(Comparison {
        linear,
        upsilon,
        torsion,
    })
}
