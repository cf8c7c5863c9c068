//! Geometry of the twisted affine root system attached to a depth-zero
//! character: relevant roots and residues, the shift vector, the base
//! chi-alcove with its simple walls, the stabilizer group and its extended
//! variant as finite unions of lattice cosets, and the mover element that
//! aligns the chi-walls with the residue-zero walls.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

use crate::cover_torus::{chi_affine, weyl_act_char, GenuineCharacter, TorusError};
use crate::linalg;
use crate::quad_cover::QuadraticCoverData;
use crate::root_datum::{AffineRoot, ExtendedAffineElement, RootDatum, WeylElement};
use crate::tame_arith::TameField;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    Torus(TorusError),
    /// The residue data admits no shift vector; indicates corrupted input or
    /// an implementation bug, not a legitimate configuration.
    InconsistentResidues(String),
    /// Simple-wall descent failed to terminate; implementation bug.
    DescentStuck,
    /// The element does not stabilize the character.
    NotInStabilizer,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::Torus(e) => write!(f, "{e}"),
            GeometryError::InconsistentResidues(s) => {
                write!(f, "inconsistent chi-residues: {s}")
            }
            GeometryError::DescentStuck => write!(f, "simple-wall descent did not terminate"),
            GeometryError::NotInStabilizer => write!(f, "element does not stabilize chi"),
        }
    }
}

impl From<TorusError> for GeometryError {
    fn from(e: TorusError) -> Self {
        GeometryError::Torus(e)
    }
}

/// The chi-relevant roots with their residues: alpha is relevant iff
/// n_alpha * m(alpha_vee) = 0 mod q-1, and then the chi-affine roots in the
/// alpha direction are alpha + c_alpha + k n_alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedAffineSystem {
    /// Per root index: Some(residue in [0, n_alpha)) when relevant.
    residues: Vec<Option<i64>>,
    n_alphas: Vec<i64>,
}

impl TwistedAffineSystem {
    pub fn is_relevant(&self, root: usize) -> bool {
        self.residues[root].is_some()
    }

    pub fn residue(&self, root: usize) -> Option<i64> {
        self.residues[root]
    }

    pub fn n_alpha(&self, root: usize) -> i64 {
        self.n_alphas[root]
    }

    pub fn relevant_roots(&self) -> Vec<usize> {
        (0..self.residues.len())
            .filter(|&i| self.residues[i].is_some())
            .collect()
    }

    /// Membership of an affine root in the twisted system.
    pub fn contains(&self, a: AffineRoot) -> bool {
        match self.residues[a.root] {
            Some(c) => (a.offset - c).rem_euclid(self.n_alphas[a.root]) == 0,
            None => false,
        }
    }

    /// The residue-zero companion system (walls alpha + k n_alpha), with the
    /// same relevant roots.
    pub fn residue_zero(&self) -> TwistedAffineSystem {
        TwistedAffineSystem {
            residues: self
                .residues
                .iter()
                .map(|r| r.as_ref().map(|_| 0))
                .collect(),
            n_alphas: self.n_alphas.clone(),
        }
    }
}

/// W_chi (or its extended variant) as cosets of Y_{Q,n}: the stored pairs
/// (w0, ybar) with ybar the box representative of the translation part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetGroup {
    /// Square lower-triangular HNF basis of Y_{Q,n}, as columns.
    pub lattice: Vec<Vec<i64>>,
    /// Sorted canonical coset labels.
    pub cosets: Vec<(WeylElement, Vec<i64>)>,
}

impl CosetGroup {
    pub fn contains(&self, w: &ExtendedAffineElement) -> bool {
        let red = linalg::lattice_reduce(&self.lattice, &w.translation);
        self.cosets
            .iter()
            .any(|(lin, rep)| lin == &w.linear && rep == &red)
    }

    pub fn coset_label(&self, w: &ExtendedAffineElement) -> (WeylElement, Vec<i64>) {
        (
            w.linear.clone(),
            linalg::lattice_reduce(&self.lattice, &w.translation),
        )
    }

    /// One representative element per coset.
    pub fn representatives(&self) -> Vec<ExtendedAffineElement> {
        self.cosets
            .iter()
            .map(|(lin, rep)| ExtendedAffineElement {
                linear: lin.clone(),
                translation: rep.clone(),
            })
            .collect()
    }

    /// Generating set: coset representatives plus lattice basis translations.
    pub fn generators(&self) -> Vec<ExtendedAffineElement> {
        let r = self.lattice.len();
        let mut out = self.representatives();
        out.retain(|w| !w.is_identity());
        for j in 0..r {
            let col: Vec<i64> = (0..r).map(|i| self.lattice[i][j]).collect();
            out.push(ExtendedAffineElement::translation_by(&col));
        }
        out
    }
}

/// Everything the Hecke and comparison layers need about one character.
#[derive(Debug, Clone)]
pub struct ChiGeometry {
    pub system: TwistedAffineSystem,
    /// Shift vector v with <alpha, v> = c_alpha mod n_alpha on relevant roots.
    pub shift: Vec<Rat>,
    /// Simple walls of the base chi-alcove.
    pub delta_chi: Vec<AffineRoot>,
    /// Coxeter matrix of the delta_chi reflections; None = infinite (cap 12).
    pub coxeter: Vec<Vec<Option<u32>>>,
    /// w0 with w0 t_v (base chi-alcove) = base residue-zero alcove.
    pub mover: ExtendedAffineElement,
    pub wchi: CosetGroup,
    pub wchi_ex: CosetGroup,
    pub omega_generators: Vec<ExtendedAffineElement>,
    /// Interior point of the base alcove A_0 (also chi-generic).
    pub base_point: Vec<Rat>,
}

/// Computes the relevant roots and residues of chi.
pub fn twisted_system(
    cover: &QuadraticCoverData,
    field: &TameField,
    chi: &GenuineCharacter,
) -> Result<TwistedAffineSystem, GeometryError> {
    if !chi.is_depth_zero() {
        return Err(GeometryError::Torus(TorusError::PositiveDepth));
    }
    let datum = cover.datum();
    let qm1 = field.qm1();
    let mut residues = Vec::with_capacity(datum.num_roots());
    let mut n_alphas = Vec::with_capacity(datum.num_roots());
    for root in 0..datum.num_roots() {
        let na = cover.n_alpha(root);
        n_alphas.push(na);
        let m = chi.m_of(field, datum.coroot(root));
        if field.reduce(na * m) != 0 {
            residues.push(None);
            continue;
        }
        // Solve e(alpha + k) = 0: k * eps * Q(alpha_vee) * (q-1)/n = m mod q-1.
        let s = field.reduce(field.eps_exp() * cover.q_of(datum.coroot(root)) * field.mu_n_step());
        let k = linalg::solve_congruence(s, m, qm1.max(1)).ok_or_else(|| {
            GeometryError::InconsistentResidues(format_root(root))
        })?;
        let c = k.rem_euclid(na);
        debug_assert_eq!(
            chi_affine(cover, field, chi, AffineRoot::new(root, c)).map_err(GeometryError::Torus)?,
            0
        );
        residues.push(Some(c));
    }
    Ok(TwistedAffineSystem { residues, n_alphas })
}

fn format_root(root: usize) -> String {
    use alloc::format;
    format!("root {root}")
}

/// Squared-length ratio data per relevant component, used by the shift
/// vector construction: the l^2 adjustment applies when l^2 does not
/// divide n.
fn component_l2(cover: &QuadraticCoverData, comp: &[usize]) -> i64 {
    let qs: Vec<i64> = comp
        .iter()
        .map(|&i| cover.q_of(cover.datum().coroot(i)).abs().max(1))
        .collect();
    // Coroot Q-norms scale inversely with root lengths; the ratio of
    // extremes is the squared length ratio either way.
    let mx = qs.iter().copied().max().unwrap_or(1);
    let mn = qs.iter().copied().min().unwrap_or(1);
    if mn == 0 {
        1
    } else {
        mx / mn
    }
}

/// Computes the canonical shift vector v: on a simple system of the relevant
/// roots, <alpha_i, v> is the absolutely smallest residue representative
/// (ties negative), CRT-adjusted by l^2 where required; v is the unique
/// solution in the span of the corresponding coroots.
pub fn shift_vector(
    cover: &QuadraticCoverData,
    system: &TwistedAffineSystem,
) -> Result<Vec<Rat>, GeometryError> {
    let datum = cover.datum();
    let rank = datum.rank();
    let relevant = system.relevant_roots();
    if relevant.is_empty() {
        return Ok(vec![Rat::zero(); rank]);
    }
    let positives: Vec<usize> = relevant
        .iter()
        .copied()
        .filter(|&i| datum.is_positive_root(i))
        .collect();
    // Indecomposables among the positive relevant coroots.
    let simples: Vec<usize> = positives
        .iter()
        .copied()
        .filter(|&i| {
            !positives.iter().any(|&j| {
                positives.iter().any(|&k| {
                    let sum: Vec<i64> = datum
                        .coroot(j)
                        .iter()
                        .zip(datum.coroot(k))
                        .map(|(a, b)| a + b)
                        .collect();
                    sum == datum.coroot(i)
                })
            })
        })
        .collect();
    if simples.is_empty() {
        return Err(GeometryError::InconsistentResidues(
            "no indecomposable relevant coroots".into(),
        ));
    }
    // Components of the simple relevant set, for the l^2 adjustment.
    let mut comp_of = vec![usize::MAX; simples.len()];
    let mut ncomp = 0;
    for start in 0..simples.len() {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp_of[start] = ncomp;
        while let Some(i) = stack.pop() {
            for j in 0..simples.len() {
                if comp_of[j] == usize::MAX
                    && datum.pair_root(simples[i], datum.coroot(simples[j])) != 0
                {
                    comp_of[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }
    let mut targets = Vec::with_capacity(simples.len());
    for (pos, &i) in simples.iter().enumerate() {
        let comp: Vec<usize> = simples
            .iter()
            .enumerate()
            .filter(|&(k, _)| comp_of[k] == comp_of[pos])
            .map(|(_, &r)| r)
            .collect();
        let l2 = component_l2(cover, &comp);
        let na = system.n_alpha(i);
        let c = system.residue(i).expect("simple roots are relevant");
        let (modulus, residue) = if l2 > 1 && cover.degree() % l2 != 0 {
            // Need c = c_alpha mod n_alpha and c = 0 mod l^2; the moduli are
            // coprime here, so CRT applies.
            let m = na * l2;
            let r = (0..m)
                .find(|&x| (x - c).rem_euclid(na) == 0 && x % l2 == 0)
                .ok_or_else(|| {
                    GeometryError::InconsistentResidues("l^2 adjustment failed".into())
                })?;
            (m, r)
        } else {
            (na, c.rem_euclid(na))
        };
        // Absolutely smallest representative; ties prefer the negative one.
        let pos_rep = residue.rem_euclid(modulus);
        let neg_rep = pos_rep - modulus;
        let best = if neg_rep.abs() <= pos_rep {
            neg_rep
        } else {
            pos_rep
        };
        targets.push(best);
    }
    // Solve <alpha_i, sum_j x_j alpha_vee_j> = target_i.
    let gram: Vec<Vec<Rat>> = simples
        .iter()
        .map(|&i| {
            simples
                .iter()
                .map(|&j| Rat::from_integer(datum.pair_root(i, datum.coroot(j))))
                .collect()
        })
        .collect();
    let rhs: Vec<Rat> = targets.iter().map(|&t| Rat::from_integer(t)).collect();
    let x = linalg::solve_rat(&gram, &rhs)
        .ok_or_else(|| GeometryError::InconsistentResidues("singular Gram matrix".into()))?;
    let mut v = vec![Rat::zero(); rank];
    for (xj, &j) in x.iter().zip(&simples) {
        for (row, c) in datum.coroot(j).iter().enumerate() {
            v[row] += *xj * Rat::from_integer(*c);
        }
    }
    // Verify the defining property on every relevant root.
    for &i in &relevant {
        let val = datum.pair_rat(datum.root(i), &v);
        if !val.is_integer() {
            return Err(GeometryError::InconsistentResidues(
                "shift pairing non-integral".into(),
            ));
        }
        let c = system.residue(i).unwrap();
        if (val.to_integer() - c).rem_euclid(system.n_alpha(i)) != 0 {
            return Err(GeometryError::InconsistentResidues(
                "shift pairing misses residue".into(),
            ));
        }
    }
    Ok(v)
}

/// Simple walls of the base chi-alcove: members a of the twisted system,
/// positive on A_0, whose reflection satisfies
/// N(s_a) cap Phi_{chi,af} = {a}.
pub fn delta_chi(datum: &RootDatum, system: &TwistedAffineSystem) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for root in system.relevant_roots() {
        let c = system.residue(root).unwrap();
        let na = system.n_alpha(root);
        let k_min = if datum.is_positive_root(root) { 0 } else { 1 };
        // Smallest offset = c mod n_alpha that is >= k_min.
        let mut k = c.rem_euclid(na);
        while k < k_min {
            k += na;
        }
        let a = AffineRoot::new(root, k);
        let s = datum.affine_reflection(a);
        let hits: Vec<AffineRoot> = datum
            .n_set(&s)
            .into_iter()
            .filter(|&b| system.contains(b))
            .collect();
        if hits == [a] {
            out.push(a);
        }
    }
    out.sort();
    out
}

/// Coxeter matrix of the delta reflections; orders beyond the cap are None.
pub fn coxeter_matrix(
    datum: &RootDatum,
    delta: &[AffineRoot],
    cap: u32,
) -> Vec<Vec<Option<u32>>> {
    let refl: Vec<ExtendedAffineElement> =
        delta.iter().map(|&a| datum.affine_reflection(a)).collect();
    let rank = datum.rank();
    delta
        .iter()
        .enumerate()
        .map(|(i, _)| {
            delta
                .iter()
                .enumerate()
                .map(|(j, _)| {
                    let prod = refl[i].mul(&refl[j]);
                    let mut acc = ExtendedAffineElement::identity(rank);
                    for order in 1..=cap {
                        acc = acc.mul(&prod);
                        if acc.is_identity() {
                            return Some(order);
                        }
                    }
                    None
                })
                .collect()
        })
        .collect()
}

/// W_chi as Y_{Q,n}-cosets: scan W x (Y / Y_{Q,n}).
pub fn wchi_cosets(
    cover: &QuadraticCoverData,
    field: &TameField,
    chi: &GenuineCharacter,
) -> Result<CosetGroup, GeometryError> {
    let datum = cover.datum();
    let lattice = cover.lattice_yqn();
    let rank = datum.rank();
    let diag: Vec<i64> = (0..rank).map(|i| lattice[i][i]).collect();
    let mut reps: Vec<Vec<i64>> = vec![vec![]];
    for &d in &diag {
        let mut next = Vec::new();
        for r in &reps {
            for x in 0..d {
                let mut v = r.clone();
                v.push(x);
                next.push(v);
            }
        }
        reps = next;
    }
    let mut cosets = Vec::new();
    for w0 in datum.weyl_group() {
        for rep in &reps {
            let w = ExtendedAffineElement {
                linear: w0.clone(),
                translation: rep.clone(),
            };
            if weyl_act_char(cover, field, &w, chi)? == *chi {
                cosets.push((w0.clone(), linalg::lattice_reduce(&lattice, rep)));
            }
        }
    }
    cosets.sort();
    Ok(CosetGroup { lattice, cosets })
}

/// W_{chi,ex} = conjugate by t_v of (relevant-reflection group) x| Y_{Q,n},
/// in the same coset format: the w0-coset has representative translation
/// v - w0^{-1} v.
pub fn wchi_ex_cosets(
    cover: &QuadraticCoverData,
    system: &TwistedAffineSystem,
    shift: &[Rat],
    lattice: &[Vec<i64>],
) -> Result<CosetGroup, GeometryError> {
    let datum = cover.datum();
    // Finite group generated by the relevant reflections.
    let gens: Vec<WeylElement> = system
        .relevant_roots()
        .into_iter()
        .map(|i| datum.reflection(i))
        .collect();
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let id = WeylElement::identity(datum.rank());
    seen.insert(id.matrix().to_vec());
    let mut group = vec![id];
    let mut frontier = 0;
    while frontier < group.len() {
        let w = group[frontier].clone();
        frontier += 1;
        for g in &gens {
            let next = g.mul(&w);
            if seen.insert(next.matrix().to_vec()) {
                group.push(next);
            }
        }
    }
    let mut cosets = Vec::new();
    for w0 in group {
        let pre = w0.inv().apply_rat(shift);
        let mut trans = Vec::with_capacity(datum.rank());
        for (vi, pi) in shift.iter().zip(&pre) {
            let d = *vi - *pi;
            if !d.is_integer() {
                return Err(GeometryError::InconsistentResidues(
                    "v - w0^{-1} v is not integral".into(),
                ));
            }
            trans.push(d.to_integer());
        }
        cosets.push((w0, linalg::lattice_reduce(lattice, &trans)));
    }
    cosets.sort();
    cosets.dedup();
    Ok(CosetGroup {
        lattice: lattice.to_vec(),
        cosets,
    })
}

/// Descent of w in W_chi along the simple chi-walls: returns the reduced
/// word (leftmost factor first) and the residual alcove-stabilizing part,
/// so that w = s_{a_1} ... s_{a_k} * omega.
pub fn descend(
    datum: &RootDatum,
    system: &TwistedAffineSystem,
    delta: &[AffineRoot],
    w: &ExtendedAffineElement,
) -> Result<(Vec<AffineRoot>, ExtendedAffineElement), GeometryError> {
    let mut word = Vec::new();
    let mut cur = w.clone();
    let cap = twisted_length(datum, system, w) + 1;
    for _ in 0..cap {
        let mut progressed = false;
        let inv = cur.inv();
        for &a in delta {
            let img = datum.affine_action(&inv, a);
            if !datum.affine_is_positive(img) {
                word.push(a);
                cur = datum.affine_reflection(a).mul(&cur);
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Ok((word, cur));
        }
    }
    Err(GeometryError::DescentStuck)
}

/// Twisted length: separating chi-walls.
pub fn twisted_length(
    datum: &RootDatum,
    system: &TwistedAffineSystem,
    w: &ExtendedAffineElement,
) -> usize {
    datum
        .n_set(w)
        .into_iter()
        .filter(|&a| system.contains(a))
        .count()
}

/// Walks a point back across the walls of `system` to the chamber of
/// `target`, returning the product of the reflections used.
fn walk_to_chamber(
    datum: &RootDatum,
    system: &TwistedAffineSystem,
    start: &[Rat],
    target: &[Rat],
) -> Result<ExtendedAffineElement, GeometryError> {
    let separating = |z: &[Rat]| -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for root in system.relevant_roots() {
            if !datum.is_positive_root(root) {
                continue;
            }
            let c = system.residue(root).unwrap();
            let na = system.n_alpha(root);
            let vz = datum.pair_rat(datum.root(root), z);
            let vt = datum.pair_rat(datum.root(root), target);
            let lo = if vz < vt { vz } else { vt };
            let hi = if vz < vt { vt } else { vz };
            // Walls alpha + k with -k strictly between the two values.
            let mut k = c.rem_euclid(na);
            // Find smallest k = c mod na with -k < hi, then scan down.
            while Rat::from_integer(-k) < hi {
                k -= na;
            }
            loop {
                k += na;
                let wall = Rat::from_integer(-k);
                if wall <= lo {
                    break;
                }
                if wall < hi {
                    out.push(AffineRoot::new(root, k));
                }
            }
        }
        out
    };
    let mut z: Vec<Rat> = start.to_vec();
    let mut acc = ExtendedAffineElement::identity(datum.rank());
    let mut remaining = separating(&z).len() + 1;
    while remaining > 0 {
        let seps = separating(&z);
        if seps.is_empty() {
            return Ok(acc);
        }
        let a = seps[0];
        let s = datum.affine_reflection(a);
        z = s.apply_point(&z);
        acc = s.mul(&acc);
        let now = separating(&z).len();
        if now + 1 > remaining {
            return Err(GeometryError::DescentStuck);
        }
        remaining = now + 1;
    }
    Err(GeometryError::DescentStuck)
}

/// The mover w0: walks t_v(base point) back to the base chamber of the
/// residue-zero arrangement, so w0 t_v maps the base chi-alcove onto the
/// base residue-zero alcove.
pub fn mover_w0(
    datum: &RootDatum,
    system: &TwistedAffineSystem,
    shift: &[Rat],
) -> Result<ExtendedAffineElement, GeometryError> {
    let p0 = datum.base_alcove_point();
    let z: Vec<Rat> = p0
        .iter()
        .zip(shift)
        .map(|(a, b)| *a + *b)
        .collect();
    walk_to_chamber(datum, &system.residue_zero(), &z, &p0)
}

/// Projections of the stored W_chi generators to the alcove stabilizer.
pub fn omega_generators(
    datum: &RootDatum,
    system: &TwistedAffineSystem,
    delta: &[AffineRoot],
    wchi: &CosetGroup,
) -> Result<Vec<ExtendedAffineElement>, GeometryError> {
    let mut out: Vec<ExtendedAffineElement> = Vec::new();
    for g in wchi.generators() {
        let (_, omega) = descend(datum, system, delta, &g)?;
        if !omega.is_identity() && !out.contains(&omega) {
            out.push(omega);
        }
    }
    out.sort();
    Ok(out)
}

impl ChiGeometry {
    /// Full pipeline for one depth-zero character.
    pub fn compute(
        cover: &QuadraticCoverData,
        field: &TameField,
        chi: &GenuineCharacter,
    ) -> Result<ChiGeometry, GeometryError> {
        let datum = cover.datum();
        let system = twisted_system(cover, field, chi)?;
        let shift = shift_vector(cover, &system)?;
        let delta = delta_chi(datum, &system);
        let coxeter = coxeter_matrix(datum, &delta, 12);
        let mover = mover_w0(datum, &system, &shift)?;
        let wchi = wchi_cosets(cover, field, chi)?;
        let wchi_ex = wchi_ex_cosets(cover, &system, &shift, &wchi.lattice)?;
        let omega = omega_generators(datum, &system, &delta, &wchi)?;
        Ok(ChiGeometry {
            system,
            shift,
            delta_chi: delta,
            coxeter,
            mover,
            wchi,
            wchi_ex,
            omega_generators: omega,
            base_point: datum.base_alcove_point(),
        })
    }
}
