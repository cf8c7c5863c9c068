//! The covering torus over its compact part, and depth-zero characters.
//!
//! An element is a root of unity times the fixed section applied to a torus
//! point with coordinates in F^x/(1+p_F); products pick up tame-symbol
//! cocycle factors weighted by D. A depth-zero genuine character is recorded
//! by its exponent vector m on the Y-basis unit coordinates; evaluation of
//! the central mu_n goes through the configured embedding.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::quad_cover::QuadraticCoverData;
use crate::root_datum::{AffineRoot, ExtendedAffineElement, RootDatum};
use crate::tame_arith::{hilbert, FieldElt, FieldError, RootOfUnity, TameField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusError {
    Field(FieldError),
    /// Evaluation requires the compact part: all coordinates must be units.
    NotCompact { coordinate: usize },
    /// A depth value c_alpha must be a positive integer.
    BadDepth { root: usize, value: i64 },
    /// The requested operation needs a depth-zero character.
    PositiveDepth,
    /// No stored or derivable depth for this root.
    NoDepth { root: usize },
    Shape(String),
}

impl fmt::Display for TorusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusError::Field(e) => write!(f, "{e}"),
            TorusError::NotCompact { coordinate } => {
                write!(f, "coordinate {coordinate} has nonzero valuation")
            }
            TorusError::BadDepth { root, value } => {
                write!(f, "depth value {value} at root {root} must be >= 1")
            }
            TorusError::PositiveDepth => write!(f, "operation requires a depth-zero character"),
            TorusError::NoDepth { root } => write!(f, "no depth stored for root {root}"),
            TorusError::Shape(s) => write!(f, "shape error: {s}"),
        }
    }
}

impl From<FieldError> for TorusError {
    fn from(e: FieldError) -> Self {
        TorusError::Field(e)
    }
}

/// zeta * s(prod_i e_i(x_i)) in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTorusElt {
    pub zeta: RootOfUnity,
    pub coords: Vec<FieldElt>,
}

impl CoverTorusElt {
    pub fn section(coords: Vec<FieldElt>) -> Self {
        CoverTorusElt {
            zeta: RootOfUnity::one(),
            coords,
        }
    }

    pub fn identity(rank: usize) -> Self {
        CoverTorusElt {
            zeta: RootOfUnity::one(),
            coords: vec![FieldElt::one(); rank],
        }
    }

    pub fn is_compact(&self) -> bool {
        self.coords.iter().all(|c| c.is_unit())
    }
}

/// Product in the cover: coordinates multiply, and the D-weighted tame
/// cocycle contributes prod_{i,j} (x_i, x'_j)^{D_ij} to the central part.
pub fn torus_mul(
    cover: &QuadraticCoverData,
    field: &TameField,
    t1: &CoverTorusElt,
    t2: &CoverTorusElt,
) -> CoverTorusElt {
    let r = cover.datum().rank();
    assert_eq!(t1.coords.len(), r);
    assert_eq!(t2.coords.len(), r);
    let mut zeta = t1.zeta.mul(field, &t2.zeta);
    for i in 0..r {
        for j in 0..r {
            let w = cover.d_matrix()[i][j];
            if w != 0 {
                let sym = hilbert(field, &t1.coords[i], &t2.coords[j]);
                zeta = zeta.mul(field, &sym.pow(field, w));
            }
        }
    }
    let coords = t1
        .coords
        .iter()
        .zip(&t2.coords)
        .map(|(a, b)| a.mul(field, b))
        .collect();
    CoverTorusElt { zeta, coords }
}

pub fn torus_inv(
    cover: &QuadraticCoverData,
    field: &TameField,
    t: &CoverTorusElt,
) -> CoverTorusElt {
    let coords: Vec<FieldElt> = t.coords.iter().map(|c| c.inv(field)).collect();
    // s(t)^{-1} = s(t^{-1}) * sigma(t, t^{-1})^{-1}.
    let naive = CoverTorusElt {
        zeta: t.zeta.inv(field),
        coords,
    };
    // The product t * naive is purely central and equals the cocycle
    // sigma(t0, t0^{-1}); divide it back out.
    let prod = torus_mul(cover, field, t, &naive);
    CoverTorusElt {
        zeta: naive.zeta.mul(field, &prod.zeta.inv(field)),
        coords: naive.coords,
    }
}

/// h_alpha(x) = s(alpha_vee(x)).
pub fn h_alpha(cover: &QuadraticCoverData, field: &TameField, root: usize, x: &FieldElt) -> CoverTorusElt {
    let coords = cover
        .datum()
        .coroot(root)
        .iter()
        .map(|&c| x.pow(field, c))
        .collect();
    CoverTorusElt::section(coords)
}

/// Product w_alpha(x1) w_alpha(x2) of the two rank-one representatives,
/// rewritten as central factor times h_alpha: the central part is
/// (-x1, -x2)^{Q(alpha_vee)} and the torus part h_alpha(-x1/x2).
pub fn wbar_product(
    cover: &QuadraticCoverData,
    field: &TameField,
    root: usize,
    x1: &FieldElt,
    x2: &FieldElt,
) -> CoverTorusElt {
    let q = cover.q_of(cover.datum().coroot(root));
    let central = hilbert(field, &x1.neg(field), &x2.neg(field)).pow(field, q);
    let arg = x1.neg(field).mul(field, &x2.inv(field));
    let mut out = h_alpha(cover, field, root, &arg);
    out.zeta = out.zeta.mul(field, &central);
    out
}

/// Depth-zero genuine character: exponent vector m on Y-basis units, plus an
/// optional stored depth table c_alpha (positive integers) for descriptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenuineCharacter {
    pub m: Vec<i64>,
    depth: Option<BTreeMap<usize, i64>>,
}

impl GenuineCharacter {
    pub fn depth_zero(field: &TameField, m: Vec<i64>) -> Self {
        GenuineCharacter {
            m: m.into_iter().map(|x| field.reduce(x)).collect(),
            depth: None,
        }
    }

    pub fn with_depth(
        field: &TameField,
        m: Vec<i64>,
        depth: BTreeMap<usize, i64>,
    ) -> Result<Self, TorusError> {
        for (&root, &value) in &depth {
            if value < 1 {
                return Err(TorusError::BadDepth { root, value });
            }
        }
        Ok(GenuineCharacter {
            m: m.into_iter().map(|x| field.reduce(x)).collect(),
            depth: Some(depth),
        })
    }

    pub fn is_depth_zero(&self) -> bool {
        self.depth.is_none()
    }

    /// m(y) for y in Y.
    pub fn m_of(&self, field: &TameField, y: &[i64]) -> i64 {
        field.reduce(self.m.iter().zip(y).map(|(a, b)| a * b).sum())
    }
}

/// chi(t) for t in the compact part of the cover.
pub fn char_eval(
    field: &TameField,
    chi: &GenuineCharacter,
    t: &CoverTorusElt,
) -> Result<RootOfUnity, TorusError> {
    if let Some(i) = t.coords.iter().position(|c| !c.is_unit()) {
        return Err(TorusError::NotCompact { coordinate: i });
    }
    let central = field.eps(t.zeta)?;
    let mut exp = central.exp;
    for (mi, c) in chi.m.iter().zip(&t.coords) {
        exp = field.reduce(exp + mi * c.unit_exp);
    }
    Ok(RootOfUnity { exp })
}

/// Exponent of the affine character chi_{alpha + k} on units:
/// e(a) = m(alpha_vee) - eps * k * Q(alpha_vee) * (q-1)/n  (mod q-1).
pub fn chi_affine(
    cover: &QuadraticCoverData,
    field: &TameField,
    chi: &GenuineCharacter,
    a: AffineRoot,
) -> Result<i64, TorusError> {
    if !chi.is_depth_zero() {
        return Err(TorusError::PositiveDepth);
    }
    let m = chi.m_of(field, cover.datum().coroot(a.root));
    let q = cover.q_of(cover.datum().coroot(a.root));
    Ok(field.reduce(m - field.eps_exp() * a.offset * q * field.mu_n_step()))
}

/// Action of w = w0 t_{y0} on characters: translation shifts
/// m by -eps (q-1)/n B_Q(y0, -), then the linear part transports m through
/// w0^{-1} on Y.
pub fn weyl_act_char(
    cover: &QuadraticCoverData,
    field: &TameField,
    w: &ExtendedAffineElement,
    chi: &GenuineCharacter,
) -> Result<GenuineCharacter, TorusError> {
    if !chi.is_depth_zero() {
        return Err(TorusError::PositiveDepth);
    }
    let r = cover.datum().rank();
    let mut shifted = Vec::with_capacity(r);
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        let b = cover.b_of(&w.translation, &e);
        shifted.push(field.reduce(chi.m[i] - field.eps_exp() * field.mu_n_step() * b));
    }
    let winv = w.linear.inv();
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        let pre = winv.apply(&e);
        out.push(field.reduce(shifted.iter().zip(&pre).map(|(a, b)| a * b).sum()));
    }
    Ok(GenuineCharacter {
        m: out,
        depth: None,
    })
}

/// c_alpha from the stored depth table.
pub fn c_alpha(chi: &GenuineCharacter, root: usize) -> Result<i64, TorusError> {
    match &chi.depth {
        None => Ok(1),
        Some(map) => map.get(&root).copied().ok_or(TorusError::NoDepth { root }),
    }
}

/// Floor data f_chi: floor(c/2) at alpha and floor((c+1)/2) at -alpha for
/// positive alpha.
pub fn f_chi(
    datum: &RootDatum,
    chi: &GenuineCharacter,
    root: usize,
) -> Result<i64, TorusError> {
    let pos = datum.is_positive_root(root);
    let base = if pos { root } else { datum.negative_of(root) };
    let c = c_alpha(chi, base)?;
    Ok(if pos { c / 2 } else { (c + 1) / 2 })
}

/// Depth descriptor: the floor values over all roots, keyed by root index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthDescriptor {
    pub floors: BTreeMap<usize, i64>,
}

pub fn j_chi_descriptor(
    datum: &RootDatum,
    chi: &GenuineCharacter,
) -> Result<DepthDescriptor, TorusError> {
    let mut floors = BTreeMap::new();
    for root in 0..datum.num_roots() {
        floors.insert(root, f_chi(datum, chi, root)?);
    }
    Ok(DepthDescriptor { floors })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPrimeWarning {
    /// Positions into the simple list.
    pub component: Vec<usize>,
    pub type_name: String,
    pub message: String,
}

/// Residue characteristics for which the depth-zero theory needs care, by
/// Dynkin type: A_m wants p > m + 1; B, C, D exclude 2; F4 excludes 2, 3;
/// G2 and E6 exclude 2, 3, 5; E7 and E8 exclude 2, 3, 5, 7.
pub fn bad_prime_check(datum: &RootDatum, p: i64) -> Vec<BadPrimeWarning> {
    let simples = datum.simple_indices();
    let mut out = Vec::new();
    for comp in datum.dynkin_components() {
        let m = comp.len();
        let bond = |i: usize, j: usize| -> i64 {
            let a = datum.pair(datum.root(simples[i]), datum.coroot(simples[j]));
            let b = datum.pair(datum.root(simples[j]), datum.coroot(simples[i]));
            a * b
        };
        let degree = |i: usize| -> usize {
            comp.iter().filter(|&&j| j != i && bond(i, j) != 0).count()
        };
        let max_bond = comp
            .iter()
            .flat_map(|&i| comp.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| bond(i, j))
            .max()
            .unwrap_or(0);
        let branch = comp.iter().copied().find(|&i| degree(i) >= 3);
        let type_name: String;
        let bad: bool;
        if max_bond >= 3 {
            type_name = "G2".into();
            bad = [2, 3, 5].contains(&p);
        } else if max_bond == 2 {
            // F4 iff rank 4 and both ends of the double bond are interior.
            let mut interior_double = false;
            for &i in &comp {
                for &j in &comp {
                    if i < j && bond(i, j) == 2 && degree(i) == 2 && degree(j) == 2 {
                        interior_double = true;
                    }
                }
            }
            if m == 4 && interior_double {
                type_name = "F4".into();
                bad = [2, 3].contains(&p);
            } else {
                type_name = format!("BC{m}");
                bad = p == 2;
            }
        } else if let Some(b) = branch {
            // Arm lengths from the branch node.
            let mut arms: Vec<usize> = Vec::new();
            let mut visited = vec![b];
            for &start in comp.iter().filter(|&&i| i != b && bond(i, b) != 0) {
                let mut len = 1;
                let mut prev = b;
                let mut cur = start;
                visited.push(cur);
                loop {
                    let next = comp
                        .iter()
                        .copied()
                        .find(|&j| j != prev && j != cur && bond(cur, j) != 0);
                    match next {
                        Some(j) => {
                            len += 1;
                            prev = cur;
                            cur = j;
                            visited.push(j);
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort();
            match (m, arms.as_slice()) {
                (6, [1, 2, 2]) => {
                    type_name = "E6".into();
                    bad = [2, 3, 5].contains(&p);
                }
                (7, [1, 2, 3]) => {
                    type_name = "E7".into();
                    bad = [2, 3, 5, 7].contains(&p);
                }
                (8, [1, 2, 4]) => {
                    type_name = "E8".into();
                    bad = [2, 3, 5, 7].contains(&p);
                }
                _ => {
                    type_name = format!("D{m}");
                    bad = p == 2;
                }
            }
        } else {
            type_name = format!("A{m}");
            bad = p <= (m as i64) + 1;
        }
        if bad {
            out.push(BadPrimeWarning {
                component: comp.clone(),
                message: format!(
                    "residue characteristic {p} is bad for the type {type_name} component"
                ),
                type_name,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::quad_cover::minimal_invariant_d;

    fn gl2_setup() -> (RootDatum, QuadraticCoverData, TameField) {
        let datum = RootDatum::preset("GL", 2).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), vec![vec![1, -1], vec![-1, 1]], 4).unwrap();
        let field = TameField::new(5, 1, 4).unwrap();
        (datum, cover, field)
    }

    #[test]
    fn torus_mul_cocycle_example() {
        // [s(e1(pi)), s(e2(g))] should have exponent B(e1,e2) * (pi, g)-part:
        // the commutator exponent is -2 * 1 * (q-1)/4 mod 4 = 2.
        let (_, cover, field) = gl2_setup();
        let a = CoverTorusElt::section(vec![FieldElt::uniformizer(), FieldElt::one()]);
        let b = CoverTorusElt::section(vec![FieldElt::one(), FieldElt::unit(&field, 1)]);
        let ab = torus_mul(&cover, &field, &a, &b);
        let ba = torus_mul(&cover, &field, &b, &a);
        // Same underlying coordinates; commutator is the central difference.
        assert_eq!(ab.coords, ba.coords);
        let comm = field.reduce(ab.zeta.exp - ba.zeta.exp);
        assert_eq!(comm, 2);
    }

    #[test]
    fn commutator_is_b_weighted_symbol() {
        let (datum, cover, field) = gl2_setup();
        let elts = [
            FieldElt::uniformizer(),
            FieldElt::unit(&field, 1),
            FieldElt { valuation: -1, unit_exp: 2 },
        ];
        for y1 in [[1i64, 0], [0, 1], [1, -1], [2, 1]] {
            for y2 in [[1i64, 0], [1, 1], [0, -1]] {
                for a in &elts {
                    for b in &elts {
                        let t1 = CoverTorusElt::section(
                            y1.iter().map(|&c| a.pow(&field, c)).collect(),
                        );
                        let t2 = CoverTorusElt::section(
                            y2.iter().map(|&c| b.pow(&field, c)).collect(),
                        );
                        let ab = torus_mul(&cover, &field, &t1, &t2);
                        let ba = torus_mul(&cover, &field, &t2, &t1);
                        let comm = field.reduce(ab.zeta.exp - ba.zeta.exp);
                        let expect = hilbert(&field, a, b)
                            .pow(&field, cover.b_of(&y1, &y2))
                            .exp;
                        assert_eq!(comm, expect);
                        let _ = datum;
                    }
                }
            }
        }
    }

    #[test]
    fn torus_inverse() {
        let (_, cover, field) = gl2_setup();
        let t = CoverTorusElt {
            zeta: RootOfUnity::new(&field, 2),
            coords: vec![
                FieldElt { valuation: 1, unit_exp: 3 },
                FieldElt { valuation: -1, unit_exp: 1 },
            ],
        };
        let inv = torus_inv(&cover, &field, &t);
        let prod = torus_mul(&cover, &field, &t, &inv);
        assert_eq!(prod, CoverTorusElt::identity(2));
        let prod = torus_mul(&cover, &field, &inv, &t);
        assert_eq!(prod, CoverTorusElt::identity(2));
    }

    #[test]
    fn h_alpha_and_wbar() {
        let (datum, cover, field) = gl2_setup();
        let alpha = datum.simple_indices()[0];
        let g = FieldElt::unit(&field, 1);
        let h = h_alpha(&cover, &field, alpha, &g);
        assert_eq!(h.coords[0].unit_exp, 1);
        assert_eq!(h.coords[1].unit_exp, field.reduce(-1));
        assert_eq!(h.zeta.exp, 0);
        // wbar(pi^{-1})^2 rewrites to (pi,pi)^{Q(alpha_vee)} h_alpha(-1).
        let x = FieldElt { valuation: -1, unit_exp: 0 };
        let w2 = wbar_product(&cover, &field, alpha, &x, &x);
        let minus_one = FieldElt::minus_one(&field);
        let expect_torus = h_alpha(&cover, &field, alpha, &minus_one);
        assert_eq!(w2.coords, expect_torus.coords);
        let central = hilbert(&field, &FieldElt::uniformizer(), &FieldElt::uniformizer())
            .pow(&field, cover.q_of(datum.coroot(alpha)));
        assert_eq!(w2.zeta, central);
    }

    #[test]
    fn char_eval_and_compactness() {
        let (_, _, field) = gl2_setup();
        let chi = GenuineCharacter::depth_zero(&field, vec![2, 0]);
        let t = CoverTorusElt {
            zeta: RootOfUnity::new(&field, 1),
            coords: vec![FieldElt::unit(&field, 1), FieldElt::unit(&field, 3)],
        };
        assert_eq!(char_eval(&field, &chi, &t).unwrap().exp, field.reduce(1 + 2));
        let bad = CoverTorusElt::section(vec![FieldElt::uniformizer(), FieldElt::one()]);
        assert!(matches!(
            char_eval(&field, &chi, &bad),
            Err(TorusError::NotCompact { coordinate: 0 })
        ));
    }

    #[test]
    fn chi_affine_gl2_example() {
        // Example with order-2 character: e(alpha + k) = 2 - 4k = 2 mod 4.
        let (datum, cover, field) = gl2_setup();
        let chi = GenuineCharacter::depth_zero(&field, vec![2, 0]);
        let alpha = datum.simple_indices()[0];
        for k in -3..=3 {
            let e = chi_affine(&cover, &field, &chi, AffineRoot::new(alpha, k)).unwrap();
            assert_eq!(e, 2);
        }
    }

    #[test]
    fn chi_affine_sl3_order_two() {
        // SL3, n = 2, q = 7: m = (3, 3). e(alpha + k) = 3(1 - k) mod 6:
        // vanishes iff k odd; for alpha + beta it vanishes iff k even.
        let datum = RootDatum::preset("SL", 3).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), minimal_invariant_d(&datum), 2).unwrap();
        let field = TameField::new(7, 1, 2).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![3, 3]);
        let alpha = datum.simple_indices()[0];
        let high = datum.highest_roots()[0];
        for k in -2..=2 {
            let ea = chi_affine(&cover, &field, &chi, AffineRoot::new(alpha, k)).unwrap();
            assert_eq!(ea == 0, k.rem_euclid(2) == 1, "alpha k={k}");
            let eh = chi_affine(&cover, &field, &chi, AffineRoot::new(high, k)).unwrap();
            assert_eq!(eh == 0, k.rem_euclid(2) == 0, "high k={k}");
        }
    }

    #[test]
    fn weyl_action_gl2_stabilizer() {
        let (datum, cover, field) = gl2_setup();
        let chi = GenuineCharacter::depth_zero(&field, vec![2, 0]);
        let alpha = datum.simple_indices()[0];
        // t_y for y in Y_{Q,n} fixes chi.
        let w = ExtendedAffineElement::translation_by(&[1, 1]);
        assert_eq!(weyl_act_char(&cover, &field, &w, &chi).unwrap(), chi);
        // t_{e1} alone does not.
        let w = ExtendedAffineElement::translation_by(&[1, 0]);
        assert_ne!(weyl_act_char(&cover, &field, &w, &chi).unwrap(), chi);
        // s_alpha t_{e1} does.
        let w = ExtendedAffineElement {
            linear: datum.reflection(alpha),
            translation: vec![1, 0],
        };
        assert_eq!(weyl_act_char(&cover, &field, &w, &chi).unwrap(), chi);
    }

    #[test]
    fn weyl_action_is_group_action() {
        let (datum, cover, field) = gl2_setup();
        let chi = GenuineCharacter::depth_zero(&field, vec![1, 3]);
        let a = ExtendedAffineElement {
            linear: datum.reflection(datum.simple_indices()[0]),
            translation: vec![2, -1],
        };
        let b = ExtendedAffineElement::translation_by(&[0, 1]);
        let lhs = weyl_act_char(&cover, &field, &a.mul(&b), &chi).unwrap();
        let rhs = weyl_act_char(
            &cover,
            &field,
            &a,
            &weyl_act_char(&cover, &field, &b, &chi).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn depth_data() {
        let (datum, _, field) = gl2_setup();
        let mut depth = BTreeMap::new();
        let alpha = datum.simple_indices()[0];
        depth.insert(alpha, 3i64);
        let chi = GenuineCharacter::with_depth(&field, vec![0, 0], depth).unwrap();
        assert_eq!(c_alpha(&chi, alpha).unwrap(), 3);
        assert_eq!(f_chi(&datum, &chi, alpha).unwrap(), 1);
        let neg = datum.negative_of(alpha);
        assert_eq!(f_chi(&datum, &chi, neg).unwrap(), 2);
        let desc = j_chi_descriptor(&datum, &chi).unwrap();
        assert_eq!(desc.floors.len(), 2);
        // Depth-zero default: c = 1 everywhere, floors 0 and 1.
        let chi0 = GenuineCharacter::depth_zero(&field, vec![0, 0]);
        assert_eq!(f_chi(&datum, &chi0, alpha).unwrap(), 0);
        assert_eq!(f_chi(&datum, &chi0, neg).unwrap(), 1);
        // Invalid depth rejected.
        let mut bad = BTreeMap::new();
        bad.insert(alpha, 0i64);
        assert!(matches!(
            GenuineCharacter::with_depth(&field, vec![0, 0], bad),
            Err(TorusError::BadDepth { value: 0, .. })
        ));
        // Affine character evaluation refuses positive depth.
        let cover = gl2_setup().1;
        let mut depth = BTreeMap::new();
        depth.insert(alpha, 2i64);
        let chid = GenuineCharacter::with_depth(&field, vec![0, 0], depth).unwrap();
        assert!(matches!(
            chi_affine(&cover, &field, &chid, AffineRoot::new(alpha, 0)),
            Err(TorusError::PositiveDepth)
        ));
    }

    #[test]
    fn bad_primes_by_type() {
        let sl3 = RootDatum::preset("SL", 3).unwrap();
        assert_eq!(bad_prime_check(&sl3, 3).len(), 1);
        assert!(bad_prime_check(&sl3, 5).is_empty());
        let sp4 = RootDatum::preset("Sp", 4).unwrap();
        assert_eq!(bad_prime_check(&sp4, 2).len(), 1);
        assert!(bad_prime_check(&sp4, 3).is_empty());
        let g2 = RootDatum::preset("G2", 2).unwrap();
        assert_eq!(bad_prime_check(&g2, 5).len(), 1);
        assert!(bad_prime_check(&g2, 7).is_empty());
        let so8 = RootDatum::preset("SO", 8).unwrap();
        assert_eq!(bad_prime_check(&so8, 2)[0].type_name, "D4");
        assert!(bad_prime_check(&so8, 3).is_empty());
        let so7 = RootDatum::preset("SO", 7).unwrap();
        assert_eq!(bad_prime_check(&so7, 2)[0].type_name, "BC3");
    }
}
