//! The Hecke algebra attached to a depth-zero character: free module on the
//! stabilizer group with normalized basis elements, coefficients Laurent
//! polynomials in q^{1/2}, multiplication by simple-wall descent.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::chi_geometry::{descend, ChiGeometry, GeometryError};
use crate::root_datum::{ExtendedAffineElement, RootDatum};
use crate::Rat;

/// Laurent polynomial in q^{1/2}: exponent (of q^{1/2}) to coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(0, 1)
    }

    /// coeff * q^{half_exp / 2}.
    pub fn monomial(half_exp: i32, coeff: i64) -> Laurent {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(half_exp, coeff);
        }
        Laurent { terms }
    }

    /// q^{-1/2} (q - 1), the coefficient in the quadratic relation.
    pub fn xi() -> Laurent {
        let mut l = Laurent::monomial(1, 1);
        l.add_term(-1, -1);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    fn add_term(&mut self, half_exp: i32, coeff: i64) {
        let slot = self.terms.entry(half_exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&half_exp);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Evaluation at a concrete prime power: a + b sqrt(q) with a, b
    /// rational; collapses the surd when q is a perfect square.
    pub fn specialize(&self, q: i64) -> QValue {
        let root = integer_sqrt(q);
        let mut rational = Rat::from_integer(0);
        let mut surd = Rat::from_integer(0);
        for (&e, &c) in &self.terms {
            let (whole, rem) = (e.div_euclid(2), e.rem_euclid(2));
            let base = pow_rat(q, whole) * Rat::from_integer(c);
            if rem == 0 {
                rational += base;
            } else if let Some(r) = root {
                rational += base * Rat::from_integer(r);
            } else {
                surd += base;
            }
        }
        QValue { rational, surd, q }
    }
}

fn integer_sqrt(q: i64) -> Option<i64> {
    if q < 0 {
        return None;
    }
    let mut r = 0i64;
    while r * r < q {
        r += 1;
    }
    if r * r == q {
        Some(r)
    } else {
        None
    }
}

fn pow_rat(q: i64, e: i32) -> Rat {
    let mut out = Rat::from_integer(1);
    let step = if e >= 0 {
        Rat::from_integer(q)
    } else {
        Rat::new(1, q)
    };
    for _ in 0..e.unsigned_abs() {
        out *= step;
    }
    out
}

/// rational + surd * sqrt(q); surd is zero when q is a perfect square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QValue {
    pub rational: Rat,
    pub surd: Rat,
    pub q: i64,
}

/// Element of the Hecke algebra: finite support over the stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    support: BTreeMap<ExtendedAffineElement, Laurent>,
}

impl HeckeElement {
    pub fn zero() -> HeckeElement {
        HeckeElement::default()
    }

    pub fn identity(rank: usize) -> HeckeElement {
        HeckeElement::basis(ExtendedAffineElement::identity(rank))
    }

    pub fn basis(w: ExtendedAffineElement) -> HeckeElement {
        let mut support = BTreeMap::new();
        support.insert(w, Laurent::one());
        HeckeElement { support }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coeff(&self, w: &ExtendedAffineElement) -> Laurent {
        self.support.get(w).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&ExtendedAffineElement, &Laurent)> {
        self.support.iter()
    }

    fn add_scaled(&mut self, w: ExtendedAffineElement, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let entry = self.support.entry(w).or_default();
        *entry = entry.add(c);
        let dead = entry.is_zero();
        if dead {
            let key: Vec<ExtendedAffineElement> = self
                .support
                .iter()
                .filter(|(_, l)| l.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.support.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in &other.support {
            out.add_scaled(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (w, l) in &self.support {
            out.add_scaled(w.clone(), &l.mul(c));
        }
        out
    }
}

/// Multiplication context: needs the chi-geometry for descent decisions.
pub struct HeckeAlgebra<'a> {
    datum: &'a RootDatum,
    geom: &'a ChiGeometry,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(datum: &'a RootDatum, geom: &'a ChiGeometry) -> HeckeAlgebra<'a> {
        HeckeAlgebra { datum, geom }
    }

    pub fn identity(&self) -> HeckeElement {
        HeckeElement::identity(self.datum.rank())
    }

    /// e_w * e_x for basis elements: decompose w into simple chi-wall
    /// reflections times an alcove-stabilizing part and fold the
    /// one-reflection rule.
    pub fn basis_product(
        &self,
        w: &ExtendedAffineElement,
        x: &ExtendedAffineElement,
    ) -> Result<HeckeElement, GeometryError> {
        let (word, omega) = descend(self.datum, &self.geom.system, &self.geom.delta_chi, w)?;
        let mut acc = HeckeElement::basis(omega.mul(x));
        for &a in word.iter().rev() {
            acc = self.simple_times(a, &acc)?;
        }
        Ok(acc)
    }

    /// e_a * h for a simple chi-wall a.
    fn simple_times(
        &self,
        a: crate::root_datum::AffineRoot,
        h: &HeckeElement,
    ) -> Result<HeckeElement, GeometryError> {
        let s = self.datum.affine_reflection(a);
        let mut out = HeckeElement::zero();
        for (x, c) in h.support() {
            let pulled = self.datum.affine_action(&x.inv(), a);
            let sx = s.mul(x);
            out.add_scaled(sx, c);
            if !self.datum.affine_is_positive(pulled) {
                out.add_scaled(x.clone(), &c.mul(&Laurent::xi()));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement, GeometryError> {
        let mut out = HeckeElement::zero();
        for (w, c) in x.support() {
            for (u, d) in y.support() {
                let prod = self.basis_product(w, u)?;
                for (t, l) in prod.support() {
                    out.add_scaled(t.clone(), &l.mul(&c.mul(d)));
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a simple-wall basis element: e_a - q^{-1/2}(q-1).
    pub fn invert_simple(&self, a: crate::root_datum::AffineRoot) -> HeckeElement {
        let s = self.datum.affine_reflection(a);
        let mut out = HeckeElement::basis(s);
        out.add_scaled(
            ExtendedAffineElement::identity(self.datum.rank()),
            &Laurent::xi().neg(),
        );
        out
    }

    /// Length of w in the twisted system (number of separating chi-walls).
    pub fn length(&self, w: &ExtendedAffineElement) -> usize {
        crate::chi_geometry::twisted_length(self.datum, &self.geom.system, w)
    }
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;
    use crate::cover_torus::GenuineCharacter;
    use crate::quad_cover::{minimal_invariant_d, QuadraticCoverData};
    use crate::rng::SplitMix64;
    use crate::tame_arith::TameField;
    use alloc::vec;
    use alloc::vec::Vec;

    fn sl3_setup() -> (QuadraticCoverData, TameField, ChiGeometry) {
        let datum = crate::root_datum::RootDatum::preset("SL", 3).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), minimal_invariant_d(&datum), 2).unwrap();
        let field = TameField::new(7, 1, 2).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![3, 3]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        (cover, field, geom)
    }

    #[test]
    fn laurent_arithmetic() {
        let xi = Laurent::xi();
        let sq = xi.mul(&xi);
        // (q^{1/2} - q^{-1/2})^2 = q - 2 + q^{-1}.
        let mut expect = Laurent::monomial(2, 1);
        expect = expect.add(&Laurent::monomial(0, -2));
        expect = expect.add(&Laurent::monomial(-2, 1));
        assert_eq!(sq, expect);
        assert!(xi.add(&xi.neg()).is_zero());
    }

    #[test]
    fn specialize_perfect_square_collapses() {
        let xi = Laurent::xi();
        let v = xi.specialize(4);
        // 2 - 1/2 = 3/2, no surd part.
        assert_eq!(v.rational, Rat::new(3, 2));
        assert_eq!(v.surd, Rat::from_integer(0));

        let v5 = xi.specialize(5);
        assert_eq!(v5.rational, Rat::from_integer(0));
        // sqrt5 - 1/sqrt5 = (5 - 1)/sqrt5 = (4/5) sqrt5.
        assert_eq!(v5.surd, Rat::new(4, 5));
    }

    #[test]
    fn quadratic_relation() {
        let (cover, _field, geom) = sl3_setup();
        let datum = cover.datum();
        let alg = HeckeAlgebra::new(datum, &geom);
        for &a in &geom.delta_chi {
            let e = HeckeElement::basis(datum.affine_reflection(a));
            let sq = alg.mul(&e, &e).unwrap();
            let expect = alg.identity().add(&e.scale(&Laurent::xi()));
            assert_eq!(sq, expect);
        }
    }

    #[test]
    fn braid_relation_order_three() {
        let (cover, _field, geom) = sl3_setup();
        let datum = cover.datum();
        let alg = HeckeAlgebra::new(datum, &geom);
        let a = HeckeElement::basis(datum.affine_reflection(geom.delta_chi[0]));
        let b = HeckeElement::basis(datum.affine_reflection(geom.delta_chi[1]));
        let aba = alg
            .mul(&a, &alg.mul(&b, &a).unwrap())
            .unwrap();
        let bab = alg
            .mul(&b, &alg.mul(&a, &b).unwrap())
            .unwrap();
        assert_eq!(aba, bab);
    }

    #[test]
    fn simple_inverse() {
        let (cover, _field, geom) = sl3_setup();
        let datum = cover.datum();
        let alg = HeckeAlgebra::new(datum, &geom);
        for &a in &geom.delta_chi {
            let e = HeckeElement::basis(datum.affine_reflection(a));
            let inv = alg.invert_simple(a);
            assert_eq!(alg.mul(&e, &inv).unwrap(), alg.identity());
            assert_eq!(alg.mul(&inv, &e).unwrap(), alg.identity());
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        let (cover, _field, geom) = sl3_setup();
        let datum = cover.datum();
        let alg = HeckeAlgebra::new(datum, &geom);
        // Random short products of stabilizer coset representatives.
        let gens: Vec<ExtendedAffineElement> = geom.wchi.generators();
        let mut rng = SplitMix64::new(0x9e3779b97f4a7c15);
        for _ in 0..40 {
            let pick = |r: &mut SplitMix64| {
                let mut w = ExtendedAffineElement::identity(datum.rank());
                let len = r.below(3) as usize;
                for _ in 0..len {
                    let g = &gens[r.below(gens.len() as u64) as usize];
                    w = if r.below(2) == 0 { w.mul(g) } else { w.mul(&g.inv()) };
                }
                HeckeElement::basis(w)
            };
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let left = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
            let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn product_lands_in_stabilizer() {
        let (cover, _field, geom) = sl3_setup();
        let datum = cover.datum();
        let alg = HeckeAlgebra::new(datum, &geom);
        let gens = geom.wchi.generators();
        let mut rng = SplitMix64::new(7);
        for _ in 0..25 {
            let a = &gens[rng.below(gens.len() as u64) as usize];
            let b = &gens[rng.below(gens.len() as u64) as usize];
            let prod = alg
                .mul(&HeckeElement::basis(a.clone()), &HeckeElement::basis(b.clone()))
                .unwrap();
            for (w, _) in prod.support() {
                assert!(geom.wchi.contains(w), "support left the stabilizer");
            }
        }
    }

    #[test]
    fn length_additivity_on_reduced_products() {
        let (cover, _field, geom) = sl3_setup();
        let datum = cover.datum();
        let alg = HeckeAlgebra::new(datum, &geom);
        let s0 = datum.affine_reflection(geom.delta_chi[0]);
        let s1 = datum.affine_reflection(geom.delta_chi[1]);
        let w = s0.mul(&s1);
        assert_eq!(alg.length(&s0), 1);
        assert_eq!(alg.length(&w), 2);
        // Reduced product: single support term.
        let prod = alg
            .mul(&HeckeElement::basis(s0.clone()), &HeckeElement::basis(s1))
            .unwrap();
        assert_eq!(prod.support().count(), 1);
        assert_eq!(prod.coeff(&w), Laurent::one());
    }
}
