//! Randomized algebraic property checks for the arithmetic layers.

use covering_hecke::hecke_algebra::Laurent;
use covering_hecke::linalg;
use covering_hecke::root_datum::{ExtendedAffineElement, RootDatum};
use covering_hecke::tame_arith::{hilbert, FieldElt, TameField};
use covering_hecke::Rat;
use proptest::prelude::*;

fn field() -> TameField {
    TameField::new(7, 1, 3).unwrap()
}

fn elt() -> impl Strategy<Value = FieldElt> {
    (-4i64..=4, 0i64..6).prop_map(|(valuation, unit_exp)| FieldElt {
        valuation,
        unit_exp,
    })
}

fn word() -> impl Strategy<Value = ExtendedAffineElement> {
    (
        proptest::collection::vec(0usize..3, 0..6),
        proptest::collection::vec(-2i64..=2, 2),
    )
        .prop_map(|(letters, trans)| {
            let datum = RootDatum::preset("SL", 3).unwrap();
            let gens: Vec<ExtendedAffineElement> = datum
                .simple_affine_roots()
                .into_iter()
                .map(|a| datum.affine_reflection(a))
                .collect();
            let mut w = ExtendedAffineElement::translation_by(&trans);
            for l in letters {
                w = w.mul(&gens[l]);
            }
            w
        })
}

fn laurent() -> impl Strategy<Value = Laurent> {
    proptest::collection::vec((-4i32..=4, -5i64..=5), 0..5).prop_map(|terms| {
        let mut out = Laurent::zero();
        for (e, c) in terms {
            out = out.add(&Laurent::monomial(e, c));
        }
        out
    })
}

proptest! {
    #[test]
    fn hilbert_is_bimultiplicative(a in elt(), b in elt(), c in elt()) {
        let f = field();
        let ab = FieldElt {
            valuation: a.valuation + b.valuation,
            unit_exp: f.reduce(a.unit_exp + b.unit_exp),
        };
        let lhs = hilbert(&f, &ab, &c).exp;
        let rhs = f.reduce(hilbert(&f, &a, &c).exp + hilbert(&f, &b, &c).exp);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hilbert_is_antisymmetric(a in elt(), b in elt()) {
        let f = field();
        prop_assert_eq!(f.reduce(hilbert(&f, &a, &b).exp + hilbert(&f, &b, &a).exp), 0);
    }

    #[test]
    fn hilbert_kills_unit_pairs(x in 0i64..6, y in 0i64..6) {
        let f = field();
        let a = FieldElt { valuation: 0, unit_exp: x };
        let b = FieldElt { valuation: 0, unit_exp: y };
        prop_assert_eq!(hilbert(&f, &a, &b).exp, 0);
    }

    #[test]
    fn extended_group_laws(u in word(), v in word(), w in word()) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        let id = ExtendedAffineElement::identity(2);
        prop_assert_eq!(u.mul(&u.inv()), id.clone());
        prop_assert_eq!(u.inv().mul(&u), id);
        // Point action is compatible with the product.
        let p = vec![Rat::new(1, 5), Rat::new(2, 7)];
        prop_assert_eq!(
            u.mul(&v).apply_point(&p),
            u.apply_point(&v.apply_point(&p))
        );
    }

    #[test]
    fn length_is_inverse_invariant(u in word()) {
        let datum = RootDatum::preset("SL", 3).unwrap();
        prop_assert_eq!(datum.length(&u), datum.length(&u.inv()));
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&Laurent::one()), a.clone());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn congruence_solutions_are_solutions(s in -20i64..20, t in -20i64..20, m in 2i64..30) {
        match linalg::solve_congruence(s, t, m) {
            Some(k) => prop_assert_eq!((k * s - t).rem_euclid(m), 0),
            None => {
                for k in 0..m {
                    prop_assert_ne!((k * s - t).rem_euclid(m), 0);
                }
            }
        }
    }

    #[test]
    fn box_reduction_stays_in_lattice_coset(v in proptest::collection::vec(-9i64..=9, 2)) {
        // A fixed full-rank lower-triangular basis.
        let basis = vec![vec![2, 0], vec![1, 3]];
        let r = linalg::lattice_reduce(&basis, &v);
        for i in 0..2 {
            prop_assert!(0 <= r[i] && r[i] < basis[i][i]);
        }
        let diff: Vec<i64> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        prop_assert!(linalg::in_lattice(&basis, &diff));
    }
}
