//! End-to-end acceptance checks. Each test covers one numbered criterion and
//! prints a single pass/fail line (visible with --nocapture).

use covering_hecke::chi_geometry::{twisted_length, ChiGeometry};
use covering_hecke::cover_torus::{chi_affine, weyl_act_char, GenuineCharacter};
use covering_hecke::hecke_algebra::{HeckeAlgebra, HeckeElement, Laurent};
use covering_hecke::linalg;
use covering_hecke::quad_cover::{minimal_invariant_d, QuadraticCoverData};
use covering_hecke::rng::SplitMix64;
use covering_hecke::root_datum::{AffineRoot, ExtendedAffineElement, RootDatum, WeylElement};
use covering_hecke::shimura::{self, Verdict};
use covering_hecke::tame_arith::{hilbert, FieldElt, TameField};
use covering_hecke::Rat;

fn criterion(n: u32, name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let result = std::panic::catch_unwind(body);
    let ok = result.is_ok();
    println!("criterion {n} ({name}): {}", if ok { "pass" } else { "FAIL" });
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

struct Setup {
    name: &'static str,
    cover: QuadraticCoverData,
    field: TameField,
}

/// The four preset configurations used by the sweeping criteria.
fn sweep_setups() -> Vec<Setup> {
    let sl2 = RootDatum::preset("SL", 2).unwrap();
    let sl3 = RootDatum::preset("SL", 3).unwrap();
    let gl2 = RootDatum::preset("GL", 2).unwrap();
    let sp4 = RootDatum::preset("Sp", 4).unwrap();
    vec![
        Setup {
            name: "SL2",
            cover: QuadraticCoverData::new(sl2.clone(), minimal_invariant_d(&sl2), 2).unwrap(),
            field: TameField::new(5, 1, 2).unwrap(),
        },
        Setup {
            name: "SL3",
            cover: QuadraticCoverData::new(sl3.clone(), minimal_invariant_d(&sl3), 2).unwrap(),
            field: TameField::new(7, 1, 2).unwrap(),
        },
        Setup {
            name: "GL2",
            cover: QuadraticCoverData::new(gl2, vec![vec![1, -1], vec![-1, 1]], 4).unwrap(),
            field: TameField::new(5, 1, 4).unwrap(),
        },
        Setup {
            name: "Sp4",
            cover: QuadraticCoverData::new(sp4.clone(), minimal_invariant_d(&sp4), 2).unwrap(),
            field: TameField::new(5, 1, 2).unwrap(),
        },
    ]
}

fn random_chi(field: &TameField, rank: usize, rng: &mut SplitMix64) -> GenuineCharacter {
    let m: Vec<i64> = (0..rank)
        .map(|_| rng.below(field.qm1().max(1) as u64) as i64)
        .collect();
    GenuineCharacter::depth_zero(field, m)
}

fn random_word(datum: &RootDatum, max_len: u64, rng: &mut SplitMix64) -> ExtendedAffineElement {
    let gens: Vec<ExtendedAffineElement> = datum
        .simple_affine_roots()
        .into_iter()
        .map(|a| datum.affine_reflection(a))
        .collect();
    let mut w = ExtendedAffineElement::identity(datum.rank());
    for _ in 0..rng.below(max_len + 1) {
        w = w.mul(&gens[rng.below(gens.len() as u64) as usize]);
    }
    w
}

#[test]
fn criterion_1_sl3_shift_and_mover() {
    criterion(1, "SL3 double cover shift vector and mover", || {
        let datum = RootDatum::preset("SL", 3).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), minimal_invariant_d(&datum), 2).unwrap();
        let field = TameField::new(7, 1, 2).unwrap();
        // chi composed with each simple one-parameter subgroup is the
        // order-2 character: m(alpha_vee) = m(beta_vee) = (q-1)/2 = 3.
        let chi = GenuineCharacter::depth_zero(&field, vec![3, 3]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        // v = -alpha_vee - beta_vee in coroot coordinates.
        assert_eq!(
            geom.shift,
            vec![Rat::from_integer(-1), Rat::from_integer(-1)]
        );
        // t_v carries the twisted walls onto the residue-zero walls.
        for i in geom.system.relevant_roots() {
            let moved = datum.pair_rat(datum.root(i), &geom.shift);
            assert!(moved.is_integer());
            let c = geom.system.residue(i).unwrap();
            assert_eq!((c - moved.to_integer()).rem_euclid(geom.system.n_alpha(i)), 0);
        }
        // Mover is the linear reflection at the highest root alpha + beta.
        let h = datum.highest_roots()[0];
        assert_eq!(
            geom.mover,
            ExtendedAffineElement::from_weyl(datum.reflection(h))
        );
        // And it carries the shifted base point back into the base chamber
        // of the residue-zero wall arrangement.
        let p0 = datum.base_alcove_point();
        let shifted: Vec<Rat> = p0.iter().zip(&geom.shift).map(|(a, b)| *a + *b).collect();
        let back = geom.mover.apply_point(&shifted);
        for i in geom.system.relevant_roots() {
            let na = Rat::from_integer(geom.system.n_alpha(i));
            let cell = |x: &[Rat]| (datum.pair_rat(datum.root(i), x) / na).floor();
            assert_eq!(cell(&back), cell(&p0), "root {i}");
        }
    });
}

#[test]
fn criterion_2_gl2_nonisomorphism() {
    criterion(2, "GL2 four-fold cover non-isomorphism", || {
        let datum = RootDatum::preset("GL", 2).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), vec![vec![1, -1], vec![-1, 1]], 4).unwrap();
        let field = TameField::new(5, 1, 4).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![2, 0]);
        // Y_{Q,n} = Z(e1-e2) + Z(e1+e2); HNF columns (1,1), (0,2).
        assert_eq!(cover.lattice_yqn(), vec![vec![1, 0], vec![1, 2]]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        // W_chi = Y_{Q,n} plus the s_alpha e1 coset.
        let s = datum.reflection(datum.simple_indices()[0]);
        let e1_rep = linalg::lattice_reduce(&cover.lattice_yqn(), &[1, 0]);
        let mut expect = vec![
            (WeylElement::identity(2), vec![0, 0]),
            (s, e1_rep),
        ];
        expect.sort();
        assert_eq!(geom.wchi.cosets, expect);
        let comp = shimura::compare(&cover, &field, &chi, &geom, 1, 20).unwrap();
        assert!(comp.torsion.cover_torsion.is_none());
        let w = comp.torsion.linear_torsion.expect("linear 2-torsion");
        assert!(w.mul(&w).is_identity() && !w.is_identity());
        assert_eq!(comp.torsion.verdict, Verdict::NotIsomorphic);
    });
}

#[test]
fn criterion_3_affine_character_equivariance() {
    criterion(3, "affine character equivariance sweep", || {
        for setup in sweep_setups() {
            let datum = setup.cover.datum().clone();
            let mut rng = SplitMix64::new(0x1234_5678);
            for _ in 0..10 {
                let chi = random_chi(&setup.field, datum.rank(), &mut rng);
                for _ in 0..50 {
                    let w = random_word(&datum, 4, &mut rng);
                    let wc = weyl_act_char(&setup.cover, &setup.field, &w, &chi).unwrap();
                    for root in 0..datum.num_roots() {
                        for offset in -3..=3 {
                            let a = AffineRoot::new(root, offset);
                            let lhs =
                                chi_affine(&setup.cover, &setup.field, &chi, a).unwrap();
                            let rhs = chi_affine(
                                &setup.cover,
                                &setup.field,
                                &wc,
                                datum.affine_action(&w, a),
                            )
                            .unwrap();
                            assert_eq!(lhs, rhs, "{} root {root} offset {offset}", setup.name);
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_4_shift_vector_suite() {
    criterion(4, "shift vector residue alignment suite", || {
        for setup in sweep_setups() {
            let datum = setup.cover.datum();
            let mut rng = SplitMix64::new(0xfeed);
            for trial in 0..20 {
                let chi = random_chi(&setup.field, datum.rank(), &mut rng);
                let sys =
                    covering_hecke::chi_geometry::twisted_system(&setup.cover, &setup.field, &chi)
                        .unwrap();
                let v = covering_hecke::chi_geometry::shift_vector(&setup.cover, &sys)
                    .unwrap_or_else(|e| panic!("{} trial {trial}: {e}", setup.name));
                for i in sys.relevant_roots() {
                    let moved = datum.pair_rat(datum.root(i), &v);
                    assert!(moved.is_integer(), "{} trial {trial}", setup.name);
                    let c = sys.residue(i).unwrap();
                    assert_eq!(
                        (c - moved.to_integer()).rem_euclid(sys.n_alpha(i)),
                        0,
                        "{} trial {trial} root {i}",
                        setup.name
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_5_hecke_relations() {
    criterion(5, "Hecke relation suite", || {
        for setup in sweep_setups() {
            let datum = setup.cover.datum().clone();
            let mut rng = SplitMix64::new(0xbead);
            let mut chis = vec![GenuineCharacter::depth_zero(
                &setup.field,
                vec![0; datum.rank()],
            )];
            for _ in 0..2 {
                chis.push(random_chi(&setup.field, datum.rank(), &mut rng));
            }
            for chi in &chis {
                let geom = ChiGeometry::compute(&setup.cover, &setup.field, chi).unwrap();
                let alg = HeckeAlgebra::new(&datum, &geom);
                // Quadratic relation and two-sided inverse on each wall.
                for &a in &geom.delta_chi {
                    let e = HeckeElement::basis(datum.affine_reflection(a));
                    let expect = alg.identity().add(&e.scale(&Laurent::xi()));
                    assert_eq!(alg.mul(&e, &e).unwrap(), expect);
                    let inv = alg.invert_simple(a);
                    assert_eq!(alg.mul(&e, &inv).unwrap(), alg.identity());
                    assert_eq!(alg.mul(&inv, &e).unwrap(), alg.identity());
                }
                // Braid well-definedness on finite pairs.
                for i in 0..geom.delta_chi.len() {
                    for j in (i + 1)..geom.delta_chi.len() {
                        let Some(m) = geom.coxeter[i][j] else { continue };
                        let a = HeckeElement::basis(datum.affine_reflection(geom.delta_chi[i]));
                        let b = HeckeElement::basis(datum.affine_reflection(geom.delta_chi[j]));
                        let word = |x: &HeckeElement, y: &HeckeElement| {
                            let mut acc = alg.identity();
                            for k in 0..m {
                                acc = alg.mul(&acc, if k % 2 == 0 { x } else { y }).unwrap();
                            }
                            acc
                        };
                        assert_eq!(word(&a, &b), word(&b, &a));
                    }
                }
                // Alcove-stabilizing generators are invertible basis units.
                for g in &geom.omega_generators {
                    assert_eq!(twisted_length(&datum, &geom.system, g), 0);
                    let e = HeckeElement::basis(g.clone());
                    let einv = HeckeElement::basis(g.inv());
                    assert_eq!(alg.mul(&e, &einv).unwrap(), alg.identity());
                    assert_eq!(alg.mul(&einv, &e).unwrap(), alg.identity());
                }
                // Associativity on 300 random basis triples.
                let gens = geom.wchi.generators();
                let pick = |rng: &mut SplitMix64| {
                    let mut w = ExtendedAffineElement::identity(datum.rank());
                    for _ in 0..rng.below(3) {
                        let g = &gens[rng.below(gens.len() as u64) as usize];
                        w = if rng.below(2) == 0 { w.mul(g) } else { w.mul(&g.inv()) };
                    }
                    HeckeElement::basis(w)
                };
                for _ in 0..300 {
                    let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                    assert_eq!(
                        alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap(),
                        alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap()
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_6_upsilon_suite() {
    criterion(6, "algebra transfer verification sweep", || {
        for setup in sweep_setups() {
            let mut rng = SplitMix64::new(0x1234_5678);
            for trial in 0..10 {
                let chi = random_chi(&setup.field, setup.cover.datum().rank(), &mut rng);
                let geom = ChiGeometry::compute(&setup.cover, &setup.field, &chi).unwrap();
                let comp =
                    shimura::compare(&setup.cover, &setup.field, &chi, &geom, 11, 20).unwrap();
                assert!(
                    comp.upsilon.verdict(),
                    "{} trial {trial}: {:?}",
                    setup.name,
                    comp.upsilon
                );
            }
        }
    });
}

#[test]
fn criterion_7_unramified_degeneration() {
    criterion(7, "unramified degeneration", || {
        let datum = RootDatum::preset("SL", 2).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), minimal_invariant_d(&datum), 2).unwrap();
        let field = TameField::new(5, 1, 2).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![0]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        // Residues vanish: walls are alpha + k n_alpha, and the simple
        // twisted walls sit at spacing n_alpha = 2.
        let alpha = datum.simple_indices()[0];
        assert_eq!(geom.system.residue(alpha), Some(0));
        assert_eq!(geom.system.n_alpha(alpha), 2);
        let neg = datum.negative_of(alpha);
        assert_eq!(
            geom.delta_chi,
            vec![AffineRoot::new(alpha, 0), AffineRoot::new(neg, 2)]
        );
        // The cover algebra agrees with the endoscopic Iwahori-Hecke
        // presentation through the transfer.
        let comp = shimura::compare(&cover, &field, &chi, &geom, 5, 25).unwrap();
        assert!(comp.upsilon.verdict(), "{:?}", comp.upsilon);
        assert_eq!(comp.torsion.verdict, Verdict::Isomorphic);
        // Linear side is a full affine Weyl group on two simple walls.
        assert_eq!(comp.linear.geom.delta_chi.len(), 2);
    });
}

#[test]
fn criterion_8_length_oracle() {
    criterion(8, "length function against reduced-word BFS", || {
        for (preset, param, depth) in [("SL", 2usize, 8usize), ("SL", 3, 6)] {
            let datum = RootDatum::preset(preset, param).unwrap();
            let gens: Vec<ExtendedAffineElement> = datum
                .simple_affine_roots()
                .into_iter()
                .map(|a| datum.affine_reflection(a))
                .collect();
            let mut dist = std::collections::BTreeMap::new();
            let id = ExtendedAffineElement::identity(datum.rank());
            dist.insert(id.clone(), 0usize);
            let mut frontier = vec![id];
            for d in 1..=depth {
                let mut next = Vec::new();
                for w in &frontier {
                    for g in &gens {
                        let u = w.mul(g);
                        if !dist.contains_key(&u) {
                            dist.insert(u.clone(), d);
                            next.push(u);
                        }
                    }
                }
                frontier = next;
            }
            for (w, &d) in &dist {
                assert_eq!(datum.length(w), d, "{preset}{param}");
                // l(s_a w) = l(w) + 1 iff w^{-1} a is positive.
                for a in datum.simple_affine_roots() {
                    let sw = datum.affine_reflection(a).mul(w);
                    let up = datum.affine_is_positive(datum.affine_action(&w.inv(), a));
                    if up {
                        assert_eq!(datum.length(&sw), d + 1);
                    } else {
                        assert_eq!(datum.length(&sw) + 1, d);
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_9_linear_degeneration() {
    criterion(9, "degree-1 degeneration is inert", || {
        for (preset, param, rank) in [("SL", 2usize, 1usize), ("GL", 2, 2)] {
            let datum = RootDatum::preset(preset, param).unwrap();
            let cover = QuadraticCoverData::trivial(datum.clone());
            let field = TameField::new(5, 1, 1).unwrap();
            // Degree-1 Hilbert factors are all trivial.
            let mut rng = SplitMix64::new(3);
            for _ in 0..20 {
                let a = FieldElt {
                    valuation: rng.range_i64(-3, 3),
                    unit_exp: field.reduce(rng.below(4) as i64),
                };
                let b = FieldElt {
                    valuation: rng.range_i64(-3, 3),
                    unit_exp: field.reduce(rng.below(4) as i64),
                };
                assert_eq!(hilbert(&field, &a, &b).exp, 0);
            }
            let chi = GenuineCharacter::depth_zero(&field, vec![1; rank]);
            let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
            // Everything has n_alpha = 1 and the system is residue-free.
            for i in 0..datum.num_roots() {
                assert_eq!(geom.system.n_alpha(i), 1);
            }
            assert_eq!(geom.system.residue_zero(), geom.system);
            let comp = shimura::compare(&cover, &field, &chi, &geom, 13, 20).unwrap();
            assert_eq!(comp.linear.embed, linalg::identity(rank));
            assert_eq!(comp.linear.geom.wchi.cosets, geom.wchi.cosets);
            assert_eq!(comp.linear.geom.delta_chi, geom.delta_chi);
            assert!(comp.upsilon.verdict());
            assert_eq!(comp.torsion.verdict, Verdict::Isomorphic);
        }
    });
}
