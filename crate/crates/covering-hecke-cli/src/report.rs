//! Report assembly: runs the configured tasks per character and renders a
//! deterministic plain-text document with pass/fail verdicts.

use std::fmt::Write as _;

use covering_hecke::chi_geometry::ChiGeometry;
use covering_hecke::cover_torus::{bad_prime_check, GenuineCharacter};
use covering_hecke::hecke_algebra::{HeckeAlgebra, HeckeElement};
use covering_hecke::quad_cover::QuadraticCoverData;
use covering_hecke::rng::SplitMix64;
use covering_hecke::root_datum::ExtendedAffineElement;
use covering_hecke::shimura::{self, Verdict};
use covering_hecke::tame_arith::TameField;

use crate::config::Job;

pub struct Report {
    pub text: String,
    pub failures: usize,
    pub errors: usize,
}

fn fmt_vec(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn fmt_rat_vec(v: &[covering_hecke::Rat]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

pub fn fmt_element(w: &ExtendedAffineElement) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let rows: Vec<String> = w.linear.matrix().iter().map(|r| fmt_vec(r)).collect();
    format!("(linear [{}], t_{})", rows.join(" "), fmt_vec(&w.translation))
}

struct Section<'a> {
    out: &'a mut String,
    failures: &'a mut usize,
}

impl Section<'_> {
    fn check(&mut self, name: &str, ok: bool) {
        let tag = if ok { "pass" } else { "FAIL" };
        let _ = writeln!(self.out, "  check {name}: {tag}");
        if !ok {
            *self.failures += 1;
        }
    }

    fn line(&mut self, text: &str) {
        let _ = writeln!(self.out, "  {text}");
    }
}

pub fn run(job: &Job) -> Report {
    let mut text = String::new();
    let mut failures = 0usize;
    let mut errors = 0usize;
    let datum = job.cover.datum();
    let _ = writeln!(
        text,
        "cover: rank {} datum, {} roots, degree n = {}",
        datum.rank(),
        datum.num_roots(),
        job.cover.degree()
    );
    let _ = writeln!(
        text,
        "field: p = {}, f = {}, q = {}, mu_n step (q-1)/n = {}",
        job.field.p(),
        job.field.f(),
        job.field.q(),
        job.field.mu_n_step()
    );
    for w in bad_prime_check(datum, job.field.p()) {
        let _ = writeln!(text, "warning: type {} component: {}", w.type_name, w.message);
    }
    for (idx, chi) in job.characters.iter().enumerate() {
        let _ = writeln!(text, "\ncharacter {idx}: m = {}", fmt_vec(&chi.m));
        let geom = match ChiGeometry::compute(&job.cover, &job.field, chi) {
            Ok(g) => g,
            Err(e) => {
                let _ = writeln!(text, "  error: {e}");
                errors += 1;
                continue;
            }
        };
        for task in &job.tasks {
            let mut sec = Section {
                out: &mut text,
                failures: &mut failures,
            };
            match task.as_str() {
                "chi-report" => chi_report(&job.cover, &geom, &mut sec),
                "hecke-check" => hecke_check(&job.cover, &geom, job.seed, job.bounds.length, &mut sec),
                "shimura-check" => {
                    shimura_check(&job.cover, &job.field, chi, &geom, job.seed, &mut sec)
                }
                "apartment-svg" => {} // handled by the apartment verb
                _ => unreachable!("validated"),
            }
        }
    }
    let _ = writeln!(
        text,
        "\nsummary: {failures} failed check(s), {errors} error(s)"
    );
    Report {
        text,
        failures,
        errors,
    }
}

fn chi_report(cover: &QuadraticCoverData, geom: &ChiGeometry, sec: &mut Section) {
    let datum = cover.datum();
    sec.line("chi-report:");
    let diamonds = geom.system.relevant_roots();
    sec.line(&format!("  relevant roots: {} of {}", diamonds.len(), datum.num_roots()));
    for &i in &diamonds {
        sec.line(&format!(
            "    root {} {}: n_alpha = {}, residue = {}",
            i,
            fmt_vec(datum.root(i)),
            geom.system.n_alpha(i),
            geom.system.residue(i).unwrap()
        ));
    }
    sec.line(&format!("  shift v = {}", fmt_rat_vec(&geom.shift)));
    sec.line(&format!(
        "  simple walls: {}",
        geom.delta_chi
            .iter()
            .map(|a| format!("root {} + {}", a.root, a.offset))
            .collect::<Vec<_>>()
            .join("; ")
    ));
    for (i, row) in geom.coxeter.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|m| m.map_or("inf".into(), |v| v.to_string()))
            .collect();
        sec.line(&format!("  coxeter[{i}] = [{}]", cells.join(", ")));
    }
    sec.line(&format!("  mover w0 = {}", fmt_element(&geom.mover)));
    sec.line(&format!("  W_chi cosets: {}", geom.wchi.cosets.len()));
    sec.line(&format!("  W_chi_ex cosets: {}", geom.wchi_ex.cosets.len()));
    sec.line(&format!(
        "  omega generators: {}",
        if geom.omega_generators.is_empty() {
            "none".into()
        } else {
            geom.omega_generators
                .iter()
                .map(fmt_element)
                .collect::<Vec<_>>()
                .join("; ")
        }
    ));
    // Structural verification: the shift really aligns the residue sets.
    let aligned = geom.system.relevant_roots().iter().all(|&i| {
        let val = datum.pair_rat(datum.root(i), &geom.shift);
        val.is_integer()
            && (val.to_integer() - geom.system.residue(i).unwrap())
                .rem_euclid(geom.system.n_alpha(i))
                == 0
    });
    sec.check("shift aligns residues", aligned);
}

fn random_word(
    gens: &[ExtendedAffineElement],
    rank: usize,
    max_len: u32,
    rng: &mut SplitMix64,
) -> ExtendedAffineElement {
    let mut w = ExtendedAffineElement::identity(rank);
    if gens.is_empty() {
        return w;
    }
    for _ in 0..rng.below(u64::from(max_len) + 1) {
        let g = &gens[rng.below(gens.len() as u64) as usize];
        w = if rng.below(2) == 0 { w.mul(g) } else { w.mul(&g.inv()) };
    }
    w
}

fn hecke_check(
    cover: &QuadraticCoverData,
    geom: &ChiGeometry,
    seed: u64,
    max_len: u32,
    sec: &mut Section,
) {
    let datum = cover.datum();
    let alg = HeckeAlgebra::new(datum, geom);
    sec.line("hecke-check:");
    let mut quad = true;
    let mut inv = true;
    for &a in &geom.delta_chi {
        let e = HeckeElement::basis(datum.affine_reflection(a));
        let sq = alg.mul(&e, &e);
        let expect = alg
            .identity()
            .add(&e.scale(&covering_hecke::hecke_algebra::Laurent::xi()));
        quad &= sq.as_ref() == Ok(&expect);
        let einv = alg.invert_simple(a);
        inv &= alg.mul(&e, &einv) == Ok(alg.identity());
    }
    sec.check("quadratic relations", quad);
    sec.check("simple inverses", inv);
    let mut braid = true;
    for i in 0..geom.delta_chi.len() {
        for j in (i + 1)..geom.delta_chi.len() {
            let Some(m) = geom.coxeter[i][j] else { continue };
            let a = HeckeElement::basis(datum.affine_reflection(geom.delta_chi[i]));
            let b = HeckeElement::basis(datum.affine_reflection(geom.delta_chi[j]));
            let word = |first: &HeckeElement, second: &HeckeElement| {
                let mut acc = alg.identity();
                for k in 0..m {
                    let factor = if k % 2 == 0 { first } else { second };
                    acc = alg.mul(&acc, factor).expect("stabilizer closed");
                }
                acc
            };
            braid &= word(&a, &b) == word(&b, &a);
        }
    }
    sec.check("braid relations", braid);
    let gens = geom.wchi.generators();
    let mut rng = SplitMix64::new(seed);
    let mut assoc = true;
    for _ in 0..25 {
        let x = HeckeElement::basis(random_word(&gens, datum.rank(), max_len, &mut rng));
        let y = HeckeElement::basis(random_word(&gens, datum.rank(), max_len, &mut rng));
        let z = HeckeElement::basis(random_word(&gens, datum.rank(), max_len, &mut rng));
        let l = alg.mul(&alg.mul(&x, &y).unwrap(), &z);
        let r = alg.mul(&x, &alg.mul(&y, &z).unwrap());
        assoc &= l == r;
    }
    sec.check("associativity (sampled)", assoc);
}

fn shimura_check(
    cover: &QuadraticCoverData,
    field: &TameField,
    chi: &GenuineCharacter,
    geom: &ChiGeometry,
    seed: u64,
    sec: &mut Section,
) {
    sec.line("shimura-check:");
    let comp = match shimura::compare(cover, field, chi, geom, seed, 25) {
        Ok(c) => c,
        Err(e) => {
            sec.line(&format!("error: {e}"));
            sec.check("comparison ran", false);
            return;
        }
    };
    sec.check("wall sets match", comp.upsilon.wall_sets_match);
    sec.check("simple bijection", comp.upsilon.simple_bijection);
    sec.check("coxeter match", comp.upsilon.coxeter_match);
    sec.check("stabilizer transport", comp.upsilon.omega_match);
    sec.check("psi multiplicative (sampled)", comp.upsilon.homomorphism_ok);
    sec.check(
        "structure constants transport (sampled)",
        comp.upsilon.product_transport_ok,
    );
    sec.line(&format!(
        "  cover side full: {}; linear side full: {}",
        comp.torsion.cover_full, comp.torsion.linear_full
    ));
    if let Some(w) = &comp.torsion.cover_torsion {
        sec.line(&format!("  cover 2-torsion witness: {}", fmt_element(w)));
    }
    if let Some(w) = &comp.torsion.linear_torsion {
        sec.line(&format!("  linear 2-torsion witness: {}", fmt_element(w)));
    }
    let verdict = match comp.torsion.verdict {
        Verdict::Isomorphic => "full algebras isomorphic",
        Verdict::NotIsomorphic => "full algebras not isomorphic",
        Verdict::Undetermined => "full-algebra comparison undetermined",
    };
    sec.line(&format!("  verdict: {verdict}"));
}
