//! Rank <= 2 apartment figures: affine wall families, the twisted system and
//! its residue-zero companion emphasized, and the base alcove shaded.
//! All geometry is exact rational; floats appear only in the emitted text.

use std::fmt::Write as _;

use covering_hecke::chi_geometry::ChiGeometry;
use covering_hecke::quad_cover::QuadraticCoverData;
use covering_hecke::Rat;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug)]
pub struct SvgError(pub String);

impl std::fmt::Display for SvgError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for SvgError {}

const VIEW: f64 = 600.0;

struct Frame {
    bound: Rat,
}

impl Frame {
    fn to_px(&self, p: (Rat, Rat)) -> (f64, f64) {
        let b = self.bound.to_f64().unwrap();
        let x = (p.0.to_f64().unwrap() + b) / (2.0 * b) * VIEW;
        let y = VIEW - (p.1.to_f64().unwrap() + b) / (2.0 * b) * VIEW;
        (x, y)
    }
}

/// Intersection of the line l1 x + l2 y + c = 0 with the box [-b, b]^2,
/// as the (up to two) extreme rational points.
fn clip_line(l1: i64, l2: i64, c: i64, b: Rat) -> Option<((Rat, Rat), (Rat, Rat))> {
    let l1 = Rat::from_integer(l1);
    let l2 = Rat::from_integer(l2);
    let c = Rat::from_integer(c);
    let mut pts: Vec<(Rat, Rat)> = Vec::new();
    let push = |pts: &mut Vec<(Rat, Rat)>, p: (Rat, Rat)| {
        if p.0.abs() <= b && p.1.abs() <= b && !pts.contains(&p) {
            pts.push(p);
        }
    };
    for side in [-b, b] {
        // x = side: l2 y = -c - l1 side.
        if !l2.is_zero() {
            push(&mut pts, (side, (-c - l1 * side) / l2));
        }
        if !l1.is_zero() {
            push(&mut pts, ((-c - l2 * side) / l1, side));
        }
    }
    if pts.len() < 2 {
        return None;
    }
    // Extreme pair along the line direction (-l2, l1).
    let key = |p: &(Rat, Rat)| -l2 * p.0 + l1 * p.1;
    let mut lo = pts[0];
    let mut hi = pts[0];
    for &p in &pts[1..] {
        if key(&p) < key(&lo) {
            lo = p;
        }
        if key(&p) > key(&hi) {
            hi = p;
        }
    }
    if lo == hi {
        return None;
    }
    Some((lo, hi))
}

/// Sutherland-Hodgman clip of a convex polygon by the halfplane
/// l1 x + l2 y + c >= 0.
fn clip_polygon(poly: &[(Rat, Rat)], l1: Rat, l2: Rat, c: Rat) -> Vec<(Rat, Rat)> {
    let val = |p: &(Rat, Rat)| l1 * p.0 + l2 * p.1 + c;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let cur = poly[i];
        let nxt = poly[(i + 1) % poly.len()];
        let vc = val(&cur);
        let vn = val(&nxt);
        if vc >= Rat::zero() {
            out.push(cur);
        }
        if (vc >= Rat::zero()) != (vn >= Rat::zero()) {
            let t = vc / (vc - vn);
            out.push((cur.0 + t * (nxt.0 - cur.0), cur.1 + t * (nxt.1 - cur.1)));
        }
    }
    out
}

/// Linear functional of a root on the drawing plane, padding rank 1 with a
/// zero second coordinate.
fn functional(cover: &QuadraticCoverData, root: usize) -> (i64, i64) {
    let datum = cover.datum();
    let l1 = datum.pair(datum.root(root), &unit(datum.rank(), 0));
    let l2 = if datum.rank() > 1 {
        datum.pair(datum.root(root), &unit(datum.rank(), 1))
    } else {
        0
    };
    (l1, l2)
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    (0..rank).map(|j| i64::from(j == i)).collect()
}

pub fn apartment_svg(
    cover: &QuadraticCoverData,
    geom: &ChiGeometry,
    offset_bound: i64,
) -> Result<String, SvgError> {
    let datum = cover.datum();
    if datum.rank() > 2 {
        return Err(SvgError(format!(
            "apartment figures need rank <= 2, got {}",
            datum.rank()
        )));
    }
    let b = Rat::from_integer(offset_bound.max(1) + 1);
    let frame = Frame { bound: b };
    let mut body = String::new();

    let line = |body: &mut String, seg: ((Rat, Rat), (Rat, Rat)), style: &str| {
        let (x1, y1) = frame.to_px(seg.0);
        let (x2, y2) = frame.to_px(seg.1);
        let _ = writeln!(
            body,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#
        );
    };

    // Base alcove, shaded first so walls draw over it.
    let mut alcove: Vec<(Rat, Rat)> = vec![(-b, -b), (b, -b), (b, b), (-b, b)];
    for a in datum.simple_affine_roots() {
        let (l1, l2) = functional(cover, a.root);
        alcove = clip_polygon(
            &alcove,
            Rat::from_integer(l1),
            Rat::from_integer(l2),
            Rat::from_integer(a.offset),
        );
    }
    if !alcove.is_empty() {
        let pts: Vec<String> = alcove
            .iter()
            .map(|&p| {
                let (x, y) = frame.to_px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            body,
            r##"<polygon points="{}" fill="#d94f4f" fill-opacity="0.45" stroke="none"/>"##,
            pts.join(" ")
        );
    }

    // Offsets large enough for any line meeting the box.
    let k_range = |l1: i64, l2: i64| {
        let reach = (l1.abs() + l2.abs()) * (offset_bound.max(1) + 1);
        -reach..=reach
    };

    // Thin gray: the full affine family of each positive root.
    for root in 0..datum.num_roots() {
        if !datum.is_positive_root(root) {
            continue;
        }
        let (l1, l2) = functional(cover, root);
        for k in k_range(l1, l2) {
            if let Some(seg) = clip_line(l1, l2, k, b) {
                line(&mut body, seg, r##"stroke="#999999" stroke-width="0.7""##);
            }
        }
    }

    // Yellow emphasis: members of the twisted system.
    for root in geom.system.relevant_roots() {
        if !datum.is_positive_root(root) {
            continue;
        }
        let (l1, l2) = functional(cover, root);
        let c = geom.system.residue(root).unwrap();
        let na = geom.system.n_alpha(root);
        for k in k_range(l1, l2) {
            if (k - c).rem_euclid(na) != 0 {
                continue;
            }
            if let Some(seg) = clip_line(l1, l2, k, b) {
                line(&mut body, seg, r##"stroke="#e0b400" stroke-width="2.4""##);
            }
        }
    }

    // Green emphasis, dashed: the residue-zero companion walls.
    for root in geom.system.relevant_roots() {
        if !datum.is_positive_root(root) {
            continue;
        }
        let (l1, l2) = functional(cover, root);
        let na = geom.system.n_alpha(root);
        for k in k_range(l1, l2) {
            if k.rem_euclid(na) != 0 {
                continue;
            }
            if let Some(seg) = clip_line(l1, l2, k, b) {
                line(
                    &mut body,
                    seg,
                    r##"stroke="#2e8b2e" stroke-width="2.4" stroke-dasharray="7 4""##,
                );
            }
        }
    }

    Ok(format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{v}" height="{v}" "#,
            r#"viewBox="0 0 {v} {v}">"#,
            "\n<rect width=\"{v}\" height=\"{v}\" fill=\"white\"/>\n{body}</svg>\n"
        ),
        v = VIEW,
        body = body
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use covering_hecke::cover_torus::GenuineCharacter;
    use covering_hecke::quad_cover::minimal_invariant_d;
    use covering_hecke::root_datum::RootDatum;
    use covering_hecke::tame_arith::TameField;

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    #[test]
    fn sl3_figure_has_all_layers() {
        let datum = RootDatum::preset("SL", 3).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), minimal_invariant_d(&datum), 2).unwrap();
        let field = TameField::new(7, 1, 2).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![3, 3]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        let svg = apartment_svg(&cover, &geom, 2).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(count(&svg, "#e0b400") > 0, "twisted walls missing");
        assert!(count(&svg, "#2e8b2e") > 0, "residue-zero walls missing");
        assert_eq!(count(&svg, "<polygon"), 1, "alcove missing");
    }

    #[test]
    fn empty_system_draws_only_gray() {
        let datum = RootDatum::preset("GL", 2).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), vec![vec![1, -1], vec![-1, 1]], 4).unwrap();
        let field = TameField::new(5, 1, 4).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![2, 0]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        let svg = apartment_svg(&cover, &geom, 2).unwrap();
        assert!(count(&svg, "#999999") > 0);
        assert_eq!(count(&svg, "#e0b400"), 0);
        assert_eq!(count(&svg, "#2e8b2e"), 0);
    }

    #[test]
    fn rank_three_rejected() {
        let datum = RootDatum::preset("SL", 4).unwrap();
        let cover = QuadraticCoverData::trivial(datum);
        let field = TameField::new(5, 1, 1).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![0, 0, 0]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        assert!(apartment_svg(&cover, &geom, 2).is_err());
    }

    #[test]
    fn rank_one_strip() {
        let datum = RootDatum::preset("SL", 2).unwrap();
        let cover =
            QuadraticCoverData::new(datum.clone(), minimal_invariant_d(&datum), 2).unwrap();
        let field = TameField::new(5, 1, 2).unwrap();
        let chi = GenuineCharacter::depth_zero(&field, vec![0]);
        let geom = ChiGeometry::compute(&cover, &field, &chi).unwrap();
        let svg = apartment_svg(&cover, &geom, 3).unwrap();
        // Vertical wall family at integer positions, emphasized at even ones.
        assert!(count(&svg, "#999999") >= 5);
        assert!(count(&svg, "#e0b400") >= 2);
    }
}
