//! Penrose rhombs with arrow matching rules: half-tile (Robinson triangle)
//! substitution, merged into decorated rhombi before graph construction.
//!
//! Each rhombus has two sides carrying double arrows (weight 1) and two
//! carrying single arrows (weight 3).

use super::{Prototile, SubstitutionRule};
use crate::error::{Error, Result};
use crate::geometry::{pt, Point2};
use crate::patch::{EdgeMark, MarkKind, Patch, PlacedTile};
use std::collections::BTreeMap;

pub const PHI: f64 = 1.618033988749895;
const C36: f64 = 0.8090169943749475;
const S36: f64 = 0.5877852522924731;
const C18: f64 = 0.9510565162951535;
const S18: f64 = 0.30901699437494745;

fn single(forward: bool) -> Option<EdgeMark> {
    Some(EdgeMark {
        kind: MarkKind::Single,
        forward,
    })
}

fn double(forward: bool) -> Option<EdgeMark> {
    Some(EdgeMark {
        kind: MarkKind::Double,
        forward,
    })
}

/// Half of a fat rhomb: corners (tail, middle, head); the single arrow runs
/// tail -> middle, the double middle -> head, and tail-head is the seam the
/// other half attaches to.
pub fn half_fat() -> Prototile {
    Prototile {
        kind: "p-hf",
        polygon: vec![pt(0.0, 0.0), pt(C36, S36), pt(PHI, 0.0)],
        decorations: vec![single(true), double(true), None],
    }
}

/// Half of a thin rhomb: corners (apex, single end, double end); the seam is
/// the short side between the two base corners.
pub fn half_thin() -> Prototile {
    Prototile {
        kind: "p-ht",
        polygon: vec![pt(0.0, 0.0), pt(C18, S18), pt(C18, -S18)],
        decorations: vec![single(true), None, double(false)],
    }
}

/// Whole fat rhomb in the drawing frame used by the figures: tail at the
/// origin, head straight up. Singles point out of the tail, doubles into
/// the head.
pub fn fat_rhomb() -> Prototile {
    Prototile {
        kind: "p-fat",
        polygon: vec![pt(0.0, 0.0), pt(-S36, C36), pt(0.0, PHI), pt(S36, C36)],
        decorations: vec![single(true), double(true), double(false), single(false)],
    }
}

/// Whole thin rhomb in the drawing frame: singles point into corner B,
/// doubles into corner D.
pub fn thin_rhomb() -> Prototile {
    Prototile {
        kind: "p-thin",
        polygon: vec![
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(1.0 + C36, -S36),
            pt(C36, -S36),
        ],
        decorations: vec![single(true), single(false), double(true), double(false)],
    }
}

fn hf(t: Point2, m: Point2, h: Point2) -> PlacedTile {
    PlacedTile::new("p-hf", vec![t, m, h]).with_decorations(vec![single(true), double(true), None])
}

fn ht(a: Point2, s: Point2, d: Point2) -> PlacedTile {
    PlacedTile::new("p-ht", vec![a, s, d]).with_decorations(vec![single(true), None, double(false)])
}

/// Golden-ratio subdivision of the half tiles. The construction points sit at
/// unit distance (in child scale) from the relevant corners, so old single
/// edges become long diagonals of child fats, old doubles split into a child
/// double plus a thin seam, and old seams split consistently between the tile
/// and its seam partner.
fn subdivide(parent: &PlacedTile) -> Vec<PlacedTile> {
    let c = &parent.corners;
    match parent.kind.as_str() {
        "p-hf" => {
            let (t, m, h) = (c[0], c[1], c[2]);
            let e = t.lerp(m, 1.0 / PHI);
            let d = t.lerp(h, 1.0 / PHI);
            vec![hf(d, e, t), ht(d, e, m), hf(h, d, m)]
        }
        "p-ht" => {
            let (a, s, d) = (c[0], c[1], c[2]);
            let x = a.lerp(s, 1.0 / PHI);
            vec![hf(d, x, a), ht(d, x, s)]
        }
        other => panic!("penrose rule cannot subdivide kind {other}"),
    }
}

pub static RULE: SubstitutionRule = SubstitutionRule {
    tiling: "penrose",
    inflation: PHI,
    subdivide,
};

/// Merge half tiles into whole decorated rhombi. Halves whose seam partner is
/// missing (patch boundary) are dropped.
pub fn merge_halves(halves: &[PlacedTile]) -> Result<Vec<PlacedTile>> {
    let quant = |p: Point2| ((p.x * 1e7).round() as i64, (p.y * 1e7).round() as i64);
    let seam_of = |t: &PlacedTile| -> (Point2, Point2) {
        match t.kind.as_str() {
            "p-hf" => (t.corners[0], t.corners[2]),
            _ => (t.corners[1], t.corners[2]),
        }
    };
    let mut by_seam: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, t) in halves.iter().enumerate() {
        let (a, b) = seam_of(t);
        by_seam.entry(quant(a.midpoint(b))).or_default().push(i);
    }
    let mut out = Vec::new();
    for group in by_seam.values() {
        if group.len() != 2 {
            continue;
        }
        let (x, y) = (&halves[group[0]], &halves[group[1]]);
        if x.kind != y.kind {
            return Err(Error::Invalid(
                "mismatched seam partners in penrose patch".into(),
            ));
        }
        if x.kind == "p-hf" {
            // both halves share tail and head; the merged rhomb is
            // tail, m1, head, m2
            if x.corners[0].dist(y.corners[0]) > 1e-7 || x.corners[2].dist(y.corners[2]) > 1e-7 {
                return Err(Error::Invalid("fat halves disagree on tail/head".into()));
            }
            out.push(
                PlacedTile::new(
                    "p-fat",
                    vec![x.corners[0], x.corners[1], x.corners[2], y.corners[1]],
                )
                .with_decorations(vec![
                    single(true),
                    double(true),
                    double(false),
                    single(false),
                ]),
            );
        } else {
            // thin: halves share the base corners s and d
            if x.corners[1].dist(y.corners[1]) > 1e-7 || x.corners[2].dist(y.corners[2]) > 1e-7 {
                return Err(Error::Invalid("thin halves disagree on base".into()));
            }
            out.push(
                PlacedTile::new(
                    "p-thin",
                    vec![x.corners[0], x.corners[1], y.corners[0], x.corners[2]],
                )
                .with_decorations(vec![
                    single(true),
                    single(false),
                    double(true),
                    double(false),
                ]),
            );
        }
    }
    Ok(out)
}

/// Patch grown from a sun (five fat rhombs around a common tail), inflated
/// `level` times and merged into whole rhombs.
pub fn patch(level: usize) -> Result<Patch> {
    let mut halves = Vec::new();
    for k in 0..5 {
        let ang = (72.0 * k as f64).to_radians();
        let rot = |p: Point2| {
            pt(
                p.x * ang.cos() - p.y * ang.sin(),
                p.x * ang.sin() + p.y * ang.cos(),
            )
        };
        for half in [half_fat().placed(), {
            let mut t = half_fat().placed();
            t.corners = vec![
                t.corners[0],
                pt(t.corners[1].x, -t.corners[1].y),
                t.corners[2],
            ];
            t
        }] {
            let mut t = half;
            t.corners = t.corners.iter().map(|&p| rot(p)).collect();
            halves.push(t);
        }
    }
    let mut leaves = Vec::new();
    for seed in &halves {
        let inf = super::inflate(&RULE, seed, level)?;
        leaves.extend(inf.tiles);
    }
    let rhombs = merge_halves(&leaves)?;
    Ok(Patch::new("penrose", rhombs))
}

/// Check the matching rules on a built graph: the two tiles sharing any edge
/// must carry the same arrow kind pointing the same way.
pub fn check_arrow_matching(g: &crate::patch::PatchGraph) -> Result<usize> {
    let mut checked = 0;
    for (eid, claims) in g.claims.iter().enumerate() {
        if claims.len() != 2 {
            continue;
        }
        let mut marks = Vec::new();
        for &(ti, si) in claims {
            let tile = &g.tiles[ti as usize];
            if tile.decorations.is_empty() {
                return Err(Error::MissingMetadata(
                    "penrose_arrows".into(),
                    format!("tile {ti} has no arrow decorations"),
                ));
            }
            let mark = tile.decorations[si as usize].ok_or_else(|| {
                Error::MissingMetadata("penrose_arrows".into(), format!("side {si} of tile {ti}"))
            })?;
            let n = tile.corner_ids.len();
            let a = tile.corner_ids[si as usize];
            let b = tile.corner_ids[(si as usize + 1) % n];
            let (from, to) = if mark.forward { (a, b) } else { (b, a) };
            marks.push((mark.kind, from, to));
        }
        let (k0, f0, t0) = marks[0];
        let (k1, f1, t1) = marks[1];
        if k0 != k1 || f0 != f1 || t0 != t1 {
            let (a, b) = g.edges[eid];
            return Err(Error::Invalid(format!(
                "arrow mismatch on edge ({a}, {b}): {marks:?}"
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::PatchGraph;
    use crate::tilings::{inflate, tile_area};

    #[test]
    fn half_fat_subdivision_has_three_children() {
        let inf = inflate(&RULE, &half_fat().placed(), 1).unwrap();
        assert_eq!(inf.tiles.len(), 3);
        let parent_area = tile_area(&{
            let mut t = half_fat().placed();
            for p in t.corners.iter_mut() {
                *p = *p * PHI;
            }
            t
        });
        let total: f64 = inf.tiles.iter().map(tile_area).sum();
        assert!((total - parent_area).abs() < 1e-9);
    }

    #[test]
    fn sun_patch_merges_and_matches() {
        let p = patch(3).unwrap();
        assert!(p.tiles.len() > 40);
        let g = PatchGraph::build(&p.tiles).unwrap();
        let checked = check_arrow_matching(&g).unwrap();
        assert!(checked > 0);
    }

    #[test]
    fn fat_and_thin_counts_follow_fibonacci_ratios() {
        let p = patch(4).unwrap();
        let fat = p.tiles.iter().filter(|t| t.kind == "p-fat").count();
        let thin = p.tiles.iter().filter(|t| t.kind == "p-thin").count();
        assert!(fat > thin && thin > 0);
    }
}
