//! The three fully periodic tilings with their supertile labellings: the
//! 2x2 square block, the 18-triangle rhombus, and the 7-hexagon flower.

use super::{placement_from_corners, SupertileTemplate};
use crate::error::Result;
use crate::geometry::{pt, Point2};
use crate::patch::{Patch, PatchGraph, PlacedTile, SupertileInstance};
use std::sync::OnceLock;

pub fn template(kind: &str) -> Option<&'static SupertileTemplate> {
    match kind {
        "square2x2" => Some(square2x2_template()),
        "tri-rhombus" => Some(tri_rhombus_template()),
        "hex-flower" => Some(hex_flower_template()),
        _ => None,
    }
}

fn unit_square(x: f64, y: f64) -> PlacedTile {
    PlacedTile::new(
        "square",
        vec![
            pt(x, y),
            pt(x + 1.0, y),
            pt(x + 1.0, y + 1.0),
            pt(x, y + 1.0),
        ],
    )
}

/// 2x2 block: boundary edges 1, the internal cross 2. Interior sum 8,
/// side midpoints 6, corners 4 once the blocks tile the plane.
fn square2x2_template() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| SupertileTemplate {
        kind: "square2x2",
        outline: vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 2.0), pt(0.0, 2.0)],
        boundary_weight: Some(1),
        segments: vec![
            (pt(0.0, 1.0), pt(2.0, 1.0), 2),
            (pt(1.0, 0.0), pt(1.0, 2.0), 2),
        ],
        corners: Vec::new(),
        tiles: vec![
            unit_square(0.0, 0.0),
            unit_square(1.0, 0.0),
            unit_square(0.0, 1.0),
            unit_square(1.0, 1.0),
        ],
    })
}

pub fn square_patch(n: usize) -> Result<Patch> {
    let tpl = square2x2_template();
    let mut tiles = Vec::new();
    let mut supertiles = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let at = pt(2.0 * i as f64, 2.0 * j as f64);
            let outline: Vec<Point2> = tpl.outline.iter().map(|&p| p + at).collect();
            let iso = placement_from_corners(&tpl.outline, &outline)?;
            let first = tiles.len();
            tiles.extend(tpl.instantiate(&iso));
            supertiles.push(SupertileInstance {
                kind: "square2x2".into(),
                iso,
                tiles: (first..tiles.len()).collect(),
            });
        }
    }
    let mut patch = Patch::new("square", tiles);
    patch.supertiles = supertiles;
    Ok(patch)
}

const SQRT3: f64 = 1.7320508075688772;

fn lat(m: f64, n: f64) -> Point2 {
    // triangular lattice basis a = (1,0), b = (1/2, sqrt3/2)
    pt(m + 0.5 * n, n * SQRT3 / 2.0)
}

/// Rhombus of 18 unit triangles; weights follow the residue of m - n mod 3:
/// east- and northwest-pointing edges from lattice point (m, n) weigh
/// 1 + ((m - n) mod 3), northeast-pointing ones 1 + ((m - n + 2) mod 3).
/// Lattice sums come out 12 / 9 / 15 on the three residue classes.
fn tri_rhombus_template() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| {
        let wa = |m: i64, n: i64| 1 + (m - n).rem_euclid(3) as u8;
        let wb = |m: i64, n: i64| 1 + (m - n + 2).rem_euclid(3) as u8;
        let mut segments = Vec::new();
        for m in 0..3i64 {
            for n in 0..=3i64 {
                segments.push((
                    lat(m as f64, n as f64),
                    lat(m as f64 + 1.0, n as f64),
                    wa(m, n),
                ));
            }
        }
        for m in 0..=3i64 {
            for n in 0..3i64 {
                segments.push((
                    lat(m as f64, n as f64),
                    lat(m as f64, n as f64 + 1.0),
                    wb(m, n),
                ));
            }
        }
        for m in 1..=3i64 {
            for n in 0..3i64 {
                segments.push((
                    lat(m as f64, n as f64),
                    lat(m as f64 - 1.0, n as f64 + 1.0),
                    wa(m, n),
                ));
            }
        }
        let mut tiles = Vec::new();
        for m in 0..3 {
            for n in 0..3 {
                let v = lat(m as f64, n as f64);
                let a = lat(m as f64 + 1.0, n as f64);
                let b = lat(m as f64 + 0.5, n as f64 + 1.0 - 0.5);
                let _ = b;
                let up = vec![v, a, lat(m as f64, n as f64 + 1.0)];
                let dn = vec![
                    a,
                    lat(m as f64 + 1.0, n as f64 + 1.0),
                    lat(m as f64, n as f64 + 1.0),
                ];
                tiles.push(PlacedTile::new("triangle", up));
                tiles.push(PlacedTile::new("triangle", dn));
            }
        }
        SupertileTemplate {
            kind: "tri-rhombus",
            outline: vec![lat(0.0, 0.0), lat(3.0, 0.0), lat(3.0, 3.0), lat(0.0, 3.0)],
            boundary_weight: None,
            segments,
            corners: Vec::new(),
            tiles,
        }
    })
}

pub fn triangle_patch(n: usize) -> Result<Patch> {
    let tpl = tri_rhombus_template();
    let mut tiles = Vec::new();
    let mut supertiles = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let at = lat(3.0 * i as f64, 3.0 * j as f64);
            let outline: Vec<Point2> = tpl.outline.iter().map(|&p| p + at).collect();
            let iso = placement_from_corners(&tpl.outline, &outline)?;
            let first = tiles.len();
            tiles.extend(tpl.instantiate(&iso));
            supertiles.push(SupertileInstance {
                kind: "tri-rhombus".into(),
                iso,
                tiles: (first..tiles.len()).collect(),
            });
        }
    }
    let mut patch = Patch::new("triangle", tiles);
    patch.supertiles = supertiles;
    Ok(patch)
}

fn hexagon(center: Point2) -> PlacedTile {
    let corners = (0..6)
        .map(|k| {
            let a = (60.0 * k as f64).to_radians();
            center + pt(a.cos(), a.sin())
        })
        .collect();
    PlacedTile::new("hexagon", corners)
}

/// Flower of 7 hexagons: all 18 boundary edges 1, the central hexagon 2,
/// spokes alternating 2 and 3 around the centre.
fn hex_flower_template() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| {
        let centre = pt(0.0, 0.0);
        let ring: Vec<Point2> = (0..6)
            .map(|k| {
                let a = (30.0 + 60.0 * k as f64).to_radians();
                pt(SQRT3 * a.cos(), SQRT3 * a.sin())
            })
            .collect();
        let mut tiles = vec![hexagon(centre)];
        tiles.extend(ring.iter().map(|&c| hexagon(c)));

        let mut segments = Vec::new();
        let v = |k: i32| {
            let a = (60.0 * k as f64).to_radians();
            pt(a.cos(), a.sin())
        };
        for k in 0..6 {
            segments.push((v(k), v(k + 1), 2));
            let spoke_w = if k % 2 == 0 { 2 } else { 3 };
            segments.push((v(k), v(k) * 2.0, spoke_w));
        }
        // outer boundary from the built graph: edges claimed by one tile only
        let g = PatchGraph::build(&tiles).expect("flower tiles are disjoint");
        let mut outline_edges: Vec<(Point2, Point2)> = g
            .claims
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() == 1)
            .map(|(e, _)| {
                let (a, b) = g.edges[e];
                (g.vertices[a as usize], g.vertices[b as usize])
            })
            .collect();
        // walk the cycle into a polygon
        let mut outline = vec![outline_edges[0].0, outline_edges[0].1];
        outline_edges.remove(0);
        while !outline_edges.is_empty() {
            let tail = *outline.last().unwrap();
            let idx = outline_edges
                .iter()
                .position(|(a, b)| a.dist(tail) < 1e-9 || b.dist(tail) < 1e-9)
                .expect("boundary is a single cycle");
            let (a, b) = outline_edges.remove(idx);
            let next = if a.dist(tail) < 1e-9 { b } else { a };
            outline.push(next);
        }
        outline.pop();
        SupertileTemplate {
            kind: "hex-flower",
            outline,
            boundary_weight: Some(1),
            segments,
            corners: Vec::new(),
            tiles,
        }
    })
}

/// Flower-lattice basis: supertile centres repeat with these two periods.
pub fn hex_supertile_basis() -> (Point2, Point2) {
    let u = pt(1.5, SQRT3 / 2.0);
    let v = pt(1.5, -SQRT3 / 2.0);
    (u * 2.0 + v, u * 3.0 + v * -2.0)
}

pub fn hexagon_patch(n: usize) -> Result<Patch> {
    let tpl = hex_flower_template();
    let (ba, bb) = hex_supertile_basis();
    let mut tiles = Vec::new();
    let mut supertiles = Vec::new();
    for i in 0..n as i64 {
        for j in 0..n as i64 {
            let at = ba * i as f64 + bb * j as f64;
            let outline: Vec<Point2> = tpl.outline.iter().map(|&p| p + at).collect();
            let iso = placement_from_corners(&tpl.outline, &outline)?;
            let first = tiles.len();
            tiles.extend(tpl.instantiate(&iso));
            supertiles.push(SupertileInstance {
                kind: "hex-flower".into(),
                iso,
                tiles: (first..tiles.len()).collect(),
            });
        }
    }
    let mut patch = Patch::new("hexagon", tiles);
    patch.supertiles = supertiles;
    Ok(patch)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_patch_counts() {
        let p = square_patch(3).unwrap();
        assert_eq!(p.tiles.len(), 36);
        let g = PatchGraph::build(&p.tiles).unwrap();
        assert_eq!(g.vertices.len(), 49);
    }

    #[test]
    fn hex_flower_has_18_boundary_edges() {
        let tpl = template("hex-flower").unwrap();
        assert_eq!(tpl.outline.len(), 18);
        assert_eq!(tpl.tiles.len(), 7);
    }

    #[test]
    fn hex_patch_builds_and_tiles_meet() {
        let p = hexagon_patch(3).unwrap();
        assert_eq!(p.tiles.len(), 63);
        let g = PatchGraph::build(&p.tiles).unwrap();
        // hexagonal tiling: interior vertices have 3 incident hexagons
        let closed = g.closed_vertices();
        assert!(closed
            .iter()
            .any(|s| *s == crate::patch::VertexStatus::Closed));
    }

    #[test]
    fn triangle_template_segments_cover_all_edges() {
        let tpl = template("tri-rhombus").unwrap();
        let g = PatchGraph::build(&tpl.tiles).unwrap();
        let weights = super::super::classify_template_edges(tpl, &g).unwrap();
        assert_eq!(weights.len(), g.edges.len());
        // interior sums are exactly {9, 12, 15}
        let sums = tpl.internal_sums().unwrap();
        assert_eq!(sums.len(), 4);
        for (_, s) in sums {
            assert!([9, 12, 15].contains(&s));
        }
    }
}
