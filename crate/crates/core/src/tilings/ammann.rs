//! The two Ammann-Beenker tilings. One silver-ratio subdivision drives both:
//! the rhomb-triangle tiling uses the half-square triangle as a real tile,
//! the rhomb-square tiling merges triangle pairs across their hypotenuses.
//!
//! Triangle hypotenuses carry a direction arrow (role a -> role c); the
//! supertile proof uses them to force corner-to-corner joining.

use super::{CornerColour, Prototile, SubstitutionRule, SupertileTemplate};
use crate::error::Result;
use crate::geometry::{pt, Point2};
use crate::patch::{EdgeMark, MarkKind, Patch, PlacedTile};
use std::collections::BTreeMap;
use std::sync::OnceLock;

pub const SQRT2: f64 = 1.4142135623730951;
/// Silver ratio, the inflation factor.
pub const DELTA: f64 = 2.414213562373095;

fn arrow(forward: bool) -> Option<EdgeMark> {
    Some(EdgeMark {
        kind: MarkKind::Arrow,
        forward,
    })
}

/// Right isosceles triangle, corners (a, b, c) with the right angle at b and
/// the decorated hypotenuse from c back to a (arrow pointing a -> c).
pub fn triangle() -> Prototile {
    Prototile {
        kind: "ab-tri",
        polygon: vec![pt(0.0, 0.0), pt(SQRT2 / 2.0, SQRT2 / 2.0), pt(SQRT2, 0.0)],
        decorations: vec![None, None, arrow(false)],
    }
}

/// 45-degree rhomb with unit sides.
pub fn rhomb() -> Prototile {
    let x = SQRT2 / 2.0;
    Prototile {
        kind: "ab-rhomb",
        polygon: vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0 + x, -x), pt(x, -x)],
        decorations: vec![None; 4],
    }
}

fn tri(a: Point2, b: Point2, c: Point2) -> PlacedTile {
    PlacedTile::new("ab-tri", vec![a, b, c]).with_decorations(vec![None, None, arrow(false)])
}

fn rh(a: Point2, b: Point2, c: Point2, d: Point2) -> PlacedTile {
    PlacedTile::new("ab-rhomb", vec![a, b, c, d])
}

fn subdivide(parent: &PlacedTile) -> Vec<PlacedTile> {
    let c = &parent.corners;
    let f = SQRT2 / DELTA;
    let g = 1.0 / (2.0 + SQRT2);
    match parent.kind.as_str() {
        "ab-tri" => {
            let (a, b, cc) = (c[0], c[1], c[2]);
            let ab = a.lerp(b, f);
            let bc = b.lerp(cc, f);
            let ac1 = a.lerp(cc, g);
            let ac2 = a.lerp(cc, (1.0 + SQRT2) * g);
            let x = bc - (cc - a) * g;
            vec![
                tri(ab, ac1, a),
                tri(bc, x, b),
                tri(ac2, x, ac1),
                rh(ac1, ab, b, x),
                rh(x, bc, cc, ac2),
            ]
        }
        "ab-rhomb" => {
            let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
            let ab = a.lerp(b, 1.0 / DELTA);
            let bc = b.lerp(cc, f);
            let cd = d.lerp(cc, f);
            let ad = a.lerp(d, 1.0 / DELTA);
            let xa = ad + (ab - a);
            let xc = bc - (cc - cd);
            vec![
                tri(ad, xa, d),
                tri(bc, xc, b),
                tri(ab, xa, b),
                tri(cd, xc, d),
                rh(a, ab, xa, ad),
                rh(xc, bc, cc, cd),
                rh(b, xc, d, xa),
            ]
        }
        other => panic!("ammann rule cannot subdivide kind {other}"),
    }
}

pub static RULE: SubstitutionRule = SubstitutionRule {
    tiling: "ab-rhomb-triangle",
    inflation: DELTA,
    subdivide,
};

/// Merge triangle pairs sharing a hypotenuse into squares; rhombs pass
/// through. Unpaired triangles are dropped (patch boundary) or kept as
/// half-squares (supertile templates).
pub fn merge_triangles_to_squares(tiles: &[PlacedTile], keep_unpaired: bool) -> Vec<PlacedTile> {
    let quant = |p: Point2| ((p.x * 1e7).round() as i64, (p.y * 1e7).round() as i64);
    let mut out = Vec::new();
    let mut by_seam: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, t) in tiles.iter().enumerate() {
        if t.kind == "ab-tri" {
            let mid = t.corners[0].midpoint(t.corners[2]);
            by_seam.entry(quant(mid)).or_default().push(i);
        } else {
            out.push(t.clone());
        }
    }
    for group in by_seam.values() {
        if group.len() != 2 {
            if keep_unpaired {
                out.extend(group.iter().map(|&i| tiles[i].clone()));
            }
            continue;
        }
        let (x, y) = (&tiles[group[0]], &tiles[group[1]]);
        // corners a and c coincide pairwise when arrows match
        let (a, b1, c) = (x.corners[0], x.corners[1], x.corners[2]);
        let b2 = y.corners[1];
        out.push(PlacedTile::new("abs-square", vec![a, b1, c, b2]));
    }
    out
}

/// Rhomb-triangle patch: the diamond (inflated square of two triangles)
/// subdivided `level` times.
pub fn rhomb_triangle_patch(level: usize) -> Result<Patch> {
    let tiles = diamond_seed_tiles(level)?;
    Ok(Patch::new("ab-rhomb-triangle", tiles))
}

/// Rhomb-square patch: same subdivision with triangle pairs merged; carries
/// the weight-2 marks on each diamond supertile's central square.
pub fn rhomb_square_patch(level: usize) -> Result<Patch> {
    let mut halves = Vec::new();
    let mut marks = Vec::new();
    let s = SQRT2 / 2.0;
    let seeds = [
        tri(pt(0.0, 0.0), pt(s, s), pt(SQRT2, 0.0)),
        tri(pt(0.0, 0.0), pt(s, -s), pt(SQRT2, 0.0)),
    ];
    for seed in &seeds {
        let inf = super::inflate(&RULE, seed, level)?;
        for (tile, path) in inf.tiles.iter().zip(&inf.paths) {
            // the central square of each level-1 diamond gets weight-2 legs:
            // child #2 of a triangle parent is half of that square
            if level >= 1 && path.last() == Some(&2) {
                let parent = inf.nodes.get(&path[..path.len() - 1].to_vec());
                if parent.map(|p| p.kind == "ab-tri") == Some(true) {
                    marks.push(crate::patch::WeightMark {
                        a: tile.corners[1],
                        b: tile.corners[2],
                        weight: 2,
                    });
                }
            }
            halves.push(tile.clone());
        }
    }
    let merged = merge_triangles_to_squares(&halves, false);
    let mut patch = Patch::new("ab-rhomb-square", merged);
    patch.marks = marks;
    Ok(patch)
}

fn diamond_seed_tiles(level: usize) -> Result<Vec<PlacedTile>> {
    let s = SQRT2 / 2.0;
    let seeds = [
        tri(pt(0.0, 0.0), pt(s, s), pt(SQRT2, 0.0)),
        tri(pt(0.0, 0.0), pt(s, -s), pt(SQRT2, 0.0)),
    ];
    let mut tiles = Vec::new();
    for seed in &seeds {
        let inf = super::inflate(&RULE, seed, level)?;
        tiles.extend(inf.tiles);
    }
    Ok(tiles)
}

/// The four supertile templates of the two tilings. The diamond is the
/// once-inflated square, the (super)rhomb the once-inflated rhomb; their
/// contents are produced by the subdivision itself.
pub fn template(kind: &str) -> Option<&'static SupertileTemplate> {
    match kind {
        "abt-diamond" => Some(abt_diamond()),
        "abt-rhomb" => Some(abt_rhomb()),
        "abs-diamond" => Some(abs_diamond()),
        "abs-rhomb" => Some(abs_rhomb()),
        _ => None,
    }
}

fn diamond_outline() -> Vec<Point2> {
    vec![
        pt(0.0, 0.0),
        pt(DELTA / SQRT2, DELTA / SQRT2),
        pt(DELTA * SQRT2, 0.0),
        pt(DELTA / SQRT2, -DELTA / SQRT2),
    ]
}

fn diamond_tiles() -> Vec<PlacedTile> {
    let up = tri(
        pt(0.0, 0.0),
        pt(DELTA / SQRT2, DELTA / SQRT2),
        pt(DELTA * SQRT2, 0.0),
    );
    let dn = tri(
        pt(0.0, 0.0),
        pt(DELTA / SQRT2, -DELTA / SQRT2),
        pt(DELTA * SQRT2, 0.0),
    );
    let mut tiles = subdivide(&up);
    tiles.extend(subdivide(&dn));
    tiles
}

fn abt_diamond() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| {
        let outline = diamond_outline();
        // each side splits into a sqrt2 piece at the triangle's tail corner
        // and a unit piece; the junction vertex is red
        let f = SQRT2 / DELTA;
        let mut corners: Vec<(Point2, CornerColour)> =
            outline.iter().map(|&p| (p, CornerColour::Blue)).collect();
        corners.push((outline[0].lerp(outline[1], f), CornerColour::Red));
        corners.push((outline[1].lerp(outline[2], f), CornerColour::Red));
        corners.push((outline[0].lerp(outline[3], f), CornerColour::Red));
        corners.push((outline[3].lerp(outline[2], f), CornerColour::Red));
        SupertileTemplate {
            kind: "abt-diamond",
            outline,
            boundary_weight: None,
            segments: Vec::new(),
            corners,
            tiles: diamond_tiles(),
        }
    })
}

fn rhomb_supertile_seed() -> PlacedTile {
    let x = DELTA / SQRT2;
    rh(pt(0.0, 0.0), pt(x, x), pt(x + DELTA, x), pt(DELTA, 0.0))
}

fn abt_rhomb() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| {
        let seed = rhomb_supertile_seed();
        let outline = seed.corners.clone();
        // sides from the a-corner split unit-first, the others sqrt2-first
        let mut corners: Vec<(Point2, CornerColour)> =
            outline.iter().map(|&p| (p, CornerColour::Blue)).collect();
        corners.push((outline[0].lerp(outline[1], 1.0 / DELTA), CornerColour::Red));
        corners.push((outline[0].lerp(outline[3], 1.0 / DELTA), CornerColour::Red));
        corners.push((
            outline[1].lerp(outline[2], SQRT2 / DELTA),
            CornerColour::Red,
        ));
        corners.push((
            outline[3].lerp(outline[2], SQRT2 / DELTA),
            CornerColour::Red,
        ));
        SupertileTemplate {
            kind: "abt-rhomb",
            outline,
            boundary_weight: None,
            segments: Vec::new(),
            corners,
            tiles: subdivide(&seed),
        }
    })
}

fn abs_diamond() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| {
        let merged = merge_triangles_to_squares(&diamond_tiles(), true);
        // the central square's two legs away from the centre carry weight 2
        let centre_square = merged
            .iter()
            .find(|t| {
                t.kind == "abs-square"
                    && crate::geometry::polygon_centroid(&t.corners).dist(pt(DELTA / SQRT2, 0.0))
                        < 1e-6
            })
            .expect("diamond has a central square")
            .clone();
        let outline = diamond_outline();
        // the merged central square is [a, b1, c, b2] with c the corner
        // facing the diamond's A corner; its two sides at c carry weight 2
        SupertileTemplate {
            kind: "abs-diamond",
            outline: outline.clone(),
            boundary_weight: None,
            segments: vec![
                (centre_square.corners[1], centre_square.corners[2], 2),
                (centre_square.corners[2], centre_square.corners[3], 2),
            ],
            corners: vec![
                (outline[0], CornerColour::Blue),
                (outline[2], CornerColour::Blue),
                (outline[1], CornerColour::Blue),
                (outline[3], CornerColour::Blue),
            ],
            tiles: merged,
        }
    })
}

fn abs_rhomb() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| {
        let seed = rhomb_supertile_seed();
        let merged = merge_triangles_to_squares(&subdivide(&seed), true);
        SupertileTemplate {
            kind: "abs-rhomb",
            outline: seed.corners.clone(),
            boundary_weight: None,
            segments: Vec::new(),
            corners: vec![
                (seed.corners[0], CornerColour::Blue),
                (seed.corners[1], CornerColour::Blue),
                (seed.corners[2], CornerColour::Blue),
                (seed.corners[3], CornerColour::Blue),
            ],
            tiles: merged,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::PatchGraph;
    use crate::tilings::{inflate, tile_area};

    #[test]
    fn triangle_subdivides_into_five() {
        let inf = inflate(&RULE, &triangle().placed(), 1).unwrap();
        assert_eq!(inf.tiles.len(), 5);
        let total: f64 = inf.tiles.iter().map(tile_area).sum();
        assert!((total - DELTA * DELTA * 0.5).abs() < 1e-9);
        PatchGraph::build(&inf.tiles).unwrap();
    }

    #[test]
    fn rhomb_subdivides_into_seven() {
        let inf = inflate(&RULE, &rhomb().placed(), 1).unwrap();
        assert_eq!(inf.tiles.len(), 7);
        PatchGraph::build(&inf.tiles).unwrap();
    }

    #[test]
    fn diamond_supertile_vertex_count() {
        // the two triangle halves compute shared corners independently;
        // snapping must identify them: 4 corners, 4 red side vertices and
        // 4 interior vertices (21 edges and 11 faces by Euler)
        let tpl = template("abt-diamond").unwrap();
        assert_eq!(tpl.tiles.len(), 10);
        let g = PatchGraph::build(&tpl.tiles).unwrap();
        assert_eq!(g.vertices.len(), 12);
        assert_eq!(g.edges.len(), 21);
    }

    #[test]
    fn rhomb_supertile_contents() {
        let tpl = template("abt-rhomb").unwrap();
        let tris = tpl.tiles.iter().filter(|t| t.kind == "ab-tri").count();
        let rhombs = tpl.tiles.iter().filter(|t| t.kind == "ab-rhomb").count();
        assert_eq!((tris, rhombs), (4, 3));
    }

    #[test]
    fn square_merge_produces_whole_squares() {
        let tpl = template("abs-diamond").unwrap();
        let squares = tpl.tiles.iter().filter(|t| t.kind == "abs-square").count();
        let halves = tpl.tiles.iter().filter(|t| t.kind == "ab-tri").count();
        let rhombs = tpl.tiles.iter().filter(|t| t.kind == "ab-rhomb").count();
        assert_eq!((squares, halves, rhombs), (1, 4, 4));
        for t in tpl.tiles.iter().filter(|t| t.kind == "abs-square") {
            let lens: Vec<f64> = (0..4)
                .map(|i| t.corners[i].dist(t.corners[(i + 1) % 4]))
                .collect();
            for l in lens {
                assert!((l - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn deeper_patches_stay_disjoint() {
        let p = rhomb_triangle_patch(2).unwrap();
        PatchGraph::build(&p.tiles).unwrap();
        let q = rhomb_square_patch(2).unwrap();
        PatchGraph::build(&q.tiles).unwrap();
        assert!(!q.marks.is_empty());
    }
}
