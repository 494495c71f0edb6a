//! The half-hex tiling: trapezoid prototile, 4-fold substitution, and the
//! hexagon supertile of 8 half-hexes with its corner-coloured weight table.

use super::{
    group_by_ancestor, CornerColour, GroupedSupertile, Inflation, Prototile, SubstitutionRule,
    SupertileTemplate,
};
use crate::error::{Error, Result};
use crate::geometry::{pt, Point2};
use crate::patch::{Patch, PlacedTile, SupertileInstance};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const SQRT3: f64 = 1.7320508075688772;

/// Long side from corner 0 to corner 1, apex side opposite.
pub fn prototile() -> Prototile {
    Prototile {
        kind: "half-hex",
        polygon: vec![
            pt(-1.0, 0.0),
            pt(1.0, 0.0),
            pt(0.5, SQRT3 / 2.0),
            pt(-0.5, SQRT3 / 2.0),
        ],
        decorations: vec![None; 4],
    }
}

fn subdivide(parent: &PlacedTile) -> Vec<PlacedTile> {
    let origin = parent.corners[0].midpoint(parent.corners[1]);
    let ex = (parent.corners[1] - parent.corners[0]) * 0.5;
    let ey = (parent.corners[2] - origin - ex * 0.5) * (2.0 / SQRT3);
    let realize = |q: Point2| origin + ex * (q.x * 0.5) + ey * (q.y * 0.5);
    let rot = |q: Point2, deg: i32| -> Point2 {
        match deg.rem_euclid(360) {
            0 => q,
            120 => pt(
                -0.5 * q.x - SQRT3 / 2.0 * q.y,
                SQRT3 / 2.0 * q.x - 0.5 * q.y,
            ),
            180 => pt(-q.x, -q.y),
            240 => pt(
                -0.5 * q.x + SQRT3 / 2.0 * q.y,
                -SQRT3 / 2.0 * q.x - 0.5 * q.y,
            ),
            _ => unreachable!(),
        }
    };
    // centre, top (upside down), left and right wings
    let placements: [(i32, Point2); 4] = [
        (0, pt(0.0, 0.0)),
        (180, pt(0.0, SQRT3)),
        (240, pt(-1.5, SQRT3 / 2.0)),
        (120, pt(1.5, SQRT3 / 2.0)),
    ];
    let base = prototile().polygon;
    placements
        .iter()
        .map(|&(deg, shift)| {
            let corners = base.iter().map(|&q| realize(rot(q, deg) + shift)).collect();
            PlacedTile::new("half-hex", corners)
        })
        .collect()
}

pub static RULE: SubstitutionRule = SubstitutionRule {
    tiling: "half-hex",
    inflation: 2.0,
    subdivide,
};

/// Hexagon supertile outline in role order: the shared long diagonal runs
/// from corner 0 (red) to corner 3 (blue).
fn hex_outline() -> Vec<Point2> {
    vec![
        pt(-1.0, SQRT3),
        pt(1.0, SQRT3),
        pt(2.0, 0.0),
        pt(1.0, -SQRT3),
        pt(-1.0, -SQRT3),
        pt(-2.0, 0.0),
    ]
}

pub fn template(kind: &str) -> Option<&'static SupertileTemplate> {
    if kind != "hh-hex" {
        return None;
    }
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    Some(TPL.get_or_init(|| {
        let h = SQRT3 / 2.0;
        let seg = |a: (f64, f64), b: (f64, f64), w: u8| (pt(a.0, a.1), pt(b.0, b.1), w);
        let tiles = vec![
            // the two halves of the inner hexagon, split along the diagonal
            PlacedTile::new(
                "half-hex",
                vec![pt(0.5, -h), pt(-0.5, h), pt(-1.0, 0.0), pt(-0.5, -h)],
            ),
            PlacedTile::new(
                "half-hex",
                vec![pt(-0.5, h), pt(0.5, -h), pt(1.0, 0.0), pt(0.5, h)],
            ),
            // ring
            PlacedTile::new(
                "half-hex",
                vec![pt(1.0, SQRT3), pt(-1.0, SQRT3), pt(-0.5, h), pt(0.5, h)],
            ),
            PlacedTile::new(
                "half-hex",
                vec![pt(2.0, 0.0), pt(1.0, SQRT3), pt(0.5, h), pt(1.0, 0.0)],
            ),
            PlacedTile::new(
                "half-hex",
                vec![pt(1.0, -SQRT3), pt(2.0, 0.0), pt(1.0, 0.0), pt(0.5, -h)],
            ),
            PlacedTile::new(
                "half-hex",
                vec![pt(-1.0, -SQRT3), pt(1.0, -SQRT3), pt(0.5, -h), pt(-0.5, -h)],
            ),
            PlacedTile::new(
                "half-hex",
                vec![pt(-2.0, 0.0), pt(-1.0, -SQRT3), pt(-0.5, -h), pt(-1.0, 0.0)],
            ),
            PlacedTile::new(
                "half-hex",
                vec![pt(-1.0, SQRT3), pt(-2.0, 0.0), pt(-1.0, 0.0), pt(-0.5, h)],
            ),
        ];
        SupertileTemplate {
            kind: "hh-hex",
            outline: hex_outline(),
            boundary_weight: Some(3),
            segments: vec![
                // inner hexagon
                seg((-0.5, -h), (-1.0, 0.0), 1),
                seg((-1.0, 0.0), (-0.5, h), 1),
                seg((-0.5, h), (0.5, h), 1),
                seg((0.5, h), (1.0, 0.0), 1),
                seg((1.0, 0.0), (0.5, -h), 1),
                seg((0.5, -h), (-0.5, -h), 1),
                // inner part of the long diagonal
                seg((-0.5, h), (0.5, -h), 2),
                // spokes at red corners
                seg((-1.0, SQRT3), (-0.5, h), 1),
                seg((1.0, 0.0), (2.0, 0.0), 1),
                seg((-1.0, -SQRT3), (-0.5, -h), 1),
                // spokes at blue corners
                seg((0.5, h), (1.0, SQRT3), 2),
                seg((0.5, -h), (1.0, -SQRT3), 2),
                seg((-2.0, 0.0), (-1.0, 0.0), 2),
            ],
            corners: vec![
                (pt(-1.0, SQRT3), CornerColour::Red),
                (pt(2.0, 0.0), CornerColour::Red),
                (pt(-1.0, -SQRT3), CornerColour::Red),
                (pt(1.0, SQRT3), CornerColour::Blue),
                (pt(1.0, -SQRT3), CornerColour::Blue),
                (pt(-2.0, 0.0), CornerColour::Blue),
            ],
            tiles,
        }
    }))
}

/// Direction class of a hexagon corner seen from its centre. The three
/// supertiles around any corner see it at directions 120 degrees apart, so
/// colouring by class is automatically consistent across the whole patch.
fn is_red_direction(centre: Point2, corner: Point2) -> bool {
    let d = corner - centre;
    let ang = d.y.atan2(d.x).to_degrees().rem_euclid(120.0);
    // red corners sit at 0 mod 120, blue at 60 mod 120
    (ang - 0.0).abs() < 1.0 || (ang - 120.0).abs() < 1.0
}

/// Build the supertile instance for a pair of level-1 half-hex supertiles
/// sharing their long sides, aligning the template's red diagonal end with
/// the realized red-class end.
fn hexagon_instance(
    a: &GroupedSupertile,
    b: &GroupedSupertile,
) -> Result<crate::geometry::Isometry> {
    // walk the hexagon cycle: a's free sides, then b's, minding how the
    // shared long sides align
    let tol = 1e-9;
    let outline = if b.corners[0].dist(a.corners[1]) < tol {
        vec![
            a.corners[1],
            a.corners[2],
            a.corners[3],
            a.corners[0],
            b.corners[2],
            b.corners[3],
        ]
    } else if b.corners[0].dist(a.corners[0]) < tol {
        vec![
            a.corners[1],
            a.corners[2],
            a.corners[3],
            a.corners[0],
            b.corners[3],
            b.corners[2],
        ]
    } else {
        return Err(Error::Invalid(
            "half-hex pair does not share a long side".into(),
        ));
    };
    let centre = crate::geometry::polygon_centroid(&outline);
    let tpl = template("hh-hex").unwrap();
    for rot in 0..6usize {
        for flip in [false, true] {
            let perm: Vec<Point2> = (0..6)
                .map(|i| {
                    let idx = if flip {
                        (rot + 6 - i) % 6
                    } else {
                        (rot + i) % 6
                    };
                    outline[idx]
                })
                .collect();
            // the long diagonal must land on roles 0 and 3, red end first
            if perm[0].dist(a.corners[0]) > tol && perm[0].dist(a.corners[1]) > tol {
                continue;
            }
            if perm[3].dist(a.corners[0]) > tol && perm[3].dist(a.corners[1]) > tol {
                continue;
            }
            if !is_red_direction(centre, perm[0]) {
                continue;
            }
            if let Ok(iso) = super::placement_from_corners(&tpl.outline, &perm) {
                return Ok(iso);
            }
        }
    }
    Err(Error::Invalid(
        "half-hex pair does not assemble into a hexagon".into(),
    ))
}

/// A hexagon seed (two half-hexes joined along their long sides), inflated
/// `level` times, trimmed to the half-hexes that group into full hexagon
/// supertiles.
pub fn patch(level: usize) -> Result<Patch> {
    let seed_a = prototile().placed();
    let mut seed_b = prototile().placed();
    for p in seed_b.corners.iter_mut() {
        *p = pt(-p.x, -p.y);
    }
    let mut combined = Inflation {
        tiles: Vec::new(),
        paths: Vec::new(),
        nodes: BTreeMap::new(),
    };
    for (h, seed) in [seed_a, seed_b].iter().enumerate() {
        let inf = super::inflate(&RULE, seed, level)?;
        let offset = |mut p: Vec<u8>| {
            p.insert(0, h as u8);
            p
        };
        for (tile, path) in inf.tiles.into_iter().zip(inf.paths) {
            combined.tiles.push(tile);
            combined.paths.push(offset(path));
        }
        for (path, node) in inf.nodes {
            combined.nodes.insert(offset(path), node);
        }
        combined.nodes.insert(vec![h as u8], {
            let mut root = seed.clone();
            let f = RULE.inflation.powi(level as i32);
            for p in root.corners.iter_mut() {
                *p = *p * f;
            }
            root
        });
    }
    let groups = group_by_ancestor(&combined, level)?;
    let pairs = super::pair_groups_by_side(&groups, (0, 1));
    let mut tiles = Vec::new();
    let mut supertiles = Vec::new();
    for (i, j) in pairs {
        let iso = hexagon_instance(&groups[i], &groups[j])?;
        let mut members = Vec::new();
        for &t in groups[i].members.iter().chain(&groups[j].members) {
            members.push(tiles.len());
            tiles.push(combined.tiles[t].clone());
        }
        supertiles.push(SupertileInstance {
            kind: "hh-hex".into(),
            iso,
            tiles: members,
        });
    }
    let mut patch = Patch::new("half-hex", tiles);
    patch.supertiles = supertiles;
    Ok(patch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::PatchGraph;
    use crate::tilings::{inflate, tile_area};

    #[test]
    fn subdivision_covers_parent() {
        let inf = inflate(&RULE, &prototile().placed(), 1).unwrap();
        assert_eq!(inf.tiles.len(), 4);
        let total: f64 = inf.tiles.iter().map(tile_area).sum();
        assert!((total - 4.0 * 0.75 * SQRT3).abs() < 1e-9);
        PatchGraph::build(&inf.tiles).unwrap();
    }

    #[test]
    fn hexagon_seed_level1_groups_into_one_supertile() {
        let p = patch(1).unwrap();
        assert_eq!(p.supertiles.len(), 1);
        assert_eq!(p.tiles.len(), 8);
    }

    #[test]
    fn deeper_levels_group_completely() {
        let p = patch(3).unwrap();
        assert!(!p.supertiles.is_empty());
        assert!(p.supertiles.iter().all(|s| s.tiles.len() == 8));
        PatchGraph::build(&p.tiles).unwrap();
    }
}
