//! The domino variant: 2x1 prototile, 4-fold substitution, and the 4x4
//! supertile (half of a level-2 supertile) with its weight table.

use super::{Inflation, Prototile, SubstitutionRule, SupertileTemplate};
use crate::error::{Error, Result};
use crate::geometry::{pt, Point2};
use crate::patch::{Patch, PlacedTile, SupertileInstance};
use std::collections::BTreeMap;
use std::sync::OnceLock;

pub fn prototile() -> Prototile {
    Prototile {
        kind: "domino",
        polygon: vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 1.0), pt(0.0, 1.0)],
        decorations: vec![None; 4],
    }
}

fn rot(q: Point2, turns: i32) -> Point2 {
    match turns.rem_euclid(4) {
        0 => q,
        1 => pt(-q.y, q.x),
        2 => pt(-q.x, -q.y),
        _ => pt(q.y, -q.x),
    }
}

/// Children chosen so that both halves of every level-2 supertile form the
/// 4x4 block the weight table describes.
const CHILDREN: [(i32, (f64, f64)); 4] = [
    (1, (1.0, 0.0)),
    (3, (1.0, 2.0)),
    (2, (4.0, 1.0)),
    (0, (2.0, 1.0)),
];

fn subdivide(parent: &PlacedTile) -> Vec<PlacedTile> {
    let origin = parent.corners[0];
    let ex = (parent.corners[1] - origin) * 0.5;
    let ey = parent.corners[3] - origin;
    let realize = |q: Point2| origin + ex * (0.5 * q.x) + ey * (0.5 * q.y);
    CHILDREN
        .iter()
        .map(|&(turns, (tx, ty))| {
            let corners = prototile()
                .polygon
                .iter()
                .map(|&q| realize(rot(q, turns) + pt(tx, ty)))
                .collect();
            PlacedTile::new("domino", corners)
        })
        .collect()
}

pub static RULE: SubstitutionRule = SubstitutionRule {
    tiling: "domino-variant",
    inflation: 2.0,
    subdivide,
};

fn vertical(x: f64, y: f64) -> PlacedTile {
    PlacedTile::new(
        "domino",
        vec![
            pt(x, y),
            pt(x + 1.0, y),
            pt(x + 1.0, y + 2.0),
            pt(x, y + 2.0),
        ],
    )
}

fn horizontal(x: f64, y: f64) -> PlacedTile {
    PlacedTile::new(
        "domino",
        vec![
            pt(x, y),
            pt(x + 2.0, y),
            pt(x + 2.0, y + 1.0),
            pt(x, y + 1.0),
        ],
    )
}

pub fn template(kind: &str) -> Option<&'static SupertileTemplate> {
    if kind != "dom-block" {
        return None;
    }
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    Some(TPL.get_or_init(|| {
        let seg = |a: (f64, f64), b: (f64, f64), w: u8| (pt(a.0, a.1), pt(b.0, b.1), w);
        use super::CornerColour::*;
        SupertileTemplate {
            kind: "dom-block",
            outline: vec![pt(0.0, 0.0), pt(4.0, 0.0), pt(4.0, 4.0), pt(0.0, 4.0)],
            boundary_weight: Some(3),
            segments: vec![
                // internal long edges
                seg((1.0, 2.0), (1.0, 4.0), 1),
                seg((0.0, 1.0), (2.0, 1.0), 1),
                seg((3.0, 0.0), (3.0, 2.0), 1),
                seg((2.0, 3.0), (4.0, 3.0), 1),
                // the central cross, short edges throughout
                seg((0.0, 2.0), (4.0, 2.0), 2),
                seg((2.0, 0.0), (2.0, 4.0), 2),
            ],
            corners: vec![
                (pt(0.0, 0.0), Yellow),
                (pt(0.0, 4.0), Yellow),
                (pt(4.0, 4.0), Yellow),
                (pt(4.0, 0.0), Yellow),
                (pt(0.0, 2.0), Blue),
                (pt(2.0, 4.0), Blue),
                (pt(4.0, 2.0), Blue),
                (pt(2.0, 0.0), Blue),
                (pt(1.0, 4.0), Red),
                (pt(4.0, 3.0), Red),
                (pt(3.0, 0.0), Red),
                (pt(0.0, 1.0), Red),
            ],
            tiles: vec![
                vertical(0.0, 2.0),
                vertical(1.0, 2.0),
                horizontal(0.0, 1.0),
                horizontal(0.0, 0.0),
                vertical(2.0, 0.0),
                vertical(3.0, 0.0),
                horizontal(2.0, 2.0),
                horizontal(2.0, 3.0),
            ],
        }
    }))
}

/// Open red positions: boundary points that may fail to be vertices at all.
pub fn open_red_positions() -> [Point2; 4] {
    [pt(0.0, 3.0), pt(3.0, 4.0), pt(4.0, 1.0), pt(1.0, 0.0)]
}

/// Level-`level` substitution patch with the 4x4-block supertile overlay
/// (each block is half of a level-2 supertile). Needs `level >= 2`.
pub fn patch(level: usize) -> Result<Patch> {
    if level < 2 {
        return Err(Error::Invalid(
            "domino-variant patches need level >= 2".into(),
        ));
    }
    let inflation = super::inflate(&RULE, &prototile().placed(), level)?;
    block_overlay(&inflation, level)
}

fn block_overlay(inflation: &Inflation, level: usize) -> Result<Patch> {
    let tpl = template("dom-block").unwrap();
    // group tiles by their level-2 ancestor and which half they fall in
    let mut halves: BTreeMap<(Vec<u8>, bool), Vec<usize>> = BTreeMap::new();
    for (i, path) in inflation.paths.iter().enumerate() {
        let prefix = path[..level - 2].to_vec();
        let left = path[level - 2] < 2;
        halves.entry((prefix, left)).or_default().push(i);
    }
    let mut supertiles = Vec::new();
    for ((prefix, left), members) in halves {
        let node = inflation
            .nodes
            .get(&prefix)
            .ok_or(Error::UngroupableTiles(members.len()))?;
        let origin = node.corners[0];
        let ex = (node.corners[1] - origin) * 0.5;
        let ey = node.corners[3] - origin;
        let f = |x: f64, y: f64| origin + ex * x + ey * y;
        let outline = if left {
            vec![f(0.0, 0.0), f(1.0, 0.0), f(1.0, 1.0), f(0.0, 1.0)]
        } else {
            vec![f(1.0, 0.0), f(2.0, 0.0), f(2.0, 1.0), f(1.0, 1.0)]
        };
        let iso = super::placement_from_corners(&tpl.outline, &outline)?;
        supertiles.push(SupertileInstance {
            kind: "dom-block".into(),
            iso,
            tiles: members,
        });
    }
    let mut patch = Patch::new("domino-variant", inflation.tiles.clone());
    patch.supertiles = supertiles;
    Ok(patch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::PatchGraph;
    use crate::tilings::{inflate, template_weight_at, tile_area};

    #[test]
    fn subdivision_covers_parent() {
        let inf = inflate(&RULE, &prototile().placed(), 1).unwrap();
        assert_eq!(inf.tiles.len(), 4);
        let total: f64 = inf.tiles.iter().map(tile_area).sum();
        assert!((total - 8.0).abs() < 1e-9);
        PatchGraph::build(&inf.tiles).unwrap();
    }

    #[test]
    fn both_level2_halves_match_the_block() {
        // every supertile instance must map template tiles onto actual tiles
        let p = patch(2).unwrap();
        assert_eq!(p.supertiles.len(), 2);
        let tpl = template("dom-block").unwrap();
        for st in &p.supertiles {
            let realized = tpl.instantiate(&st.iso);
            for m in &st.tiles {
                let c = crate::geometry::polygon_centroid(&p.tiles[*m].corners);
                assert!(
                    realized
                        .iter()
                        .any(|t| crate::geometry::polygon_centroid(&t.corners).dist(c) < 1e-6),
                    "tile {m} not matched by its block template"
                );
            }
        }
    }

    #[test]
    fn template_weights_cover_all_internal_edges() {
        let tpl = template("dom-block").unwrap();
        let g = PatchGraph::build(&tpl.tiles).unwrap();
        for (eid, _) in g.edges.iter().enumerate() {
            assert!(template_weight_at(tpl, g.edge_midpoint(eid)).is_some());
        }
        let sums: Vec<i64> = tpl
            .internal_sums()
            .unwrap()
            .iter()
            .map(|(_, s)| *s)
            .collect();
        let mut sums = sums;
        sums.sort_unstable();
        sums.dedup();
        assert_eq!(sums, vec![5, 8]);
    }
}
