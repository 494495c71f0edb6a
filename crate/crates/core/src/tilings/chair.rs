//! The chair tiling: L-shaped prototile, 4-fold substitution, three vertex
//! placements, and the level-1 supertile weight table used by the third.

use super::{
    group_by_ancestor, inflate, overlay_from_groups, Prototile, SubstitutionRule, SupertileTemplate,
};
use crate::error::Result;
use crate::geometry::{pt, Point2};
use crate::patch::{Patch, PlacedTile};
use std::sync::OnceLock;

/// Corner list of the chair, reflex corner at index 2.
/// Short sides have length 1, the two long sides length 2.
pub const CORNERS: [(f64, f64); 6] = [
    (-1.0, 1.0),
    (0.0, 1.0),
    (0.0, 0.0),
    (1.0, 0.0),
    (1.0, -1.0),
    (-1.0, -1.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexPlacement {
    /// A vertex at every grid point: 8 per prototile.
    Vp1,
    /// Vertices where edges meet at right angles: the natural corner set.
    Vp2,
    /// Vertices only where the degree reaches 3: degree-2 points contracted.
    Vp3,
}

pub fn prototile() -> Prototile {
    Prototile {
        kind: "chair",
        polygon: CORNERS.iter().map(|&(x, y)| pt(x, y)).collect(),
        decorations: vec![None; 6],
    }
}

fn frame(parent: &PlacedTile) -> (Point2, Point2, Point2) {
    let origin = parent.corners[2];
    let ex = parent.corners[3] - origin;
    let ey = parent.corners[1] - origin;
    (origin, ex, ey)
}

/// Children of the inflated chair: one central copy, two quarter-turned
/// copies at the arm tips, one translated copy at the far corner.
fn subdivide(parent: &PlacedTile) -> Vec<PlacedTile> {
    let (origin, ex, ey) = frame(parent);
    let rot = |q: Point2, turns: i32| -> Point2 {
        match turns.rem_euclid(4) {
            0 => q,
            1 => pt(-q.y, q.x),
            2 => pt(-q.x, -q.y),
            _ => pt(q.y, -q.x),
        }
    };
    let placements: [(i32, Point2); 4] = [
        (0, pt(0.0, 0.0)),
        (3, pt(-1.0, 1.0)),
        (1, pt(1.0, -1.0)),
        (0, pt(-1.0, -1.0)),
    ];
    placements
        .iter()
        .map(|&(turns, shift)| {
            let corners = CORNERS
                .iter()
                .map(|&(x, y)| {
                    let q = rot(pt(x, y), turns) + shift;
                    origin + ex * (q.x * 0.5) + ey * (q.y * 0.5)
                })
                .collect();
            PlacedTile::new("chair", corners)
        })
        .collect()
}

pub static RULE: SubstitutionRule = SubstitutionRule {
    tiling: "chair",
    inflation: 2.0,
    subdivide,
};

/// Insert the long-side midpoints so each prototile carries 8 vertices.
pub fn vp1_polygon(corners: &[Point2]) -> Vec<Point2> {
    vec![
        corners[0],
        corners[1],
        corners[2],
        corners[3],
        corners[4],
        corners[4].midpoint(corners[5]),
        corners[5],
        corners[5].midpoint(corners[0]),
    ]
}

/// A chair placed by a counter-clockwise quarter-turn count and an offset,
/// matching the collar placement lists.
pub fn place(turns: i32, at: Point2, vp: VertexPlacement) -> PlacedTile {
    let rotate = |q: Point2| -> Point2 {
        match turns.rem_euclid(4) {
            0 => q,
            1 => pt(-q.y, q.x),
            2 => pt(-q.x, -q.y),
            _ => pt(q.y, -q.x),
        }
    };
    let corners: Vec<Point2> = CORNERS
        .iter()
        .map(|&(x, y)| at + rotate(pt(x, y)))
        .collect();
    let corners = if vp == VertexPlacement::Vp1 {
        vp1_polygon(&corners)
    } else {
        corners
    };
    PlacedTile::new("chair", corners)
}

/// Level-1 supertile table: all external edges 3; the internal staircase and
/// spokes carry the transcribed weights.
pub fn template(kind: &str) -> Option<&'static SupertileTemplate> {
    if kind != "chair-l1" {
        return None;
    }
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    Some(TPL.get_or_init(|| {
        let outline: Vec<Point2> = CORNERS.iter().map(|&(x, y)| pt(2.0 * x, 2.0 * y)).collect();
        let root = PlacedTile::new("chair", outline.clone());
        let tiles = subdivide(&root);
        let w = |a: (f64, f64), b: (f64, f64), w: u8| (pt(a.0, a.1), pt(b.0, b.1), w);
        SupertileTemplate {
            kind: "chair-l1",
            outline,
            boundary_weight: Some(3),
            segments: vec![
                w((0.0, 1.0), (-1.0, 1.0), 1),
                w((-1.0, 1.0), (-1.0, 0.0), 1),
                w((-1.0, 0.0), (-1.0, -1.0), 1),
                w((-1.0, -1.0), (0.0, -1.0), 1),
                w((0.0, -1.0), (1.0, -1.0), 2),
                w((1.0, -1.0), (1.0, 0.0), 2),
                w((-2.0, 0.0), (-1.0, 0.0), 1),
                w((0.0, -1.0), (0.0, -2.0), 1),
            ],
            corners: Vec::new(),
            tiles,
        }
    }))
}

/// Level-`level` substitution patch of a single chair seed, under the given
/// vertex placement. VP3 patches carry the level-1 supertile overlay.
pub fn patch(level: usize, vp: VertexPlacement) -> Result<Patch> {
    let inflation = inflate(&RULE, &prototile().placed(), level)?;
    let tiles: Vec<PlacedTile> = inflation
        .tiles
        .iter()
        .map(|t| match vp {
            VertexPlacement::Vp1 => PlacedTile::new("chair", vp1_polygon(&t.corners)),
            _ => t.clone(),
        })
        .collect();
    let mut patch = Patch::new("chair", tiles);
    if vp == VertexPlacement::Vp3 && level >= 1 {
        let groups = group_by_ancestor(&inflation, level - 1)?;
        patch.supertiles = overlay_from_groups(&groups, "chair-l1")?;
    }
    Ok(patch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::PatchGraph;
    use crate::tilings::tile_area;

    #[test]
    fn one_level_gives_four_chairs() {
        let inf = inflate(&RULE, &prototile().placed(), 1).unwrap();
        assert_eq!(inf.tiles.len(), 4);
        let total: f64 = inf.tiles.iter().map(tile_area).sum();
        assert!((total - 4.0 * 3.0).abs() < 1e-9);
        // children tile the inflated L without overlap
        PatchGraph::build(&inf.tiles).unwrap();
    }

    #[test]
    fn tile_count_is_four_to_the_level() {
        for level in 0..=6 {
            let inf = inflate(&RULE, &prototile().placed(), level).unwrap();
            assert_eq!(inf.tiles.len(), 4usize.pow(level as u32));
        }
    }

    #[test]
    fn level_cap_enforced() {
        assert!(inflate(&RULE, &prototile().placed(), 9).is_err());
    }

    #[test]
    fn vp3_overlay_counts_match() {
        let p = patch(2, VertexPlacement::Vp3).unwrap();
        assert_eq!(p.tiles.len(), 16);
        assert_eq!(p.supertiles.len(), 4);
        assert!(p.supertiles.iter().all(|s| s.tiles.len() == 4));
    }

    #[test]
    fn template_tiles_cover_supertile() {
        let tpl = template("chair-l1").unwrap();
        let total: f64 = tpl.tiles.iter().map(tile_area).sum();
        assert!((total - 12.0).abs() < 1e-9);
    }
}
