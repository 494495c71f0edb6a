//! Prototile catalogue, substitution rules with placement hierarchy,
//! supertile templates with their transcribed weight tables, and patch
//! generators for every tiling the labelling catalogue covers.

pub mod ammann;
pub mod chair;
pub mod domino;
pub mod grids;
pub mod halfhex;
pub mod penrose;
pub mod pinwheel;

use crate::error::{Error, Result};
use crate::geometry::{signed_area, Isometry, Point2};
use crate::patch::{PatchGraph, PlacedTile, SupertileInstance};
use serde::Serialize;
use std::collections::BTreeMap;

/// Inflation levels beyond this are refused.
pub const LEVEL_CAP: usize = 8;

/// A prototile: canonical polygon with decorations and derived edge data.
#[derive(Debug, Clone)]
pub struct Prototile {
    pub kind: &'static str,
    pub polygon: Vec<Point2>,
    pub decorations: Vec<Option<crate::patch::EdgeMark>>,
}

impl Prototile {
    pub fn side_lengths(&self) -> Vec<f64> {
        let n = self.polygon.len();
        (0..n)
            .map(|i| self.polygon[i].dist(self.polygon[(i + 1) % n]))
            .collect()
    }

    pub fn placed(&self) -> PlacedTile {
        let mut t = PlacedTile::new(self.kind, self.polygon.clone());
        if self.decorations.iter().any(|d| d.is_some()) {
            t.decorations = self.decorations.clone();
        }
        t
    }
}

/// A substitution rule in point form: children are computed as affine
/// combinations of the parent's corner points, so reflected placements and
/// deep compositions stay exact to machine precision.
pub struct SubstitutionRule {
    pub tiling: &'static str,
    pub inflation: f64,
    pub subdivide: fn(&PlacedTile) -> Vec<PlacedTile>,
}

impl SubstitutionRule {
    pub fn by_name(tiling: &str) -> Option<&'static SubstitutionRule> {
        match tiling {
            "chair" => Some(&chair::RULE),
            "half-hex" => Some(&halfhex::RULE),
            "domino-variant" => Some(&domino::RULE),
            "penrose" => Some(&penrose::RULE),
            "ab-rhomb-triangle" | "ab-rhomb-square" => Some(&ammann::RULE),
            "non-pinwheel" => Some(&pinwheel::NON_PINWHEEL_RULE),
            _ => None,
        }
    }
}

/// Result of a level-fold substitution: the level-0 tiles, each with its
/// ancestry chain, plus every intermediate supertile outline.
#[derive(Debug, Clone)]
pub struct Inflation {
    pub tiles: Vec<PlacedTile>,
    /// Ancestry path per tile: child indices from the root down.
    pub paths: Vec<Vec<u8>>,
    /// Every strict ancestor, as a placed (super)tile at its own scale.
    pub nodes: BTreeMap<Vec<u8>, PlacedTile>,
}

/// Apply `level` rounds of substitution to `seed`. The seed is blown up by
/// the rule's inflation factor per level, so the level-0 tiles come out at
/// the seed's original scale.
pub fn inflate(rule: &SubstitutionRule, seed: &PlacedTile, level: usize) -> Result<Inflation> {
    if level > LEVEL_CAP {
        return Err(Error::LevelCapExceeded(level, LEVEL_CAP));
    }
    let factor = rule.inflation.powi(level as i32);
    let mut root = seed.clone();
    for p in root.corners.iter_mut() {
        *p = *p * factor;
    }
    let mut inflation = Inflation {
        tiles: Vec::new(),
        paths: Vec::new(),
        nodes: BTreeMap::new(),
    };
    fn rec(
        rule: &SubstitutionRule,
        tile: PlacedTile,
        path: Vec<u8>,
        depth: usize,
        out: &mut Inflation,
    ) {
        if depth == 0 {
            out.paths.push(path);
            out.tiles.push(tile);
            return;
        }
        let children = (rule.subdivide)(&tile);
        out.nodes.insert(path.clone(), tile);
        for (i, child) in children.into_iter().enumerate() {
            let mut p = path.clone();
            p.push(i as u8);
            rec(rule, child, p, depth - 1, out);
        }
    }
    rec(rule, root, Vec::new(), level, &mut inflation);
    Ok(inflation)
}

/// One named supertile produced by grouping.
#[derive(Debug, Clone)]
pub struct GroupedSupertile {
    pub kind: String,
    /// Outline corners in the supertile's role order.
    pub corners: Vec<Point2>,
    /// Indices into the inflation's tile list.
    pub members: Vec<usize>,
}

/// Partition the level-0 tiles by their depth-`depth` ancestor.
/// Every tile lands in exactly one group.
pub fn group_by_ancestor(inflation: &Inflation, depth: usize) -> Result<Vec<GroupedSupertile>> {
    let mut groups: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (i, path) in inflation.paths.iter().enumerate() {
        if path.len() < depth {
            return Err(Error::UngroupableTiles(1));
        }
        groups.entry(path[..depth].to_vec()).or_default().push(i);
    }
    groups
        .into_iter()
        .map(|(prefix, members)| {
            let node = inflation
                .nodes
                .get(&prefix)
                .ok_or(Error::UngroupableTiles(members.len()))?;
            Ok(GroupedSupertile {
                kind: node.kind.clone(),
                corners: node.corners.clone(),
                members,
            })
        })
        .collect()
}

/// Template of a supertile: outline, constituent tiles, transcribed edge
/// weights and corner colours, all in the template's own coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct SupertileTemplate {
    pub kind: &'static str,
    pub outline: Vec<Point2>,
    /// Weight for edges lying on the outline, when uniform.
    pub boundary_weight: Option<u8>,
    /// Weighted segments; an edge whose midpoint lies on one takes its weight.
    pub segments: Vec<(Point2, Point2, u8)>,
    pub corners: Vec<(Point2, CornerColour)>,
    #[serde(skip)]
    pub tiles: Vec<PlacedTile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CornerColour {
    Red,
    Blue,
    Yellow,
}

impl SupertileTemplate {
    /// Realize the template's tiles under a placement.
    pub fn instantiate(&self, iso: &Isometry) -> Vec<PlacedTile> {
        self.tiles
            .iter()
            .map(|t| {
                let mut placed = t.clone();
                for p in placed.corners.iter_mut() {
                    *p = iso.apply(*p);
                }
                placed
            })
            .collect()
    }

    /// Internal-vertex weighted degrees of the template, from its own tables.
    pub fn internal_sums(&self) -> Result<Vec<(Point2, i64)>> {
        let g = PatchGraph::build(&self.tiles)?;
        let weights = classify_template_edges(self, &g)?;
        let closed = g.closed_vertices();
        let mut sums = vec![0i64; g.vertices.len()];
        for (&(a, b), w) in g.edges.iter().zip(&weights) {
            sums[a as usize] += *w as i64;
            sums[b as usize] += *w as i64;
        }
        Ok(g.vertices
            .iter()
            .zip(&closed)
            .enumerate()
            .filter(|(_, (_, s))| **s == crate::patch::VertexStatus::Closed)
            .map(|(v, (p, _))| (*p, sums[v]))
            .collect())
    }
}

/// Weigh every edge of a template's own graph from the template tables.
pub fn classify_template_edges(tpl: &SupertileTemplate, g: &PatchGraph) -> Result<Vec<u8>> {
    g.edges
        .iter()
        .enumerate()
        .map(|(eid, &(a, b))| {
            let mid = g.vertices[a as usize].midpoint(g.vertices[b as usize]);
            template_weight_at(tpl, mid).ok_or(Error::PartialCoverage(eid, eid))
        })
        .collect()
}

/// Weight of an edge with the given midpoint under the template tables.
pub fn template_weight_at(tpl: &SupertileTemplate, mid: Point2) -> Option<u8> {
    const TOL: f64 = 1e-6;
    for (a, b, w) in &tpl.segments {
        if crate::geometry::dist_point_segment(mid, *a, *b) < TOL {
            return Some(*w);
        }
    }
    if let Some(bw) = tpl.boundary_weight {
        let n = tpl.outline.len();
        for i in 0..n {
            let a = tpl.outline[i];
            let b = tpl.outline[(i + 1) % n];
            if crate::geometry::dist_point_segment(mid, a, b) < TOL {
                return Some(bw);
            }
        }
    }
    None
}

/// Every supertile kind with a registered template.
pub const TEMPLATE_KINDS: [&str; 12] = [
    "square2x2",
    "tri-rhombus",
    "hex-flower",
    "chair-l1",
    "hh-hex",
    "dom-block",
    "np-rect-blue",
    "np-rect-red",
    "pw-rect",
    "pw-kite-blue",
    "pw-kite-red",
    "abt-diamond",
];

/// The rule tables in their data-file form: outline, boundary weight,
/// weighted segments and corner colours per supertile kind.
pub fn export_tables() -> serde_json::Value {
    let mut tables = serde_json::Map::new();
    for kind in TEMPLATE_KINDS {
        let tpl = template(kind).expect("registered template");
        tables.insert(
            kind.to_string(),
            serde_json::json!({
                "outline": tpl.outline,
                "boundary_weight": tpl.boundary_weight,
                "segments": tpl.segments,
                "corners": tpl.corners,
            }),
        );
    }
    serde_json::json!({ "version": 1, "tables": tables })
}

pub fn template(kind: &str) -> Option<&'static SupertileTemplate> {
    grids::template(kind)
        .or_else(|| chair::template(kind))
        .or_else(|| halfhex::template(kind))
        .or_else(|| domino::template(kind))
        .or_else(|| pinwheel::template(kind))
        .or_else(|| ammann::template(kind))
}

/// Recover the placement taking `canonical` to `realized` (role order equal).
pub fn placement_from_corners(canonical: &[Point2], realized: &[Point2]) -> Result<Isometry> {
    assert!(canonical.len() == realized.len() && canonical.len() >= 3);
    for reflect in [false, true] {
        let iso = crate::geometry::isometry_from_segment(
            canonical[0],
            canonical[1],
            realized[0],
            realized[1],
            reflect,
        );
        let ok = canonical
            .iter()
            .zip(realized)
            .all(|(c, r)| iso.apply(*c).dist(*r) < 1e-6 * iso.scale.max(1.0));
        if ok {
            return Ok(iso);
        }
    }
    Err(Error::Invalid(
        "corner lists are not related by a similarity".into(),
    ))
}

/// Attach supertile instances to a patch from grouped inflation output.
pub fn overlay_from_groups(
    groups: &[GroupedSupertile],
    template_kind: &str,
) -> Result<Vec<SupertileInstance>> {
    let tpl = template(template_kind)
        .ok_or_else(|| Error::UnknownCatalogue(template_kind.to_string()))?;
    groups
        .iter()
        .map(|grp| {
            let iso = placement_from_corners(&tpl.outline, &grp.corners)?;
            Ok(SupertileInstance {
                kind: template_kind.to_string(),
                iso,
                tiles: grp.members.clone(),
            })
        })
        .collect()
}

/// Pair grouped supertiles that share a given side, e.g. half-hex level-1
/// supertiles joining long side to long side into hexagons.
pub fn pair_groups_by_side(
    groups: &[GroupedSupertile],
    side: (usize, usize),
) -> Vec<(usize, usize)> {
    let mut by_mid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    let quant = |p: Point2| ((p.x * 1e6).round() as i64, (p.y * 1e6).round() as i64);
    for (i, g) in groups.iter().enumerate() {
        let mid = g.corners[side.0].midpoint(g.corners[side.1]);
        by_mid.entry(quant(mid)).or_default().push(i);
    }
    by_mid
        .into_values()
        .filter(|v| v.len() == 2)
        .map(|v| (v[0], v[1]))
        .collect()
}

/// Area of a placed tile.
pub fn tile_area(tile: &PlacedTile) -> f64 {
    signed_area(&tile.corners).abs()
}

#[cfg(test)]
mod tests {
    #[test]
    fn shipped_rule_tables_match_the_registry() {
        let exported = serde_json::to_string_pretty(&super::export_tables()).unwrap();
        let shipped = include_str!("../../data/rule-tables.json");
        assert_eq!(
            exported.trim(),
            shipped.trim(),
            "data/rule-tables.json is out of date; regenerate with the export_tables example"
        );
    }
}
