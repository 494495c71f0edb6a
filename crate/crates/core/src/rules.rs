//! The catalogue of explicit edge-labelling rules, each mapping edge
//! classifications (length, arrows, supertile tables) to weights in {1,2,3}.

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::patch::{ContractedGraph, Labelling, MarkKind, Patch, PatchGraph, WeightMark};
use crate::tilings::{template, template_weight_at, CornerColour, SupertileTemplate};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Replacement tables, consulted before the built-in registry. The mutation
/// battery uses this to perturb single entries.
pub type TemplateOverrides = BTreeMap<String, SupertileTemplate>;

pub fn resolve_template<'a>(
    overrides: &'a TemplateOverrides,
    kind: &str,
) -> Option<&'a SupertileTemplate> {
    overrides.get(kind).or_else(|| template(kind))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleId {
    Square2x2,
    Triangle18,
    Hex7,
    ChairVp1Const,
    ChairVp2LongShort,
    ChairVp3Supertile,
    NonpinwheelRect,
    PinwheelRectKite,
    Halfhex8,
    AbRhombTriangleLength,
    AbRhombSquareCorner,
    PenroseArrows,
    DominoVariant,
}

pub const ALL_RULES: [RuleId; 13] = [
    RuleId::Square2x2,
    RuleId::Triangle18,
    RuleId::Hex7,
    RuleId::ChairVp1Const,
    RuleId::ChairVp2LongShort,
    RuleId::ChairVp3Supertile,
    RuleId::NonpinwheelRect,
    RuleId::PinwheelRectKite,
    RuleId::Halfhex8,
    RuleId::AbRhombTriangleLength,
    RuleId::AbRhombSquareCorner,
    RuleId::PenroseArrows,
    RuleId::DominoVariant,
];

impl RuleId {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::Square2x2 => "square2x2",
            RuleId::Triangle18 => "triangle18",
            RuleId::Hex7 => "hex7",
            RuleId::ChairVp1Const => "chair_vp1_const",
            RuleId::ChairVp2LongShort => "chair_vp2_long_short",
            RuleId::ChairVp3Supertile => "chair_vp3_supertile",
            RuleId::NonpinwheelRect => "nonpinwheel_rect",
            RuleId::PinwheelRectKite => "pinwheel_rect_kite",
            RuleId::Halfhex8 => "halfhex8",
            RuleId::AbRhombTriangleLength => "ab_rhomb_triangle_length",
            RuleId::AbRhombSquareCorner => "ab_rhomb_square_corner",
            RuleId::PenroseArrows => "penrose_arrows",
            RuleId::DominoVariant => "domino_variant",
        }
    }

    pub fn parse(s: &str) -> Option<RuleId> {
        ALL_RULES.iter().copied().find(|r| r.as_str() == s)
    }

    /// Rules whose weights come from per-supertile tables.
    pub fn is_table_based(&self) -> bool {
        matches!(
            self,
            RuleId::Square2x2
                | RuleId::Triangle18
                | RuleId::Hex7
                | RuleId::ChairVp3Supertile
                | RuleId::NonpinwheelRect
                | RuleId::PinwheelRectKite
                | RuleId::Halfhex8
                | RuleId::DominoVariant
        )
    }
}

/// Classification of one edge under one rule.
#[derive(Debug, Clone, Default, Serialize)]
pub struct EdgeClass {
    /// Lies on a supertile boundary.
    pub external: Option<bool>,
    /// Realized length, for the length-based rules.
    pub length: Option<f64>,
    /// Arrow decoration carried by the tiles.
    pub arrow: Option<MarkKind>,
    /// Colour of an incident supertile-boundary corner, when any.
    pub corner_colour: Option<CornerColour>,
    /// Weight read off a figure table or mark.
    pub figure_weight: Option<u8>,
    pub weight: u8,
}

/// A labelled patch: the built graph, the contracted view when the rule
/// works on one, and the weights.
pub struct Labelled {
    pub graph: PatchGraph,
    pub contracted: Option<ContractedGraph>,
    pub labelling: Labelling,
}

impl Labelled {
    pub fn verify(&self) -> Result<crate::patch::ConflictReport> {
        match &self.contracted {
            Some(cg) => crate::patch::verify_colouring_contracted(&self.graph, cg, &self.labelling),
            None => crate::patch::verify_colouring(&self.graph, &self.labelling),
        }
    }

    /// Distinct sums attained on Closed vertices.
    pub fn closed_sums(&self) -> Vec<i64> {
        match &self.contracted {
            Some(cg) => crate::patch::closed_sums_contracted(&self.graph, cg, &self.labelling),
            None => {
                let hist = crate::patch::sum_histogram(&self.graph, &self.labelling);
                hist.map(|h| h.keys().copied().collect())
                    .unwrap_or_default()
            }
        }
    }
}

/// Apply a rule to a patch: builds the graph and produces a total labelling.
pub fn apply_rule(rule: RuleId, patch: &Patch) -> Result<Labelled> {
    apply_rule_with(rule, patch, &TemplateOverrides::new())
}

/// Same, consulting `overrides` before the built-in template registry.
pub fn apply_rule_with(
    rule: RuleId,
    patch: &Patch,
    overrides: &TemplateOverrides,
) -> Result<Labelled> {
    let graph = PatchGraph::build(&patch.tiles)?;
    match rule {
        RuleId::ChairVp1Const => {
            let labelling = Labelling::constant(graph.edges.len(), 1);
            Ok(Labelled {
                graph,
                contracted: None,
                labelling,
            })
        }
        RuleId::ChairVp2LongShort => {
            let weights = graph
                .edges
                .iter()
                .map(|&(a, b)| {
                    let len = graph.vertices[a as usize].dist(graph.vertices[b as usize]);
                    length_weight(len, &[(1.0, 1), (2.0, 2)]).ok_or_else(|| bad_length(a, b, len))
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok(Labelled {
                graph,
                contracted: None,
                labelling: Labelling { weights },
            })
        }
        RuleId::AbRhombTriangleLength => {
            let weights = graph
                .edges
                .iter()
                .map(|&(a, b)| {
                    let len = graph.vertices[a as usize].dist(graph.vertices[b as usize]);
                    length_weight(len, &[(1.0, 1), (std::f64::consts::SQRT_2, 2)])
                        .ok_or_else(|| bad_length(a, b, len))
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok(Labelled {
                graph,
                contracted: None,
                labelling: Labelling { weights },
            })
        }
        RuleId::PenroseArrows => {
            crate::tilings::penrose::check_arrow_matching(&graph)?;
            let weights = graph
                .edges
                .iter()
                .enumerate()
                .map(|(eid, &(a, b))| {
                    let (ti, si) = graph.claims[eid][0];
                    let tile = &graph.tiles[ti as usize];
                    let mark = tile
                        .decorations
                        .get(si as usize)
                        .copied()
                        .flatten()
                        .ok_or_else(|| {
                            Error::MissingMetadata(
                                "penrose_arrows".into(),
                                format!("edge ({a}, {b}) carries no arrow"),
                            )
                        })?;
                    match mark.kind {
                        MarkKind::Double => Ok(1),
                        MarkKind::Single => Ok(3),
                        MarkKind::Arrow => Err(Error::MissingMetadata(
                            "penrose_arrows".into(),
                            "plain arrows are not Penrose decorations".into(),
                        )),
                    }
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok(Labelled {
                graph,
                contracted: None,
                labelling: Labelling { weights },
            })
        }
        RuleId::AbRhombSquareCorner => {
            if patch.marks.is_empty() && patch.tiling != "ab-rhomb-square" {
                return Err(Error::MissingMetadata(
                    rule.as_str().into(),
                    "patch carries no weight marks".into(),
                ));
            }
            let weights = graph
                .edges
                .iter()
                .enumerate()
                .map(|(eid, _)| mark_weight(&patch.marks, graph.edge_midpoint(eid)).unwrap_or(1))
                .collect();
            Ok(Labelled {
                graph,
                contracted: None,
                labelling: Labelling { weights },
            })
        }
        RuleId::ChairVp3Supertile => {
            if patch.supertiles.is_empty() {
                return Err(Error::MissingMetadata(
                    rule.as_str().into(),
                    "patch carries no supertile structure".into(),
                ));
            }
            let cg = graph.contract_degree2()?;
            let weights = cg
                .edges
                .iter()
                .map(|edge| {
                    let mut weight: Option<u8> = None;
                    for pair in edge.chain.windows(2) {
                        let mid = graph.vertices[pair[0] as usize]
                            .midpoint(graph.vertices[pair[1] as usize]);
                        let w = table_weight_at(patch, rule, mid, overrides)?;
                        match weight {
                            None => weight = Some(w),
                            Some(prev) if prev != w => {
                                return Err(Error::TableConflict(
                                    edge.a as usize,
                                    edge.b as usize,
                                    prev,
                                    w,
                                ))
                            }
                            _ => {}
                        }
                    }
                    weight.ok_or(Error::PartialCoverage(edge.a as usize, edge.b as usize))
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok(Labelled {
                graph,
                contracted: Some(cg),
                labelling: Labelling { weights },
            })
        }
        _ => {
            if patch.supertiles.is_empty() {
                return Err(Error::MissingMetadata(
                    rule.as_str().into(),
                    "patch carries no supertile structure".into(),
                ));
            }
            let tile_owner = owner_map(patch, graph.tiles.len());
            let weights = graph
                .edges
                .iter()
                .enumerate()
                .map(|(eid, &(a, b))| {
                    table_weight_for_edge(patch, &graph, &tile_owner, eid, overrides)
                        .and_then(|w| w.ok_or(Error::PartialCoverage(a as usize, b as usize)))
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok(Labelled {
                graph,
                contracted: None,
                labelling: Labelling { weights },
            })
        }
    }
}

fn bad_length(a: u32, b: u32, len: f64) -> Error {
    Error::Invalid(format!("edge ({a}, {b}) has unclassifiable length {len}"))
}

fn length_weight(len: f64, classes: &[(f64, u8)]) -> Option<u8> {
    classes
        .iter()
        .find(|(l, _)| (len - l).abs() < 1e-6)
        .map(|&(_, w)| w)
}

fn mark_weight(marks: &[WeightMark], mid: Point2) -> Option<u8> {
    marks
        .iter()
        .find(|m| crate::geometry::dist_point_segment(mid, m.a, m.b) < 1e-6)
        .map(|m| m.weight)
}

fn owner_map(patch: &Patch, n_tiles: usize) -> Vec<Vec<u32>> {
    let mut owners = vec![Vec::new(); n_tiles];
    for (si, inst) in patch.supertiles.iter().enumerate() {
        for &t in &inst.tiles {
            if t < n_tiles {
                owners[t].push(si as u32);
            }
        }
    }
    owners
}

/// Weight of a point under the patch's supertile tables; all owning
/// supertiles must agree.
fn table_weight_at(
    patch: &Patch,
    rule: RuleId,
    mid: Point2,
    overrides: &TemplateOverrides,
) -> Result<u8> {
    let mut found: Option<u8> = None;
    for inst in &patch.supertiles {
        let tpl = resolve_template(overrides, &inst.kind)
            .ok_or_else(|| Error::UnknownCatalogue(inst.kind.clone()))?;
        let local = inst.iso.inverse().apply(mid);
        if let Some(w) = template_weight_at(tpl, local) {
            match found {
                None => found = Some(w),
                Some(prev) if prev != w => {
                    return Err(Error::TableConflict(0, 0, prev, w));
                }
                _ => {}
            }
        }
    }
    found.ok_or_else(|| {
        Error::MissingMetadata(
            rule.as_str().into(),
            format!("point ({}, {})", mid.x, mid.y),
        )
    })
}

fn table_weight_for_edge(
    patch: &Patch,
    g: &PatchGraph,
    owners: &[Vec<u32>],
    eid: usize,
    overrides: &TemplateOverrides,
) -> Result<Option<u8>> {
    let mid = g.edge_midpoint(eid);
    let mut found: Option<u8> = None;
    let mut seen = Vec::new();
    for &(ti, _) in &g.claims[eid] {
        for &si in &owners[ti as usize] {
            if seen.contains(&si) {
                continue;
            }
            seen.push(si);
            let inst = &patch.supertiles[si as usize];
            let tpl = resolve_template(overrides, &inst.kind)
                .ok_or_else(|| Error::UnknownCatalogue(inst.kind.clone()))?;
            let local = inst.iso.inverse().apply(mid);
            if let Some(w) = template_weight_at(tpl, local) {
                match found {
                    None => found = Some(w),
                    Some(prev) if prev != w => {
                        let (a, b) = g.edges[eid];
                        return Err(Error::TableConflict(a as usize, b as usize, prev, w));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(found)
}

/// Classify one edge under a rule without committing to a full labelling.
pub fn classify_edge(rule: RuleId, patch: &Patch, g: &PatchGraph, eid: usize) -> Result<EdgeClass> {
    let (a, b) = g.edges[eid];
    let mid = g.edge_midpoint(eid);
    let len = g.vertices[a as usize].dist(g.vertices[b as usize]);
    let mut class = EdgeClass {
        length: Some(len),
        ..Default::default()
    };
    if !patch.supertiles.is_empty() {
        let mut external = false;
        for inst in &patch.supertiles {
            let tpl = match template(&inst.kind) {
                Some(t) => t,
                None => continue,
            };
            let local = inst.iso.inverse().apply(mid);
            let n = tpl.outline.len();
            for i in 0..n {
                if crate::geometry::dist_point_segment(
                    local,
                    tpl.outline[i],
                    tpl.outline[(i + 1) % n],
                ) < 1e-6
                {
                    external = true;
                }
            }
            for (corner, colour) in &tpl.corners {
                let at = inst.iso.apply(*corner);
                if at.dist(g.vertices[a as usize]) < 1e-6 || at.dist(g.vertices[b as usize]) < 1e-6
                {
                    class.corner_colour = Some(*colour);
                }
            }
        }
        class.external = Some(external);
    }
    if let Some(&(ti, si)) = g.claims[eid].first() {
        if let Some(Some(mark)) = g.tiles[ti as usize].decorations.get(si as usize) {
            class.arrow = Some(mark.kind);
        }
    }
    class.weight = match rule {
        RuleId::ChairVp1Const => 1,
        RuleId::ChairVp2LongShort => {
            length_weight(len, &[(1.0, 1), (2.0, 2)]).ok_or_else(|| bad_length(a, b, len))?
        }
        RuleId::AbRhombTriangleLength => {
            length_weight(len, &[(1.0, 1), (std::f64::consts::SQRT_2, 2)])
                .ok_or_else(|| bad_length(a, b, len))?
        }
        RuleId::PenroseArrows => match class.arrow {
            Some(MarkKind::Double) => 1,
            Some(MarkKind::Single) => 3,
            _ => {
                return Err(Error::MissingMetadata(
                    rule.as_str().into(),
                    format!("edge ({a}, {b}) carries no arrow"),
                ))
            }
        },
        RuleId::AbRhombSquareCorner => {
            let w = mark_weight(&patch.marks, mid).unwrap_or(1);
            class.figure_weight = Some(w);
            w
        }
        _ => {
            let owners = owner_map(patch, g.tiles.len());
            let w = table_weight_for_edge(patch, g, &owners, eid, &TemplateOverrides::new())?
                .ok_or(Error::PartialCoverage(a as usize, b as usize))?;
            class.figure_weight = Some(w);
            w
        }
    };
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::{sum_histogram, VertexStatus};
    use crate::tilings::{chair, grids};

    #[test]
    fn square_rule_verifies_and_sums_match() {
        let patch = grids::square_patch(6).unwrap();
        let labelled = apply_rule(RuleId::Square2x2, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
        let hist = sum_histogram(&labelled.graph, &labelled.labelling).unwrap();
        let sums: Vec<i64> = hist.keys().copied().collect();
        assert_eq!(sums, vec![4, 6, 8]);
    }

    #[test]
    fn weighted_degree_of_block_centre_is_eight() {
        let patch = grids::square_patch(1).unwrap();
        let labelled = apply_rule(RuleId::Square2x2, &patch).unwrap();
        let centre = labelled
            .graph
            .vertices
            .iter()
            .position(|p| p.dist(crate::geometry::pt(1.0, 1.0)) < 1e-9)
            .unwrap() as u32;
        assert_eq!(
            crate::patch::weighted_degree(&labelled.graph, &labelled.labelling, centre),
            8
        );
        // a degree-4 vertex with unit weights sums to 4
        let ones = crate::patch::Labelling::constant(labelled.graph.edges.len(), 1);
        assert_eq!(
            crate::patch::weighted_degree(&labelled.graph, &ones, centre),
            4
        );
    }

    #[test]
    fn triangle_rule_verifies() {
        let patch = grids::triangle_patch(5).unwrap();
        let labelled = apply_rule(RuleId::Triangle18, &patch).unwrap();
        assert!(labelled.verify().unwrap().is_clean());
        let hist = sum_histogram(&labelled.graph, &labelled.labelling).unwrap();
        let sums: Vec<i64> = hist.keys().copied().collect();
        assert_eq!(sums, vec![9, 12, 15]);
    }

    #[test]
    fn hexagon_rule_verifies() {
        let patch = grids::hexagon_patch(4).unwrap();
        let labelled = apply_rule(RuleId::Hex7, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
        let hist = sum_histogram(&labelled.graph, &labelled.labelling).unwrap();
        for s in hist.keys() {
            assert!((3..=7).contains(s));
        }
    }

    #[test]
    fn chair_vp1_and_vp2_verify() {
        for (vp, rule) in [
            (chair::VertexPlacement::Vp1, RuleId::ChairVp1Const),
            (chair::VertexPlacement::Vp2, RuleId::ChairVp2LongShort),
        ] {
            let patch = chair::patch(3, vp).unwrap();
            let labelled = apply_rule(rule, &patch).unwrap();
            let report = labelled.verify().unwrap();
            assert!(
                report.is_clean(),
                "{rule:?}: {:?}",
                report.conflicts.first()
            );
            assert!(report.closed_vertices > 20);
        }
    }

    #[test]
    fn chair_vp3_verifies_with_expected_sums() {
        let patch = chair::patch(3, chair::VertexPlacement::Vp3).unwrap();
        let labelled = apply_rule(RuleId::ChairVp3Supertile, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
        let sums = labelled.closed_sums();
        for s in &sums {
            assert!(
                [2, 3, 4, 7, 8, 10, 12].contains(s),
                "unexpected VP3 sum {s} in {sums:?}"
            );
        }
    }

    #[test]
    fn halfhex_rule_verifies() {
        let patch = crate::tilings::halfhex::patch(3).unwrap();
        let labelled = apply_rule(RuleId::Halfhex8, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
    }

    #[test]
    fn domino_rule_verifies() {
        let patch = crate::tilings::domino::patch(4).unwrap();
        let labelled = apply_rule(RuleId::DominoVariant, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
    }

    #[test]
    fn penrose_rule_verifies() {
        let patch = crate::tilings::penrose::patch(4).unwrap();
        let labelled = apply_rule(RuleId::PenroseArrows, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
        assert!(report.closed_vertices > 10);
    }

    #[test]
    fn ab_triangle_rule_verifies() {
        let patch = crate::tilings::ammann::rhomb_triangle_patch(2).unwrap();
        let labelled = apply_rule(RuleId::AbRhombTriangleLength, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
    }

    #[test]
    fn ab_square_rule_verifies() {
        let patch = crate::tilings::ammann::rhomb_square_patch(2).unwrap();
        let labelled = apply_rule(RuleId::AbRhombSquareCorner, &patch).unwrap();
        let report = labelled.verify().unwrap();
        assert!(report.is_clean(), "{:?}", report.conflicts.first());
    }

    #[test]
    fn missing_metadata_is_reported() {
        let mut patch = grids::square_patch(2).unwrap();
        patch.supertiles.clear();
        assert!(matches!(
            apply_rule(RuleId::Square2x2, &patch),
            Err(Error::MissingMetadata(..))
        ));
        let plain = Patch::new(
            "square",
            vec![crate::patch::PlacedTile::new(
                "square",
                vec![
                    crate::geometry::pt(0.0, 0.0),
                    crate::geometry::pt(1.0, 0.0),
                    crate::geometry::pt(1.0, 1.0),
                    crate::geometry::pt(0.0, 1.0),
                ],
            )],
        );
        assert!(matches!(
            apply_rule(RuleId::PenroseArrows, &plain),
            Err(Error::MissingMetadata(..))
        ));
    }

    #[test]
    fn vp1_closed_vertices_have_distinct_neighbour_degrees() {
        let patch = chair::patch(3, chair::VertexPlacement::Vp1).unwrap();
        let g = PatchGraph::build(&patch.tiles).unwrap();
        let closed = g.closed_vertices();
        let adj = g.adjacency();
        for (v, st) in closed.iter().enumerate() {
            if *st != VertexStatus::Closed {
                continue;
            }
            for &w in &adj[v] {
                if closed[w as usize] == VertexStatus::Closed {
                    assert_ne!(adj[v].len(), adj[w as usize].len());
                }
            }
        }
    }
}
