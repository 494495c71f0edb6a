//! Patch JSON serialization: vertices, edges, tiles with corner indices,
//! optional weights. Coordinates are written with 12 significant digits.

use crate::error::{Error, Result};
use crate::geometry::{Isometry, Point2};
use crate::patch::{EdgeMark, MarkKind, Patch, PatchGraph, PlacedTile};
use crate::rules::Labelled;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Serialize, Deserialize)]
pub struct PatchDoc {
    pub unit: f64,
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<[u32; 2]>,
    pub tiles: Vec<TileDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(u32, u32, u8)>>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub tiling: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub supertiles: Vec<SupertileDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marks: Vec<[f64; 5]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TileDoc {
    pub corners: Vec<u32>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SupertileDoc {
    pub kind: String,
    pub iso: [f64; 6],
    pub tiles: Vec<usize>,
}

fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mag = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - mag);
    (x * factor).round() / factor
}

fn encode_decorations(deco: &[Option<EdgeMark>]) -> String {
    deco.iter()
        .map(|d| match d {
            None => ".".to_string(),
            Some(m) => {
                let k = match m.kind {
                    MarkKind::Single => 's',
                    MarkKind::Double => 'd',
                    MarkKind::Arrow => 'a',
                };
                format!("{k}{}", if m.forward { '>' } else { '<' })
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn decode_decorations(text: &str, sides: usize) -> Result<Vec<Option<EdgeMark>>> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != sides {
        return Err(Error::Invalid(format!(
            "decoration string {text} does not match {sides} sides"
        )));
    }
    parts
        .iter()
        .map(|p| match *p {
            "." => Ok(None),
            other => {
                let mut chars = other.chars();
                let kind = match chars.next() {
                    Some('s') => MarkKind::Single,
                    Some('d') => MarkKind::Double,
                    Some('a') => MarkKind::Arrow,
                    _ => return Err(Error::Invalid(format!("bad decoration {other}"))),
                };
                let forward = match chars.next() {
                    Some('>') => true,
                    Some('<') => false,
                    _ => return Err(Error::Invalid(format!("bad decoration {other}"))),
                };
                Ok(Some(EdgeMark { kind, forward }))
            }
        })
        .collect()
}

/// Serialize a patch with its built graph and optional labelling.
pub fn save_patch(patch: &Patch, labelled: Option<&Labelled>) -> Result<String> {
    let graph = match labelled {
        Some(l) => l.graph.clone(),
        None => PatchGraph::build(&patch.tiles)?,
    };
    let weights = labelled.and_then(|l| {
        if l.contracted.is_some() {
            // contracted labellings do not map 1:1 onto graph edges
            None
        } else {
            Some(
                graph
                    .edges
                    .iter()
                    .zip(&l.labelling.weights)
                    .map(|(&(a, b), &w)| (a, b, w))
                    .collect(),
            )
        }
    });
    let tiles = graph
        .tiles
        .iter()
        .map(|t| {
            let mut meta = t.meta.clone();
            if t.decorations.iter().any(|d| d.is_some()) {
                meta.insert("deco".into(), encode_decorations(&t.decorations));
            }
            TileDoc {
                corners: t.corner_ids.clone(),
                kind: t.kind.clone(),
                meta,
            }
        })
        .collect();
    let doc = PatchDoc {
        unit: 1.0,
        vertices: graph
            .vertices
            .iter()
            .map(|p| [sig12(p.x), sig12(p.y)])
            .collect(),
        edges: graph.edges.iter().map(|&(a, b)| [a, b]).collect(),
        tiles,
        weights,
        tiling: patch.tiling.clone(),
        supertiles: patch
            .supertiles
            .iter()
            .map(|s| SupertileDoc {
                kind: s.kind.clone(),
                iso: [
                    s.iso.cos,
                    s.iso.sin,
                    s.iso.reflect as u8 as f64,
                    s.iso.tx,
                    s.iso.ty,
                    s.iso.scale,
                ],
                tiles: s.tiles.clone(),
            })
            .collect(),
        marks: patch
            .marks
            .iter()
            .map(|m| [m.a.x, m.a.y, m.b.x, m.b.y, m.weight as f64])
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Reconstruct a patch (and any stored weights) from its JSON form.
pub fn load_patch(text: &str) -> Result<(Patch, Option<Vec<(u32, u32, u8)>>)> {
    let doc: PatchDoc = serde_json::from_str(text)?;
    let position = |i: u32| -> Result<Point2> {
        doc.vertices
            .get(i as usize)
            .map(|&[x, y]| Point2::new(x, y))
            .ok_or_else(|| Error::Invalid(format!("vertex index {i} out of range")))
    };
    let mut tiles = Vec::new();
    for t in &doc.tiles {
        let corners: Result<Vec<Point2>> = t.corners.iter().map(|&i| position(i)).collect();
        let mut tile = PlacedTile::new(&t.kind, corners?);
        if let Some(deco) = t.meta.get("deco") {
            tile.decorations = decode_decorations(deco, tile.corners.len())?;
        }
        tile.meta = t.meta.clone();
        tile.meta.remove("deco");
        tiles.push(tile);
    }
    let mut patch = Patch::new(&doc.tiling, tiles);
    patch.supertiles = doc
        .supertiles
        .iter()
        .map(|s| crate::patch::SupertileInstance {
            kind: s.kind.clone(),
            iso: Isometry::new(
                s.iso[0],
                s.iso[1],
                s.iso[2] != 0.0,
                s.iso[3],
                s.iso[4],
                s.iso[5],
            ),
            tiles: s.tiles.clone(),
        })
        .collect();
    patch.marks = doc
        .marks
        .iter()
        .map(|&[ax, ay, bx, by, w]| crate::patch::WeightMark {
            a: Point2::new(ax, ay),
            b: Point2::new(bx, by),
            weight: w as u8,
        })
        .collect();
    Ok((patch, doc.weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{apply_rule, RuleId};
    use crate::tilings::chair;

    #[test]
    fn round_trip_preserves_graph_shape() {
        let patch = chair::patch(2, chair::VertexPlacement::Vp2).unwrap();
        let labelled = apply_rule(RuleId::ChairVp2LongShort, &patch).unwrap();
        let text = save_patch(&patch, Some(&labelled)).unwrap();
        let (patch2, weights) = load_patch(&text).unwrap();
        let g1 = &labelled.graph;
        let g2 = PatchGraph::build(&patch2.tiles).unwrap();
        assert_eq!(g1.vertices.len(), g2.vertices.len());
        assert_eq!(g1.edges.len(), g2.edges.len());
        assert_eq!(g1.tiles.len(), g2.tiles.len());
        for (a, b) in g1.vertices.iter().zip(&g2.vertices) {
            assert!(a.dist(*b) < crate::geometry::SNAP_TOL);
        }
        assert_eq!(weights.unwrap().len(), g1.edges.len());
    }

    #[test]
    fn decorations_survive_round_trip() {
        let patch = crate::tilings::penrose::patch(2).unwrap();
        let text = save_patch(&patch, None).unwrap();
        let (patch2, _) = load_patch(&text).unwrap();
        let labelled = apply_rule(RuleId::PenroseArrows, &patch2).unwrap();
        assert!(labelled.verify().unwrap().is_clean());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.2345678901234567), 1.23456789012);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(-123456.78901234567), -123456.789012);
    }
}
