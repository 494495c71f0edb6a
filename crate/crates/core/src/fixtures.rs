//! Figure-transcribed fixtures: supertile and prototile placement lists
//! shipped as versioned JSON, with resolved isometries and the figures'
//! circled vertex sums for cross-checking.
//!
//! The files live in `data/` and are embedded; set `TILING123_FIXTURES` to
//! load them from another directory instead.

use crate::error::{Error, Result};
use crate::geometry::{pt, Isometry, Point2};
use crate::patch::{Patch, PlacedTile, SupertileInstance, WeightMark};
use crate::tilings::template;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecePlacement {
    pub kind: String,
    pub cos: f64,
    pub sin: f64,
    pub reflect: bool,
    pub tx: f64,
    pub ty: f64,
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

impl PiecePlacement {
    pub fn iso(&self) -> Isometry {
        Isometry::new(
            self.cos,
            self.sin,
            self.reflect,
            self.tx,
            self.ty,
            self.scale,
        )
    }
}

/// A transcribed figure: named placements plus the circled sums.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub version: u32,
    pub name: String,
    pub tiling: String,
    pub rule: String,
    pub pieces: Vec<PiecePlacement>,
    #[serde(default)]
    pub marks: Vec<[f64; 5]>,
    #[serde(default)]
    pub expected_sums: Vec<(f64, f64, i64)>,
}

pub const FIXTURE_NAMES: [&str; 7] = [
    "nonpinwheel-figure",
    "pinwheel-figure",
    "halfhex-figure",
    "ab-rhomb-triangle-figure",
    "ab-rhomb-square-figure",
    "penrose-figure",
    "domino-variant-figure",
];

fn embedded(name: &str) -> Option<&'static str> {
    match name {
        "nonpinwheel-figure" => Some(include_str!("../data/nonpinwheel-figure.json")),
        "pinwheel-figure" => Some(include_str!("../data/pinwheel-figure.json")),
        "halfhex-figure" => Some(include_str!("../data/halfhex-figure.json")),
        "ab-rhomb-triangle-figure" => Some(include_str!("../data/ab-rhomb-triangle-figure.json")),
        "ab-rhomb-square-figure" => Some(include_str!("../data/ab-rhomb-square-figure.json")),
        "penrose-figure" => Some(include_str!("../data/penrose-figure.json")),
        "domino-variant-figure" => Some(include_str!("../data/domino-variant-figure.json")),
        _ => None,
    }
}

/// Load a fixture from the shipped catalogue (or `TILING123_FIXTURES`).
/// Accepts plain names and `fixtures/<name>` paths.
pub fn load_fixture(name: &str) -> Result<Fixture> {
    let name = name.strip_prefix("fixtures/").unwrap_or(name);
    let name = name.strip_suffix(".json").unwrap_or(name);
    if let Ok(dir) = std::env::var("TILING123_FIXTURES") {
        let path = std::path::Path::new(&dir).join(format!("{name}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            return Ok(serde_json::from_str(&text)?);
        }
    }
    let text = embedded(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    Ok(serde_json::from_str(text)?)
}

/// Prototile polygons in the frames the transcriptions use.
fn fixture_prototile(kind: &str) -> Option<PlacedTile> {
    match kind {
        "p-fat" => Some(crate::tilings::penrose::fat_rhomb().placed()),
        "p-thin" => Some(crate::tilings::penrose::thin_rhomb().placed()),
        "abs-square" => Some(PlacedTile::new(
            "abs-square",
            vec![pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0), pt(1.0, 0.0)],
        )),
        "ab-rhomb" => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            Some(PlacedTile::new(
                "ab-rhomb",
                vec![pt(0.0, 0.0), pt(s, s), pt(1.0 + s, s), pt(1.0, 0.0)],
            ))
        }
        _ => None,
    }
}

impl Fixture {
    /// Realize the placements into a patch, carrying supertile structure and
    /// weight marks.
    pub fn to_patch(&self) -> Result<Patch> {
        let mut tiles: Vec<PlacedTile> = Vec::new();
        let mut supertiles = Vec::new();
        for piece in &self.pieces {
            let iso = piece.iso();
            if let Some(tpl) = template(&piece.kind) {
                let first = tiles.len();
                tiles.extend(tpl.instantiate(&iso));
                supertiles.push(SupertileInstance {
                    kind: piece.kind.clone(),
                    iso,
                    tiles: (first..tiles.len()).collect(),
                });
            } else if let Some(base) = fixture_prototile(&piece.kind) {
                let mut tile = base.clone();
                for p in tile.corners.iter_mut() {
                    *p = iso.apply(*p);
                }
                tiles.push(tile);
            } else {
                return Err(Error::UnknownCatalogue(piece.kind.clone()));
            }
        }
        let mut patch = Patch::new(&self.tiling, tiles);
        patch.supertiles = supertiles;
        patch.marks = self
            .marks
            .iter()
            .map(|&[ax, ay, bx, by, w]| WeightMark {
                a: pt(ax, ay),
                b: pt(bx, by),
                weight: w as u8,
            })
            .collect();
        Ok(patch)
    }

    pub fn rule(&self) -> Result<crate::rules::RuleId> {
        crate::rules::RuleId::parse(&self.rule)
            .ok_or_else(|| Error::Invalid(format!("fixture names unknown rule {}", self.rule)))
    }

    /// Check the figure's circled sums against the labelled patch: every mark
    /// whose vertex is Closed must match exactly. Returns how many were
    /// checked and a list of mismatches.
    pub fn check_expected_sums(
        &self,
        labelled: &crate::rules::Labelled,
    ) -> (usize, Vec<(Point2, i64, i64)>) {
        let g = &labelled.graph;
        let closed = g.closed_vertices();
        let mut sums = vec![0i64; g.vertices.len()];
        for (&(a, b), &w) in g.edges.iter().zip(&labelled.labelling.weights) {
            sums[a as usize] += w as i64;
            sums[b as usize] += w as i64;
        }
        let mut checked = 0;
        let mut bad = Vec::new();
        for &(x, y, want) in &self.expected_sums {
            let p = pt(x, y);
            let hit = g
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, q)| q.dist(p) < 0.05)
                .min_by(|a, b| a.1.dist(p).partial_cmp(&b.1.dist(p)).unwrap());
            if let Some((v, _)) = hit {
                if closed[v] == crate::patch::VertexStatus::Closed {
                    checked += 1;
                    if sums[v] != want {
                        bad.push((g.vertices[v], want, sums[v]));
                    }
                }
            }
        }
        (checked, bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_loads() {
        for name in FIXTURE_NAMES {
            let fx = load_fixture(name).unwrap();
            assert_eq!(fx.version, 1);
            assert!(!fx.pieces.is_empty(), "{name} has no pieces");
        }
    }

    #[test]
    fn unknown_fixture_is_an_error() {
        assert!(matches!(
            load_fixture("no-such"),
            Err(Error::UnknownFixture(_))
        ));
    }

    #[test]
    fn stated_piece_counts() {
        assert_eq!(load_fixture("nonpinwheel-figure").unwrap().pieces.len(), 44);
        assert_eq!(
            load_fixture("ab-rhomb-square-figure").unwrap().pieces.len(),
            220
        );
        assert_eq!(load_fixture("penrose-figure").unwrap().pieces.len(), 125);
        assert_eq!(
            load_fixture("domino-variant-figure").unwrap().pieces.len(),
            56
        );
    }

    #[test]
    fn fixture_path_prefix_accepted() {
        assert!(load_fixture("fixtures/domino-variant-figure").is_ok());
    }
}
