//! Hardcoded catalogues of the local configurations the proofs enumerate:
//! the seven chair collars and the Penrose / Ammann-Beenker vertex
//! configurations, each validated geometrically on load.

use crate::error::{Error, Result};
use crate::geometry::{pt, Isometry, Point2};
use crate::patch::{PatchGraph, PlacedTile, VertexStatus};
use crate::tilings::chair::{self, VertexPlacement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigMode {
    Collars,
    VertexConfigs,
}

/// A local configuration: placed tiles plus its distinguished element
/// (central tile for collars, central vertex for vertex configurations).
#[derive(Debug, Clone)]
pub struct LocalConfig {
    pub name: String,
    pub tiles: Vec<PlacedTile>,
    /// Index of the central tile, for collars.
    pub centre_tile: Option<usize>,
    /// The central vertex, for vertex configurations.
    pub centre: Option<Point2>,
}

/// The catalogue of a tiling, as the figures list it.
pub fn enumerate_local_configs(tiling: &str, mode: ConfigMode) -> Result<Vec<LocalConfig>> {
    let configs = match (tiling, mode) {
        ("chair", ConfigMode::Collars) => chair_collars(VertexPlacement::Vp1),
        ("square", ConfigMode::Collars) => square_collar(),
        ("penrose", ConfigMode::VertexConfigs) => penrose_vertex_configs()?,
        ("ab-rhomb-square", ConfigMode::VertexConfigs) => ammann_vertex_configs()?,
        _ => return Err(Error::UnknownCatalogue(format!("{tiling}/{mode:?}"))),
    };
    for cfg in &configs {
        validate(cfg)?;
    }
    Ok(configs)
}

fn validate(cfg: &LocalConfig) -> Result<()> {
    let g = PatchGraph::build(&cfg.tiles)?;
    if let Some(centre) = cfg.centre {
        let vid = g
            .vertices
            .iter()
            .position(|p| p.dist(centre) < 1e-6)
            .ok_or_else(|| Error::Invalid(format!("{}: centre is not a vertex", cfg.name)))?;
        let total: f64 = g.incident[vid].iter().map(|(_, a)| a).sum();
        if (total - 360.0).abs() > 1e-6 {
            return Err(Error::Invalid(format!(
                "{}: angles at centre sum to {total}",
                cfg.name
            )));
        }
    }
    Ok(())
}

/// The seven collars: a chair and its surrounding tiles, transcribed from
/// the collar figures (quarter-turns and offsets in short-edge units).
pub fn chair_collars(vp: VertexPlacement) -> Vec<LocalConfig> {
    type P = (i32, (f64, f64));
    // (neighbours, centre) per collar
    let data: [(&[P], P); 7] = [
        (
            &[
                (2, (0.0, 0.0)),
                (3, (2.0, 0.0)),
                (1, (0.0, 2.0)),
                (3, (2.0, 4.0)),
                (3, (3.0, 3.0)),
                (3, (4.0, 2.0)),
                (2, (4.0, 4.0)),
            ],
            (0, (2.0, 2.0)),
        ),
        (
            &[
                (2, (0.0, 0.0)),
                (3, (2.0, 0.0)),
                (1, (0.0, 2.0)),
                (1, (2.0, 4.0)),
                (1, (3.0, 3.0)),
                (1, (4.0, 2.0)),
                (2, (4.0, 4.0)),
            ],
            (0, (2.0, 2.0)),
        ),
        (
            &[
                (2, (0.0, 0.0)),
                (3, (2.0, 0.0)),
                (1, (0.0, 2.0)),
                (3, (2.0, 4.0)),
                (0, (3.0, 3.0)),
                (1, (4.0, 2.0)),
            ],
            (0, (2.0, 2.0)),
        ),
        (
            &[
                (0, (0.0, 0.0)),
                (0, (2.0, 2.0)),
                (3, (0.0, 2.0)),
                (1, (2.0, 0.0)),
            ],
            (0, (1.0, 1.0)),
        ),
        (
            &[
                (0, (0.0, 0.0)),
                (1, (1.0, -1.0)),
                (3, (-1.0, 1.0)),
                (3, (1.0, 3.0)),
                (0, (2.0, 2.0)),
                (1, (3.0, 1.0)),
            ],
            (0, (1.0, 1.0)),
        ),
        (
            &[
                (0, (0.0, 0.0)),
                (1, (1.0, -1.0)),
                (3, (-1.0, 1.0)),
                (1, (1.0, 3.0)),
                (1, (2.0, 2.0)),
                (1, (3.0, 1.0)),
                (2, (3.0, 3.0)),
            ],
            (0, (1.0, 1.0)),
        ),
        (
            &[
                (0, (0.0, 0.0)),
                (1, (1.0, -1.0)),
                (3, (-1.0, 1.0)),
                (3, (1.0, 3.0)),
                (3, (2.0, 2.0)),
                (3, (3.0, 1.0)),
                (2, (3.0, 3.0)),
            ],
            (0, (1.0, 1.0)),
        ),
    ];
    data.iter()
        .enumerate()
        .map(|(i, (nbrs, centre))| {
            let mut tiles: Vec<PlacedTile> = nbrs
                .iter()
                .map(|&(t, (x, y))| chair::place(t, pt(x, y), vp))
                .collect();
            let centre_tile = tiles.len();
            tiles.push(chair::place(centre.0, pt(centre.1 .0, centre.1 .1), vp));
            LocalConfig {
                name: format!("collar-{}", i + 1),
                tiles,
                centre_tile: Some(centre_tile),
                centre: None,
            }
        })
        .collect()
}

/// Negative control: a square surrounded by its eight neighbours. Every
/// vertex has degree 4, so degree separation must fail.
fn square_collar() -> Vec<LocalConfig> {
    let mut tiles = Vec::new();
    let mut centre_tile = 0;
    for dx in -1..=1 {
        for dy in -1..=1 {
            if (dx, dy) == (0, 0) {
                centre_tile = tiles.len();
            }
            let (x, y) = (dx as f64, dy as f64);
            tiles.push(PlacedTile::new(
                "square",
                vec![
                    pt(x, y),
                    pt(x + 1.0, y),
                    pt(x + 1.0, y + 1.0),
                    pt(x, y + 1.0),
                ],
            ));
        }
    }
    vec![LocalConfig {
        name: "square-collar".into(),
        tiles,
        centre_tile: Some(centre_tile),
        centre: None,
    }]
}

/// Transcribed placement: a canonical tile positioned the way the vertex
/// configuration figures chain them (scale sign, rotation, anchor corner).
pub struct Pic {
    pub kind: &'static str,
    pub rotate_deg: f64,
    pub xscale: f64,
    pub yscale: f64,
    /// (previous pic index, corner index) or none for the origin.
    pub at: Option<(usize, usize)>,
}

impl Pic {
    fn transform(&self, origin: Point2) -> impl Fn(Point2) -> Point2 + '_ {
        let (s, c) = self.rotate_deg.to_radians().sin_cos();
        let (sx, sy) = (self.xscale, self.yscale);
        move |p: Point2| {
            let q = pt(c * p.x - s * p.y, s * p.x + c * p.y);
            pt(sx * q.x + origin.x, sy * q.y + origin.y)
        }
    }
}

/// Resolve a chained pic list into placed tiles, the way the figures are
/// drawn: scale flips apply after rotation, anchors name prior corners.
pub fn resolve_pics(pics: &[Pic], canonical: impl Fn(&str) -> PlacedTile) -> Vec<PlacedTile> {
    let mut tiles: Vec<PlacedTile> = Vec::new();
    for pic in pics {
        let origin = match pic.at {
            None => pt(0.0, 0.0),
            Some((idx, corner)) => tiles[idx].corners[corner],
        };
        let base = canonical(pic.kind);
        let f = pic.transform(origin);
        let corners = base.corners.iter().map(|&p| f(p)).collect();
        let mut tile = PlacedTile::new(&base.kind, corners);
        tile.decorations = base.decorations.clone();
        tiles.push(tile);
    }
    tiles
}

fn penrose_canonical(kind: &str) -> PlacedTile {
    use crate::patch::{EdgeMark, MarkKind};
    let single = |f| {
        Some(EdgeMark {
            kind: MarkKind::Single,
            forward: f,
        })
    };
    let double = |f| {
        Some(EdgeMark {
            kind: MarkKind::Double,
            forward: f,
        })
    };
    match kind {
        "1a" => crate::tilings::penrose::fat_rhomb().placed(),
        "1b" => {
            let mut t = crate::tilings::penrose::fat_rhomb().placed();
            t.decorations = vec![double(false), single(false), single(true), double(true)];
            t
        }
        "2a" => crate::tilings::penrose::thin_rhomb().placed(),
        "2b" => {
            let mut t = crate::tilings::penrose::thin_rhomb().placed();
            t.decorations = vec![double(true), double(false), single(true), single(false)];
            t
        }
        other => panic!("unknown penrose pic {other}"),
    }
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

fn pic(kind: &'static str, rotate_deg: f64, at: Option<(usize, usize)>) -> Pic {
    Pic {
        kind,
        rotate_deg,
        xscale: 1.0,
        yscale: 1.0,
        at,
    }
}

fn pic_x(kind: &'static str, rotate_deg: f64, at: Option<(usize, usize)>) -> Pic {
    Pic {
        kind,
        rotate_deg,
        xscale: -1.0,
        yscale: 1.0,
        at,
    }
}

fn pic_y(kind: &'static str, rotate_deg: f64, at: Option<(usize, usize)>) -> Pic {
    Pic {
        kind,
        rotate_deg,
        xscale: 1.0,
        yscale: -1.0,
        at,
    }
}

/// The eight ways Penrose rhombs meet at a vertex, with the centre each
/// figure circles.
pub fn penrose_vertex_configs() -> Result<Vec<LocalConfig>> {
    let mk = |name: &str, pics: Vec<Pic>, centre_ref: (usize, usize)| -> LocalConfig {
        let tiles = resolve_pics(&pics, penrose_canonical);
        let centre = tiles[centre_ref.0].corners[centre_ref.1];
        LocalConfig {
            name: name.into(),
            tiles,
            centre_tile: None,
            centre: Some(centre),
        }
    };
    Ok(vec![
        mk(
            "penrose-vc1",
            vec![
                pic("1a", 0.0, None),
                pic("2a", 90.0, Some((0, B))),
                pic_x("2a", 90.0, Some((0, D))),
            ],
            (0, C),
        ),
        mk(
            "penrose-vc2",
            vec![
                pic("1b", 0.0, None),
                pic("1b", 72.0, Some((0, A))),
                pic("1b", -72.0, Some((0, A))),
                pic_y("2a", 18.0, Some((1, B))),
            ],
            (0, A),
        ),
        mk(
            "penrose-vc3",
            vec![
                pic("1b", 0.0, None),
                pic("1b", 72.0, Some((0, A))),
                pic("1b", -72.0, Some((0, A))),
                pic("1b", 144.0, Some((0, A))),
                pic("1b", -144.0, Some((0, A))),
            ],
            (0, A),
        ),
        mk(
            "penrose-vc4",
            vec![
                pic_y("2a", 18.0, None),
                pic_y("1a", -36.0, Some((0, A))),
                pic_y("1a", 36.0, Some((0, C))),
            ],
            (0, B),
        ),
        mk(
            "penrose-vc5",
            vec![
                pic("1a", 0.0, None),
                pic("1a", 72.0, Some((0, A))),
                pic("1a", -72.0, Some((0, A))),
                pic("1a", 144.0, Some((0, A))),
                pic("1a", -144.0, Some((0, A))),
            ],
            (0, A),
        ),
        mk(
            "penrose-vc6",
            vec![
                pic("1a", 72.0, None),
                pic("1a", 144.0, Some((0, A))),
                pic("1a", -144.0, Some((0, A))),
                pic("1a", -72.0, Some((0, A))),
                pic("2a", 126.0, Some((0, A))),
                pic_x("2a", 126.0, Some((0, A))),
            ],
            (0, A),
        ),
        mk(
            "penrose-vc7",
            vec![
                pic("1a", 0.0, None),
                pic("1a", 144.0, Some((0, A))),
                pic("1a", -144.0, Some((0, A))),
                pic("2b", 162.0, Some((0, A))),
                pic("2a", 198.0, Some((0, A))),
                pic("2a", 54.0, Some((0, A))),
                pic("2b", 18.0, Some((0, A))),
            ],
            (0, A),
        ),
        mk(
            "penrose-vc8",
            vec![
                pic("1a", 0.0, None),
                pic("2b", 162.0, Some((0, A))),
                pic("2a", 54.0, Some((0, A))),
                pic("1b", -144.0, Some((1, B))),
                pic("1b", 144.0, Some((2, D))),
            ],
            (0, A),
        ),
    ])
}

fn ammann_canonical(kind: &str) -> PlacedTile {
    match kind {
        "square" => PlacedTile::new(
            "abs-square",
            vec![pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0), pt(1.0, 0.0)],
        ),
        "rhomb" => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            PlacedTile::new(
                "ab-rhomb",
                vec![pt(0.0, 0.0), pt(s, s), pt(1.0 + s, s), pt(1.0, 0.0)],
            )
        }
        other => panic!("unknown ammann pic {other}"),
    }
}

/// The seven Ammann-Beenker vertex configurations (1, 2, 3a, 3b, 4, 5, 6).
pub fn ammann_vertex_configs() -> Result<Vec<LocalConfig>> {
    let mk = |name: &str, pics: Vec<Pic>, centre_ref: (usize, usize)| -> LocalConfig {
        let tiles = resolve_pics(&pics, ammann_canonical);
        let centre = tiles[centre_ref.0].corners[centre_ref.1];
        LocalConfig {
            name: name.into(),
            tiles,
            centre_tile: None,
            centre: Some(centre),
        }
    };
    Ok(vec![
        mk(
            "ab-vc1",
            vec![
                pic("square", -135.0, None),
                pic("rhomb", -90.0, Some((0, D))),
                pic_x("rhomb", -90.0, Some((0, B))),
            ],
            (0, C),
        ),
        mk(
            "ab-vc2",
            vec![
                pic("rhomb", -22.5, None),
                pic("rhomb", 67.5, Some((0, B))),
                pic("square", 22.5, Some((0, A))),
                pic("square", 67.5, Some((0, C))),
            ],
            (0, B),
        ),
        mk(
            "ab-vc3a",
            vec![
                pic("square", 90.0, None),
                pic("square", 0.0, Some((0, A))),
                pic("square", 45.0, Some((0, D))),
                pic("rhomb", 0.0, Some((0, D))),
                pic_x("rhomb", 0.0, Some((0, D))),
            ],
            (0, D),
        ),
        mk(
            "ab-vc3b",
            vec![
                pic("square", 180.0, None),
                pic("square", -90.0, Some((0, A))),
                pic("square", 45.0, Some((0, A))),
                pic("rhomb", 0.0, Some((0, A))),
                pic_x("rhomb", 0.0, Some((0, A))),
            ],
            (0, A),
        ),
        mk(
            "ab-vc4",
            vec![
                pic("rhomb", 67.5, None),
                pic("square", 112.5, Some((0, A))),
                pic("square", -22.5, Some((0, A))),
                pic("rhomb", -67.5, Some((0, A))),
                pic("rhomb", -112.5, Some((0, A))),
                pic("rhomb", -157.5, Some((0, A))),
            ],
            (0, A),
        ),
        mk(
            "ab-vc5",
            vec![
                pic("rhomb", 90.0, None),
                pic("rhomb", 45.0, Some((0, A))),
                pic("rhomb", 0.0, Some((0, A))),
                pic("rhomb", 135.0, Some((0, A))),
                pic("rhomb", -45.0, Some((0, A))),
                pic_x("rhomb", -45.0, Some((0, A))),
                pic("square", -135.0, Some((0, A))),
            ],
            (0, A),
        ),
        mk(
            "ab-vc6",
            vec![
                pic("rhomb", 90.0, None),
                pic("rhomb", 45.0, Some((0, A))),
                pic("rhomb", 0.0, Some((0, A))),
                pic("rhomb", 135.0, Some((0, A))),
                pic("rhomb", -45.0, Some((0, A))),
                pic_x("rhomb", -45.0, Some((0, A))),
                pic("rhomb", -90.0, Some((0, A))),
                pic_x("rhomb", -90.0, Some((0, A))),
            ],
            (0, A),
        ),
    ])
}

/// Degree of the central vertex of a configuration.
pub fn centre_degree(cfg: &LocalConfig) -> Result<usize> {
    let g = PatchGraph::build(&cfg.tiles)?;
    let centre = cfg
        .centre
        .ok_or_else(|| Error::Invalid("no centre".into()))?;
    let vid = g
        .vertices
        .iter()
        .position(|p| p.dist(centre) < 1e-6)
        .ok_or_else(|| Error::Invalid("centre not a vertex".into()))? as u32;
    Ok(g.adjacency()[vid as usize].len())
}

/// Weighted degree of the centre, Penrose weights (double 1, single 3).
pub fn penrose_centre_sum(cfg: &LocalConfig) -> Result<i64> {
    let g = PatchGraph::build(&cfg.tiles)?;
    let centre = cfg
        .centre
        .ok_or_else(|| Error::Invalid("no centre".into()))?;
    let vid = g
        .vertices
        .iter()
        .position(|p| p.dist(centre) < 1e-6)
        .ok_or_else(|| Error::Invalid("centre not a vertex".into()))? as u32;
    crate::tilings::penrose::check_arrow_matching(&g)?;
    let mut sum = 0;
    for (eid, &(a, b)) in g.edges.iter().enumerate() {
        if a != vid && b != vid {
            continue;
        }
        let (ti, si) = g.claims[eid][0];
        let mark = g.tiles[ti as usize].decorations[si as usize]
            .ok_or_else(|| Error::Invalid("undecorated penrose edge".into()))?;
        sum += match mark.kind {
            crate::patch::MarkKind::Double => 1,
            _ => 3,
        };
    }
    Ok(sum)
}

/// Closed status of the configuration's centre.
pub fn centre_is_closed(cfg: &LocalConfig) -> Result<bool> {
    let g = PatchGraph::build(&cfg.tiles)?;
    let centre = cfg
        .centre
        .ok_or_else(|| Error::Invalid("no centre".into()))?;
    let vid = g
        .vertices
        .iter()
        .position(|p| p.dist(centre) < 1e-6)
        .ok_or_else(|| Error::Invalid("centre not a vertex".into()))?;
    Ok(g.closed_vertices()[vid] == VertexStatus::Closed)
}

/// Apply an isometry to a whole configuration.
pub fn transform_config(cfg: &LocalConfig, iso: &Isometry) -> LocalConfig {
    let tiles = cfg
        .tiles
        .iter()
        .map(|t| {
            let mut t2 = t.clone();
            for p in t2.corners.iter_mut() {
                *p = iso.apply(*p);
            }
            t2
        })
        .collect();
    LocalConfig {
        name: cfg.name.clone(),
        tiles,
        centre_tile: cfg.centre_tile,
        centre: cfg.centre.map(|c| iso.apply(c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chair_has_seven_collars() {
        let collars = enumerate_local_configs("chair", ConfigMode::Collars).unwrap();
        assert_eq!(collars.len(), 7);
    }

    #[test]
    fn penrose_has_eight_configs_with_closed_centres() {
        let configs = enumerate_local_configs("penrose", ConfigMode::VertexConfigs).unwrap();
        assert_eq!(configs.len(), 8);
        for cfg in &configs {
            assert!(
                centre_is_closed(cfg).unwrap(),
                "{} centre not closed",
                cfg.name
            );
        }
    }

    #[test]
    fn penrose_config_sums_match_the_figures() {
        let configs = penrose_vertex_configs().unwrap();
        let sums: Vec<i64> = configs
            .iter()
            .map(|c| penrose_centre_sum(c).unwrap())
            .collect();
        assert_eq!(sums, vec![3, 4, 5, 7, 15, 16, 17, 11]);
    }

    #[test]
    fn ammann_has_seven_configs() {
        let configs =
            enumerate_local_configs("ab-rhomb-square", ConfigMode::VertexConfigs).unwrap();
        assert_eq!(configs.len(), 7);
        let degrees: Vec<usize> = configs.iter().map(|c| centre_degree(c).unwrap()).collect();
        assert_eq!(degrees, vec![3, 4, 5, 5, 6, 7, 8]);
        for cfg in &configs {
            assert!(
                centre_is_closed(cfg).unwrap(),
                "{} centre not closed",
                cfg.name
            );
        }
    }

    #[test]
    fn unknown_catalogue_is_an_error() {
        assert!(matches!(
            enumerate_local_configs("pinwheel", ConfigMode::Collars),
            Err(Error::UnknownCatalogue(_))
        ));
    }
}
