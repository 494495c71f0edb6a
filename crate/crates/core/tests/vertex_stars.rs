//! Every closed vertex of a generated patch must realize one of the
//! catalogued vertex configurations, decorations included. This pins the
//! substitution rules and the configuration catalogues to each other.

use tiling123::configs::{ammann_vertex_configs, penrose_vertex_configs, LocalConfig};
use tiling123::geometry::{isometry_from_segment, Point2};
use tiling123::patch::{PatchGraph, PlacedTile, VertexStatus};

fn quant(p: Point2) -> (i64, i64) {
    ((p.x * 1e5).round() as i64, (p.y * 1e5).round() as i64)
}

/// Decorated congruence key of a tile under a point map.
fn tile_key(tile: &PlacedTile, f: &dyn Fn(Point2) -> Point2) -> Vec<(i64, i64, i64, i64, u8)> {
    let n = tile.corners.len();
    let mut sides = Vec::new();
    for i in 0..n {
        let a = f(tile.corners[i]);
        let b = f(tile.corners[(i + 1) % n]);
        let mark = tile.decorations.get(i).copied().flatten();
        let entry = match mark {
            Some(m) => {
                let (x, y) = if m.forward { (a, b) } else { (b, a) };
                let kind = match m.kind {
                    tiling123::patch::MarkKind::Single => 1,
                    tiling123::patch::MarkKind::Double => 2,
                    tiling123::patch::MarkKind::Arrow => 3,
                };
                (quant(x), quant(y), kind)
            }
            None => {
                let (qa, qb) = (quant(a), quant(b));
                if qa <= qb {
                    (qa, qb, 0)
                } else {
                    (qb, qa, 0)
                }
            }
        };
        sides.push((entry.0 .0, entry.0 .1, entry.1 .0, entry.1 .1, entry.2));
    }
    sides.sort_unstable();
    sides
}

fn tiles_at<'a>(tiles: &'a [PlacedTile], p: Point2) -> Vec<&'a PlacedTile> {
    tiles
        .iter()
        .filter(|t| t.corners.iter().any(|q| q.dist(p) < 1e-6))
        .collect()
}

/// Does the star of `v` in `tiles` match the configuration's centre star
/// under some isometry?
fn star_matches(tiles: &[PlacedTile], v: Point2, cfg: &LocalConfig) -> bool {
    let centre = cfg.centre.unwrap();
    let star = tiles_at(tiles, v);
    let cstar = tiles_at(&cfg.tiles, centre);
    if star.len() != cstar.len() {
        return false;
    }
    let probe = star[0];
    let pv = *probe.corners.iter().find(|q| q.dist(v) < 1e-6).unwrap();
    // a second anchor point on the probe tile pins the isometry
    let pw = *probe.corners.iter().find(|q| q.dist(v) > 1e-6).unwrap();
    let ckeys: Vec<_> = cstar.iter().map(|t| tile_key(t, &|p| p)).collect();
    for target in &cstar {
        for tw in target.corners.iter().filter(|q| q.dist(centre) > 1e-6) {
            for reflect in [false, true] {
                let iso = isometry_from_segment(pv, pw, centre, *tw, reflect);
                if (iso.scale - 1.0).abs() > 1e-6 {
                    continue;
                }
                if iso.apply(pv).dist(centre) > 1e-6 {
                    continue;
                }
                let ok = star.iter().all(|t| {
                    let key = tile_key(t, &|p| iso.apply(p));
                    ckeys.contains(&key)
                });
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn penrose_closed_stars_realize_the_eight_configurations() {
    let configs = penrose_vertex_configs().unwrap();
    let patch = tiling123::tilings::penrose::patch(5).unwrap();
    let g = PatchGraph::build(&patch.tiles).unwrap();
    let closed = g.closed_vertices();
    let mut seen = vec![0usize; configs.len()];
    let mut checked = 0;
    for (vid, status) in closed.iter().enumerate() {
        if *status != VertexStatus::Closed {
            continue;
        }
        let v = g.vertices[vid];
        let hit = configs
            .iter()
            .position(|cfg| star_matches(&patch.tiles, v, cfg));
        match hit {
            Some(i) => {
                seen[i] += 1;
                checked += 1;
            }
            None => panic!(
                "closed vertex at ({:.3}, {:.3}) matches no configuration",
                v.x, v.y
            ),
        }
    }
    println!("checked {checked} closed vertices; configuration counts {seen:?}");
    assert!(checked > 100);
    // the frequent configurations all occur in a level-5 patch
    assert!(seen.iter().filter(|&&c| c > 0).count() >= 6);
}

#[test]
fn ammann_closed_stars_realize_the_seven_configurations() {
    let configs = ammann_vertex_configs().unwrap();
    let patch = tiling123::tilings::ammann::rhomb_square_patch(3).unwrap();
    let g = PatchGraph::build(&patch.tiles).unwrap();
    let closed = g.closed_vertices();
    let mut seen = vec![0usize; configs.len()];
    let mut checked = 0;
    for (vid, status) in closed.iter().enumerate() {
        if *status != VertexStatus::Closed {
            continue;
        }
        let v = g.vertices[vid];
        let hit = configs
            .iter()
            .position(|cfg| star_matches(&patch.tiles, v, cfg));
        match hit {
            Some(i) => {
                seen[i] += 1;
                checked += 1;
            }
            None => panic!(
                "closed vertex at ({:.3}, {:.3}) matches no configuration",
                v.x, v.y
            ),
        }
    }
    println!("checked {checked} closed vertices; configuration counts {seen:?}");
    assert!(checked > 50);
}
