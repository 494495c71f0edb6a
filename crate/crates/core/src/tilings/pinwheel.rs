//! Non-pinwheel and pinwheel right-triangle tilings. The non-pinwheel gets a
//! generative subdivision (all five children reflected, so orientations stay
//! bounded); both get their rectangle / kite supertile weight tables, which
//! large patches use through the figure fixtures.

use super::{CornerColour, Prototile, SubstitutionRule, SupertileTemplate};
use crate::geometry::{pt, Point2};
use crate::patch::PlacedTile;
use std::sync::OnceLock;

const S5: f64 = 0.4472135954999579; // 1 / sqrt5

/// Right triangle with legs 1 and 2: corners (right angle, short end, long end).
pub fn triangle() -> Prototile {
    Prototile {
        kind: "np-tri",
        polygon: vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 2.0)],
        decorations: vec![None; 3],
    }
}

fn v(x: f64, y: f64) -> Point2 {
    pt(x * S5, y * S5)
}

/// The five reflected children of the sqrt5-inflated triangle.
fn subdivide(parent: &PlacedTile) -> Vec<PlacedTile> {
    let r = parent.corners[0];
    let ex = parent.corners[1] - r;
    let ey = (parent.corners[2] - r) * 0.5;
    // canonical child corners inside the unit parent (right angle at origin,
    // short leg to (1,0), long leg to (0,2)), scaled down from the inflated
    // frame by sqrt5
    let f = |q: Point2| r + ex * q.x + ey * q.y;
    let c = |ra: Point2, s: Point2, l: Point2| PlacedTile::new("np-tri", vec![f(ra), f(s), f(l)]);
    let (p1, p3, p4, e, a, b, d) = (
        pt(0.4, 0.2),
        pt(0.8, 0.4),
        pt(0.4, 1.2),
        pt(0.0, 1.0),
        pt(0.0, 0.0),
        pt(0.0, 2.0),
        pt(1.0, 0.0),
    );
    vec![
        c(p1, a, e),
        c(p3, d, a),
        c(e, p4, p1),
        c(p4, e, b),
        c(p3, p1, p4),
    ]
}

pub static NON_PINWHEEL_RULE: SubstitutionRule = SubstitutionRule {
    tiling: "non-pinwheel",
    inflation: 2.23606797749979,
    subdivide,
};

pub fn template(kind: &str) -> Option<&'static SupertileTemplate> {
    match kind {
        "np-rect-blue" => Some(np_rect(true)),
        "np-rect-red" => Some(np_rect(false)),
        "pw-rect" => Some(pw_rect()),
        "pw-kite-blue" => Some(pw_kite(true)),
        "pw-kite-red" => Some(pw_kite(false)),
        _ => None,
    }
}

fn rect_outline() -> Vec<Point2> {
    vec![v(0.0, 0.0), v(0.0, 10.0), v(5.0, 10.0), v(5.0, 0.0)]
}

fn tri_tile(a: Point2, b: Point2, c: Point2) -> PlacedTile {
    PlacedTile::new("np-tri", vec![a, b, c])
}

/// Rectangle of 10 triangles for the non-pinwheel; two colour variants with
/// the figure-transcribed internal weights.
fn np_rect(blue: bool) -> &'static SupertileTemplate {
    static BLUE: OnceLock<SupertileTemplate> = OnceLock::new();
    static RED: OnceLock<SupertileTemplate> = OnceLock::new();
    let cell = if blue { &BLUE } else { &RED };
    cell.get_or_init(|| {
        let (a, b, c, d, e, f) = (
            v(0.0, 0.0),
            v(0.0, 10.0),
            v(5.0, 10.0),
            v(5.0, 0.0),
            v(0.0, 5.0),
            v(5.0, 5.0),
        );
        let (p1, p2, p3, p4, p5, p6) = (
            v(2.0, 1.0),
            v(3.0, 4.0),
            v(4.0, 2.0),
            v(2.0, 6.0),
            v(1.0, 8.0),
            v(3.0, 9.0),
        );
        let weights: [u8; 15] = if blue {
            [3, 1, 1, 2, 2, 1, 2, 3, 2, 1, 1, 1, 1, 1, 2]
        } else {
            [2, 2, 1, 1, 3, 2, 3, 2, 1, 2, 1, 1, 1, 1, 1]
        };
        let ends = [
            (b, p5),
            (p5, p4),
            (p4, p2),
            (p2, p3),
            (p3, d),
            (p5, p6),
            (p6, c),
            (a, p1),
            (p1, p3),
            (p1, e),
            (e, p4),
            (p4, p1),
            (p6, p2),
            (p2, f),
            (p6, f),
        ];
        let segments = ends
            .iter()
            .zip(weights)
            .map(|(&(x, y), w)| (x, y, w))
            .collect();
        let (my, other) = (CornerColour::Blue, CornerColour::Red);
        let (my, other) = if blue { (my, other) } else { (other, my) };
        SupertileTemplate {
            kind: if blue { "np-rect-blue" } else { "np-rect-red" },
            outline: rect_outline(),
            boundary_weight: Some(3),
            segments,
            corners: vec![
                (b, my),
                (f, my),
                (a, my),
                (e, other),
                (c, other),
                (d, other),
            ],
            tiles: vec![
                tri_tile(p1, a, e),
                tri_tile(p3, d, a),
                tri_tile(e, p4, p1),
                tri_tile(p4, e, b),
                tri_tile(p3, p1, p4),
                tri_tile(p6, c, f),
                tri_tile(p5, b, c),
                tri_tile(f, p2, p6),
                tri_tile(p2, f, d),
                tri_tile(p6, p2, p5),
            ],
        }
    })
}

/// Pinwheel rectangle supertile (one variant suffices; mirrored placements
/// reuse it through reflecting isometries).
fn pw_rect() -> &'static SupertileTemplate {
    static TPL: OnceLock<SupertileTemplate> = OnceLock::new();
    TPL.get_or_init(|| {
        let (a, b, c, d, e, f) = (
            v(0.0, 0.0),
            v(0.0, 10.0),
            v(5.0, 10.0),
            v(5.0, 0.0),
            v(0.0, 5.0),
            v(5.0, 5.0),
        );
        let (p, s, r, u, vv, w) = (
            v(2.0, 1.0),
            v(4.0, 2.0),
            v(2.0, 6.0),
            v(1.0, 8.0),
            v(3.0, 4.0),
            v(3.0, 9.0),
        );
        let segments = vec![
            (b, u, 2),
            (u, r, 1),
            (r, vv, 2),
            (vv, s, 3),
            (s, d, 1),
            (u, w, 1),
            (w, c, 1),
            (a, p, 2),
            (p, s, 1),
            (p, e, 1),
            (e, r, 1),
            (e, s, 1),
            (u, f, 2),
            (vv, f, 2),
            (w, f, 2),
        ];
        SupertileTemplate {
            kind: "pw-rect",
            outline: rect_outline(),
            boundary_weight: Some(3),
            segments,
            corners: vec![
                (b, CornerColour::Blue),
                (f, CornerColour::Blue),
                (a, CornerColour::Blue),
                (e, CornerColour::Red),
                (c, CornerColour::Red),
                (d, CornerColour::Red),
            ],
            tiles: vec![
                tri_tile(p, a, e),
                tri_tile(s, d, a),
                tri_tile(p, s, e),
                tri_tile(r, e, s),
                tri_tile(r, e, b),
                tri_tile(w, u, f),
                tri_tile(vv, u, f),
                tri_tile(vv, f, d),
                tri_tile(w, c, f),
                tri_tile(u, b, c),
            ],
        }
    })
}

/// Pinwheel kite supertile in its two colourings.
fn pw_kite(blue: bool) -> &'static SupertileTemplate {
    static BLUE: OnceLock<SupertileTemplate> = OnceLock::new();
    static RED: OnceLock<SupertileTemplate> = OnceLock::new();
    let cell = if blue { &BLUE } else { &RED };
    cell.get_or_init(|| {
        let (a, b, c, d) = (v(0.0, 0.0), v(0.0, 10.0), v(8.0, 4.0), v(5.0, 0.0));
        let (e, g) = (v(0.0, 5.0), v(4.0, 7.0));
        let (p, q, r, s) = (v(2.0, 1.0), v(6.0, 3.0), v(2.0, 6.0), v(4.0, 2.0));
        let (wa, wb) = if blue { (2, 1) } else { (1, 2) };
        let segments = vec![
            (b, r, wa),
            (a, p, wa),
            (q, c, wa),
            (s, d, wb),
            (e, r, wb),
            (r, g, wb),
            (e, p, wb),
            (e, s, wb),
            (g, s, wb),
            (g, q, wb),
            (r, s, 1),
            (p, s, 1),
            (s, q, 1),
        ];
        let (mine, other) = if blue {
            (CornerColour::Blue, CornerColour::Red)
        } else {
            (CornerColour::Red, CornerColour::Blue)
        };
        SupertileTemplate {
            kind: if blue { "pw-kite-blue" } else { "pw-kite-red" },
            outline: vec![a, b, c, d],
            boundary_weight: Some(3),
            segments,
            corners: vec![
                (a, mine),
                (b, mine),
                (c, mine),
                (e, other),
                (g, other),
                (d, other),
            ],
            tiles: vec![
                tri_tile(p, a, e),
                tri_tile(p, s, e),
                tri_tile(r, e, s),
                tri_tile(r, e, b),
                tri_tile(r, b, g),
                tri_tile(r, g, s),
                tri_tile(s, g, q),
                tri_tile(q, g, c),
                tri_tile(s, d, c),
                tri_tile(s, d, a),
            ],
        }
    })
}
