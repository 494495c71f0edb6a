//! Planar points, rigid motions (with optional reflection and uniform scaling),
//! and tolerance-based vertex snapping.
//!
//! Coordinates are in units of the shortest prototile edge of the active tiling.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Default snap tolerance, in units of the shortest prototile edge.
pub const SNAP_TOL: f64 = 1e-6;
/// Minimum separation between distinct vertices. A pair of vertices closer than
/// this but further than the snap tolerance indicates a construction bug.
pub const MIN_SEP: f64 = 0.05;

static SNAP_TOL_BITS: std::sync::atomic::AtomicU64 =
    std::sync::atomic::AtomicU64::new(0x3EB0C6F7A0B5ED8D); // 1e-6

/// Active snap tolerance; overridable for ad-hoc input data.
pub fn snap_tol() -> f64 {
    f64::from_bits(SNAP_TOL_BITS.load(std::sync::atomic::Ordering::Relaxed))
}

/// Override the snap tolerance process-wide. Must stay below [`MIN_SEP`].
pub fn set_snap_tol(tol: f64) {
    assert!(tol > 0.0 && tol < MIN_SEP);
    SNAP_TOL_BITS.store(tol.to_bits(), std::sync::atomic::Ordering::Relaxed);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point2 { x, y }
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, viewing both points as vectors.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }
}

pub fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// A direct or indirect similarity of the plane: `p -> scale * R * M * p + t`
/// where `M` is reflection across the x-axis when `reflect` is set and `R` is
/// the rotation with the stored cosine/sine pair.
///
/// Rotations are stored as (cos, sin) pairs, never as angles, so rotations like
/// arctan(1/2) are representable at full precision. `scale` is 1 for rigid
/// motions; inflation rides on it during substitution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub cos: f64,
    pub sin: f64,
    pub reflect: bool,
    pub tx: f64,
    pub ty: f64,
    pub scale: f64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        cos: 1.0,
        sin: 0.0,
        reflect: false,
        tx: 0.0,
        ty: 0.0,
        scale: 1.0,
    };

    pub fn new(cos: f64, sin: f64, reflect: bool, tx: f64, ty: f64, scale: f64) -> Self {
        let iso = Isometry {
            cos,
            sin,
            reflect,
            tx,
            ty,
            scale,
        };
        debug_assert!(iso.is_valid(), "invalid isometry: {iso:?}");
        iso
    }

    pub fn translation(tx: f64, ty: f64) -> Self {
        Isometry::new(1.0, 0.0, false, tx, ty, 1.0)
    }

    pub fn rotation_deg(deg: f64) -> Self {
        let (sin, cos) = deg.to_radians().sin_cos();
        Isometry::new(cos, sin, false, 0.0, 0.0, 1.0)
    }

    pub fn scaling(s: f64) -> Self {
        Isometry::new(1.0, 0.0, false, 0.0, 0.0, s)
    }

    pub fn is_valid(&self) -> bool {
        let unit = (self.cos * self.cos + self.sin * self.sin - 1.0).abs() < 1e-12;
        unit && self.scale > 0.0 && self.tx.is_finite() && self.ty.is_finite()
    }

    /// Reflection (if any) applied first, then rotation, scaling, translation.
    pub fn apply(&self, p: Point2) -> Point2 {
        let y = if self.reflect { -p.y } else { p.y };
        Point2::new(
            self.scale * (self.cos * p.x - self.sin * y) + self.tx,
            self.scale * (self.sin * p.x + self.cos * y) + self.ty,
        )
    }

    /// Direction image of a vector (no translation).
    pub fn apply_vec(&self, v: Point2) -> Point2 {
        let y = if self.reflect { -v.y } else { v.y };
        Point2::new(
            self.scale * (self.cos * v.x - self.sin * y),
            self.scale * (self.sin * v.x + self.cos * y),
        )
    }

    /// Composition: `(a.compose(b)).apply(p) == a.apply(b.apply(p))`.
    pub fn compose(&self, b: &Isometry) -> Isometry {
        let (cos, sin) = if self.reflect {
            // M R(phi) = R(-phi) M
            (
                self.cos * b.cos + self.sin * b.sin,
                self.sin * b.cos - self.cos * b.sin,
            )
        } else {
            (
                self.cos * b.cos - self.sin * b.sin,
                self.sin * b.cos + self.cos * b.sin,
            )
        };
        let t = self.apply(Point2::new(b.tx, b.ty));
        // renormalize the direction pair against drift from long compositions
        let n = cos.hypot(sin);
        Isometry {
            cos: cos / n,
            sin: sin / n,
            reflect: self.reflect ^ b.reflect,
            tx: t.x,
            ty: t.y,
            scale: self.scale * b.scale,
        }
    }

    pub fn inverse(&self) -> Isometry {
        // p = s R M q + t  =>  q = M^-1 R^-1 (p - t) / s
        let s = 1.0 / self.scale;
        if self.reflect {
            // inverse of R M is M R^-1 = (reflect then rotate by -theta)... keeping
            // the same storage convention: q = M R(-theta) (p-t)/s, and M R(-t) = R(t) M.
            let t = Point2::new(
                -(self.cos * self.tx + self.sin * self.ty) * s,
                -(self.sin * self.tx - self.cos * self.ty) * s,
            );
            Isometry::new(self.cos, self.sin, true, t.x, t.y, s)
        } else {
            let t = Point2::new(
                -(self.cos * self.tx + self.sin * self.ty) * s,
                (self.sin * self.tx - self.cos * self.ty) * s,
            );
            Isometry::new(self.cos, -self.sin, false, t.x, t.y, s)
        }
    }
}

/// Recover the similarity sending `(a0, a1)` to `(b0, b1)`, with an explicit
/// reflection choice. Used when transcribing figure placements.
pub fn isometry_from_segment(
    a0: Point2,
    a1: Point2,
    b0: Point2,
    b1: Point2,
    reflect: bool,
) -> Isometry {
    let va = a1 - a0;
    let vb = b1 - b0;
    let na = va.norm();
    let scale = vb.norm() / na;
    // direction of R M va must equal vb
    let ma = if reflect {
        Point2::new(va.x, -va.y)
    } else {
        va
    };
    let cos = ma.dot(vb) / (ma.norm() * vb.norm());
    let sin = ma.cross(vb) / (ma.norm() * vb.norm());
    let n = cos.hypot(sin);
    let mut iso = Isometry {
        cos: cos / n,
        sin: sin / n,
        reflect,
        tx: 0.0,
        ty: 0.0,
        scale,
    };
    let img = iso.apply(a0);
    iso.tx = b0.x - img.x;
    iso.ty = b0.y - img.y;
    iso
}

/// Interior angle of a simple polygon at `corner`, in degrees, in (0, 360).
/// Reflex corners are allowed; straight-through corners report 180.
pub fn interior_angle(polygon: &[Point2], corner: usize) -> Result<f64> {
    let n = polygon.len();
    let prev = polygon[(corner + n - 1) % n];
    let here = polygon[corner];
    let next = polygon[(corner + 1) % n];
    let u = prev - here;
    let v = next - here;
    if u.norm() < snap_tol() || v.norm() < snap_tol() {
        return Err(Error::DegeneratePolygon(corner));
    }
    // signed turn from v to u, oriented by the polygon's winding
    let ang = v.cross(u).atan2(v.dot(u)).to_degrees();
    let ang = if ang <= 0.0 { ang + 360.0 } else { ang };
    if signed_area(polygon) >= 0.0 {
        Ok(ang)
    } else {
        Ok(360.0 - ang)
    }
}

/// Twice the signed area is the shoelace sum; positive for counter-clockwise.
pub fn signed_area(polygon: &[Point2]) -> f64 {
    let n = polygon.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        acc += a.cross(b);
    }
    acc * 0.5
}

pub fn polygon_centroid(polygon: &[Point2]) -> Point2 {
    let n = polygon.len() as f64;
    let mut c = Point2::new(0.0, 0.0);
    for p in polygon {
        c = c + *p;
    }
    c * (1.0 / n)
}

/// Strictly-inside test by winding; points within `tol` of the boundary count
/// as outside so that shared edges never register as overlap.
pub fn point_strictly_inside(polygon: &[Point2], p: Point2, tol: f64) -> bool {
    let n = polygon.len();
    for i in 0..n {
        if dist_point_segment(p, polygon[i], polygon[(i + 1) % n]) < tol {
            return false;
        }
    }
    let mut winding = 0i32;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                winding += 1;
            }
        } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
            winding -= 1;
        }
    }
    winding != 0
}

pub fn dist_point_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

/// Tolerance-gridded vertex registry. Queries within [`SNAP_TOL`] of a
/// registered vertex resolve to it; new points register a fresh identifier.
#[derive(Debug, Clone)]
pub struct SnapIndex {
    cell: f64,
    points: Vec<Point2>,
    grid: HashMap<(i64, i64), Vec<u32>>,
}

impl Default for SnapIndex {
    fn default() -> Self {
        Self::new()
    }
}

impl SnapIndex {
    pub fn new() -> Self {
        SnapIndex {
            cell: MIN_SEP,
            points: Vec::new(),
            grid: HashMap::new(),
        }
    }

    fn key(&self, p: Point2) -> (i64, i64) {
        (
            (p.x / self.cell).floor() as i64,
            (p.y / self.cell).floor() as i64,
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn position(&self, id: usize) -> Point2 {
        self.points[id]
    }

    /// Nearest registered vertex within `radius`, if any.
    pub fn nearest_within(&self, p: Point2, radius: f64) -> Option<(usize, f64)> {
        let (kx, ky) = self.key(p);
        let reach = (radius / self.cell).ceil() as i64;
        let mut best: Option<(usize, f64)> = None;
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        let d = self.points[id as usize].dist(p);
                        if d <= radius && best.map_or(true, |(_, bd)| d < bd) {
                            best = Some((id as usize, d));
                        }
                    }
                }
            }
        }
        best
    }

    /// Ids of all registered vertices within `radius` of `p`.
    pub fn ids_within(&self, p: Point2, radius: f64) -> Vec<usize> {
        let (kx, ky) = self.key(p);
        let reach = (radius / self.cell).ceil() as i64;
        let mut out = Vec::new();
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        if self.points[id as usize].dist(p) <= radius {
                            out.push(id as usize);
                        }
                    }
                }
            }
        }
        out
    }

    fn count_within(&self, p: Point2, radius: f64) -> usize {
        let (kx, ky) = self.key(p);
        let reach = (radius / self.cell).ceil() as i64;
        let mut n = 0;
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    n += ids
                        .iter()
                        .filter(|&&id| self.points[id as usize].dist(p) <= radius)
                        .count();
                }
            }
        }
        n
    }

    /// Resolve `p` to an existing vertex id, or register it.
    pub fn snap(&mut self, p: Point2) -> Result<usize> {
        if !(p.x.is_finite() && p.y.is_finite()) {
            return Err(Error::Invalid(format!(
                "non-finite point ({}, {})",
                p.x, p.y
            )));
        }
        let tol = snap_tol();
        if let Some((id, _)) = self.nearest_within(p, tol) {
            if self.count_within(p, tol) > 1 {
                return Err(Error::AmbiguousSnap(p.x, p.y));
            }
            return Ok(id);
        }
        if let Some((id, d)) = self.nearest_within(p, MIN_SEP) {
            let fresh = self.points.len();
            return Err(Error::MinSepViolation(id, fresh, d));
        }
        let id = self.points.len();
        self.points.push(p);
        self.grid.entry(self.key(p)).or_default().push(id as u32);
        Ok(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot90() -> Isometry {
        Isometry::new(0.0, 1.0, false, 0.0, 0.0, 1.0)
    }

    #[test]
    fn rotate_quarter_turn() {
        let p = rot90().apply(pt(1.0, 0.0));
        assert!(p.dist(pt(0.0, 1.0)) < 1e-12);
    }

    #[test]
    fn identity_fixes_points() {
        let p = Isometry::IDENTITY.apply(pt(3.5, -2.0));
        assert_eq!((p.x, p.y), (3.5, -2.0));
    }

    #[test]
    fn two_eighth_turns_make_a_quarter() {
        let r45 = Isometry::rotation_deg(45.0);
        let p = r45.compose(&r45).apply(pt(1.0, 0.0));
        assert!(p.dist(pt(0.0, 1.0)) < 1e-12);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let a = Isometry::new(2.0 / 5f64.sqrt(), 1.0 / 5f64.sqrt(), true, 0.3, -1.7, 1.0);
        let b = Isometry::rotation_deg(137.0).compose(&Isometry::translation(2.0, 5.0));
        let p = pt(0.25, -3.5);
        assert!(a.compose(&b).apply(p).dist(a.apply(b.apply(p))) < 1e-12);
    }

    #[test]
    fn inverse_roundtrips() {
        for reflect in [false, true] {
            let a = Isometry::new((0.7f64).cos(), (0.7f64).sin(), reflect, 1.25, -0.5, 3.0);
            let p = pt(-2.0, 0.75);
            assert!(a.inverse().apply(a.apply(p)).dist(p) < 1e-12);
        }
    }

    #[test]
    fn snap_below_tolerance_reuses_id() {
        let mut idx = SnapIndex::new();
        let a = idx.snap(pt(0.5, 0.25)).unwrap();
        let b = idx.snap(pt(0.5 + 1e-9, 0.25)).unwrap();
        assert_eq!(a, b);
        assert_eq!(idx.len(), 1);
    }

    #[test]
    fn snap_above_min_sep_registers_new() {
        let mut idx = SnapIndex::new();
        let a = idx.snap(pt(0.0, 0.0)).unwrap();
        let b = idx.snap(pt(0.5, 0.0)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn snap_between_bounds_is_a_bug() {
        let mut idx = SnapIndex::new();
        idx.snap(pt(0.0, 0.0)).unwrap();
        assert!(matches!(
            idx.snap(pt(0.01, 0.0)),
            Err(Error::MinSepViolation(..))
        ));
    }

    #[test]
    fn square_corner_angle() {
        let sq = [pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)];
        for i in 0..4 {
            assert!((interior_angle(&sq, i).unwrap() - 90.0).abs() < 1e-9);
        }
    }

    #[test]
    fn ab_rhombus_acute_corner_is_45() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rh = [pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0 + s, s), pt(s, s)];
        assert!((interior_angle(&rh, 0).unwrap() - 45.0).abs() < 1e-9);
        assert!((interior_angle(&rh, 1).unwrap() - 135.0).abs() < 1e-9);
    }

    #[test]
    fn chair_inner_corner_is_reflex() {
        let chair = [
            pt(-3.0, 3.0),
            pt(0.0, 3.0),
            pt(0.0, 0.0),
            pt(3.0, 0.0),
            pt(3.0, -3.0),
            pt(-3.0, -3.0),
        ];
        assert!((interior_angle(&chair, 2).unwrap() - 270.0).abs() < 1e-9);
        let total: f64 = (0..6).map(|i| interior_angle(&chair, i).unwrap()).sum();
        assert!((total - 720.0).abs() < 1e-6);
    }
}
