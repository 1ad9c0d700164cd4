//! Boolean intersection of coplanar polygon sets.
//!
//! Everything reduces to convex/convex work: operands are convex
//! decompositions, each pair is clipped by boundary traversal against
//! half-planes, and output coordinates are snapped to [`EPS_SNAP`] to
//! keep touching pieces consistent.

use alloc::vec::Vec;

use super::convex::signed_area_2d;
use super::plane::PlaneFrame;
use super::types::{Polygon, PolygonSet};
use super::{GeometryError, EPS_AREA, EPS_PLANE, EPS_SNAP};
use crate::math::{abs, round, P2};

/// Distance tolerance classifying a point as on a clip line.
const EPS_SIDE: f64 = 1e-12;

fn snap(v: f64) -> f64 {
    round(v / EPS_SNAP) * EPS_SNAP
}

fn snap_ring(ring: &mut Vec<P2>) {
    for p in ring.iter_mut() {
        *p = P2::new(snap(p.x), snap(p.y));
    }
    ring.dedup_by(|a, b| (*a - *b).norm() <= EPS_SNAP);
    while ring.len() > 1 && (ring[0] - ring[ring.len() - 1]).norm() <= EPS_SNAP {
        ring.pop();
    }
}

/// Clips a counterclockwise ring against the half-plane on the left of
/// the directed line `a -> b` (`keep_left`) or on its right.
fn clip_halfplane(ring: &[P2], a: P2, b: P2, keep_left: bool) -> Vec<P2> {
    let dir = b - a;
    let len = dir.norm();
    if len <= EPS_SNAP {
        return ring.to_vec();
    }
    let sign = if keep_left { 1.0 } else { -1.0 };
    // Signed distance of p from the line, positive on the kept side.
    let dist = |p: P2| sign * dir.cross(p - a) / len;

    let n = ring.len();
    let mut out: Vec<P2> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let cur = ring[i];
        let next = ring[(i + 1) % n];
        let dc = dist(cur);
        let dn = dist(next);
        let cur_in = dc >= -EPS_SIDE;
        let next_in = dn >= -EPS_SIDE;
        if cur_in {
            out.push(cur);
        }
        if cur_in != next_in {
            let t = dc / (dc - dn);
            out.push(cur + (next - cur) * t);
        }
    }
    out
}

/// Intersection of two counterclockwise convex rings.
pub(crate) fn clip_convex_rings(subject: &[P2], clip: &[P2]) -> Vec<P2> {
    let mut cur = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if cur.len() < 3 {
            return Vec::new();
        }
        cur = clip_halfplane(&cur, clip[i], clip[(i + 1) % n], true);
    }
    snap_ring(&mut cur);
    if cur.len() < 3 || signed_area_2d(&cur) < EPS_AREA {
        return Vec::new();
    }
    cur
}

/// `subject \ clip` for counterclockwise convex rings, returned as
/// interior-disjoint convex pieces. Successive half-plane cuts peel the
/// outside of each clip edge off the remaining region.
pub(crate) fn subtract_convex_rings(subject: &[P2], clip: &[P2]) -> Vec<Vec<P2>> {
    let mut pieces = Vec::new();
    let mut remaining = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if remaining.len() < 3 {
            return pieces;
        }
        let a = clip[i];
        let b = clip[(i + 1) % n];
        let mut outside = clip_halfplane(&remaining, a, b, false);
        snap_ring(&mut outside);
        if outside.len() >= 3 && signed_area_2d(&outside) >= EPS_AREA {
            pieces.push(outside);
        }
        remaining = clip_halfplane(&remaining, a, b, true);
    }
    // What is left is subject ∩ clip and is discarded.
    pieces
}

/// Area of the intersection of two convex rings (used for disjointness
/// checks).
pub(crate) fn convex_overlap_area(a: &[P2], b: &[P2], _frame: &PlaneFrame) -> f64 {
    let r = clip_convex_rings(a, b);
    if r.len() < 3 {
        0.0
    } else {
        signed_area_2d(&r)
    }
}

/// Checks that two sets share a support plane and returns `b`'s offset
/// expressed with `a`'s normal orientation.
fn common_plane(a: &PolygonSet, b: &PolygonSet) -> Result<(), GeometryError> {
    let na = a.plane().normal;
    let nb = b.plane().normal;
    let d = na.dot(nb);
    if abs(abs(d) - 1.0) > 1e-9 {
        return Err(GeometryError::PlaneMismatch);
    }
    let offset_b = if d < 0.0 {
        -b.plane().offset
    } else {
        b.plane().offset
    };
    if abs(a.plane().offset - offset_b) > EPS_PLANE {
        return Err(GeometryError::PlaneMismatch);
    }
    Ok(())
}

/// Region covered by both sets.
///
/// The result is a set of simple convex `+1`-wound polygons with
/// pairwise-disjoint interiors; its area never exceeds either operand.
pub fn intersect(a: &PolygonSet, b: &PolygonSet) -> Result<PolygonSet, GeometryError> {
    common_plane(a, b)?;
    let frame = *a.plane();
    let mut pieces: Vec<Polygon> = Vec::new();
    let rings_b: Vec<Vec<P2>> = b
        .convex_pieces()
        .iter()
        .map(|p| p.ring_in_frame(&frame))
        .collect();
    for pa in a.convex_pieces() {
        let ra = pa.ring_in_frame(&frame);
        for rb in &rings_b {
            let out = clip_convex_rings(&ra, rb);
            if out.len() >= 3 {
                let verts: Vec<_> = out.iter().map(|&p| frame.from_plane(p)).collect();
                if let Ok(poly) = Polygon::from_ccw_unchecked(verts) {
                    pieces.push(poly);
                }
            }
        }
    }
    if pieces.is_empty() {
        return Ok(PolygonSet::empty(frame));
    }
    PolygonSet::assemble(frame, pieces)
}

/// Incrementally unions convex rings into a disjoint-piece list by
/// subtracting the existing cover from each newcomer.
pub(crate) fn union_insert(cover: &mut Vec<Vec<P2>>, piece: Vec<P2>) {
    let mut remaining = alloc::vec![piece];
    for existing in cover.iter() {
        let mut next = Vec::new();
        for r in remaining {
            next.extend(subtract_convex_rings(&r, existing));
        }
        remaining = next;
        if remaining.is_empty() {
            return;
        }
    }
    cover.extend(remaining);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_polygon;
    use crate::math::Vec3;
    use alloc::vec;

    fn square_at(cx: f64, cy: f64, half: f64) -> PolygonSet {
        let verts = vec![
            Vec3::new(cx + half, cy - half, 0.0),
            Vec3::new(cx + half, cy + half, 0.0),
            Vec3::new(cx - half, cy + half, 0.0),
            Vec3::new(cx - half, cy - half, 0.0),
        ];
        PolygonSet::from_polygon(validate_polygon(&verts).unwrap().0)
    }

    #[test]
    fn self_intersection_is_identity_by_area() {
        let s = square_at(0.0, 0.0, 0.5);
        let r = intersect(&s, &s).unwrap();
        assert!(abs(r.area() - 1.0) < 1e-9);
    }

    #[test]
    fn disjoint_squares_intersect_empty() {
        let a = square_at(0.0, 0.0, 0.5);
        let b = square_at(3.0, 0.0, 0.5);
        let r = intersect(&a, &b).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.area(), 0.0);
    }

    #[test]
    fn half_overlapping_squares() {
        let a = square_at(0.0, 0.0, 0.5);
        let b = square_at(0.5, 0.0, 0.5);
        let r = intersect(&a, &b).unwrap();
        assert!(abs(r.area() - 0.5) < 1e-9);
        let (lo, hi) = r.plane_bounds().unwrap();
        assert!(abs(hi.x - lo.x - 0.5) < 1e-9);
        assert!(abs(hi.y - lo.y - 1.0) < 1e-9);
    }

    #[test]
    fn commutative_by_area() {
        let a = square_at(0.1, -0.2, 0.7);
        let b = square_at(0.5, 0.3, 0.4);
        let ab = intersect(&a, &b).unwrap().area();
        let ba = intersect(&b, &a).unwrap().area();
        assert!(abs(ab - ba) < 1e-12);
    }

    #[test]
    fn plane_mismatch_is_reported() {
        let a = square_at(0.0, 0.0, 0.5);
        let verts = vec![
            Vec3::new(0.5, -0.5, 1.0),
            Vec3::new(0.5, 0.5, 1.0),
            Vec3::new(-0.5, 0.5, 1.0),
            Vec3::new(-0.5, -0.5, 1.0),
        ];
        let b = PolygonSet::from_polygon(validate_polygon(&verts).unwrap().0);
        assert_eq!(intersect(&a, &b).unwrap_err(), GeometryError::PlaneMismatch);
    }

    #[test]
    fn subtraction_pieces_are_disjoint_and_complete() {
        let p = vec![
            P2::new(-1.0, -1.0),
            P2::new(1.0, -1.0),
            P2::new(1.0, 1.0),
            P2::new(-1.0, 1.0),
        ];
        let q = vec![
            P2::new(0.0, -0.5),
            P2::new(2.0, -0.5),
            P2::new(2.0, 0.5),
            P2::new(0.0, 0.5),
        ];
        let pieces = subtract_convex_rings(&p, &q);
        let area: f64 = pieces.iter().map(|r| signed_area_2d(r)).sum();
        // |P| - |P ∩ Q| = 4 - 1
        assert!(abs(area - 3.0) < 1e-9);
        for (i, a) in pieces.iter().enumerate() {
            for b in pieces.iter().skip(i + 1) {
                let frame = PlaneFrame::from_normal_offset(Vec3::new(0.0, 0.0, 1.0), 0.0);
                assert!(convex_overlap_area(a, b, &frame) < 1e-9);
            }
        }
    }
}
