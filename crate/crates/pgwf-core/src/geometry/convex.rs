//! Convex tools: hulls, ear-clipping triangulation and greedy convex
//! merging. Together they provide the convex decomposition every boolean
//! in this module is built on.

use alloc::vec::Vec;

use super::types::Polygon;
use super::EPS_AREA;
use crate::math::{abs, P2};

/// Signed area of a 2D ring (positive for counterclockwise).
pub(crate) fn signed_area_2d(ring: &[P2]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += ring[i].cross(ring[(i + 1) % n]);
    }
    acc * 0.5
}

/// Convexity test for a counterclockwise ring; collinear runs allowed.
pub(crate) fn is_convex_ring(ring: &[P2]) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    let scale = ring_scale(ring);
    let eps = 1e-12 * scale * scale;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let c = ring[(i + 2) % n];
        if (b - a).cross(c - b) < -eps {
            return false;
        }
    }
    true
}

fn ring_scale(ring: &[P2]) -> f64 {
    let mut s: f64 = 0.0;
    for p in ring {
        s = s.max(abs(p.x)).max(abs(p.y));
    }
    s.max(1e-30)
}

/// Strictly convex hull (monotone chain); collinear boundary points are
/// dropped. Returns counterclockwise order.
pub(crate) fn convex_hull_2d(points: &[P2]) -> Vec<P2> {
    let mut pts: Vec<P2> = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup_by(|a, b| (*a - *b).norm() < 1e-15);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let scale = ring_scale(&pts);
    let eps = 1e-14 * scale * scale;
    let chain = |points: &mut dyn Iterator<Item = P2>| {
        let mut out: Vec<P2> = Vec::new();
        for p in points {
            while out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if (b - a).cross(p - b) <= eps {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        out
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    // Each chain ends where the other begins.
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Ear-clipping triangulation of a simple counterclockwise ring.
/// Zero-area ears at collinear vertices are removed without emitting a
/// triangle.
pub(crate) fn triangulate_ring(ring: &[P2]) -> Vec<[P2; 3]> {
    let mut idx: Vec<usize> = (0..ring.len()).collect();
    let mut out = Vec::with_capacity(ring.len().saturating_sub(2));
    let scale = ring_scale(ring);
    let eps = 1e-14 * scale * scale;

    let reflex = |idx: &[usize], pos: usize| {
        let m = idx.len();
        let a = ring[idx[(pos + m - 1) % m]];
        let b = ring[idx[pos]];
        let c = ring[idx[(pos + 1) % m]];
        (b - a).cross(c - b) < -eps
    };

    let mut guard = 0usize;
    let guard_max = 2 * ring.len() * ring.len() + 64;
    while idx.len() > 3 {
        guard += 1;
        if guard > guard_max {
            // Numerically stuck; fall back to a fan. Only reachable for
            // adversarial near-degenerate rings.
            let m = idx.len();
            for k in 1..m - 1 {
                out.push([ring[idx[0]], ring[idx[k]], ring[idx[k + 1]]]);
            }
            idx.truncate(0);
            break;
        }
        let m = idx.len();
        let mut clipped = false;
        for i in 0..m {
            let ia = idx[(i + m - 1) % m];
            let ib = idx[i];
            let ic = idx[(i + 1) % m];
            let (a, b, c) = (ring[ia], ring[ib], ring[ic]);
            let turn = (b - a).cross(c - b);
            if abs(turn) <= eps {
                // Collinear vertex: dropping it changes nothing.
                idx.remove(i);
                clipped = true;
                break;
            }
            if turn < 0.0 {
                continue; // reflex
            }
            let mut blocked = false;
            for (pos, &other) in idx.iter().enumerate() {
                if other == ia || other == ib || other == ic {
                    continue;
                }
                let p = ring[other];
                if point_strictly_in_triangle(p, a, b, c, eps) {
                    blocked = true;
                    break;
                }
                // A reflex vertex exactly on the candidate diagonal also
                // breaks the ear: the boundary continues past it into
                // the triangle.
                if reflex(&idx, pos) && point_in_triangle_inclusive(p, a, b, c, eps) {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                out.push([a, b, c]);
                idx.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            // No ear found this pass (degenerate numerics): drop the
            // flattest vertex and continue.
            let mut best = 0;
            let mut best_turn = f64::INFINITY;
            for i in 0..idx.len() {
                let m = idx.len();
                let a = ring[idx[(i + m - 1) % m]];
                let b = ring[idx[i]];
                let c = ring[idx[(i + 1) % m]];
                let t = abs((b - a).cross(c - b));
                if t < best_turn {
                    best_turn = t;
                    best = i;
                }
            }
            idx.remove(best);
        }
    }
    if idx.len() == 3 {
        let t = [ring[idx[0]], ring[idx[1]], ring[idx[2]]];
        if abs((t[1] - t[0]).cross(t[2] - t[0])) > 2.0 * EPS_AREA {
            out.push(t);
        }
    }
    out.retain(|t| abs((t[1] - t[0]).cross(t[2] - t[0])) * 0.5 > EPS_AREA);
    out
}

fn point_strictly_in_triangle(p: P2, a: P2, b: P2, c: P2, eps: f64) -> bool {
    let d1 = (b - a).cross(p - a);
    let d2 = (c - b).cross(p - b);
    let d3 = (a - c).cross(p - c);
    d1 > eps && d2 > eps && d3 > eps
}

fn point_in_triangle_inclusive(p: P2, a: P2, b: P2, c: P2, eps: f64) -> bool {
    let d1 = (b - a).cross(p - a);
    let d2 = (c - b).cross(p - b);
    let d3 = (a - c).cross(p - c);
    d1 > -eps && d2 > -eps && d3 > -eps
}

/// Greedy Hertel-Mehlhorn style merge: repeatedly join pieces across a
/// shared edge while the union stays convex.
fn merge_convex(mut pieces: Vec<Vec<P2>>) -> Vec<Vec<P2>> {
    let mut changed = true;
    while changed {
        changed = false;
        'outer: for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                if let Some(merged) = try_merge(&pieces[i], &pieces[j]) {
                    pieces[i] = merged;
                    pieces.swap_remove(j);
                    changed = true;
                    break 'outer;
                }
            }
        }
    }
    pieces
}

/// Merges two counterclockwise convex rings sharing a directed edge
/// (a->b in one, b->a in the other) if the result is convex.
fn try_merge(p: &[P2], q: &[P2]) -> Option<Vec<P2>> {
    let np = p.len();
    let nq = q.len();
    for i in 0..np {
        let a = p[i];
        let b = p[(i + 1) % np];
        for j in 0..nq {
            if close(q[j], b) && close(q[(j + 1) % nq], a) {
                // Walk p from b around to a, then q's interior chain.
                let mut ring = Vec::with_capacity(np + nq - 2);
                for k in 0..np {
                    ring.push(p[(i + 1 + k) % np]);
                }
                // ring now starts at b and ends at a.
                for k in 2..nq {
                    ring.push(q[(j + k) % nq]);
                }
                if is_convex_ring(&ring) {
                    return Some(ring);
                }
                return None;
            }
        }
    }
    None
}

fn close(a: P2, b: P2) -> bool {
    (a - b).norm() < 1e-12
}

/// Splits a polygon into convex pieces with disjoint interiors whose
/// union is the input; the area is preserved within [`EPS_AREA`] per
/// piece. Convex input is returned as a single piece.
pub fn convex_decompose(poly: &Polygon) -> Vec<Polygon> {
    if poly.is_convex() {
        return alloc::vec![poly.clone()];
    }
    let frame = poly.plane_frame();
    let ring = poly.ring_in_frame(&frame);
    let tris: Vec<Vec<P2>> = triangulate_ring(&ring)
        .into_iter()
        .map(|t| t.to_vec())
        .collect();
    let merged = merge_convex(tris);
    merged
        .into_iter()
        .filter_map(|ring2d| {
            let verts: Vec<_> = ring2d.iter().map(|&p| frame.from_plane(p)).collect();
            Polygon::from_ccw_unchecked(verts).ok()
        })
        .collect()
}
