//! Minkowski automean: the set of midpoints of all point pairs.

use alloc::vec::Vec;

use super::clip::union_insert;
use super::convex::convex_hull_2d;
use super::types::{Polygon, PolygonSet};
use crate::math::P2;

/// Midpoint Minkowski sum of two convex rings.
///
/// For convex sets the midpoint set equals the convex hull of the
/// pairwise vertex midpoints, which is robust against collinear edges
/// and needs no edge-walking.
fn convex_pair_mean(a: &[P2], b: &[P2]) -> Vec<P2> {
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for &pa in a {
        for &pb in b {
            sums.push((pa + pb) * 0.5);
        }
    }
    convex_hull_2d(&sums)
}

/// The mutual support of a radiator set: all midpoints `(a + b) / 2`
/// with both endpoints in the set.
///
/// Computed over the convex decomposition: every unordered pair of
/// pieces contributes one convex midpoint sum, and the sums are unioned
/// into interior-disjoint pieces. The result contains the input and is
/// contained in its convex hull; convex input is returned unchanged.
pub fn minkowski_automean(set: &PolygonSet) -> PolygonSet {
    let frame = *set.plane();
    if set.is_empty() {
        return PolygonSet::empty(frame);
    }
    let pieces: Vec<Vec<P2>> = set
        .convex_pieces()
        .iter()
        .map(|p| p.ring_in_frame(&frame))
        .collect();
    if pieces.len() == 1 {
        // A single convex piece is its own automean; echo the part to
        // keep vertices bit-identical.
        if set.parts().len() == 1 && set.parts()[0].is_convex() {
            return set.clone();
        }
    }
    let m = pieces.len();
    let mut cover: Vec<Vec<P2>> = Vec::new();
    for i in 0..m {
        for j in i..m {
            let sum = convex_pair_mean(&pieces[i], &pieces[j]);
            if sum.len() >= 3 {
                union_insert(&mut cover, sum);
            }
        }
    }
    let parts: Vec<Polygon> = cover
        .into_iter()
        .filter_map(|ring| {
            let verts: Vec<_> = ring.iter().map(|&p| frame.from_plane(p)).collect();
            Polygon::from_ccw_unchecked(verts).ok()
        })
        .collect();
    if parts.is_empty() {
        return PolygonSet::empty(frame);
    }
    PolygonSet::assemble(frame, parts).expect("automean pieces are coplanar")
}
