//! Homogeneous affine maps and the slice-extraction matrices.

use alloc::vec::Vec;

use super::types::{Point3, Polygon, PolygonSet};
use super::GeometryError;
use crate::math::{Mat3, Vec3};

/// An invertible affine map `p -> linear * p + translation`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    pub linear: Mat3,
    pub translation: Vec3,
}

/// Translation convention of the lag-slice matrices.
///
/// `HalfLag` (the default) produces exactly the lag region
/// `{d : x + d/2 and x - d/2 both inside}`, i.e. the scaling maps carry
/// translations `-2x` and `+2x`. `Literal` reproduces the `-x` / `+x`
/// translations of the source transformation matrices; the two differ by
/// a factor of two in the slice offset and are kept selectable so
/// results under either convention can be compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SliceMapConvention {
    #[default]
    HalfLag,
    Literal,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        linear: Mat3::IDENTITY,
        translation: Vec3::ZERO,
    };

    pub fn new(linear: Mat3, translation: Vec3) -> Result<Self, GeometryError> {
        if linear.det() == 0.0 || !linear.det().is_finite() || !translation.is_finite() {
            return Err(GeometryError::Singular);
        }
        Ok(AffineMap { linear, translation })
    }

    #[inline]
    pub fn apply_point(&self, p: Point3) -> Point3 {
        self.linear.apply(p) + self.translation
    }

    /// `self` after `other`: `(self.compose(other))(p) = self(other(p))`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: self.linear.mul_mat(&other.linear),
            translation: self.linear.apply(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Result<AffineMap, GeometryError> {
        let inv = self.linear.inverse().ok_or(GeometryError::Singular)?;
        Ok(AffineMap {
            linear: inv,
            translation: -inv.apply(self.translation),
        })
    }
}

/// Scale-toward-origin slice map: linear part `2I`.
pub fn make_m_plus(x: Point3, convention: SliceMapConvention) -> AffineMap {
    let t = match convention {
        SliceMapConvention::HalfLag => x * -2.0,
        SliceMapConvention::Literal => -x,
    };
    AffineMap {
        linear: Mat3::diagonal(2.0),
        translation: t,
    }
}

/// Reflect-about-origin-then-scale slice map: linear part `-2I`.
pub fn make_m_minus(x: Point3, convention: SliceMapConvention) -> AffineMap {
    let t = match convention {
        SliceMapConvention::HalfLag => x * 2.0,
        SliceMapConvention::Literal => x,
    };
    AffineMap {
        linear: Mat3::diagonal(-2.0),
        translation: t,
    }
}

/// Pure translation by `a`.
pub fn make_translation(a: Vec3) -> AffineMap {
    AffineMap {
        linear: Mat3::IDENTITY,
        translation: a,
    }
}

/// Applies an affine map to every polygon of a set.
///
/// Windings are re-derived from the transformed vertex cycles, so maps
/// whose in-plane action reverses orientation (reflections) come out
/// wound `+1` about the transformed plane normal.
pub fn apply_map(map: &AffineMap, set: &PolygonSet) -> Result<PolygonSet, GeometryError> {
    if set.is_empty() {
        // Transform the carrier plane so empty results stay meaningful.
        let p0 = map.apply_point(set.plane().origin());
        let p1 = map.apply_point(set.plane().origin() + set.plane().basis_u);
        let p2 = map.apply_point(set.plane().origin() + set.plane().basis_v);
        let normal = (p1 - p0)
            .cross(p2 - p0)
            .normalized()
            .ok_or(GeometryError::Singular)?;
        let frame =
            super::plane::PlaneFrame::from_normal_offset(normal, normal.dot(p0));
        return Ok(PolygonSet::empty(frame));
    }
    let mut parts = Vec::with_capacity(set.parts().len());
    for poly in set.parts() {
        let verts: Vec<Point3> = poly
            .vertices()
            .iter()
            .map(|&v| map.apply_point(v))
            .collect();
        // from_ccw_unchecked re-derives the normal from the cycle; a
        // reversed cycle simply reports the opposite normal, which is
        // the +1-winding normal of the image.
        parts.push(Polygon::from_ccw_unchecked(verts)?);
    }
    let plane = super::plane::PlaneFrame::from_normal_offset(
        parts[0].normal(),
        parts[0].plane_offset(),
    );
    PolygonSet::assemble(plane, parts)
}
