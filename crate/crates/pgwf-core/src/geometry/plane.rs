//! Orthonormal in-plane frames.

use crate::math::{abs, P2, Vec3};

/// An orthonormal basis for a plane `normal . x = offset`.
///
/// `basis_u`/`basis_v` span the plane and `(basis_u, basis_v, normal)` is
/// right-handed, so counterclockwise rings in `(u, v)` coordinates wind
/// `+1` about `normal`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneFrame {
    pub normal: Vec3,
    pub offset: f64,
    pub basis_u: Vec3,
    pub basis_v: Vec3,
}

impl PlaneFrame {
    /// Builds a frame from a unit normal and plane offset.
    ///
    /// The in-plane seed axis is the coordinate axis least aligned with
    /// the normal, Gram-Schmidt orthogonalised against it.
    pub fn from_normal_offset(normal: Vec3, offset: f64) -> PlaneFrame {
        let ax = abs(normal.x);
        let ay = abs(normal.y);
        let az = abs(normal.z);
        let seed = if ax <= ay && ax <= az {
            Vec3::new(1.0, 0.0, 0.0)
        } else if ay <= az {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        let u = (seed - normal * seed.dot(normal))
            .normalized()
            .expect("normal must be a unit vector");
        let v = normal.cross(u);
        PlaneFrame {
            normal,
            offset,
            basis_u: u,
            basis_v: v,
        }
    }

    /// A point on the plane serving as the 2D origin.
    #[inline]
    pub fn origin(&self) -> Vec3 {
        self.normal * self.offset
    }

    #[inline]
    pub fn to_plane(&self, p: Vec3) -> P2 {
        let d = p - self.origin();
        P2::new(d.dot(self.basis_u), d.dot(self.basis_v))
    }

    #[inline]
    pub fn from_plane(&self, p: P2) -> Vec3 {
        self.origin() + self.basis_u * p.x + self.basis_v * p.y
    }

    /// Signed distance of a point from the plane.
    #[inline]
    pub fn height(&self, p: Vec3) -> f64 {
        p.dot(self.normal) - self.offset
    }
}
