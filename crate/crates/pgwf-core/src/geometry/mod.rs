//! Polygon geometry: validation, planes, affine maps, boolean
//! intersection, convex decomposition and the Minkowski automean.
//!
//! All boolean work happens in an orthonormal in-plane basis derived from
//! the polygon normal; results are mapped back to 3-space. Non-convex
//! inputs are decomposed into convex pieces first, so every boolean
//! reduces to convex/convex clipping and unions reduce to convex
//! differences. Outputs are always sets of simple, counterclockwise,
//! interior-disjoint polygons.

mod affine;
mod clip;
mod convex;
mod minkowski;
mod plane;
mod types;

pub use affine::{
    apply_map, make_m_minus, make_m_plus, make_translation, AffineMap, SliceMapConvention,
};
pub use clip::intersect;
pub use convex::convex_decompose;
pub use minkowski::minkowski_automean;
pub use plane::PlaneFrame;
pub use types::{
    frame_components, validate_polygon, FrameComponents, Point3, Polygon, PolygonSet, Polyhedron,
    Segment1D,
};

/// Planarity tolerance in meters.
pub const EPS_PLANE: f64 = 1e-9;
/// Degeneracy threshold in square meters.
pub const EPS_AREA: f64 = 1e-12;
/// Coordinate snap applied to clipping output, meters.
pub const EPS_SNAP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    /// Vertices deviate from the fitted plane by more than [`EPS_PLANE`].
    NonPlanar,
    /// The edge cycle crosses itself.
    SelfIntersecting,
    /// Fewer than 3 vertices, repeated consecutive vertices, or area
    /// below [`EPS_AREA`].
    Degenerate,
    /// Boolean operands do not share a support plane.
    PlaneMismatch,
    /// A component carries a non-finite coordinate.
    NotFinite,
    /// Affine map with a singular linear part.
    Singular,
}

impl core::fmt::Display for GeometryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            GeometryError::NonPlanar => "vertices are not coplanar within tolerance",
            GeometryError::SelfIntersecting => "polygon boundary crosses itself",
            GeometryError::Degenerate => "degenerate polygon (too few vertices or zero area)",
            GeometryError::PlaneMismatch => "operands do not share a support plane",
            GeometryError::NotFinite => "non-finite coordinate",
            GeometryError::Singular => "affine map has a singular linear part",
        };
        f.write_str(s)
    }
}

impl core::error::Error for GeometryError {}
