//! Analytic phase-space transforms of polygonal radiators.
//!
//! This crate computes the Fourier, autocorrelation, Wigner and ambiguity
//! transforms of arbitrary planar polygon sets in closed form, by reducing
//! each transform to a directed edge sum over a clipped polygon region.
//! On top of the transforms sit radiometric quantities (flux, intensity,
//! power) and Monte-Carlo field-render kernels that evaluate the Wigner
//! function of a transmitter aperture at arbitrary world points.
//!
//! The crate is `no_std`-compatible (requires `alloc`); all floating-point
//! transcendentals go through `libm` so results are identical with and
//! without the `std` feature. IO, file formats and the CLI live in the
//! companion `pgwf-cli` crate.
//!
//! Layout:
//! - [`math`]: small fixed-size vector/matrix types and scalar helpers
//! - [`geometry`]: polygons, polygon sets, clipping, convex decomposition,
//!   Minkowski automean
//! - [`transforms`]: closed-form Fourier transforms of segments, polygons,
//!   polyhedra and coherent collections
//! - [`phase_space`]: autocorrelation slices, Wigner and ambiguity values
//! - [`oracles`]: independent numerical references (quadrature transforms,
//!   brute-force automean, Kirchhoff and Fraunhofer diffraction)
//! - [`radiometry`]: physical-unit marginals, the transport estimator and
//!   grid/camera render kernels

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod geometry;
pub mod math;
pub mod oracles;
pub mod phase_space;
pub mod radiometry;
pub mod rng;
pub mod transforms;

pub use geometry::{
    AffineMap, GeometryError, Point3, Polygon, PolygonSet, Polyhedron, Segment1D,
};
pub use math::Vec3;
pub use transforms::{ComplexAmplitude, Wavevector};
