//! Regular sampling grids with physical axes, the exchange format
//! between render kernels, oracles and the file writers.

use alloc::vec::Vec;

use crate::math::{Complex64, Vec3};

/// Physical units tag carried by every grid. The ASCII form is what the
/// PGWF file format stores (16 bytes, space padded); `Sigma` is the
/// power unit of a unit-amplitude field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitsTag {
    /// `Sigma` - total power.
    Power,
    /// `Sigma/R^2` - wavevector spectral density (Wigner/ambiguity
    /// values, spectral intensity).
    SpectralDensity,
    /// `Sigma/m^2` - Poynting flux magnitude.
    FluxDensity,
    /// `Sigma/(sr.m^2)` - radiance.
    Radiance,
    /// `m^2` - areas (autocorrelation marginals).
    Area,
    /// Dimensionless values.
    Dimensionless,
}

impl UnitsTag {
    pub fn tag(&self) -> &'static str {
        match self {
            UnitsTag::Power => "Sigma",
            UnitsTag::SpectralDensity => "Sigma/R^2",
            UnitsTag::FluxDensity => "Sigma/m^2",
            UnitsTag::Radiance => "Sigma/(sr.m^2)",
            UnitsTag::Area => "m^2",
            UnitsTag::Dimensionless => "1",
        }
    }

    pub fn from_tag(tag: &str) -> Option<UnitsTag> {
        let t = tag.trim_end();
        [
            UnitsTag::Power,
            UnitsTag::SpectralDensity,
            UnitsTag::FluxDensity,
            UnitsTag::Radiance,
            UnitsTag::Area,
            UnitsTag::Dimensionless,
        ]
        .into_iter()
        .find(|u| u.tag() == t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GridValues {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl GridValues {
    pub fn len(&self) -> usize {
        match self {
            GridValues::Real(v) => v.len(),
            GridValues::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A regular grid of up to three axes with physical step vectors.
///
/// Values are stored row-major with the **last** axis varying fastest:
/// `index(i, j, k) = (i * dims[1] + j) * dims[2] + k`. Unused axes have
/// dimension 1. For wavevector-domain grids the axis vectors are steps
/// in inverse meters rather than positions; the units tag of the values
/// plus the axis semantics are recorded by the writer.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub origin: Vec3,
    pub axes: [Vec3; 3],
    pub dims: [usize; 3],
    pub values: GridValues,
    pub units: UnitsTag,
}

impl GridField {
    pub fn node_count(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    /// Physical location of a node (grid nodes sit at integer steps from
    /// the origin).
    pub fn node_position(&self, i: usize, j: usize, k: usize) -> Vec3 {
        self.origin + self.axes[0] * i as f64 + self.axes[1] * j as f64 + self.axes[2] * k as f64
    }

    pub fn real_values(&self) -> Option<&[f64]> {
        match &self.values {
            GridValues::Real(v) => Some(v),
            GridValues::Complex(_) => None,
        }
    }

    /// Consistency check: value storage matches the declared dims.
    pub fn is_consistent(&self) -> bool {
        self.dims.iter().all(|&d| d >= 1) && self.values.len() == self.node_count()
    }
}
