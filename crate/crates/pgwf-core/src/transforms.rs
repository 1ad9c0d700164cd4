//! Closed-form Fourier transforms of uniformly illuminated segments,
//! polygons, polyhedra and coherent collections.
//!
//! The polygon transform follows from Stokes' theorem: the surface
//! integral of the Fourier kernel over a simple polygon collapses to a
//! directed sum over its edges, each contributing a sinc factor from the
//! straight-line integral and a phase factor from the edge midpoint. The
//! result is exact for any simple polygon at any wavevector, with the
//! in-plane zero-frequency limit handled analytically (the transform of
//! an indicator at zero in-plane frequency is its area).

use alloc::vec::Vec;
use core::ops::Deref;

use num_complex::Complex;

use crate::geometry::{frame_components, Polygon, PolygonSet, Polyhedron, Segment1D};
use crate::math::{cis, sinc, Complex64, Vec3, TAU};

/// A spatial frequency vector, inverse meters.
///
/// Only real wavevectors are supported; complex (evanescent) components
/// are out of scope.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Wavevector(pub Vec3);

impl Wavevector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Wavevector(Vec3::new(x, y, z))
    }
}

impl Deref for Wavevector {
    type Target = Vec3;
    fn deref(&self) -> &Vec3 {
        &self.0
    }
}

impl From<Vec3> for Wavevector {
    fn from(v: Vec3) -> Self {
        Wavevector(v)
    }
}

/// Complex transform value. Units are field amplitude for the plain
/// transforms and amplitude squared for the power spectra built on them.
pub type ComplexAmplitude = Complex64;

/// Singular-limit switch for in-plane (or total) wavevector magnitude,
/// inverse meters. Far below physical wavevectors at radar or optical
/// scales, far above rounding noise.
pub const EPS_NU: f64 = 1e-9;

/// Sign of the Fourier kernel exponent.
///
/// `Forward` is the default `e^{-2 pi j nu . x}` analysis kernel and is
/// the convention every oracle in this crate arbitrates against.
/// `Reversed` flips the exponent (and therefore conjugates every result
/// for real geometry), matching sources that write the edge phase with a
/// positive sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SftSign {
    #[default]
    Forward,
    Reversed,
}

impl SftSign {
    #[inline]
    pub fn sigma(self) -> f64 {
        match self {
            SftSign::Forward => -1.0,
            SftSign::Reversed => 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformError {
    /// Directional combination weights are undefined at zero frequency.
    ZeroFrequency,
    /// Collection parts must share one dimensionality.
    MixedCollection,
}

impl core::fmt::Display for TransformError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TransformError::ZeroFrequency => {
                f.write_str("directional weights are undefined at zero frequency")
            }
            TransformError::MixedCollection => {
                f.write_str("collection mixes parts of different dimensionality")
            }
        }
    }
}

impl core::error::Error for TransformError {}

/// Transform of a segment: `|V'| sinc(nu . V') e^{sigma 2 pi j nu . Vbar}`
/// with `V'` the endpoint difference and `Vbar` the midpoint.
pub fn sft_segment(nu: Wavevector, seg: &Segment1D) -> ComplexAmplitude {
    sft_segment_signed(nu, seg, SftSign::Forward)
}

pub fn sft_segment_signed(nu: Wavevector, seg: &Segment1D, sign: SftSign) -> ComplexAmplitude {
    let delta = seg.delta();
    let phase = cis(sign.sigma() * TAU * nu.dot(seg.midpoint()));
    phase * (delta.norm() * sinc(nu.dot(delta)))
}

/// Edge sum of the polygon transform: a complex 3-vector.
fn edge_sum(nu: Vec3, poly: &Polygon, sigma: f64) -> [Complex64; 3] {
    let mut acc = [Complex64::ZERO; 3];
    for (a, b) in poly.edges() {
        let delta = b - a;
        let mid = (a + b) * 0.5;
        let w = cis(sigma * TAU * nu.dot(mid)) * sinc(nu.dot(delta));
        acc[0] += w * delta.x;
        acc[1] += w * delta.y;
        acc[2] += w * delta.z;
    }
    acc
}

/// Transform of a simple polygon by the directed edge sum.
///
/// Below `EPS_NU` of in-plane frequency the analytic limit
/// `area . e^{sigma 2 pi j nu . centroid}` is returned; the out-of-plane
/// component only ever contributes the constant plane phase.
pub fn sft_polygon(nu: Wavevector, poly: &Polygon) -> ComplexAmplitude {
    sft_polygon_signed(nu, poly, SftSign::Forward)
}

pub fn sft_polygon_signed(nu: Wavevector, poly: &Polygon, sign: SftSign) -> ComplexAmplitude {
    let sigma = sign.sigma();
    let fc = frame_components(nu.0, poly.normal());
    let par_sq = fc.par.norm_sq();
    if par_sq.sqrt() < EPS_NU {
        return cis(sigma * TAU * nu.dot(poly.centroid())) * poly.area();
    }
    let s = edge_sum(nu.0, poly, sigma);
    let dot = s[0] * fc.cross.x + s[1] * fc.cross.y + s[2] * fc.cross.z;
    // sigma * (nu_cross . S) / (2 pi j |nu_par|^2)
    let denom = Complex::new(0.0, TAU * par_sq);
    dot * sigma / denom
}

/// Coherent sum over the parts of a coplanar set. Parts have disjoint
/// interiors, so linearity makes this the transform of the union.
pub fn sft_polygon_set(nu: Wavevector, set: &PolygonSet) -> ComplexAmplitude {
    sft_polygon_set_signed(nu, set, SftSign::Forward)
}

pub fn sft_polygon_set_signed(
    nu: Wavevector,
    set: &PolygonSet,
    sign: SftSign,
) -> ComplexAmplitude {
    set.parts()
        .iter()
        .map(|p| sft_polygon_signed(nu, p, sign))
        .sum()
}

/// Transform of a polyhedron as the normal-weighted sum of its face
/// transforms. At `|nu| <= EPS_NU` the volume is returned (the
/// zero-frequency transform of a solid indicator is its measure).
pub fn sft_polyhedron(nu: Wavevector, body: &Polyhedron) -> ComplexAmplitude {
    sft_polyhedron_signed(nu, body, SftSign::Forward)
}

pub fn sft_polyhedron_signed(
    nu: Wavevector,
    body: &Polyhedron,
    sign: SftSign,
) -> ComplexAmplitude {
    let sigma = sign.sigma();
    let norm_sq = nu.norm_sq();
    if norm_sq.sqrt() <= EPS_NU {
        return Complex::new(body.volume(), 0.0);
    }
    let mut acc = [Complex64::ZERO; 3];
    for face in body.faces() {
        let f = sft_polygon_signed(nu, face, sign);
        let n = face.normal();
        acc[0] += f * n.x;
        acc[1] += f * n.y;
        acc[2] += f * n.z;
    }
    let dot = acc[0] * nu.x + acc[1] * nu.y + acc[2] * nu.z;
    let denom = Complex::new(0.0, TAU * norm_sq);
    dot * sigma / denom
}

/// How a coherent collection combines its part transforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CombineMode {
    /// Plain coherent sum (linearity of the transform).
    #[default]
    Sum,
    /// Direction-weighted sum: segments weighted by
    /// `1 - (nu . p_hat)/|nu|`, faces contracted against `nu/|nu|`.
    Directional,
}

/// A member of a coherently radiating collection.
#[derive(Clone, Debug)]
pub enum CollectionPart {
    Segment(Segment1D),
    Polygon(Polygon),
    Polyhedron(Polyhedron),
}

fn dimensionality(p: &CollectionPart) -> u8 {
    match p {
        CollectionPart::Segment(_) => 1,
        CollectionPart::Polygon(_) => 2,
        CollectionPart::Polyhedron(_) => 3,
    }
}

/// Transform of a coherent collection of same-dimensional radiators.
pub fn sft_collection(
    nu: Wavevector,
    parts: &[CollectionPart],
    mode: CombineMode,
) -> Result<ComplexAmplitude, TransformError> {
    sft_collection_signed(nu, parts, mode, SftSign::Forward)
}

pub fn sft_collection_signed(
    nu: Wavevector,
    parts: &[CollectionPart],
    mode: CombineMode,
    sign: SftSign,
) -> Result<ComplexAmplitude, TransformError> {
    if let Some(first) = parts.first() {
        let dim = dimensionality(first);
        if parts.iter().any(|p| dimensionality(p) != dim) {
            return Err(TransformError::MixedCollection);
        }
    }
    match mode {
        CombineMode::Sum => Ok(parts
            .iter()
            .map(|p| match p {
                CollectionPart::Segment(s) => sft_segment_signed(nu, s, sign),
                CollectionPart::Polygon(poly) => sft_polygon_signed(nu, poly, sign),
                CollectionPart::Polyhedron(body) => sft_polyhedron_signed(nu, body, sign),
            })
            .sum()),
        CombineMode::Directional => {
            let norm = nu.norm();
            if norm <= EPS_NU {
                return Err(TransformError::ZeroFrequency);
            }
            let unit = nu.0 / norm;
            let mut acc = Complex64::ZERO;
            let mut face_acc = [Complex64::ZERO; 3];
            let mut any_faces = false;
            for p in parts {
                match p {
                    CollectionPart::Segment(s) => {
                        let w = 1.0 - unit.dot(s.direction());
                        acc += sft_segment_signed(nu, s, sign) * w;
                    }
                    CollectionPart::Polygon(poly) => {
                        let f = sft_polygon_signed(nu, poly, sign);
                        let n = poly.normal();
                        face_acc[0] += f * n.x;
                        face_acc[1] += f * n.y;
                        face_acc[2] += f * n.z;
                        any_faces = true;
                    }
                    CollectionPart::Polyhedron(body) => {
                        // A polyhedron has no single normal to weight
                        // with; apply the face form over its surface.
                        for face in body.faces() {
                            let f = sft_polygon_signed(nu, face, sign);
                            let n = face.normal();
                            face_acc[0] += f * n.x;
                            face_acc[1] += f * n.y;
                            face_acc[2] += f * n.z;
                        }
                        any_faces = true;
                    }
                }
            }
            if any_faces {
                acc += face_acc[0] * unit.x + face_acc[1] * unit.y + face_acc[2] * unit.z;
            }
            Ok(acc)
        }
    }
}

/// Convenience: the parts of a polygon set as collection members.
pub fn collection_of_set(set: &PolygonSet) -> Vec<CollectionPart> {
    set.parts()
        .iter()
        .cloned()
        .map(CollectionPart::Polygon)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_polygon;
    use crate::math::{abs, PI};
    use alloc::vec;

    fn unit_square() -> Polygon {
        let verts = vec![
            Vec3::new(0.5, -0.5, 0.0),
            Vec3::new(0.5, 0.5, 0.0),
            Vec3::new(-0.5, 0.5, 0.0),
            Vec3::new(-0.5, -0.5, 0.0),
        ];
        validate_polygon(&verts).unwrap().0
    }

    fn unit_cube() -> Polyhedron {
        let v = |x: f64, y: f64, z: f64| Vec3::new(x - 0.5, y - 0.5, z - 0.5);
        let faces = vec![
            vec![v(0., 0., 0.), v(0., 1., 0.), v(1., 1., 0.), v(1., 0., 0.)],
            vec![v(0., 0., 1.), v(1., 0., 1.), v(1., 1., 1.), v(0., 1., 1.)],
            vec![v(0., 0., 0.), v(1., 0., 0.), v(1., 0., 1.), v(0., 0., 1.)],
            vec![v(0., 1., 0.), v(0., 1., 1.), v(1., 1., 1.), v(1., 1., 0.)],
            vec![v(0., 0., 0.), v(0., 0., 1.), v(0., 1., 1.), v(0., 1., 0.)],
            vec![v(1., 0., 0.), v(1., 1., 0.), v(1., 1., 1.), v(1., 0., 1.)],
        ];
        Polyhedron::new(&faces, false).unwrap()
    }

    #[test]
    fn segment_normal_incidence_gives_length() {
        let seg = Segment1D::new(Vec3::new(-0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.0)).unwrap();
        let f = sft_segment(Wavevector::new(0.0, 3.0, 0.0), &seg);
        assert!(abs(f.re - 1.0) < 1e-15 && abs(f.im) < 1e-15);
    }

    #[test]
    fn segment_first_null() {
        let seg = Segment1D::new(Vec3::new(-0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.0)).unwrap();
        let f = sft_segment(Wavevector::new(1.0, 0.0, 0.0), &seg);
        assert!(f.norm() < 1e-15);
    }

    #[test]
    fn segment_half_frequency_is_two_over_pi() {
        let seg = Segment1D::new(Vec3::new(-0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.0)).unwrap();
        let f = sft_segment(Wavevector::new(0.5, 0.0, 0.0), &seg);
        assert!(abs(f.re - 2.0 / PI) < 1e-15);
        assert!(abs(f.im) < 1e-15);
    }

    #[test]
    fn square_zero_inplane_frequency_gives_area() {
        let sq = unit_square();
        for k in [0.0, 0.5, 17.0] {
            let f = sft_polygon(Wavevector::new(0.0, 0.0, k), &sq);
            assert!(abs(f.re - 1.0) < 1e-12, "k={k}: {f}");
            assert!(abs(f.im) < 1e-12);
        }
    }

    #[test]
    fn square_first_null() {
        let f = sft_polygon(Wavevector::new(1.0, 0.0, 0.0), &unit_square());
        assert!(f.norm() < 1e-12);
    }

    #[test]
    fn square_separable_sinc_product() {
        let f = sft_polygon(Wavevector::new(0.5, 0.25, 0.0), &unit_square());
        let want = sinc(0.5) * sinc(0.25);
        assert!(abs(f.re - want) < 1e-12, "{} vs {want}", f.re);
        assert!(abs(f.im) < 1e-12);
    }

    #[test]
    fn square_continuity_across_singular_switch() {
        let sq = unit_square();
        let just_above = sft_polygon(Wavevector::new(EPS_NU * 1.0001, 0.0, 0.0), &sq);
        let limit = sft_polygon(Wavevector::new(0.0, 0.0, 0.0), &sq);
        assert!((just_above - limit).norm() < 1e-6 * sq.area());
    }

    #[test]
    fn cube_volume_limit_and_separable_values() {
        let cube = unit_cube();
        let f0 = sft_polyhedron(Wavevector::new(0.0, 0.0, 0.0), &cube);
        assert!(abs(f0.re - 1.0) < 1e-12 && abs(f0.im) < 1e-12);

        let null = sft_polyhedron(Wavevector::new(1.0, 0.0, 0.0), &cube);
        assert!(null.norm() < 1e-12);

        let half = sft_polyhedron(Wavevector::new(0.5, 0.0, 0.0), &cube);
        assert!(abs(half.re - 2.0 / PI) < 1e-12);
        assert!(abs(half.im) < 1e-12);

        // Near the switch the edge sum should continuously meet the
        // volume limit.
        let eps = sft_polyhedron(Wavevector::new(1.5e-9, 0.0, 0.0), &cube);
        assert!((eps - f0).norm() < 1e-6);
    }

    #[test]
    fn reversed_sign_conjugates() {
        let sq = unit_square();
        let nu = Wavevector::new(0.3, -0.7, 0.2);
        let fwd = sft_polygon(nu, &sq);
        let rev = sft_polygon_signed(nu, &sq, SftSign::Reversed);
        assert!((fwd.conj() - rev).norm() < 1e-14);
    }

    #[test]
    fn singleton_collection_sum_equals_part() {
        let sq = unit_square();
        let nu = Wavevector::new(0.4, 0.1, 0.0);
        let direct = sft_polygon(nu, &sq);
        let coll = sft_collection(
            nu,
            &[CollectionPart::Polygon(sq.clone())],
            CombineMode::Sum,
        )
        .unwrap();
        assert!((direct - coll).norm() < 1e-15);
    }

    #[test]
    fn mixed_collection_is_rejected() {
        let sq = unit_square();
        let seg = Segment1D::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let err = sft_collection(
            Wavevector::new(0.1, 0.0, 0.0),
            &[CollectionPart::Polygon(sq), CollectionPart::Segment(seg)],
            CombineMode::Sum,
        )
        .unwrap_err();
        assert_eq!(err, TransformError::MixedCollection);
    }

    #[test]
    fn directional_rejects_zero_frequency() {
        let seg = Segment1D::new(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let err = sft_collection(
            Wavevector::new(0.0, 0.0, 0.0),
            &[CollectionPart::Segment(seg)],
            CombineMode::Directional,
        )
        .unwrap_err();
        assert_eq!(err, TransformError::ZeroFrequency);
    }

    #[test]
    fn two_coplanar_squares_sum_phases() {
        // Squares centered at x = ±1: F = 2 cos(2 pi nu_x) sinc-product.
        let mk = |cx: f64| {
            let verts = vec![
                Vec3::new(cx + 0.5, -0.5, 0.0),
                Vec3::new(cx + 0.5, 0.5, 0.0),
                Vec3::new(cx - 0.5, 0.5, 0.0),
                Vec3::new(cx - 0.5, -0.5, 0.0),
            ];
            validate_polygon(&verts).unwrap().0
        };
        let nu = Wavevector::new(0.3, 0.0, 0.0);
        let f = sft_collection(
            nu,
            &[
                CollectionPart::Polygon(mk(-1.0)),
                CollectionPart::Polygon(mk(1.0)),
            ],
            CombineMode::Sum,
        )
        .unwrap();
        let want = 2.0 * libm::cos(TAU * 0.3) * sinc(0.3);
        assert!(abs(f.re - want) < 1e-12);
        assert!(abs(f.im) < 1e-12);
    }
}
