//! Autocorrelation slices and the Wigner / ambiguity transforms.
//!
//! The autocorrelation of a uniformly illuminated radiator set is the
//! indicator product `1[x + lag/2 inside] * 1[x - lag/2 inside]`. Its
//! slices are polygon regions obtained by clipping affine images of the
//! set against each other; the Wigner and ambiguity values are then the
//! closed-form Fourier transforms of those regions. Empty slices
//! short-circuit to an exact zero without touching the transform.

use crate::geometry::{
    apply_map, intersect, make_m_minus, make_m_plus, make_translation, PlaneFrame, Point3,
    PolygonSet, SliceMapConvention, EPS_PLANE,
};
use crate::math::{abs, Complex64, Vec3};
use crate::transforms::{sft_polygon_set_signed, SftSign, Wavevector};

/// Which point the position-slice region is re-centered on.
///
/// The default subtracts the mean geometric location of the radiating
/// collection (its area centroid), which carries the centering into the
/// ambiguity phase; `Origin` leaves the overlap region in place.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Centering {
    #[default]
    Centroid,
    Origin,
    Fixed(Vec3),
}

/// Convention switches threaded through slice extraction and transform
/// evaluation; recorded in run manifests by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Conventions {
    pub sign: SftSign,
    pub slice_maps: SliceMapConvention,
    pub centering: Centering,
}

/// A point of the four-dimensional phase space; only the coordinates
/// relevant to the queried function are set.
#[derive(Clone, Copy, Debug, Default)]
pub struct PhaseSpacePoint {
    pub position: Option<Point3>,
    pub lag: Option<Vec3>,
    pub wavevector: Option<Wavevector>,
    pub shift: Option<Wavevector>,
}

impl PhaseSpacePoint {
    pub fn at_position(x: Point3) -> Self {
        PhaseSpacePoint {
            position: Some(x),
            ..Default::default()
        }
    }

    pub fn at_lag(lag: Vec3) -> Self {
        PhaseSpacePoint {
            lag: Some(lag),
            ..Default::default()
        }
    }
}

/// A geometric slice of the autocorrelation function.
#[derive(Clone, Debug)]
pub struct SliceResult {
    /// Region in lag coordinates (lag slices) or centered position
    /// coordinates (position slices). May be empty.
    pub region: PolygonSet,
    pub source_point: PhaseSpacePoint,
}

impl SliceResult {
    pub fn area(&self) -> f64 {
        self.region.area()
    }
}

/// Autocorrelation value at one phase-space point: 1 when both
/// `x + lag/2` and `x - lag/2` lie in the set, else 0. Uniform unity
/// illumination makes the rms field product an indicator.
pub fn acf_point(set: &PolygonSet, x: Point3, lag: Vec3) -> f64 {
    let a = x + lag * 0.5;
    let b = x - lag * 0.5;
    if set.contains(a) && set.contains(b) {
        1.0
    } else {
        0.0
    }
}

/// Lag-space slice at position `x`:
/// `{ lag : x + lag/2 and x - lag/2 both inside }`.
///
/// Realized as the intersection of the two scaled images of the set;
/// empty exactly when `x` lies outside the automean support.
pub fn lag_slice(set: &PolygonSet, x: Point3) -> SliceResult {
    lag_slice_with(set, x, SliceMapConvention::HalfLag)
}

pub fn lag_slice_with(
    set: &PolygonSet,
    x: Point3,
    convention: SliceMapConvention,
) -> SliceResult {
    let source = PhaseSpacePoint::at_position(x);
    let normal = set.plane().normal;
    // Both correlation points sit on the radiator plane only if x does;
    // otherwise the slice is empty in any convention.
    if abs(set.plane().height(x)) > EPS_PLANE {
        return SliceResult {
            region: PolygonSet::empty(PlaneFrame::from_normal_offset(normal, 0.0)),
            source_point: source,
        };
    }
    let plus = apply_map(&make_m_plus(x, convention), set);
    let minus = apply_map(&make_m_minus(x, convention), set);
    let region = match (plus, minus) {
        (Ok(p), Ok(m)) => intersect(&p, &m).unwrap_or_else(|_| {
            PolygonSet::empty(PlaneFrame::from_normal_offset(normal, 0.0))
        }),
        _ => PolygonSet::empty(PlaneFrame::from_normal_offset(normal, 0.0)),
    };
    SliceResult {
        region,
        source_point: source,
    }
}

/// Position-space slice at lag `xi`: `{ x : x +- xi/2 inside }`,
/// translated so the configured center sits at the origin.
pub fn position_slice(set: &PolygonSet, lag: Vec3) -> SliceResult {
    position_slice_with(set, lag, Centering::Centroid)
}

pub fn position_slice_with(set: &PolygonSet, lag: Vec3, centering: Centering) -> SliceResult {
    let source = PhaseSpacePoint::at_lag(lag);
    let normal = set.plane().normal;
    let center = match centering {
        Centering::Centroid => set.centroid(),
        Centering::Origin => Vec3::ZERO,
        Centering::Fixed(p) => p,
    };
    let empty_frame = || {
        PlaneFrame::from_normal_offset(normal, set.plane().offset - center.dot(normal))
    };
    // An out-of-plane lag cannot keep both points on the plane.
    if abs(lag.dot(normal)) > EPS_PLANE {
        return SliceResult {
            region: PolygonSet::empty(empty_frame()),
            source_point: source,
        };
    }
    let fwd = apply_map(&make_translation(lag * -0.5 - center), set);
    let bwd = apply_map(&make_translation(lag * 0.5 - center), set);
    let region = match (fwd, bwd) {
        (Ok(a), Ok(b)) => {
            intersect(&a, &b).unwrap_or_else(|_| PolygonSet::empty(empty_frame()))
        }
        _ => PolygonSet::empty(empty_frame()),
    };
    SliceResult {
        region,
        source_point: source,
    }
}

/// A lag slice prepared for repeated transform evaluation at many
/// wavevectors (the renderer's hot path).
pub struct WignerSlice {
    pub slice: SliceResult,
    sign: SftSign,
}

impl WignerSlice {
    pub fn new(set: &PolygonSet, x: Point3, conventions: Conventions) -> Self {
        WignerSlice {
            slice: lag_slice_with(set, x, conventions.slice_maps),
            sign: conventions.sign,
        }
    }

    /// Wigner value at `nu` for the prepared position.
    pub fn eval(&self, nu: Wavevector) -> Complex64 {
        if self.slice.region.is_empty() {
            return Complex64::ZERO;
        }
        sft_polygon_set_signed(nu, &self.slice.region, self.sign)
    }

    pub fn is_empty(&self) -> bool {
        self.slice.region.is_empty()
    }
}

/// Wigner function at one phase-space point: transform of the lag slice.
/// Real up to rounding for indicator fields (the lag region is
/// point-symmetric).
pub fn wigner(set: &PolygonSet, x: Point3, nu: Wavevector) -> Complex64 {
    WignerSlice::new(set, x, Conventions::default()).eval(nu)
}

/// Ambiguity function at one (shift, lag) point: transform of the
/// position slice. `A(0, 0)` equals the set area; `A(shift, 0)` is the
/// transform of the centered aperture.
pub fn ambiguity(set: &PolygonSet, shift: Wavevector, lag: Vec3) -> Complex64 {
    ambiguity_with(set, shift, lag, Conventions::default())
}

pub fn ambiguity_with(
    set: &PolygonSet,
    shift: Wavevector,
    lag: Vec3,
    conventions: Conventions,
) -> Complex64 {
    let slice = position_slice_with(set, lag, conventions.centering);
    if slice.region.is_empty() {
        return Complex64::ZERO;
    }
    sft_polygon_set_signed(shift, &slice.region, conventions.sign)
}

/// Lag-integrated autocorrelation marginal at `x` (the area of the lag
/// slice).
pub fn marginal_r_x(set: &PolygonSet, x: Point3) -> f64 {
    lag_slice(set, x).area()
}

/// Position-integrated autocorrelation marginal at `xi` (the area of the
/// position slice).
pub fn marginal_r_xi(set: &PolygonSet, lag: Vec3) -> f64 {
    position_slice(set, lag).area()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_polygon;
    use crate::math::PI;
    use crate::transforms::sft_polygon_set;
    use alloc::vec;
    use alloc::vec::Vec;

    fn unit_square_set() -> PolygonSet {
        let verts = vec![
            Vec3::new(0.5, -0.5, 0.0),
            Vec3::new(0.5, 0.5, 0.0),
            Vec3::new(-0.5, 0.5, 0.0),
            Vec3::new(-0.5, -0.5, 0.0),
        ];
        PolygonSet::from_polygon(validate_polygon(&verts).unwrap().0)
    }

    #[test]
    fn acf_point_membership() {
        let s = unit_square_set();
        assert_eq!(acf_point(&s, Vec3::ZERO, Vec3::ZERO), 1.0);
        assert_eq!(acf_point(&s, Vec3::ZERO, Vec3::new(1.2, 0.0, 0.0)), 0.0);
        assert_eq!(acf_point(&s, Vec3::ZERO, Vec3::new(0.9, 0.9, 0.0)), 1.0);
    }

    #[test]
    fn lag_slice_of_square_center_is_double_square() {
        let s = unit_square_set();
        let slice = lag_slice(&s, Vec3::ZERO);
        assert!(abs(slice.area() - 4.0) < 1e-9);
        let (lo, hi) = slice.region.plane_bounds().unwrap();
        assert!(abs(lo.x + 1.0) < 1e-9 && abs(hi.x - 1.0) < 1e-9);
        assert!(abs(lo.y + 1.0) < 1e-9 && abs(hi.y - 1.0) < 1e-9);
    }

    #[test]
    fn lag_slice_outside_support_is_empty() {
        let s = unit_square_set();
        assert!(lag_slice(&s, Vec3::new(2.0, 0.0, 0.0)).region.is_empty());
        // Off-plane positions are outside the support too.
        assert!(lag_slice(&s, Vec3::new(0.0, 0.0, 0.3)).region.is_empty());
    }

    #[test]
    fn lag_slice_at_vertex_has_zero_area() {
        let s = unit_square_set();
        let slice = lag_slice(&s, Vec3::new(0.5, 0.5, 0.0));
        assert!(slice.area() < 1e-12);
    }

    #[test]
    fn position_slice_examples() {
        let s = unit_square_set();

        let zero = position_slice(&s, Vec3::ZERO);
        assert!(abs(zero.area() - 1.0) < 1e-9);
        // Centered on the centroid frame.
        let c = zero.region.centroid();
        assert!(c.norm() < 1e-9);

        let half = position_slice(&s, Vec3::new(0.5, 0.0, 0.0));
        assert!(abs(half.area() - 0.5) < 1e-9);

        assert!(position_slice(&s, Vec3::new(1.5, 0.0, 0.0)).region.is_empty());
        assert!(position_slice(&s, Vec3::new(0.0, 0.0, 0.1)).region.is_empty());
    }

    #[test]
    fn wigner_center_values() {
        let s = unit_square_set();
        let w0 = wigner(&s, Vec3::ZERO, Wavevector::new(0.0, 0.0, 0.0));
        assert!(abs(w0.re - 4.0) < 1e-9 && abs(w0.im) < 1e-12);

        let outside = wigner(&s, Vec3::new(3.0, 0.0, 0.0), Wavevector::new(0.2, 0.0, 0.0));
        assert_eq!(outside, Complex64::ZERO);

        // W(0, nu) of the square: transform of [-1,1]^2.
        let w = wigner(&s, Vec3::ZERO, Wavevector::new(0.3, 0.0, 0.0));
        let want = 4.0 * crate::math::sinc(2.0 * 0.3);
        assert!(abs(w.re - want) < 1e-9);
        assert!(abs(w.im) < 1e-10);
    }

    #[test]
    fn wigner_matches_slit_profile_on_thin_rectangle() {
        // A slit of width a: W(center, nu) / W(center, 0) = sinc(2 a nu).
        let a = 1.0;
        let eps = 1e-3;
        let verts = vec![
            Vec3::new(a / 2.0, -eps / 2.0, 0.0),
            Vec3::new(a / 2.0, eps / 2.0, 0.0),
            Vec3::new(-a / 2.0, eps / 2.0, 0.0),
            Vec3::new(-a / 2.0, -eps / 2.0, 0.0),
        ];
        let slit = PolygonSet::from_polygon(validate_polygon(&verts).unwrap().0);
        let w0 = wigner(&slit, Vec3::ZERO, Wavevector::new(0.0, 0.0, 0.0));
        for nu in [0.2, 0.4, 0.75] {
            let w = wigner(&slit, Vec3::ZERO, Wavevector::new(nu, 0.0, 0.0));
            let want = crate::math::sinc(2.0 * a * nu);
            assert!(abs(w.re / w0.re - want) < 1e-9);
        }
    }

    #[test]
    fn ambiguity_examples() {
        let s = unit_square_set();
        let a00 = ambiguity(&s, Wavevector::new(0.0, 0.0, 0.0), Vec3::ZERO);
        assert!(abs(a00.re - 1.0) < 1e-9 && abs(a00.im) < 1e-12);

        let a_lag = ambiguity(&s, Wavevector::new(0.0, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.0));
        assert!(abs(a_lag.re - 0.5) < 1e-9);

        let nu = (0.4, 0.75);
        let a_nu = ambiguity(&s, Wavevector::new(nu.0, nu.1, 0.0), Vec3::ZERO);
        let want = crate::math::sinc(nu.0) * crate::math::sinc(nu.1);
        assert!(abs(a_nu.re - want) < 1e-9);
        assert!(abs(a_nu.im) < 1e-10);
    }

    #[test]
    fn marginals() {
        let s = unit_square_set();
        assert!(abs(marginal_r_x(&s, Vec3::ZERO) - 4.0) < 1e-9);
        assert!(abs(marginal_r_xi(&s, Vec3::ZERO) - 1.0) < 1e-9);
        assert_eq!(marginal_r_x(&s, Vec3::new(5.0, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn lag_region_is_point_symmetric() {
        // Non-convex radiator, off-center position.
        let chevron = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(2.0, 0.0, 0.0),
            Vec3::new(1.6, 0.0, 0.0),
            Vec3::new(1.0, 0.55, 0.0),
            Vec3::new(0.4, 0.0, 0.0),
        ];
        let s = PolygonSet::from_polygon(validate_polygon(&chevron).unwrap().0);
        let x = Vec3::new(0.9, 0.35, 0.0);
        let slice = lag_slice(&s, x);
        assert!(!slice.region.is_empty());
        // Reflect the region through the origin: same area, and random
        // member points stay members.
        let reflected = apply_map(
            &crate::geometry::AffineMap {
                linear: crate::math::Mat3::diagonal(-1.0),
                translation: Vec3::ZERO,
            },
            &slice.region,
        )
        .unwrap();
        assert!(abs(reflected.area() - slice.area()) < 1e-9 * slice.area());

        // Point symmetry makes the Wigner value real.
        for nu in [
            Wavevector::new(0.7, -0.3, 0.0),
            Wavevector::new(1.3, 2.1, 0.0),
        ] {
            let w = sft_polygon_set(nu, &slice.region);
            assert!(abs(w.im) < 1e-8 * slice.area().max(1e-12));
        }
    }

    #[test]
    fn slice_and_point_views_agree() {
        let s = unit_square_set();
        let centroid = s.centroid();
        let mut violations = 0;
        let mut state: u64 = 42;
        let mut next = || {
            state = crate::math::splitmix64_mix(state.wrapping_add(0x9e3779b97f4a7c15));
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..2000 {
            let x = Vec3::new(next() * 2.4 - 1.2, next() * 2.4 - 1.2, 0.0);
            let lag = Vec3::new(next() * 3.0 - 1.5, next() * 3.0 - 1.5, 0.0);
            let direct = acf_point(&s, x, lag);
            let via_lag = lag_slice(&s, x).region.contains(lag) as u8 as f64;
            let via_pos = position_slice(&s, lag)
                .region
                .contains(x - centroid) as u8 as f64;
            if direct != via_lag || direct != via_pos {
                violations += 1;
            }
        }
        assert_eq!(violations, 0);
    }

    #[test]
    fn wigner_of_slit_closed_form_1d() {
        // 1D check through the segment transform: the lag "slice" of a
        // centered segment of length a at its midpoint spans [-a, a].
        let a = 0.8;
        let lag_seg = crate::geometry::Segment1D::new(
            Vec3::new(-a, 0.0, 0.0),
            Vec3::new(a, 0.0, 0.0),
        )
        .unwrap();
        for nu in [0.0, 0.31, 1.0 / (2.0 * a)] {
            let w = crate::transforms::sft_segment(Wavevector::new(nu, 0.0, 0.0), &lag_seg);
            let want = 2.0 * a * crate::math::sinc(2.0 * a * nu);
            assert!(abs(w.re - want) < 1e-12);
        }
        let _ = PI;
    }

    #[test]
    fn literal_slice_convention_differs_by_half_lag_scaling() {
        let s = unit_square_set();
        let x = Vec3::new(0.2, 0.1, 0.0);
        let half = lag_slice_with(&s, x, SliceMapConvention::HalfLag);
        let lit = lag_slice_with(&s, x, SliceMapConvention::Literal);
        // The literal matrices translate by -x/+x instead of -2x/+2x, so
        // the region shifts by x; areas agree.
        assert!(abs(half.area() - lit.area()) < 1e-9);
        let ch = half.region.centroid();
        let cl = lit.region.centroid();
        assert!((cl - ch - x).norm() < 1e-9);
    }

    #[test]
    fn centering_override_moves_region() {
        let verts: Vec<Vec3> = [
            (1.5, -0.5),
            (2.5, -0.5),
            (2.5, 0.5),
            (1.5, 0.5),
        ]
        .iter()
        .map(|&(x, y)| Vec3::new(x, y, 0.0))
        .collect();
        let s = PolygonSet::from_polygon(validate_polygon(&verts).unwrap().0);
        let centered = position_slice_with(&s, Vec3::ZERO, Centering::Centroid);
        assert!(centered.region.centroid().norm() < 1e-9);
        let raw = position_slice_with(&s, Vec3::ZERO, Centering::Origin);
        assert!((raw.region.centroid() - Vec3::new(2.0, 0.0, 0.0)).norm() < 1e-9);
    }
}
