//! Core geometric types: polygons, segments, polyhedra and coplanar
//! polygon sets.

use alloc::vec::Vec;

use super::convex::{is_convex_ring, signed_area_2d};
use super::plane::PlaneFrame;
use super::{GeometryError, EPS_AREA, EPS_PLANE, EPS_SNAP};
use crate::math::{abs, P2, Vec3};

/// A position in 3-space, meters.
pub type Point3 = Vec3;

/// Plane-perpendicular, parallel and cross-parallel components of a
/// wavevector with respect to a polygon normal.
#[derive(Clone, Copy, Debug)]
pub struct FrameComponents {
    pub perp: Vec3,
    pub par: Vec3,
    pub cross: Vec3,
}

/// Splits `nu` into its component along `normal`, the in-plane remainder
/// and the in-plane vector rotated a quarter turn about `normal`.
///
/// `perp + par == nu` up to rounding.
#[inline]
pub fn frame_components(nu: Vec3, normal: Vec3) -> FrameComponents {
    let perp = normal * nu.dot(normal);
    let par = nu - perp;
    FrameComponents {
        perp,
        par,
        cross: normal.cross(par),
    }
}

/// A 1D radiator: a straight segment with distinct endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment1D {
    pub start: Point3,
    pub end: Point3,
}

impl Segment1D {
    pub fn new(start: Point3, end: Point3) -> Result<Self, GeometryError> {
        if !start.is_finite() || !end.is_finite() {
            return Err(GeometryError::NotFinite);
        }
        if (end - start).norm() <= EPS_SNAP {
            return Err(GeometryError::Degenerate);
        }
        Ok(Segment1D { start, end })
    }

    /// Endpoint difference (the edge lag).
    #[inline]
    pub fn delta(&self) -> Vec3 {
        self.end - self.start
    }

    /// Edge midpoint.
    #[inline]
    pub fn midpoint(&self) -> Point3 {
        (self.start + self.end) * 0.5
    }

    /// Unit vector along the segment.
    #[inline]
    pub fn direction(&self) -> Vec3 {
        self.delta().normalized().expect("validated segment")
    }

    pub fn length(&self) -> f64 {
        self.delta().norm()
    }
}

/// A simple planar polygon embedded in 3-space, wound `+1`
/// (counterclockwise) about its unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point3>,
    normal: Vec3,
    plane_offset: f64,
}

/// Validates a vertex cycle into a [`Polygon`].
///
/// The plane is fitted from the Newell normal; a clockwise input is
/// accepted and reversed, with the flip reported in the second return
/// value. The preferred normal orientation makes the largest-magnitude
/// normal component positive.
pub fn validate_polygon(vertices: &[Point3]) -> Result<(Polygon, bool), GeometryError> {
    Polygon::validate_oriented(vertices, None)
}

impl Polygon {
    /// See [`validate_polygon`]; `reference_normal`, when given, decides
    /// the normal hemisphere instead of the largest-component rule.
    pub fn validate_oriented(
        vertices: &[Point3],
        reference_normal: Option<Vec3>,
    ) -> Result<(Polygon, bool), GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        for v in vertices {
            if !v.is_finite() {
                return Err(GeometryError::NotFinite);
            }
        }
        let n = vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if (vertices[j] - vertices[i]).norm() <= EPS_SNAP {
                return Err(GeometryError::Degenerate);
            }
        }

        // Newell normal: |N| = 2 * area, direction follows the winding.
        let mut newell = Vec3::ZERO;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            newell += a.cross(b);
        }
        let area2 = newell.norm();
        if area2 * 0.5 < EPS_AREA {
            // Zero signed area is either a flat cycle or one that
            // cancels itself (bow-tie); tell them apart in a fitted
            // plane so the caller gets the right diagnosis.
            if let Some(normal) = plane_normal_from_triple(vertices) {
                let offset =
                    vertices.iter().map(|v| v.dot(normal)).sum::<f64>() / n as f64;
                if vertices
                    .iter()
                    .all(|v| abs(v.dot(normal) - offset) <= EPS_PLANE)
                {
                    let frame = PlaneFrame::from_normal_offset(normal, offset);
                    let ring: Vec<P2> =
                        vertices.iter().map(|&v| frame.to_plane(v)).collect();
                    if !ring_is_simple(&ring) {
                        return Err(GeometryError::SelfIntersecting);
                    }
                }
            }
            return Err(GeometryError::Degenerate);
        }
        let winding_normal = newell / area2;

        let preferred = match reference_normal {
            Some(r) => r,
            None => {
                let ax = abs(winding_normal.x);
                let ay = abs(winding_normal.y);
                let az = abs(winding_normal.z);
                let lead = if ax >= ay && ax >= az {
                    winding_normal.x
                } else if ay >= az {
                    winding_normal.y
                } else {
                    winding_normal.z
                };
                if lead < 0.0 {
                    -winding_normal
                } else {
                    winding_normal
                }
            }
        };
        let flip = winding_normal.dot(preferred) < 0.0;
        let normal = if flip { -winding_normal } else { winding_normal };

        let mut verts: Vec<Point3> = vertices.to_vec();
        if flip {
            verts.reverse();
        }

        let mean_offset =
            verts.iter().map(|v| v.dot(normal)).sum::<f64>() / verts.len() as f64;
        for v in &verts {
            if abs(v.dot(normal) - mean_offset) > EPS_PLANE {
                return Err(GeometryError::NonPlanar);
            }
        }

        let poly = Polygon {
            vertices: verts,
            normal,
            plane_offset: mean_offset,
        };
        if !poly.is_simple() {
            return Err(GeometryError::SelfIntersecting);
        }
        Ok((poly, flip))
    }

    /// Builds a polygon from vertices already known to form a simple
    /// counterclockwise cycle (clipper output). Recomputes the plane but
    /// skips the quadratic simplicity test.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point3>) -> Result<Polygon, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::Degenerate);
        }
        let mut newell = Vec3::ZERO;
        for i in 0..n {
            newell += vertices[i].cross(vertices[(i + 1) % n]);
        }
        let area2 = newell.norm();
        if area2 * 0.5 < EPS_AREA {
            return Err(GeometryError::Degenerate);
        }
        let normal = newell / area2;
        let plane_offset =
            vertices.iter().map(|v| v.dot(normal)).sum::<f64>() / n as f64;
        Ok(Polygon {
            vertices,
            normal,
            plane_offset,
        })
    }

    #[inline]
    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    #[inline]
    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    #[inline]
    pub fn plane_offset(&self) -> f64 {
        self.plane_offset
    }

    pub fn plane_frame(&self) -> PlaneFrame {
        PlaneFrame::from_normal_offset(self.normal, self.plane_offset)
    }

    /// Directed edges as (start, end) pairs.
    pub fn edges(&self) -> impl Iterator<Item = (Point3, Point3)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        let mut newell = Vec3::ZERO;
        for (a, b) in self.edges() {
            newell += a.cross(b);
        }
        newell.norm() * 0.5
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point3 {
        let frame = self.plane_frame();
        let ring: Vec<P2> = self.vertices.iter().map(|&v| frame.to_plane(v)).collect();
        let mut area2 = 0.0;
        let mut cx = 0.0;
        let mut cy = 0.0;
        let n = ring.len();
        for i in 0..n {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            let w = a.cross(b);
            area2 += w;
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        frame.from_plane(P2::new(cx / (3.0 * area2), cy / (3.0 * area2)))
    }

    pub fn is_convex(&self) -> bool {
        let frame = self.plane_frame();
        let ring: Vec<P2> = self.vertices.iter().map(|&v| frame.to_plane(v)).collect();
        is_convex_ring(&ring)
    }

    /// Ring in a caller-supplied frame, reversed if necessary so the
    /// result is counterclockwise in that frame.
    pub(crate) fn ring_in_frame(&self, frame: &PlaneFrame) -> Vec<P2> {
        let mut ring: Vec<P2> = self.vertices.iter().map(|&v| frame.to_plane(v)).collect();
        if signed_area_2d(&ring) < 0.0 {
            ring.reverse();
        }
        ring
    }

    /// Closed-set membership: true when the point lies on the polygon
    /// plane and inside or on the boundary.
    pub fn contains(&self, p: Point3) -> bool {
        if abs(p.dot(self.normal) - self.plane_offset) > EPS_PLANE {
            return false;
        }
        let frame = self.plane_frame();
        point_in_ring(frame.to_plane(p), &self.ring_in_frame(&frame))
    }

    /// O(n^2) proper simplicity test in the plane frame.
    fn is_simple(&self) -> bool {
        let frame = self.plane_frame();
        let ring: Vec<P2> = self.vertices.iter().map(|&v| frame.to_plane(v)).collect();
        ring_is_simple(&ring)
    }
}

/// A fitted normal from the first sufficiently non-collinear vertex
/// triple, for cycles whose Newell normal vanishes.
fn plane_normal_from_triple(vertices: &[Point3]) -> Option<Vec3> {
    let mut scale: f64 = 0.0;
    for v in vertices {
        scale = scale.max(abs(v.x)).max(abs(v.y)).max(abs(v.z));
    }
    let eps = 1e-12 * scale.max(1e-30) * scale.max(1e-30);
    for i in 1..vertices.len() {
        for j in (i + 1)..vertices.len() {
            let cross = (vertices[i] - vertices[0]).cross(vertices[j] - vertices[0]);
            if cross.norm() > eps {
                return cross.normalized();
            }
        }
    }
    None
}

fn ring_is_simple(ring: &[P2]) -> bool {
    let n = ring.len();
    for i in 0..n {
        let (a1, a2) = (ring[i], ring[(i + 1) % n]);
        for j in (i + 1)..n {
            // Skip the edge itself and the two adjacent edges.
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (b1, b2) = (ring[j], ring[(j + 1) % n]);
            if segments_touch(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    // Adjacent edges must not fold back onto each other.
    for i in 0..n {
        let prev = ring[(i + n - 1) % n];
        let cur = ring[i];
        let next = ring[(i + 1) % n];
        let u = cur - prev;
        let v = next - cur;
        let scale = u.norm() * v.norm();
        if abs(u.cross(v)) <= 1e-14 * scale && u.dot(v) < 0.0 {
            return false;
        }
    }
    true
}

/// Segment contact test, inclusive of endpoints and collinear overlap.
fn segments_touch(a1: P2, a2: P2, b1: P2, b2: P2) -> bool {
    let d1 = a2 - a1;
    let d2 = b2 - b1;
    let denom = d1.cross(d2);
    let scale = d1.norm().max(d2.norm()).max(1e-300);
    let eps = 1e-14 * scale * scale;
    let r = b1 - a1;
    if abs(denom) <= eps {
        // Parallel: overlap only if collinear with interval overlap.
        if abs(r.cross(d1)) > eps {
            return false;
        }
        let len2 = d1.dot(d1);
        let t0 = r.dot(d1) / len2;
        let t1 = (b2 - a1).dot(d1) / len2;
        let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
        return hi >= -1e-12 && lo <= 1.0 + 1e-12;
    }
    let t = r.cross(d2) / denom;
    let u = r.cross(d1) / denom;
    (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u)
}

/// Closed-set point-in-ring test (crossing number with a boundary band).
pub(crate) fn point_in_ring(p: P2, ring: &[P2]) -> bool {
    let n = ring.len();
    // Boundary band: treat points within EPS_SNAP of an edge as inside.
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let d = b - a;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            continue;
        }
        let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
        let foot = a + d * t;
        if (p - foot).norm() <= EPS_SNAP {
            return true;
        }
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (pi, pj) = (ring[i], ring[j]);
        if (pi.y > p.y) != (pj.y > p.y) {
            let x_cross = pi.x + (p.y - pi.y) / (pj.y - pi.y) * (pj.x - pi.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// A closed polyhedron given as outward-oriented polygon faces.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    faces: Vec<Polygon>,
}

impl Polyhedron {
    /// Validates faces into a polyhedron.
    ///
    /// With `assume_outward == false` each face normal is checked against
    /// the vertex centroid and flipped inward-pointing faces are
    /// repaired; this is only sound for convex bodies. Pass `true` to
    /// assert the orientation of non-convex input.
    pub fn new(
        face_vertices: &[Vec<Point3>],
        assume_outward: bool,
    ) -> Result<Self, GeometryError> {
        if face_vertices.is_empty() {
            return Err(GeometryError::Degenerate);
        }
        let mut centroid = Vec3::ZERO;
        let mut count = 0usize;
        for f in face_vertices {
            for v in f {
                centroid += *v;
                count += 1;
            }
        }
        centroid = centroid / count as f64;

        let mut faces = Vec::with_capacity(face_vertices.len());
        for f in face_vertices {
            let (poly, _) = validate_polygon(f)?;
            let outward_ok = poly.normal().dot(poly.centroid() - centroid) >= 0.0;
            if assume_outward || outward_ok {
                faces.push(poly);
            } else {
                let (fixed, _) = Polygon::validate_oriented(f, Some(-poly.normal()))?;
                faces.push(fixed);
            }
        }
        Ok(Polyhedron { faces })
    }

    #[inline]
    pub fn faces(&self) -> &[Polygon] {
        &self.faces
    }

    /// Volume via the divergence theorem over the faces.
    pub fn volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| f.centroid().dot(f.normal()) * f.area())
            .sum::<f64>()
            / 3.0
    }
}

/// A set of interior-disjoint polygons sharing one support plane.
///
/// The set is the unit of every boolean and phase-space operation; an
/// empty set is a valid result (zero area). Construction eagerly splits
/// non-convex parts into convex pieces, which every downstream boolean
/// and sampler operates on.
#[derive(Clone, Debug)]
pub struct PolygonSet {
    plane: PlaneFrame,
    parts: Vec<Polygon>,
    convex_pieces: Vec<Polygon>,
}

impl PolygonSet {
    /// Builds a set from parts, checking the shared plane and pairwise
    /// interior disjointness. Parts wound about the opposite normal are
    /// reoriented to the plane of the first part.
    pub fn new(parts: Vec<Polygon>) -> Result<Self, GeometryError> {
        let first = parts.first().ok_or(GeometryError::Degenerate)?;
        let plane = PlaneFrame::from_normal_offset(first.normal(), first.plane_offset());
        let mut oriented = Vec::with_capacity(parts.len());
        for p in &parts {
            let d = p.normal().dot(plane.normal);
            if abs(abs(d) - 1.0) > 1e-9 {
                return Err(GeometryError::PlaneMismatch);
            }
            let offset = if d < 0.0 {
                -p.plane_offset()
            } else {
                p.plane_offset()
            };
            if abs(offset - plane.offset) > EPS_PLANE {
                return Err(GeometryError::PlaneMismatch);
            }
            if d < 0.0 {
                let mut verts = p.vertices().to_vec();
                verts.reverse();
                let (fixed, _) = Polygon::validate_oriented(&verts, Some(plane.normal))?;
                oriented.push(fixed);
            } else {
                oriented.push(p.clone());
            }
        }
        let set = Self::assemble(plane, oriented)?;
        if set.parts_overlap() {
            return Err(GeometryError::SelfIntersecting);
        }
        Ok(set)
    }

    /// Single-polygon convenience constructor.
    pub fn from_polygon(p: Polygon) -> Self {
        let plane = PlaneFrame::from_normal_offset(p.normal(), p.plane_offset());
        Self::assemble(plane, alloc::vec![p]).expect("valid polygon")
    }

    /// Internal constructor for parts already known interior-disjoint.
    pub(crate) fn assemble(
        plane: PlaneFrame,
        parts: Vec<Polygon>,
    ) -> Result<Self, GeometryError> {
        let mut convex_pieces = Vec::with_capacity(parts.len());
        for p in &parts {
            if p.is_convex() {
                convex_pieces.push(p.clone());
            } else {
                convex_pieces.extend(super::convex::convex_decompose(p));
            }
        }
        Ok(PolygonSet {
            plane,
            parts,
            convex_pieces,
        })
    }

    pub fn empty(plane: PlaneFrame) -> Self {
        PolygonSet {
            plane,
            parts: Vec::new(),
            convex_pieces: Vec::new(),
        }
    }

    #[inline]
    pub fn plane(&self) -> &PlaneFrame {
        &self.plane
    }

    #[inline]
    pub fn parts(&self) -> &[Polygon] {
        &self.parts
    }

    /// The convex cover used by booleans, transforms and samplers.
    #[inline]
    pub fn convex_pieces(&self) -> &[Polygon] {
        &self.convex_pieces
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.parts.iter().map(|p| p.area()).sum()
    }

    /// Area-weighted centroid; the plane origin for an empty set.
    pub fn centroid(&self) -> Point3 {
        let total = self.area();
        if total <= 0.0 {
            return self.plane.origin();
        }
        let mut acc = Vec3::ZERO;
        for p in &self.parts {
            acc += p.centroid() * p.area();
        }
        acc / total
    }

    pub fn contains(&self, p: Point3) -> bool {
        if abs(self.plane.height(p)) > EPS_PLANE {
            return false;
        }
        self.parts.iter().any(|poly| poly.contains(p))
    }

    /// Axis-aligned bounds of the set in its own plane coordinates.
    pub fn plane_bounds(&self) -> Option<(P2, P2)> {
        let mut lo = P2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = P2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut any = false;
        for part in &self.parts {
            for &v in part.vertices() {
                let q = self.plane.to_plane(v);
                lo = P2::new(lo.x.min(q.x), lo.y.min(q.y));
                hi = P2::new(hi.x.max(q.x), hi.y.max(q.y));
                any = true;
            }
        }
        any.then_some((lo, hi))
    }

    /// Fan triangulation of the convex pieces, for samplers and
    /// quadrature. Non-convex parts triangulate through their pieces.
    pub fn triangles(&self) -> Vec<[Point3; 3]> {
        let mut out = Vec::new();
        for piece in &self.convex_pieces {
            let vs = piece.vertices();
            for k in 1..vs.len() - 1 {
                out.push([vs[0], vs[k], vs[k + 1]]);
            }
        }
        out
    }

    fn parts_overlap(&self) -> bool {
        let n = self.parts.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let a = &self.parts[i];
                let b = &self.parts[j];
                let ra = a.ring_in_frame(&self.plane);
                let rb = b.ring_in_frame(&self.plane);
                let overlap: f64 = super::clip::convex_overlap_area(&ra, &rb, &self.plane);
                if overlap > EPS_AREA.max(1e-12 * a.area().min(b.area())) {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn square_ccw() -> Vec<Point3> {
        vec![
            Vec3::new(0.5, -0.5, 0.0),
            Vec3::new(0.5, 0.5, 0.0),
            Vec3::new(-0.5, 0.5, 0.0),
            Vec3::new(-0.5, -0.5, 0.0),
        ]
    }

    #[test]
    fn unit_square_validates_with_plus_z_normal() {
        let (p, flipped) = validate_polygon(&square_ccw()).unwrap();
        assert!(!flipped);
        assert!((p.normal() - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-12);
        assert!(abs(p.area() - 1.0) < 1e-12);
        assert!(abs(p.plane_offset()) < 1e-12);
    }

    #[test]
    fn clockwise_square_is_flipped() {
        let mut verts = square_ccw();
        verts.reverse();
        let (p, flipped) = validate_polygon(&verts).unwrap();
        assert!(flipped);
        assert!((p.normal() - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-12);
        assert!(abs(p.area() - 1.0) < 1e-12);
    }

    #[test]
    fn bow_tie_is_rejected() {
        let verts = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
        ];
        assert_eq!(
            validate_polygon(&verts).unwrap_err(),
            GeometryError::SelfIntersecting
        );
    }

    #[test]
    fn non_planar_quad_is_rejected() {
        let verts = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 1e-6),
            Vec3::new(0.0, 1.0, 0.0),
        ];
        assert_eq!(validate_polygon(&verts).unwrap_err(), GeometryError::NonPlanar);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert_eq!(
            validate_polygon(&[Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)]).unwrap_err(),
            GeometryError::Degenerate
        );
        // Repeated consecutive vertex.
        let verts = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
        ];
        assert_eq!(validate_polygon(&verts).unwrap_err(), GeometryError::Degenerate);
        // Collinear (zero area).
        let verts = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(2.0, 0.0, 0.0),
        ];
        assert_eq!(validate_polygon(&verts).unwrap_err(), GeometryError::Degenerate);
    }

    #[test]
    fn frame_components_examples() {
        let n = Vec3::new(0.0, 0.0, 1.0);

        let f = frame_components(Vec3::new(0.0, 0.0, 5.0), n);
        assert!((f.perp - Vec3::new(0.0, 0.0, 5.0)).norm() < 1e-15);
        assert!(f.par.norm() < 1e-15 && f.cross.norm() < 1e-15);

        let f = frame_components(Vec3::new(3.0, 0.0, 0.0), n);
        assert!(f.perp.norm() < 1e-15);
        assert!((f.par - Vec3::new(3.0, 0.0, 0.0)).norm() < 1e-15);
        assert!((f.cross - Vec3::new(0.0, 3.0, 0.0)).norm() < 1e-15);

        let nu = Vec3::new(1.0, 2.0, 3.0);
        let f = frame_components(nu, n);
        assert!((f.perp - Vec3::new(0.0, 0.0, 3.0)).norm() < 1e-15);
        assert!((f.par - Vec3::new(1.0, 2.0, 0.0)).norm() < 1e-15);
        assert!((f.cross - Vec3::new(-2.0, 1.0, 0.0)).norm() < 1e-15);
        assert!((f.perp + f.par - nu).norm() < 1e-15);
    }

    #[test]
    fn polygon_membership() {
        let (p, _) = validate_polygon(&square_ccw()).unwrap();
        assert!(p.contains(Vec3::new(0.0, 0.0, 0.0)));
        assert!(p.contains(Vec3::new(0.5, 0.0, 0.0))); // boundary (closed)
        assert!(!p.contains(Vec3::new(0.6, 0.0, 0.0)));
        assert!(!p.contains(Vec3::new(0.0, 0.0, 0.1))); // off plane
    }

    #[test]
    fn cube_volume_is_one() {
        let v = |x: f64, y: f64, z: f64| Vec3::new(x - 0.5, y - 0.5, z - 0.5);
        let faces = vec![
            vec![v(0., 0., 0.), v(0., 1., 0.), v(1., 1., 0.), v(1., 0., 0.)], // z=-1/2
            vec![v(0., 0., 1.), v(1., 0., 1.), v(1., 1., 1.), v(0., 1., 1.)], // z=+1/2
            vec![v(0., 0., 0.), v(1., 0., 0.), v(1., 0., 1.), v(0., 0., 1.)], // y=-1/2
            vec![v(0., 1., 0.), v(0., 1., 1.), v(1., 1., 1.), v(1., 1., 0.)], // y=+1/2
            vec![v(0., 0., 0.), v(0., 0., 1.), v(0., 1., 1.), v(0., 1., 0.)], // x=-1/2
            vec![v(1., 0., 0.), v(1., 1., 0.), v(1., 1., 1.), v(1., 0., 1.)], // x=+1/2
        ];
        let cube = Polyhedron::new(&faces, false).unwrap();
        assert!(abs(cube.volume() - 1.0) < 1e-12);
        for f in cube.faces() {
            assert!(f.normal().dot(f.centroid()) > 0.0, "outward normals");
        }
    }

    #[test]
    fn polygon_set_rejects_overlap_and_plane_mismatch() {
        let (a, _) = validate_polygon(&square_ccw()).unwrap();
        let shifted: Vec<Point3> = square_ccw()
            .into_iter()
            .map(|v| v + Vec3::new(0.25, 0.0, 0.0))
            .collect();
        let (b, _) = validate_polygon(&shifted).unwrap();
        assert_eq!(
            PolygonSet::new(vec![a.clone(), b]).unwrap_err(),
            GeometryError::SelfIntersecting
        );

        let lifted: Vec<Point3> = square_ccw()
            .into_iter()
            .map(|v| v + Vec3::new(3.0, 0.0, 0.5))
            .collect();
        let (c, _) = validate_polygon(&lifted).unwrap();
        assert_eq!(
            PolygonSet::new(vec![a, c]).unwrap_err(),
            GeometryError::PlaneMismatch
        );
    }
}
