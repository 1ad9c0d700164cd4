//! Grid and camera render kernels.
//!
//! Every grid node is an independent estimator seeded by
//! `(seed, node index)`, so results do not depend on evaluation order;
//! the serial drivers here and any parallel driver built on
//! [`render_flux_node`] produce bit-identical fields.

use alloc::vec::Vec;

use super::grid::{GridField, GridValues, UnitsTag};
use super::{transport_flux_sampled, RadiometryError, TransmitterScene};
use crate::geometry::{PlaneFrame, Point3};
use crate::math::{abs, Vec3};
use crate::rng::NodeRng;

/// Geometry of a render grid: a node at `origin + i a0 + j a1 + k a2`.
/// Lines and planes use unit-sized trailing dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub origin: Point3,
    pub axes: [Vec3; 3],
    pub dims: [usize; 3],
}

impl GridSpec {
    /// Evenly spaced nodes from `start` to `end` inclusive.
    pub fn line(start: Point3, end: Point3, n: usize) -> GridSpec {
        let step = if n > 1 {
            (end - start) / (n - 1) as f64
        } else {
            Vec3::ZERO
        };
        GridSpec {
            origin: start,
            axes: [step, Vec3::ZERO, Vec3::ZERO],
            dims: [n.max(1), 1, 1],
        }
    }

    pub fn plane(origin: Point3, step_a: Vec3, step_b: Vec3, na: usize, nb: usize) -> GridSpec {
        GridSpec {
            origin,
            axes: [step_a, step_b, Vec3::ZERO],
            dims: [na.max(1), nb.max(1), 1],
        }
    }

    pub fn volume(
        origin: Point3,
        steps: [Vec3; 3],
        dims: [usize; 3],
    ) -> GridSpec {
        GridSpec {
            origin,
            axes: steps,
            dims: [dims[0].max(1), dims[1].max(1), dims[2].max(1)],
        }
    }

    pub fn node_count(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    pub fn node_position(&self, i: usize, j: usize, k: usize) -> Point3 {
        self.origin
            + self.axes[0] * i as f64
            + self.axes[1] * j as f64
            + self.axes[2] * k as f64
    }
}

fn check_budget(
    nodes: u64,
    n_samples: u64,
    max_evaluations: Option<u64>,
) -> Result<(), RadiometryError> {
    if n_samples == 0 {
        return Err(RadiometryError::ZeroSamples);
    }
    if let Some(allowed) = max_evaluations {
        let required = nodes.saturating_mul(n_samples);
        if required > allowed {
            return Err(RadiometryError::BudgetExceeded { required, allowed });
        }
    }
    Ok(())
}

/// Flux magnitude for a single grid node. Parallel drivers fan out over
/// node indices and call this; the stream key makes the result
/// partition-independent.
pub fn render_flux_node(
    scene: &TransmitterScene,
    position: Point3,
    n_samples: u64,
    seed: u64,
    node_index: u64,
) -> f64 {
    let mut rng = NodeRng::new(seed, node_index);
    transport_flux_sampled(scene, position, n_samples, &mut rng).norm()
}

/// Renders transport-flux magnitude over a grid (line, plane or volume).
pub fn render_flux(
    scene: &TransmitterScene,
    spec: &GridSpec,
    n_samples: u64,
    seed: u64,
    max_evaluations: Option<u64>,
) -> Result<GridField, RadiometryError> {
    check_budget(spec.node_count() as u64, n_samples, max_evaluations)?;
    let mut values = Vec::with_capacity(spec.node_count());
    let mut node_index = 0u64;
    for i in 0..spec.dims[0] {
        for j in 0..spec.dims[1] {
            for k in 0..spec.dims[2] {
                let p = spec.node_position(i, j, k);
                values.push(render_flux_node(scene, p, n_samples, seed, node_index));
                node_index += 1;
            }
        }
    }
    Ok(GridField {
        origin: spec.origin,
        axes: spec.axes,
        dims: spec.dims,
        values: GridValues::Real(values),
        units: UnitsTag::FluxDensity,
    })
}

/// A narrowband radiometric pinhole camera.
#[derive(Clone, Copy, Debug)]
pub struct PinholeCamera {
    pub position: Point3,
    pub look_at: Point3,
    pub up: Vec3,
    /// Vertical field of view, radians, in (0, pi).
    pub fov: f64,
    pub resolution: [usize; 2],
}

impl PinholeCamera {
    fn basis(&self) -> (Vec3, Vec3, Vec3) {
        let fwd = (self.look_at - self.position)
            .normalized()
            .expect("camera must look somewhere");
        let right = fwd
            .cross(self.up)
            .normalized()
            .expect("up must not be parallel to the view direction");
        let up_img = right.cross(fwd);
        (fwd, right, up_img)
    }

    /// World-space ray through the center of pixel `(ix, iy)`;
    /// `iy` counts down from the top row.
    pub fn ray(&self, ix: usize, iy: usize) -> (Point3, Vec3) {
        let (fwd, right, up_img) = self.basis();
        let [w, h] = self.resolution;
        let aspect = w as f64 / h as f64;
        let tan_half = libm::tan(self.fov * 0.5);
        let sx = ((ix as f64 + 0.5) / w as f64 * 2.0 - 1.0) * tan_half * aspect;
        let sy = (1.0 - (iy as f64 + 0.5) / h as f64 * 2.0) * tan_half;
        let dir = (fwd + right * sx + up_img * sy)
            .normalized()
            .expect("finite ray");
        (self.position, dir)
    }
}

/// Renders the camera view of a single ideal-diffuse ground plane under
/// direct transmitter illumination (one bounce, unit albedo).
///
/// Each pixel carries the reflected radiance `E / pi` of the ground
/// point it sees, with `E` the incident flux against the ground normal;
/// rays that miss the plane (or see its back) are zero.
pub fn render_camera(
    scene: &TransmitterScene,
    camera: &PinholeCamera,
    ground: &PlaneFrame,
    n_samples: u64,
    seed: u64,
    max_evaluations: Option<u64>,
) -> Result<GridField, RadiometryError> {
    let [w, h] = camera.resolution;
    check_budget((w * h) as u64, n_samples, max_evaluations)?;
    if !(camera.fov > 0.0 && camera.fov < crate::math::PI) {
        return Err(RadiometryError::ZeroSamples);
    }
    let mut values = alloc::vec![0.0f64; w * h];
    for iy in 0..h {
        for ix in 0..w {
            let node_index = (iy * w + ix) as u64;
            let (origin, dir) = camera.ray(ix, iy);
            let denom = dir.dot(ground.normal);
            if abs(denom) < 1e-12 {
                continue;
            }
            let t = (ground.offset - origin.dot(ground.normal)) / denom;
            if t <= 1e-9 {
                continue; // plane behind the camera
            }
            let hit = origin + dir * t;
            let mut rng = NodeRng::new(seed, node_index);
            let flux = transport_flux_sampled(scene, hit, n_samples, &mut rng);
            // Irradiance against the ground normal (arriving side).
            let e = (-flux.dot(ground.normal)).max(0.0);
            values[iy * w + ix] = e / crate::math::PI;
        }
    }
    // Axes store the image-plane steps at unit focal distance plus the
    // forward direction; together with origin they fix the pixel rays.
    let (fwd, right, up_img) = camera.basis();
    let tan_half = libm::tan(camera.fov * 0.5);
    let aspect = w as f64 / h as f64;
    Ok(GridField {
        origin: camera.position,
        axes: [
            right * (2.0 * tan_half * aspect / w as f64),
            up_img * (-2.0 * tan_half / h as f64),
            fwd,
        ],
        dims: [h, w, 1],
        values: GridValues::Real(values),
        units: UnitsTag::Radiance,
    })
}
