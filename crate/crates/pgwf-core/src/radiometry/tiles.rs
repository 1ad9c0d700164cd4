//! Marginal projection tiles of the 4D bilinear functions.
//!
//! Each bilinear function (autocorrelation, Wigner, ambiguity) lives on
//! a 4D domain: two in-plane coordinates per conjugate variable. The
//! tiles are its three 2D marginal projections: the two "diagonal"
//! projections onto complete domains (position-position,
//! wavevector-wavevector, ...) and the hybrid projection sharing one
//! axis of each. Diagonal projections are measurable quantities and
//! should be real and nonnegative up to sampling noise, which is why
//! their worst imaginary part and minimum are reported alongside.

use alloc::vec::Vec;

use super::grid::{GridField, GridValues, UnitsTag};
use super::{RadiometryError, TransmitterScene};
use crate::math::{abs, Complex64, P2, Vec3};
use crate::phase_space::{acf_point, position_slice_with, WignerSlice};
use crate::rng::NodeRng;
use crate::transforms::{sft_polygon_set_signed, Wavevector};

/// Which bilinear function to project.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BilinearKind {
    Acf,
    Wigner,
    Ambiguity,
}

/// Sampling plan for the projections.
#[derive(Clone, Copy, Debug)]
pub struct TileSampling {
    /// Pixels per tile edge.
    pub resolution: usize,
    /// Total function evaluations (split into batches that reuse one
    /// autocorrelation slice each).
    pub n_samples: u64,
    pub seed: u64,
    /// Half-width of the wavevector domain, inverse meters; defaults to
    /// `2 / lambda` when `None`.
    pub wavevector_band: Option<f64>,
}

impl Default for TileSampling {
    fn default() -> Self {
        TileSampling {
            resolution: 64,
            n_samples: 200_000,
            seed: 0,
            wavevector_band: None,
        }
    }
}

/// Health metrics of a diagonal tile.
#[derive(Clone, Copy, Debug, Default)]
pub struct TileStats {
    pub max_abs_im: f64,
    pub min_value: f64,
}

/// The three projections of one bilinear function.
#[derive(Clone, Debug)]
pub struct TileSet {
    /// Projection onto the first complete domain (positions for the ACF
    /// and Wigner function, wavevector shifts for the ambiguity).
    pub first_diagonal: GridField,
    /// Projection onto the second complete domain.
    pub second_diagonal: GridField,
    /// Hybrid projection sharing the first axis of each domain.
    pub hybrid: GridField,
    pub first_stats: TileStats,
    pub second_stats: TileStats,
}

struct Box2 {
    lo: P2,
    hi: P2,
}

impl Box2 {
    fn area(&self) -> f64 {
        (self.hi.x - self.lo.x) * (self.hi.y - self.lo.y)
    }

    fn sample(&self, u: f64, v: f64) -> P2 {
        P2::new(
            self.lo.x + u * (self.hi.x - self.lo.x),
            self.lo.y + v * (self.hi.y - self.lo.y),
        )
    }

    fn bin(&self, p: P2, res: usize) -> Option<(usize, usize)> {
        let fx = (p.x - self.lo.x) / (self.hi.x - self.lo.x);
        let fy = (p.y - self.lo.y) / (self.hi.y - self.lo.y);
        if !(0.0..=1.0).contains(&fx) || !(0.0..=1.0).contains(&fy) {
            return None;
        }
        Some((
            ((fx * res as f64) as usize).min(res - 1),
            ((fy * res as f64) as usize).min(res - 1),
        ))
    }

    fn pixel_area(&self, res: usize) -> f64 {
        self.area() / (res * res) as f64
    }
}

fn padded(lo: P2, hi: P2, pad: f64) -> Box2 {
    let dx = (hi.x - lo.x).max(1e-12) * pad;
    let dy = (hi.y - lo.y).max(1e-12) * pad;
    Box2 {
        lo: P2::new(lo.x - dx, lo.y - dy),
        hi: P2::new(hi.x + dx, hi.y + dy),
    }
}

struct Accum {
    res: usize,
    values: Vec<Complex64>,
}

impl Accum {
    fn new(res: usize) -> Self {
        Accum {
            res,
            values: alloc::vec![Complex64::ZERO; res * res],
        }
    }

    fn deposit(&mut self, bin: Option<(usize, usize)>, f: Complex64) {
        if let Some((ix, iy)) = bin {
            self.values[iy * self.res + ix] += f;
        }
    }

    /// Normalize into a tile: `scale` converts a per-sample sum into the
    /// marginal integral density.
    fn finish(self, scale: f64) -> (Vec<f64>, TileStats) {
        let mut stats = TileStats {
            max_abs_im: 0.0,
            min_value: f64::INFINITY,
        };
        let out: Vec<f64> = self
            .values
            .into_iter()
            .map(|c| {
                let c = c * scale;
                stats.max_abs_im = stats.max_abs_im.max(abs(c.im));
                stats.min_value = stats.min_value.min(c.re);
                c.re
            })
            .collect();
        (out, stats)
    }
}

/// Projects the chosen bilinear function of the scene onto its three
/// marginal tiles by Monte-Carlo integration.
pub fn project_tiles(
    scene: &TransmitterScene,
    kind: BilinearKind,
    sampling: &TileSampling,
) -> Result<TileSet, RadiometryError> {
    if sampling.n_samples == 0 {
        return Err(RadiometryError::ZeroSamples);
    }
    if sampling.resolution == 0 {
        return Err(RadiometryError::ZeroSamples);
    }
    let res = sampling.resolution;
    let frame = *scene.radiators().plane();
    let automean = scene.automean();
    let (am_lo, am_hi) = automean.plane_bounds().expect("non-empty support");
    let (rad_lo, rad_hi) = scene.radiators().plane_bounds().expect("non-empty set");
    let band = sampling
        .wavevector_band
        .unwrap_or(2.0 / scene.wavelength());

    let x_box = padded(am_lo, am_hi, 0.05);
    let lag_extent = P2::new(rad_hi.x - rad_lo.x, rad_hi.y - rad_lo.y);
    let lag_box = padded(
        P2::new(-lag_extent.x, -lag_extent.y),
        P2::new(lag_extent.x, lag_extent.y),
        0.05,
    );
    let nu_box = Box2 {
        lo: P2::new(-band, -band),
        hi: P2::new(band, band),
    };

    // (first domain, second domain) boxes per kind.
    let (box_a, box_b) = match kind {
        BilinearKind::Acf => (&x_box, &lag_box),
        BilinearKind::Wigner => (&x_box, &nu_box),
        BilinearKind::Ambiguity => (&nu_box, &lag_box),
    };

    let mut acc_a = Accum::new(res);
    let mut acc_b = Accum::new(res);
    let mut acc_h = Accum::new(res);

    let mut rng = NodeRng::new(sampling.seed, 0x711e5);
    let batch: u64 = 8;
    let n_outer = (sampling.n_samples / batch).max(1);
    let mut n_total: u64 = 0;

    // The position-slice centering shifts position tiles into the
    // centroid frame; sample x around the radiators but record deposits
    // consistently in raw plane coordinates.
    for _ in 0..n_outer {
        match kind {
            BilinearKind::Acf => {
                for _ in 0..batch {
                    let pa = box_a.sample(rng.next_f64(), rng.next_f64());
                    let pb = box_b.sample(rng.next_f64(), rng.next_f64());
                    let x = frame.from_plane(pa);
                    let lag = frame.basis_u * pb.x + frame.basis_v * pb.y;
                    let f = Complex64::new(acf_point(scene.radiators(), x, lag), 0.0);
                    acc_a.deposit(box_a.bin(pa, res), f);
                    acc_b.deposit(box_b.bin(pb, res), f);
                    acc_h.deposit(hybrid_bin(box_a, box_b, pa, pb, res), f);
                    n_total += 1;
                }
            }
            BilinearKind::Wigner => {
                // One lag slice per position, many wavevectors.
                let pa = box_a.sample(rng.next_f64(), rng.next_f64());
                let x = frame.from_plane(pa);
                let slice = WignerSlice::new(scene.radiators(), x, scene.conventions());
                for _ in 0..batch {
                    let pb = box_b.sample(rng.next_f64(), rng.next_f64());
                    let nu = Wavevector(frame.basis_u * pb.x + frame.basis_v * pb.y);
                    let f = slice.eval(nu);
                    acc_a.deposit(box_a.bin(pa, res), f);
                    acc_b.deposit(box_b.bin(pb, res), f);
                    acc_h.deposit(hybrid_bin(box_a, box_b, pa, pb, res), f);
                    n_total += 1;
                }
            }
            BilinearKind::Ambiguity => {
                // One position slice per lag, many shifts.
                let pb = box_b.sample(rng.next_f64(), rng.next_f64());
                let lag = frame.basis_u * pb.x + frame.basis_v * pb.y;
                let slice = position_slice_with(
                    scene.radiators(),
                    lag,
                    scene.conventions().centering,
                );
                for _ in 0..batch {
                    let pa = box_a.sample(rng.next_f64(), rng.next_f64());
                    let shift = Wavevector(frame.basis_u * pa.x + frame.basis_v * pa.y);
                    let f = if slice.region.is_empty() {
                        Complex64::ZERO
                    } else {
                        sft_polygon_set_signed(
                            shift,
                            &slice.region,
                            scene.conventions().sign,
                        )
                    };
                    acc_a.deposit(box_a.bin(pa, res), f);
                    acc_b.deposit(box_b.bin(pb, res), f);
                    acc_h.deposit(hybrid_bin(box_a, box_b, pa, pb, res), f);
                    n_total += 1;
                }
            }
        }
    }

    let measure = box_a.area() * box_b.area();
    let nf = n_total as f64;
    // Marginal over the other domain: E[f 1_pixel] V4 / pixel_area.
    let scale_a = measure / (nf * box_a.pixel_area(res));
    let scale_b = measure / (nf * box_b.pixel_area(res));
    let scale_h = measure
        / (nf
            * ((box_a.hi.x - box_a.lo.x) / res as f64)
            * ((box_b.hi.x - box_b.lo.x) / res as f64));

    let (vals_a, stats_a) = acc_a.finish(scale_a);
    let (vals_b, stats_b) = acc_b.finish(scale_b);
    let (vals_h, _) = acc_h.finish(scale_h);

    let (units_a, units_b) = match kind {
        BilinearKind::Acf => (UnitsTag::Area, UnitsTag::Area),
        BilinearKind::Wigner => (UnitsTag::Area, UnitsTag::SpectralDensity),
        BilinearKind::Ambiguity => (UnitsTag::SpectralDensity, UnitsTag::Area),
    };

    let tile = |b: &Box2, vals: Vec<f64>, units: UnitsTag, position_domain: bool| {
        let step_x = (b.hi.x - b.lo.x) / res as f64;
        let step_y = (b.hi.y - b.lo.y) / res as f64;
        let origin = if position_domain {
            frame.from_plane(P2::new(b.lo.x + 0.5 * step_x, b.lo.y + 0.5 * step_y))
        } else {
            frame.basis_u * (b.lo.x + 0.5 * step_x) + frame.basis_v * (b.lo.y + 0.5 * step_y)
        };
        GridField {
            origin,
            axes: [frame.basis_u * step_x, frame.basis_v * step_y, Vec3::ZERO],
            dims: [res, res, 1],
            values: GridValues::Real(vals),
            units,
        }
    };

    // Only the x domain is absolute; lag and wavevector domains are
    // difference/frequency vectors mapped through the plane basis alone.
    let a_is_position = !matches!(kind, BilinearKind::Ambiguity);
    Ok(TileSet {
        first_diagonal: tile(box_a, vals_a, units_a, a_is_position),
        second_diagonal: tile(box_b, vals_b, units_b, false),
        hybrid: tile(box_a, vals_h, UnitsTag::Dimensionless, a_is_position),
        first_stats: stats_a,
        second_stats: stats_b,
    })
}

fn hybrid_bin(
    box_a: &Box2,
    box_b: &Box2,
    pa: P2,
    pb: P2,
    res: usize,
) -> Option<(usize, usize)> {
    // Hybrid tile: first axis of each domain.
    let fx = (pa.x - box_a.lo.x) / (box_a.hi.x - box_a.lo.x);
    let fy = (pb.x - box_b.lo.x) / (box_b.hi.x - box_b.lo.x);
    if !(0.0..=1.0).contains(&fx) || !(0.0..=1.0).contains(&fy) {
        return None;
    }
    Some((
        ((fx * res as f64) as usize).min(res - 1),
        ((fy * res as f64) as usize).min(res - 1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{validate_polygon, PolygonSet};
    use alloc::vec;

    fn unit_square_scene() -> TransmitterScene {
        let verts = vec![
            Vec3::new(0.5, -0.5, 0.0),
            Vec3::new(0.5, 0.5, 0.0),
            Vec3::new(-0.5, 0.5, 0.0),
            Vec3::new(-0.5, -0.5, 0.0),
        ];
        let set = PolygonSet::from_polygon(validate_polygon(&verts).unwrap().0);
        TransmitterScene::new(set, 0.5).unwrap()
    }

    #[test]
    fn acf_position_tile_has_automean_support() {
        let scene = unit_square_scene();
        let tiles = project_tiles(
            &scene,
            BilinearKind::Acf,
            &TileSampling {
                resolution: 24,
                n_samples: 120_000,
                seed: 3,
                wavevector_band: None,
            },
        )
        .unwrap();
        let vals = tiles.first_diagonal.real_values().unwrap();
        let res = 24;
        // Center pixel well inside the square: R_x there is near 4.
        let center = vals[(res / 2) * res + res / 2];
        assert!(center > 1.0, "center marginal {center}");
        // Corner pixels outside the padded square support: ~0.
        assert!(vals[0] < 0.05 * center);
        assert!(vals[res * res - 1] < 0.05 * center);
        // ACF is an indicator: no imaginary part at all.
        assert_eq!(tiles.first_stats.max_abs_im, 0.0);
    }

    #[test]
    fn tile_errors() {
        let scene = unit_square_scene();
        assert!(matches!(
            project_tiles(
                &scene,
                BilinearKind::Wigner,
                &TileSampling {
                    n_samples: 0,
                    ..Default::default()
                }
            ),
            Err(RadiometryError::ZeroSamples)
        ));
    }
}
