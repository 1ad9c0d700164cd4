//! Fixed-size vector and matrix types plus the scalar helpers the
//! transforms lean on. Everything routes through `libm` so the crate
//! behaves identically under `no_std`.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex;

/// Complex double, the value type of every transform in this crate.
pub type Complex64 = Complex<f64>;

pub const PI: f64 = core::f64::consts::PI;
pub const TAU: f64 = core::f64::consts::TAU;

/// A 3-vector of `f64`. Used for positions (meters), lags (meters) and
/// wavevectors (inverse meters) alike; the domain newtypes wrap it.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        sqrt(self.norm_sq())
    }

    /// Unit vector along `self`; `None` when the norm underflows.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        self.scale(s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v.scale(self)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, s: f64) -> Vec3 {
        self.scale(1.0 / s)
    }
}

/// A point in an in-plane 2D frame. Boolean geometry happens here.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct P2 {
    pub x: f64,
    pub y: f64,
}

impl P2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        P2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: P2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product `self x o`.
    #[inline]
    pub fn cross(self, o: P2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        sqrt(self.dot(self))
    }
}

impl Add for P2 {
    type Output = P2;
    #[inline]
    fn add(self, o: P2) -> P2 {
        P2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for P2 {
    type Output = P2;
    #[inline]
    fn sub(self, o: P2) -> P2 {
        P2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for P2 {
    type Output = P2;
    #[inline]
    fn mul(self, s: f64) -> P2 {
        P2::new(self.x * s, self.y * s)
    }
}

/// Row-major 3x3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn diagonal(d: f64) -> Mat3 {
        Mat3 {
            rows: [[d, 0.0, 0.0], [0.0, d, 0.0], [0.0, 0.0, d]],
        }
    }

    #[inline]
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let r = &self.rows;
        Vec3::new(
            r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z,
        )
    }

    pub fn mul_mat(&self, o: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| self.rows[i][k] * o.rows[k][j]).sum();
            }
        }
        Mat3 { rows: out }
    }

    pub fn det(&self) -> f64 {
        let r = &self.rows;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let r = &self.rows;
        let inv_det = 1.0 / d;
        let cof = |a: f64, b: f64, c: f64, e: f64| (a * e - b * c) * inv_det;
        Some(Mat3 {
            rows: [
                [
                    cof(r[1][1], r[1][2], r[2][1], r[2][2]),
                    cof(r[0][2], r[0][1], r[2][2], r[2][1]),
                    cof(r[0][1], r[0][2], r[1][1], r[1][2]),
                ],
                [
                    cof(r[1][2], r[1][0], r[2][2], r[2][0]),
                    cof(r[0][0], r[0][2], r[2][0], r[2][2]),
                    cof(r[0][2], r[0][0], r[1][2], r[1][0]),
                ],
                [
                    cof(r[1][0], r[1][1], r[2][0], r[2][1]),
                    cof(r[0][1], r[0][0], r[2][1], r[2][0]),
                    cof(r[0][0], r[0][1], r[1][0], r[1][1]),
                ],
            ],
        })
    }
}

// libm-backed scalar functions. `sqrt`, `abs` and friends are exact in
// both backends; trig/exp go through libm unconditionally so `std` and
// `no_std` builds produce the same bits.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    let mut acc = 1.0;
    let mut base = if n < 0 { 1.0 / x } else { x };
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// `e^{j theta}` as a complex value.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    let (s, c) = sin_cos(theta);
    Complex::new(c, s)
}

/// Normalised sinc, `sin(pi x) / (pi x)`.
///
/// Below `|pi x| < 1e-4` the Taylor expansion is used; at that threshold
/// the truncation error is ~1e-17, below the cancellation noise of the
/// direct quotient.
#[inline]
pub fn sinc(x: f64) -> f64 {
    let px = PI * x;
    if abs(px) < 1e-4 {
        let p2 = px * px;
        1.0 - p2 / 6.0 + p2 * p2 / 120.0
    } else {
        libm::sin(px) / px
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence. Exact for polynomials of degree `2n - 1`;
/// used wherever spectral accuracy is needed (reference quadratures,
/// hemisphere integration).
pub fn gauss_legendre(n: usize) -> alloc::vec::Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = alloc::vec::Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = -p1 / dp;
            x += dx;
            if abs(dx) < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// SplitMix64 step; used to derive per-node RNG keys from a seed.
#[inline]
pub fn splitmix64(state: &mut u64) {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
}

/// SplitMix64 output function for the current state.
#[inline]
pub fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_follows_right_hand_rule() {
        let z = Vec3::new(1.0, 0.0, 0.0).cross(Vec3::new(0.0, 1.0, 0.0));
        assert_eq!(z, Vec3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn mat3_inverse_roundtrip() {
        let m = Mat3 {
            rows: [[2.0, 1.0, 0.0], [0.0, -3.0, 1.0], [1.0, 0.0, 4.0]],
        };
        let inv = m.inverse().unwrap();
        let id = m.mul_mat(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id.rows[i][j] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(abs(sinc(1.0)) < 1e-15);
        assert!(abs(sinc(0.5) - 2.0 / PI) < 1e-15);
        // Taylor branch continuous with the direct branch.
        let a = sinc(1e-4 / PI - 1e-9 / PI);
        let b = sinc(1e-4 / PI + 1e-9 / PI);
        assert!(abs(a - b) < 1e-12);
    }

    #[test]
    fn gauss_legendre_low_orders() {
        let g2 = gauss_legendre(2);
        let r = 1.0 / sqrt(3.0);
        assert!(abs(g2[0].0 + r) < 1e-14 && abs(g2[1].0 - r) < 1e-14);
        assert!(abs(g2[0].1 - 1.0) < 1e-14 && abs(g2[1].1 - 1.0) < 1e-14);

        // Weights sum to the interval length; degree-5 exactness at n=3.
        let g3 = gauss_legendre(3);
        let wsum: f64 = g3.iter().map(|&(_, w)| w).sum();
        assert!(abs(wsum - 2.0) < 1e-14);
        let int_x4: f64 = g3.iter().map(|&(x, w)| w * powi(x, 4)).sum();
        assert!(abs(int_x4 - 0.4) < 1e-14);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        assert!((powi(1.3, 7) - 1.3f64 * 1.3 * 1.3 * 1.3 * 1.3 * 1.3 * 1.3).abs() < 1e-12);
        assert!((powi(2.0, -3) - 0.125).abs() < 1e-15);
    }
}
