//! Closed geodesic polygons on the unit sphere and a flow towards curves of
//! constant geodesic curvature.

use std::f64::consts::TAU;

use serde::Serialize;
use thiserror::Error;

use super::SphereConfig;

pub type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn unit(a: Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

/// Great-circle distance between unit vectors.
fn arc(a: Vec3, b: Vec3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

/// Unit tangent at `p` of the geodesic from `p` towards `q`.
fn direction(p: Vec3, q: Vec3) -> Vec3 {
    unit(add(q, scale(p, -dot(p, q))))
}

/// Point at fraction `s` along the geodesic from `a` to `b`.
fn slerp(a: Vec3, b: Vec3, s: f64) -> Vec3 {
    let theta = arc(a, b);
    if theta < 1e-15 {
        return a;
    }
    let (wa, wb) = (
        ((1.0 - s) * theta).sin() / theta.sin(),
        (s * theta).sin() / theta.sin(),
    );
    unit(add(scale(a, wa), scale(b, wb)))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("a curve needs at least 8 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {0} is not on the unit sphere")]
    OffSphere(usize),
    #[error("points {0} and {1} coincide")]
    Repeated(usize, usize),
}

/// Closed polygon of unit vectors joined by minor great-circle arcs.
///
/// Orientation matters: the enclosed region is the one on the left, with the
/// outward sphere normal as "up".
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyCurve {
    points: Vec<Vec3>,
}

impl PolyCurve {
    pub fn new(points: Vec<Vec3>) -> Result<Self, CurveError> {
        let n = points.len();
        if n < 8 {
            return Err(CurveError::TooFewPoints(n));
        }
        if let Some(k) = points.iter().position(|&p| (norm(p) - 1.0).abs() > 1e-12) {
            return Err(CurveError::OffSphere(k));
        }
        if let Some(k) = (0..n).find(|&k| points[k] == points[(k + 1) % n]) {
            return Err(CurveError::Repeated(k, (k + 1) % n));
        }
        Ok(Self { points })
    }

    /// `n` equispaced points on the circle of colatitude `phi`, counterclockwise
    /// seen from the north pole, so the cap around the north pole is enclosed.
    pub fn latitude(phi: f64, n: usize) -> Result<Self, CurveError> {
        let (s, c) = phi.sin_cos();
        Self::new(
            (0..n)
                .map(|k| {
                    let t = TAU * k as f64 / n as f64;
                    [s * t.cos(), s * t.sin(), c]
                })
                .collect(),
        )
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn at(&self, k: isize) -> Vec3 {
        let n = self.points.len() as isize;
        self.points[k.rem_euclid(n) as usize]
    }

    /// Signed exterior angle at point `i`, positive when turning left.
    pub fn turning_angle(&self, i: usize) -> f64 {
        let i = i as isize;
        let (prev, p, next) = (self.at(i - 1), self.at(i), self.at(i + 1));
        let incoming = scale(direction(p, prev), -1.0);
        let outgoing = direction(p, next);
        dot(cross(incoming, outgoing), p).atan2(dot(incoming, outgoing))
    }

    /// Length on the unit sphere.
    pub fn length(&self) -> f64 {
        (0..self.points.len() as isize)
            .map(|k| arc(self.at(k), self.at(k + 1)))
            .sum()
    }

    /// Area on the left, by Gauss–Bonnet: `2π − Σ turning angles`.
    pub fn enclosed_area(&self) -> f64 {
        TAU - (0..self.points.len())
            .map(|k| self.turning_angle(k))
            .sum::<f64>()
    }

    /// `L^c` of the enclosed region on a sphere of radius `R`.
    pub fn c_length(&self, cfg: &SphereConfig) -> f64 {
        let r = cfg.radius();
        r * self.length() - cfg.c() * r * r * self.enclosed_area()
    }

    /// Standard deviation of the `z` coordinates (zero on a latitude circle).
    pub fn z_spread(&self) -> f64 {
        let n = self.points.len() as f64;
        let mean = self.points.iter().map(|p| p[2]).sum::<f64>() / n;
        (self
            .points
            .iter()
            .map(|p| (p[2] - mean).powi(2))
            .sum::<f64>()
            / n)
            .sqrt()
    }

    /// Mean spacing on the unit sphere.
    pub fn mean_spacing(&self) -> f64 {
        self.length() / self.points.len() as f64
    }

    /// Same number of points, equally spaced along the polygon, starting at
    /// the current first point.
    fn resampled(&self) -> Vec<Vec3> {
        let n = self.points.len();
        let seg: Vec<f64> = (0..n as isize)
            .map(|k| arc(self.at(k), self.at(k + 1)))
            .collect();
        let total: f64 = seg.iter().sum();
        let h = total / n as f64;
        let mut out = Vec::with_capacity(n);
        let (mut k, mut start) = (0usize, 0.0);
        for j in 0..n {
            let target = j as f64 * h;
            while k + 1 < n && start + seg[k] < target {
                start += seg[k];
                k += 1;
            }
            let s = if seg[k] > 0.0 {
                ((target - start) / seg[k]).clamp(0.0, 1.0)
            } else {
                0.0
            };
            out.push(slerp(self.points[k], self.points[(k + 1) % n], s));
        }
        out
    }
}

/// Turning angle at `i` divided by the mean length of the two adjacent arcs;
/// geodesic curvature on the unit sphere, positive when the curve bends
/// towards the enclosed region.
pub fn discrete_geodesic_curvature(curve: &PolyCurve, i: usize) -> f64 {
    let k = i as isize;
    let h = 0.5 * (arc(curve.at(k - 1), curve.at(k)) + arc(curve.at(k), curve.at(k + 1)));
    curve.turning_angle(i) / h
}

/// Stop when `max |κ_i − c| ` falls below this.
pub const DEFAULT_FLOW_TOLERANCE: f64 = 1e-3;

/// Default step as a multiple of the squared mean spacing; explicit
/// curvature flows are stable only for steps of order `h²`.
pub const DEFAULT_STEP_FACTOR: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowResult {
    pub curve: PolyCurve,
    pub iterations: usize,
    /// `max_i |κ_i − c|` at the returned curve.
    pub max_deviation: f64,
    /// `L^c` of the enclosed region after each iteration, starting with the input.
    pub c_length_history: Vec<f64>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("step must be positive and finite, got {0}")]
    Step(f64),
    #[error("flow needs at least 32 points, got {0}")]
    TooFewPoints(usize),
    #[error("no convergence after {} iterations (max |κ − c| = {})", best.iterations, best.max_deviation)]
    NonConvergence { best: Box<FlowResult> },
}

fn curvatures(curve: &PolyCurve, radius: f64) -> Vec<f64> {
    (0..curve.len())
        .map(|i| discrete_geodesic_curvature(curve, i) / radius)
        .collect()
}

fn max_deviation(kappa: &[f64], c: f64) -> f64 {
    kappa.iter().map(|k| (k - c).abs()).fold(0.0, f64::max)
}

/// Moves points along the sphere normal towards geodesic curvature `c`.
///
/// Each point moves into the enclosed region by
/// `step · ((κ_i − κ̄) − (κ̄ − c))`, with `κ̄` the mean curvature, and the
/// polygon is then resampled to equal spacing. The fluctuation `κ_i − κ̄`
/// is smoothed as in curve shortening; the mean is driven to `c` in the
/// stable direction, which for the cap family climbs `L^c` towards the
/// constant-curvature circle. `step = None` uses
/// [`DEFAULT_STEP_FACTOR`] times the squared current mean spacing.
pub fn flow_to_cmc(
    curve: &PolyCurve,
    cfg: &SphereConfig,
    step: Option<f64>,
    max_iters: usize,
) -> Result<FlowResult, FlowError> {
    flow_to_cmc_with_tolerance(curve, cfg, step, max_iters, DEFAULT_FLOW_TOLERANCE)
}

/// [`flow_to_cmc`] stopping once `max |κ_i − c| < tolerance`.
pub fn flow_to_cmc_with_tolerance(
    curve: &PolyCurve,
    cfg: &SphereConfig,
    step: Option<f64>,
    max_iters: usize,
    tolerance: f64,
) -> Result<FlowResult, FlowError> {
    if curve.len() < 32 {
        return Err(FlowError::TooFewPoints(curve.len()));
    }
    if let Some(step) = step {
        if !(step.is_finite() && step > 0.0) {
            return Err(FlowError::Step(step));
        }
    }
    let (r, c) = (cfg.radius(), cfg.c());
    let mut current = curve.clone();
    let mut kappa = curvatures(&current, r);
    let mut deviation = max_deviation(&kappa, c);
    let mut history = vec![current.c_length(cfg)];
    let mut best = (deviation, current.clone(), 0);
    let mut iterations = 0;
    while deviation >= tolerance && iterations < max_iters {
        let mean = kappa.iter().sum::<f64>() / kappa.len() as f64;
        let step = step.unwrap_or_else(|| DEFAULT_STEP_FACTOR * current.mean_spacing().powi(2));
        let n = current.len() as isize;
        let moved: Vec<Vec3> = (0..n)
            .map(|i| {
                let p = current.at(i);
                let tangent = direction(current.at(i - 1), current.at(i + 1));
                let tangent = unit(add(tangent, scale(p, -dot(p, tangent))));
                let left = cross(p, tangent);
                let speed = (kappa[i as usize] - mean) - (mean - c);
                unit(add(p, scale(left, step * speed)))
            })
            .collect();
        current = PolyCurve {
            points: PolyCurve { points: moved }.resampled(),
        };
        kappa = curvatures(&current, r);
        deviation = max_deviation(&kappa, c);
        history.push(current.c_length(cfg));
        iterations += 1;
        if deviation < best.0 {
            best = (deviation, current.clone(), iterations);
        }
    }
    if deviation < tolerance {
        Ok(FlowResult {
            curve: current,
            iterations,
            max_deviation: deviation,
            c_length_history: history,
        })
    } else {
        let (max_deviation, curve, iterations) = best;
        history.truncate(iterations + 1);
        Err(FlowError::NonConvergence {
            best: Box::new(FlowResult {
                curve,
                iterations,
                max_deviation,
                c_length_history: history,
            }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn equator_is_geodesic() {
        let eq = PolyCurve::latitude(FRAC_PI_2, 64).unwrap();
        for i in 0..64 {
            assert!(discrete_geodesic_curvature(&eq, i).abs() < 1e-10);
        }
        assert!((eq.enclosed_area() - TAU).abs() < 1e-10);
    }

    #[test]
    fn latitude_curvature() {
        for (phi, expect) in [(FRAC_PI_4, 1.0), (FRAC_PI_3, 1.0 / 3f64.sqrt())] {
            let c = PolyCurve::latitude(phi, 256).unwrap();
            for i in [0, 17, 255] {
                assert!((discrete_geodesic_curvature(&c, i) - expect).abs() < 5e-3);
            }
        }
    }

    #[test]
    fn cap_area_and_length() {
        let c = PolyCurve::latitude(FRAC_PI_3, 512).unwrap();
        assert!((c.length() - TAU * FRAC_PI_3.sin()).abs() < 1e-4);
        assert!((c.enclosed_area() - TAU * (1.0 - FRAC_PI_3.cos())).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_curves() {
        assert_eq!(
            PolyCurve::latitude(1.0, 4),
            Err(CurveError::TooFewPoints(4))
        );
        let mut pts = PolyCurve::latitude(1.0, 8).unwrap().points().to_vec();
        pts[3] = [2.0, 0.0, 0.0];
        assert_eq!(PolyCurve::new(pts), Err(CurveError::OffSphere(3)));
        let eq = PolyCurve::latitude(FRAC_PI_2, 16).unwrap();
        assert_eq!(
            flow_to_cmc(&eq, &SphereConfig::default(), None, 10),
            Err(FlowError::TooFewPoints(16))
        );
    }

    #[test]
    fn equator_is_fixed_for_zero_c() {
        let eq = PolyCurve::latitude(FRAC_PI_2, 64).unwrap();
        let out = flow_to_cmc(&eq, &SphereConfig::default(), None, 10).unwrap();
        assert_eq!(out.iterations, 0);
        assert_eq!(out.curve, eq);
    }

    #[test]
    fn resampling_keeps_equal_spacing() {
        let c = PolyCurve::latitude(1.0, 40).unwrap();
        let r = PolyCurve {
            points: c.resampled(),
        };
        for (a, b) in c.points().iter().zip(r.points()) {
            assert!(arc(*a, *b) < 1e-12);
        }
    }
}
