//! The c-weighted length `L^c(Ω) = length(∂Ω) − c · area(Ω)` on the round
//! sphere, latitude sweepouts and their min-max value.
//!
//! For the cap of colatitude `φ` on a sphere of radius `R`,
//! `L^c = 2πR sin φ − 2πcR²(1 − cos φ)`, maximized where `cot φ = cR` with
//! value `2πR(√(1 + c²R²) − cR)`.

mod curve;

use std::f64::consts::{PI, TAU};

use serde::Serialize;
use thiserror::Error;

pub use curve::{
    discrete_geodesic_curvature, flow_to_cmc, flow_to_cmc_with_tolerance, CurveError, FlowError,
    FlowResult, PolyCurve, Vec3, DEFAULT_FLOW_TOLERANCE, DEFAULT_STEP_FACTOR,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("radius must be positive and finite, got {0}")]
    Radius(f64),
    #[error("c must be non-negative and finite, got {0}")]
    Curvature(f64),
    #[error("polar angle {0} outside [0, π]")]
    PolarAngle(f64),
    #[error("a sweepout needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("sweepout parameters must increase strictly from 0 to 1")]
    Parameters,
    #[error("sweepout must start empty and end with the whole sphere")]
    Endpoints,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereConfig {
    radius: f64,
    c: f64,
}

impl SphereConfig {
    pub fn new(radius: f64, c: f64) -> Result<Self, SweepError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(SweepError::Radius(radius));
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(SweepError::Curvature(c));
        }
        Ok(Self { radius, c })
    }

    /// Unit sphere with the given `c`.
    pub fn unit(c: f64) -> Result<Self, SweepError> {
        Self::new(1.0, c)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

impl Default for SphereConfig {
    fn default() -> Self {
        Self {
            radius: 1.0,
            c: 0.0,
        }
    }
}

/// The cap `{colatitude ≤ φ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CapRegion {
    phi: f64,
}

impl CapRegion {
    pub fn new(phi: f64) -> Result<Self, SweepError> {
        if !(0.0..=PI).contains(&phi) {
            return Err(SweepError::PolarAngle(phi));
        }
        Ok(Self { phi })
    }

    pub fn empty() -> Self {
        Self { phi: 0.0 }
    }

    pub fn full() -> Self {
        Self { phi: PI }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn boundary_length(&self, cfg: &SphereConfig) -> f64 {
        TAU * cfg.radius * self.phi.sin()
    }

    pub fn area(&self, cfg: &SphereConfig) -> f64 {
        TAU * cfg.radius * cfg.radius * (1.0 - self.phi.cos())
    }
}

pub fn c_length(region: &CapRegion, cfg: &SphereConfig) -> f64 {
    region.boundary_length(cfg) - cfg.c * region.area(cfg)
}

/// `d/dφ L^c = 2πR cos φ − 2πcR² sin φ`.
pub fn c_length_derivative(phi: f64, cfg: &SphereConfig) -> f64 {
    let r = cfg.radius;
    TAU * r * phi.cos() - TAU * cfg.c * r * r * phi.sin()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweepout {
    samples: Vec<(f64, CapRegion)>,
}

impl Sweepout {
    pub fn new(samples: Vec<(f64, CapRegion)>) -> Result<Self, SweepError> {
        if samples.len() < 3 {
            return Err(SweepError::TooFewSamples(samples.len()));
        }
        let increasing = samples.windows(2).all(|w| w[0].0 < w[1].0);
        let first = samples[0];
        let last = samples[samples.len() - 1];
        if !increasing || first.0 != 0.0 || last.0 != 1.0 {
            return Err(SweepError::Parameters);
        }
        if first.1.phi != 0.0 || last.1.phi != PI {
            return Err(SweepError::Endpoints);
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, CapRegion)] {
        &self.samples
    }
}

/// `n` caps with `φ_k = πk/(n − 1)` at `t_k = k/(n − 1)`.
pub fn latitude_sweepout(n: usize) -> Result<Sweepout, SweepError> {
    if n < 3 {
        return Err(SweepError::TooFewSamples(n));
    }
    let last = (n - 1) as f64;
    let samples = (0..n)
        .map(|k| {
            let t = if k + 1 == n { 1.0 } else { k as f64 / last };
            let phi = if k + 1 == n { PI } else { PI * k as f64 / last };
            (t, CapRegion { phi })
        })
        .collect();
    Sweepout::new(samples)
}

/// `(t, L^c)` along the sweepout.
pub fn c_length_profile(sweep: &Sweepout, cfg: &SphereConfig) -> Vec<(f64, f64)> {
    sweep
        .samples
        .iter()
        .map(|(t, r)| (*t, c_length(r, cfg)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinmaxEstimate {
    pub value: f64,
    pub argmax_phi: f64,
}

/// Golden-section refinement tolerance on `φ`.
pub const GOLDEN_TOLERANCE: f64 = 1e-10;

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    (a + b) / 2.0
}

/// Largest `L^c` along the sweepout, refined between the neighbours of the
/// best sample.
pub fn minmax_estimate(sweep: &Sweepout, cfg: &SphereConfig) -> MinmaxEstimate {
    let s = &sweep.samples;
    let best = (0..s.len())
        .max_by(|&a, &b| c_length(&s[a].1, cfg).total_cmp(&c_length(&s[b].1, cfg)))
        .expect("sweepouts are non-empty");
    let lo = s[best.saturating_sub(1)].1.phi;
    let hi = s[(best + 1).min(s.len() - 1)].1.phi;
    let f = |phi: f64| c_length(&CapRegion { phi }, cfg);
    let phi = golden_max(f, lo, hi, GOLDEN_TOLERANCE);
    let (value, argmax_phi) = [(f(phi), phi), (f(s[best].1.phi), s[best].1.phi)]
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("two candidates");
    MinmaxEstimate { value, argmax_phi }
}

/// `2πR(√(1 + c²R²) − cR)` at `cot φ = cR`.
pub fn closed_form_minmax(cfg: &SphereConfig) -> MinmaxEstimate {
    let cr = cfg.c * cfg.radius;
    MinmaxEstimate {
        value: TAU * cfg.radius * ((1.0 + cr * cr).sqrt() - cr),
        argmax_phi: (1.0f64).atan2(cr),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn cap_values() {
        let unit1 = SphereConfig::unit(1.0).unwrap();
        assert_eq!(c_length(&CapRegion::empty(), &unit1), 0.0);
        let eq = CapRegion::new(PI / 2.0).unwrap();
        assert!((c_length(&eq, &SphereConfig::default()) - TAU).abs() < 1e-15);
        let v = c_length(&CapRegion::new(FRAC_PI_4).unwrap(), &unit1);
        assert!((v - TAU * (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn sweepout_grid() {
        let s = latitude_sweepout(3).unwrap();
        let phis: Vec<f64> = s.samples().iter().map(|(_, r)| r.phi()).collect();
        assert_eq!(phis, vec![0.0, PI / 2.0, PI]);
        let s = latitude_sweepout(1001).unwrap();
        let gap = s
            .samples()
            .windows(2)
            .map(|w| w[1].1.phi() - w[0].1.phi())
            .fold(0.0, f64::max);
        assert!((gap - PI / 1000.0).abs() < 1e-12);
        assert_eq!(latitude_sweepout(2), Err(SweepError::TooFewSamples(2)));
    }

    #[test]
    fn minmax_matches_closed_form() {
        let sweep = latitude_sweepout(101).unwrap();
        for c in [0.0, 0.5, 1.0, 2.0] {
            let cfg = SphereConfig::unit(c).unwrap();
            let est = minmax_estimate(&sweep, &cfg);
            let exact = closed_form_minmax(&cfg);
            assert!((est.value - exact.value).abs() < 1e-8, "c = {c}");
            assert!((est.argmax_phi - exact.argmax_phi).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(SphereConfig::new(0.0, 1.0).is_err());
        assert!(SphereConfig::new(1.0, -1.0).is_err());
        assert!(CapRegion::new(4.0).is_err());
    }
}
