//! Reconstruction of the full two-body wavefunction
//! `Psi(theta1, theta2) = e^{ip(theta1+theta2)/2} phi(theta1-theta2) / sqrt(2 pi)`
//! from a relative eigenstate, with density accessors and the
//! correlated / anti-correlated classification.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::eigen::RelativeEigenstate;
use crate::error::{Error, Result};
use crate::domain::MomentumSector;

/// Peak-to-trough ratio below which a relative density is reported as
/// uncorrelated instead of being forced into a binary label.
pub const UNCORRELATED_RATIO: f64 = 1.05;

/// A stationary two-body state on the torus. The center-of-mass factor is
/// normalized so the total norm is one and both marginals are uniform.
#[derive(Debug, Clone)]
pub struct TwoBodyState {
    relative: RelativeEigenstate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationLabel {
    /// Relative density peaks at `|x| < pi/2`: particles found together.
    Correlated,
    /// Relative density peaks at `|x| >= pi/2`: particles found apart.
    AntiCorrelated,
    /// Near-uniform relative density.
    Uncorrelated,
}

#[derive(Debug, Clone, Copy)]
pub struct CorrelationReport {
    pub label: CorrelationLabel,
    /// Location of the relative-density peak in `[-pi, pi)`.
    pub peak_location: f64,
    /// Localization strength `max |phi|^2 / min |phi|^2`.
    pub peak_to_trough: f64,
}

impl TwoBodyState {
    pub fn new(relative: RelativeEigenstate) -> Self {
        Self { relative }
    }

    pub fn relative(&self) -> &RelativeEigenstate {
        &self.relative
    }

    pub fn sector(&self) -> MomentumSector {
        self.relative.sector()
    }

    pub fn energy(&self) -> f64 {
        self.relative.energy
    }

    /// `Psi(theta1, theta2)`.
    pub fn psi(&self, theta1: f64, theta2: f64) -> Complex64 {
        let p = self.sector().p as f64;
        let com = Complex64::new(0.0, 0.5 * p * (theta1 + theta2)).exp();
        com * self.relative.eval(theta1 - theta2) / (2.0 * PI).sqrt()
    }

    /// `|Psi|^2` on an `n x n` grid, `theta1` varying along rows
    /// (row index i holds `theta1 = -pi + 2 pi i / n`).
    pub fn density_grid(&self, n: usize) -> Result<Vec<f64>> {
        if n < 64 {
            return Err(Error::InvalidParameter(format!(
                "two-body density grid needs at least 64 points per axis, got {n}"
            )));
        }
        let dx = 2.0 * PI / n as f64;
        // |Psi|^2 depends only on theta1 - theta2, which lives on the same grid
        let rho: Vec<f64> = (0..n)
            .map(|j| self.relative.density(dx * j as f64) / (2.0 * PI))
            .collect();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = rho[(n + i - j) % n];
            }
        }
        Ok(out)
    }

    /// Sampled relative density `(x, |phi(x)|^2)` on a uniform grid.
    pub fn relative_density_profile(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        if n < 64 {
            return Err(Error::InvalidParameter(format!(
                "relative density profile needs at least 64 points, got {n}"
            )));
        }
        Ok((0..n)
            .map(|j| {
                let x = -PI + 2.0 * PI * j as f64 / n as f64;
                (x, self.relative.density(x))
            })
            .collect())
    }
}

/// Locates the relative-density peak and labels the state. Peak location is
/// refined by parabolic interpolation on a fine grid.
pub fn classify_correlation(state: &TwoBodyState) -> CorrelationReport {
    let n = 4096;
    let dx = 2.0 * PI / n as f64;
    let rho: Vec<f64> = (0..n)
        .map(|j| state.relative.density(-PI + dx * j as f64))
        .collect();
    let (mut jmax, mut max) = (0, f64::MIN);
    let mut min = f64::MAX;
    for (j, &v) in rho.iter().enumerate() {
        if v > max {
            max = v;
            jmax = j;
        }
        min = min.min(v);
    }
    let left = rho[(jmax + n - 1) % n];
    let right = rho[(jmax + 1) % n];
    let denom = left - 2.0 * max + right;
    let mut peak = -PI + dx * jmax as f64;
    if denom.abs() > f64::EPSILON * max.abs() {
        peak += 0.5 * dx * (left - right) / denom;
    }
    // wrap to [-pi, pi)
    let peak = (peak + PI).rem_euclid(2.0 * PI) - PI;
    let ratio = if min > 0.0 { max / min } else { f64::INFINITY };
    let label = if ratio < UNCORRELATED_RATIO {
        CorrelationLabel::Uncorrelated
    } else if peak.abs() < 0.5 * PI {
        CorrelationLabel::Correlated
    } else {
        CorrelationLabel::AntiCorrelated
    };
    CorrelationReport {
        label,
        peak_location: peak,
        peak_to_trough: ratio,
    }
}
