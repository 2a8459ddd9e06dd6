//! Position measurement of particle 1 with finite (or vanishing)
//! uncertainty, producing the conditional state of the surviving particle.
//!
//! The kernel family `G_n(theta) = N_n cos^{2n}(theta/2)` shares the
//! normalization and Fourier structure of the gauge profile, so the
//! projection integral is evaluated exactly in Fourier space.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::domain::{cos_power_normalization, gauge_fourier_coefficients};
use crate::error::{Error, Result};
use crate::twobody::TwoBodyState;
use crate::wavefunction::RingWavefunction;

/// Smooth periodic measurement kernel centered on the measured angle.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementKernel {
    n: u32,
    center: f64,
    normalization: f64,
}

impl MeasurementKernel {
    pub fn new(n: u32, center: f64) -> Result<Self> {
        if !(-PI..PI).contains(&center) {
            return Err(Error::InvalidParameter(format!(
                "kernel center must lie in [-pi, pi), got {center}"
            )));
        }
        let normalization = cos_power_normalization(n as u64)?;
        Ok(Self {
            n,
            center,
            normalization,
        })
    }

    pub fn sharpness(&self) -> u32 {
        self.n
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// `G_n(theta - center)`, even about the center and 2pi-periodic.
    pub fn value(&self, theta: f64) -> f64 {
        self.normalization * (0.5 * (theta - self.center)).cos().powi(2 * self.n as i32)
    }

    /// Fourier coefficients `g_m` of the centered profile, `|m| <= n`,
    /// index `m + n`.
    pub fn fourier_coefficients(&self) -> Vec<f64> {
        gauge_fourier_coefficients(self.n as u64).expect("validated exponent")
    }
}

/// A conditional single-particle state together with the pre-normalization
/// norm of the projected slice (the detection likelihood density).
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub wavefunction: RingWavefunction,
    pub likelihood: f64,
}

/// Perfect position measurement at `theta1_0`: the conditional state is the
/// renormalized slice `Psi(theta1_0, theta2)`, phase included.
pub fn measure_perfect(
    state: &TwoBodyState,
    theta1_0: f64,
    n_grid: usize,
) -> Result<MeasurementOutcome> {
    let raw = RingWavefunction::from_fn(n_grid, |theta2| state.psi(theta1_0, theta2))?;
    let likelihood = raw.norm().powi(2);
    let wavefunction = raw.normalized()?;
    Ok(MeasurementOutcome {
        wavefunction,
        likelihood,
    })
}

/// Imperfect measurement: circular convolution of the two-body state with
/// the kernel along the measured coordinate,
/// `psi(theta2) = int G(theta1 - theta1_0) Psi(theta1, theta2) dtheta1`,
/// evaluated exactly in Fourier space for the band-limited kernel.
pub fn measure_imperfect(
    state: &TwoBodyState,
    kernel: &MeasurementKernel,
    n_grid: usize,
) -> Result<MeasurementOutcome> {
    let relative = state.relative();
    let p_half = 0.5 * state.sector().p as f64;
    let g = kernel.fourier_coefficients();
    let n = kernel.sharpness() as i64;
    let theta1_0 = kernel.center();

    let mut modes: Vec<(i64, Complex64)> = Vec::new();
    for (a, k) in relative
        .amplitudes
        .iter()
        .zip(relative.basis.wavenumbers())
    {
        // both p/2 + k and p/2 - k are integers in every sector
        let m = (p_half + k).round() as i64;
        if m.abs() > n {
            continue;
        }
        let mu = (p_half - k).round() as i64;
        let coeff = a * g[(m + n) as usize] * Complex64::new(0.0, m as f64 * theta1_0).exp();
        modes.push((mu, coeff));
    }
    let raw = RingWavefunction::from_modes(n_grid, &modes)?;
    // int |psi_raw|^2 = 2 pi sum |coeff|^2
    let likelihood = 2.0 * PI * modes.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>();
    let wavefunction = raw.normalized()?;
    Ok(MeasurementOutcome {
        wavefunction,
        likelihood,
    })
}
