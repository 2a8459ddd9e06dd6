//! Free single-particle dynamics on the ring, `i d/dt psi = -1/2 d^2/dtheta^2 psi`
//! (single-particle time unit `m R^2 / hbar`; twice the two-body clock).
//!
//! Evolution is exact in the Fourier representation: mode `k` acquires the
//! phase `e^{-i k^2 t / 2}` with no time-step error, so any target time is
//! reached in a single application.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::wavefunction::RingWavefunction;

/// Propagates a state forward by `t` (may be negative).
pub fn propagate(psi: &RingWavefunction, t: f64) -> RingWavefunction {
    let n = psi.len();
    let mut buf = psi.amplitudes().to_vec();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for (idx, v) in buf.iter_mut().enumerate() {
        let k = if idx < n / 2 {
            idx as f64
        } else {
            idx as f64 - n as f64
        };
        *v *= Complex64::new(0.0, -0.5 * k * k * t).exp();
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter_mut().for_each(|v| *v /= n as f64);
    RingWavefunction::new(buf).expect("grid size preserved")
}

/// The analytic non-dispersive rotating solution
/// `Phi(theta, t) = C0 cos(m theta - l t) e^{i(l theta - (m^2 + l^2) t / 2)}`,
/// whose density travels rigidly at angular velocity `l / m`.
///
/// The printed form solves the free ring equation exactly only for `m = 1`;
/// larger `m` is evaluated verbatim but left unverified by the test suite.
#[derive(Debug, Clone, Copy)]
pub struct QinSolution {
    pub m: u32,
    pub ell: i32,
}

impl QinSolution {
    pub fn new(m: u32, ell: i32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "the rotating reference solution requires m >= 1".to_string(),
            ));
        }
        Ok(Self { m, ell })
    }

    /// Unit-norm amplitude `C0 = 1/sqrt(pi)`.
    pub fn amplitude(&self) -> f64 {
        1.0 / PI.sqrt()
    }

    pub fn eval(&self, theta: f64, t: f64) -> Complex64 {
        let m = self.m as f64;
        let l = self.ell as f64;
        let envelope = self.amplitude() * (m * theta - l * t).cos();
        envelope * Complex64::new(0.0, l * theta - 0.5 * (m * m + l * l) * t).exp()
    }
}

/// Evaluates the rotating reference on an `n`-point grid at time `t`,
/// normalized on the grid.
pub fn qin_reference(m: u32, ell: i32, n: usize, t: f64) -> Result<RingWavefunction> {
    let solution = QinSolution::new(m, ell)?;
    RingWavefunction::from_fn(n, |theta| solution.eval(theta, t))?.normalized()
}

/// Circular-statistics and angular-momentum summary of a state.
#[derive(Debug, Clone, Copy)]
pub struct Diagnostics {
    /// Mean angle `arg <e^{i theta}>`; undefined for (near-)balanced densities.
    pub circular_mean: Option<f64>,
    /// `1 - |<e^{i theta}>|`.
    pub circular_variance: f64,
    /// `<-i d/dtheta>` from the mode occupations.
    pub angular_momentum: f64,
}

pub fn dispersion_diagnostics(psi: &RingWavefunction) -> Diagnostics {
    let dtheta = psi.dtheta();
    let resultant: Complex64 = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(j, a)| a.norm_sqr() * Complex64::new(0.0, psi.theta(j)).exp())
        .sum::<Complex64>()
        * dtheta;
    let circular_mean = if resultant.norm() < 1e-12 {
        None
    } else {
        Some(resultant.arg())
    };
    let spectrum = psi.raw_spectrum();
    let n = psi.len();
    let mut weight = 0.0;
    let mut momentum = 0.0;
    for (idx, c) in spectrum.iter().enumerate() {
        let k = if idx < n / 2 {
            idx as f64
        } else {
            idx as f64 - n as f64
        };
        let w = c.norm_sqr();
        weight += w;
        momentum += k * w;
    }
    Diagnostics {
        circular_mean,
        circular_variance: 1.0 - resultant.norm(),
        angular_momentum: momentum / weight,
    }
}

/// One recorded frame of an evolution.
#[derive(Debug, Clone)]
pub struct Frame {
    pub t: f64,
    pub density: Vec<f64>,
    pub diagnostics: Diagnostics,
}

/// Records `frames` equally spaced snapshots of the free evolution over
/// `[0, t_max]`, each propagated in one exact step from `t = 0`.
pub fn evolve_and_record(
    psi0: &RingWavefunction,
    t_max: f64,
    frames: usize,
) -> Result<Vec<Frame>> {
    if frames < 2 {
        return Err(Error::InvalidParameter(format!(
            "an evolution record needs at least 2 frames, got {frames}"
        )));
    }
    let dt = t_max / (frames - 1) as f64;
    Ok((0..frames)
        .into_par_iter()
        .map(|i| {
            let t = dt * i as f64;
            let psi = propagate(psi0, t);
            Frame {
                t,
                density: psi.density(),
                diagnostics: dispersion_diagnostics(&psi),
            }
        })
        .collect())
}
