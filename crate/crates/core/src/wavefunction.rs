//! Single-particle complex amplitudes on a uniform angular grid over
//! `[-pi, pi)`, with a Fourier-coefficient view used by the propagator and
//! the dispersion diagnostics.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Norm below which a state is considered collapsed and renormalization is
/// refused.
pub const NORM_COLLAPSE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RingWavefunction {
    amplitudes: Vec<Complex64>,
}

impl RingWavefunction {
    /// Wraps grid amplitudes; the grid size must be a power of two.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = amplitudes.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "grid size must be a power of two >= 2, got {n}"
            )));
        }
        Ok(Self { amplitudes })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let dtheta = 2.0 * PI / n as f64;
        Self::new((0..n).map(|j| f(-PI + dtheta * j as f64)).collect())
    }

    /// Builds the state `sum c_k e^{ik theta}` from integer modes; every
    /// mode must be resolvable on the grid.
    pub fn from_modes(n: usize, modes: &[(i64, Complex64)]) -> Result<Self> {
        let half = n as i64 / 2;
        for (k, _) in modes {
            if k.abs() >= half {
                return Err(Error::InvalidParameter(format!(
                    "mode {k} is not resolvable on a {n}-point grid"
                )));
            }
        }
        Self::from_fn(n, |theta| {
            modes
                .iter()
                .map(|(k, c)| c * Complex64::new(0.0, *k as f64 * theta).exp())
                .sum()
        })
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * PI / self.len() as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        -PI + self.dtheta() * j as f64
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.theta(j)).collect()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Trapezoidal L2 norm (the rectangle rule, exact for the periodic grid).
    pub fn norm(&self) -> f64 {
        (self
            .amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            * self.dtheta())
        .sqrt()
    }

    /// Returns a unit-norm copy; fails on norm collapse.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < NORM_COLLAPSE_TOL {
            return Err(Error::NormCollapse { norm });
        }
        Ok(Self {
            amplitudes: self.amplitudes.iter().map(|a| a / norm).collect(),
        })
    }

    /// Raw DFT bins scaled by `1/N`; bin `j` holds the coefficient of the
    /// wavenumber `j` for `j < N/2` and `j - N` otherwise, referenced to the
    /// grid origin. Used where only per-mode magnitudes or relative phases
    /// matter.
    pub fn raw_spectrum(&self) -> Vec<Complex64> {
        let n = self.len();
        let mut buf = self.amplitudes.clone();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        buf.iter_mut().for_each(|v| *v /= n as f64);
        buf
    }

    /// Coefficient of `e^{ik theta}` in the angle convention
    /// `psi(theta) = sum_k c_k e^{ik theta}`.
    pub fn mode_coefficient(&self, k: i64) -> Complex64 {
        let n = self.len() as i64;
        let spectrum = self.raw_spectrum();
        let idx = k.rem_euclid(n) as usize;
        // grid starts at -pi: realign bin phase e^{ik pi} = (-1)^k
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        spectrum[idx] * sign
    }

    /// All mode coefficients in the `e^{ik theta}` convention, indexed by
    /// wavenumber via the returned closure order `k = -N/2 .. N/2-1`.
    pub fn mode_coefficients(&self) -> Vec<(i64, Complex64)> {
        let n = self.len() as i64;
        let spectrum = self.raw_spectrum();
        (-n / 2..n / 2)
            .map(|k| {
                let idx = k.rem_euclid(n) as usize;
                let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                (k, spectrum[idx] * sign)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_non_power_of_two() {
        assert!(RingWavefunction::new(vec![Complex64::new(1.0, 0.0); 100]).is_err());
        assert!(RingWavefunction::new(vec![Complex64::new(1.0, 0.0); 1]).is_err());
    }

    #[test]
    fn norm_and_normalize() {
        let psi = RingWavefunction::from_fn(64, |_| Complex64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(psi.norm(), 2.0 * (2.0 * PI).sqrt(), epsilon = 1e-12);
        let unit = psi.normalized().unwrap();
        assert_abs_diff_eq!(unit.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn norm_collapse_reported() {
        let psi = RingWavefunction::from_fn(64, |_| Complex64::new(1e-20, 0.0)).unwrap();
        assert!(matches!(
            psi.normalized(),
            Err(Error::NormCollapse { .. })
        ));
    }

    #[test]
    fn mode_round_trip() {
        let modes = [
            (0i64, Complex64::new(0.3, 0.1)),
            (2, Complex64::new(-0.5, 0.2)),
            (-7, Complex64::new(0.0, 0.9)),
        ];
        let psi = RingWavefunction::from_modes(128, &modes).unwrap();
        for (k, c) in modes {
            let got = psi.mode_coefficient(k);
            assert_abs_diff_eq!((got - c).norm(), 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(psi.mode_coefficient(5).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn unresolvable_mode_rejected() {
        assert!(RingWavefunction::from_modes(16, &[(8, Complex64::new(1.0, 0.0))]).is_err());
    }
}
