//! Nondimensional model definition: the long-range gauge profile
//! `delta(x) = Q cos^{2q}(x/2)` and the momentum-dependent effective
//! potential `V_eff(x) = (p/2 + kappa delta(x))^2`.
//!
//! Everything here is an exact trigonometric polynomial, so the potential
//! coefficients carry no quadrature error into the eigensolver.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest cos-power exponent accepted by the coefficient routines.
pub const MAX_COS_EXPONENT: u64 = 1 << 20;

/// Tolerance on the refined gradient when locating potential minima.
pub const WELL_GRADIENT_TOL: f64 = 1e-9;

/// Documentary record of the nondimensionalization. All quantities in this
/// crate are dimensionless; these labels record what the units were.
#[derive(Debug, Clone, Copy)]
pub struct ModelUnits;

impl ModelUnits {
    /// Unit of length: the ring radius.
    pub const LENGTH: &'static str = "R";
    /// Unit of time for the two-body problem.
    pub const TIME_TWO_BODY: &'static str = "2 m R^2 / hbar";
    /// Unit of time for single-particle dynamics on the ring.
    pub const TIME_SINGLE: &'static str = "m R^2 / hbar";
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

fn check_exponent(q: u64) -> Result<()> {
    if q == 0 || q > MAX_COS_EXPONENT {
        return Err(Error::ExponentOutOfRange {
            exponent: q,
            limit: MAX_COS_EXPONENT,
        });
    }
    Ok(())
}

/// Normalization constant `Q` of `Q cos^{2q}(x/2)` such that the profile
/// integrates to one over `[-pi, pi]`.
///
/// `Q = 4^q (q!)^2 / (2 pi (2q)!)`, evaluated in log-space.
pub fn cos_power_normalization(q: u64) -> Result<f64> {
    check_exponent(q)?;
    let qf = q as f64;
    let ln_q = qf * 4f64.ln() + 2.0 * ln_gamma(qf + 1.0)
        - (2.0 * PI).ln()
        - ln_gamma(2.0 * qf + 1.0);
    Ok(ln_q.exp())
}

/// Fourier coefficients `c_m` of the normalized profile
/// `Q cos^{2q}(x/2) = sum_m c_m e^{imx}`, for `|m| <= q`.
///
/// The binomial expansion gives `c_m = Q C(2q, q+m) / 4^q`; in particular
/// `c_0 = 1/(2 pi)` for every `q`. Returned as a vector of length `2q+1`
/// with `c_m` at index `m + q`.
pub fn gauge_fourier_coefficients(q: u64) -> Result<Vec<f64>> {
    check_exponent(q)?;
    let qf = q as f64;
    let ln_q_norm = qf * 4f64.ln() + 2.0 * ln_gamma(qf + 1.0)
        - (2.0 * PI).ln()
        - ln_gamma(2.0 * qf + 1.0);
    let qi = q as i64;
    let coeffs = (-qi..=qi)
        .map(|m| {
            let ln_c = ln_q_norm + ln_binomial(2 * q, (qi + m) as u64) - qf * 4f64.ln();
            ln_c.exp()
        })
        .collect();
    Ok(coeffs)
}

/// The long-range gauge profile `kappa * delta(x)` with
/// `delta(x) = Q cos^{2q}(x/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeShape {
    q: u32,
    kappa: f64,
    normalization: f64,
}

impl GaugeShape {
    pub fn new(q: u32, kappa: f64) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coupling strength must be finite, got {kappa}"
            )));
        }
        let normalization = cos_power_normalization(q as u64)?;
        Ok(Self {
            q,
            kappa,
            normalization,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// The normalization constant `Q`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// The profile `delta(x)`, even and 2pi-periodic by construction.
    pub fn delta(&self, x: f64) -> f64 {
        self.normalization * (0.5 * x).cos().powi(2 * self.q as i32)
    }

    /// Fourier coefficients of `delta`, index `m + q` holding `c_m`.
    pub fn fourier_coefficients(&self) -> Vec<f64> {
        // q was validated in the constructor
        gauge_fourier_coefficients(self.q as u64).expect("validated exponent")
    }
}

/// Boundary-condition parity of the relative coordinate in a center-of-mass
/// momentum sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Even `p`: the relative wavefunction is 2pi-periodic.
    Periodic,
    /// Odd `p`: the relative wavefunction picks up a sign under `x -> x+2pi`.
    Antiperiodic,
}

/// Integer center-of-mass momentum sector. Single-valuedness of the full
/// wavefunction on the torus forces `p` integer and the relative boundary
/// condition `phi(x+2pi) = (-1)^p phi(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MomentumSector {
    pub p: i32,
}

impl MomentumSector {
    pub fn new(p: i32) -> Self {
        Self { p }
    }

    pub fn parity(&self) -> Parity {
        if self.p.rem_euclid(2) == 0 {
            Parity::Periodic
        } else {
            Parity::Antiperiodic
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.parity() == Parity::Periodic
    }
}

/// `V_eff(x) = (p/2 + kappa delta(x))^2` as an exact trigonometric
/// polynomial of degree `2q`. Coefficients are real and even in `m`
/// regardless of the parity of `p`.
#[derive(Debug, Clone)]
pub struct EffectivePotential {
    shape: GaugeShape,
    sector: MomentumSector,
    /// `v_m` at index `m + 2q`, for `|m| <= 2q`.
    coeffs: Vec<f64>,
}

/// Expands `(p/2 + kappa delta)^2 = p^2/4 + p kappa delta + kappa^2 delta^2`,
/// the square term by discrete self-convolution of the profile coefficients.
pub fn effective_potential(shape: GaugeShape, sector: MomentumSector) -> EffectivePotential {
    let q = shape.q() as usize;
    let kappa = shape.kappa();
    let p = sector.p as f64;
    let c = shape.fourier_coefficients();
    // build m >= 0 and mirror, so v_m = v_{-m} holds exactly
    let mut vpos = vec![0.0; 2 * q + 1];
    for (m, slot) in vpos.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..=(2 * q) {
            let j = (m + 2 * q).wrapping_sub(i);
            if (0..=2 * q).contains(&j) {
                acc += c[i] * c[j];
            }
        }
        *slot = kappa * kappa * acc;
        if m <= q {
            *slot += p * kappa * c[m + q];
        }
    }
    vpos[0] += 0.25 * p * p;
    let mut v = vec![0.0; 4 * q + 1];
    for m in 0..=(2 * q) {
        v[2 * q + m] = vpos[m];
        v[2 * q - m] = vpos[m];
    }
    EffectivePotential {
        shape,
        sector,
        coeffs: v,
    }
}

impl EffectivePotential {
    pub fn shape(&self) -> &GaugeShape {
        &self.shape
    }

    pub fn sector(&self) -> MomentumSector {
        self.sector
    }

    /// Degree of the trigonometric polynomial (`2q`).
    pub fn degree(&self) -> i64 {
        2 * self.shape.q() as i64
    }

    /// Coefficient `v_m`, zero outside the band `|m| <= 2q`.
    pub fn coeff(&self, m: i64) -> f64 {
        let d = self.degree();
        if m.abs() > d {
            0.0
        } else {
            self.coeffs[(m + d) as usize]
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let d = self.degree();
        let mut v = self.coeff(0);
        for m in 1..=d {
            v += 2.0 * self.coeff(m) * (m as f64 * x).cos();
        }
        v
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let d = self.degree();
        let mut v = 0.0;
        for m in 1..=d {
            v -= 2.0 * m as f64 * self.coeff(m) * (m as f64 * x).sin();
        }
        v
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let d = self.degree();
        let mut v = 0.0;
        for m in 1..=d {
            v -= 2.0 * (m * m) as f64 * self.coeff(m) * (m as f64 * x).cos();
        }
        v
    }
}

/// A refined local minimum of the effective potential.
#[derive(Debug, Clone, Copy)]
pub struct Well {
    /// Canonical location in `(-pi, pi]`.
    pub location: f64,
    pub value: f64,
}

/// Result of scanning the effective potential for wells.
#[derive(Debug, Clone)]
pub enum WellReport {
    /// The potential is constant to tolerance; no well structure exists.
    Flat { value: f64 },
    Wells {
        minima: Vec<Well>,
        /// Number of minima with the reflection pair `x, -x` counted once.
        count_mod_reflection: usize,
        /// `barriers[i]` is the highest potential value on the arc between
        /// minimum `i` and minimum `i+1` (cyclically), minus the higher of
        /// the two minimum values.
        barriers: Vec<f64>,
    },
}

fn canonical_angle(x: f64) -> f64 {
    // wrap to (-pi, pi]
    let mut y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI + 1e-15 {
        y = PI;
    }
    y
}

/// Locates the local minima of `V_eff` on a uniform grid, refined first by
/// parabolic interpolation and then by Newton steps on the exact gradient.
pub fn classify_wells(pot: &EffectivePotential, grid_size: usize) -> Result<WellReport> {
    if grid_size < 64 {
        return Err(Error::InvalidParameter(format!(
            "well classification needs a grid of at least 64 points, got {grid_size}"
        )));
    }
    let n = grid_size;
    let dx = 2.0 * PI / n as f64;
    let xs: Vec<f64> = (0..n).map(|j| -PI + dx * j as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| pot.eval(x)).collect();
    let vmax = vs.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = vs.iter().cloned().fold(f64::MAX, f64::min);
    if vmax - vmin < 1e-12 * vmax.abs().max(1.0) {
        return Ok(WellReport::Flat { value: vs[0] });
    }

    let mut minima: Vec<Well> = Vec::new();
    let mut min_indices: Vec<usize> = Vec::new();
    for j in 0..n {
        let prev = vs[(j + n - 1) % n];
        let next = vs[(j + 1) % n];
        if vs[j] < prev && vs[j] <= next {
            let mut x = refine_parabolic(xs[j], dx, prev, vs[j], next);
            // Newton on the exact gradient
            for _ in 0..50 {
                let g = pot.derivative(x);
                if g.abs() < WELL_GRADIENT_TOL {
                    break;
                }
                let h = pot.second_derivative(x);
                if h <= 0.0 {
                    break;
                }
                x -= g / h;
            }
            minima.push(Well {
                location: canonical_angle(x),
                value: pot.eval(x),
            });
            min_indices.push(j);
        }
    }

    if minima.is_empty() {
        // no strict minimum found despite variation: treat as flat
        return Ok(WellReport::Flat { value: vs[0] });
    }

    let count_mod_reflection = minima
        .iter()
        .filter(|w| w.location >= -WELL_GRADIENT_TOL)
        .count();

    let mut barriers = Vec::with_capacity(minima.len());
    for i in 0..min_indices.len() {
        let a = min_indices[i];
        let b = min_indices[(i + 1) % min_indices.len()];
        let mut arc_max = f64::MIN;
        if a == b {
            // single well: the barrier is the global maximum around the ring
            arc_max = vmax;
        } else {
            let mut j = a;
            loop {
                arc_max = arc_max.max(vs[j]);
                if j == b {
                    break;
                }
                j = (j + 1) % n;
            }
        }
        let floor = minima[i]
            .value
            .max(minima[(i + 1) % minima.len()].value);
        barriers.push(arc_max - floor);
    }

    Ok(WellReport::Wells {
        minima,
        count_mod_reflection,
        barriers,
    })
}

fn refine_parabolic(x0: f64, dx: f64, left: f64, mid: f64, right: f64) -> f64 {
    let denom = left - 2.0 * mid + right;
    if denom.abs() < f64::EPSILON * (left.abs() + mid.abs() + right.abs()) {
        return x0;
    }
    x0 + 0.5 * dx * (left - right) / denom
}
