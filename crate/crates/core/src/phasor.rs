//! Binned phasor position operators `Q = sum_n e^{i theta_n} D(R_n)` over a
//! complete ring partition, their Robertson-Schrodinger statistics, and the
//! coupling-strength scan of those statistics over ground states.
//!
//! For a complete partition `Q` is unitary, so the variance definition
//! `dQ^2 = <Q'Q> - |<Q>|^2 = 1 - |<Q>|^2` keeps uncertainties real and in
//! `[0, 1]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::domain::GaugeShape;
use crate::domain::MomentumSector;
use crate::eigen::{ground_state, ground_state_scan};
use crate::error::{Error, Result};
use crate::twobody::TwoBodyState;

/// Uniform partition of `[-pi, pi)` into half-open bins with midpoint
/// representative angles.
#[derive(Debug, Clone, Copy)]
pub struct RingPartition {
    n_bins: usize,
}

impl RingPartition {
    pub fn new(n_bins: usize) -> Result<Self> {
        if n_bins < 2 {
            return Err(Error::InvalidParameter(format!(
                "a ring partition needs at least 2 bins, got {n_bins}"
            )));
        }
        Ok(Self { n_bins })
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn width(&self) -> f64 {
        2.0 * PI / self.n_bins as f64
    }

    pub fn bin_start(&self, n: usize) -> f64 {
        -PI + self.width() * n as f64
    }

    pub fn midpoint(&self, n: usize) -> f64 {
        self.bin_start(n) + 0.5 * self.width()
    }
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1]
const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329_0,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_29,
    0.362_683_783_378_361_98,
    0.362_683_783_378_361_98,
    0.313_706_645_877_887_29,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Joint bin probabilities `P_{nm}` of finding particle 1 in bin `n` and
/// particle 2 in bin `m`, row-major. The relative density is integrated
/// over bin rectangles with per-bin Gauss-Legendre quadrature; the matrix
/// is circulant in `n - m`, which is exploited.
pub fn bin_probabilities(state: &TwoBodyState, partition: &RingPartition) -> Vec<f64> {
    let n_bins = partition.n_bins();
    let w = partition.width();
    let r = state.relative().mode_autocorrelation();
    let half = (r.len() - 1) / 2;
    // rho(x) = (r_0 + 2 sum_{d>0} r_d cos(d x)) / (2 pi)
    let rho = |x: f64| {
        let mut v = r[half];
        for d in 1..=half {
            v += 2.0 * r[half + d] * (d as f64 * x).cos();
        }
        v / (2.0 * PI)
    };
    let mut per_offset = vec![0.0; n_bins];
    for (d, slot) in per_offset.iter_mut().enumerate() {
        let base = w * d as f64;
        let mut acc = 0.0;
        for (ua, wa) in GL_NODES.iter().zip(&GL_WEIGHTS) {
            let u = 0.5 * w * (ua + 1.0);
            for (vb, wb) in GL_NODES.iter().zip(&GL_WEIGHTS) {
                let v = 0.5 * w * (vb + 1.0);
                acc += wa * wb * rho(base + u - v);
            }
        }
        // Jacobian (w/2)^2 for both Gauss-Legendre maps
        *slot = acc * (0.5 * w).powi(2) / (2.0 * PI);
    }
    let mut out = vec![0.0; n_bins * n_bins];
    for i in 0..n_bins {
        for j in 0..n_bins {
            out[i * n_bins + j] = per_offset[(n_bins + i - j) % n_bins];
        }
    }
    out
}

/// Expectations, variances, and both covariance variants of the phasor pair
/// `(Q_1, Q_2)` computed from a joint bin-probability matrix.
#[derive(Debug, Clone, Copy)]
pub struct PhasorStatistics {
    pub mean1: Complex64,
    pub mean2: Complex64,
    /// `<Q'Q>` per particle; equals 1 for a complete partition.
    pub completeness1: f64,
    pub completeness2: f64,
    pub variance1: f64,
    pub variance2: f64,
    /// `<Q1 Q2> - <Q1><Q2>`.
    pub covariance_plain: Complex64,
    /// `<Q1 Q2'> - <Q1><Q2>*`.
    pub covariance_conj: Complex64,
    /// `<[Q1, Q2]>`; zero since the operators act on different particles.
    pub commutator: Complex64,
    /// `dQ1^2 dQ2^2`.
    pub rs_left: f64,
    /// Robertson-Schrodinger right side with the plain covariance.
    pub rs_right_plain: f64,
    /// Robertson-Schrodinger right side with the conjugated covariance.
    pub rs_right_conj: f64,
}

pub fn phasor_statistics(p: &[f64], partition: &RingPartition) -> Result<PhasorStatistics> {
    let n = partition.n_bins();
    if p.len() != n * n {
        return Err(Error::InvalidParameter(format!(
            "probability matrix has {} entries, expected {}",
            p.len(),
            n * n
        )));
    }
    let phases: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(0.0, partition.midpoint(i)).exp())
        .collect();
    let mut marg1 = vec![0.0; n];
    let mut marg2 = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            marg1[i] += p[i * n + j];
            marg2[j] += p[i * n + j];
        }
    }
    let mean1: Complex64 = phases.iter().zip(&marg1).map(|(ph, w)| ph * w).sum();
    let mean2: Complex64 = phases.iter().zip(&marg2).map(|(ph, w)| ph * w).sum();
    let completeness1: f64 = marg1.iter().sum();
    let completeness2: f64 = marg2.iter().sum();

    let mut q1q2 = Complex64::new(0.0, 0.0);
    let mut q2q1 = Complex64::new(0.0, 0.0);
    let mut q1q2c = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let w = p[i * n + j];
            q1q2 += phases[i] * phases[j] * w;
            q1q2c += phases[i] * phases[j].conj() * w;
        }
    }
    for j in 0..n {
        for i in 0..n {
            q2q1 += phases[j] * phases[i] * p[i * n + j];
        }
    }
    let commutator = q1q2 - q2q1;

    let variance1 = completeness1 - mean1.norm_sqr();
    let variance2 = completeness2 - mean2.norm_sqr();
    let covariance_plain = q1q2 - mean1 * mean2;
    let covariance_conj = q1q2c - mean1 * mean2.conj();
    let commutator_half = commutator / Complex64::new(0.0, 2.0);
    let rs_left = variance1 * variance2;
    let rs_right_plain = covariance_plain.norm_sqr() + commutator_half.norm_sqr();
    let rs_right_conj = covariance_conj.norm_sqr() + commutator_half.norm_sqr();

    Ok(PhasorStatistics {
        mean1,
        mean2,
        completeness1,
        completeness2,
        variance1,
        variance2,
        covariance_plain,
        covariance_conj,
        commutator,
        rs_left,
        rs_right_plain,
        rs_right_conj,
    })
}

/// One row of the uncertainty scan.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyRecord {
    pub kappa: f64,
    pub ground_p: i32,
    pub epsilon: f64,
    pub dq1: f64,
    pub dq2: f64,
    pub dq1dq2: f64,
    pub cov_plain_abs: f64,
    pub cov_conj_abs: f64,
    pub rs_left: f64,
    /// Right side with the conjugated covariance variant.
    pub rs_right: f64,
    /// Propagated from the ground-sector scan.
    pub inconclusive: bool,
}

/// Augments the coupling grid with 0.01-step refinement windows around the
/// special points `kappa = pi` and `kappa = 2 pi`.
pub fn refined_kappa_grid(kappa_grid: &[f64]) -> Vec<f64> {
    let mut grid: Vec<f64> = kappa_grid.to_vec();
    for center in [PI, 2.0 * PI] {
        for i in -10..=10 {
            grid.push(center + 0.01 * i as f64);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    grid
}

/// Evaluates phasor statistics of the ground state across a coupling grid.
/// The grid must cover at least `[0.2, 2.2 pi]`; neighborhoods of the two
/// special couplings are refined automatically.
pub fn uncertainty_scan(
    q: u32,
    kappa_grid: &[f64],
    partition: &RingPartition,
    p_min: i32,
    p_max: i32,
    n_basis: usize,
) -> Result<Vec<UncertaintyRecord>> {
    let lo = kappa_grid.iter().cloned().fold(f64::MAX, f64::min);
    let hi = kappa_grid.iter().cloned().fold(f64::MIN, f64::max);
    if kappa_grid.is_empty() || lo > 0.2 + 1e-9 || hi < 2.2 * PI - 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "uncertainty scan grid must cover [0.2, 2.2 pi], got [{lo}, {hi}]"
        )));
    }
    let grid = refined_kappa_grid(kappa_grid);
    grid.par_iter()
        .map(|&kappa| {
            let scan = ground_state_scan(q, &[kappa], p_min, p_max, n_basis)?;
            let p_star = scan.ground_p[0];
            let shape = GaugeShape::new(q, kappa)?;
            let state = TwoBodyState::new(ground_state(
                shape,
                MomentumSector::new(p_star),
                n_basis,
            )?);
            let probs = bin_probabilities(&state, partition);
            let stats = phasor_statistics(&probs, partition)?;
            let dq1 = stats.variance1.max(0.0).sqrt();
            let dq2 = stats.variance2.max(0.0).sqrt();
            Ok(UncertaintyRecord {
                kappa,
                ground_p: p_star,
                epsilon: state.energy(),
                dq1,
                dq2,
                dq1dq2: dq1 * dq2,
                cov_plain_abs: stats.covariance_plain.norm(),
                cov_conj_abs: stats.covariance_conj.norm(),
                rs_left: stats.rs_left,
                rs_right: stats.rs_right_conj,
                inconclusive: scan.inconclusive,
            })
        })
        .collect()
}
