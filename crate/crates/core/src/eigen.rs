//! Plane-wave Galerkin discretization of the relative-coordinate problem
//! `[-d^2/dx^2 + V_eff(x)] phi = (eps/2) phi` and the ground-state scans
//! over center-of-mass momentum sectors.
//!
//! The potential is an exact trigonometric polynomial, so the Galerkin
//! matrix `H_{kk'} = k^2 delta_{kk'} + v_{k-k'}` is exact up to basis
//! truncation. Even-`p` sectors use integer wavenumbers, odd-`p` sectors
//! half-integers, enforcing the `(-1)^p` boundary condition.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::domain::{effective_potential, EffectivePotential, GaugeShape, MomentumSector};
use crate::error::{Error, Result};

/// Energy window within which sectors are reported as degenerate ground
/// states of a scan.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Default basis size for a given range exponent: resolves the potential
/// bandwidth `2q` with a wide margin.
pub fn default_basis_size(q: u32) -> usize {
    (8 * q as usize + 1).max(129)
}

/// Truncated plane-wave basis for one momentum sector.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveBasis {
    sector: MomentumSector,
    wavenumbers: Vec<f64>,
}

impl PlaneWaveBasis {
    /// Builds the smallest sector-compatible basis with at least `min_size`
    /// wavenumbers: `{-K..K}` (odd count) for even `p`, half-integers
    /// `{-K-1/2..K+1/2}` (even count) for odd `p`.
    pub fn new(sector: MomentumSector, min_size: usize) -> Self {
        let wavenumbers = if sector.is_periodic() {
            let k_max = (min_size / 2) as i64;
            (-k_max..=k_max).map(|k| k as f64).collect()
        } else {
            let pairs = min_size.div_ceil(2).max(1) as i64;
            (0..pairs)
                .flat_map(|j| {
                    let k = j as f64 + 0.5;
                    [-k, k]
                })
                .collect::<Vec<_>>()
        };
        let mut wavenumbers = wavenumbers;
        wavenumbers.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Self {
            sector,
            wavenumbers,
        }
    }

    pub fn default_for(q: u32, sector: MomentumSector) -> Self {
        Self::new(sector, default_basis_size(q))
    }

    pub fn sector(&self) -> MomentumSector {
        self.sector
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn len(&self) -> usize {
        self.wavenumbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wavenumbers.is_empty()
    }
}

/// Assembles the real symmetric Galerkin matrix of the relative problem.
/// Entries with `|k - k'| > 2q` are exactly zero; the operator eigenvalue
/// `lambda` relates to the paper-scale energy by `eps = 2 lambda`.
pub fn assemble_hamiltonian(
    pot: &EffectivePotential,
    basis: &PlaneWaveBasis,
) -> Result<DMatrix<f64>> {
    if pot.sector().p != basis.sector().p {
        return Err(Error::SectorMismatch(pot.sector().p, basis.sector().p));
    }
    let bandwidth = pot.degree();
    if (basis.len() as i64) < 2 * bandwidth + 1 {
        return Err(Error::InvalidParameter(format!(
            "basis size {} cannot represent the potential bandwidth {bandwidth}",
            basis.len()
        )));
    }
    let ks = basis.wavenumbers();
    let n = ks.len();
    let mut h = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let m = (ks[i] - ks[j]).round() as i64;
            let mut entry = pot.coeff(m);
            if i == j {
                entry += ks[i] * ks[i];
            }
            h[(i, j)] = entry;
        }
    }
    Ok(h)
}

/// One eigenpair of the relative problem. `energy` is the paper-scale
/// `eps = 2 lambda`; amplitudes are the real plane-wave coefficients of a
/// unit-norm `phi(x) = sum_k a_k e^{ikx} / sqrt(2 pi)`.
#[derive(Debug, Clone)]
pub struct RelativeEigenstate {
    pub energy: f64,
    pub amplitudes: Vec<f64>,
    pub basis: PlaneWaveBasis,
    pub shape: GaugeShape,
}

impl RelativeEigenstate {
    pub fn sector(&self) -> MomentumSector {
        self.basis.sector()
    }

    /// Evaluates `phi(x)`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, k) in self.amplitudes.iter().zip(self.basis.wavenumbers()) {
            acc += a * Complex64::new(0.0, k * x).exp();
        }
        acc / (2.0 * PI).sqrt()
    }

    /// Relative probability density `|phi(x)|^2`.
    pub fn density(&self, x: f64) -> f64 {
        self.eval(x).norm_sqr()
    }

    /// Expectation of the reflection `k -> -k`; close to +-1 for
    /// non-degenerate levels.
    pub fn reflection_parity(&self) -> f64 {
        let n = self.amplitudes.len();
        (0..n)
            .map(|i| self.amplitudes[i] * self.amplitudes[n - 1 - i])
            .sum()
    }

    /// Autocorrelation `r_d = sum_k a_k a_{k+d}` of the coefficients, i.e.
    /// the Fourier coefficients of `2 pi |phi|^2`. Index `d + (L-1)`.
    pub fn mode_autocorrelation(&self) -> Vec<f64> {
        let a = &self.amplitudes;
        let l = a.len();
        let mut r = vec![0.0; 2 * l - 1];
        for i in 0..l {
            for j in 0..l {
                r[l - 1 + i - j] += a[i] * a[j];
            }
        }
        r
    }
}

/// Diagonalizes a real symmetric matrix and returns the lowest `count`
/// eigenpairs in ascending order of energy.
pub fn eigensolve(
    h: &DMatrix<f64>,
    basis: &PlaneWaveBasis,
    shape: &GaugeShape,
    count: usize,
) -> Result<Vec<RelativeEigenstate>> {
    let n = h.nrows();
    if count > n {
        return Err(Error::InvalidParameter(format!(
            "requested {count} eigenpairs from a {n}x{n} matrix"
        )));
    }
    let decomp = nalgebra::SymmetricEigen::try_new(h.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| {
            Error::EigenFailure(format!(
                "symmetric QR on a {n}x{n} matrix exceeded 100000 iterations"
            ))
        })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        decomp.eigenvalues[a]
            .partial_cmp(&decomp.eigenvalues[b])
            .unwrap()
    });
    let states = order
        .into_iter()
        .take(count)
        .map(|idx| {
            let col = decomp.eigenvectors.column(idx);
            let mut amplitudes: Vec<f64> = col.iter().cloned().collect();
            // deterministic sign: largest-magnitude component positive
            let lead = amplitudes
                .iter()
                .cloned()
                .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
            if lead < 0.0 {
                amplitudes.iter_mut().for_each(|v| *v = -*v);
            }
            RelativeEigenstate {
                energy: 2.0 * decomp.eigenvalues[idx],
                amplitudes,
                basis: basis.clone(),
                shape: *shape,
            }
        })
        .collect();
    Ok(states)
}

/// Convenience path: assemble and solve for the sector ground state.
pub fn ground_state(
    shape: GaugeShape,
    sector: MomentumSector,
    n_basis: usize,
) -> Result<RelativeEigenstate> {
    let basis = PlaneWaveBasis::new(sector, n_basis);
    let pot = effective_potential(shape, sector);
    let h = assemble_hamiltonian(&pot, &basis)?;
    let mut states = eigensolve(&h, &basis, &shape, 1)?;
    Ok(states.remove(0))
}

/// Ground-state energies over a coupling grid and a window of momentum
/// sectors, with the per-coupling minimizing sector identified.
#[derive(Debug, Clone)]
pub struct GroundStateScan {
    pub q: u32,
    pub kappas: Vec<f64>,
    pub p_values: Vec<i32>,
    /// `energies[kappa_index][p_index]`, paper-scale ground `eps`.
    pub energies: Vec<Vec<f64>>,
    /// Canonical minimizing sector per coupling: smallest `|p|` in the
    /// degenerate set, ties broken toward negative `p`.
    pub ground_p: Vec<i32>,
    /// All sectors within `DEGENERACY_TOL` of the minimum, per coupling.
    pub ground_sets: Vec<Vec<i32>>,
    /// Set when a minimizer stayed on the sector boundary after widening.
    pub inconclusive: bool,
}

impl GroundStateScan {
    pub fn ground_energy(&self, kappa_index: usize) -> f64 {
        let pi = self
            .p_values
            .iter()
            .position(|&p| p == self.ground_p[kappa_index])
            .unwrap();
        self.energies[kappa_index][pi]
    }
}

fn canonical_sector(set: &[i32]) -> i32 {
    *set.iter()
        .min_by_key(|&&p| (p.abs(), p))
        .expect("non-empty degenerate set")
}

/// Scans `(kappa, p)` cells in parallel (deterministic order) and records
/// the lowest `eps` per cell. If any coupling's minimizer lands on the edge
/// of the sector window the window is widened, up to three times, before
/// the scan is marked inconclusive.
pub fn ground_state_scan(
    q: u32,
    kappa_grid: &[f64],
    p_min: i32,
    p_max: i32,
    n_basis: usize,
) -> Result<GroundStateScan> {
    if kappa_grid.is_empty() {
        return Err(Error::InvalidParameter(
            "empty coupling grid".to_string(),
        ));
    }
    if p_min > p_max {
        return Err(Error::InvalidParameter(format!(
            "empty sector window {p_min}..{p_max}"
        )));
    }
    let mut lo = p_min;
    let mut hi = p_max;
    for attempt in 0..4 {
        let p_values: Vec<i32> = (lo..=hi).collect();
        let energies: Vec<Vec<f64>> = kappa_grid
            .par_iter()
            .map(|&kappa| {
                let shape = GaugeShape::new(q, kappa)?;
                p_values
                    .iter()
                    .map(|&p| {
                        ground_state(shape, MomentumSector::new(p), n_basis).map(|s| s.energy)
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut ground_p = Vec::with_capacity(kappa_grid.len());
        let mut ground_sets = Vec::with_capacity(kappa_grid.len());
        for row in &energies {
            let min = row.iter().cloned().fold(f64::MAX, f64::min);
            let set: Vec<i32> = p_values
                .iter()
                .zip(row)
                .filter(|(_, &e)| e <= min + DEGENERACY_TOL)
                .map(|(&p, _)| p)
                .collect();
            ground_p.push(canonical_sector(&set));
            ground_sets.push(set);
        }
        let on_boundary = lo != hi
            && ground_p.iter().any(|&p| p == lo || p == hi);
        if !on_boundary || attempt == 3 {
            return Ok(GroundStateScan {
                q,
                kappas: kappa_grid.to_vec(),
                p_values,
                energies,
                ground_p,
                ground_sets,
                inconclusive: on_boundary,
            });
        }
        lo -= 2;
        hi += 2;
    }
    unreachable!()
}

/// Analytic short-range (hard-core) reference: in the Dirac limit the
/// energies are `eps = (l^2 + p^2) / 2` with cusp eigenfunctions.
#[derive(Debug, Clone, Copy)]
pub struct DiracReference {
    pub energy: f64,
    pub ell: i32,
    pub p: i32,
}

impl DiracReference {
    /// Even cusp branch `sin(l |x| / 2)` (unnormalized).
    pub fn even(&self, x: f64) -> f64 {
        (0.5 * self.ell as f64 * x.abs()).sin()
    }

    /// Odd branch `sin(l x / 2)` (unnormalized).
    pub fn odd(&self, x: f64) -> f64 {
        (0.5 * self.ell as f64 * x).sin()
    }
}

pub fn dirac_limit_reference(ell: i32, p: i32) -> Result<DiracReference> {
    if ell == 0 {
        return Err(Error::InvalidParameter(
            "Dirac-limit reference requires a nonzero relative quantum number".to_string(),
        ));
    }
    Ok(DiracReference {
        energy: 0.5 * ((ell * ell + p * p) as f64),
        ell,
        p,
    })
}
