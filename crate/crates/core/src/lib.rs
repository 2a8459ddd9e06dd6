//! Two gauge-coupled quantum particles on a ring.
//!
//! The library solves the relative-coordinate eigenproblem of two particles
//! whose interaction is a long-range gauge potential `kappa * delta(x1-x2)`
//! with `delta(x) = Q cos^{2q}(x/2)`, scans center-of-mass momentum sectors
//! for the true ground state, reconstructs two-body correlations, simulates
//! position measurement of one particle, propagates the surviving particle
//! freely, and evaluates binned-phasor uncertainty statistics.
//!
//! All quantities are dimensionless: lengths in units of the ring radius,
//! two-body time in units of `2 m R^2 / hbar`, single-particle time in
//! units of `m R^2 / hbar`.

pub mod domain;
pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod measurement;
pub mod phasor;
pub mod twobody;
pub mod wavefunction;

pub use domain::{
    classify_wells, cos_power_normalization, effective_potential, gauge_fourier_coefficients,
    EffectivePotential, GaugeShape, ModelUnits, MomentumSector, Parity, Well, WellReport,
};
pub use dynamics::{
    dispersion_diagnostics, evolve_and_record, propagate, qin_reference, Diagnostics, Frame,
    QinSolution,
};
pub use eigen::{
    assemble_hamiltonian, default_basis_size, dirac_limit_reference, eigensolve, ground_state,
    ground_state_scan, DiracReference, GroundStateScan, PlaneWaveBasis, RelativeEigenstate,
};
pub use error::{Error, Result};
pub use measurement::{measure_imperfect, measure_perfect, MeasurementKernel, MeasurementOutcome};
pub use phasor::{
    bin_probabilities, phasor_statistics, refined_kappa_grid, uncertainty_scan, PhasorStatistics,
    RingPartition, UncertaintyRecord,
};
pub use twobody::{classify_correlation, CorrelationLabel, CorrelationReport, TwoBodyState};
pub use wavefunction::RingWavefunction;
