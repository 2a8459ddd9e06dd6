//! Randomized invariants across modules, plus a sensitivity check that the
//! degeneracy assertions would actually catch a broken Hamiltonian.

use std::f64::consts::PI;

use gauge_ring::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn eigensolve_ground(shape: GaugeShape, sector: MomentumSector, n: usize) -> RelativeEigenstate {
    ground_state(shape, sector, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sector_symmetry_gives_identical_matrices(
        q in 1u32..5,
        kappa in -6.0f64..6.0,
        p in -3i32..=3,
    ) {
        let basis_a = PlaneWaveBasis::new(MomentumSector::new(p), 4 * q as usize + 1);
        let basis_b = PlaneWaveBasis::new(MomentumSector::new(-p), 4 * q as usize + 1);
        let pot_a = effective_potential(
            GaugeShape::new(q, kappa).unwrap(),
            MomentumSector::new(p),
        );
        let pot_b = effective_potential(
            GaugeShape::new(q, -kappa).unwrap(),
            MomentumSector::new(-p),
        );
        let h_a = assemble_hamiltonian(&pot_a, &basis_a).unwrap();
        let h_b = assemble_hamiltonian(&pot_b, &basis_b).unwrap();
        prop_assert_eq!(h_a, h_b);
    }

    #[test]
    fn ground_energy_is_variationally_monotone(
        q in 1u32..5,
        kappa in 0.0f64..7.0,
        p in -3i32..=3,
    ) {
        let shape = GaugeShape::new(q, kappa).unwrap();
        let sector = MomentumSector::new(p);
        let sizes = [4 * q as usize + 1, 8 * q as usize + 1, 16 * q as usize + 1];
        let eps: Vec<f64> = sizes
            .iter()
            .map(|&n| eigensolve_ground(shape, sector, n).energy)
            .collect();
        prop_assert!(eps[1] <= eps[0] + 1e-12);
        prop_assert!(eps[2] <= eps[1] + 1e-12);
    }

    #[test]
    fn eigenstates_are_normalized_with_bounded_parity(
        q in 1u32..4,
        kappa in 0.0f64..7.0,
        p in -3i32..=3,
    ) {
        let state = eigensolve_ground(
            GaugeShape::new(q, kappa).unwrap(),
            MomentumSector::new(p),
            65,
        );
        let norm: f64 = state.amplitudes.iter().map(|a| a * a).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        prop_assert!(state.reflection_parity().abs() <= 1.0 + 1e-9);
    }

    #[test]
    fn free_evolution_revives_at_four_pi(
        seed in 0u64..1000,
        t_extra in 0.0f64..10.0,
    ) {
        // band-limited pseudo-random state from the seed
        let mut modes = vec![];
        let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        for k in -5i64..=5 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            modes.push((k, Complex64::new(re, im)));
        }
        let psi0 = RingWavefunction::from_modes(64, &modes).unwrap().normalized().unwrap();
        let revived = propagate(&propagate(&psi0, t_extra), 4.0 * PI);
        let direct = propagate(&psi0, t_extra);
        let overlap: Complex64 = revived
            .amplitudes()
            .iter()
            .zip(direct.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>() * psi0.dtheta();
        prop_assert!((overlap.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn measurement_outcomes_are_normalized_with_positive_likelihood(
        kappa in 0.5f64..7.0,
        n in 1u32..40,
        center in -3.1f64..3.1,
    ) {
        let state = TwoBodyState::new(eigensolve_ground(
            GaugeShape::new(1, kappa).unwrap(),
            MomentumSector::new(-2),
            129,
        ));
        let kernel = MeasurementKernel::new(n, center).unwrap();
        let out = measure_imperfect(&state, &kernel, 256).unwrap();
        prop_assert!((out.wavefunction.norm() - 1.0).abs() < 1e-12);
        prop_assert!(out.likelihood > 0.0);
    }
}

#[test]
fn chirality_favors_negative_p_at_positive_coupling() {
    for kappa in [2.0, 4.0, 6.0] {
        let shape = GaugeShape::new(1, kappa).unwrap();
        let minus = eigensolve_ground(shape, MomentumSector::new(-2), 129).energy;
        let plus = eigensolve_ground(shape, MomentumSector::new(2), 129).energy;
        assert!(minus < plus, "kappa={kappa}: {minus} vs {plus}");
    }
}

/// Rotating the joint probability matrix by one bin in both indices leaves
/// the magnitude statistics unchanged.
#[test]
fn phasor_statistics_are_rotation_invariant() {
    let state = TwoBodyState::new(eigensolve_ground(
        GaugeShape::new(1, 3.8).unwrap(),
        MomentumSector::new(-2),
        129,
    ));
    let partition = RingPartition::new(64).unwrap();
    let n = partition.n_bins();
    let probs = bin_probabilities(&state, &partition);
    let mut rotated = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            rotated[((i + 1) % n) * n + (j + 1) % n] = probs[i * n + j];
        }
    }
    let a = phasor_statistics(&probs, &partition).unwrap();
    let b = phasor_statistics(&rotated, &partition).unwrap();
    assert!((a.mean1.norm() - b.mean1.norm()).abs() < 1e-12);
    assert!((a.variance1 - b.variance1).abs() < 1e-12);
    assert!((a.variance2 - b.variance2).abs() < 1e-12);
    assert!((a.covariance_plain.norm() - b.covariance_plain.norm()).abs() < 1e-12);
    assert!((a.covariance_conj.norm() - b.covariance_conj.norm()).abs() < 1e-12);
}

/// The degeneracy checks are sensitive: a 1e-3 perturbation of a single
/// Hamiltonian entry visibly splits the kappa=pi degeneracy.
#[test]
fn perturbed_hamiltonian_breaks_the_degeneracy() {
    let shape = GaugeShape::new(1, PI).unwrap();
    let sector = MomentumSector::new(0);
    let basis = PlaneWaveBasis::new(sector, 129);
    let pot = effective_potential(shape, sector);
    let mut h = assemble_hamiltonian(&pot, &basis).unwrap();
    let mid = h.nrows() / 2;
    h[(mid, mid)] += 1e-3;
    let perturbed = eigensolve(&h, &basis, &shape, 1).unwrap()[0].energy;
    let reference = eigensolve_ground(shape, MomentumSector::new(-2), 129).energy;
    let split = (perturbed - reference).abs();
    assert!(
        split > 1e-5,
        "perturbation went undetected: split {split}"
    );
}
