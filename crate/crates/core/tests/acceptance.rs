//! Release acceptance suite. One test per criterion; each prints a single
//! `criterion NN [PASS|FAIL]` line with the measured numbers before asserting,
//! so a red criterion still reports what was actually observed.

use std::f64::consts::PI;

use gauge_ring::*;
use num_complex::Complex64;

fn report(id: u32, ok: bool, detail: &str) -> bool {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id:02} [{verdict}]: {detail}");
    ok
}

fn ground_eps(q: u32, kappa: f64, p: i32) -> f64 {
    let shape = GaugeShape::new(q, kappa).unwrap();
    ground_state(shape, MomentumSector::new(p), default_basis_size(q))
        .unwrap()
        .energy
}

fn ground_two_body(q: u32, kappa: f64, p: i32) -> TwoBodyState {
    let shape = GaugeShape::new(q, kappa).unwrap();
    TwoBodyState::new(
        ground_state(shape, MomentumSector::new(p), default_basis_size(q)).unwrap(),
    )
}

/// Ground sectors p=0 and p=-2 are exactly degenerate at kappa=pi (q=1),
/// where cos^4(x/2) and sin^4(x/2) wells are translates of each other, and
/// their energy curves cross there.
#[test]
fn criterion_01_degeneracy_at_pi() {
    let diff = (ground_eps(1, PI, 0) - ground_eps(1, PI, -2)).abs();
    let before = ground_eps(1, PI - 0.05, 0) - ground_eps(1, PI - 0.05, -2);
    let after = ground_eps(1, PI + 0.05, 0) - ground_eps(1, PI + 0.05, -2);
    let ok = diff < 1e-9 && before < 0.0 && after > 0.0;
    assert!(report(
        1,
        ok,
        &format!("eps(p=0)-eps(p=-2) at pi: {diff:.2e} (tol 1e-9); crossing {before:+.2e} -> {after:+.2e}")
    ));
}

/// The ground state carries center-of-mass momentum p=-2 at both reference
/// couplings kappa=3.8 and kappa=6.3 (q=1, full sector window, canonical
/// tie-breaking).
#[test]
fn criterion_02_chiral_ground_momentum() {
    let scan = ground_state_scan(1, &[3.8, 6.3], -6, 6, 129).unwrap();
    let even_minimizer = |i: usize| -> i32 {
        scan.p_values
            .iter()
            .zip(&scan.energies[i])
            .filter(|(p, _)| *p % 2 == 0)
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(&p, _)| p)
            .unwrap()
    };
    let ok = scan.ground_p == [-2, -2];
    assert!(report(
        2,
        ok,
        &format!(
            "ground p at kappa=3.8: {} and kappa=6.3: {} (required -2, -2); \
             even-sector minimizers {} and {}; at 6.3 the odd sector p=-1 lies \
             {:.1e} below p=-2 (oracle-confirmed)",
            scan.ground_p[0],
            scan.ground_p[1],
            even_minimizer(0),
            even_minimizer(1),
            ground_eps(1, 6.3, -2) - ground_eps(1, 6.3, -1),
        )
    ));
}

/// The p=-2 ground state is correlated (relative-density peak inside
/// |x| < pi/2) at kappa=3.8 and anti-correlated at kappa=6.3.
#[test]
fn criterion_03_correlation_classification() {
    let near = classify_correlation(&ground_two_body(1, 3.8, -2));
    let far = classify_correlation(&ground_two_body(1, 6.3, -2));
    let ok = near.label == CorrelationLabel::Correlated
        && far.label == CorrelationLabel::AntiCorrelated;
    assert!(report(
        3,
        ok,
        &format!(
            "kappa=3.8: {:?} (peak {:+.3}), kappa=6.3: {:?} (peak {:+.3})",
            near.label, near.peak_location, far.label, far.peak_location
        )
    ));
}

/// The coupling at which the ground state first leaves p=0, scanned with
/// step 0.02 on [0, 2 pi], is pi +- 0.05 for q=1 and moves up (or out of the
/// window entirely) as q grows.
#[test]
fn criterion_04_range_dependence() {
    let grid: Vec<f64> = (0..=315).map(|i| 0.02 * i as f64).collect();
    let threshold = |q: u32| -> Option<f64> {
        let scan = ground_state_scan(q, &grid, -6, 6, default_basis_size(q)).unwrap();
        scan.kappas
            .iter()
            .zip(&scan.ground_p)
            .find(|(_, &p)| p != 0)
            .map(|(&k, _)| k)
    };
    let k1 = threshold(1);
    let k4 = threshold(4);
    let k32 = threshold(32);
    let ok = matches!(k1, Some(k) if (k - PI).abs() < 0.05)
        && match (k4, k1) {
            (None, _) => true,
            (Some(a), Some(b)) => a > b,
            _ => false,
        }
        && match (k32, k4) {
            (None, _) => true,
            (Some(a), Some(b)) => a > b,
            (Some(_), None) => false,
        };
    assert!(report(
        4,
        ok,
        &format!("first non-zero-p coupling: q=1 {k1:?}, q=4 {k4:?}, q=32 {k32:?}")
    ));
}

/// At kappa=2, p=0 the ground energy increases strictly with q and stays
/// below the short-range limit 1/2 exposed by the analytic reference.
#[test]
fn criterion_05_dirac_limit_trend() {
    let eps: Vec<f64> = [8u32, 16, 32, 64]
        .iter()
        .map(|&q| ground_eps(q, 2.0, 0))
        .collect();
    let limit = dirac_limit_reference(1, 0).unwrap().energy;
    let ok = eps.windows(2).all(|w| w[1] > w[0])
        && eps.iter().all(|&e| e < limit)
        && limit == 0.5;
    assert!(report(
        5,
        ok,
        &format!("eps(q=8,16,32,64) = {eps:?}, strictly increasing toward {limit}")
    ));
}

fn density_second_harmonic_phase(psi: &RingWavefunction) -> f64 {
    let dtheta = psi.dtheta();
    psi.amplitudes()
        .iter()
        .enumerate()
        .map(|(j, a)| a.norm_sqr() * Complex64::new(0.0, 2.0 * psi.theta(j)).exp() * dtheta)
        .sum::<Complex64>()
        .arg()
}

/// Free propagation reproduces the travelling localized solution (m=1, l=1)
/// to machine precision and its density peak moves at angular velocity 1.
#[test]
fn criterion_06_travelling_solution_oracle() {
    let n = 256;
    let psi0 = qin_reference(1, 1, n, 0.0).unwrap();
    let mut max_err = 0.0f64;
    for t in [PI / 4.0, PI, 4.0 * PI] {
        let evolved = propagate(&psi0, t);
        let exact = qin_reference(1, 1, n, t).unwrap();
        // compare densities plus global-phase-aligned amplitudes
        let overlap: Complex64 = evolved
            .amplitudes()
            .iter()
            .zip(exact.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let phase = overlap / overlap.norm();
        for (a, b) in evolved.amplitudes().iter().zip(exact.amplitudes()) {
            max_err = max_err.max((a * phase - b).norm());
        }
    }
    let dt = 0.5;
    let moved = propagate(&psi0, dt);
    let mut dphi = density_second_harmonic_phase(&moved) - density_second_harmonic_phase(&psi0);
    while dphi > PI {
        dphi -= 2.0 * PI;
    }
    while dphi < -PI {
        dphi += 2.0 * PI;
    }
    let velocity = dphi / (2.0 * dt);
    let ok = max_err < 1e-10 && (velocity - 1.0).abs() < 1e-6;
    assert!(report(
        6,
        ok,
        &format!("max pointwise error {max_err:.2e} (tol 1e-10); peak velocity {velocity:.9}")
    ));
}

/// A sharp measurement (kernel n=50) produces a state that disperses over
/// one roundtrip while a maximally fuzzy one (n=1) does not: the n=1 circular
/// variance stays within 1.5x its initial value, the n=50 one exceeds 3x,
/// and the n=50 variance growth exceeds the n=1 growth at every sampled
/// frame after t=0.2 (the exact-revival endpoint t=2 pi excluded, where both
/// growths vanish identically).
#[test]
fn criterion_07_measurement_dispersion_contrast() {
    let state = ground_two_body(1, 3.8, -2);
    let run = |n: u32| -> Vec<Frame> {
        let kernel = MeasurementKernel::new(n, 0.0).unwrap();
        let out = measure_imperfect(&state, &kernel, 256).unwrap();
        evolve_and_record(&out.wavefunction, 2.0 * PI, 65).unwrap()
    };
    let fuzzy = run(1);
    let sharp = run(50);
    let v0_fuzzy = fuzzy[0].diagnostics.circular_variance;
    let v0_sharp = sharp[0].diagnostics.circular_variance;
    let ratio = |frames: &[Frame], v0: f64| -> f64 {
        frames
            .iter()
            .map(|f| f.diagnostics.circular_variance / v0)
            .fold(f64::MIN, f64::max)
    };
    let fuzzy_ratio = ratio(&fuzzy, v0_fuzzy);
    let sharp_ratio = ratio(&sharp, v0_sharp);
    let within = fuzzy_ratio <= 1.5;
    let exceeds = sharp_ratio >= 3.0;
    let ordering = fuzzy
        .iter()
        .zip(&sharp)
        .filter(|(f, _)| f.t > 0.2 && f.t < 2.0 * PI - 1e-9)
        .all(|(f, s)| {
            f.diagnostics.circular_variance - v0_fuzzy
                < s.diagnostics.circular_variance - v0_sharp
        });
    let ok = within && exceeds && ordering;
    assert!(report(
        7,
        ok,
        &format!(
            "n=1 max variance ratio {fuzzy_ratio:.4} (<=1.5: {within}); n=50 max ratio \
             {sharp_ratio:.4} (>=3.0: {exceeds}; unreachable: circular variance <= 1 caps the \
             ratio at {:.2} for v0={v0_sharp:.4}); growth ordering after t=0.2: {ordering}",
            1.0 / v0_sharp
        )
    ));
}

/// Structural phasor identities hold for ground states across couplings:
/// unitarity of the binned phasor, vanishing cross-particle commutator,
/// vanishing plain covariance, and the Robertson-Schrodinger bound in both
/// covariance variants.
#[test]
fn criterion_08_phasor_identities() {
    let partition = RingPartition::new(64).unwrap();
    let mut worst: Vec<(String, f64)> = vec![];
    let mut ok = true;
    for kappa in [0.5, 2.0, 4.0, 2.0 * PI] {
        let scan = ground_state_scan(1, &[kappa], -6, 6, 129).unwrap();
        let state = ground_two_body(1, kappa, scan.ground_p[0]);
        let probs = bin_probabilities(&state, &partition);
        let stats = phasor_statistics(&probs, &partition).unwrap();
        let unitarity = (stats.completeness1 - 1.0)
            .abs()
            .max((stats.completeness2 - 1.0).abs());
        let commutator = stats.commutator.norm();
        let plain = stats.covariance_plain.norm();
        let rs_slack = (stats.rs_left - stats.rs_right_plain)
            .min(stats.rs_left - stats.rs_right_conj);
        ok &= unitarity < 1e-12 && commutator < 1e-12 && plain < 1e-10 && rs_slack > -1e-12;
        worst.push((format!("kappa={kappa:.3}"), unitarity.max(commutator).max(plain)));
    }
    let max_dev = worst.iter().map(|(_, v)| *v).fold(f64::MIN, f64::max);
    assert!(report(
        8,
        ok,
        &format!("max identity deviation over 4 couplings: {max_dev:.2e} (RS bound held: {ok})")
    ));
}

/// In the refined uncertainty scan, |covariance_conj| of the scan's ground
/// state peaks at kappa=pi (within 0.02) and drops below 1e-6 at a refined
/// grid point within 0.02 of kappa=2 pi with ground sector p=-2.
#[test]
fn criterion_09_uncertainty_special_points() {
    let base: Vec<f64> = (1..=35).map(|i| 0.2 * i as f64).collect();
    let partition = RingPartition::new(64).unwrap();
    let records = uncertainty_scan(1, &base, &partition, -6, 6, 129).unwrap();

    let peak = records
        .iter()
        .filter(|r| (r.kappa - PI).abs() < 0.3)
        .max_by(|a, b| a.cov_conj_abs.partial_cmp(&b.cov_conj_abs).unwrap())
        .unwrap();
    let peak_at_pi = (peak.kappa - PI).abs() < 0.02;

    let near_two_pi: Vec<&UncertaintyRecord> = records
        .iter()
        .filter(|r| (r.kappa - 2.0 * PI).abs() < 0.02 + 1e-9)
        .collect();
    let vanishing = near_two_pi
        .iter()
        .find(|r| r.cov_conj_abs < 1e-6 && r.ground_p == -2);
    let min_near: f64 = near_two_pi
        .iter()
        .map(|r| r.cov_conj_abs)
        .fold(f64::MAX, f64::min);
    let sectors: Vec<i32> = near_two_pi.iter().map(|r| r.ground_p).collect();

    // the even-sector state at exactly 2 pi shows the advertised mechanism
    let forced = ground_two_body(1, 2.0 * PI, -2);
    let forced_cov = phasor_statistics(&bin_probabilities(&forced, &partition), &partition)
        .unwrap()
        .covariance_conj
        .norm();

    let ok = peak_at_pi && vanishing.is_some();
    assert!(report(
        9,
        ok,
        &format!(
            "|cov_conj| peak at kappa={:.3} (value {:.4}, within 0.02 of pi: {peak_at_pi}); \
             near 2 pi the scan ground sectors are {sectors:?} with min |cov_conj| {min_near:.2e} \
             (required < 1e-6 with p=-2); forcing the p=-2 sector at exactly 2 pi gives {forced_cov:.2e}",
            peak.kappa, peak.cov_conj_abs
        )
    ));
}

/// Cross-module property checks: variational monotonicity in basis size,
/// eigenvector orthonormality, uniform two-body marginals, unitary
/// propagation with the exact 4 pi revival, and partition-refinement
/// convergence of the phasor statistics.
#[test]
fn criterion_10_property_suites() {
    // variational monotonicity
    let shape = GaugeShape::new(1, 3.8).unwrap();
    let sector = MomentumSector::new(-2);
    let eps: Vec<f64> = [5usize, 9, 17, 129]
        .iter()
        .map(|&n| ground_state(shape, sector, n).unwrap().energy)
        .collect();
    // slack covers dense-solver noise, which scales with the matrix norm
    let monotone = eps.windows(2).all(|w| w[1] <= w[0] + 1e-10);

    // orthonormality of the lowest eigenvectors
    let basis = PlaneWaveBasis::new(sector, 129);
    let pot = effective_potential(shape, sector);
    let h = assemble_hamiltonian(&pot, &basis).unwrap();
    let states = eigensolve(&h, &basis, &shape, 6).unwrap();
    let mut ortho_dev = 0.0f64;
    for i in 0..states.len() {
        for j in 0..states.len() {
            let dot: f64 = states[i]
                .amplitudes
                .iter()
                .zip(&states[j].amplitudes)
                .map(|(a, b)| a * b)
                .sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            ortho_dev = ortho_dev.max((dot - expect).abs());
        }
    }

    // uniform marginals of the two-body density
    let state = ground_two_body(1, 3.8, -2);
    let n = 128;
    let grid = state.density_grid(n).unwrap();
    let mut marginal_dev = 0.0f64;
    let dtheta = 2.0 * PI / n as f64;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| grid[i * n + j]).sum::<f64>() * dtheta;
        marginal_dev = marginal_dev.max((row - 1.0 / (2.0 * PI)).abs());
    }

    // unitarity, conservation, and the 4 pi revival
    let psi0 = measure_imperfect(&state, &MeasurementKernel::new(5, 0.3).unwrap(), 256)
        .unwrap()
        .wavefunction;
    let e0: f64 = psi0
        .mode_coefficients()
        .iter()
        .map(|(k, c)| (*k as f64).powi(2) * c.norm_sqr())
        .sum();
    let mut evo_dev = 0.0f64;
    for t in [0.7, 3.3, 11.0] {
        let psi = propagate(&psi0, t);
        let e: f64 = psi
            .mode_coefficients()
            .iter()
            .map(|(k, c)| (*k as f64).powi(2) * c.norm_sqr())
            .sum();
        evo_dev = evo_dev.max((psi.norm() - 1.0).abs()).max((e - e0).abs());
    }
    let revived = propagate(&psi0, 4.0 * PI);
    let overlap: Complex64 = revived
        .amplitudes()
        .iter()
        .zip(psi0.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        * psi0.dtheta();
    let revival_dev = (overlap.norm() - 1.0).abs();

    // partition refinement: midpoint-rule statistics converge as 1/N^2
    let mut prev: Option<(usize, f64)> = None;
    let mut refine_ok = true;
    for bins in [32usize, 64, 128] {
        let part = RingPartition::new(bins).unwrap();
        let stats =
            phasor_statistics(&bin_probabilities(&state, &part), &part).unwrap();
        let value = stats.covariance_conj.norm();
        if let Some((last_bins, last)) = prev {
            refine_ok &= (value - last).abs() < 10.0 / (last_bins * last_bins) as f64;
        }
        prev = Some((bins, value));
    }

    let ok = monotone
        && ortho_dev < 1e-10
        && marginal_dev < 1e-12
        && evo_dev < 1e-10
        && revival_dev < 1e-10
        && refine_ok;
    assert!(report(
        10,
        ok,
        &format!(
            "monotone basis convergence: {monotone}; orthonormality dev {ortho_dev:.2e}; \
             marginal dev {marginal_dev:.2e}; evolution dev {evo_dev:.2e}; revival dev \
             {revival_dev:.2e}; partition refinement: {refine_ok}"
        )
    ));
}
