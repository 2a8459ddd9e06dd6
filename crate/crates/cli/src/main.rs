//! `gauge-ring`: command-line driver for the two-body ring simulator.
//!
//! Subcommands map to the stages of the analysis pipeline: sector scans
//! (`spectrum`), single ground states (`ground`, `density2d`), conditional
//! measurement (`measure`), free propagation of the surviving particle
//! (`evolve`), the phasor uncertainty scan (`uncertainty`), and the built-in
//! identity checks (`validate`). Data goes to files or stdout, diagnostics
//! to stderr. Identical configurations produce byte-identical data files.

mod config;
mod io;

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use gauge_ring::*;
// the library's single-parameter Result alias comes in through the glob
use std::result::Result;

use config::{KappaSpec, RawConfig, RunConfig};
use io::{fmt_f64, Cell, TableFormat, TableWriter};

#[derive(Debug)]
pub enum CliError {
    /// Exit 2: the configuration is invalid.
    Config(String),
    /// Exit 3: a sector scan ended with a boundary minimizer.
    Inconclusive(String),
    /// Exit 4: a required input file is missing.
    MissingInput(String),
    /// Exit 5: an input file has the wrong format version.
    VersionMismatch { found: u32, expected: u32 },
    /// Exit 1: anything else.
    Io(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Inconclusive(_) => 3,
            CliError::MissingInput(_) => 4,
            CliError::VersionMismatch { .. } => 5,
            CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Config(m) => format!("invalid configuration: {m}"),
            CliError::Inconclusive(m) => format!("inconclusive sector window: {m}"),
            CliError::MissingInput(m) => format!("missing input: {m}"),
            CliError::VersionMismatch { found, expected } => {
                format!("format version {found}, this build reads version {expected}")
            }
            CliError::Io(m) => format!("i/o error: {m}"),
            CliError::Failed(m) => m.clone(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::ExponentOutOfRange { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn parse_kappa(s: &str) -> Result<KappaSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [one] => one
            .parse::<f64>()
            .map(KappaSpec::Single)
            .map_err(|e| e.to_string()),
        [start, stop, count] => Ok(KappaSpec::Grid {
            start: start.parse().map_err(|e: std::num::ParseFloatError| e.to_string())?,
            stop: stop.parse().map_err(|e: std::num::ParseFloatError| e.to_string())?,
            count: count.parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
        }),
        _ => Err("expected KAPPA or START:STOP:COUNT".into()),
    }
}

#[derive(Parser, Debug)]
#[command(name = "gauge-ring", version, about = "Two gauge-coupled particles on a quantum ring", long_about = None)]
struct Cli {
    /// Configuration file (flat key = value with dotted sections)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Gauge shape exponent q
    #[arg(long, global = true)]
    q: Option<u32>,

    /// Coupling: a single value or START:STOP:COUNT
    #[arg(long, global = true, value_parser = parse_kappa)]
    kappa: Option<KappaSpec>,

    /// Lower edge of the momentum-sector window
    #[arg(long, global = true, allow_negative_numbers = true)]
    p_min: Option<i32>,

    /// Upper edge of the momentum-sector window
    #[arg(long, global = true, allow_negative_numbers = true)]
    p_max: Option<i32>,

    /// Fixed momentum sector (default: canonical ground sector)
    #[arg(long, global = true, allow_negative_numbers = true)]
    p: Option<i32>,

    /// Plane-wave basis size
    #[arg(long, global = true)]
    n_basis: Option<usize>,

    /// Real-space grid size (power of two)
    #[arg(long, global = true)]
    n_grid: Option<usize>,

    /// Measurement kernel sharpness n
    #[arg(long, global = true)]
    measure_n: Option<u32>,

    /// Measured position of particle 1
    #[arg(long, global = true, allow_negative_numbers = true)]
    theta1: Option<f64>,

    /// Use the perfect (delta-kernel) measurement
    #[arg(long, global = true)]
    perfect: bool,

    /// Evolution span in single-particle time units (m R^2 / hbar;
    /// twice the two-body unit)
    #[arg(long, global = true)]
    t_max: Option<f64>,

    /// Number of recorded frames
    #[arg(long, global = true)]
    frames: Option<usize>,

    /// Number of phasor bins
    #[arg(long, global = true)]
    bins: Option<usize>,

    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also emit companion gnuplot scripts
    #[arg(long, global = true)]
    gnuplot: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ground-state energy per momentum sector over a coupling grid
    Spectrum,
    /// Single ground state: relative density, correlation class, well shape
    Ground,
    /// Two-body probability density |Psi(theta1, theta2)|^2
    Density2d,
    /// Conditional state of particle 2 after measuring particle 1
    Measure,
    /// Free propagation of a stored wavefunction
    Evolve {
        /// Wavefunction JSON produced by `measure`
        #[arg(long)]
        input: PathBuf,
    },
    /// Phasor uncertainty statistics of the ground state vs coupling
    Uncertainty,
    /// Run the built-in analytic identity checks
    Validate,
}

fn overrides_from_flags(cli: &Cli) -> RawConfig {
    let mut raw = RawConfig {
        q: cli.q,
        kappa: cli.kappa.clone(),
        p_min: cli.p_min,
        p_max: cli.p_max,
        p: cli.p,
        n_basis: cli.n_basis,
        n_grid: cli.n_grid,
        ..RawConfig::default()
    };
    raw.measurement.n = cli.measure_n;
    raw.measurement.theta1_0 = cli.theta1;
    if cli.perfect {
        raw.measurement.perfect = Some(true);
    }
    raw.evolve.t_max = cli.t_max;
    raw.evolve.frames = cli.frames;
    raw.partition.n_bins = cli.bins;
    raw.output.directory = cli.out.clone();
    raw
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("gauge-ring: {}", e.message());
            e.code()
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let base = match &cli.config {
        Some(path) => RawConfig::from_file(path)?,
        None => RawConfig::default(),
    };
    let cfg = base.merge(overrides_from_flags(cli)).resolve()?;
    std::fs::create_dir_all(&cfg.directory)
        .map_err(|e| CliError::Io(format!("{}: {e}", cfg.directory.display())))?;
    match &cli.command {
        Command::Spectrum => cmd_spectrum(&cfg, cli.gnuplot),
        Command::Ground => cmd_ground(&cfg, cli.gnuplot),
        Command::Density2d => cmd_density2d(&cfg, cli.gnuplot),
        Command::Measure => cmd_measure(&cfg),
        Command::Evolve { input } => cmd_evolve(&cfg, input, cli.gnuplot),
        Command::Uncertainty => cmd_uncertainty(&cfg, cli.gnuplot),
        Command::Validate => cmd_validate(),
    }
}

/// Canonical ground sector at a single coupling, honoring a fixed `p` from
/// the configuration.
fn resolve_sector(cfg: &RunConfig, kappa: f64) -> Result<i32, CliError> {
    if let Some(p) = cfg.p {
        return Ok(p);
    }
    let scan = ground_state_scan(cfg.q, &[kappa], cfg.p_min, cfg.p_max, cfg.n_basis)?;
    if scan.inconclusive {
        return Err(CliError::Inconclusive(format!(
            "ground sector at kappa = {kappa} sits on the window edge"
        )));
    }
    Ok(scan.ground_p[0])
}

fn common_metadata(cfg: &RunConfig) -> Vec<(&'static str, String)> {
    vec![
        ("q", cfg.q.to_string()),
        ("kappa", cfg.kappa_description()),
        ("p_window", format!("{}..{}", cfg.p_min, cfg.p_max)),
        ("n_basis", cfg.n_basis.to_string()),
    ]
}

fn cmd_spectrum(cfg: &RunConfig, gnuplot: bool) -> Result<(), CliError> {
    let grid = cfg.kappa_grid(0.0, 2.0 * PI, 315)?;
    if grid.is_empty() {
        return Err(CliError::Config("empty kappa grid".into()));
    }
    let scan = ground_state_scan(cfg.q, &grid, cfg.p_min, cfg.p_max, cfg.n_basis)?;

    let mut table = TableWriter::new("spectrum", &common_metadata(cfg), cfg.table_format()?);
    let mut columns = vec!["kappa".to_string()];
    columns.extend(scan.p_values.iter().map(|p| format!("eps_p{p}")));
    columns.push("ground_p".to_string());
    table.header(&columns);
    for (i, &kappa) in scan.kappas.iter().enumerate() {
        let mut row = vec![Cell::Float(kappa)];
        row.extend(scan.energies[i].iter().map(|&e| Cell::Float(e)));
        row.push(Cell::Int(scan.ground_p[i] as i64));
        table.row(row);
    }
    let path = table.write(&cfg.directory, "spectrum")?;
    eprintln!("wrote {}", path.display());

    if gnuplot && cfg.table_format()? == TableFormat::Csv {
        let mut plot = String::from(
            "set datafile separator ','\nset xlabel 'kappa'\nset ylabel 'eps'\nset key outside\n",
        );
        plot.push_str("plot for [col=2:*-1] 'spectrum.csv' using 1:col with lines title columnheader\n");
        write_gnuplot(&cfg.directory.join("spectrum.gp"), &plot)?;
    }
    if scan.inconclusive {
        return Err(CliError::Inconclusive(
            "a minimizer stayed on the sector window edge; widen p_min/p_max".into(),
        ));
    }
    Ok(())
}

fn cmd_ground(cfg: &RunConfig, gnuplot: bool) -> Result<(), CliError> {
    let kappa = cfg.single_kappa()?;
    let p = resolve_sector(cfg, kappa)?;
    let shape = GaugeShape::new(cfg.q, kappa)?;
    let sector = MomentumSector::new(p);
    let state = TwoBodyState::new(ground_state(shape, sector, cfg.n_basis)?);
    let correlation = classify_correlation(&state);
    let wells = classify_wells(&effective_potential(shape, sector), 1024)?;
    let profile = state.relative_density_profile(cfg.n_grid)?;

    let mut metadata = common_metadata(cfg);
    metadata.push(("p", p.to_string()));
    metadata.push(("epsilon", fmt_f64(state.energy())));
    metadata.push(("correlation", format!("{:?}", correlation.label)));
    metadata.push(("peak_location", fmt_f64(correlation.peak_location)));
    metadata.push(("peak_to_trough", fmt_f64(correlation.peak_to_trough)));
    metadata.push((
        "wells",
        match &wells {
            WellReport::Flat { value } => format!("flat at {}", fmt_f64(*value)),
            WellReport::Wells {
                minima,
                count_mod_reflection,
                ..
            } => format!(
                "{} ({} mod reflection) at [{}]",
                minima.len(),
                count_mod_reflection,
                minima
                    .iter()
                    .map(|w| format!("{:.4}", w.location))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        },
    ));

    let mut table = TableWriter::new("ground", &metadata, cfg.table_format()?);
    table.header(&["x".to_string(), "density".to_string()]);
    for (x, rho) in &profile {
        table.row(vec![Cell::Float(*x), Cell::Float(*rho)]);
    }
    let path = table.write(&cfg.directory, "ground")?;
    eprintln!(
        "wrote {} (p = {p}, eps = {:.6}, {:?})",
        path.display(),
        state.energy(),
        correlation.label
    );

    if gnuplot && cfg.table_format()? == TableFormat::Csv {
        let plot = "set datafile separator ','\nset xlabel 'x'\nset ylabel '|phi|^2'\n\
                    plot 'ground.csv' using 1:2 with lines title 'relative density'\n";
        write_gnuplot(&cfg.directory.join("ground.gp"), plot)?;
    }
    Ok(())
}

fn cmd_density2d(cfg: &RunConfig, gnuplot: bool) -> Result<(), CliError> {
    let kappa = cfg.single_kappa()?;
    let p = resolve_sector(cfg, kappa)?;
    let shape = GaugeShape::new(cfg.q, kappa)?;
    let state = TwoBodyState::new(ground_state(shape, MomentumSector::new(p), cfg.n_basis)?);
    let n = cfg.n_grid;
    let grid = state.density_grid(n)?;

    let mut metadata = common_metadata(cfg);
    metadata.push(("p", p.to_string()));
    metadata.push(("epsilon", fmt_f64(state.energy())));
    metadata.push(("grid_n", n.to_string()));
    metadata.push(("theta0", fmt_f64(-PI)));
    metadata.push(("dtheta", fmt_f64(2.0 * PI / n as f64)));

    let mut table = TableWriter::new("density2d", &metadata, cfg.table_format()?);
    table.header(&(0..n).map(|j| format!("rho_{j}")).collect::<Vec<_>>());
    for i in 0..n {
        table.row(grid[i * n..(i + 1) * n].iter().map(|&v| Cell::Float(v)).collect());
    }
    let path = table.write(&cfg.directory, "density2d")?;
    eprintln!("wrote {}", path.display());

    if gnuplot && cfg.table_format()? == TableFormat::Csv {
        let plot = "set datafile separator ','\nset view map\nset xlabel 'theta2 index'\n\
                    set ylabel 'theta1 index'\nplot 'density2d.csv' matrix with image\n";
        write_gnuplot(&cfg.directory.join("density2d.gp"), plot)?;
    }
    Ok(())
}

fn cmd_measure(cfg: &RunConfig) -> Result<(), CliError> {
    let kappa = cfg.single_kappa()?;
    let p = resolve_sector(cfg, kappa)?;
    let shape = GaugeShape::new(cfg.q, kappa)?;
    let state = TwoBodyState::new(ground_state(shape, MomentumSector::new(p), cfg.n_basis)?);
    let outcome = if cfg.perfect {
        measure_perfect(&state, cfg.theta1_0, cfg.n_grid)?
    } else {
        let kernel = MeasurementKernel::new(cfg.measure_n, cfg.theta1_0)?;
        measure_imperfect(&state, &kernel, cfg.n_grid)?
    };
    let path = cfg.directory.join("state.json");
    io::write_wavefunction(&path, &outcome.wavefunction)?;
    eprintln!(
        "wrote {} (p = {p}, kernel n = {}, likelihood density = {:.6e})",
        path.display(),
        if cfg.perfect {
            "perfect".to_string()
        } else {
            cfg.measure_n.to_string()
        },
        outcome.likelihood
    );
    Ok(())
}

fn cmd_evolve(cfg: &RunConfig, input: &PathBuf, gnuplot: bool) -> Result<(), CliError> {
    let psi0 = io::read_wavefunction(input)?;
    let frames = evolve_and_record(&psi0, cfg.t_max, cfg.frames)?;
    let n = psi0.len();

    let mut metadata = vec![
        ("input", input.display().to_string()),
        ("t_max", fmt_f64(cfg.t_max)),
        ("frames", cfg.frames.to_string()),
        ("grid_n", n.to_string()),
        ("theta0", fmt_f64(psi0.theta(0))),
        ("dtheta", fmt_f64(psi0.dtheta())),
        ("time_unit", ModelUnits::TIME_SINGLE.to_string()),
    ];

    let mut table = TableWriter::new("evolve", &metadata, cfg.table_format()?);
    let mut columns = vec!["t".to_string()];
    columns.extend((0..n).map(|j| format!("rho_{j}")));
    table.header(&columns);
    for frame in &frames {
        let mut row = vec![Cell::Float(frame.t)];
        row.extend(frame.density.iter().map(|&v| Cell::Float(v)));
        table.row(row);
    }
    let path = table.write(&cfg.directory, "evolve")?;

    metadata.push(("note", "circular_mean empty when undefined".to_string()));
    let mut diag = TableWriter::new("evolve-diagnostics", &metadata, cfg.table_format()?);
    diag.header(&[
        "t".to_string(),
        "circular_mean".to_string(),
        "circular_variance".to_string(),
        "angular_momentum".to_string(),
    ]);
    for frame in &frames {
        diag.row(vec![
            Cell::Float(frame.t),
            match frame.diagnostics.circular_mean {
                Some(m) => Cell::Float(m),
                None => Cell::Text(String::new()),
            },
            Cell::Float(frame.diagnostics.circular_variance),
            Cell::Float(frame.diagnostics.angular_momentum),
        ]);
    }
    let diag_path = diag.write(&cfg.directory, "evolve_diagnostics")?;
    eprintln!("wrote {} and {}", path.display(), diag_path.display());

    if gnuplot && cfg.table_format()? == TableFormat::Csv {
        let plot = "set datafile separator ','\nset xlabel 'theta index'\nset ylabel 't'\n\
                    set view map\nsplot 'evolve.csv' matrix every ::1:1 with image notitle\n";
        write_gnuplot(&cfg.directory.join("evolve.gp"), plot)?;
    }
    Ok(())
}

fn cmd_uncertainty(cfg: &RunConfig, gnuplot: bool) -> Result<(), CliError> {
    let grid = cfg.kappa_grid(0.2, 7.0, 35)?;
    let partition = RingPartition::new(cfg.n_bins)?;
    let records = uncertainty_scan(cfg.q, &grid, &partition, cfg.p_min, cfg.p_max, cfg.n_basis)?;

    let mut metadata = common_metadata(cfg);
    metadata.push(("n_bins", cfg.n_bins.to_string()));
    let mut table = TableWriter::new("uncertainty", &metadata, cfg.table_format()?);
    table.header(
        &[
            "kappa",
            "ground_p",
            "epsilon",
            "dq1",
            "dq2",
            "dq1dq2",
            "cov_plain_abs",
            "cov_conj_abs",
            "rs_left",
            "rs_right",
        ]
        .map(String::from),
    );
    for r in &records {
        table.row(vec![
            Cell::Float(r.kappa),
            Cell::Int(r.ground_p as i64),
            Cell::Float(r.epsilon),
            Cell::Float(r.dq1),
            Cell::Float(r.dq2),
            Cell::Float(r.dq1dq2),
            Cell::Float(r.cov_plain_abs),
            Cell::Float(r.cov_conj_abs),
            Cell::Float(r.rs_left),
            Cell::Float(r.rs_right),
        ]);
    }
    let path = table.write(&cfg.directory, "uncertainty")?;
    eprintln!("wrote {} ({} couplings)", path.display(), records.len());

    if gnuplot && cfg.table_format()? == TableFormat::Csv {
        let plot = "set datafile separator ','\nset xlabel 'kappa'\n\
                    plot 'uncertainty.csv' using 1:8 with lines title '|cov conj|', \\\n\
                         'uncertainty.csv' using 1:6 with lines title 'dQ1 dQ2'\n";
        write_gnuplot(&cfg.directory.join("uncertainty.gp"), plot)?;
    }
    if records.iter().any(|r| r.inconclusive) {
        return Err(CliError::Inconclusive(
            "a ground sector stayed on the window edge; widen p_min/p_max".into(),
        ));
    }
    Ok(())
}

fn write_gnuplot(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

struct Check {
    failed: bool,
}

impl Check {
    fn report(&mut self, name: &str, ok: bool, measured: f64, tol: f64) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} {name}: measured {measured:.3e}, tolerance {tol:.0e}");
        self.failed |= !ok;
    }
}

fn cmd_validate() -> Result<(), CliError> {
    let mut check = Check { failed: false };

    // gauge shape normalization: the smeared delta integrates to one
    let mut worst = 0.0f64;
    for q in [1u32, 2, 8, 32, 64] {
        let shape = GaugeShape::new(q, 1.0)?;
        let n = 8192;
        let integral: f64 = (0..n)
            .map(|j| shape.delta(-PI + 2.0 * PI * j as f64 / n as f64))
            .sum::<f64>()
            * 2.0
            * PI
            / n as f64;
        worst = worst.max((integral - 1.0).abs());
    }
    check.report("delta normalization", worst < 1e-10, worst, 1e-10);

    // mean Fourier coefficient is exactly 1/(2 pi)
    let mut c0_dev = 0.0f64;
    for q in [1u64, 5, 33, 200] {
        let coeffs = gauge_fourier_coefficients(q)?;
        c0_dev = c0_dev.max((coeffs[q as usize] - 1.0 / (2.0 * PI)).abs());
    }
    check.report("mean coefficient 1/(2 pi)", c0_dev < 1e-12, c0_dev, 1e-12);

    // exact sector degeneracy at kappa = pi
    let shape = GaugeShape::new(1, PI)?;
    let e0 = ground_state(shape, MomentumSector::new(0), 129)?.energy;
    let e2 = ground_state(shape, MomentumSector::new(-2), 129)?.energy;
    let split = (e0 - e2).abs();
    check.report("degeneracy at kappa=pi", split < 1e-9, split, 1e-9);

    // short-range limit approached monotonically from below
    let mut eps_prev = f64::MIN;
    let mut monotone = true;
    let mut below = true;
    let mut last = 0.0;
    for q in [8u32, 16, 32, 64] {
        let s = GaugeShape::new(q, 2.0)?;
        let e = ground_state(s, MomentumSector::new(0), default_basis_size(q))?.energy;
        monotone &= e > eps_prev;
        below &= e < 0.5;
        eps_prev = e;
        last = e;
    }
    check.report(
        "short-range limit trend",
        monotone && below,
        0.5 - last,
        1e-2,
    );

    // travelling solution is reproduced exactly by free propagation
    let psi0 = qin_reference(1, 1, 256, 0.0)?;
    let evolved = propagate(&psi0, PI);
    let exact = qin_reference(1, 1, 256, PI)?;
    let overlap: Complex64 = evolved
        .amplitudes()
        .iter()
        .zip(exact.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let phase = overlap / overlap.norm();
    let max_err = evolved
        .amplitudes()
        .iter()
        .zip(exact.amplitudes())
        .map(|(a, b)| (a * phase - b).norm())
        .fold(0.0f64, f64::max);
    check.report("travelling solution", max_err < 1e-10, max_err, 1e-10);

    // exact revival after one fundamental period
    let revived = propagate(&psi0, 4.0 * PI);
    let rev_overlap: Complex64 = revived
        .amplitudes()
        .iter()
        .zip(psi0.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        * psi0.dtheta();
    let rev_dev = (rev_overlap.norm() - 1.0).abs();
    check.report("revival at t=4 pi", rev_dev < 1e-10, rev_dev, 1e-10);

    // phasor identities on a representative ground state
    let scan = ground_state_scan(1, &[4.0], -6, 6, 129)?;
    let gs = ground_state(GaugeShape::new(1, 4.0)?, MomentumSector::new(scan.ground_p[0]), 129)?;
    let state = TwoBodyState::new(gs);
    let partition = RingPartition::new(64)?;
    let stats = phasor_statistics(&bin_probabilities(&state, &partition), &partition)?;
    let unitarity = (stats.completeness1 - 1.0)
        .abs()
        .max((stats.completeness2 - 1.0).abs());
    check.report("phasor unitarity", unitarity < 1e-12, unitarity, 1e-12);
    let comm = stats.commutator.norm();
    check.report("phasor commutator", comm < 1e-12, comm, 1e-12);
    let plain = stats.covariance_plain.norm();
    check.report("plain covariance vanishes", plain < 1e-10, plain, 1e-10);
    let slack = (stats.rs_left - stats.rs_right_plain).min(stats.rs_left - stats.rs_right_conj);
    check.report("uncertainty bound", slack > -1e-12, slack, 1e-12);

    // wavefunction serialization round-trips bit for bit
    let tmp = std::env::temp_dir().join(format!("gauge-ring-validate-{}.json", std::process::id()));
    io::write_wavefunction(&tmp, &psi0)?;
    let back = io::read_wavefunction(&tmp)?;
    let _ = std::fs::remove_file(&tmp);
    let rt_dev = psi0
        .amplitudes()
        .iter()
        .zip(back.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    check.report("wavefunction round-trip", rt_dev == 0.0, rt_dev, 0.0);

    if check.failed {
        Err(CliError::Failed("validation failed".into()))
    } else {
        Ok(())
    }
}
