//! Command-line front end: builds triples, runs the verification suites and
//! reports connections and curvature as JSON.

pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncg_core::calculus::{
    d1, detect_orientation, FormOracle, OneForm, TwoForm, DEFAULT_ORACLE_CAP,
};
use ncg_core::curvature::{curvature, nabla_squared, ricci, scalar_curvature};
use ncg_core::koszul::{
    bimodule_defect, compat_defect_center, full_compat_defect, koszul_rank, max_one_form_grid,
    max_two_form, torsion_defect, Connection, ConnectionRegistry, Metric,
};
use ncg_core::linalg::{kron, ComplexMatrix, DEFAULT_TOL};
use ncg_core::{build_triple_with, NcgError, Orientation, SpectralTriple, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use report::{Defect, Report, Value};

/// Seed for the random algebra elements and one-forms used by the checks.
const CHECK_SEED: u64 = 0x6e63_6701;
const RANDOM_SAMPLES: usize = 5;
const DELTA_SAMPLES: usize = 10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;
pub const EXIT_FEASIBILITY: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;
pub const EXIT_NON_CENTRAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "ncg",
    version,
    about = "Levi-Civita connections and curvature on the fuzzy sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the spectral triple and check its invariants.
    Triple(Common),
    /// Compare the brute-force calculus oracles with the wired differential.
    VerifyCalculus(Common),
    /// Solve for the connection and report its Christoffel symbols and defects.
    LeviCivita(Common),
    /// Compute the curvature, Ricci tensor and scalar curvature.
    Curvature(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Auto,
    Standard,
    Flipped,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Truncation cutoff.
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// Metric JSON file (3×3 array of [re, im] pairs) or `canonical`.
    #[arg(long, default_value = "canonical")]
    pub metric: String,
    /// Write the JSON report here and print a table instead.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, env = "NCG_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Largest cutoff the brute-force oracles accept.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    #[arg(long, default_value = "levi-civita")]
    pub connection: String,
    #[arg(long, value_enum, default_value_t = OrientationArg::Auto)]
    pub orientation: OrientationArg,
}

/// Failure that prevents a report from being produced at all.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn exit_code_for(e: &NcgError) -> i32 {
    match e {
        NcgError::SingularSystem { .. } => EXIT_SINGULAR,
        NcgError::Feasibility { .. } => EXIT_FEASIBILITY,
        NcgError::NonCentralRicci { .. } => EXIT_NON_CENTRAL,
        NcgError::Representation { .. } => EXIT_CHECK,
        NcgError::InvalidMetric(_) | NcgError::Shape(_) | NcgError::UnknownStrategy(_) => {
            EXIT_INPUT
        }
    }
}

/// Parse a metric file: a 3×3 JSON array of `[re, im]` pairs.
pub fn parse_metric(text: &str, tol: f64) -> Result<Metric, NcgError> {
    let raw: Vec<Vec<[f64; 2]>> = serde_json::from_str(text)
        .map_err(|e| NcgError::InvalidMetric(format!("expected 3x3 array of [re, im]: {e}")))?;
    if raw.len() != 3 || raw.iter().any(|r| r.len() != 3) {
        return Err(NcgError::InvalidMetric("metric must be 3x3".into()));
    }
    let g = std::array::from_fn(|i| std::array::from_fn(|j| C64::new(raw[i][j][0], raw[i][j][1])));
    Metric::new(g, tol)
}

pub fn load_metric(source: &str, tol: f64) -> Result<Metric, LoadError> {
    if source == "canonical" {
        return Ok(Metric::canonical());
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| LoadError::Input(format!("cannot read metric file `{source}`: {e}")))?;
    parse_metric(&text, tol).map_err(LoadError::Metric)
}

#[derive(Debug)]
pub enum LoadError {
    Input(String),
    Metric(NcgError),
}

fn orientation_of(arg: OrientationArg) -> Result<Orientation, NcgError> {
    match arg {
        OrientationArg::Standard => Ok(Orientation::Standard),
        OrientationArg::Flipped => Ok(Orientation::Flipped),
        OrientationArg::Auto => detect_orientation(),
    }
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Standard => "standard",
        Orientation::Flipped => "flipped",
    }
}

/// Run a command. Returns the report and the process exit code, or an input
/// error when the arguments cannot be turned into a report.
pub fn run(command: &Command) -> Result<(Report, i32), InputError> {
    let (name, common) = match command {
        Command::Triple(c) => ("triple", c),
        Command::VerifyCalculus(c) => ("verify-calculus", c),
        Command::LeviCivita(c) => ("levi-civita", c),
        Command::Curvature(c) => ("curvature", c),
    };
    if !(common.tol.is_finite() && common.tol > 0.0) {
        return Err(InputError(format!(
            "tolerance must be positive, got {}",
            common.tol
        )));
    }
    let orientation = orientation_of(common.orientation).map_err(|e| InputError(e.to_string()))?;
    let t = build_triple_with(common.n, orientation);
    let mut report = Report::new(name, common.n, orientation_name(orientation));
    let outcome = match command {
        Command::Triple(_) => {
            cmd_triple(&t, common.tol, &mut report);
            Ok(())
        }
        Command::VerifyCalculus(_) => cmd_verify_calculus(&t, common, &mut report),
        Command::LeviCivita(_) | Command::Curvature(_) => {
            let metric = match load_metric(&common.metric, common.tol) {
                Ok(m) => m,
                Err(LoadError::Input(msg)) => return Err(InputError(msg)),
                Err(LoadError::Metric(e)) => {
                    report.fail_with(&e);
                    report.finalize();
                    return Ok((report, exit_code_for(&e)));
                }
            };
            report.metric = Some(
                metric
                    .entries()
                    .iter()
                    .map(|r| r.iter().map(|&z| report::complex(z)).collect())
                    .collect(),
            );
            report.connection = Some(common.connection.clone());
            let registry = ConnectionRegistry::with_builtins();
            let strategy = registry
                .get(&common.connection)
                .map_err(|e| InputError(format!("{e}; known: {}", registry.names().join(", "))))?;
            match strategy.build(&t, &metric) {
                Ok(conn) => {
                    if matches!(command, Command::LeviCivita(_)) {
                        cmd_levi_civita(&t, &metric, &conn, common.tol, &mut report);
                        Ok(())
                    } else {
                        cmd_curvature(&t, &metric, &conn, common.tol, &mut report)
                    }
                }
                Err(e) => Err(e),
            }
        }
    };
    let code = match outcome {
        Ok(()) => {
            report.finalize();
            if report.pass {
                EXIT_OK
            } else {
                EXIT_CHECK
            }
        }
        Err(e) => {
            report.fail_with(&e);
            report.finalize();
            exit_code_for(&e)
        }
    };
    Ok((report, code))
}

pub fn cmd_triple(t: &SpectralTriple, tol: f64, report: &mut Report) {
    report.result("dim_k", Value::Count(t.dim_k as u64));
    report.result("dim_h", Value::Count(t.dim_h() as u64));
    report.result("dirac_norm", Value::Real(t.dirac.frobenius_norm()));
    report.check("dim_k_is_square", t.dim_k == (t.n + 1) * (t.n + 1));
    report.defect("dirac_self_adjoint", t.self_adjoint_residual(), tol);
    report.defect("commutation_relations", t.commutation_residual(), tol);
    report.defect("clifford_relations", t.clifford_residual(), tol);
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..DELTA_SAMPLES {
        let a = t.random_element(&mut rng);
        let lhs = &t.delta(0, &t.delta(1, &a)) - &t.delta(1, &t.delta(0, &a));
        worst = worst.max(lhs.max_abs_diff(&t.delta(2, &a)));
    }
    report.defect("derivation_bracket", worst, tol);
}

pub fn cmd_verify_calculus(
    t: &SpectralTriple,
    common: &Common,
    report: &mut Report,
) -> Result<(), NcgError> {
    let dim_a = t.dim_k * t.dim_k;
    let oracle = FormOracle::new(t, common.oracle_cap, DEFAULT_TOL)?;
    let expected_span = if t.n == 0 { 0 } else { 3 * dim_a };
    let expected_junk = if t.n == 0 { 0 } else { dim_a };
    report.result("one_form_span", Value::Count(oracle.one_form_dim() as u64));
    report.result("junk_dimension", Value::Count(oracle.junk_dim() as u64));
    report.check(
        "one_form_span_is_free_rank_3",
        oracle.one_form_dim() == expected_span,
    );
    report.check(
        "junk_dimension_matches_algebra",
        oracle.junk_dim() == expected_junk,
    );
    // Oracle tolerances are fixed by the SVD accuracy, independent of --tol.
    let oracle_tol = 1e-8;
    report.defect(
        "junk_identification",
        oracle.identification_residual(),
        oracle_tol,
    );
    if t.n == 0 {
        report.result("de_oracle", Value::Text("skipped: one-forms vanish".into()));
        return Ok(());
    }
    let id2 = ComplexMatrix::identity(2);
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    let mut y_gap: f64 = 0.0;
    for _ in 0..RANDOM_SAMPLES {
        let y = kron(&t.random_element(&mut rng), &id2);
        y_gap = y_gap.max(oracle.project_onto_junk(&y).max_abs_diff(&y));
    }
    report.defect("junk_contains_y_tensor_one", y_gap, oracle_tol);
    let mut structure_gap: f64 = 0.0;
    let mut wired_gap: f64 = 0.0;
    for m in 0..3 {
        let basis = OneForm::basis(t.dim_k, m);
        let w = oracle.d(t, &basis)?;
        structure_gap = structure_gap.max(w.max_abs_diff(&-TwoForm::basis(t.dim_k, m)));
        wired_gap = wired_gap.max(w.max_abs_diff(&d1(t, &basis)));
    }
    report.defect("de_oracle_vs_minus_f", structure_gap, oracle_tol);
    report.defect("de_oracle_vs_d1", wired_gap, oracle_tol);
    Ok(())
}

fn random_one_form(t: &SpectralTriple, rng: &mut ChaCha8Rng) -> OneForm {
    OneForm::new(std::array::from_fn(|_| t.random_element(rng)))
}

pub fn cmd_levi_civita(
    t: &SpectralTriple,
    metric: &Metric,
    conn: &Connection,
    tol: f64,
    report: &mut Report,
) {
    let (gamma, dev) = conn.christoffel();
    report.result("christoffel", Value::tensor3(&gamma));
    let rank = koszul_rank(metric);
    report.result("koszul_rank", Value::Count(rank as u64));
    report.check("koszul_system_unique", rank == 9);
    report.defect("christoffel_scalar_deviation", dev, tol);
    report.defect("torsion", max_two_form(&torsion_defect(t, conn)), tol);
    report.defect(
        "compatibility_center",
        max_one_form_grid(&compat_defect_center(t, metric, conn)),
        tol,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    let (mut full, mut bimod): (f64, f64) = (0.0, 0.0);
    for _ in 0..RANDOM_SAMPLES {
        let x = random_one_form(t, &mut rng);
        let y = random_one_form(t, &mut rng);
        full = full.max(full_compat_defect(t, metric, conn, &x, &y).max_abs());
        let a = t.random_element(&mut rng);
        bimod = bimod.max(bimodule_defect(t, conn, &a, &x).max_abs());
    }
    report.defect("compatibility_full", full, tol);
    report.defect("bimodule", bimod, tol);
}

pub fn cmd_curvature(
    t: &SpectralTriple,
    metric: &Metric,
    conn: &Connection,
    tol: f64,
    report: &mut Report,
) -> Result<(), NcgError> {
    let rt = curvature(t, conn);
    let (r, r_dev) = rt.scalar_coeffs();
    report.result("curvature", Value::tensor3(&r));
    report.defect("curvature_scalar_deviation", r_dev, tol);
    let mut nabla_gap: f64 = 0.0;
    for j in 0..3 {
        let direct = nabla_squared(t, conn, &OneForm::basis(t.dim_k, j));
        let stored = rt.on_basis(j);
        for p in 0..3 {
            nabla_gap = nabla_gap.max(direct[p].max_abs_diff(&stored[p]));
        }
    }
    report.defect("nabla_squared_vs_curvature", nabla_gap, tol);
    let ric = ricci(&rt);
    let (ric_scalars, ric_dev) = ric.scalar_coords();
    report.result("ricci", Value::matrix3(&ric_scalars));
    report.defect("ricci_scalar_deviation", ric_dev, tol);
    let scal = scalar_curvature(&ric, metric, tol)?;
    report.result("scalar_curvature", Value::Complex(report::complex(scal)));
    Ok(())
}

/// Write the report where requested. Returns the text for stdout.
pub fn render(report: &Report, json: Option<&Path>) -> std::io::Result<String> {
    match json {
        Some(path) => {
            std::fs::write(path, report.to_json())?;
            Ok(report.table())
        }
        None => Ok(report.to_json()),
    }
}
