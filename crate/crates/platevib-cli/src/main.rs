//! Command-line front end: every computation exposed as a reproducible
//! table or curve emission, CSV or JSON, byte-identical across runs.
//!
//! Exit codes: 0 success, 2 usage error, 1 numerical failure.

// `!(x > 0.0)` rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Parser, Subcommand};
use platevib::functionals::{couple_catalogue, ec_derivative_terms, expected_sign, FrequencyFunctional, GyrationFunctional, Sign};
use platevib::hamiltonian::{critical_energy, classify_curve, Ec, HamiltonianSpec, InstabilityPolicy, System};
use platevib::sensitivity::{eigen_derivative, ratio_law_fit, ShapeDirection};
use platevib::spectrum::{
    bracket, extra_eigenvalue_check, nu1_exists, solve_eigenvalue, ModeId, PlateConfig,
};
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

mod table;
use table::{Field, Table};

#[derive(Parser)]
#[command(name = "platevib", version, about = "Plate spectrum, shape sensitivities and torsional-stability diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Poisson ratio of the plate material (default 0.2).
    #[arg(long, global = true)]
    sigma: Option<f64>,
    /// Half-width of the plate (default pi/150).
    #[arg(long, global = true)]
    half_width: Option<f64>,
    /// JSON config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format: csv or json (default csv).
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output path (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Render CSV numbers at publication precision (4 significant digits).
    #[arg(long, global = true)]
    paper_digits: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve eigenvalues over the requested mode ranges.
    Eigs {
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        j_max: Option<u32>,
        /// First longitudinal family index (default 1).
        #[arg(long)]
        k_min: Option<u32>,
        /// First torsional family index (default 2; set 1 to include the
        /// usually nonexistent first torsional family).
        #[arg(long)]
        j_min: Option<u32>,
    },
    /// Eigenvalue derivatives per mode and direction.
    Derivs {
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        j_max: Option<u32>,
        /// Repeatable: `width` or `sin:<h>` (default: width, sin:1, sin:3, sin:5).
        #[arg(long = "direction")]
        directions: Vec<String>,
    },
    /// Frequency ratios against one torsional eigenvalue and the linear-law fits.
    RatioLaw {
        #[arg(long)]
        m_max: Option<u32>,
        /// Axial index of the reference torsional mode (default 2).
        #[arg(long, default_value_t = 2)]
        nu_n: u32,
        /// Family index of the reference torsional mode (default 2).
        #[arg(long, default_value_t = 2)]
        nu_j: u32,
    },
    /// Sign matrices of the stability functionals over the couple catalogue.
    FunctionalSigns {
        /// Repeatable: `width` or `sin:<h>` (default: width, sin:1, sin:3).
        #[arg(long = "direction")]
        directions: Vec<String>,
    },
    /// Threshold curve E_c(gamma) of one Hamiltonian system.
    Hamiltonian {
        /// System: a | aprime:<alpha> | adprime:<beta> | b | c | d | e.
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        gamma_from: Option<f64>,
        #[arg(long)]
        gamma_to: Option<f64>,
        #[arg(long)]
        gamma_step: Option<f64>,
        #[arg(long)]
        seed_ratio: Option<f64>,
        #[arg(long)]
        growth_factor: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long)]
        energy_cap: Option<f64>,
        #[arg(long)]
        bisection_tol: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        scan_start: Option<f64>,
        #[arg(long)]
        scan_factor: Option<f64>,
    },
}

// ---------------------------------------------------------------------
// config file
// ---------------------------------------------------------------------

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct FileConfig {
    plate: PlateSection,
    mode_ranges: RangeSection,
    directions: Option<Vec<String>>,
    hamiltonian: HamSection,
    output: OutputSection,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct PlateSection {
    sigma: Option<f64>,
    half_width: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct RangeSection {
    m_max: Option<u32>,
    n_max: Option<u32>,
    k_max: Option<u32>,
    j_max: Option<u32>,
    k_min: Option<u32>,
    j_min: Option<u32>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct HamSection {
    system: Option<String>,
    gamma_from: Option<f64>,
    gamma_to: Option<f64>,
    gamma_step: Option<f64>,
    policy: PolicySection,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct PolicySection {
    seed_ratio: Option<f64>,
    growth_factor: Option<f64>,
    horizon: Option<f64>,
    energy_cap: Option<f64>,
    bisection_tol: Option<f64>,
    dt: Option<f64>,
    scan_start: Option<f64>,
    scan_factor: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct OutputSection {
    format: Option<String>,
    out: Option<PathBuf>,
    paper_digits: Option<bool>,
}

// ---------------------------------------------------------------------

enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<platevib::Error> for CliError {
    fn from(e: platevib::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_direction(s: &str) -> Result<ShapeDirection, CliError> {
    if s == "width" {
        return Ok(ShapeDirection::Width);
    }
    if let Some(h) = s.strip_prefix("sin:") {
        let h: u32 = match h.parse() {
            Ok(h) if h >= 1 => h,
            _ => return usage(format!("invalid sine harmonic in direction '{s}'")),
        };
        return Ok(ShapeDirection::SineMode(h));
    }
    usage(format!("unknown direction '{s}' (expected 'width' or 'sin:<h>')"))
}

fn direction_label(d: &ShapeDirection) -> String {
    match d {
        ShapeDirection::Width => "width".into(),
        ShapeDirection::SineMode(h) => format!("sin:{h}"),
        ShapeDirection::Fourier(_) => "fourier".into(),
    }
}

fn parse_system(s: &str) -> Result<System, CliError> {
    match s {
        "a" => return Ok(System::A),
        "b" => return Ok(System::B),
        "c" => return Ok(System::C),
        "d" => return Ok(System::D),
        "e" => return Ok(System::E),
        _ => {}
    }
    if let Some(alpha) = s.strip_prefix("aprime:") {
        if let Ok(alpha) = alpha.parse::<f64>() {
            return Ok(System::APrime { alpha });
        }
    }
    if let Some(beta) = s.strip_prefix("adprime:") {
        if let Ok(beta) = beta.parse::<f64>() {
            return Ok(System::ADoublePrime { beta });
        }
    }
    usage(format!("unknown system '{s}' (expected a|aprime:<alpha>|adprime:<beta>|b|c|d|e)"))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };

    let defaults = PlateConfig::default();
    let sigma = cli.sigma.or(file.plate.sigma).unwrap_or(defaults.sigma);
    let half_width = cli.half_width.or(file.plate.half_width).unwrap_or(defaults.half_width);
    let cfg = PlateConfig::new(sigma, half_width).map_err(|e| CliError::Usage(e.to_string()))?;

    let format = cli
        .format
        .or(file.output.format)
        .unwrap_or_else(|| "csv".into());
    if format != "csv" && format != "json" {
        return usage(format!("unknown format '{format}' (expected csv or json)"));
    }
    let out = cli.out.or(file.output.out);
    let paper_digits = cli.paper_digits || file.output.paper_digits.unwrap_or(false);

    let ranges = &file.mode_ranges;
    let table = match cli.command {
        Command::Eigs { m_max, n_max, k_max, j_max, k_min, j_min } => cmd_eigs(
            &cfg,
            m_max.or(ranges.m_max).unwrap_or(14),
            n_max.or(ranges.n_max).unwrap_or(5),
            k_min.or(ranges.k_min).unwrap_or(1),
            k_max.or(ranges.k_max).unwrap_or(2),
            j_min.or(ranges.j_min).unwrap_or(2),
            j_max.or(ranges.j_max).unwrap_or(3),
        )?,
        Command::Derivs { m_max, n_max, k_max, j_max, directions } => {
            let directions = resolve_directions(
                directions,
                file.directions,
                &["width", "sin:1", "sin:3", "sin:5"],
            )?;
            cmd_derivs(
                &cfg,
                m_max.or(ranges.m_max).unwrap_or(14),
                n_max.or(ranges.n_max).unwrap_or(5),
                k_max.or(ranges.k_max).unwrap_or(2),
                j_max.or(ranges.j_max).unwrap_or(3),
                &directions,
            )?
        }
        Command::RatioLaw { m_max, nu_n, nu_j } => {
            cmd_ratio_law(&cfg, m_max.or(ranges.m_max).unwrap_or(14), nu_n, nu_j)?
        }
        Command::FunctionalSigns { directions } => {
            let directions =
                resolve_directions(directions, file.directions, &["width", "sin:1", "sin:3"])?;
            cmd_functional_signs(&cfg, &directions)?
        }
        Command::Hamiltonian {
            system,
            gamma_from,
            gamma_to,
            gamma_step,
            seed_ratio,
            growth_factor,
            horizon,
            energy_cap,
            bisection_tol,
            dt,
            scan_start,
            scan_factor,
        } => {
            let ham = &file.hamiltonian;
            let system_str =
                system.or_else(|| ham.system.clone()).unwrap_or_else(|| "a".into());
            let system = parse_system(&system_str)?;
            let base = InstabilityPolicy::default();
            let policy = InstabilityPolicy {
                seed_ratio: seed_ratio.or(ham.policy.seed_ratio).unwrap_or(base.seed_ratio),
                growth_factor: growth_factor
                    .or(ham.policy.growth_factor)
                    .unwrap_or(base.growth_factor),
                horizon: horizon.or(ham.policy.horizon).unwrap_or(base.horizon),
                energy_cap: energy_cap.or(ham.policy.energy_cap).unwrap_or(base.energy_cap),
                bisection_tol: bisection_tol
                    .or(ham.policy.bisection_tol)
                    .unwrap_or(base.bisection_tol),
                dt: dt.or(ham.policy.dt).unwrap_or(base.dt),
                scan_start: scan_start.or(ham.policy.scan_start).unwrap_or(base.scan_start),
                scan_factor: scan_factor.or(ham.policy.scan_factor).unwrap_or(base.scan_factor),
            };
            policy.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            cmd_hamiltonian(
                system,
                gamma_from.or(ham.gamma_from).unwrap_or(1.0),
                gamma_to.or(ham.gamma_to).unwrap_or(3.0),
                gamma_step.or(ham.gamma_step).unwrap_or(0.1),
                &policy,
            )?
        }
    };

    let rendered = match format.as_str() {
        "csv" => table.to_csv(paper_digits),
        _ => table.to_json(),
    };
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn resolve_directions(
    flags: Vec<String>,
    file: Option<Vec<String>>,
    fallback: &[&str],
) -> Result<Vec<ShapeDirection>, CliError> {
    let names: Vec<String> = if !flags.is_empty() {
        flags
    } else if let Some(file) = file {
        file
    } else {
        fallback.iter().map(|s| s.to_string()).collect()
    };
    names.iter().map(|s| parse_direction(s)).collect()
}

fn mode_grid(m_max: u32, k_min: u32, k_max: u32, n_max: u32, j_min: u32, j_max: u32) -> Vec<ModeId> {
    let mut modes = Vec::new();
    for k in k_min..=k_max {
        for m in 1..=m_max {
            modes.push(ModeId::longitudinal(m, k));
        }
    }
    for j in j_min..=j_max {
        for n in 1..=n_max {
            modes.push(ModeId::torsional(n, j));
        }
    }
    modes
}

fn branch_label(mode: &ModeId) -> &'static str {
    match mode.branch {
        platevib::Branch::Longitudinal => "longitudinal",
        platevib::Branch::Torsional => "torsional",
    }
}

fn cmd_eigs(
    cfg: &PlateConfig,
    m_max: u32,
    n_max: u32,
    k_min: u32,
    k_max: u32,
    j_min: u32,
    j_max: u32,
) -> Result<Table, CliError> {
    let (s, integral) = extra_eigenvalue_check(cfg);
    if integral {
        eprintln!(
            "warning: the auxiliary equation has a near-integer solution s = {s}; \
             an extra eigenfunction outside the four families may exist"
        );
    }
    let mut table = Table::new(
        "eigs",
        &["branch", "axial", "family", "bracket_lo", "bracket_hi", "lambda", "residual", "status"],
    );
    for mode in mode_grid(m_max, k_min, k_max, n_max, j_min, j_max) {
        if mode.branch == platevib::Branch::Torsional
            && mode.family_index == 1
            && !nu1_exists(mode.axial_index, cfg)
        {
            table.push(vec![
                Field::text(branch_label(&mode)),
                Field::Int(mode.axial_index as i64),
                Field::Int(mode.family_index as i64),
                Field::Empty,
                Field::Empty,
                Field::Empty,
                Field::Empty,
                Field::text("nonexistent"),
            ]);
            continue;
        }
        let (lo, hi) = bracket(mode, cfg)?;
        let record = solve_eigenvalue(mode, cfg)?;
        table.push(vec![
            Field::text(branch_label(&mode)),
            Field::Int(mode.axial_index as i64),
            Field::Int(mode.family_index as i64),
            Field::Float(lo),
            Field::Float(hi),
            Field::Float(record.lambda),
            Field::Float(record.residual),
            Field::text("ok"),
        ]);
    }
    Ok(table)
}

fn cmd_derivs(
    cfg: &PlateConfig,
    m_max: u32,
    n_max: u32,
    k_max: u32,
    j_max: u32,
    directions: &[ShapeDirection],
) -> Result<Table, CliError> {
    let mut table =
        Table::new("derivs", &["branch", "axial", "family", "direction", "value"]);
    for mode in mode_grid(m_max, 1, k_max, n_max, 2, j_max) {
        let record = solve_eigenvalue(mode, cfg)?;
        for direction in directions {
            table.push(vec![
                Field::text(branch_label(&mode)),
                Field::Int(mode.axial_index as i64),
                Field::Int(mode.family_index as i64),
                Field::text(direction_label(direction)),
                Field::Float(eigen_derivative(&record, direction, cfg)),
            ]);
        }
    }
    Ok(table)
}

fn cmd_ratio_law(cfg: &PlateConfig, m_max: u32, nu_n: u32, nu_j: u32) -> Result<Table, CliError> {
    if m_max < 3 {
        return usage("ratio-law needs at least 3 longitudinal modes (m_max >= 3)");
    }
    if nu_j < 2 {
        return usage("the reference torsional mode must have family index >= 2");
    }
    let nu = solve_eigenvalue(ModeId::torsional(nu_n, nu_j), cfg)?;
    let directions =
        [ShapeDirection::Width, ShapeDirection::SineMode(1), ShapeDirection::SineMode(3)];
    let mut table = Table::new(
        "ratio-law",
        &["kind", "m", "gamma", "value_width", "value_sin1", "value_sin3"],
    );
    for m in 1..=m_max {
        let mu = solve_eigenvalue(ModeId::longitudinal(m, 1), cfg)?;
        let gamma = nu.lambda / mu.lambda;
        let mut row = vec![Field::text("point"), Field::Int(m as i64), Field::Float(gamma)];
        for direction in &directions {
            let d_nu = eigen_derivative(&nu, direction, cfg);
            let d_mu = eigen_derivative(&mu, direction, cfg);
            row.push(Field::Float((d_nu - gamma * d_mu) / mu.lambda));
        }
        table.push(row);
    }
    let fits: Vec<_> = directions
        .iter()
        .map(|d| ratio_law_fit(nu.mode, 1..=m_max, d, cfg))
        .collect::<Result<_, _>>()?;
    for (kind, pick) in [
        ("c0", 0usize),
        ("c1", 1),
        ("max_residual", 2),
    ] {
        let mut row = vec![Field::text(kind), Field::Empty, Field::Empty];
        for fit in &fits {
            let v = [fit.c0, fit.c1, fit.max_residual][pick];
            row.push(Field::Float(v));
        }
        table.push(row);
    }
    Ok(table)
}

fn cmd_functional_signs(cfg: &PlateConfig, directions: &[ShapeDirection]) -> Result<Table, CliError> {
    let mut table = Table::new(
        "functional-signs",
        &["functional", "direction", "m", "k", "n", "j", "value", "sign", "expected", "agrees"],
    );
    let couples = couple_catalogue();
    let mut records: Vec<(ModeId, platevib::EigenRecord)> = Vec::new();
    let mut solve_cached = |mode: ModeId| -> Result<platevib::EigenRecord, CliError> {
        if let Some((_, r)) = records.iter().find(|(m, _)| *m == mode) {
            return Ok(*r);
        }
        let r = solve_eigenvalue(mode, cfg)?;
        records.push((mode, r));
        Ok(r)
    };
    let mut summary: Vec<(String, usize, usize)> = Vec::new();
    for freq in FrequencyFunctional::ALL {
        let mut disagreements = 0usize;
        let mut singular = 0usize;
        for couple in &couples {
            let mu = solve_cached(couple.mu)?;
            let nu = solve_cached(couple.nu)?;
            for direction in directions {
                let gyr = GyrationFunctional::MeanSquaredHalfWidth;
                let outcome = ec_derivative_terms(freq, gyr, (&mu, &nu), direction, cfg);
                let expected = expected_sign(freq, direction, couple);
                let expected_field = match expected {
                    Some(s) => Field::text(s.label()),
                    None => Field::Empty,
                };
                let mut row = vec![
                    Field::text(freq.label()),
                    Field::text(direction_label(direction)),
                    Field::Int(couple.mu.axial_index as i64),
                    Field::Int(couple.mu.family_index as i64),
                    Field::Int(couple.nu.axial_index as i64),
                    Field::Int(couple.nu.family_index as i64),
                ];
                match outcome {
                    Ok((geom, freq_term)) => {
                        let value = geom + freq_term;
                        let scale = geom.abs() + freq_term.abs();
                        let sign = if value.abs() < platevib::functionals::AMBIGUITY_FLOOR * scale
                        {
                            Sign::Ambiguous
                        } else if value > 0.0 {
                            Sign::Positive
                        } else {
                            Sign::Negative
                        };
                        let agrees = expected.map(|e| e == sign);
                        if agrees == Some(false) {
                            disagreements += 1;
                        }
                        row.push(Field::Float(value));
                        row.push(Field::text(sign.label()));
                        row.push(expected_field);
                        row.push(match agrees {
                            Some(true) => Field::text("yes"),
                            Some(false) => Field::text("no"),
                            None => Field::Empty,
                        });
                    }
                    Err(platevib::Error::SingularRatio) => {
                        singular += 1;
                        row.push(Field::Empty);
                        row.push(Field::text("singular"));
                        row.push(expected_field);
                        row.push(Field::Empty);
                    }
                    Err(e) => return Err(e.into()),
                }
                table.push(row);
            }
        }
        summary.push((freq.label().to_string(), disagreements, singular));
    }
    for (label, disagreements, singular) in summary {
        eprintln!(
            "{label}: {} couples x {} directions, {disagreements} cells disagree with the reference pattern, {singular} singular",
            couples.len(),
            directions.len()
        );
    }
    Ok(table)
}

fn cmd_hamiltonian(
    system: System,
    gamma_from: f64,
    gamma_to: f64,
    gamma_step: f64,
    policy: &InstabilityPolicy,
) -> Result<Table, CliError> {
    if !(gamma_step > 0.0) {
        return usage("gamma step must be positive");
    }
    let mut table = Table::new(
        "hamiltonian",
        &["kind", "gamma", "e_c", "status", "bracket_lo", "bracket_hi"],
    );
    let mut finite = Vec::new();
    let mut i = 0u32;
    loop {
        let gamma = gamma_from + gamma_step * i as f64;
        if gamma > gamma_to + 1e-9 * gamma_step {
            break;
        }
        let spec = HamiltonianSpec::new(system, gamma).map_err(|e| CliError::Usage(e.to_string()))?;
        let point = critical_energy(&spec, policy)?;
        let (e_c, status) = match point.e_c {
            Ec::Finite(e) => {
                finite.push(e);
                (Field::Float(e), "finite")
            }
            Ec::StableUpToCap => (Field::Empty, "stable_up_to_cap"),
        };
        table.push(vec![
            Field::text("point"),
            Field::Float(gamma),
            e_c,
            Field::text(status),
            Field::Float(point.bracket.0),
            Field::Float(point.bracket.1),
        ]);
        i += 1;
    }
    let shape = classify_curve(&finite, 0.05);
    let mut label = String::new();
    let _ = write!(label, "trend:{};curvature:{}", shape.trend_label(), shape.curvature_label());
    table.push(vec![
        Field::text("shape"),
        Field::Empty,
        Field::Empty,
        Field::text(label),
        Field::Empty,
        Field::Empty,
    ]);
    Ok(table)
}
