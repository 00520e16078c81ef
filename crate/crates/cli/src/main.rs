//! `adjspec`: classify quadratic Hamiltonians and sweep the self-force model.
//!
//! Exit status: 0 unbroken, 1 broken, 2 boundary, 3 invalid input,
//! 4 incomplete parameter binding, 5 I/O failure. `scan` and `matrix` exit 0
//! on success.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adjoint_spectra::algebra::adjoint_matrix;
use adjoint_spectra::gaussian::{parse_rational, Rational};
use adjoint_spectra::parser::{bind_and_expand, parse_model, BindError, ModelDefinition, ParameterBinding};
use adjoint_spectra::scan::{scan, Axis, GridSpec, ScanError};
use adjoint_spectra::selfforce::{adjoint_closed_form, classify_params, SelfForceParams};
use adjoint_spectra::spectral::{analyze_adjoint, Tolerances, Verdict, DEFAULT_TOL_BOUNDARY, DEFAULT_TOL_IM};
use clap::{Args, Parser, Subcommand};

use report::{exact_list, exact_matrix, AnalyzeReport, SelfForceReport, Spectrum};

#[derive(Parser)]
#[command(name = "adjspec", version, about = "Spectral classification of quadratic Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the Hamiltonian in a model file.
    Analyze {
        model: PathBuf,
        /// Parameter value, `name=value`. Repeatable.
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
        #[command(flatten)]
        tol: TolArgs,
        /// Write a JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classify the self-force model at one parameter point.
    Selfforce {
        #[arg(short = 'm', long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(short = 't', long, allow_hyphen_values = true)]
        tau: Option<String>,
        #[arg(short = 'k', long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(short = 'A', allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(short = 'B', allow_hyphen_values = true)]
        b: Option<String>,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep two self-force parameters over a grid.
    Scan {
        /// Fixed parameter, `name=value`. Repeatable.
        #[arg(long = "fix", value_name = "NAME=VALUE", allow_hyphen_values = true)]
        fix: Vec<String>,
        #[arg(long, value_name = "NAME:MIN:MAX:STEPS", allow_hyphen_values = true)]
        axis1: String,
        #[arg(long, value_name = "NAME:MIN:MAX:STEPS", allow_hyphen_values = true)]
        axis2: String,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        pgm: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Print the exact adjoint matrix of a model file.
    Matrix {
        model: PathBuf,
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
}

#[derive(Args)]
struct TolArgs {
    #[arg(long, default_value_t = DEFAULT_TOL_IM)]
    tol_im: f64,
    #[arg(long, default_value_t = DEFAULT_TOL_BOUNDARY)]
    tol_boundary: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances, Failure> {
        for (name, v) in [("--tol-im", self.tol_im), ("--tol-boundary", self.tol_boundary)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Failure::Invalid(format!("{name} must be a non-negative number")));
            }
        }
        Ok(Tolerances { tol_im: self.tol_im, tol_boundary: self.tol_boundary })
    }
}

enum Failure {
    Invalid(String),
    Incomplete(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 3,
            Failure::Incomplete(_) => 4,
            Failure::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Incomplete(m) | Failure::Io(m) => m,
        }
    }
}

impl From<BindError> for Failure {
    fn from(e: BindError) -> Self {
        match e {
            BindError::MissingParameter(_) => Failure::Incomplete(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::IncompleteBinding(_) => Failure::Incomplete(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Unbroken => 0,
        Verdict::Broken => 1,
        Verdict::Boundary => 2,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    write(path, text.as_bytes())
}

fn number(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| Failure::Invalid(format!("`{text}` is not a valid value for `{name}`")))
}

fn assignment(text: &str) -> Result<(String, Rational), Failure> {
    let (name, value) =
        text.split_once('=').ok_or_else(|| Failure::Invalid(format!("expected name=value, got `{text}`")))?;
    let name = name.trim();
    Ok((name.to_string(), number(name, value.trim())?))
}

fn load_model(path: &Path, set: &[String]) -> Result<(ModelDefinition, ParameterBinding), Failure> {
    let text = read(path)?;
    let def = parse_model(&text).map_err(|e| Failure::Invalid(format!("{}:{e}", path.display())))?;
    let binding = set.iter().map(|s| assignment(s)).collect::<Result<ParameterBinding, _>>()?;
    Ok((def, binding))
}

fn analyze(model: &Path, set: &[String], tol: &TolArgs, json: Option<&Path>) -> Result<u8, Failure> {
    let tolerances = tol.tolerances()?;
    let (def, binding) = load_model(model, set)?;
    let h = bind_and_expand(&def, &binding)?;
    let adjoint = adjoint_matrix(&h).map_err(invalid)?;
    let (cp, xi, cls) = analyze_adjoint(&adjoint, tolerances).map_err(invalid)?;

    println!("H = {h}");
    println!("characteristic (ascending λ): {}", join(cp.lambda_coeffs()));
    println!("ξ polynomial (ascending ξ): {}", join(&xi));
    for x in &cls.xis {
        println!("ξ = {:.12} {:+.12}i", x.re, x.im);
    }
    println!("verdict: {}", cls.verdict.as_str());

    if let Some(path) = json {
        let parameters = def
            .parameters
            .iter()
            .map(|p| {
                let v = binding.get(&p.name).or(p.default.as_ref());
                (p.name.clone(), v.map(adjoint_spectra::gaussian::format_rational).unwrap_or_default())
            })
            .collect();
        let doc = AnalyzeReport {
            basis: def.phase_space.basis_names().map(String::from).collect(),
            parameters,
            hamiltonian: h.to_string(),
            adjoint_matrix: exact_matrix(adjoint.matrix()),
            characteristic_polynomial: exact_list(cp.lambda_coeffs()),
            xi_polynomial: exact_list(&xi),
            spectrum: Spectrum::from(&cls),
        };
        write_json(path, &doc)?;
    }
    Ok(verdict_code(cls.verdict))
}

fn join(v: &[adjoint_spectra::gaussian::GaussianRational]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn selfforce(values: [(&'static str, Option<&str>); 5], tol: &TolArgs, json: Option<&Path>) -> Result<u8, Failure> {
    let tolerances = tol.tolerances()?;
    let mut parsed = Vec::with_capacity(5);
    for (name, value) in values {
        let value = value.ok_or_else(|| Failure::Incomplete(format!("no value for parameter `{name}`")))?;
        parsed.push(number(name, value)?);
    }
    let [m, tau, k, a, b]: [Rational; 5] = parsed.try_into().unwrap_or_else(|_| unreachable!());
    let params = SelfForceParams::new(m, tau, k, a, b).map_err(invalid)?;
    let report = classify_params(&params, tolerances).map_err(invalid)?;

    println!("linear root ξ0 = {}", adjoint_spectra::gaussian::format_rational(&report.xi_linear));
    let cubic: Vec<String> = report.cubic.iter().map(adjoint_spectra::gaussian::format_rational).collect();
    println!("cubic (descending ξ): {}", cubic.join(", "));
    for x in &report.classification.xis {
        println!("ξ = {:.12} {:+.12}i", x.re, x.im);
    }
    println!("verdict: {}", report.verdict().as_str());
    println!("predicate: {}", report.predicate);
    println!("agreement: {}", report.agreement);

    if let Some(path) = json {
        write_json(path, &SelfForceReport::new(&report, adjoint_closed_form(&params).matrix()))?;
    }
    Ok(verdict_code(report.verdict()))
}

fn run_scan(
    fix: &[String],
    axis1: &str,
    axis2: &str,
    csv: &Path,
    pgm: Option<&Path>,
    workers: usize,
    tol: &TolArgs,
) -> Result<u8, Failure> {
    let spec = GridSpec {
        axis1: Axis::parse(axis1)?,
        axis2: Axis::parse(axis2)?,
        fixed: fix.iter().map(|s| assignment(s)).collect::<Result<_, _>>()?,
        tolerances: tol.tolerances()?,
    };
    let grid = scan(&spec, workers)?;
    write(csv, grid.to_csv().as_bytes())?;
    if let Some(path) = pgm {
        write(path, &grid.to_pgm())?;
    }
    println!("{}", grid.summary());
    Ok(0)
}

fn matrix(model: &Path, set: &[String]) -> Result<u8, Failure> {
    let (def, binding) = load_model(model, set)?;
    let h = bind_and_expand(&def, &binding)?;
    let adjoint = adjoint_matrix(&h).map_err(invalid)?;
    println!("basis: {}", def.phase_space.basis_names().collect::<Vec<_>>().join(" "));
    print!("{}", adjoint.matrix());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Analyze { model, set, tol, json } => analyze(model, set, tol, json.as_deref()),
        Command::Selfforce { m, tau, k, a, b, tol, json } => selfforce(
            [
                ("m", m.as_deref()),
                ("tau", tau.as_deref()),
                ("k", k.as_deref()),
                ("A", a.as_deref()),
                ("B", b.as_deref()),
            ],
            tol,
            json.as_deref(),
        ),
        Command::Scan { fix, axis1, axis2, csv, pgm, workers, tol } => {
            run_scan(fix, axis1, axis2, csv, pgm.as_deref(), *workers, tol)
        }
        Command::Matrix { model, set } => matrix(model, set),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
