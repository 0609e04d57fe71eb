//! Command-line front end: construction, evaluation, transforms, criteria
//! checks, and extremality certificates over JSON function descriptors.
//!
//! Exit codes: 0 when the command succeeds (including a passing verdict or
//! an EXTREMAL/INCONCLUSIVE certificate), 1 when a verdict fails or a
//! certificate says NOT_EXTREMAL, 2 on usage errors (malformed descriptor,
//! bad flags, unsupported request) with a JSON error object on stderr.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use ppdf::descriptor::{parse_descriptor, Descriptor};
use ppdf::error::{Error, Result};
use ppdf::extremal::{
    certify_compact, certify_hermite, find_zeros, hermite_expand, not_extremal_mixture,
    solve_double_zero, Certificate, Region, Status,
};
use ppdf::funcs::RadialFunction;
use ppdf::measure::{SampledDensity, ScaleMeasure};
use ppdf::{criteria, transform};

#[derive(Parser)]
#[command(
    name = "ppdf",
    version,
    about = "Positive positive-definite radial functions: evaluation, Fourier transforms, positivity checks, extremality certificates",
    after_help = "Functions are JSON descriptors, e.g. '{\"kind\":\"triangle\",\"r\":2.0}'.\n\
                  Kinds: triangle, m_alpha, m_alpha_sq, wu, phi, hermite4, gaussian, f_zeta,\n\
                  scale, mixture, product, convolve, linnik, exp_pow, inverse_multiquadric,\n\
                  wendland33. Combinators nest descriptors under \"inner\" or \"left\"/\"right\"."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a function at radii start:stop:count (CSV "x,f")
    Eval(EvalArgs),
    /// Fourier transform at frequencies start:stop:count (CSV "xi,fhat")
    Transform(TransformArgs),
    /// Locate zeros of the transform's analytic extension in a rectangle
    Zeros(ZerosArgs),
    /// Run a criterion check and report a verdict
    Check(CheckArgs),
    /// Produce an extremality certificate
    Certify(CertifyArgs),
    /// Find the double-zero radius at angle theta and report the planted zeros
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct FuncSource {
    /// Function descriptor as inline JSON
    #[arg(long, group = "source")]
    func: Option<String>,
    /// Path to a file holding the descriptor JSON
    #[arg(long, group = "source")]
    file: Option<std::path::PathBuf>,
}

impl FuncSource {
    fn descriptor(&self) -> Result<Descriptor> {
        let text = match (&self.func, &self.file) {
            (Some(json), None) => json.clone(),
            (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| {
                Error::Descriptor(format!("cannot read {}: {e}", path.display()))
            })?,
            _ => unreachable!("clap enforces exactly one source"),
        };
        parse_descriptor(&text)
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    source: FuncSource,
    /// Evaluation radii as start:stop:count
    #[arg(long, allow_hyphen_values = true)]
    points: String,
    /// Emit JSON rows instead of CSV
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (the default)
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    source: FuncSource,
    /// Ambient dimension (overrides the descriptor default)
    #[arg(long)]
    dim: Option<u32>,
    /// Frequencies as start:stop:count
    #[arg(long, allow_hyphen_values = true)]
    xi: String,
    /// Emit JSON rows instead of CSV
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (the default)
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    source: FuncSource,
    /// Search rectangle as re0,re1,im0,im1
    #[arg(long, default_value = "-10,10,-5,5", allow_hyphen_values = true)]
    region: String,
    /// Polishing tolerance relative to the transform's magnitude
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    /// f >= 0 on [0, radius]
    Nonneg,
    /// Transform >= 0 on a frequency grid
    Posdef,
    /// Random Gram matrices have nonnegative minimum eigenvalue
    Gram,
    /// Even, nonincreasing, convex, vanishing at infinity
    Polya,
    /// Gneiting's sufficient condition
    Gneiting,
    /// Complete monotonicity of the squared-argument profile
    Cm,
}

#[derive(Args)]
struct CheckArgs {
    /// Which criterion to run
    #[arg(long, value_enum)]
    criterion: Criterion,
    #[command(flatten)]
    source: FuncSource,
    /// Ambient dimension (overrides the descriptor default)
    #[arg(long)]
    dim: Option<u32>,
    /// Slack tolerance for the check
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// PRNG seed for the Gram sampler
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    source: OptionalFuncSource,
    /// Shorthand: `certify hermite4 A B` certifies the quartic pair (A, B)
    #[arg(value_name = "HERMITE4 A B", num_args = 0..=3)]
    shorthand: Vec<String>,
    /// Search rectangle for compactly supported functions
    #[arg(long, default_value = "-10,10,-5,5", allow_hyphen_values = true)]
    region: String,
    /// Classification tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

// certify allows either a descriptor or the positional shorthand, so the
// required-group validation of FuncSource is relaxed here.
#[derive(Args)]
struct OptionalFuncSource {
    /// Function descriptor as inline JSON
    #[arg(long, conflicts_with = "file")]
    func: Option<String>,
    /// Path to a file holding the descriptor JSON
    #[arg(long)]
    file: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Angle theta in (0, pi/2); the planted zeros sit at (r/2pi)e^(+-i theta)
    #[arg(allow_hyphen_values = true)]
    theta: f64,
    /// Polishing tolerance for the zero search
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let err = || {
        Error::Descriptor(format!(
            "range must be start:stop:count with count >= 1, got {spec:?}"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(err());
    };
    let start: f64 = start.trim().parse().map_err(|_| err())?;
    let stop: f64 = stop.trim().parse().map_err(|_| err())?;
    let count: usize = count.trim().parse().map_err(|_| err())?;
    if !start.is_finite() || !stop.is_finite() || count == 0 {
        return Err(err());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

fn parse_region(spec: &str) -> Result<Region> {
    let err = || {
        Error::Descriptor(format!(
            "region must be re0,re1,im0,im1 with re0<re1 and im0<im1, got {spec:?}"
        ))
    };
    let vals: Vec<f64> = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| err())?;
    let [re0, re1, im0, im1] = vals.as_slice() else {
        return Err(err());
    };
    Region::new(*re0, *re1, *im0, *im1)
}

/// One table of (x, y) rows as CSV or JSON. Floats print with Rust's
/// shortest round-trip formatting, so re-parsing reproduces the exact f64.
fn emit_table(header: (&str, &str), rows: &[(f64, f64)], json: bool) -> String {
    let mut out = String::new();
    if json {
        let rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|(x, y)| serde_json::json!({ header.0: x, header.1: y }))
            .collect();
        let _ = writeln!(out, "{}", serde_json::Value::Array(rows));
    } else {
        let _ = writeln!(out, "{},{}", header.0, header.1);
        for (x, y) in rows {
            let _ = writeln!(out, "{x},{y}");
        }
    }
    out
}

fn run_eval(args: &EvalArgs) -> Result<i32> {
    let f = args.source.descriptor()?.build(None)?;
    let xs = parse_range(&args.points)?;
    let rows: Vec<(f64, f64)> = xs.iter().map(|&x| (x, f.eval(x))).collect();
    print!("{}", emit_table(("x", "f"), &rows, args.json));
    Ok(0)
}

fn run_transform(args: &TransformArgs) -> Result<i32> {
    let f = args.source.descriptor()?.build(args.dim)?;
    let xis = parse_range(&args.xi)?;
    let rows: Vec<(f64, f64)> = xis
        .iter()
        .map(|&xi| transform::fourier_radial(&f, xi).map(|v| (xi, v)))
        .collect::<Result<_>>()?;
    print!("{}", emit_table(("xi", "fhat"), &rows, args.json));
    Ok(0)
}

fn run_zeros(args: &ZerosArgs) -> Result<i32> {
    let f = args.source.descriptor()?.build(None)?;
    let region = parse_region(&args.region)?;
    let report = find_zeros(&f, region, args.tol)?;
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(0)
}

fn run_check(args: &CheckArgs) -> Result<i32> {
    let f = args.source.descriptor()?.build(args.dim)?;
    let verdict = match args.criterion {
        Criterion::Nonneg => {
            let radius = f
                .support_radius()
                .unwrap_or_else(|| f.effective_radius(1e-6));
            criteria::check_nonneg(&f, radius, args.tol)?
        }
        Criterion::Posdef => criteria::check_posdef_fourier(&f, 8.0, args.tol)?,
        Criterion::Gram => criteria::check_posdef_gram(&f, 8, 100, args.seed, args.tol)?,
        Criterion::Polya => criteria::check_polya(&f, args.tol)?,
        Criterion::Gneiting => criteria::check_gneiting(&f, args.tol)?,
        Criterion::Cm => criteria::check_completely_monotone(&f, 8, args.tol)?,
    };
    println!("{}", serde_json::to_string(&verdict).expect("verdict serializes"));
    Ok(if verdict.passed { 0 } else { 1 })
}

/// Certify a Gaussian-class function through its polynomial factor: rescale
/// the argument so the Gaussian rate becomes pi, then expand in the
/// transform-eigenbasis polynomials.
fn certify_gauss_poly(f: &RadialFunction, tol: f64) -> Result<Certificate> {
    let (poly, rate) = f.gauss_parts().expect("caller checked gauss_parts");
    let q = poly.scale_arg((std::f64::consts::PI / rate).sqrt());
    certify_hermite(&hermite_expand(&q)?, tol)
}

fn run_certify(args: &CertifyArgs) -> Result<i32> {
    let cert = match (&args.source.func, &args.source.file, args.shorthand.as_slice()) {
        (None, None, [kind, a, b]) if kind == "hermite4" => {
            let a: f64 = a
                .parse()
                .map_err(|_| Error::Descriptor(format!("hermite4: bad coefficient {a:?}")))?;
            let b: f64 = b
                .parse()
                .map_err(|_| Error::Descriptor(format!("hermite4: bad coefficient {b:?}")))?;
            certify_hermite(&[1.0, 0.0, 2.0 * a, 0.0, b], args.tol)?
        }
        (None, None, []) => {
            return Err(Error::Descriptor(
                "certify needs --func, --file, or the positional form `hermite4 A B`".into(),
            ));
        }
        (None, None, other) => {
            return Err(Error::Descriptor(format!(
                "unrecognized positional arguments {other:?}; expected `hermite4 A B`"
            )));
        }
        (func, file, []) => {
            let source = FuncSource { func: func.clone(), file: file.clone() };
            let d = source.descriptor()?;
            match d {
                Descriptor::Hermite4 { a, b } => {
                    certify_hermite(&[1.0, 0.0, 2.0 * a, 0.0, b], args.tol)?
                }
                Descriptor::Mixture { inner, measure } => {
                    let base = inner.build(None)?;
                    let mut nu = ScaleMeasure::from_atoms(measure.atoms.clone())?;
                    if let Some((points, values)) = &measure.density {
                        nu = nu
                            .with_density(SampledDensity::new(points.clone(), values.clone())?)?;
                    }
                    not_extremal_mixture(&base, &nu)?
                }
                d => {
                    let f = d.build(None)?;
                    if f.support_radius().is_some() {
                        certify_compact(&f, parse_region(&args.region)?)?
                    } else if f.gauss_parts().is_some() {
                        certify_gauss_poly(&f, args.tol)?
                    } else {
                        return Err(Error::Unsupported(
                            "certification needs compact support, a Gaussian-polynomial \
                             representation, or a mixture descriptor"
                                .into(),
                        ));
                    }
                }
            }
        }
        _ => {
            return Err(Error::Descriptor(
                "give either --func/--file or the positional form, not both".into(),
            ));
        }
    };
    println!("{}", serde_json::to_string(&cert).expect("certificate serializes"));
    Ok(if cert.status == Status::NotExtremal { 1 } else { 0 })
}

fn run_counterexample(args: &CounterexampleArgs) -> Result<i32> {
    let (r, x_zeta) = solve_double_zero(args.theta)?;
    let f = ppdf::funcs::make_f_zeta(r, args.theta)?;
    // The planted zeros sit at radius r/2pi < 1 for the solver's range, so a
    // compact window around the origin suffices and keeps the search fast.
    let region = Region::new(-2.0, 2.0, -1.0, 1.0).expect("static bounds");
    let report = find_zeros(&f, region, args.tol)?;
    let out = serde_json::json!({
        "r": r,
        "x_zeta": x_zeta,
        "zero_report": report,
    });
    println!("{out}");
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Eval(a) => run_eval(a),
        Cmd::Transform(a) => run_transform(a),
        Cmd::Zeros(a) => run_zeros(a),
        Cmd::Check(a) => run_check(a),
        Cmd::Certify(a) => run_certify(a),
        Cmd::Counterexample(a) => run_counterexample(a),
    }
}

fn usage_error(message: String) -> ExitCode {
    let obj = serde_json::json!({ "error": message });
    eprintln!("{obj}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return usage_error(e.to_string()),
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => usage_error(e.to_string()),
    }
}
