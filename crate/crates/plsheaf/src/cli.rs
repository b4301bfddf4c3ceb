//! Argument parsing and command dispatch. Exit codes: 0 when the requested
//! checks pass, 1 on FAIL or ERROR, 2 on usage or document errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use plsheaf_core::pw::{growth_certificate_against, GridSpec, Kind, TestFunction, Verdict};
use plsheaf_core::sample::sample_set;
use plsheaf_core::transforms::{
    conification_stalk, convolution_stalk, fourier_sato_stalk, match_predicted, nh_fourier_stalk, stalk_compose,
};
use plsheaf_core::verify::{aggregate, registry, Report, Scenario, Status};
use plsheaf_core::{hc, ConstructibleObject, Pairing, Rational};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{self, FormatError};

#[derive(Debug, Parser)]
#[command(name = "plsheaf", version, about = "Exact stalk calculus for piecewise-linear constructible sheaves")]
struct Cli {
    /// Seed for random sample points.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output file, `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compactly supported cohomology of a set.
    Hc {
        #[arg(long)]
        set: PathBuf,
    },
    /// One stalk of a transform.
    Stalk {
        #[arg(long)]
        object: PathBuf,
        /// `fs`, `nhfs`, or a kernel document.
        #[arg(long)]
        kernel: String,
        /// Comma-separated rationals, e.g. "1/2,-3".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        pairing: Option<PathBuf>,
    },
    /// Compare a transform with a predicted object on grid points, stratum
    /// witnesses and random points.
    Transform {
        #[arg(long)]
        object: PathBuf,
        #[arg(long, value_enum)]
        kind: TransformKind,
        /// `lo:hi:count` on every axis.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        predict: PathBuf,
        /// Second factor for `conv` (default: the object itself).
        #[arg(long)]
        with: Option<PathBuf>,
        #[arg(long)]
        pairing: Option<PathBuf>,
        /// Random points on top of the grid and witnesses.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Run registered scenarios.
    Verify {
        #[arg(long, conflicts_with_all = ["all", "list"], required_unless_present_any = ["all", "list"])]
        scenario: Option<String>,
        #[arg(long)]
        all: bool,
        /// Print scenario names and what each asserts.
        #[arg(long)]
        list: bool,
        /// Random points per scenario, on top of the stratum witnesses.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Include per-scenario wall time (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Numeric growth certificate for a Laplace transform.
    Pw {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = PwKind::Bump)]
        kind: PwKind,
        /// Box `[−R, R]^N` or simplex `{x ≥ 0, Σx ≤ R}`.
        #[arg(long)]
        radius: String,
        #[arg(long)]
        dim: usize,
        /// Points per real axis.
        #[arg(long, default_value_t = 41)]
        grid: usize,
        #[arg(long, default_value_t = 20.0)]
        ymax: f64,
        /// Comma list or inclusive range, e.g. "0..4" or "-2,1".
        #[arg(long, default_value = "0..4", allow_hyphen_values = true)]
        orders: String,
        #[arg(long, default_value_t = 64)]
        quad: usize,
        /// Weigh against the same shape with this radius instead.
        #[arg(long)]
        sigma_radius: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TransformKind {
    Fs,
    Nhfs,
    Cone,
    Conv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Box,
    Simplex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PwKind {
    Indicator,
    Bump,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
}

type Outcome = Result<(Value, bool), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Runs one invocation, writing documents to `stdout` (or `--out`) and
/// diagnostics to `stderr`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Hc { set } => cmd_hc(&set),
        Command::Stalk { object, kernel, point, pairing } => cmd_stalk(&object, &kernel, &point, pairing.as_deref()),
        Command::Transform { object, kind, grid, predict, with, pairing, samples } => {
            cmd_transform(&object, kind, &grid, &predict, with.as_deref(), pairing.as_deref(), samples, cli.seed)
        }
        Command::Verify { list: true, .. } => Ok(cmd_list()),
        Command::Verify { scenario, samples, timings, .. } => cmd_verify(scenario.as_deref(), samples, cli.seed, timings),
        Command::Pw { shape, kind, radius, dim, grid, ymax, orders, quad, sigma_radius } => {
            cmd_pw(shape, kind, &radius, dim, GridSpec { ymax, count: grid }, &orders, quad, sigma_radius.as_deref())
        }
    };
    match outcome {
        Ok((doc, pass)) => match emit(&cli.out, &format::to_text(&doc), stdout) {
            Ok(()) => i32::from(!pass),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn emit(out: &str, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    if out == "-" {
        stdout.write_all(text.as_bytes())
    } else {
        std::fs::write(out, text)
    }
}

fn read_object(path: &Path) -> Result<ConstructibleObject, CliError> {
    Ok(format::parse_object(&path.display().to_string(), &format::read_file(path)?)?)
}

fn read_pairing(path: Option<&Path>, n: usize) -> Result<Pairing, CliError> {
    let Some(path) = path else { return Ok(Pairing::identity(n)) };
    let b = format::parse_pairing(&path.display().to_string(), &format::read_file(path)?)?;
    if b.dim() != n {
        return Err(usage(format!("{}: pairing is {}×{}, object lives in dimension {n}", path.display(), b.dim(), b.dim())));
    }
    Ok(b)
}

fn cmd_hc(path: &Path) -> Outcome {
    let s = format::parse_set(&path.display().to_string(), &format::read_file(path)?)?;
    let h = hc(&s).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((format::dims_document(&h), true))
}

fn check_len(what: &str, got: usize, want: usize) -> Result<(), CliError> {
    if got != want {
        return Err(usage(format!("{what} has {got} coordinates, expected {want}")));
    }
    Ok(())
}

fn cmd_stalk(object: &Path, kernel: &str, point: &str, pairing: Option<&Path>) -> Outcome {
    let f = read_object(object)?;
    let p = format::parse_point("--point", point)?;
    let n = f.dim();
    let b = read_pairing(pairing, n)?;
    let dims = match kernel {
        "fs" => {
            check_len("--point", p.len(), n)?;
            fourier_sato_stalk(&f, &p, &b)
        }
        "nhfs" => {
            check_len("--point", p.len(), n + 1)?;
            nh_fourier_stalk(&f, &p, &b)
        }
        file => {
            let path = Path::new(file);
            let k = format::parse_kernel(file, &format::read_file(path)?)?;
            check_len("object", n, k.n1)?;
            check_len("--point", p.len(), k.n2)?;
            stalk_compose(&f, &k, &p)
        }
    };
    let dims = dims.map_err(|e| usage(e.to_string()))?;
    Ok((format::dims_document(&dims), true))
}

/// `lo:hi:count`, each coordinate on `count` equally spaced rationals.
fn parse_grid(spec: &str, dim: usize) -> Result<Vec<Vec<Rational>>, CliError> {
    let bad = || usage(format!("--grid `{spec}`: expected lo:hi:count, e.g. -2:2:9"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else { return Err(bad()) };
    let lo: Rational = lo.trim().parse().map_err(|_| bad())?;
    let hi: Rational = hi.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count == 0 || hi < lo || (count as f64).powi(dim as i32) > 1e6 {
        return Err(bad());
    }
    let axis: Vec<Rational> = if count == 1 {
        vec![lo]
    } else {
        let step = &(&hi - &lo) / &Rational::from_integer(count as i64 - 1);
        (0..count).map(|i| &lo + &(&step * &Rational::from_integer(i as i64))).collect()
    };
    let mut pts: Vec<Vec<Rational>> = vec![Vec::new()];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |a| {
                    let mut p = p.clone();
                    p.push(a.clone());
                    p
                })
            })
            .collect();
    }
    Ok(pts)
}

#[allow(clippy::too_many_arguments)]
fn cmd_transform(
    object: &Path,
    kind: TransformKind,
    grid: &str,
    predict: &Path,
    with: Option<&Path>,
    pairing: Option<&Path>,
    random: usize,
    seed: u64,
) -> Outcome {
    let f = read_object(object)?;
    let pred = read_object(predict)?;
    let n = f.dim();
    let b = read_pairing(pairing, n)?;
    let g = match with {
        Some(p) => read_object(p)?,
        None => f.clone(),
    };
    let out_dim = match kind {
        TransformKind::Nhfs => n + 1,
        _ => n,
    };
    check_len("--predict object", pred.dim(), out_dim)?;
    check_len("--with object", g.dim(), n)?;
    let name = format!("transform-{}", format!("{kind:?}").to_lowercase());
    let samples = sample_set(out_dim, &pred.hyperplanes(), parse_grid(grid, out_dim)?, random, seed, &name);
    let report = match_predicted(
        &name,
        seed,
        |p| match kind {
            TransformKind::Fs => fourier_sato_stalk(&f, p, &b),
            TransformKind::Nhfs => nh_fourier_stalk(&f, p, &b),
            TransformKind::Cone => conification_stalk(&f, p),
            TransformKind::Conv => convolution_stalk(&f, &g, p),
        },
        |p| Ok(pred.stalk(p)),
        &samples,
    );
    let pass = report.status == Status::Pass;
    Ok((json!({ "seed": seed, "status": report.status.as_str(), "reports": [format::report_json(&report, None)] }), pass))
}

fn cmd_list() -> (Value, bool) {
    let list: Vec<Value> = registry()
        .iter()
        .map(|s| {
            json!({
                "scenario": s.name,
                "evaluator": s.evaluator.as_str(),
                "negative_control": s.negative_control,
                "notes": s.notes,
            })
        })
        .collect();
    (Value::Array(list), true)
}

fn timed(s: &Scenario, seed: u64, random: usize) -> (Report, f64) {
    let start = Instant::now();
    let r = s.run(seed, random);
    (r, start.elapsed().as_secs_f64() * 1e3)
}

fn cmd_verify(scenario: Option<&str>, random: usize, seed: u64, timings: bool) -> Outcome {
    let all = registry();
    let chosen: Vec<&Scenario> = match scenario {
        Some(name) => {
            let s = all.iter().find(|s| s.name == name).ok_or_else(|| {
                usage(format!("unknown scenario `{name}` (see `plsheaf verify --list`)"))
            })?;
            vec![s]
        }
        None => all.iter().collect(),
    };
    let results: Vec<(Report, f64)> = chosen.par_iter().map(|s| timed(s, seed, random)).collect();
    let reports: Vec<Report> = results.iter().map(|(r, _)| r.clone()).collect();
    // A single scenario is judged by its own status; the full suite counts
    // failing negative controls as intended.
    let status = match scenario {
        Some(_) => reports[0].status,
        None => aggregate(&reports),
    };
    let docs: Vec<Value> = results.iter().map(|(r, t)| format::report_json(r, timings.then_some(*t))).collect();
    let doc = json!({ "seed": seed, "samples": random, "status": status.as_str(), "reports": docs });
    Ok((doc, status == Status::Pass))
}

fn parse_orders(spec: &str) -> Result<Vec<i32>, CliError> {
    let bad = || usage(format!("--orders `{spec}`: expected e.g. 0..4 or 1,-1"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: i32 = a.trim().parse().map_err(|_| bad())?;
        let b: i32 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    spec.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

fn test_function(shape: Shape, kind: Kind, radius: &str, dim: usize) -> Result<TestFunction, CliError> {
    let r: Rational = radius.parse().map_err(|_| usage(format!("radius `{radius}` is not a rational")))?;
    if !r.is_positive() || dim == 0 {
        return Err(usage("radius must be positive and dim at least 1"));
    }
    let phi = match shape {
        Shape::Box => TestFunction::centered_box(kind, &r, dim),
        Shape::Simplex => TestFunction::corner_simplex(kind, &r, dim),
    };
    phi.map_err(|e| usage(e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_pw(
    shape: Shape,
    kind: PwKind,
    radius: &str,
    dim: usize,
    grid: GridSpec,
    orders: &str,
    quad: usize,
    sigma_radius: Option<&str>,
) -> Outcome {
    let kind = match kind {
        PwKind::Indicator => Kind::Indicator,
        PwKind::Bump => Kind::Bump,
    };
    let phi = test_function(shape, kind, radius, dim)?;
    let weight = match sigma_radius {
        Some(r) => test_function(shape, kind, r, dim)?,
        None => phi.clone(),
    };
    let orders = parse_orders(orders)?;
    let certs = growth_certificate_against(&phi, weight.support(), &grid, &orders, quad).map_err(|e| usage(e.to_string()))?;
    let pass = certs.iter().all(|c| c.verdict == Verdict::Bounded);
    let doc = json!({
        "shape": format!("{shape:?}").to_lowercase(),
        "kind": format!("{kind:?}").to_lowercase(),
        "dim": dim,
        "radius": radius,
        "sigma_radius": sigma_radius.unwrap_or(radius),
        "grid": { "ymax": grid.ymax, "count": grid.count },
        "quad": quad,
        "status": if pass { "PASS" } else { "FAIL" },
        "certificates": certs.iter().map(format::certificate_json).collect::<Vec<_>>(),
    });
    Ok((doc, pass))
}
