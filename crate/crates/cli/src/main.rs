use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use qdist::closed_forms::{coherent_tomographic, lookup};
use qdist::distances::Metric;
use qdist::figures::{write_figure1_csv, write_figure2_csv};
use qdist::format::g12;
use qdist::phase_space::{wigner, PhaseGrid, DEFAULT_POINTS};
use qdist::states::{adaptive_dim_capped, StateSpec, DEFAULT_TAIL_TOL, MAX_DIM};
use qdist::tomography::{
    marginal_from_density, tomographic_distance, x_grid, DivergenceKind, WeightFunction, DEFAULT_ANGULAR_NODES,
    DEFAULT_RADIAL_NODES, X_POINTS,
};
use qdist::{Error, ErrorClass};

const MAX_DIM_ENV: &str = "QDIST_MAX_DIM";

#[derive(Parser)]
#[command(name = "qdist", version, about = "Distances between single-mode quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One metric between two states, with the closed form when one is known.
    Distance(DistanceArgs),
    /// A metric over a one-parameter family; `x` in a state spec marks the swept parameter.
    Sweep(SweepArgs),
    /// Regenerate the data behind figure 1 or 2.
    Figure(FigureArgs),
    /// Weighted classical divergence between the optical tomograms of two states.
    TomoDistance(TomoArgs),
}

#[derive(Args)]
struct PairArgs {
    /// First state, e.g. `coherent:1,0.5`
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Second state
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Truncation dimension: `auto` or an integer
    #[arg(long, default_value = "auto")]
    dim: Dim,
    /// Tail tolerance used by `--dim auto`
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    tail_tol: f64,
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long)]
    metric: String,
    /// Exponent of the `hs-p` metric
    #[arg(long)]
    p: Option<f64>,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Export the Wigner function of state A as q,p,value
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Points per axis for `--grid`
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    grid_points: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long)]
    metric: String,
    #[arg(long)]
    p: Option<f64>,
    /// start,stop,count
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// 1 or 2
    id: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TomoArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value = "hellinger")]
    kind: String,
    #[arg(long, default_value_t = DEFAULT_RADIAL_NODES)]
    nodes_radial: usize,
    #[arg(long, default_value_t = DEFAULT_ANGULAR_NODES)]
    nodes_angular: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Export the X-quadrature tomogram of state A as mu,nu,X,w
    #[arg(long)]
    grid: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug)]
enum Dim {
    Auto,
    Fixed(usize),
}

impl FromStr for Dim {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Dim::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Dim::Fixed(n)),
            _ => Err(format!("`{s}` is neither `auto` nor a positive integer")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Distance(a) => cmd_distance(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Figure(a) => cmd_figure(a),
        Command::TomoDistance(a) => cmd_tomo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdist: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Parse => 2,
        ErrorClass::Numerical => 3,
        ErrorClass::Unsupported => 4,
        ErrorClass::Io => 1,
    }
}

fn max_dim() -> qdist::Result<usize> {
    match std::env::var(MAX_DIM_ENV) {
        Err(_) => Ok(MAX_DIM),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_DIM).contains(&n) => Ok(n),
            _ => Err(Error::Parse(format!("{MAX_DIM_ENV}={v} must be an integer in 1..={MAX_DIM}"))),
        },
    }
}

fn output(path: Option<&Path>) -> qdist::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_metric(name: &str, p: Option<f64>) -> qdist::Result<Metric> {
    let metric: Metric = name.parse()?;
    match (metric, p) {
        (Metric::ModifiedHs(_), Some(p)) if p.is_finite() && p > 0.0 => Ok(Metric::ModifiedHs(p)),
        (Metric::ModifiedHs(_), Some(p)) => Err(Error::Parse(format!("--p {p} must be positive"))),
        (Metric::ModifiedHs(_), None) => Ok(metric),
        (_, Some(_)) => Err(Error::Parse("--p only applies to hs-p".into())),
        (_, None) => Ok(metric),
    }
}

fn resolve_dim(a: &StateSpec, b: &StateSpec, dim: Dim, tail_tol: f64) -> qdist::Result<usize> {
    let cap = max_dim()?;
    match dim {
        Dim::Auto => Ok(adaptive_dim_capped(a, tail_tol, cap)?.max(adaptive_dim_capped(b, tail_tol, cap)?)),
        Dim::Fixed(n) if n > cap => Err(Error::InvalidParameter(format!("--dim {n} exceeds the cap of {cap}"))),
        Dim::Fixed(n) => Ok(n),
    }
}

struct Row {
    value: f64,
    dim: usize,
    closed: Option<f64>,
}

fn evaluate(a: &StateSpec, b: &StateSpec, metric: Metric, pair: &PairArgs) -> qdist::Result<Row> {
    let dim = resolve_dim(a, b, pair.dim, pair.tail_tol)?;
    let report = metric.evaluate(&a.build(dim)?, &b.build(dim)?)?;
    if report.clamp_warning {
        eprintln!("qdist: warning: negative squared distance clamped to zero");
    }
    Ok(Row {
        value: report.value,
        dim,
        closed: lookup(a, b, metric),
    })
}

fn optional(v: Option<f64>) -> String {
    v.map(g12).unwrap_or_default()
}

fn row_tail(row: &Row) -> String {
    let diff = row.closed.map(|c| (c - row.value).abs());
    format!("{},{},{},{}", g12(row.value), row.dim, optional(row.closed), optional(diff))
}

fn cmd_distance(args: DistanceArgs) -> qdist::Result<()> {
    let metric = parse_metric(&args.metric, args.p)?;
    let a: StateSpec = args.pair.a.parse()?;
    let b: StateSpec = args.pair.b.parse()?;
    let row = evaluate(&a, &b, metric, &args.pair)?;
    if let Some(path) = &args.grid {
        let grid = PhaseGrid::for_dim(row.dim, args.grid_points)?;
        let w = wigner(&a.density(row.dim)?, &grid)?;
        let mut f = BufWriter::new(File::create(path)?);
        w.grid.write_csv(&mut f)?;
        f.flush()?;
    }
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "metric,value,dim,closed_form_value,abs_diff")?;
    writeln!(out, "{},{}", metric.name(), row_tail(&row))?;
    out.flush()?;
    Ok(())
}

/// `start,stop,count` with `count` evenly spaced values, endpoints included.
fn parse_range(s: &str) -> qdist::Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [start, stop, count] = parts[..] else {
        return Err(Error::Parse(format!("range `{s}` must be start,stop,count")));
    };
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse(format!("`{t}` is not a finite number")))
    };
    let (start, stop) = (num(start)?, num(stop)?);
    let count: usize = count
        .parse()
        .map_err(|_| Error::Parse(format!("`{count}` is not a point count")))?;
    match count {
        0 => Err(Error::Parse(format!("range `{s}` is empty"))),
        1 => Ok(vec![start]),
        n => Ok((0..n)
            .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
            .collect()),
    }
}

/// Replaces every parameter token equal to `x`.
fn substitute(spec: &str, x: f64) -> String {
    match spec.split_once(':') {
        Some((family, rest)) => {
            let params: Vec<String> = rest
                .split(',')
                .map(|t| if t.trim() == "x" { format!("{x:?}") } else { t.to_string() })
                .collect();
            format!("{family}:{}", params.join(","))
        }
        None => spec.to_string(),
    }
}

fn has_placeholder(spec: &str) -> bool {
    spec.split_once(':')
        .is_some_and(|(_, rest)| rest.split(',').any(|t| t.trim() == "x"))
}

fn cmd_sweep(args: SweepArgs) -> qdist::Result<()> {
    let metric = parse_metric(&args.metric, args.p)?;
    let xs = parse_range(&args.range)?;
    if !has_placeholder(&args.pair.a) && !has_placeholder(&args.pair.b) {
        return Err(Error::Parse("no `x` placeholder in --a or --b".into()));
    }
    // Parse everything up front so a bad spec fails before any output.
    let pairs = xs
        .iter()
        .map(|&x| {
            let a: StateSpec = substitute(&args.pair.a, x).parse()?;
            let b: StateSpec = substitute(&args.pair.b, x).parse()?;
            Ok((x, a, b))
        })
        .collect::<qdist::Result<Vec<_>>>()?;
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "x,metric,value,dim,closed_form_value,abs_diff")?;
    for (x, a, b) in pairs {
        let row = evaluate(&a, &b, metric, &args.pair)?;
        writeln!(out, "{},{},{}", g12(x), metric.name(), row_tail(&row))?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_figure(args: FigureArgs) -> qdist::Result<()> {
    let mut out = output(args.out.as_deref())?;
    match args.id {
        1 => write_figure1_csv(&mut out)?,
        2 => write_figure2_csv(&mut out)?,
        n => return Err(Error::Parse(format!("no figure {n}; expected 1 or 2"))),
    }
    out.flush()?;
    Ok(())
}

fn coherent_amplitude(s: &StateSpec) -> Option<qdist::fock_core::C64> {
    match s {
        StateSpec::Coherent(a) => Some(*a),
        _ if s.is_vacuum() => Some(Default::default()),
        _ => None,
    }
}

fn cmd_tomo(args: TomoArgs) -> qdist::Result<()> {
    let kind: DivergenceKind = args.kind.parse()?;
    let a: StateSpec = args.a.parse()?;
    let b: StateSpec = args.b.parse()?;
    let weight = WeightFunction::gaussian_radial();
    let value = tomographic_distance(&a, &b, kind, &weight, args.nodes_radial, args.nodes_angular)?;
    let closed = match (coherent_amplitude(&a), coherent_amplitude(&b)) {
        (Some(x), Some(y)) => coherent_tomographic((x - y).norm()).get(kind.name()),
        _ => None,
    };
    if let Some(path) = &args.grid {
        let dim = adaptive_dim_capped(&a, DEFAULT_TAIL_TOL, max_dim()?)?;
        let center = 2f64.sqrt() * coherent_amplitude(&a).map_or(0.0, |z| z.re);
        let t = marginal_from_density(&a.density(dim)?, 1.0, 0.0, &x_grid(1.0, 0.0, center, X_POINTS))?;
        let mut f = BufWriter::new(File::create(path)?);
        t.write_csv(&mut f)?;
        f.flush()?;
    }
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "kind,value,closed_form_value,abs_diff")?;
    let diff = closed.map(|c| (c - value).abs());
    writeln!(out, "{},{},{},{}", kind.name(), g12(value), optional(closed), optional(diff))?;
    out.flush()?;
    Ok(())
}
