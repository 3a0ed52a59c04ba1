//! Batch command-line front end: enumeration, counting, Weyl fitting,
//! complex-zero search, and scattering checks, with CSV or JSON output.
//!
//! Exit codes: 0 success, 1 numerical/runtime failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ite::complex_1d;
use ite::nd::{self, DimensionConfig};
use ite::one_d;
use ite::scattering;
use ite::types::{Contrast, CountMode, RealIte, RootKind, Source};
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ite",
    version,
    about = "Interior transmission eigenvalues of the unit ball: enumerate, count, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate real eigenvalues of the half-line model on (0, rmax]
    Ite1d(Ite1dArgs),
    /// Locate complex eigenvalues of the half-line model by winding counts
    Complex1d(Complex1dArgs),
    /// Enumerate real eigenvalues of the n-dimensional ball on (0, rmax]
    Itend(ItendArgs),
    /// Tabulate the counting function against the Weyl prediction
    Weyl(WeylArgs),
    /// Cross-check eigenvalues against scattering-amplitude zeros
    Scatter(ScatterArgs),
}

/// Contrast specification: exactly one of --gamma, --m, --gamma-rational.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ContrastArgs {
    /// Wave-speed contrast γ = √m (positive, ≠ 1)
    #[arg(long)]
    gamma: Option<f64>,
    /// Index of refraction m (positive, ≠ 1); γ = √m
    #[arg(long)]
    m: Option<f64>,
    /// Exact rational contrast γ = P/Q, e.g. 3/8
    #[arg(long, value_name = "P/Q")]
    gamma_rational: Option<String>,
}

impl ContrastArgs {
    fn contrast(&self) -> Result<Contrast, String> {
        if let Some(g) = self.gamma {
            return Contrast::new(g).map_err(|e| e.to_string());
        }
        if let Some(m) = self.m {
            return Contrast::from_refraction_index(m).map_err(|e| e.to_string());
        }
        let spec = self.gamma_rational.as_deref().expect("clap group guarantees one");
        let (p, q) = spec
            .split_once('/')
            .ok_or_else(|| format!("--gamma-rational expects P/Q, got {spec}"))?;
        let p: u64 = p.trim().parse().map_err(|_| format!("bad numerator in {spec}"))?;
        let q: u64 = q.trim().parse().map_err(|_| format!("bad denominator in {spec}"))?;
        Contrast::from_ratio(p, q).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
    /// Override the root-refinement tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads for per-momentum parallelism (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Geom,
    Alg,
}

#[derive(Args)]
struct Ite1dArgs {
    #[command(flatten)]
    contrast: ContrastArgs,
    /// Right end of the enumeration interval (0, rmax]
    #[arg(long)]
    rmax: f64,
    /// Counting convention recorded in the metadata
    #[arg(long, value_enum, default_value = "geom")]
    mode: Mode,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct Complex1dArgs {
    #[command(flatten)]
    contrast: ContrastArgs,
    /// Search zeros with Re λ ∈ (0, rmax]
    #[arg(long)]
    rmax: f64,
    /// Optional radius grid (comma list): emit a density report instead of a listing
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ItendArgs {
    /// Spatial dimension n ≥ 2
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    contrast: ContrastArgs,
    #[arg(long)]
    rmax: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct WeylArgs {
    /// Spatial dimension n ≥ 2
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    contrast: ContrastArgs,
    #[arg(long)]
    rmax: f64,
    /// Radius grid (comma list); default: 24 equispaced points up to rmax
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScatterArgs {
    /// Spatial dimension n ≥ 2
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    contrast: ContrastArgs,
    #[arg(long)]
    rmax: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Metadata header mirrored into every JSON document.
#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    gamma: f64,
    gamma_rational: Option<String>,
    m: f64,
    n: Option<u32>,
    rmax: f64,
    mode: Option<&'static str>,
    root_tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit_coefficient: Option<f64>,
}

#[derive(Serialize)]
struct Document<R: Serialize> {
    meta: Meta,
    rows: Vec<R>,
}

#[derive(Serialize)]
struct EigenRow {
    lambda: f64,
    l: Option<u32>,
    nu: Option<f64>,
    alg_mult: u8,
    geom_mult: u64,
    kind: &'static str,
}

#[derive(Serialize)]
struct ComplexRow {
    lambda_re: f64,
    lambda_im: f64,
    mult: u8,
}

#[derive(Serialize)]
struct CountRow {
    r: f64,
    count: u64,
    dirichlet_diff: Option<u64>,
    weyl_pred: f64,
    residual_scaled: f64,
}

#[derive(Serialize)]
struct ScatterRow {
    l: u32,
    nu: f64,
    lambda: f64,
    amplitude_mod: f64,
    matched: bool,
}

fn kind_str(kind: RootKind) -> &'static str {
    match kind {
        RootKind::Intersection => "intersection",
        RootKind::CommonZero => "common_zero",
    }
}

fn eigen_rows(roots: &[RealIte]) -> Vec<EigenRow> {
    roots
        .iter()
        .map(|r| {
            let (l, nu) = match r.source {
                Source::OneD => (None, None),
                Source::Momentum(l) => (Some(l), None),
            };
            EigenRow {
                lambda: r.lambda,
                l,
                nu,
                alg_mult: r.alg_mult,
                geom_mult: r.geom_mult,
                kind: kind_str(r.kind),
            }
        })
        .collect()
}

fn opt_str<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn csv_eigen(rows: &[EigenRow]) -> String {
    let mut s = String::from("lambda,l,nu,alg_mult,geom_mult,kind\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.lambda,
            opt_str(&r.l),
            opt_str(&r.nu),
            r.alg_mult,
            r.geom_mult,
            r.kind
        );
    }
    s
}

fn csv_complex(rows: &[ComplexRow]) -> String {
    let mut s = String::from("lambda_re,lambda_im,mult\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{}", r.lambda_re, r.lambda_im, r.mult);
    }
    s
}

fn csv_count(rows: &[CountRow]) -> String {
    let mut s = String::from("r,count,dirichlet_diff,weyl_pred,residual_scaled\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.r,
            r.count,
            opt_str(&r.dirichlet_diff),
            r.weyl_pred,
            r.residual_scaled
        );
    }
    s
}

fn csv_scatter(rows: &[ScatterRow]) -> String {
    let mut s = String::from("l,nu,lambda,amplitude_mod,matched\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.l, r.nu, r.lambda, r.amplitude_mod, r.matched);
    }
    s
}

fn emit<R: Serialize>(
    out: &OutputArgs,
    meta: Meta,
    rows: Vec<R>,
    to_csv: impl Fn(&[R]) -> String,
) -> Result<(), String> {
    let text = match out.format {
        Format::Csv => to_csv(&rows),
        Format::Json => {
            let doc = Document { meta, rows };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
    };
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("writing output: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn setup(out: &OutputArgs) -> Result<(), String> {
    if let Some(t) = out.tol {
        ite::set_root_tolerance(t).map_err(|e| e.to_string())?;
    }
    if let Some(n) = out.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn meta(
    command: &'static str,
    c: &Contrast,
    n: Option<u32>,
    rmax: f64,
    mode: Option<&'static str>,
) -> Meta {
    Meta {
        tool: "ite",
        version: env!("CARGO_PKG_VERSION"),
        command,
        gamma: c.value(),
        gamma_rational: c.rational().map(|(p, q)| format!("{p}/{q}")),
        m: c.value() * c.value(),
        n,
        rmax,
        mode,
        root_tolerance: ite::root_tolerance(),
        fit_coefficient: None,
    }
}

fn run() -> Result<(), String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Ite1d(a) => {
            setup(&a.output)?;
            let c = a.contrast.contrast()?;
            let roots = one_d::enumerate_real_ites_1d(&c, a.rmax).map_err(|e| e.to_string())?;
            let mode = match a.mode {
                Mode::Geom => "geometric",
                Mode::Alg => "algebraic",
            };
            let _counts = one_d::count_roots(
                &roots,
                match a.mode {
                    Mode::Geom => CountMode::Geometric,
                    Mode::Alg => CountMode::Algebraic,
                },
            );
            let rows = eigen_rows(&roots);
            emit(&a.output, meta("ite1d", &c, None, a.rmax, Some(mode)), rows, csv_eigen)
        }
        Command::Complex1d(a) => {
            setup(&a.output)?;
            let c = a.contrast.contrast()?;
            if let Some(grid) = &a.grid {
                let rep = complex_1d::titchmarsh_residual(&c, grid).map_err(|e| e.to_string())?;
                let rows = count_rows(&rep);
                let mut m = meta("complex1d", &c, None, a.rmax, None);
                m.fit_coefficient = Some(rep.fit_coefficient);
                emit(&a.output, m, rows, csv_count)
            } else {
                let zeros =
                    complex_1d::enumerate_complex_ites(&c, a.rmax).map_err(|e| e.to_string())?;
                let rows: Vec<ComplexRow> = zeros
                    .iter()
                    .map(|z| ComplexRow { lambda_re: z.re, lambda_im: z.im, mult: z.mult })
                    .collect();
                emit(&a.output, meta("complex1d", &c, None, a.rmax, None), rows, csv_complex)
            }
        }
        Command::Itend(a) => {
            setup(&a.output)?;
            let c = a.contrast.contrast()?;
            let cfg = DimensionConfig::new(a.n, c.value() * c.value()).map_err(|e| e.to_string())?;
            let roots = nd::enumerate_all(&cfg, a.rmax).map_err(|e| e.to_string())?;
            let rows: Vec<EigenRow> = roots
                .iter()
                .map(|r| EigenRow {
                    lambda: r.lambda,
                    l: match r.source {
                        Source::Momentum(l) => Some(l),
                        Source::OneD => None,
                    },
                    nu: match r.source {
                        Source::Momentum(l) => Some(cfg.order_for(l).value()),
                        Source::OneD => None,
                    },
                    alg_mult: r.alg_mult,
                    geom_mult: r.geom_mult,
                    kind: kind_str(r.kind),
                })
                .collect();
            emit(&a.output, meta("itend", &c, Some(a.n), a.rmax, None), rows, csv_eigen)
        }
        Command::Weyl(a) => {
            setup(&a.output)?;
            let c = a.contrast.contrast()?;
            let cfg = DimensionConfig::new(a.n, c.value() * c.value()).map_err(|e| e.to_string())?;
            let grid: Vec<f64> = match &a.grid {
                Some(g) => g.clone(),
                None => (1..=24).map(|k| a.rmax * k as f64 / 24.0).collect(),
            };
            let rep = nd::weyl_report(&cfg, &grid).map_err(|e| e.to_string())?;
            let rows = count_rows(&rep);
            let mut m = meta("weyl", &c, Some(a.n), a.rmax, None);
            m.fit_coefficient = Some(rep.fit_coefficient);
            emit(&a.output, m, rows, csv_count)
        }
        Command::Scatter(a) => {
            setup(&a.output)?;
            let c = a.contrast.contrast()?;
            let cfg = DimensionConfig::new(a.n, c.value() * c.value()).map_err(|e| e.to_string())?;
            let rep =
                scattering::verify_ite_te_coincidence(&cfg, a.rmax).map_err(|e| e.to_string())?;
            if rep.mismatches > 0 {
                eprintln!("warning: {} amplitude-zero mismatches", rep.mismatches);
            }
            let rows: Vec<ScatterRow> = rep
                .entries
                .iter()
                .map(|e| ScatterRow {
                    l: e.l,
                    nu: e.nu,
                    lambda: e.lambda,
                    amplitude_mod: e.amplitude_mod,
                    matched: e.matched,
                })
                .collect();
            emit(&a.output, meta("scatter", &c, Some(a.n), a.rmax, None), rows, csv_scatter)
        }
    }
}

fn count_rows(rep: &ite::CountReport) -> Vec<CountRow> {
    rep.radii
        .iter()
        .enumerate()
        .map(|(i, &r)| CountRow {
            r,
            count: rep.counts[i],
            dirichlet_diff: rep.dirichlet_diff.as_ref().map(|d| d[i]),
            weyl_pred: rep.weyl[i],
            residual_scaled: rep.residual_scaled[i],
        })
        .collect()
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
