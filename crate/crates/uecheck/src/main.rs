//! Command-line front door: matrix-file ingestion, bound-curve CSV
//! emission, construction export, verification runs, and simulation.
//!
//! Exit codes: 0 success/certified, 1 violation or unclassified equality
//! case, 2 usage or parse error, 3 enumeration budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use uecheck::bounds::{
    f_bound, full_support_bound, g_bound, g_minus_f_closed, general_bound, improvement, p_grid,
    p_ue, z_grid, BoundCurve, BoundsError, ChannelParameter,
};
use uecheck::code::{CodeError, LinearCode};
use uecheck::constructions::{build_c, build_d, build_e, ConstructionError, FullSupportVector};
use uecheck::field::Field;
use uecheck::matrixfile::{fmt_sig12, parse_matrix, write_matrix, MatrixFileError};
use uecheck::sim::{simulate_ue, SimError, SimulationReport};
use uecheck::verifier::{verify_theorem2, verify_theorem4, VerifierError};
use uecheck::weights::weight_distribution;
use uecheck::DEFAULT_BUDGET;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "uecheck",
    version,
    about = "Error-detection analysis of linear codes over GF(q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// [I_k | 0]: meets the general bound with equality
    C,
    /// [I_k | v-row-then-zeros]: full support, meets the full-support bound
    D,
    /// [I_k | v^t | 0]: minimum distance 2, meets the enumerator bound f
    E,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a generator matrix file and emit a bound-curve CSV
    Analyze {
        /// Matrix file: header `q n k`, then k rows of n symbol codes
        path: PathBuf,
        /// Number of p-grid points
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Write the CSV here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Enumeration budget (codewords)
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit an extremal-family generator in matrix-file format
    Construct {
        family: Family,
        n: usize,
        k: usize,
        /// Field order (prime power, at most 64)
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Comma-separated nonzero symbol codes; defaults to all ones
        #[arg(long)]
        v: Option<String>,
        /// Write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively certify a bound (theorem 2 or 4) at small parameters
    Verify {
        /// 2 = full-support bound, 4 = distance-2 enumerator bound
        theorem: u8,
        q: u32,
        n: usize,
        k: usize,
        /// Worker threads for the enumeration
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Grid points per check
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Enumeration budget (systematic blocks / codewords)
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Monte Carlo estimate of the undetected-error probability
    Simulate {
        path: PathBuf,
        /// Symbol error probability in [0, (q-1)/q]
        p: f64,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Emit bound-curve CSVs over the p-grid and the z-grid
    Bounds {
        q: u32,
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Prefix for `<prefix>-pgrid.csv` and `<prefix>-zgrid.csv`
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct AppError {
    message: String,
    exit: u8,
}

impl AppError {
    fn usage(message: impl Into<String>) -> Self {
        AppError { message: message.into(), exit: EXIT_USAGE }
    }
}

impl From<MatrixFileError> for AppError {
    fn from(e: MatrixFileError) -> Self {
        let exit = match &e {
            MatrixFileError::Code(CodeError::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        AppError { message: e.to_string(), exit }
    }
}

impl From<CodeError> for AppError {
    fn from(e: CodeError) -> Self {
        let exit = match &e {
            CodeError::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        AppError { message: e.to_string(), exit }
    }
}

impl From<VerifierError> for AppError {
    fn from(e: VerifierError) -> Self {
        let exit = if e.is_budget_exceeded() { EXIT_BUDGET } else { EXIT_USAGE };
        AppError { message: e.to_string(), exit }
    }
}

impl From<ConstructionError> for AppError {
    fn from(e: ConstructionError) -> Self {
        AppError::usage(e.to_string())
    }
}

impl From<BoundsError> for AppError {
    fn from(e: BoundsError) -> Self {
        AppError::usage(e.to_string())
    }
}

impl From<SimError> for AppError {
    fn from(e: SimError) -> Self {
        AppError::usage(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}

fn run(command: Command) -> Result<u8, AppError> {
    match command {
        Command::Analyze { path, grid, out, budget } => cmd_analyze(&path, grid, out, budget),
        Command::Construct { family, n, k, q, v, out } => cmd_construct(family, n, k, q, v, out),
        Command::Verify { theorem, q, n, k, workers, grid, budget } => {
            cmd_verify(theorem, q, n, k, workers, grid, budget)
        }
        Command::Simulate { path, p, trials, seed, workers } => {
            cmd_simulate(&path, p, trials, seed, workers)
        }
        Command::Bounds { q, n, k, grid, out } => cmd_bounds(q, n, k, grid, out),
    }
}

fn curve_to_csv(x_name: &str, curve: &BoundCurve) -> String {
    let mut out = String::from(x_name);
    for (name, _) in curve.columns() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, &x) in curve.grid().iter().enumerate() {
        out.push_str(&fmt_sig12(x));
        for (_, values) in curve.columns() {
            out.push(',');
            out.push_str(&fmt_sig12(values[i]));
        }
        out.push('\n');
    }
    out
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), AppError> {
    match out {
        Some(path) => {
            fs::write(path, content)?;
            println!("wrote {}", path.display());
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_analyze(path: &Path, grid: usize, out: Option<PathBuf>, budget: u64) -> Result<u8, AppError> {
    if grid < 2 {
        return Err(AppError::usage("--grid must be at least 2"));
    }
    let text = fs::read_to_string(path)?;
    let gen = parse_matrix(&text)?;
    let code = LinearCode::new(gen);
    let (n, k, q) = (code.n(), code.k(), code.q());
    let wd = weight_distribution(&code, budget)?;
    let support: Vec<String> = code.support().iter().map(usize::to_string).collect();

    println!("code: [{n},{k};{q}]");
    println!("support: {{{}}} (full support: {})", support.join(", "), code.has_full_support());
    println!("minimum distance: {}", code.min_distance(budget)?);
    println!("weight distribution: {:?}", wd.counts());

    let ps = p_grid(q, grid);
    let mut pue_col = Vec::with_capacity(ps.len());
    let mut gb_col = Vec::with_capacity(ps.len());
    let mut fs_col = Vec::with_capacity(ps.len());
    let mut imp_col = Vec::with_capacity(ps.len());
    for &p in &ps {
        pue_col.push(p_ue(&wd, ChannelParameter::new(p, q)?)?);
        gb_col.push(general_bound(n, k, q, p)?);
        fs_col.push(full_support_bound(n, k, q, p)?);
        imp_col.push(improvement(n, k, q, p)?);
    }
    let curve = BoundCurve::new(
        ps,
        vec![
            ("p_ue".into(), pue_col),
            ("general_bound".into(), gb_col),
            ("full_support_bound".into(), fs_col),
            ("improvement".into(), imp_col),
        ],
    )?;
    if out.is_none() {
        println!();
    }
    emit(out.as_deref(), &curve_to_csv("p", &curve))?;
    Ok(0)
}

fn cmd_construct(
    family: Family,
    n: usize,
    k: usize,
    q: u32,
    v: Option<String>,
    out: Option<PathBuf>,
) -> Result<u8, AppError> {
    let field = Arc::new(Field::new(q).map_err(|e| AppError::usage(e.to_string()))?);
    let parse_v = |len: usize| -> Result<FullSupportVector, AppError> {
        match &v {
            None => Ok(FullSupportVector::ones(Arc::clone(&field), len)),
            Some(text) => {
                let codes: Vec<u32> = text
                    .split(',')
                    .map(|t| t.trim().parse::<u32>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| {
                        AppError::usage(format!(
                            "--v `{text}` is not a comma-separated list of symbol codes"
                        ))
                    })?;
                Ok(FullSupportVector::from_codes(Arc::clone(&field), &codes)?)
            }
        }
    };
    let code = match family {
        Family::C => {
            if v.is_some() {
                return Err(AppError::usage("family C takes no --v"));
            }
            build_c(&field, n, k)?
        }
        Family::D => build_d(&field, n, k, &parse_v(n.saturating_sub(k))?)?,
        Family::E => build_e(&field, n, k, &parse_v(k)?)?,
    };
    emit(out.as_deref(), &write_matrix(code.generator()))?;
    Ok(0)
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, AppError> {
    if workers == 0 {
        return Err(AppError::usage("--workers must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| AppError::usage(e.to_string()))?;
    Ok(pool.install(f))
}

fn cmd_verify(
    theorem: u8,
    q: u32,
    n: usize,
    k: usize,
    workers: usize,
    grid: usize,
    budget: u64,
) -> Result<u8, AppError> {
    if grid < 2 {
        return Err(AppError::usage("--grid must be at least 2"));
    }
    let field = Arc::new(Field::new(q).map_err(|e| AppError::usage(e.to_string()))?);
    let cert = match theorem {
        2 => with_pool(workers, || verify_theorem2(&field, n, k, budget, grid))??,
        4 => with_pool(workers, || verify_theorem4(&field, n, k, budget, grid))??,
        other => return Err(AppError::usage(format!("theorem must be 2 or 4, got {other}"))),
    };
    print!("{}", cert.render_text());
    Ok(if cert.passes() && cert.fully_classified() { 0 } else { EXIT_VIOLATION })
}

fn cmd_simulate(path: &Path, p: f64, trials: u64, seed: u64, workers: usize) -> Result<u8, AppError> {
    let text = fs::read_to_string(path)?;
    let gen = parse_matrix(&text)?;
    let code = LinearCode::new(gen);
    let ch = ChannelParameter::new(p, code.q())?;
    let code_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().replace(',', "_"))
        .unwrap_or_else(|| "code".into());
    let report: SimulationReport =
        with_pool(workers, || simulate_ue(&code, &code_id, ch, trials, seed))??;
    println!("{}", SimulationReport::csv_header());
    println!("{}", report.csv_row());
    Ok(0)
}

fn cmd_bounds(q: u32, n: usize, k: usize, grid: usize, out: Option<PathBuf>) -> Result<u8, AppError> {
    if grid < 2 {
        return Err(AppError::usage("--grid must be at least 2"));
    }
    // q must name a real field even though the formulas only need q >= 2
    Field::new(q).map_err(|e| AppError::usage(e.to_string()))?;

    let ps = p_grid(q, grid);
    let mut gb_col = Vec::with_capacity(ps.len());
    let mut fs_col = Vec::with_capacity(ps.len());
    let mut imp_col = Vec::with_capacity(ps.len());
    for &p in &ps {
        gb_col.push(general_bound(n, k, q, p)?);
        fs_col.push(full_support_bound(n, k, q, p)?);
        imp_col.push(improvement(n, k, q, p)?);
    }
    let p_curve = BoundCurve::new(
        ps,
        vec![
            ("general_bound".into(), gb_col),
            ("full_support_bound".into(), fs_col),
            ("improvement".into(), imp_col),
        ],
    )?;

    let zs = z_grid(grid);
    let mut f_col = Vec::with_capacity(zs.len());
    let mut g_col = Vec::with_capacity(zs.len());
    let mut gf_col = Vec::with_capacity(zs.len());
    for &z in &zs {
        f_col.push(f_bound(k, q, z)?);
        g_col.push(g_bound(k, q, z)?);
        gf_col.push(g_minus_f_closed(k, q, z)?);
    }
    let z_curve = BoundCurve::new(
        zs,
        vec![("f".into(), f_col), ("g".into(), g_col), ("g_minus_f".into(), gf_col)],
    )?;

    match out {
        Some(prefix) => {
            let stem = prefix.display().to_string();
            let p_path = PathBuf::from(format!("{stem}-pgrid.csv"));
            let z_path = PathBuf::from(format!("{stem}-zgrid.csv"));
            fs::write(&p_path, curve_to_csv("p", &p_curve))?;
            fs::write(&z_path, curve_to_csv("z", &z_curve))?;
            println!("wrote {}", p_path.display());
            println!("wrote {}", z_path.display());
        }
        None => {
            println!("# p-grid");
            print!("{}", curve_to_csv("p", &p_curve));
            println!("# z-grid");
            print!("{}", curve_to_csv("z", &z_curve));
        }
    }
    Ok(0)
}
