//! Command-line front end.
//!
//! Exit codes: 0 success/PASS, 1 an invariant failed, 2 input or parse
//! error, 3 precondition violation (e.g. a reducible matrix given to
//! `certify`).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::harness::report::{convergence_table, demo_table, gelfand_table};
use crate::harness::{
    gelfand_trace, nonuniformity_demo, run_trace, OutputFormat, Schedule, SequenceSpec, TraceKind,
};
use crate::matcore::{parse_matrix, parse_real_matrix, NonNegMatrix, RealMatrix};
use crate::perron::{analyze_root, perron_root, q_star, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::perturb::continuity_certificate;
use crate::structure::{is_irreducible, nilpotency_index, spectral_block_of};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "perron",
    version,
    about = "Certified Perron roots of nonnegative matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SolverOpts {
    /// Target width of certified root intervals.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Iteration cap of the power iteration.
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure, Frobenius normal form and certified Perron root of a matrix.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverOpts,
    },
    /// Continuity certificate for rho(A') given an irreducible A.
    Certify {
        a: PathBuf,
        a_prime: PathBuf,
        #[command(flatten)]
        solver: SolverOpts,
    },
    /// Convergence trace of A_k = A + s_k D.
    Converge {
        base: PathBuf,
        direction: PathBuf,
        /// inv-k, inv-k2 or geom:<ratio>
        #[arg(long, default_value = "inv-k")]
        schedule: Schedule,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Clamp negative entries of A_k at zero instead of failing.
        #[arg(long)]
        clamp: bool,
        /// table or csv
        #[arg(long, default_value = "table")]
        format: OutputFormat,
        #[command(flatten)]
        solver: SolverOpts,
    },
    /// ||X^m||^(1/m) trace and the scaling (non-uniformity) table.
    Gelfand {
        file: PathBuf,
        #[arg(long = "m-max", default_value_t = 10)]
        m_max: usize,
        /// Comma-separated positive scale factors.
        #[arg(long, value_delimiter = ',', default_value = "2,10,100")]
        alphas: Vec<f64>,
        /// table or csv
        #[arg(long, default_value = "table")]
        format: OutputFormat,
        #[command(flatten)]
        solver: SolverOpts,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: if pass { EXIT_OK } else { EXIT_FAIL },
        }
    }

    fn error(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Reducible
            | Error::Irreducible
            | Error::NotNilpotent
            | Error::Nilpotent
            | Error::NoPositiveLeftVector
            | Error::LeavesCone { .. }
            | Error::Overflow => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        };
        Failure(code, format!("error: {e}"))
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        Failure(
            EXIT_INPUT,
            format!("error: cannot read {}: {e}", path.display()),
        )
    })
}

fn load(path: &Path) -> std::result::Result<NonNegMatrix, Failure> {
    parse_matrix(&read(path)?)
        .map_err(|e| Failure(EXIT_INPUT, format!("error: {}: {e}", path.display())))
}

fn load_real(path: &Path) -> std::result::Result<RealMatrix, Failure> {
    parse_real_matrix(&read(path)?)
        .map_err(|e| Failure(EXIT_INPUT, format!("error: {}: {e}", path.display())))
}

fn check_solver(s: &SolverOpts) -> std::result::Result<(), Failure> {
    if !(s.tol.is_finite() && s.tol > 0.0) {
        return Err(Failure(
            EXIT_INPUT,
            format!("error: --tol must be positive, got {}", s.tol),
        ));
    }
    if s.max_iter == 0 {
        return Err(Failure(EXIT_INPUT, "error: --max-iter must be >= 1".into()));
    }
    Ok(())
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn interval(lo: f64, hi: f64) -> String {
    format!("[{}, {}]", num(lo), num(hi))
}

fn vector(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| num(*x)).collect();
    format!("[{}]", items.join(", "))
}

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_analyze(file: &Path, solver: &SolverOpts) -> CmdResult {
    check_solver(solver)?;
    let a = load(file)?;
    let analysis = analyze_root(&a, solver.tol, solver.max_iter)?;
    let root = &analysis.root;
    let fnf = &analysis.fnf;
    let mut out = String::new();
    writeln!(out, "dimension: {}", a.n()).unwrap();
    writeln!(out, "irreducible: {}", yes_no(is_irreducible(&a))).unwrap();
    writeln!(out, "blocks: {}", list(&fnf.block_sizes())).unwrap();
    writeln!(out, "permutation: {}", list(fnf.perm.as_slice())).unwrap();
    match nilpotency_index(&a) {
        Some(p) => writeln!(out, "nilpotent: yes (p={p})").unwrap(),
        None => writeln!(out, "nilpotent: no").unwrap(),
    }
    writeln!(out, "rho: {}", interval(root.lo, root.hi)).unwrap();
    writeln!(out, "rho_mid: {}", num(root.mid())).unwrap();
    writeln!(out, "width: {}", num(root.width())).unwrap();
    writeln!(
        out,
        "converged: {} (iterations {})",
        yes_no(root.converged),
        root.iterations
    )
    .unwrap();
    if let Some(v) = &root.right_vector {
        writeln!(out, "right_vector: {}", vector(v)).unwrap();
    }
    if let Some(q) = &root.left_vector {
        writeln!(out, "left_vector: {}", vector(q)).unwrap();
    }
    if let Some(r) = root.residual {
        writeln!(out, "residual: {}", num(r)).unwrap();
    }
    if let Ok(q) = q_star(root) {
        writeln!(out, "q_star: {}", num(q)).unwrap();
    }
    if fnf.num_blocks() > 1 {
        for (b, cert) in analysis.blocks.iter().enumerate() {
            writeln!(
                out,
                "block {b}: indices {} rho {}",
                list(fnf.block_indices(b)),
                interval(cert.lo, cert.hi)
            )
            .unwrap();
        }
        let sb = spectral_block_of(fnf, solver.tol, solver.max_iter);
        writeln!(out, "spectral_block: {sb}").unwrap();
    }
    Ok(Outcome::ok(out, true))
}

fn cmd_certify(a_path: &Path, a_prime_path: &Path, solver: &SolverOpts) -> CmdResult {
    check_solver(solver)?;
    let a = load(a_path)?;
    let a_prime = load(a_prime_path)?;
    if a.n() != a_prime.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: a_prime.n(),
        }
        .into());
    }
    if !is_irreducible(&a) {
        return Err(Failure(
            EXIT_PRECONDITION,
            format!(
                "error: {} is reducible; the continuity certificate needs an irreducible A \
                 (run `perron analyze` to inspect its block structure)",
                a_path.display()
            ),
        ));
    }
    let pb = continuity_certificate(&a, &a_prime, solver.tol, solver.max_iter)?;
    let perturbed = perron_root(&a_prime, solver.tol, solver.max_iter)?;
    let pass = pb.admits(&perturbed) && pb.midpoint_within(&perturbed);

    let mut out = String::new();
    writeln!(out, "q_star: {}", num(pb.q_star)).unwrap();
    writeln!(out, "norm: {}", pb.norm.name()).unwrap();
    writeln!(out, "e_norm: {}", num(pb.e_norm)).unwrap();
    writeln!(out, "bound: {}", num(pb.bound)).unwrap();
    writeln!(out, "rho(A): {}", interval(pb.base.lo, pb.base.hi)).unwrap();
    writeln!(
        out,
        "enclosure: {}",
        interval(pb.enclosure.lo, pb.enclosure.hi)
    )
    .unwrap();
    writeln!(out, "rho(A'): {}", interval(perturbed.lo, perturbed.hi)).unwrap();
    writeln!(
        out,
        "shift: {}",
        num((perturbed.mid() - pb.base.mid()).abs())
    )
    .unwrap();
    writeln!(out, "soundness: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    Ok(Outcome::ok(out, pass))
}

fn cmd_converge(
    base: &Path,
    direction: &Path,
    schedule: Schedule,
    count: usize,
    clamp: bool,
    format: OutputFormat,
    solver: &SolverOpts,
) -> CmdResult {
    check_solver(solver)?;
    if count == 0 {
        return Err(Failure(EXIT_INPUT, "error: --count must be >= 1".into()));
    }
    let spec =
        SequenceSpec::new(load(base)?, load_real(direction)?, schedule, count).with_clamp(clamp);
    let trace = run_trace(&spec, solver.tol, solver.max_iter)?;
    let table = convergence_table(&trace).render(format);
    let pass = trace.all_hold();

    let mut out = String::new();
    if format == OutputFormat::Table {
        writeln!(out, "trace: {}", trace.kind.name()).unwrap();
        writeln!(out, "schedule: {schedule}, count {count}").unwrap();
        writeln!(out, "rho(A): {}", interval(trace.limit.lo, trace.limit.hi)).unwrap();
        writeln!(out, "direction_norm: {}", num(trace.direction_norm)).unwrap();
        match trace.kind {
            TraceKind::Irreducible => {
                writeln!(out, "q_star: {}", num(trace.q_star.unwrap_or(f64::NAN))).unwrap()
            }
            TraceKind::Reducible => writeln!(
                out,
                "spectral_block: {}",
                list(trace.spectral_block.as_deref().unwrap_or(&[]))
            )
            .unwrap(),
            TraceKind::Nilpotent => writeln!(
                out,
                "nilpotency_index: {}",
                trace.nilpotency_index.unwrap_or(0)
            )
            .unwrap(),
        }
        out.push('\n');
        out.push_str(&table);
        writeln!(out, "\nresult: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    } else {
        out.push_str(&table);
    }
    Ok(Outcome::ok(out, pass))
}

fn cmd_gelfand(
    file: &Path,
    m_max: usize,
    alphas: &[f64],
    format: OutputFormat,
    solver: &SolverOpts,
) -> CmdResult {
    check_solver(solver)?;
    if m_max == 0 {
        return Err(Failure(EXIT_INPUT, "error: --m-max must be >= 1".into()));
    }
    if let Some(a) = alphas.iter().find(|&&a| !(a.is_finite() && a > 0.0)) {
        return Err(Failure(
            EXIT_INPUT,
            format!("error: --alphas must be positive, got {a}"),
        ));
    }
    let x = load(file)?;
    let trace = gelfand_trace(&x, m_max, solver.tol, solver.max_iter)?;
    let demo = nonuniformity_demo(&x, m_max, alphas, solver.tol, solver.max_iter)?;
    let pass = trace.all_hold() && demo.all_hold();

    let mut out = String::new();
    match format {
        OutputFormat::Table => {
            writeln!(out, "rho(X): {}", interval(trace.root.lo, trace.root.hi)).unwrap();
            out.push('\n');
            out.push_str(&gelfand_table(&trace).render(format));
            writeln!(
                out,
                "\nresidual(X) at m={}: {}",
                demo.m,
                num(demo.base.value)
            )
            .unwrap();
            if demo.vacuous {
                writeln!(
                    out,
                    "note: f_m(X) equals rho(X) to rounding; the scaling demo is vacuous"
                )
                .unwrap();
            }
            out.push('\n');
            out.push_str(&demo_table(&demo).render(format));
            writeln!(out, "\nresult: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
        }
        OutputFormat::Csv => {
            writeln!(out, "# gelfand").unwrap();
            out.push_str(&gelfand_table(&trace).render(format));
            writeln!(
                out,
                "# nonuniformity m={}{}",
                demo.m,
                if demo.vacuous { " vacuous" } else { "" }
            )
            .unwrap();
            out.push_str(&demo_table(&demo).render(format));
        }
    }
    Ok(Outcome::ok(out, pass))
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze { file, solver } => cmd_analyze(file, solver),
        Command::Certify { a, a_prime, solver } => cmd_certify(a, a_prime, solver),
        Command::Converge {
            base,
            direction,
            schedule,
            count,
            clamp,
            format,
            solver,
        } => cmd_converge(base, direction, *schedule, *count, *clamp, *format, solver),
        Command::Gelfand {
            file,
            m_max,
            alphas,
            format,
            solver,
        } => cmd_gelfand(file, *m_max, alphas, *format, solver),
    };
    result.unwrap_or_else(|Failure(code, msg)| Outcome::error(code, msg))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::error(EXIT_INPUT, text)
            } else {
                Outcome::ok(text, true)
            }
        }
    }
}
