//! `swe`: run the exact-Riemann-solution Godunov scheme from declarative
//! configs or built-in fixtures, emit CSV/plot/JSON artifacts, and inspect
//! two-state problems.
//!
//! Exit codes: 0 on success, 2 when some Riemann problem admits no
//! solution, 3 when an iteration fails to converge, 1 for configuration
//! and I/O problems.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use swe_core::godunov::{advance, init_cell_averages, Grid, SchemeConfig};
use swe_core::riemann::{classify, sample, solve};
use swe_core::{Gravity, State, SweError};

use swe_cli::config::{self, InitialData, Overrides, ProblemConfig};
use swe_cli::fixtures::{table_fixture, test_fixture, TableKind};
use swe_cli::report::{self, RunReport};
use swe_cli::l1;

#[derive(Parser)]
#[command(
    name = "swe",
    version,
    about = "Shallow water over a discontinuous bottom: exact Riemann solutions \
             driving a well-balanced Godunov scheme"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
struct OverrideArgs {
    /// Number of cells.
    #[arg(long)]
    n: Option<usize>,
    /// Courant number.
    #[arg(long)]
    cfl: Option<f64>,
    /// Final time.
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Preferred constructions at multi-solution interfaces
    /// (a1|a2|a3|b1|b2|b3; repeatable or comma-separated, earlier wins).
    #[arg(long = "prefer")]
    prefer: Vec<String>,
    /// Directory for artifacts not given explicit paths.
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a problem described by a TOML config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Run one of the built-in simulation fixtures.
    Test {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
        number: u8,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Print a built-in stationary-contact composition fixture (a1-a5, b1-b3).
    Table { id: String },
    /// Classify two-state data: existence, multiplicity, and every solution.
    Classify {
        /// Left state as `h,u,a`.
        #[arg(long, value_name = "h,u,a")]
        left: String,
        /// Right state as `h,u,a`.
        #[arg(long, value_name = "h,u,a")]
        right: String,
        /// Gravitational acceleration.
        #[arg(long, default_value_t = 9.8)]
        g: f64,
    },
}

/// A terminal failure: what to print on stderr and which code to exit with.
struct Failure {
    code: u8,
    message: String,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 1,
            message: format!("{e:#}"),
        }
    }
}

/// Exit code for a solver error, looking through interface wrappers.
fn solver_exit_code(e: &SweError) -> u8 {
    match e {
        SweError::NoSolution => 2,
        SweError::ConvergenceFailure { .. } => 3,
        SweError::Interface { source, .. } => solver_exit_code(source),
        _ => 1,
    }
}

fn solver_failure(e: SweError, place: &str) -> Failure {
    Failure {
        code: solver_exit_code(&e),
        message: format!("{place}: {e}"),
    }
}

/// Describe where in the grid an advance error happened.
fn advance_failure(grid: &Grid, e: SweError) -> Failure {
    let place = match &e {
        SweError::Interface { index, .. } => {
            let x = grid.x0 + *index as f64 * grid.dx;
            format!("during time stepping (interface {index} at x = {x:.6})")
        }
        SweError::NegativeHeight { cell, .. } => {
            format!("during time stepping (cell {cell} at x = {:.6})", grid.cell_center(*cell))
        }
        _ => "during time stepping".to_string(),
    };
    solver_failure(e, &place)
}

fn build_grid(cfg: &ProblemConfig) -> Grid {
    match &cfg.initial {
        InitialData::Jump {
            left,
            right,
            split_x,
        } => init_cell_averages(left, right, *split_x, cfg.x0, cfg.x1, cfg.n),
        InitialData::Profile(cells) => Grid {
            x0: cfg.x0,
            x1: cfg.x1,
            dx: (cfg.x1 - cfg.x0) / cfg.n as f64,
            cells: cells.clone(),
        },
    }
}

/// Advance the problem to its final time and assemble the full report.
fn execute(cfg: &ProblemConfig) -> Result<RunReport, Failure> {
    let started = Instant::now();
    let g = Gravity(cfg.g);
    let grid0 = build_grid(cfg);
    let scheme = SchemeConfig {
        g,
        cfl: cfg.cfl,
        preference: cfg.preference.clone(),
        ..SchemeConfig::default()
    };
    let (grid, adv) = advance(&grid0, &scheme, cfg.t_end).map_err(|e| advance_failure(&grid0, e))?;
    let xs: Vec<f64> = (0..grid.n()).map(|i| grid.cell_center(i)).collect();
    let (exact, l1_error, classification, tag) = match &cfg.initial {
        InitialData::Jump {
            left,
            right,
            split_x,
        } if left.h > 0.0 && right.h > 0.0 => {
            let sol = solve(left, right, g, &cfg.preference)
                .map_err(|e| solver_failure(e, "for the initial-data Riemann problem"))?;
            let exact: Vec<State> = xs
                .iter()
                .map(|x| sample(&sol, (x - split_x) / cfg.t_end, g))
                .collect();
            let err = l1::l1_error(&grid.cells, &exact, grid.dx, &cfg.norm)
                .map_err(|e| solver_failure(e, "while computing the L1 error"))?;
            let class = classify(left, right, g).ok();
            (Some(exact), Some(err), class, Some(sol.tag))
        }
        _ => (None, None, None, None),
    };
    Ok(RunReport {
        xs,
        numeric: grid.cells,
        exact,
        l1_error,
        norm: cfg.norm,
        classification,
        tag,
        advance: adv,
        t_end: cfg.t_end,
        wall: started.elapsed(),
    })
}

/// Resolve artifact paths (explicit config paths win over `out_dir/label`),
/// write all three artifacts, and narrate on stdout.
fn emit(
    label: &str,
    cfg: &ProblemConfig,
    out_dir: Option<&Path>,
    run: &RunReport,
) -> anyhow::Result<()> {
    let dir = out_dir.unwrap_or(Path::new("."));
    if !dir.as_os_str().is_empty() {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let csv_path = cfg
        .output
        .csv
        .clone()
        .unwrap_or_else(|| dir.join(format!("{label}.csv")));
    let gp_path = cfg
        .output
        .gnuplot
        .clone()
        .unwrap_or_else(|| dir.join(format!("{label}.gp")));
    let json_path = cfg
        .output
        .json
        .clone()
        .unwrap_or_else(|| dir.join(format!("{label}.json")));
    run.write_csv(&csv_path)?;
    let csv_name = csv_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());
    report::write_gnuplot(&gp_path, &csv_name, label)?;
    run.write_json(&json_path)?;
    println!("  verdict: {}", run.verdict());
    match run.l1_error {
        Some(e) => println!(
            "  l1 error = {e:.6e} ({}) after {} steps (max Courant {:.3})",
            run.norm, run.advance.steps, run.advance.max_courant
        ),
        None => println!(
            "  no exact profile for this initial data; {} steps (max Courant {:.3})",
            run.advance.steps, run.advance.max_courant
        ),
    }
    println!(
        "  wrote {}, {}, {}",
        csv_path.display(),
        gp_path.display(),
        json_path.display()
    );
    Ok(())
}

fn overrides_of(args: &OverrideArgs) -> Result<Overrides, Failure> {
    Ok(Overrides {
        n: args.n,
        cfl: args.cfl,
        t_end: args.t_end,
        prefer: config::parse_tags(&args.prefer).map_err(Failure::from)?,
    })
}

fn cmd_run(path: &Path, args: &OverrideArgs) -> Result<(), Failure> {
    let mut cfg = config::load(path)?;
    cfg.apply(&overrides_of(args)?);
    cfg.validate().map_err(Failure::from)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".to_string());
    println!("run {label}: N = {}, t_end = {}, cfl = {}, g = {}", cfg.n, cfg.t_end, cfg.cfl, cfg.g);
    let run = execute(&cfg)?;
    emit(&label, &cfg, args.out_dir.as_deref(), &run).map_err(Failure::from)
}

fn cmd_test(number: u8, args: &OverrideArgs) -> Result<(), Failure> {
    let fixture = test_fixture(number).expect("clap bounds the fixture number");
    let mut cfg = fixture.config;
    cfg.apply(&overrides_of(args)?);
    cfg.validate().map_err(Failure::from)?;
    println!("test {number}: {}", fixture.title);
    if let Some(note) = fixture.note {
        println!("  note: {note}");
    }
    println!("  N = {}, t_end = {}, cfl = {}, g = {}", cfg.n, cfg.t_end, cfg.cfl, cfg.g);
    let run = execute(&cfg)?;
    emit(&format!("test{number}"), &cfg, args.out_dir.as_deref(), &run).map_err(Failure::from)
}

fn cmd_table(id: &str) -> Result<(), Failure> {
    let t = table_fixture(id).ok_or_else(|| Failure {
        code: 1,
        message: format!("unknown table `{id}` (expected a1-a5 or b1-b3)"),
    })?;
    let g = Gravity(9.8);
    println!(
        "table {}: left state (h = {}, u = {}, a = {}) toward bottom level {}",
        t.id, t.left.h, t.left.u, t.left.a, t.a_right
    );
    if let Some(note) = t.note {
        println!("  note: {note}");
    }
    let (labels, computed): ([&str; 2], [Option<State>; 2]) = match t.kind {
        TableKind::FastEntry => {
            let c = swe_core::riemann::fast_entry_compositions(&t.left, t.a_right, g)
                .map_err(|e| solver_failure(e, "composing from the left state"))?;
            (
                ["partner-then-contact", "contact-then-partner"],
                [c.partner_then_contact, c.contact_then_partner],
            )
        }
        TableKind::SlowEntry => {
            let c = swe_core::riemann::slow_entry_compositions(&t.left, t.a_right, g)
                .map_err(|e| solver_failure(e, "composing from the left state"))?;
            (
                ["sonic-then-contact", "drop-then-partner"],
                [c.sonic_then_contact, c.drop_then_partner],
            )
        }
    };
    let mut all_good = true;
    for ((label, got), (h_ref, u_ref)) in labels.iter().zip(computed).zip(t.reference) {
        match got {
            Some(s) => {
                let ok = (s.h - h_ref).abs() <= t.tolerance && (s.u - u_ref).abs() <= t.tolerance;
                all_good &= ok;
                println!("  {label}:");
                println!("    computed  (h, u) = ({:.17e}, {:.17e})", s.h, s.u);
                println!("    reference (h, u) = ({h_ref}, {u_ref})");
                println!(
                    "    |diff| = ({:.3e}, {:.3e})  within {:.0e}: {}",
                    (s.h - h_ref).abs(),
                    (s.u - u_ref).abs(),
                    t.tolerance,
                    if ok { "yes" } else { "NO" }
                );
            }
            None => {
                all_good = false;
                println!("  {label}: unreachable (no stationary contact)");
            }
        }
    }
    println!(
        "  all values within tolerance: {}",
        if all_good { "yes" } else { "NO" }
    );
    Ok(())
}

fn parse_triple(text: &str) -> anyhow::Result<State> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    anyhow::ensure!(
        parts.len() == 3,
        "expected `h,u,a`, got `{text}` ({} fields)",
        parts.len()
    );
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().with_context(|| format!("bad number `{p}`")))
        .collect::<anyhow::Result<_>>()?;
    anyhow::ensure!(nums[0] >= 0.0, "height must be nonnegative, got {}", nums[0]);
    Ok(State::new(nums[0], nums[1], nums[2]))
}

fn cmd_classify(left: &str, right: &str, g: f64) -> Result<(), Failure> {
    let left = parse_triple(left).context("in --left").map_err(Failure::from)?;
    let right = parse_triple(right).context("in --right").map_err(Failure::from)?;
    if !(g > 0.0) {
        return Err(Failure {
            code: 1,
            message: format!("g must be positive, got {g}"),
        });
    }
    let report = classify(&left, &right, Gravity(g))
        .map_err(|e| solver_failure(e, "classifying the data"))?;
    print!("{}", report::classification_text(&report));
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Run { config, overrides } => cmd_run(config, overrides),
        Command::Test { number, overrides } => cmd_test(*number, overrides),
        Command::Table { id } => cmd_table(id),
        Command::Classify { left, right, g } => cmd_classify(left, right, *g),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
