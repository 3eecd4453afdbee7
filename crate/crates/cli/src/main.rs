use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Deserialize;

use hopf32_core::classify::{
    check_golden, class_by_label, run, tables_to_json, tables_to_markdown, EngineConfig,
};
use hopf32_core::nichols::nichols_dimensions;
use hopf32_core::{BraidingMatrix, CycScalar};

#[derive(Parser)]
#[command(
    name = "hopf32",
    about = "Exact classification engine for 32-dimensional pointed Hopf algebras",
    version
)]
struct Cli {
    /// Configuration file (TOML); defaults to ./hopf32.toml when present
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Cap on the degree-by-degree growth of a Nichols algebra
    #[arg(long, global = true)]
    degree_cap: Option<usize>,

    /// Dimension budget; computations stop once the cumulative dimension
    /// passes it
    #[arg(long, global = true)]
    dim_budget: Option<u32>,

    /// Worker threads for per-module computations
    #[arg(long, global = true)]
    thread_count: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the classification for one group and print its tables
    Classify {
        /// Group identifier (C2, C2xC2, C4, C2xC2xC2, C2xC4, C8, D4, H,
        /// C2^4, C2xC2xC4, C4xC4, C2xC8, C16, B1..B6)
        #[arg(long)]
        group: String,
        /// Output format
        #[arg(long, default_value = "md")]
        format: String,
        /// Total dimension target (default 32)
        #[arg(long)]
        total_dim: Option<u32>,
    },
    /// Compute the Nichols algebra of a diagonal braiding matrix
    Nichols {
        /// Rows separated by ';', entries by ','; entries are roots of
        /// unity: 1, -1, i, -i, x (order 8), z (order 16), powers like x^3
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Derive the lifting family of a published module label
    Liftings {
        #[arg(long)]
        group: String,
        /// Published label, e.g. V5^4, W3^1, Y7^2
        #[arg(long)]
        module: String,
    },
    /// Run every group and diff against the bundled reference tables
    Check,
}

#[derive(Deserialize, Default)]
struct FileConfig {
    degree_cap: Option<usize>,
    dim_budget: Option<u32>,
    thread_count: Option<usize>,
    format: Option<String>,
}

fn load_file_config(path: Option<&PathBuf>) -> Result<FileConfig> {
    let p = match path {
        Some(p) => p.clone(),
        None => {
            let default = PathBuf::from("hopf32.toml");
            if !default.exists() {
                return Ok(FileConfig::default());
            }
            default
        }
    };
    let raw =
        std::fs::read_to_string(&p).with_context(|| format!("reading config {}", p.display()))?;
    toml::from_str(&raw).with_context(|| format!("parsing config {}", p.display()))
}

fn env_usize(key: &str) -> Option<usize> {
    std::env::var(key).ok().and_then(|v| v.parse().ok())
}

fn env_u32(key: &str) -> Option<u32> {
    std::env::var(key).ok().and_then(|v| v.parse().ok())
}

struct Settings {
    engine: EngineConfig,
    format: String,
    thread_count: Option<usize>,
}

/// Precedence: command-line flags, then environment, then config file.
fn settings(cli: &Cli, format_flag: Option<&str>) -> Result<Settings> {
    let file = load_file_config(cli.config.as_ref())?;
    let mut engine = EngineConfig::default();
    engine.degree_cap = cli
        .degree_cap
        .or_else(|| env_usize("HOPF32_DEGREE_CAP"))
        .or(file.degree_cap)
        .unwrap_or(engine.degree_cap);
    engine.dim_budget = cli
        .dim_budget
        .or_else(|| env_u32("HOPF32_DIM_BUDGET"))
        .or(file.dim_budget)
        .unwrap_or(engine.dim_budget);
    let thread_count = cli
        .thread_count
        .or_else(|| env_usize("HOPF32_THREAD_COUNT"))
        .or(file.thread_count);
    let format = format_flag
        .map(|s| s.to_string())
        .or_else(|| std::env::var("HOPF32_FORMAT").ok())
        .or(file.format)
        .unwrap_or_else(|| "md".to_string());
    Ok(Settings {
        engine,
        format,
        thread_count,
    })
}

fn parse_matrix(spec: &str) -> Result<BraidingMatrix> {
    let rows: Vec<Vec<CycScalar>> = spec
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| CycScalar::parse_symbol(e).map_err(anyhow::Error::from))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BraidingMatrix::from_rows(rows)?)
}

fn main() -> ExitCode {
    match try_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn try_main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let format_flag = match &cli.command {
        Command::Classify { format, .. } => Some(format.as_str()),
        _ => None,
    };
    let st = settings(&cli, format_flag)?;
    if let Some(n) = st.thread_count {
        hopf32_core::classify::configure_threads(n);
    }

    match &cli.command {
        Command::Classify {
            group, total_dim, ..
        } => {
            let mut cfg = st.engine;
            if let Some(t) = total_dim {
                cfg.total_dim = *t;
            }
            let r = run(group, &cfg)?;
            match st.format.as_str() {
                "json" => println!("{}", serde_json::to_string_pretty(&tables_to_json(&r)?)?),
                "md" => print!("{}", tables_to_markdown(&r)?),
                other => bail!("unknown format {other:?} (use json or md)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Nichols { matrix } => {
            let bm = parse_matrix(matrix)?;
            let report = nichols_dimensions(&bm, st.engine.degree_cap, st.engine.dim_budget)?;
            println!("{}", serde_json::to_string_pretty(&report.to_json())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Liftings { group, module } => {
            let r = run(group, &st.engine)?;
            let ci = class_by_label(&r, module)?;
            let c = &r.classes[ci];
            match &c.family {
                Some(f) => {
                    println!("{}", serde_json::to_string_pretty(&f.to_json(module))?);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    bail!(
                        "module {module} is not lifting-eligible: {}",
                        c.excluded_reason.clone().unwrap_or_default()
                    );
                }
            }
        }
        Command::Check => {
            let report = check_golden(&st.engine)?;
            print!("{}", report.render());
            if report.failed() > 0 {
                Ok(ExitCode::FAILURE)
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}
