//! Command-line front end: `compare` a single configuration, `sweep` a
//! parameter grid to CSV/JSON, `verify` the numerical property suites.

mod config;
mod report;
mod suites;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{parse_config, parse_convention, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "cvmem",
    about = "Compare storing entanglement vs storing squeezing in noisy Gaussian quantum memories",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one configuration and report both storage orders.
    Compare {
        /// Run-configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Write the machine-readable report here (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config's loss-noise convention.
        #[arg(long)]
        convention: Option<String>,
    },
    /// Evaluate a 1D/2D parameter grid and emit CSV or JSON records.
    Sweep {
        /// Run-configuration file (must define sweep axes).
        #[arg(long)]
        config: PathBuf,
        /// Output path (overrides the config's `[output]` path).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format (overrides the config).
        #[arg(long)]
        format: Option<FormatArg>,
        /// Grid resolution `n1xn2` (or `n1` for one axis), overriding the
        /// configured step counts.
        #[arg(long)]
        grid: Option<String>,
        /// Override the config's loss-noise convention.
        #[arg(long)]
        convention: Option<String>,
    },
    /// Run the numerical property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Seed for all randomized checks.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Core,
    Criteria,
    Appendix,
    Heuristics,
    All,
}

fn load_config(path: &PathBuf, convention: Option<&str>) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config `{}`: {e}", path.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| e.to_string())?;
    if let Some(conv) = convention {
        cfg.convention = parse_convention(conv).map_err(|e| e.to_string())?;
    }
    Ok(cfg)
}

fn parse_grid(spec: &str, axes: usize) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = spec.split('x').collect();
    if parts.len() != axes {
        return Err(format!(
            "--grid `{spec}` specifies {} resolutions but the config has {axes} axes",
            parts.len()
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| format!("bad grid resolution `{p}`"))
                .and_then(|n| {
                    if n >= 2 {
                        Ok(n)
                    } else {
                        Err("grid resolutions must be at least 2".into())
                    }
                })
        })
        .collect()
}

fn cmd_compare(config: PathBuf, out: Option<PathBuf>, convention: Option<String>) -> Result<(), String> {
    let cfg = load_config(&config, convention.as_deref())?;
    if !cfg.axes.is_empty() {
        return Err("`compare` takes a config without sweep axes; use `sweep`".into());
    }
    let text = report::compare_text(&cfg)?;
    print!("{text}");
    if let Some(path) = out {
        let json = report::compare_json(&cfg)?;
        std::fs::write(&path, json).map_err(|e| format!("cannot write `{}`: {e}", path.display()))?;
        println!("machine-readable report written to {}", path.display());
    }
    Ok(())
}

fn cmd_sweep(
    config: PathBuf,
    out: Option<PathBuf>,
    format: Option<FormatArg>,
    grid: Option<String>,
    convention: Option<String>,
) -> Result<(), String> {
    let mut cfg = load_config(&config, convention.as_deref())?;
    if cfg.axes.is_empty() {
        return Err("`sweep` needs a [sweep] section with 1 or 2 axes".into());
    }
    if let Some(spec) = grid {
        let resolutions = parse_grid(&spec, cfg.axes.len())?;
        for (axis, steps) in cfg.axes.iter_mut().zip(resolutions) {
            axis.steps = steps;
        }
    }
    if let Some(f) = format {
        cfg.format = match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    let out_path = out
        .or_else(|| cfg.out_path.clone())
        .ok_or("no output path: pass --out or set [output] path")?;

    let records = sweep::run_sweep(&cfg)?;
    let file = std::fs::File::create(&out_path)
        .map_err(|e| format!("cannot create `{}`: {e}", out_path.display()))?;
    let writer = std::io::BufWriter::new(file);
    match cfg.format {
        OutputFormat::Csv => sweep::write_csv(writer, &cfg.axes, &records),
        OutputFormat::Json => sweep::write_json(writer, &cfg.axes, &records),
    }
    .map_err(|e| format!("cannot write `{}`: {e}", out_path.display()))?;

    let s = sweep::summarize(&records);
    println!("wrote {} records to {}", s.points, out_path.display());
    println!(
        "delta_en > 0 on {:.1}% of the grid, < 0 on {:.1}%; delta_f_bar > 0 on {:.1}%",
        100.0 * s.frac_delta_en_positive,
        100.0 * s.frac_delta_en_negative,
        100.0 * s.frac_delta_f_positive
    );
    println!(
        "delta_en range [{:.6}, {:.6}]; physical channels on {:.1}% of the grid",
        s.min_delta_en,
        s.max_delta_en,
        100.0 * s.frac_physical
    );
    Ok(())
}

fn cmd_verify(suite: Suite, seed: u64) -> Result<bool, String> {
    let all: [(&str, Suite, suites::SuiteFn); 4] = [
        ("core", Suite::Core, suites::core_suite),
        ("criteria", Suite::Criteria, suites::criteria_suite),
        ("appendix", Suite::Appendix, suites::appendix_suite),
        ("heuristics", Suite::Heuristics, suites::heuristics_suite),
    ];
    let selected: Vec<(&str, suites::SuiteFn)> = all
        .iter()
        .filter(|(_, s, _)| suite == Suite::All || *s == suite)
        .map(|(n, _, f)| (*n, *f))
        .collect();
    Ok(suites::run(&selected, seed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compare {
            config,
            out,
            convention,
        } => cmd_compare(config, out, convention).map(|()| true),
        Command::Sweep {
            config,
            out,
            format,
            grid,
            convention,
        } => cmd_sweep(config, out, format, grid, convention).map(|()| true),
        Command::Verify { suite, seed } => cmd_verify(suite, seed),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::FAILURE
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
