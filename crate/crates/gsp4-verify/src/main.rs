use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gsp4_verify::{config::parse_suites, emit, run, ConfigError, SuiteConfig};

/// Runs exact identity checks for local GL2/GSp4 computations.
#[derive(Debug, Parser)]
#[command(name = "gsp4-verify", version)]
struct Cli {
    /// Flat `key = value` configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suites to run (comma separated or repeated); `all` selects every suite.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    suite: Option<Vec<String>>,
    /// Primes to sweep (comma separated).
    #[arg(long)]
    ell: Option<String>,
    /// Largest `a` for branching.
    #[arg(long)]
    a: Option<String>,
    /// Largest `b` for branching.
    #[arg(long)]
    b: Option<String>,
    /// Largest `k1`.
    #[arg(long)]
    k1: Option<String>,
    /// Largest `k2`.
    #[arg(long)]
    k2: Option<String>,
    /// Largest level `t`.
    #[arg(long)]
    t: Option<String>,
    /// Largest wild `m`.
    #[arg(long)]
    m: Option<String>,
    /// Largest wild `n`.
    #[arg(long)]
    n: Option<String>,
    /// Bessel series order.
    #[arg(long)]
    order: Option<String>,
    /// Report format: json, tsv or human.
    #[arg(long)]
    format: Option<String>,
    /// Worker count; defaults to GSP4_JOBS or the number of CPUs.
    #[arg(long)]
    jobs: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report 0 ms for every case so reports are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

fn build_config(cli: &Cli) -> Result<SuiteConfig, ConfigError> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &cli.config {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(shown.clone(), e))?;
        cfg.apply_file_text(&shown, &text)?;
    }
    if let Some(s) = &cli.suite {
        cfg.suites = parse_suites(s)?;
    }
    let flags = [
        ("ell", &cli.ell),
        ("a", &cli.a),
        ("b", &cli.b),
        ("k1", &cli.k1),
        ("k2", &cli.k2),
        ("t", &cli.t),
        ("m", &cli.m),
        ("n", &cli.n),
        ("order", &cli.order),
        ("format", &cli.format),
        ("jobs", &cli.jobs),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if cli.no_timing {
        cfg.timing = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("gsp4-verify: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gsp4-verify: {e}");
            return ExitCode::from(2);
        }
    };
    let text = emit(&report, cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("gsp4-verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
