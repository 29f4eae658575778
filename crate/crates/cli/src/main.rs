use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use twouni_cli::config::Located;
use twouni_cli::{emit_report, parse_config, run_command, Command, Format, RunConfig};
use twouni_core::Mode;

/// Verify 2-uninorms and decide migrativity on finite chains.
#[derive(Debug, Parser)]
#[command(name = "twouni", version)]
struct Cli {
    /// Config file with [run] and [operator NAME] sections.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_command)]
    command: Option<Command>,
    /// Grid subdivisions n (points 0, 1/n, ..., 1).
    #[arg(long)]
    grid: Option<u32>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Wall-clock budget in seconds for enumerate and audit.
    #[arg(long)]
    budget: Option<f64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

fn parse_command(s: &str) -> Result<Command, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: String| e)
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn load(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(n) = cli.grid {
        cfg.grid = Some(Located { value: n, line: 0 });
    }
    if let Some(m) = cli.mode {
        cfg.mode = m;
    }
    if let Some(c) = cli.command {
        cfg.command = Some(c);
    }
    if let Some(f) = cli.format {
        cfg.format = Some(f);
    }
    if let Some(o) = &cli.out {
        cfg.out = Some(o.clone());
    }
    if let Some(b) = cli.budget {
        cfg.budget = Some(Duration::try_from_secs_f64(b).map_err(|_| format!("bad budget {b}"))?);
    }
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err("jobs must be positive".into());
        }
        cfg.jobs = Some(j);
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_command(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = cfg.format.unwrap_or(Format::Human);
    let written = match &cfg.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            emit_report(&report, format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            emit_report(&report, format, &mut w).and_then(|_| w.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
