//! `cellspace`: batch runs over cell spaces driven by TOML configs.
//!
//! Exit codes: 0 pass, 2 property violation (a witness file is written),
//! 1 usage or config error.

mod commands;
mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{Options, Outcome};

#[derive(Parser)]
#[command(name = "cellspace", version, about = "Følner sets, harem matchings and paradoxical decompositions on cell spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Evaluate family members in parallel; output order is unchanged.
    #[arg(long, global = true)]
    parallel: bool,
    /// Seed for randomly generated measures.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Clone, PartialEq, Eq)]
enum Command {
    /// Verify the semi-action axioms on the configured window.
    Axioms,
    /// Følner boundary ratios of a family under the expansion set.
    Ratios,
    /// First family member whose worst ratio is below epsilon.
    FolnerSearch,
    /// Build a doubling set from a failed search and check it.
    Doubling,
    /// (1,k)-harem matching on the configured window.
    Harem,
    /// Matching, 2-to-1 map and decomposition, then verify it.
    Paradox,
    /// Verify a stored decomposition.
    VerifyDecomposition,
    /// Semi-invariance of a measure on a finite space.
    Measures,
    /// Transfer conditions for a subgroup H.
    Transfer,
    /// Summarise a space.
    Describe {
        /// Catalog name; overrides the config.
        #[arg(long)]
        space: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Ratios => "ratios",
            Command::FolnerSearch => "folner-search",
            Command::Doubling => "doubling",
            Command::Harem => "harem",
            Command::Paradox => "paradox",
            Command::VerifyDecomposition => "verify-decomposition",
            Command::Measures => "measures",
            Command::Transfer => "transfer",
            Command::Describe { .. } => "describe",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if let Command::Describe { space: Some(name) } = &cli.command {
        let space = cellspace::catalog::space(name)?;
        emit(cli.out.as_deref(), commands::describe(&space).as_bytes())?;
        return Ok(true);
    }
    let Some(path) = &cli.config else { bail!("--config is required for {}", cli.command.name()) };
    let loaded = config::load(path)?;
    let opts = Options { parallel: cli.parallel, seed: cli.seed };
    let outcome = match &cli.command {
        Command::Describe { .. } => {
            emit(cli.out.as_deref(), commands::describe(&loaded.space).as_bytes())?;
            return Ok(true);
        }
        Command::Axioms => commands::axioms(&loaded)?,
        Command::Ratios => commands::ratios_cmd(&loaded, &opts)?,
        Command::FolnerSearch => commands::folner_search_cmd(&loaded)?,
        Command::Doubling => commands::doubling(&loaded)?,
        Command::Harem => commands::harem(&loaded)?,
        Command::Paradox => commands::paradox(&loaded)?,
        Command::VerifyDecomposition => commands::verify_decomposition_cmd(&loaded)?,
        Command::Measures => commands::measures(&loaded, &opts)?,
        Command::Transfer => commands::transfer(&loaded, &opts)?,
    };
    let format = cli.format.unwrap_or(if cli.command == Command::Ratios { Format::Csv } else { Format::Json });
    let bytes = render(&cli.command, &loaded, &outcome, format)?;
    emit(cli.out.as_deref(), &bytes)?;
    if let Some(w) = &outcome.witness {
        let path = witness_path(cli.out.as_deref());
        let doc = json!({
            "command": cli.command.name(),
            "space": loaded.space.name(),
            "config_sha256": loaded.digest,
            "witness": w,
        });
        std::fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?;
        eprintln!("violation; witness written to {}", path.display());
    }
    Ok(outcome.passed)
}

fn witness_path(out: Option<&Path>) -> PathBuf {
    match out.and_then(Path::parent) {
        Some(dir) => dir.join("witness.json"),
        None => PathBuf::from("witness.json"),
    }
}

fn render(cmd: &Command, l: &config::Loaded, o: &Outcome, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let doc = json!({
                "command": cmd.name(),
                "space": l.space.name(),
                "config_sha256": l.digest,
                "coordinate_rule": l.space.coordinate_rule(),
                "passed": o.passed,
                "result": o.result,
            });
            Ok((serde_json::to_string_pretty(&doc)? + "\n").into_bytes())
        }
        Format::Csv => {
            let Some(t) = &o.table else { bail!("{} has no CSV form; use --format json", cmd.name()) };
            let mut buf = Vec::new();
            writeln!(buf, "# command={}", cmd.name())?;
            writeln!(buf, "# config_sha256={}", l.digest)?;
            writeln!(buf, "# coordinate_rule={}", l.space.coordinate_rule())?;
            writeln!(buf, "# passed={}", o.passed)?;
            let mut w = csv::Writer::from_writer(buf);
            w.write_record(&t.header)?;
            for r in &t.rows {
                w.write_record(r)?;
            }
            Ok(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)
        }
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}
