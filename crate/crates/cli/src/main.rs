//! `flagops`: compute operation tables, Schubert data and invariant checks
//! for equivariant oriented cohomology of flag varieties.

mod config;
mod render;
mod run;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{Basis, Command, ConfigError, DatumConfig, JobConfig, LatticeKind, OutputFormat, TheoryConfig};

/// Flags override the matching top-level fields of the config document.
#[derive(Parser, Debug)]
#[command(name = "flagops", version, about)]
struct Args {
    /// Job config as JSON; `-` reads standard input.
    config: Option<PathBuf>,
    /// compute, verify or schubert-table.
    #[arg(long, value_parser = parse_command)]
    command: Option<Command>,
    /// Root datum designator such as A2 or A1xB2.
    #[arg(long)]
    datum: Option<String>,
    /// sc or adj.
    #[arg(long, value_parser = parse_lattice)]
    lattice: Option<LatticeKind>,
    /// Comma-separated simple-root indices, counted from 1.
    #[arg(long, value_delimiter = ',')]
    theta: Option<Vec<usize>>,
    /// Source law name, over the integers unless the config gives a ring.
    #[arg(long)]
    law: Option<String>,
    /// Operation as inline JSON, e.g. '{"kind":"steenrod","p":2}'.
    #[arg(long)]
    operation: Option<String>,
    /// schubert or qdual.
    #[arg(long, value_parser = parse_basis)]
    basis: Option<Basis>,
    #[arg(long)]
    precision: Option<i32>,
    /// json or table.
    #[arg(long, value_parser = parse_output)]
    output: Option<OutputFormat>,
}

fn from_str<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_command(s: &str) -> Result<Command, String> {
    from_str(s)
}

fn parse_lattice(s: &str) -> Result<LatticeKind, String> {
    from_str(s)
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    from_str(s)
}

fn parse_output(s: &str) -> Result<OutputFormat, String> {
    from_str(s)
}

fn load(args: &Args) -> Result<JobConfig, ConfigError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| ConfigError::new("", format!("reading standard input: {e}")))?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| ConfigError::new("", format!("reading {}: {e}", path.display())))?
            };
            JobConfig::from_json(&text)?
        }
        None => {
            let kind = args
                .datum
                .clone()
                .ok_or_else(|| ConfigError::new("datum", "give a config document or --datum"))?;
            JobConfig { datum: DatumConfig { kind, ..Default::default() }, ..Default::default() }
        }
    };
    if let Some(c) = args.command {
        cfg.command = c;
    }
    if let Some(d) = &args.datum {
        cfg.datum.kind = d.clone();
        cfg.datum.rank = None;
    }
    if let Some(l) = args.lattice {
        cfg.datum.lattice = l;
    }
    if let Some(t) = &args.theta {
        cfg.datum.theta = t.clone();
    }
    if let Some(law) = &args.law {
        match &mut cfg.source_theory {
            Some(theory) => theory.law = law.clone(),
            None => cfg.source_theory = Some(TheoryConfig { law: law.clone(), ring: None, params: Default::default() }),
        }
    }
    if let Some(op) = &args.operation {
        let de = &mut serde_json::Deserializer::from_str(op);
        let parsed = serde_path_to_error::deserialize(de)
            .map_err(|e| ConfigError::new(format!("operation.{}", e.path()), e.into_inner().to_string()))?;
        cfg.operation = Some(parsed);
    }
    if let Some(b) = args.basis {
        cfg.basis = b;
    }
    if let Some(p) = args.precision {
        cfg.precision = Some(p);
    }
    if let Some(o) = args.output {
        cfg.output = o;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match load(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    match run::run(&cfg) {
        Ok(out) => {
            let text = match cfg.output {
                OutputFormat::Json => serde_json::to_string_pretty(&out.document).expect("JSON values serialize") + "\n",
                OutputFormat::Table => out.text,
            };
            // A closed pipe on the reading side is not an error of ours.
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::from(out.exit_code as u8),
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
