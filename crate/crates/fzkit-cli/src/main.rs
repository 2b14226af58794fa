//! `fzkit`: exact volumes, decompositions and bodies from the command line.
//!
//! Exit status: 0 on success, 1 when a computation or acceptance check
//! fails, 2 for malformed input. `FZKIT_THREADS` caps the worker threads.

mod commands;
mod config;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, FamilyArgs, Format, RunConfig};
use error::CliError;

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("FZKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("FZKIT_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Failed(e.to_string()))
}

fn default_format(cmd: &Command) -> Format {
    match cmd {
        Command::Volume { t: None, samples: Some(_), .. } | Command::Slice { t: None, .. } => Format::Csv,
        Command::Volume { .. } | Command::Check { .. } => Format::Text,
        _ => Format::Json,
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
    let samples = match &cli.command {
        Command::Volume { samples, .. } | Command::Slice { samples, .. } => *samples,
        _ => None,
    };
    let family_args: Option<&FamilyArgs> = match &cli.command {
        Command::Zariski { family, model: None, .. } => Some(family),
        Command::Volume { family, .. }
        | Command::Body { family }
        | Command::Slice { family, .. }
        | Command::Cone { family }
        | Command::Seshadri { family } => Some(family),
        _ => None,
    };
    let cfg = RunConfig { family: family_args.map(FamilyArgs::resolve).transpose()?, format, output: cli.output, samples };

    let (text, ok) = match &cli.command {
        Command::Zariski { model: Some(m), class, family, .. } => {
            if !family.is_empty() {
                return Err(CliError::Usage("--model cannot be combined with family options".into()));
            }
            (commands::zariski_surface(&cfg, m, class)?, true)
        }
        Command::Zariski { t, .. } => {
            let t = t.as_ref().ok_or_else(|| CliError::Usage("zariski needs --t (or --model and --class)".into()))?;
            (commands::zariski_family(&cfg, t)?, true)
        }
        Command::Volume { t, .. } => (commands::volume(&cfg, t.as_ref())?, true),
        Command::Body { .. } => (commands::body_cmd(&cfg)?, true),
        Command::Slice { t, .. } => (commands::slice(&cfg, t.as_ref())?, true),
        Command::Glue { family } => (commands::glue(&cfg, *family)?, true),
        Command::Cone { .. } => (commands::cone(&cfg)?, true),
        Command::Seshadri { .. } => (commands::seshadri(&cfg)?, true),
        Command::Check { tier, seed } => commands::check(&cfg, *tier, *seed)?,
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fzkit: {e}");
            if let CliError::Usage(_) = e {
                eprintln!("Try `fzkit --help` for usage.");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
