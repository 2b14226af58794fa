//! Command-line arguments and their validated form.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fzkit::acceptance::Tier;
use fzkit::ratgeom::Rat;
use fzkit::threefold::{FamilyKind, ModelFamily};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "fzkit", version, about = "Exact volumes, decompositions and Newton-Okounkov bodies of three threefold families")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Off,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    /// cxp2, ccc or cxjac.
    #[arg(long)]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub a: Option<Rat>,
    #[arg(long)]
    pub b: Option<Rat>,
    /// Degrees, comma separated: d1,d2,d3 for ccc (or a,b for cxp2).
    #[arg(long, value_delimiter = ',')]
    pub d: Vec<Rat>,
    #[arg(long)]
    pub s: Option<Rat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// σ-decomposition of L_t on a family, or Zariski decomposition of a
    /// class on a surface model.
    Zariski {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        t: Option<Rat>,
        /// Built-in surface model name or path to a model JSON file.
        #[arg(long, conflicts_with = "family")]
        model: Option<String>,
        #[arg(long, value_delimiter = ',', requires = "model")]
        class: Vec<Rat>,
    },
    /// vol(L_t): a single value with --t, a CSV sweep with --samples, else
    /// the cubic pieces.
    Volume {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, conflicts_with = "samples")]
        t: Option<Rat>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// The infinitesimal Newton-Okounkov body (json or off).
    Body {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// The slice at --t, or a CSV of slice areas with --samples.
    Slice {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, conflicts_with = "samples")]
        t: Option<Rat>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// The 4D body glued over the family parameter.
    Glue {
        #[arg(long)]
        family: FamilyKind,
    },
    /// Effective, movable and nef cones with μ, ε and ν.
    Cone {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Curve Seshadri constant and the projection area comparison.
    Seshadri {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Runs the acceptance suite.
    Check {
        #[arg(long)]
        tier: Option<Tier>,
        #[arg(long, default_value_t = fzkit::acceptance::DEFAULT_SEED)]
        seed: u64,
    },
}

/// A parsed invocation: the family (when the command needs one), output
/// format and destination, and the sweep size.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: Option<ModelFamily>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub samples: Option<usize>,
}

impl FamilyArgs {
    pub fn is_empty(&self) -> bool {
        self.family.is_none() && self.a.is_none() && self.b.is_none() && self.d.is_empty() && self.s.is_none()
    }

    pub fn resolve(&self) -> Result<ModelFamily, CliError> {
        let kind = self.family.ok_or_else(|| CliError::Usage("--family is required".into()))?;
        let stray = |flag: &str| CliError::Usage(format!("--{flag} does not apply to family {kind}"));
        let values: Vec<Rat> = match kind {
            FamilyKind::CxP2 => {
                if self.s.is_some() {
                    return Err(stray("s"));
                }
                match (&self.a, &self.b, self.d.as_slice()) {
                    (Some(a), Some(b), []) => vec![a.clone(), b.clone()],
                    (None, None, [a, b]) => vec![a.clone(), b.clone()],
                    _ => return Err(CliError::Usage("cxp2 needs --a and --b (or --d a,b)".into())),
                }
            }
            FamilyKind::Ccc => {
                if self.a.is_some() || self.b.is_some() || self.s.is_some() {
                    return Err(stray("a/--b/--s"));
                }
                if self.d.len() != 3 {
                    return Err(CliError::Usage("ccc needs --d d1,d2,d3".into()));
                }
                self.d.clone()
            }
            FamilyKind::CxJac => {
                if self.a.is_some() || self.b.is_some() || !self.d.is_empty() {
                    return Err(stray("a/--b/--d"));
                }
                vec![self.s.clone().ok_or_else(|| CliError::Usage("cxjac needs --s".into()))?]
            }
        };
        Ok(ModelFamily::from_values(kind, &values)?)
    }
}
