//! Command line surface and run configuration.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use joubert_core::ffield::prime_power;
use joubert_core::Budget;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Find a Joubert generator of F_{q^6}/F_q (q a power of 2)
    JoubertSearch {
        #[arg(long)]
        q: u64,
    },
    /// List the irreducible t^6+at^4+bt^2+ct+d over F_q
    JoubertEnum {
        #[arg(long)]
        q: u64,
        /// Also write the list as CSV
        #[arg(long)]
        #[serde(skip)]
        csv: Option<PathBuf>,
    },
    /// Find a generator of F_{q^5}/F_q with vanishing σ_1 and σ_3
    Hermite {
        #[arg(long)]
        q: u64,
    },
    /// Point census of the cubic surface over F_q
    Surface {
        #[arg(long)]
        q: u64,
        /// Scan for singular points over F_{q^D}
        #[arg(long)]
        smooth_deg: Option<u32>,
    },
    /// No invariant plane inside the power-sum variety
    Obstruction {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        /// Cross-check against enumeration of every plane
        #[arg(long)]
        brute_force: bool,
    },
    /// Point counts on u^q - u = x^{2q+1} + x^{q+2} over F_{q^6}
    Curve {
        #[arg(long)]
        q: u64,
    },
    /// Count elements of F_{q^{2p^m}} with Tr(y^j) = 0 for j <= p
    Explore {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
    /// Run the full verification suite
    VerifyAll,
}

#[derive(Debug, Parser)]
#[command(
    name = "joubert",
    version,
    about = "Exhaustive finite-field checks around Joubert generators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest exhaustive scan allowed
    #[arg(long, global = true, env = "JOUBERT_BUDGET", default_value_t = Budget::DEFAULT.0 as u64)]
    pub budget: u64,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write the report here
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub budget: u64,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            budget: cli.budget,
            threads: cli.threads,
            out: cli.out,
            format: cli.format,
        }
    }
}

/// The part of the configuration that determines report content. Thread
/// count and output location are left out so reports are comparable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    #[serde(flatten)]
    pub command: Command,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub param: &'static str,
    pub message: String,
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid --{}: {}", self.param, self.message)
    }
}

impl std::error::Error for UsageError {}

fn usage(param: &'static str, message: impl Into<String>) -> UsageError {
    UsageError {
        param,
        message: message.into(),
    }
}

fn prime_power_q(q: u64) -> Result<(), UsageError> {
    prime_power(q)
        .map(|_| ())
        .ok_or_else(|| usage("q", format!("{q} is not a prime power")))
}

fn binary_q(q: u64) -> Result<(), UsageError> {
    match prime_power(q) {
        Some((2, _)) => Ok(()),
        _ => Err(usage("q", format!("{q} is not a power of 2"))),
    }
}

fn odd_prime_p(p: u64) -> Result<(), UsageError> {
    match prime_power(p) {
        Some((r, 1)) if r != 2 => Ok(()),
        _ => Err(usage("p", format!("{p} is not an odd prime"))),
    }
}

fn positive_m(m: u32) -> Result<(), UsageError> {
    if m == 0 {
        return Err(usage("m", "must be at least 1"));
    }
    Ok(())
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            budget: Budget::DEFAULT.0 as u64,
            threads: None,
            out: None,
            format: Format::Json,
        }
    }

    pub fn budget(&self) -> Budget {
        Budget(self.budget as u128)
    }

    pub fn report_config(&self) -> ReportConfig {
        ReportConfig {
            command: self.command.clone(),
            budget: self.budget,
        }
    }

    /// Rejects parameter combinations no check can run with.
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.threads == Some(0) {
            return Err(usage("threads", "must be at least 1"));
        }
        match &self.command {
            Command::JoubertSearch { q } | Command::Curve { q } => binary_q(*q),
            Command::JoubertEnum { q, .. } | Command::Hermite { q } => prime_power_q(*q),
            Command::Surface { q, smooth_deg } => {
                binary_q(*q)?;
                if *smooth_deg == Some(0) {
                    return Err(usage("smooth-deg", "must be at least 1"));
                }
                Ok(())
            }
            Command::Obstruction { p, m, .. } => {
                odd_prime_p(*p)?;
                positive_m(*m)
            }
            Command::Explore { q, p, m } => {
                binary_q(*q)?;
                odd_prime_p(*p)?;
                positive_m(*m)
            }
            Command::VerifyAll => Ok(()),
        }
    }
}
