use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use crate::checks;
use crate::config::{Command, RunConfig, UsageError};
use crate::report::{emit_report, Check, VerificationManifest};
use joubert_core::UPoly;

#[derive(Debug)]
pub enum RunError {
    Usage(UsageError),
    Io { path: String, source: io::Error },
    ThreadPool(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(e) => write!(f, "{e}"),
            RunError::Io { path, source } => write!(f, "cannot write {path}: {source}"),
            RunError::ThreadPool(e) => write!(f, "invalid --threads: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

fn write_file(path: &Path, contents: &str) -> Result<(), RunError> {
    fs::write(path, contents).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// One row per polynomial: its `t^4, t^2, t, 1` coefficients as canonical
/// element indices, then the text form.
fn enumeration_csv(polys: &[UPoly]) -> String {
    let mut s = String::from("a,b,c,d,polynomial\n");
    for p in polys {
        let v = |k: usize| p.coeff(k).value();
        s.push_str(&format!("{},{},{},{},{}\n", v(4), v(2), v(1), v(0), p));
    }
    s
}

/// Runs the configured checks and returns the manifest. Validation happens
/// before any computation.
pub fn execute(config: &RunConfig) -> Result<VerificationManifest, RunError> {
    config.validate().map_err(RunError::Usage)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| RunError::ThreadPool(e.to_string()))?;
    let budget = config.budget();
    let b = &budget;
    let checks: Vec<Check> = pool.install(|| -> Result<Vec<Check>, RunError> {
        Ok(match &config.command {
            Command::JoubertSearch { q } => vec![checks::joubert_generator(*q, b)],
            Command::JoubertEnum { q, csv } => {
                let (check, polys) = checks::joubert_enum(*q, b);
                if let Some(path) = csv {
                    write_file(path, &enumeration_csv(&polys))?;
                }
                vec![check]
            }
            Command::Hermite { q } => vec![checks::hermite(*q, b)],
            Command::Surface { q, smooth_deg } => {
                let mut out = vec![checks::surface(*q, b)];
                if let Some(d) = smooth_deg {
                    out.push(checks::smoothness(*q, *d, b));
                }
                out
            }
            Command::Obstruction { p, m, brute_force } => {
                let mut out = vec![checks::obstruction(*p, *m)];
                if *brute_force {
                    out.push(checks::plane_oracle(*p, *m, b));
                }
                out
            }
            Command::Curve { q } => vec![
                checks::curve(*q, b),
                checks::curve_bound(),
                checks::trace_identity(*q, b),
            ],
            Command::Explore { q, p, m } => vec![checks::explore(*q, *p, *m, b)],
            Command::VerifyAll => checks::verify_all(b),
        })
    })?;
    Ok(VerificationManifest::new(config.report_config(), checks))
}

/// Executes, renders in the configured format, writes `--out` if given, and
/// returns the exit code with the rendered report.
pub fn run(config: &RunConfig) -> Result<(i32, String), RunError> {
    let manifest = execute(config)?;
    let rendered = emit_report(&manifest, config.format);
    if let Some(path) = &config.out {
        write_file(path, &rendered)?;
    }
    Ok((manifest.exit_code(), rendered))
}
