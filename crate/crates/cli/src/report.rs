//! Verification manifests and their serialized forms.
//!
//! JSON layout (version 1):
//!
//! ```text
//! { "version": 1,
//!   "config": { "subcommand": ..., <parameters>, "budget": ... },
//!   "checks": [ { "id", "anchor", "params", "outcome", "witness", "elapsed_ms" } ],
//!   "verdict": "pass" | "fail" }
//! ```
//!
//! `outcome` is `"pass"`, `"fail"` or `"skipped:budget"`. Polynomials appear in
//! the `t^6+t+1` text form and field elements as coefficient vectors over the
//! prime field, constant term first.

use std::fmt::Write as _;

use joubert_core::{FElt, FieldDesc, UPoly};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{Format, ReportConfig};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped:budget")]
    SkippedBudget,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::SkippedBudget => "skipped:budget",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The claim being checked, quoted.
    pub anchor: String,
    pub params: Value,
    pub outcome: Outcome,
    pub witness: Value,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationManifest {
    pub version: u32,
    pub config: ReportConfig,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl VerificationManifest {
    /// Orders checks by id and derives the verdict: pass iff no check failed.
    pub fn new(config: ReportConfig, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let verdict = if checks.iter().any(|c| c.outcome == Outcome::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        VerificationManifest {
            version: MANIFEST_VERSION,
            config,
            checks,
            verdict,
        }
    }

    /// 0 when everything passed, 1 on any failure, 3 when a check was refused
    /// for budget and nothing failed.
    pub fn exit_code(&self) -> i32 {
        if self.verdict == Verdict::Fail {
            1
        } else if self.checks.iter().any(|c| c.outcome == Outcome::SkippedBudget) {
            3
        } else {
            0
        }
    }

    /// Copy with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut m = self.clone();
        for c in &mut m.checks {
            c.elapsed_ms = 0;
        }
        m
    }
}

pub fn emit_report(manifest: &VerificationManifest, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(manifest).expect("manifest serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(manifest),
    }
}

fn emit_text(m: &VerificationManifest) -> String {
    let mut s = String::new();
    let config = serde_json::to_string(&m.config).expect("config serializes");
    let _ = writeln!(s, "joubert report v{}", m.version);
    let _ = writeln!(s, "config  {config}");
    for c in &m.checks {
        let _ = writeln!(s, "[{}] {}  ({} ms)", c.outcome.label(), c.id, c.elapsed_ms);
        let _ = writeln!(s, "    claim    {}", c.anchor);
        let _ = writeln!(s, "    params   {}", c.params);
        let _ = writeln!(s, "    witness  {}", c.witness);
    }
    let verdict = match m.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    };
    let _ = writeln!(s, "verdict {verdict}");
    s
}

pub fn parse_report(text: &str) -> serde_json::Result<VerificationManifest> {
    serde_json::from_str(text)
}

pub fn felt_json(f: &FieldDesc, x: FElt) -> Value {
    json!(f.coeffs(x))
}

pub fn poly_json(p: &UPoly) -> Value {
    json!(p.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;
    use proptest::prelude::*;

    fn config() -> ReportConfig {
        ReportConfig {
            command: Command::VerifyAll,
            budget: 1 << 28,
        }
    }

    fn check(id: &str, outcome: Outcome) -> Check {
        Check {
            id: id.into(),
            anchor: "claim".into(),
            params: json!({}),
            outcome,
            witness: Value::Null,
            elapsed_ms: 5,
        }
    }

    #[test]
    fn empty_manifest_passes() {
        let m = VerificationManifest::new(config(), vec![]);
        let v: Value = serde_json::from_str(&emit_report(&m, Format::Json)).unwrap();
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["verdict"], json!("pass"));
        assert_eq!(v["version"], json!(1));
        assert_eq!(m.exit_code(), 0);
    }

    #[test]
    fn verdicts_and_exit_codes() {
        let m = VerificationManifest::new(
            config(),
            vec![check("b", Outcome::Pass), check("a", Outcome::Fail)],
        );
        assert_eq!(m.verdict, Verdict::Fail);
        assert_eq!(m.exit_code(), 1);
        assert_eq!(m.checks[0].id, "a");

        let m = VerificationManifest::new(config(), vec![check("a", Outcome::SkippedBudget)]);
        assert_eq!(m.verdict, Verdict::Pass);
        assert_eq!(m.exit_code(), 3);
        let v: Value = serde_json::from_str(&emit_report(&m, Format::Json)).unwrap();
        assert_eq!(v["checks"][0]["outcome"], json!("skipped:budget"));
    }

    #[test]
    fn text_format_lists_checks() {
        let m = VerificationManifest::new(config(), vec![check("x", Outcome::Pass)]);
        let t = emit_report(&m, Format::Text);
        assert!(t.contains("[pass] x  (5 ms)"));
        assert!(t.ends_with("verdict pass\n"));
    }

    fn arb_value() -> impl Strategy<Value = Value> {
        let leaf = prop_oneof![
            Just(Value::Null),
            any::<bool>().prop_map(Value::from),
            any::<u32>().prop_map(Value::from),
            "[a-z0-9^+*]{0,12}".prop_map(Value::from),
        ];
        leaf.prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..4).prop_map(Value::Array),
                prop::collection::btree_map("[a-z_]{1,6}", inner, 0..4)
                    .prop_map(|m| Value::Object(m.into_iter().collect())),
            ]
        })
    }

    fn arb_check() -> impl Strategy<Value = Check> {
        (
            "[0-9a-z-]{1,16}",
            ".{0,20}",
            arb_value(),
            prop_oneof![
                Just(Outcome::Pass),
                Just(Outcome::Fail),
                Just(Outcome::SkippedBudget)
            ],
            arb_value(),
            any::<u64>(),
        )
            .prop_map(|(id, anchor, params, outcome, witness, elapsed_ms)| Check {
                id,
                anchor,
                params,
                outcome,
                witness,
                elapsed_ms,
            })
    }

    fn arb_command() -> impl Strategy<Value = Command> {
        prop_oneof![
            Just(Command::VerifyAll),
            (1u64..100).prop_map(|q| Command::Curve { q }),
            (1u64..100, prop::option::of(1u32..4))
                .prop_map(|(q, smooth_deg)| Command::Surface { q, smooth_deg }),
            (1u64..100, 1u32..3, any::<bool>()).prop_map(|(p, m, brute_force)| Command::Obstruction {
                p,
                m,
                brute_force
            }),
            (1u64..100).prop_map(|q| Command::JoubertEnum { q, csv: None }),
        ]
    }

    proptest! {
        #[test]
        fn json_roundtrip(
            command in arb_command(),
            budget in any::<u64>(),
            checks in prop::collection::vec(arb_check(), 0..6),
        ) {
            let m = VerificationManifest::new(ReportConfig { command, budget }, checks);
            let text = emit_report(&m, Format::Json);
            prop_assert_eq!(parse_report(&text).unwrap(), m.clone());
            prop_assert_eq!(emit_report(&parse_report(&text).unwrap(), Format::Json), text);
        }
    }
}
