//! Machine-readable verification reports.
//!
//! A [`Report`] is the single artifact every command emits: a schema tag,
//! the exact configuration, a summary, and a list of named checks sorted by
//! name. With a fixed seed the JSON serialization is byte-identical across
//! runs; wall-clock timings are opt-in precisely so that the default output
//! stays deterministic.

use serde::Serialize;
use std::fmt::Write as _;

pub const REPORT_SCHEMA: &str = "e6geom/report/v1";

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Asserted and true on every sample.
    Pass,
    /// Asserted and false on at least one sample.
    Fail,
    /// Measured and reported without asserting a truth value.
    Recorded,
    /// A claim adjacent to this engine's scope that cannot be tested here;
    /// listed so that reports enumerate what was *not* verified.
    NotApplicable,
}

/// One named check with its claim text, outcome, sample count, and a
/// free-form JSON witness (counts, dimensions, example coordinates).
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub status: Status,
    pub samples: u64,
    pub witness: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Check {
    pub fn new(
        name: &str,
        claim: &str,
        status: Status,
        samples: u64,
        witness: serde_json::Value,
    ) -> Check {
        Check {
            name: name.to_string(),
            claim: claim.to_string(),
            status,
            samples,
            witness,
            wall_ms: None,
        }
    }

    /// Pass/fail from a failure count.
    pub fn counted(name: &str, claim: &str, samples: u64, failures: u64) -> Check {
        let status = if failures == 0 { Status::Pass } else { Status::Fail };
        Check::new(name, claim, status, samples, serde_json::json!({ "failures": failures }))
    }

    pub fn not_applicable(name: &str, claim: &str, reason: &str) -> Check {
        Check::new(name, claim, Status::NotApplicable, 0, serde_json::json!({ "reason": reason }))
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Check {
        self.witness = witness;
        self
    }

    pub fn with_wall_ms(mut self, wall_ms: Option<u64>) -> Check {
        self.wall_ms = wall_ms;
        self
    }
}

/// The configuration a report was produced under.
#[derive(Clone, Debug, Serialize)]
pub struct ReportConfig {
    pub p: u64,
    pub d: u64,
    pub seed: u64,
    pub trials: u64,
    pub budget: u64,
    pub exec_mode: String,
    pub suite: String,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Summary {
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub recorded: u64,
    pub not_applicable: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: ReportConfig,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl Report {
    /// Assembles a report: checks are sorted by name and the summary is
    /// computed, so serialization is deterministic.
    pub fn new(command: &str, config: ReportConfig, mut checks: Vec<Check>) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary { total: checks.len() as u64, ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Recorded => summary.recorded += 1,
                Status::NotApplicable => summary.not_applicable += 1,
            }
        }
        Report { schema: REPORT_SCHEMA, command: command.to_string(), config, summary, checks }
    }

    /// Process exit status: zero exactly when no check failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// A fixed-width table for standard output.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let _ = writeln!(
            out,
            "{} — suite {} (p={}, d={}, seed={}, trials={}, {})",
            self.command,
            self.config.suite,
            self.config.p,
            self.config.d,
            self.config.seed,
            self.config.trials,
            self.config.exec_mode,
        );
        let _ = writeln!(out, "{:-<w$}--{:-<14}--{:>8}", "", "", "", w = name_w);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Recorded => "recorded",
                Status::NotApplicable => "not_applicable",
            };
            let _ = writeln!(
                out,
                "{:<w$}  {:<14}  {:>8}",
                c.name,
                status,
                c.samples,
                w = name_w
            );
        }
        let _ = writeln!(out, "{:-<w$}--{:-<14}--{:>8}", "", "", "", w = name_w);
        let _ = writeln!(
            out,
            "total {}: {} passed, {} failed, {} recorded, {} not applicable",
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            self.summary.recorded,
            self.summary.not_applicable,
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> ReportConfig {
        ReportConfig {
            p: 5,
            d: 2,
            seed: 1,
            trials: 10,
            budget: 1000,
            exec_mode: "sequential".into(),
            suite: "all".into(),
        }
    }

    #[test]
    fn checks_are_sorted_and_summarized() {
        let checks = vec![
            Check::counted("b_second", "claim b", 5, 0),
            Check::counted("a_first", "claim a", 5, 2),
            Check::new("c_third", "claim c", Status::Recorded, 1, serde_json::json!(null)),
            Check::not_applicable("d_fourth", "claim d", "out of scope"),
        ];
        let r = Report::new("verify", config(), checks);
        assert_eq!(r.checks[0].name, "a_first");
        assert_eq!(r.summary.total, 4);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.failed, 1);
        assert_eq!(r.summary.recorded, 1);
        assert_eq!(r.summary.not_applicable, 1);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_is_deterministic_without_timings() {
        let mk = || {
            Report::new(
                "verify",
                config(),
                vec![Check::counted("x", "claim", 3, 0)],
            )
        };
        assert_eq!(mk().to_json(), mk().to_json());
        assert!(!mk().to_json().contains("wall_ms"));
        let timed = Report::new(
            "verify",
            config(),
            vec![Check::counted("x", "claim", 3, 0).with_wall_ms(Some(12))],
        );
        assert!(timed.to_json().contains("wall_ms"));
    }

    #[test]
    fn table_lists_every_check() {
        let r = Report::new(
            "verify",
            config(),
            vec![
                Check::counted("alpha", "claim", 3, 0),
                Check::counted("beta", "claim", 3, 1),
            ],
        );
        let t = r.render_table();
        assert!(t.contains("alpha"));
        assert!(t.contains("FAIL"));
        assert!(t.contains("1 failed"));
        assert_eq!(r.exit_code(), 1);
    }
}
