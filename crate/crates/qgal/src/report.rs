//! JSON-first reports. Every sweep produces a serialisable report; the
//! human-readable summary is a pure rendering of the JSON so that two
//! runs with the same inputs yield byte-identical artifacts regardless
//! of thread count.

use crate::symmetric::SweepReport;
use crate::{input_err, Result};
use std::collections::BTreeMap;

/// One named check inside a suite: how many cases ran, how many came
/// back undecided, and a witness string per failure.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub unknowns: usize,
    pub failures: Vec<String>,
}

impl CheckSummary {
    pub fn new(name: &str) -> Self {
        CheckSummary { name: name.to_string(), cases: 0, unknowns: 0, failures: Vec::new() }
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn unknown(&mut self) {
        self.unknowns += 1;
    }

    pub fn fail(&mut self, witness: String) {
        self.failures.push(witness);
    }

    /// Merge in-order (used to combine per-item results deterministically).
    pub fn absorb(&mut self, other: CheckSummary) {
        self.cases += other.cases;
        self.unknowns += other.unknowns;
        self.failures.extend(other.failures);
    }
}

/// A full suite run: named checks plus the parameters that produced them.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub structure: Option<String>,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<CheckSummary>,
}

impl SuiteReport {
    pub fn new(suite: &str, structure: Option<&str>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            structure: structure.map(str::to_string),
            params: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn total_failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }

    pub fn total_unknowns(&self) -> usize {
        self.checks.iter().map(|c| c.unknowns).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_failures() == 0
    }
}

/// Top-level report artifact.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Report {
    Suite(SuiteReport),
    MainTheorem(SweepReport),
}

impl Report {
    /// 0 = all pass, 1 = property-falsifying failure, 2 = undecided
    /// instances present.
    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Suite(s) => {
                if !s.is_clean() {
                    1
                } else if s.total_unknowns() > 0 {
                    2
                } else {
                    0
                }
            }
            Report::MainTheorem(m) => {
                if m.witness_yes_oracle_no > 0 {
                    1
                } else if m.oracle_yes_bound_exhausted > 0 {
                    2
                } else {
                    0
                }
            }
        }
    }
}

pub fn report_to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
    s.push('\n');
    s
}

/// Renders report JSON to a deterministic text summary: counts per
/// verdict class with failure witnesses inline.
pub fn render_report(json: &str) -> Result<String> {
    let value: serde_json::Value = match serde_json::from_str(json) {
        Ok(v) => v,
        Err(e) => return input_err(format!("malformed report JSON: {e}")),
    };
    let mut out = String::new();
    match value.get("kind").and_then(|k| k.as_str()) {
        Some("suite") => render_suite(&value, &mut out)?,
        Some("main-theorem") => render_main_theorem(&value, &mut out)?,
        _ => return input_err("report JSON is missing a recognised \"kind\""),
    }
    Ok(out)
}

fn render_suite(v: &serde_json::Value, out: &mut String) -> Result<()> {
    use std::fmt::Write;
    let suite = v.get("suite").and_then(|s| s.as_str()).unwrap_or("?");
    let structure = v.get("structure").and_then(|s| s.as_str());
    match structure {
        Some(s) => writeln!(out, "suite {suite} [{s}]").unwrap(),
        None => writeln!(out, "suite {suite}").unwrap(),
    }
    if let Some(params) = v.get("params").and_then(|p| p.as_object()) {
        for (k, val) in params {
            writeln!(out, "  {k} = {}", val.as_str().unwrap_or("?")).unwrap();
        }
    }
    let checks = v
        .get("checks")
        .and_then(|c| c.as_array())
        .ok_or_else(|| crate::Error::Input("suite report without checks".into()))?;
    let mut total = 0u64;
    let mut failed = 0u64;
    for c in checks {
        let name = c.get("name").and_then(|n| n.as_str()).unwrap_or("?");
        let cases = c.get("cases").and_then(|n| n.as_u64()).unwrap_or(0);
        let unknowns = c.get("unknowns").and_then(|n| n.as_u64()).unwrap_or(0);
        let failures = c
            .get("failures")
            .and_then(|f| f.as_array())
            .map(|f| f.len())
            .unwrap_or(0);
        total += cases;
        failed += failures as u64;
        let status = if failures > 0 {
            "FAIL"
        } else if unknowns > 0 {
            "unknown"
        } else {
            "ok"
        };
        writeln!(
            out,
            "  {name}: {cases} cases, {unknowns} unknown, {failures} failures [{status}]"
        )
        .unwrap();
        if let Some(fs) = c.get("failures").and_then(|f| f.as_array()) {
            for w in fs {
                writeln!(out, "    ! {}", w.as_str().unwrap_or("?")).unwrap();
            }
        }
    }
    if total == 0 {
        writeln!(out, "0 instances").unwrap();
    } else if failed > 0 {
        writeln!(out, "*** {failed} FAILURES over {total} instances ***").unwrap();
    } else {
        writeln!(out, "all {total} instances pass").unwrap();
    }
    Ok(())
}

fn render_main_theorem(v: &serde_json::Value, out: &mut String) -> Result<()> {
    use std::fmt::Write;
    let get = |k: &str| v.get(k).and_then(|n| n.as_u64()).unwrap_or(0);
    let total = get("total");
    writeln!(
        out,
        "main-theorem sweep [{}] dim {} bound {}",
        v.get("structure").and_then(|s| s.as_str()).unwrap_or("?"),
        get("dim"),
        get("bound")
    )
    .unwrap();
    if total == 0 {
        writeln!(out, "0 instances").unwrap();
        return Ok(());
    }
    writeln!(out, "  agree-yes                  {}", get("agree_yes")).unwrap();
    writeln!(out, "  agree-no                   {}", get("agree_no")).unwrap();
    writeln!(out, "  oracle-yes-bound-exhausted {}", get("oracle_yes_bound_exhausted")).unwrap();
    writeln!(out, "  witness-yes-oracle-no      {}", get("witness_yes_oracle_no")).unwrap();
    let hard = get("witness_yes_oracle_no");
    let exhausted = get("oracle_yes_bound_exhausted");
    if let Some(failures) = v.get("failures").and_then(|f| f.as_array()) {
        for f in failures {
            writeln!(
                out,
                "  ! instance {} (initial vertex size {}): {}",
                f.get("index").and_then(|n| n.as_u64()).unwrap_or(0),
                f.get("initial_vertex_size").and_then(|n| n.as_u64()).unwrap_or(0),
                f.get("class").and_then(|c| c.as_str()).unwrap_or("?"),
            )
            .unwrap();
        }
    }
    if hard > 0 {
        writeln!(out, "*** {hard} HARD FAILURES over {total} instances ***").unwrap();
    } else if exhausted > 0 {
        writeln!(out, "{exhausted} bound exhaustions over {total} instances").unwrap();
    } else {
        writeln!(out, "all {total} instances agree").unwrap();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_renders_zero_instances() {
        let report = Report::Suite(SuiteReport::new("birkhoff", Some("quandle-pi0")));
        let text = render_report(&report_to_json(&report)).unwrap();
        assert!(text.contains("0 instances"));
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn failure_is_highlighted_and_exit_code_is_one() {
        let mut suite = SuiteReport::new("df-closure", None);
        let mut check = CheckSummary::new("composition");
        check.case();
        check.fail("composite of squares 3 and 7 is not a discrete fibration".into());
        suite.checks.push(check);
        let report = Report::Suite(suite);
        assert_eq!(report.exit_code(), 1);
        let text = render_report(&report_to_json(&report)).unwrap();
        assert!(text.contains("***"));
        assert!(text.contains("squares 3 and 7"));
    }

    #[test]
    fn unknowns_give_exit_code_two() {
        let mut suite = SuiteReport::new("factorisation", None);
        let mut check = CheckSummary::new("oracle");
        check.case();
        check.unknown();
        suite.checks.push(check);
        assert_eq!(Report::Suite(suite).exit_code(), 2);
    }

    #[test]
    fn malformed_json_is_an_input_error() {
        assert!(render_report("{not json").is_err());
        assert!(render_report("{\"kind\": \"nope\"}").is_err());
    }
}
