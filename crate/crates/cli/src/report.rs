//! The shared output shape of every command: a list of cases, each with a
//! stable id, an inputs digest, and a verdict. The machine rendering is
//! newline-delimited JSON sorted by case id, with no timing or environment
//! data, so fixed inputs and a fixed seed always produce the same bytes.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub struct CaseOutcome {
    pub id: String,
    pub description: String,
    pub digest: String,
    pub pass: bool,
    pub witness: Option<String>,
}

pub struct CheckReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseOutcome>,
}

#[derive(Serialize)]
struct HeaderRecord<'a> {
    suite: &'a str,
    seed: u64,
    cases: usize,
    failed: usize,
}

#[derive(Serialize)]
struct CaseRecord<'a> {
    case: &'a str,
    description: &'a str,
    digest: &'a str,
    verdict: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> CheckReport {
        CheckReport { suite: suite.into(), seed, cases: Vec::new() }
    }

    /// Record one case; a failing result carries its witness.
    pub fn push(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        digest: String,
        result: Result<(), String>,
    ) {
        self.cases.push(CaseOutcome {
            id: id.into(),
            description: description.into(),
            digest,
            pass: result.is_ok(),
            witness: result.err(),
        });
    }

    pub fn failed(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    /// Fix the case order. Ids sort as strings, so families use zero-padded
    /// indices; call once, after the last case is in.
    pub fn finish(mut self) -> CheckReport {
        self.cases.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for case in &self.cases {
            let verdict = if case.pass { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{verdict}  {}  {}  [{}]\n",
                case.id, case.description, case.digest
            ));
            if let Some(witness) = &case.witness {
                out.push_str(&format!("      witness: {witness}\n"));
            }
        }
        let plural = if self.cases.len() == 1 { "case" } else { "cases" };
        out.push_str(&format!("{} {plural}, {} failed\n", self.cases.len(), self.failed()));
        out
    }

    pub fn render_records(&self) -> String {
        let header = HeaderRecord {
            suite: &self.suite,
            seed: self.seed,
            cases: self.cases.len(),
            failed: self.failed(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for case in &self.cases {
            let record = CaseRecord {
                case: &case.id,
                description: &case.description,
                digest: &case.digest,
                verdict: if case.pass { "pass" } else { "fail" },
                witness: case.witness.as_deref(),
            };
            out.push_str(&serde_json::to_string(&record).expect("case serializes"));
            out.push('\n');
        }
        out
    }
}

/// Twelve hex characters of SHA-256 over the parts, NUL-separated — a short
/// stable fingerprint of a case's inputs.
pub fn digest(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update(part.as_bytes());
        hasher.update([0u8]);
    }
    let full = hasher.finalize();
    full.iter().take(6).map(|b| format!("{b:02x}")).collect()
}
