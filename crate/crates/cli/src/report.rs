//! Machine and human renderings of a command's outcome.

use std::fmt::Write as _;
use std::time::Duration;

use qsalg_core::{CheckRecord, RepresentationCertificate};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        let hash = Sha256::digest(bytes);
        let mut hex = String::with_capacity(64);
        for b in hash {
            write!(hex, "{b:02x}").expect("writing to a String");
        }
        Self { path: path.to_string(), sha256: hex }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckLine {
    pub fn pass(check: impl Into<String>) -> Self {
        Self { check: check.into(), passed: true, cases: None, detail: None, witness: None }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { check: check.into(), passed: false, cases: None, detail: None, witness: Some(witness.into()) }
    }

    pub fn outcome(check: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(check),
            Some(w) => Self::fail(check, w),
        }
    }

    pub fn cases(mut self, n: u64) -> Self {
        self.cases = Some(n);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

impl From<&CheckRecord> for CheckLine {
    fn from(r: &CheckRecord) -> Self {
        Self {
            check: r.check.clone(),
            passed: r.passed,
            cases: Some(r.cases),
            detail: None,
            witness: r.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// What a command produced before rendering.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<CheckLine>,
    pub certificate: Option<RepresentationCertificate>,
    pub details: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub threshold: u64,
    pub samples: usize,
    pub seed: u64,
    pub status: Status,
    pub exit_code: u8,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RepresentationCertificate>,
}

impl Report {
    pub fn new(command: Vec<String>, inputs: Vec<InputDigest>, budget: &qsalg_core::Budget) -> Self {
        Self {
            tool: "qsalg",
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs,
            threshold: budget.threshold,
            samples: budget.samples,
            seed: budget.seed,
            status: Status::Pass,
            exit_code: 0,
            checks: Vec::new(),
            error: None,
            details: None,
            certificate: None,
        }
    }

    pub fn finish(mut self, result: Result<Outcome, CliError>) -> Self {
        match result {
            Ok(out) => {
                let failed = out.checks.iter().any(|c| !c.passed);
                self.status = if failed { Status::Fail } else { Status::Pass };
                self.exit_code = u8::from(failed);
                self.checks = out.checks;
                self.certificate = out.certificate;
                self.details = out.details;
            }
            Err(e) => {
                self.exit_code = e.exit_code();
                if let CliError::Violation { check, witness } = &e {
                    self.status = Status::Fail;
                    self.checks.push(CheckLine::fail(check.clone(), witness.clone()));
                } else {
                    self.status = Status::Error;
                }
                self.error = Some(e.to_string());
            }
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self, elapsed: Duration) -> String {
        let mut s = String::new();
        let w = &mut s;
        writeln!(w, "qsalg {}", self.command.join(" ")).ok();
        for i in &self.inputs {
            writeln!(w, "input {} sha256:{}", i.path, i.sha256).ok();
        }
        writeln!(w, "threshold {}, samples {}, seed {:#x}", self.threshold, self.samples, self.seed).ok();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            write!(w, "  {mark} {}", c.check).ok();
            if let Some(n) = c.cases {
                write!(w, " [{n} cases]").ok();
            }
            if let Some(d) = &c.detail {
                write!(w, ": {d}").ok();
            }
            writeln!(w).ok();
            if let Some(x) = &c.witness {
                writeln!(w, "      witness: {x}").ok();
            }
        }
        if let Some(e) = &self.error {
            writeln!(w, "error: {e}").ok();
        }
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        writeln!(w, "result: {status} (exit {}) in {:.1} ms", self.exit_code, elapsed.as_secs_f64() * 1e3).ok();
        s
    }
}
