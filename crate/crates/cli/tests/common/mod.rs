#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
}

impl Run {
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }

    /// Witnesses of every failed check in a JSON report.
    pub fn witnesses(&self) -> Vec<String> {
        self.json()["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["passed"] == false)
            .filter_map(|c| c["witness"].as_str().map(str::to_string))
            .collect()
    }
}

pub fn qsalg(args: &[&str]) -> Run {
    qsalg_env(args, &[])
}

pub fn qsalg_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qsalg"));
    cmd.args(args).env_remove("QSALG_THRESHOLD");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("qsalg runs");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).expect("utf-8") }
}

pub fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}
