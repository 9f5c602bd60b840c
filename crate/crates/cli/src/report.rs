//! The report every subcommand produces, in text and JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFile {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub files: Vec<InputFile>,
    /// Every bound, count, seed and mode in effect, including defaults.
    pub settings: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Table {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    /// A two-column key/value table.
    pub fn kv(name: &str, pairs: Vec<(&str, String)>) -> Table {
        let mut t = Table::new(name, &["key", "value"]);
        for (k, v) in pairs {
            t.rows.push(vec![k.into(), v]);
        }
        t
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertEntry {
    pub name: String,
    pub sha256: String,
    /// Certificate in the `gtranscert v1` format.
    pub text: String,
}

impl CertEntry {
    pub fn new(name: &str, text: String) -> CertEntry {
        CertEntry { name: name.into(), sha256: sha256_hex(text.as_bytes()), text }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceEntry {
    pub claim: String,
    /// One of `certificate`, `oracle`, `isomorphism`, `invariants`, `dimension`.
    pub level: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Inputs,
    pub verdict: String,
    pub tables: Vec<Table>,
    pub certificates: Vec<CertEntry>,
    pub evidence: Vec<EvidenceEntry>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: &[String]) -> Report {
        Report {
            command: command.to_vec(),
            inputs: Inputs::default(),
            verdict: String::new(),
            tables: Vec::new(),
            certificates: Vec::new(),
            evidence: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn setting(&mut self, key: &str, value: impl ToString) {
        self.inputs.settings.insert(key.into(), value.to_string());
    }

    pub fn file(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.files.push(InputFile { name: name.into(), sha256: sha256_hex(bytes) });
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn evidence(&mut self, claim: impl Into<String>, level: &str) {
        self.evidence.push(EvidenceEntry { claim: claim.into(), level: level.into() });
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    /// Records a check: evidence when it holds, a failure otherwise.
    pub fn check(&mut self, ok: bool, claim: impl Into<String>, level: &str) {
        let claim = claim.into();
        if ok {
            self.evidence(claim, level);
        } else {
            self.fail(claim);
        }
    }

    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command.join(" "));
        for f in &self.inputs.files {
            let _ = writeln!(s, "input: {} sha256={}", f.name, f.sha256);
        }
        let settings: Vec<String> = self.inputs.settings.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "settings: {}", settings.join(" "));
        let _ = writeln!(s, "verdict: {}", self.verdict);
        for t in &self.tables {
            let _ = writeln!(s, "\n[{}]", t.name);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
            for r in &t.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(s, "{}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(s, "{}", line(r));
            }
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(s);
            for c in &self.certificates {
                let _ = writeln!(s, "certificate {} sha256={}", c.name, c.sha256);
            }
        }
        if !self.evidence.is_empty() {
            let _ = writeln!(s);
            for e in &self.evidence {
                let _ = writeln!(s, "evidence [{}] {}", e.level, e.claim);
            }
        }
        for f in &self.failures {
            let _ = writeln!(s, "FAILURE: {f}");
        }
        s
    }
}
