use std::fmt::Write as _;

use art_core::duality::DualityReport;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub pass: bool,
    pub witness: String,
}

impl Record {
    pub fn new(name: impl Into<String>, lhs_dim: usize, rhs_dim: usize, pass: bool, witness: impl Into<String>) -> Self {
        Record { name: name.into(), lhs_dim, rhs_dim, pass, witness: witness.into() }
    }

    /// A record for a duality check.
    pub fn duality(name: impl Into<String>, r: &DualityReport) -> Self {
        let mut w = match &r.witness {
            Some(m) if r.witness_invertible => format!("invertible {}×{}", m.rows(), m.cols()),
            Some(m) => format!("singular {}×{}", m.rows(), m.cols()),
            None => "no witness".to_string(),
        };
        if !r.naturality.is_empty() {
            let ok = r.naturality.iter().filter(|n| n.passed).count();
            let _ = write!(w, ", natural {ok}/{}", r.naturality.len());
        }
        Record::new(name, r.lhs_dim, r.rhs_dim, r.passed(), w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub records: Vec<Record>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, records: Vec::new(), pass: true }
    }

    pub fn push(&mut self, r: Record) {
        self.pass &= r.pass;
        self.records.push(r);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text table with a summary line.
    pub fn table(&self) -> String {
        let head = ["check", "lhs", "rhs", "status", "witness"];
        let rows: Vec<[String; 5]> = self
            .records
            .iter()
            .map(|r| {
                let status = if r.pass { "pass" } else { "FAIL" };
                [r.name.clone(), r.lhs_dim.to_string(), r.rhs_dim.to_string(), status.to_string(), r.witness.clone()]
            })
            .collect();
        let mut width = head.map(|h| h.chars().count());
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(width)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &head.map(String::from));
        line(&mut out, &width.map(|w| "-".repeat(w)));
        for row in &rows {
            line(&mut out, row);
        }
        let failed = self.records.iter().filter(|r| !r.pass).count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed",
            if self.pass { "PASS" } else { "FAIL" },
            self.records.len(),
            failed
        );
        out
    }
}
