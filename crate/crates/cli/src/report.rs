use std::collections::BTreeMap;
use std::fmt::Write as _;

use cayley_core::{AlgElem, LinMap, RingElem};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub coords: Vec<String>,
}

impl Witness {
    pub fn elem(label: impl Into<String>, x: &AlgElem) -> Self {
        Witness {
            label: label.into(),
            coords: x.coord_strings(),
        }
    }

    pub fn scalars(label: impl Into<String>, xs: &[RingElem]) -> Self {
        Witness {
            label: label.into(),
            coords: xs.iter().map(|x| x.to_string()).collect(),
        }
    }

    /// A matrix, flattened row by row.
    pub fn map(label: impl Into<String>, t: &LinMap) -> Self {
        Witness {
            label: label.into(),
            coords: t.row_strings().into_iter().flatten().collect(),
        }
    }
}

/// Result of a claim, before the report header is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<Witness>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            verdict: Verdict {
                status: Status::Pass,
                reason: None,
            },
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        let mut o = Outcome::pass();
        o.verdict = Verdict {
            status: Status::Skipped,
            reason: Some(reason.into()),
        };
        o
    }

    pub fn fail(&mut self, reason: impl Into<String>, witnesses: Vec<Witness>) {
        if self.verdict.status != Status::Fail {
            self.verdict = Verdict {
                status: Status::Fail,
                reason: Some(reason.into()),
            };
            self.witnesses.extend(witnesses);
        }
    }

    pub fn note(&mut self, reason: impl Into<String>) {
        if self.verdict.reason.is_none() {
            self.verdict.reason = Some(reason.into());
        }
    }

    pub fn count(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    pub fn is_pass(&self) -> bool {
        self.verdict.status == Status::Pass
    }
}

/// One machine-readable report. Field order is the serialized key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claim: String,
    pub ring: String,
    pub algebra: String,
    pub verdict: Verdict,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(
        claim: &str,
        ring: String,
        algebra: String,
        outcome: Outcome,
        elapsed_ms: u64,
    ) -> Self {
        Report {
            claim: claim.to_string(),
            ring,
            algebra,
            verdict: outcome.verdict,
            counts: outcome.counts,
            witnesses: outcome.witnesses,
            elapsed_ms,
        }
    }
}

pub fn to_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

/// Plain-text table, one row per report.
pub fn to_table(reports: &[Report]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let status = match r.verdict.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let counts = r
                .counts
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            [
                r.claim.clone(),
                r.algebra.clone(),
                status.to_string(),
                counts,
                r.verdict.reason.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let header = ["claim", "algebra", "verdict", "counts", "note"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let mut l = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                l.push_str(c);
            } else {
                let pad = widths[i] - c.chars().count();
                let _ = write!(l, "{c}{}  ", " ".repeat(pad));
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(&header.map(String::from));
    for row in &rows {
        line(row);
    }
    for r in reports.iter().filter(|r| r.verdict.status == Status::Fail) {
        for w in &r.witnesses {
            out.push_str(&format!(
                "  {} {}: [{}]\n",
                r.claim,
                w.label,
                w.coords.join(", ")
            ));
        }
    }
    out
}
