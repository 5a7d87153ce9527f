use std::fmt;

use serde::Serialize;

use crate::report::{fmt_real, CsvRecord};

/// Violations kept verbatim; beyond this only the count grows.
const MAX_LISTED: usize = 20;

/// Whether a check is a zero-tolerance identity or ratio data for an implied constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Exact,
    Ratio,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCase {
    pub at: String,
    pub ratio: f64,
}

/// Outcome of running one lemma or identity over a parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationVerdict {
    pub lemma_id: String,
    pub grid: String,
    pub kind: CheckKind,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
    pub worst: Option<WorstCase>,
    /// ratio series for `Ratio` checks, `(label, ratio)`
    pub series: Vec<(String, f64)>,
}

impl VerificationVerdict {
    pub fn new(lemma_id: impl Into<String>, grid: impl Into<String>, kind: CheckKind) -> Self {
        VerificationVerdict {
            lemma_id: lemma_id.into(),
            grid: grid.into(),
            kind,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            worst: None,
            series: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_LISTED {
                self.violations.push(describe());
            }
        }
    }

    /// Tracks the largest ratio seen; ties keep the earliest.
    pub fn observe(&mut self, ratio: f64, at: impl FnOnce() -> String) {
        if self.worst.as_ref().is_none_or(|w| ratio > w.ratio) {
            self.worst = Some(WorstCase { at: at(), ratio });
        }
    }

    pub fn push_series(&mut self, label: impl Into<String>, ratio: f64) {
        self.series.push((label.into(), ratio));
    }

    /// Appends a later part of the same grid.
    pub fn absorb(&mut self, later: VerificationVerdict) {
        self.checked += later.checked;
        self.violation_count += later.violation_count;
        let room = MAX_LISTED.saturating_sub(self.violations.len());
        self.violations
            .extend(later.violations.into_iter().take(room));
        if let Some(w) = later.worst {
            self.observe(w.ratio, || w.at);
        }
        self.series.extend(later.series);
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn status(&self) -> &'static str {
        match (self.kind, self.passed()) {
            (CheckKind::Exact, true) => "PASS",
            (CheckKind::Exact, false) => "FAIL",
            (CheckKind::Ratio, true) => "DATA",
            (CheckKind::Ratio, false) => "DATA*",
        }
    }

    /// Only exact checks can fail a run.
    pub fn is_fatal(&self) -> bool {
        self.kind == CheckKind::Exact && !self.passed()
    }
}

impl fmt::Display for VerificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} ({}) checked={} violations={}",
            self.status(),
            self.lemma_id,
            self.grid,
            self.checked,
            self.violation_count
        )?;
        if let Some(w) = &self.worst {
            write!(f, " worst_ratio={:.6} at {}", w.ratio, w.at)?;
        }
        Ok(())
    }
}

/// One verdict as a flat output row; violations and series stay out of it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRow {
    pub lemma_id: String,
    pub grid: String,
    pub kind: CheckKind,
    pub status: &'static str,
    pub checked: u64,
    pub violation_count: u64,
    pub worst_ratio: Option<f64>,
    pub worst_at: Option<String>,
}

impl From<&VerificationVerdict> for VerdictRow {
    fn from(v: &VerificationVerdict) -> Self {
        VerdictRow {
            lemma_id: v.lemma_id.clone(),
            grid: v.grid.clone(),
            kind: v.kind,
            status: v.status(),
            checked: v.checked,
            violation_count: v.violation_count,
            worst_ratio: v.worst.as_ref().map(|w| w.ratio),
            worst_at: v.worst.as_ref().map(|w| w.at.clone()),
        }
    }
}

impl CsvRecord for VerdictRow {
    const HEADER: &'static [&'static str] = &[
        "lemma_id",
        "grid",
        "kind",
        "status",
        "checked",
        "violation_count",
        "worst_ratio",
        "worst_at",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.lemma_id.clone(),
            self.grid.clone(),
            match self.kind {
                CheckKind::Exact => "exact".into(),
                CheckKind::Ratio => "ratio".into(),
            },
            self.status.into(),
            self.checked.to_string(),
            self.violation_count.to_string(),
            self.worst_ratio.map(fmt_real).unwrap_or_default(),
            self.worst_at.clone().unwrap_or_default(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_violations_and_worst() {
        let mut v = VerificationVerdict::new("X", "grid", CheckKind::Exact);
        v.check(true, || unreachable!());
        v.observe(0.5, || "a".into());
        v.observe(0.5, || "b".into());
        v.observe(0.25, || "c".into());
        assert!(v.passed());
        assert_eq!(v.worst.as_ref().unwrap().at, "a");
        for i in 0..30 {
            v.check(false, || format!("bad {i}"));
        }
        assert_eq!(v.violation_count, 30);
        assert_eq!(v.violations.len(), MAX_LISTED);
        assert!(v.is_fatal());
        assert!(v.to_string().starts_with("[FAIL] X"));
    }

    #[test]
    fn ratio_checks_never_fatal() {
        let mut v = VerificationVerdict::new("Y", "g", CheckKind::Ratio);
        v.check(false, || "exceeds".into());
        assert!(!v.passed());
        assert!(!v.is_fatal());
    }
}
