//! Answer comparison and accuracy.

use std::fmt;

use super::run::{RunResult, Status};

const PREFIXES: [&str; 4] = ["the ", "in ", "on ", "at "];

/// Lowercased answer parts with leading articles/prepositions removed, sorted
/// so that lists compare as sets.
pub fn normalize(answer: &str) -> Vec<String> {
    let mut parts: Vec<String> = answer
        .split(',')
        .map(|p| {
            let mut p = p.trim().to_lowercase();
            while let Some(rest) = PREFIXES.iter().find_map(|x| p.strip_prefix(x)) {
                p = rest.trim_start().to_string();
            }
            p
        })
        .filter(|p| !p.is_empty())
        .collect();
    parts.sort();
    parts.dedup();
    parts
}

pub fn answers_match(expected: &str, produced: &str) -> bool {
    normalize(expected) == normalize(produced)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Score {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub gigo: usize,
}

impl Score {
    /// Dataset errors count as failures.
    pub fn strict(&self) -> Option<f64> {
        (self.total > 0).then(|| self.passed as f64 / self.total as f64)
    }

    /// Dataset errors left out of the denominator.
    pub fn audited(&self) -> Option<f64> {
        let judged = self.total - self.gigo;
        (judged > 0).then(|| self.passed as f64 / judged as f64)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (Some(strict), Some(audited)) = (self.strict(), self.audited()) else {
            return write!(f, "no results");
        };
        write!(
            f,
            "{} questions: {} passed, {} failed, {} gigo; strict {:.2}%, audited {:.2}%",
            self.total,
            self.passed,
            self.failed,
            self.gigo,
            strict * 100.0,
            audited * 100.0
        )
    }
}

pub fn score(results: &[RunResult]) -> Score {
    let mut s = Score { total: results.len(), ..Score::default() };
    for r in results {
        match r.status {
            Status::Passed => s.passed += 1,
            Status::Failed => s.failed += 1,
            Status::Gigo => s.gigo += 1,
        }
    }
    s
}
