use serde::Serialize;

/// Outcome of a numerical proposition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
        }
    }
}

/// Result of running one numerical check: how many inputs were sampled, the
/// worst signed violation seen, and a replayable description of the input
/// that achieved it. `verdict` is pass exactly when
/// `worst_violation <= tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    pub worst_violation: f64,
    pub witness: String,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        samples: usize,
        worst_violation: f64,
        witness: impl Into<String>,
        tolerance: f64,
    ) -> Self {
        // NaN is never a pass.
        let verdict = if worst_violation <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            name: name.into(),
            samples,
            worst_violation,
            witness: witness.into(),
            tolerance,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Tracks the worst violation and lazily captures its witness.
#[derive(Debug)]
pub(crate) struct WorstCase {
    pub worst: f64,
    pub witness: String,
    pub samples: usize,
}

impl WorstCase {
    pub fn new() -> Self {
        Self {
            worst: f64::NEG_INFINITY,
            witness: String::from("no samples"),
            samples: 0,
        }
    }

    pub fn observe(&mut self, violation: f64, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if violation > self.worst || violation.is_nan() {
            self.worst = if violation.is_nan() {
                f64::NAN
            } else {
                violation
            };
            self.witness = witness();
        }
    }

    pub fn into_report(self, name: impl Into<String>, tolerance: f64) -> CheckReport {
        CheckReport::new(name, self.samples, self.worst, self.witness, tolerance)
    }
}
