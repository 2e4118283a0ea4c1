//! Residual reports: per-check maxima over sample points with pass/fail
//! verdicts against tolerances.

use crate::scalar::Scalar;

/// Outcome of one named identity check.
#[derive(Debug, Clone)]
pub struct CheckResult<T> {
    pub name: String,
    /// Max |residual| over the sampled points (and tensor components).
    pub residual: T,
    /// Effective threshold the residual was compared against.
    pub threshold: T,
    pub pass: bool,
    /// Advisory checks report values but do not gate the overall verdict.
    pub advisory: bool,
    pub note: Option<String>,
}

/// Per-identity max residuals over a seeded sample set.
#[derive(Debug, Clone)]
pub struct ResidualReport<T> {
    pub checks: Vec<CheckResult<T>>,
    pub seed: u64,
    pub sample_count: usize,
    /// Degenerate points that were rejected and redrawn.
    pub rejections: usize,
    pub notes: Vec<String>,
}

impl<T: Scalar> ResidualReport<T> {
    pub fn new(seed: u64, sample_count: usize) -> Self {
        ResidualReport {
            checks: Vec::new(),
            seed,
            sample_count,
            rejections: 0,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult<T>) {
        self.checks.push(check);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// True when every non-advisory check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.advisory || c.pass)
    }

    pub fn max_residual(&self, name: &str) -> Option<T> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult<T>> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Folds another report's checks and notes into this one.
    pub fn merge(&mut self, other: ResidualReport<T>) {
        self.checks.extend(other.checks);
        self.rejections += other.rejections;
        self.notes.extend(other.notes);
    }
}
