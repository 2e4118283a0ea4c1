//! Seeded sample-point generation and the residual-check driver.
//!
//! Identity verdicts are "max residual over N sample points <= tolerance".
//! Points come from a seeded generator recorded in the report; degenerate
//! points (metric minor below the floor, or an expression domain error) are
//! rejected and redrawn, and the rejection count is reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::report::{CheckResult, ResidualReport};
use crate::scalar::{lit, Scalar};
use crate::symexpr::{Expr, Point};

/// Minimum value a leading principal minor of the metric may take at an
/// accepted sample point.
pub const MINOR_FLOOR: f64 = 1e-10;

/// Sampling parameters: count, per-coordinate ranges, seed, and tolerance.
#[derive(Debug, Clone)]
pub struct SampleConfig<T> {
    pub count: usize,
    pub ranges: Vec<(T, T)>,
    pub seed: u64,
    pub tolerance: T,
}

impl<T: Scalar> SampleConfig<T> {
    /// Defaults: 50 points in [-1, 1] per coordinate, seed 42, tolerance 1e-7.
    pub fn standard(dim: usize) -> Self {
        SampleConfig {
            count: 50,
            ranges: vec![(lit(-1.0), lit(1.0)); dim],
            seed: 42,
            tolerance: lit(1e-7),
        }
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tolerance(mut self, tol: T) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_ranges(mut self, ranges: Vec<(T, T)>) -> Self {
        self.ranges = ranges;
        self
    }

    /// Overrides the range of a single coordinate.
    pub fn with_range(mut self, coord: usize, lo: T, hi: T) -> Self {
        self.ranges[coord] = (lo, hi);
        self
    }

    pub fn dim(&self) -> usize {
        self.ranges.len()
    }
}

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("could not draw {wanted} non-degenerate sample points ({rejections} rejections)")]
    DegenerateRegion { wanted: usize, rejections: usize },
}

/// One named residual check: the maximum of |expr| over points and entries.
#[derive(Debug, Clone)]
pub struct ResidualCheck<T> {
    pub name: String,
    pub exprs: Vec<Expr<T>>,
    /// Overrides the config tolerance when set (e.g. scale-relative bounds).
    pub threshold: Option<T>,
    pub advisory: bool,
    pub note: Option<String>,
}

impl<T: Scalar> ResidualCheck<T> {
    pub fn new(name: impl Into<String>, exprs: Vec<Expr<T>>) -> Self {
        ResidualCheck {
            name: name.into(),
            exprs,
            threshold: None,
            advisory: false,
            note: None,
        }
    }

    pub fn with_threshold(mut self, threshold: T) -> Self {
        self.threshold = Some(threshold);
        self
    }

    pub fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn draw_candidate<T: Scalar>(rng: &mut ChaCha8Rng, cfg: &SampleConfig<T>) -> Point<T> {
    let coords = cfg
        .ranges
        .iter()
        .map(|&(lo, hi)| {
            let u: f64 = rng.gen();
            lo + (hi - lo) * lit::<T>(u)
        })
        .collect();
    Point::new(coords)
}

/// Draws `cfg.count` points accepted by `accept`, reporting rejections.
pub fn draw_points<T: Scalar>(
    cfg: &SampleConfig<T>,
    accept: &dyn Fn(&Point<T>) -> bool,
) -> Result<(Vec<Point<T>>, usize), SampleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut points = Vec::with_capacity(cfg.count);
    let mut rejections = 0usize;
    let max_attempts = cfg.count.saturating_mul(200).max(1000);
    let mut attempts = 0usize;
    while points.len() < cfg.count {
        if attempts >= max_attempts {
            return Err(SampleError::DegenerateRegion {
                wanted: cfg.count,
                rejections,
            });
        }
        attempts += 1;
        let p = draw_candidate(&mut rng, cfg);
        if accept(&p) {
            points.push(p);
        } else {
            rejections += 1;
        }
    }
    Ok((points, rejections))
}

/// Runs a batch of residual checks over one shared seeded point set.
///
/// A candidate point is accepted only if `accept` holds and every check
/// expression evaluates to a finite value there; resampling is reported.
/// Expressions that are literally the zero constant are skipped (symbolic
/// zero fast path).
pub fn run_residual_checks<T: Scalar>(
    checks: Vec<ResidualCheck<T>>,
    accept: &dyn Fn(&Point<T>) -> bool,
    cfg: &SampleConfig<T>,
) -> Result<ResidualReport<T>, SampleError> {
    let live: Vec<Vec<&Expr<T>>> = checks
        .iter()
        .map(|c| c.exprs.iter().filter(|e| !e.is_zero()).collect())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut maxima = vec![T::zero(); checks.len()];
    let mut accepted = 0usize;
    let mut rejections = 0usize;
    let max_attempts = cfg.count.saturating_mul(200).max(1000);
    let mut attempts = 0usize;

    'outer: while accepted < cfg.count {
        if attempts >= max_attempts {
            return Err(SampleError::DegenerateRegion {
                wanted: cfg.count,
                rejections,
            });
        }
        attempts += 1;
        let p = draw_candidate(&mut rng, cfg);
        if !accept(&p) {
            rejections += 1;
            continue;
        }
        let mut values: Vec<(usize, T)> = Vec::new();
        for (ci, exprs) in live.iter().enumerate() {
            for e in exprs {
                match e.evaluate(&p) {
                    Ok(v) => values.push((ci, v.abs())),
                    Err(_) => {
                        rejections += 1;
                        continue 'outer;
                    }
                }
            }
        }
        for (ci, v) in values {
            if v > maxima[ci] {
                maxima[ci] = v;
            }
        }
        accepted += 1;
    }

    let mut report = ResidualReport::new(cfg.seed, cfg.count);
    report.rejections = rejections;
    for (check, residual) in checks.into_iter().zip(maxima) {
        let threshold = check.threshold.unwrap_or(cfg.tolerance);
        report.push(CheckResult {
            name: check.name,
            residual,
            threshold,
            pass: residual <= threshold,
            advisory: check.advisory,
            note: check.note,
        });
    }
    Ok(report)
}

/// Accepts every point; for checks with no degeneracy concerns.
pub fn accept_all<T: Scalar>(_p: &Point<T>) -> bool {
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    #[test]
    fn same_seed_same_points() {
        let cfg = SampleConfig::<f64>::standard(3).with_count(10);
        let (a, _) = draw_points(&cfg, &accept_all).unwrap();
        let (b, _) = draw_points(&cfg, &accept_all).unwrap();
        assert_eq!(a, b);
        let (c, _) = draw_points(&cfg.clone().with_seed(7), &accept_all).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejections_are_counted_for_domain_errors() {
        let cfg = SampleConfig::<f64>::standard(1)
            .with_count(20)
            .with_ranges(vec![(-1.0, 1.0)]);
        // ln(z) fails on half the range
        let e = parse_expr::<f64, _>("ln(z)", &["z"]).unwrap();
        let report =
            run_residual_checks(vec![ResidualCheck::new("ln", vec![e])], &accept_all, &cfg)
                .unwrap();
        assert!(report.rejections > 0);
        assert_eq!(report.sample_count, 20);
    }

    #[test]
    fn impossible_region_errors_out() {
        let cfg = SampleConfig::<f64>::standard(1).with_count(5);
        let err = draw_points(&cfg, &|_| false).unwrap_err();
        assert!(matches!(err, SampleError::DegenerateRegion { .. }));
    }

    #[test]
    fn symbolic_zero_fast_path() {
        let cfg = SampleConfig::<f64>::standard(2).with_count(5);
        let report = run_residual_checks(
            vec![ResidualCheck::new("zero", vec![Expr::zero(), Expr::zero()])],
            &accept_all,
            &cfg,
        )
        .unwrap();
        assert_eq!(report.checks[0].residual, 0.0);
        assert!(report.passed());
    }
}
