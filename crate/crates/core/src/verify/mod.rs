//! Acceptance checks shared by the command line `verify` command and the
//! acceptance test target.
//!
//! Every check compares a computed value with a target (a printed constant,
//! an exact series, or an oracle count) under a tolerance that can be
//! overridden by name.

mod criteria;
pub mod properties;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Census;
use crate::ring::with_precision;
use crate::systems::SystemSpec;

pub use criteria::{
    clt_mean, criterion_1, criterion_10, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, TRIANGLE_D_THROUGH_X3,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Exact-coefficient, oracle and property checks; no printed constants.
    Fast,
    /// Everything in `Fast` plus all numeric constants.
    Full,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Fast => "fast",
            Suite::Full => "full",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            _ => Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        }
    }
}

/// Per-check tolerance overrides, keyed by check name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tolerances(pub BTreeMap<String, f64>);

impl Tolerances {
    pub fn get(&self, name: &str, default: f64) -> f64 {
        self.0.get(name).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub precision_digits: u32,
    pub oracle_n_cap: usize,
    /// Order of the girth-4 versus triangle comparison.
    pub girth_order: usize,
    /// Random samples per property.
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Replaces the built-in triangle system in the exact-series check.
    pub triangle_system: Option<SystemSpec>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            precision_digits: 50,
            oracle_n_cap: 6,
            girth_order: 20,
            samples: 24,
            seed: 0x5eed,
            tolerances: Tolerances::default(),
            triangle_system: None,
        }
    }
}

/// One line of a verification table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: String,
    pub name: String,
    pub expected: String,
    pub got: String,
    pub difference: Option<f64>,
    pub tolerance: Option<f64>,
    pub passed: bool,
    /// Wall time, kept out of serialized reports so they stay byte-stable.
    #[serde(skip)]
    pub seconds: Option<f64>,
}

pub fn fmt_num(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-6 {
        format!("{v:.6e}")
    } else {
        format!("{v:.10}")
    }
}

impl Check {
    /// `|got - expected| <= tol`.
    pub fn close(criterion: &str, name: &str, expected: f64, got: f64, tol: f64) -> Self {
        let diff = (got - expected).abs();
        Check {
            criterion: criterion.into(),
            name: name.into(),
            expected: fmt_num(expected),
            got: fmt_num(got),
            difference: Some(diff),
            tolerance: Some(tol),
            passed: diff <= tol,
            seconds: None,
        }
    }

    /// `|got - expected| <= rel |expected|`.
    pub fn relative(criterion: &str, name: &str, expected: f64, got: f64, rel: f64) -> Self {
        let mut c = Check::close(criterion, name, expected, got, rel * expected.abs());
        c.difference = Some((got - expected).abs() / expected.abs());
        c.tolerance = Some(rel);
        c
    }

    /// `|got| < bound`.
    pub fn bound(criterion: &str, name: &str, got: f64, bound: f64) -> Self {
        Check {
            criterion: criterion.into(),
            name: name.into(),
            expected: format!("|x| < {bound:e}"),
            got: format!("{got:.3e}"),
            difference: Some(got.abs()),
            tolerance: Some(bound),
            passed: got.abs() < bound,
            seconds: None,
        }
    }

    pub fn exact(criterion: &str, name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            criterion: criterion.into(),
            name: name.into(),
            expected: "exact".into(),
            got: detail.into(),
            difference: None,
            tolerance: None,
            passed,
            seconds: None,
        }
    }

    pub fn runtime(criterion: &str, name: &str, elapsed: Duration, limit: Duration) -> Self {
        Check {
            criterion: criterion.into(),
            name: name.into(),
            expected: format!("< {} s", limit.as_secs_f64()),
            got: if elapsed <= limit { "within limit".into() } else { "over limit".into() },
            difference: None,
            tolerance: None,
            passed: elapsed <= limit,
            seconds: Some(elapsed.as_secs_f64()),
        }
    }

    /// A computation that raised an error.
    pub fn error(criterion: &str, name: &str, err: &Error) -> Self {
        Check::exact(criterion, name, false, format!("error: {err}"))
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.seconds = Some(elapsed.as_secs_f64());
        self
    }
}

/// Result of a suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub precision_digits: u32,
    pub checks: Vec<Check>,
    /// Census distributions produced along the way, kept for inspection.
    pub archived: Vec<Census>,
    pub passed: bool,
}

impl VerifyReport {
    /// Pass/fail per criterion, in first-seen order.
    pub fn by_criterion(&self) -> Vec<(String, bool)> {
        let mut out: Vec<(String, bool)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(k, _)| *k == c.criterion) {
                Some((_, ok)) => *ok &= c.passed,
                None => out.push((c.criterion.clone(), c.passed)),
            }
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Output of a single criterion: its checks and any census kept for the
/// report.
#[derive(Debug, Clone, Default)]
pub struct CriterionOutput {
    pub checks: Vec<Check>,
    pub archived: Vec<Census>,
}

impl From<Vec<Check>> for CriterionOutput {
    fn from(checks: Vec<Check>) -> Self {
        CriterionOutput {
            checks,
            archived: Vec::new(),
        }
    }
}

type CriterionFn = fn(&VerifyConfig) -> CriterionOutput;

fn plan(suite: Suite) -> Vec<CriterionFn> {
    let fast: Vec<CriterionFn> = vec![criterion_1, criterion_2, criterion_3, criterion_10];
    match suite {
        Suite::Fast => fast,
        Suite::Full => vec![
            criterion_1,
            criterion_2,
            criterion_3,
            criterion_4,
            criterion_5,
            criterion_6,
            criterion_7,
            criterion_8,
            criterion_9,
            criterion_10,
            clt_mean,
        ],
    }
}

/// Runs a suite at the configured precision. `progress` sees each
/// criterion's checks as soon as they are done.
pub fn run_suite(
    suite: Suite,
    cfg: &VerifyConfig,
    mut progress: impl FnMut(&[Check]),
) -> Result<VerifyReport> {
    with_precision(cfg.precision_digits, || {
        let mut checks = Vec::new();
        let mut archived = Vec::new();
        for f in plan(suite) {
            let t = Instant::now();
            let mut out = f(cfg);
            for c in &mut out.checks {
                c.seconds.get_or_insert(t.elapsed().as_secs_f64());
            }
            progress(&out.checks);
            checks.extend(out.checks);
            archived.extend(out.archived);
        }
        let passed = checks.iter().all(|c| c.passed);
        VerifyReport {
            suite,
            precision_digits: cfg.precision_digits,
            checks,
            archived,
            passed,
        }
    })
}
