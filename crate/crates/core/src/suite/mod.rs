//! Randomized verification of the Schur–Horn type inequalities.
//!
//! Each suite produces one or more [`VerificationReport`]s. Trial `i` of a
//! report draws from [`trial_rng`]`(report.seed, i)`, so a report is
//! identical whatever the thread count, and any counterexample can be
//! regenerated from its seed and trial index.

mod checks;
mod runners;
pub mod sampling;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::trial_rng;

pub use checks::{
    minmax_item, slack_scale, strictness_probe, verify_block_pinch, verify_fan_diff, verify_fan_sum,
    verify_hadamard, verify_le_kpositive, verify_main, verify_minmax, verify_rank_one,
    verify_schur_concavity, verify_sum_psd_embed, verify_symmetrization, verify_transfer, CheckItem,
    MinmaxItem, Strictness, SymmetrizationItem, EPS, STRICTNESS_FLOOR,
};
pub use runners::{run_all, run_fischer, run_suite, SuiteConfig, DEFAULT_SEED, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// The polynomial inequality itself failed.
    Inequality,
    /// A cone-membership conclusion failed.
    Cone,
    /// The majorization the check relies on could not be confirmed.
    Orientation,
    /// A sampled input violated the check's cone precondition.
    Precondition,
    /// An equality case was not attained.
    Equality,
    /// Two routes to the same answer disagreed.
    Agreement,
    /// Any other error.
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub kind: FailureKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
    pub input: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub trials: usize,
    pub failures: usize,
    /// Most negative normalized margin `(lhs − rhs) / scale` observed;
    /// `0` when no trial produced a margin.
    pub worst_slack: f64,
    pub seed: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Kind, `lhs`, `rhs`, message and input of a failed trial.
pub type FailureDetail = (FailureKind, Option<f64>, Option<f64>, Option<String>, serde_json::Value);

/// The result of one trial: an optional margin and an optional failure.
#[derive(Clone, Debug, Default)]
pub struct TrialOutcome {
    pub slack: Option<f64>,
    pub failure: Option<FailureDetail>,
}

impl TrialOutcome {
    pub fn pass(slack: f64) -> Self {
        Self { slack: Some(slack), failure: None }
    }

    pub fn fail(kind: FailureKind, message: impl Into<String>, input: serde_json::Value) -> Self {
        Self {
            slack: None,
            failure: Some((kind, None, None, Some(message.into()), input)),
        }
    }

    pub fn from_error(e: &Error, input: serde_json::Value) -> Self {
        let kind = match e {
            Error::Majorization(_) => FailureKind::Orientation,
            Error::ConeMembership(_) => FailureKind::Precondition,
            _ => FailureKind::Error,
        };
        Self::fail(kind, e.to_string(), input)
    }

    pub fn from_item(res: Result<CheckItem>, input: impl FnOnce() -> serde_json::Value) -> Self {
        match res {
            Ok(item) => {
                let kind = if !item.holds {
                    Some(FailureKind::Inequality)
                } else if !item.cone_preserved {
                    Some(FailureKind::Cone)
                } else {
                    None
                };
                Self {
                    slack: Some(item.slack),
                    failure: kind.map(|k| (k, Some(item.lhs), Some(item.rhs), None, input())),
                }
            }
            Err(e) => Self::from_error(&e, input()),
        }
    }

    pub fn from_minmax(res: Result<MinmaxItem>, input: impl FnOnce() -> serde_json::Value) -> Self {
        match res {
            Ok(item) => {
                let kind = if !item.holds {
                    Some(FailureKind::Inequality)
                } else if !item.cone_preserved {
                    Some(FailureKind::Cone)
                } else if !item.equality_holds {
                    Some(FailureKind::Equality)
                } else {
                    None
                };
                Self {
                    slack: Some(item.slack),
                    failure: kind.map(|k| (k, Some(item.lower), Some(item.upper), None, input())),
                }
            }
            Err(e) => Self::from_error(&e, input()),
        }
    }

    /// Replaces a passing outcome with an [`FailureKind::Agreement`] failure
    /// when `agrees` is false.
    pub fn require_agreement(mut self, agrees: bool, message: &str, input: impl FnOnce() -> serde_json::Value) -> Self {
        if !agrees && self.failure.is_none() {
            self.failure = Some((FailureKind::Agreement, None, None, Some(message.to_string()), input()));
        }
        self
    }
}

/// Runs `trials` independent trials in parallel and merges them in trial
/// order.
pub fn run_trials<F>(check: &str, trials: usize, seed: u64, f: F) -> VerificationReport
where
    F: Fn(&mut ChaCha8Rng, usize) -> TrialOutcome + Sync,
{
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            f(&mut rng, i)
        })
        .collect();
    let mut worst = f64::INFINITY;
    let mut counterexamples = Vec::new();
    for (trial, o) in outcomes.into_iter().enumerate() {
        if let Some(s) = o.slack {
            worst = worst.min(s);
        }
        if let Some((kind, lhs, rhs, message, input)) = o.failure {
            counterexamples.push(Counterexample { trial, kind, lhs, rhs, message, input });
        }
    }
    VerificationReport {
        check: check.to_string(),
        trials,
        failures: counterexamples.len(),
        worst_slack: if worst.is_finite() { worst } else { 0.0 },
        seed,
        counterexamples,
    }
}
