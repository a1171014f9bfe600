//! Quality-indicator mappings from raw evaluation histories to improvement
//! traces.
//!
//! The noiseless indicator is the best objective value observed so far. The
//! noisy indicator is the lower 1%-quantile over a slowly growing window of
//! recent values; both are reduced to their strict improvement steps, which
//! is all that runtime extraction needs.

use crate::error::{Error, Result};
use crate::model::Step;

/// Raw objective values by evaluation index t = 1..T.
#[derive(Debug, Clone, PartialEq)]
pub struct RawHistory {
    values: Vec<f64>,
}

impl RawHistory {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("history must not be empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("history values must be finite"));
        }
        Ok(RawHistory { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Strict prefix-minimum improvement points of a history. The first point is
/// always (1, values[0]).
pub fn best_so_far(history: &RawHistory) -> Vec<Step> {
    compress(
        history
            .values()
            .iter()
            .copied()
            .enumerate()
            .map(|(i, v)| Step {
                evals: i as u64 + 1,
                value: v,
            }),
    )
}

/// Keeps the strict improvements of an already ordered (evals, value) stream.
pub(crate) fn compress(points: impl IntoIterator<Item = Step>) -> Vec<Step> {
    let mut steps: Vec<Step> = Vec::new();
    for p in points {
        if steps.last().is_none_or(|s| p.value < s.value) {
            steps.push(p);
        }
    }
    steps
}

/// Window length for the noisy indicator at evaluation count t:
/// ceil(ln(t + 3)^2 / 2), never exceeding t.
pub fn noisy_window_size(t: u64) -> u64 {
    assert!(t >= 1, "evaluation counts start at 1");
    let w = ((t as f64 + 3.0).ln().powi(2) / 2.0).ceil() as u64;
    w.min(t)
}

/// Noisy quality indicator: at each t, the lower empirical 1%-quantile of
/// the last `noisy_window_size(t)` values, compressed to improvement steps.
///
/// The lower quantile of w values at q = 0.01 is the ceil(q * w)-th smallest,
/// i.e. the window minimum for any w <= 100.
pub fn noisy_indicator(history: &RawHistory) -> Vec<Step> {
    let values = history.values();
    compress((1..=values.len() as u64).map(|t| {
        let w = noisy_window_size(t) as usize;
        let window = &values[t as usize - w..t as usize];
        Step {
            evals: t,
            value: lower_quantile(window, 0.01),
        }
    }))
}

/// The ceil(q * n)-th smallest of the slice (order-statistic quantile).
fn lower_quantile(window: &[f64], q: f64) -> f64 {
    debug_assert!(!window.is_empty());
    let rank = ((q * window.len() as f64).ceil() as usize).max(1);
    let mut sorted = window.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
    sorted[rank - 1]
}
