//! Convergence-order fits for claims of the form `error = C·κ^p`.

use crate::error::{Error, Result};

/// Errors at or below this are treated as exact zeros.
pub const EXACT_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    /// Every sampled error vanished.
    Exact,
    Fitted {
        order: f64,
        /// log-space intercept, `error ≈ exp(intercept)·κ^order`
        intercept: f64,
    },
}

impl Order {
    pub fn fitted(&self) -> Option<f64> {
        match self {
            Order::Exact => None,
            Order::Fitted { order, .. } => Some(*order),
        }
    }

    /// True for `Exact` or a fitted order inside `[lo, hi]`.
    pub fn within(&self, lo: f64, hi: f64) -> bool {
        match self {
            Order::Exact => true,
            Order::Fitted { order, .. } => (lo..=hi).contains(order),
        }
    }
}

/// Least-squares slope of `ln error` against `ln step`.
///
/// Needs at least three samples. If every error is within
/// [`EXACT_THRESHOLD`] of zero the result is [`Order::Exact`]; a mix of zero
/// and nonzero errors cannot be fitted and reports order `NaN`.
pub fn fit_order(steps: &[f64], errors: &[f64]) -> Result<Order> {
    if steps.len() != errors.len() {
        return Err(Error::param("errors", "length differs from steps"));
    }
    if steps.len() < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: steps.len(),
        });
    }
    if steps.iter().any(|s| !(*s > 0.0)) {
        return Err(Error::param("steps", "must be positive"));
    }
    if errors.iter().all(|e| e.abs() <= EXACT_THRESHOLD) {
        return Ok(Order::Exact);
    }
    if errors.iter().any(|e| e.abs() <= EXACT_THRESHOLD) {
        return Ok(Order::Fitted {
            order: f64::NAN,
            intercept: f64::NAN,
        });
    }
    let n = steps.len() as f64;
    let xs: Vec<f64> = steps.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.abs().ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let order = sxy / sxx;
    Ok(Order::Fitted {
        order,
        intercept: my - order * mx,
    })
}

/// Geometric progression `start, start·ratio, …` of `count` values.
pub fn geometric(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let steps = geometric(1e-2, 0.5, 4);
        let errs: Vec<f64> = steps.iter().map(|h| 3.0 * h * h).collect();
        let o = fit_order(&steps, &errs).unwrap();
        assert!((o.fitted().unwrap() - 2.0).abs() < 1e-12);
        assert!(o.within(1.8, 2.2));
    }

    #[test]
    fn zero_errors_are_exact() {
        let steps = geometric(1e-2, 0.5, 3);
        assert_eq!(fit_order(&steps, &[0.0, 1e-17, 0.0]).unwrap(), Order::Exact);
    }

    #[test]
    fn needs_three_points() {
        assert_eq!(
            fit_order(&[1.0, 0.5], &[1.0, 0.25]),
            Err(Error::InsufficientSamples { needed: 3, got: 2 })
        );
    }
}
