//! Confidence intervals for Monte Carlo estimates.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub mean: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Wilson score interval at `z` standard deviations.
pub fn wilson(successes: u64, trials: u64, z: f64) -> Estimate {
    if trials == 0 {
        return Estimate { successes, trials, mean: f64::NAN, lower: 0.0, upper: 1.0 };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * ((p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt()) / denom;
    Estimate {
        successes,
        trials,
        mean: p,
        lower: if successes == 0 { 0.0 } else { (centre - half).max(0.0) },
        upper: if successes == trials { 1.0 } else { (centre + half).min(1.0) },
    }
}

/// Two-sided Hoeffding interval with failure probability `delta`.
pub fn hoeffding(successes: u64, trials: u64, delta: f64) -> Estimate {
    if trials == 0 {
        return Estimate { successes, trials, mean: f64::NAN, lower: 0.0, upper: 1.0 };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let half = ((2.0 / delta).ln() / (2.0 * n)).sqrt();
    Estimate { successes, trials, mean: p, lower: (p - half).max(0.0), upper: (p + half).min(1.0) }
}

/// Default z for one-sided decisions made from a Wilson interval.
pub const DECISION_Z: f64 = 3.0;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals_contain_the_mean() {
        let w = wilson(30, 100, 2.0);
        assert!(w.lower < 0.3 && 0.3 < w.upper);
        let h = hoeffding(30, 100, 0.05);
        assert!(h.lower < 0.3 && 0.3 < h.upper);
        assert!(h.upper - h.lower > w.upper - w.lower);
        let z = wilson(0, 50, 3.0);
        assert_eq!(z.lower, 0.0);
        assert!(z.upper > 0.0);
    }
}
