//! Conditional probabilities `Pr[a_{τ_j} = 1 | a_{τ_1}, …, a_{τ_{j−1}}]` under
//! the real `D₀`, for a tuple whose last column is not c-contained.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{is_c_contained, RealMatrix01};
use crate::error::{Error, Result};
use crate::rng::{shard_sizes, stream_rng, MC_SHARDS};
use crate::scalar::{format_rational, ratio};
use crate::stats::{wilson, DECISION_Z};

/// Largest support union enumerated exactly (`3^14` points).
pub const PROBE_EXACT_LIMIT: usize = 14;

#[derive(Debug, Clone, Serialize)]
pub struct PatternStat {
    /// Values of `a` on the earlier columns, as a 0/1 string.
    pub pattern: String,
    pub count: u64,
    pub hits: u64,
    /// Exact `hits/count` when enumerated.
    pub exact: Option<String>,
    pub mean: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub tuple: Vec<usize>,
    pub c: usize,
    pub exact: bool,
    pub samples: u64,
    pub patterns: Vec<PatternStat>,
    /// Smallest conditional estimate over observed patterns.
    pub min_mean: f64,
    /// Smallest lower confidence bound (the exact minimum when enumerated).
    pub min_lower: f64,
}

type Tally = BTreeMap<u64, (u64, u64)>;

fn record(m: &RealMatrix01, tuple: &[usize], u: &[i8], tally: &mut Tally) {
    let zero = |col: usize| m.support(col).iter().map(|&i| i64::from(u[i])).sum::<i64>() == 0;
    let (last, rest) = tuple.split_last().expect("nonempty tuple");
    let pattern = rest.iter().enumerate().fold(0u64, |acc, (p, &col)| acc | u64::from(zero(col)) << p);
    let e = tally.entry(pattern).or_insert((0, 0));
    e.0 += 1;
    e.1 += u64::from(zero(*last));
}

/// Requires the last column of `tuple` not to be `c`-contained. Enumerates
/// `u` exactly over the rows the tuple touches when there are at most
/// [`PROBE_EXACT_LIMIT`] of them and `allow_exact` is set, and samples
/// `trials` vectors otherwise.
pub fn weak_independence_probe(
    m: &RealMatrix01,
    tuple: &[usize],
    c: usize,
    allow_exact: bool,
    trials: u64,
    seed: u64,
) -> Result<ProbeReport> {
    if tuple.is_empty() || tuple.len() > 64 {
        return Err(Error::InvalidArgument("tuple length must be in 1..=64".into()));
    }
    let j = tuple.len() - 1;
    if is_c_contained(m, tuple, j, c)? {
        return Err(Error::PreconditionViolated(format!("column {} is {c}-contained in the tuple", tuple[j])));
    }
    let rows: Vec<usize> = {
        let union = tuple.iter().fold(0u128, |acc, &col| acc | m.column_mask(col));
        (0..m.n()).filter(|&i| union >> i & 1 == 1).collect()
    };
    let exact = allow_exact && rows.len() <= PROBE_EXACT_LIMIT;
    let tally: Tally = if exact {
        let mut tally = Tally::new();
        let mut u = vec![0i8; m.n()];
        for idx in 0..3u64.pow(rows.len() as u32) {
            let mut rest = idx;
            for &i in &rows {
                u[i] = (rest % 3) as i8 - 1;
                rest /= 3;
            }
            record(m, tuple, &u, &mut tally);
        }
        tally
    } else {
        let parts: Vec<Tally> = shard_sizes(trials as usize, MC_SHARDS)
            .par_iter()
            .enumerate()
            .map(|(sh, &count)| {
                let mut rng = stream_rng(seed, sh as u64);
                let mut tally = Tally::new();
                for _ in 0..count {
                    let u: Vec<i8> = (0..m.n()).map(|_| rng.gen_range(-1..=1)).collect();
                    record(m, tuple, &u, &mut tally);
                }
                tally
            })
            .collect();
        let mut tally = Tally::new();
        for part in parts {
            for (k, (a, b)) in part {
                let e = tally.entry(k).or_insert((0, 0));
                e.0 += a;
                e.1 += b;
            }
        }
        tally
    };
    let patterns: Vec<PatternStat> = tally
        .iter()
        .map(|(&pat, &(count, hits))| {
            let pattern: String = (0..j).map(|p| if pat >> p & 1 == 1 { '1' } else { '0' }).collect();
            if exact {
                let mean = hits as f64 / count as f64;
                let r = ratio(hits as i64, count as i64);
                PatternStat { pattern, count, hits, exact: Some(format_rational(&r)), mean, lower: mean, upper: mean }
            } else {
                let e = wilson(hits, count, DECISION_Z);
                PatternStat { pattern, count, hits, exact: None, mean: e.mean, lower: e.lower, upper: e.upper }
            }
        })
        .collect();
    let samples = patterns.iter().map(|p| p.count).sum();
    let min_mean = patterns.iter().map(|p| p.mean).fold(f64::INFINITY, f64::min);
    let min_lower = patterns.iter().map(|p| p.lower).fold(f64::INFINITY, f64::min);
    Ok(ProbeReport { tuple: tuple.to_vec(), c, exact, samples, patterns, min_mean, min_lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_weight_two_column() {
        // u_1 + u_2 = 0 for 3 of the 9 choices
        let m = RealMatrix01::new(3, None, &[vec![0, 1]]).unwrap();
        let r = weak_independence_probe(&m, &[0], 1, true, 0, 0).unwrap();
        assert!(r.exact);
        assert_eq!(r.patterns[0].exact.as_deref(), Some("1/3"));
        assert_eq!(r.samples, 9);
    }

    #[test]
    fn disjoint_columns_are_independent() {
        let m = RealMatrix01::new(4, None, &[vec![0, 1], vec![2, 3]]).unwrap();
        let r = weak_independence_probe(&m, &[0, 1], 1, true, 0, 0).unwrap();
        assert!(r.patterns.iter().all(|p| p.exact.as_deref() == Some("1/3")));
        let mc = weak_independence_probe(&m, &[0, 1], 1, false, 20_000, 3).unwrap();
        assert!(mc.patterns.iter().all(|p| p.lower <= 1.0 / 3.0 && 1.0 / 3.0 <= p.upper));
    }

    #[test]
    fn contained_tuple_is_rejected() {
        let m = RealMatrix01::new(3, None, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(matches!(weak_independence_probe(&m, &[0, 1], 2, true, 0, 0), Err(Error::PreconditionViolated(_))));
    }
}
