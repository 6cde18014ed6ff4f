//! Random sparse 0/1 matrices, c-containment, and the three well-behavedness
//! properties.

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::dist::LogBase;
use super::{RealMatrix01, MAX_ROWS};
use crate::error::{Error, Result};
use crate::rng::{shard_sizes, stream_rng, MC_SHARDS};
use crate::stats::{hoeffding, Estimate};

#[derive(Debug, Clone, Serialize)]
pub struct SparseParams {
    pub n: usize,
    /// `n²`.
    pub m: usize,
    /// `⌈√log₂ m⌉`.
    pub k: usize,
    /// `200k²`.
    pub s_default: usize,
    pub s: usize,
}

/// Smallest `k` with `2^{k²} ≥ m`, i.e. `⌈√log₂ m⌉`.
fn ceil_sqrt_log2(m: usize) -> usize {
    (0..).find(|&k: &usize| k * k >= 64 || 1usize << (k * k) >= m).unwrap()
}

/// Parameters for an `n`-row matrix. Without an override the default
/// sparsity must fit in `n`.
pub fn sparse_params(n: usize, s_override: Option<usize>) -> Result<SparseParams> {
    if n == 0 || n > MAX_ROWS {
        return Err(Error::InvalidArgument(format!("need 1 <= n <= {MAX_ROWS}")));
    }
    let m = n * n;
    let k = ceil_sqrt_log2(m).max(1);
    let s_default = 200 * k * k;
    let s = match s_override {
        Some(s) if s > n => {
            return Err(Error::SparsityExceedsRows { s, n, note: String::new() });
        }
        Some(s) => s,
        None if s_default > n => {
            return Err(Error::ParameterDegeneration(format!(
                "default sparsity 200k² = {s_default} exceeds n = {n}; pass an explicit s"
            )));
        }
        None => s_default,
    };
    Ok(SparseParams { n, m, k, s_default, s })
}

fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Samples `m` columns i.i.d. uniform over all vectors of weight at most `s`.
pub fn sample_sparse_matrix(n: usize, m: usize, s: usize, rng: &mut impl Rng) -> Result<RealMatrix01> {
    if n == 0 || n > MAX_ROWS {
        return Err(Error::InvalidArgument(format!("need 1 <= n <= {MAX_ROWS}")));
    }
    if s > n {
        return Err(Error::SparsityExceedsRows { s, n, note: String::new() });
    }
    let weights: Vec<u128> = (0..=s).map(|w| binom_u128(n, w)).collect();
    let total: u128 = weights.iter().sum();
    let cols = (0..m)
        .map(|_| {
            let mut r = rng.gen_range(0..total);
            let mut w = 0;
            while r >= weights[w] {
                r -= weights[w];
                w += 1;
            }
            sample(rng, n, w).iter().fold(0u128, |acc, i| acc | 1 << i)
        })
        .collect();
    Ok(RealMatrix01::from_masks(n, Some(s), cols))
}

fn union_overlap(m: &RealMatrix01, tau: &[usize], j: usize) -> usize {
    let before = tau[..j].iter().fold(0u128, |acc, &p| acc | m.column_mask(p));
    (m.column_mask(tau[j]) & before).count_ones() as usize
}

/// Whether `|supp M[τ_j] ∩ ⋃_{p<j} supp M[τ_p]| ≥ c` (positions 0-based).
pub fn is_c_contained(m: &RealMatrix01, tau: &[usize], j: usize, c: usize) -> Result<bool> {
    if j >= tau.len() {
        return Err(Error::InvalidArgument(format!("position {j} outside a tuple of length {}", tau.len())));
    }
    if let Some(&bad) = tau.iter().find(|&&i| i >= m.m()) {
        return Err(Error::InvalidArgument(format!("column {bad} outside [0,{})", m.m())));
    }
    Ok(union_overlap(m, tau, j) >= c)
}

fn contained_count(m: &RealMatrix01, tau: &[usize], c: usize) -> usize {
    let mut union = 0u128;
    let mut count = 0;
    for &i in tau {
        if (m.column_mask(i) & union).count_ones() as usize >= c {
            count += 1;
        }
        union |= m.column_mask(i);
    }
    count
}

#[derive(Debug, Clone, Serialize)]
pub struct WellBehavedOptions {
    pub k: usize,
    /// Containment threshold; `10k` when unset.
    pub c: Option<usize>,
    /// Largest tuple length checked for property 3.
    pub t_max: usize,
    /// Subset size for property 2; `10n⌈log n⌉` when unset.
    pub w_override: Option<usize>,
    pub log_base: LogBase,
    /// Subsets sampled for property 2.
    pub trials: usize,
    /// Random tuples per length for property 3.
    pub tuple_trials: usize,
    /// Overlap-greedy tuples per length for property 3.
    pub adversarial_seeds: usize,
    /// Hoeffding failure probability.
    pub delta: f64,
    pub seed: u64,
}

impl WellBehavedOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        WellBehavedOptions {
            k,
            c: None,
            t_max: 8,
            w_override: None,
            log_base: LogBase::Two,
            trials: 2000,
            tuple_trials: 2000,
            adversarial_seeds: 32,
            delta: 0.01,
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentQuery {
    pub t: usize,
    pub tuple: Vec<usize>,
    pub contained: usize,
}

pub type ContainmentViolation = ContainmentQuery;

#[derive(Debug, Clone, Serialize)]
pub struct WellBehavedReport {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub k: usize,
    pub c: usize,
    pub min_support: usize,
    /// Fraction of columns with support below `s/2`.
    pub light_fraction: f64,
    pub passes1: bool,
    pub w: usize,
    pub w_default: usize,
    pub full_rank: Estimate,
    pub passes2: bool,
    pub t_max: usize,
    /// `n^{0.1}`; tuple lengths above it are checked but advisory.
    pub t_cap: f64,
    pub tuples_checked: u64,
    pub violations: Vec<ContainmentViolation>,
    pub passes3: bool,
    pub passes: bool,
}

const VIOLATION_CAP: usize = 20;

fn violates(count: usize, t: usize, k: usize) -> bool {
    2 * k * count >= t
}

fn greedy_tuple(m: &RealMatrix01, first: usize, second: usize, t: usize) -> Vec<usize> {
    let mut tuple = vec![first, second];
    tuple.truncate(t);
    let mut union = tuple.iter().fold(0u128, |acc, &i| acc | m.column_mask(i));
    while tuple.len() < t {
        let next = (0..m.m())
            .filter(|j| !tuple.contains(j))
            .max_by_key(|&j| ((m.column_mask(j) & union).count_ones(), std::cmp::Reverse(j)))
            .expect("t <= m");
        union |= m.column_mask(next);
        tuple.push(next);
    }
    tuple
}

/// Checks the three well-behavedness properties of a sparse matrix with a
/// recorded sparsity bound. Property 2 is a Monte Carlo estimate with a
/// Hoeffding interval; property 3 is checked on random tuples and on tuples
/// grown greedily from the most-overlapping column pairs.
pub fn check_well_behaved(m: &RealMatrix01, opts: &WellBehavedOptions) -> Result<WellBehavedReport> {
    let s = m.s().ok_or_else(|| Error::InvalidArgument("matrix has no recorded sparsity bound".into()))?;
    let (n, cols) = (m.n(), m.m());
    if cols == 0 {
        return Err(Error::InvalidArgument("matrix has no columns".into()));
    }
    let k = opts.k.max(1);
    let c = opts.c.unwrap_or(10 * k);

    let min_support = (0..cols).map(|j| m.weight(j)).min().unwrap_or(0);
    let light = (0..cols).filter(|&j| 2 * m.weight(j) < s).count();
    let passes1 = 2 * min_support >= s;

    let w_default = super::d1_weight_real(n, opts.log_base);
    let w = opts.w_override.unwrap_or(w_default);
    if w > cols {
        if opts.w_override.is_some() {
            return Err(Error::WeightExceedsLength { weight: w, len: cols });
        }
        return Err(Error::ParameterDegeneration(format!(
            "subset size 10n⌈log n⌉ = {w} exceeds m = {cols}; pass an explicit subset size"
        )));
    }
    let hits: u64 = shard_sizes(opts.trials, MC_SHARDS)
        .par_iter()
        .enumerate()
        .map(|(sh, &count)| {
            let mut rng = stream_rng(opts.seed, sh as u64);
            (0..count).filter(|_| m.rank_of(&sample(&mut rng, cols, w).into_vec()) == n).count() as u64
        })
        .sum();
    let full_rank = hoeffding(hits, opts.trials as u64, opts.delta);
    let passes2 = full_rank.lower >= 0.1;

    let t_max = opts.t_max.min(cols);
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    for a in 0..cols {
        for b in a + 1..cols {
            pairs.push(((m.column_mask(a) & m.column_mask(b)).count_ones(), a, b));
        }
    }
    pairs.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    pairs.truncate(opts.adversarial_seeds);

    let mut violations = Vec::new();
    let mut checked = 0u64;
    for t in 1..=t_max {
        let mut tuples: Vec<Vec<usize>> = pairs.iter().map(|&(_, a, b)| greedy_tuple(m, a, b, t)).collect();
        let random: Vec<Vec<Vec<usize>>> = shard_sizes(opts.tuple_trials, MC_SHARDS)
            .par_iter()
            .enumerate()
            .map(|(sh, &count)| {
                let mut rng = stream_rng(opts.seed, ((t as u64) << 8) | (MC_SHARDS as u64 + sh as u64));
                (0..count).map(|_| sample(&mut rng, cols, t).into_vec()).collect()
            })
            .collect();
        tuples.extend(random.into_iter().flatten());
        for tuple in tuples {
            checked += 1;
            let count = contained_count(m, &tuple, c);
            if violates(count, t, k) && violations.len() < VIOLATION_CAP {
                violations.push(ContainmentQuery { t, tuple, contained: count });
            }
        }
    }
    let passes3 = violations.is_empty();

    Ok(WellBehavedReport {
        n,
        m: cols,
        s,
        k,
        c,
        min_support,
        light_fraction: light as f64 / cols as f64,
        passes1,
        w,
        w_default,
        full_rank,
        passes2,
        t_max,
        t_cap: (n as f64).powf(0.1),
        tuples_checked: checked,
        violations,
        passes3,
        passes: passes1 && passes2 && passes3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        let p = sparse_params(8, Some(4)).unwrap();
        assert_eq!((p.m, p.k, p.s_default, p.s), (64, 3, 1800, 4));
        assert!(matches!(sparse_params(8, None), Err(Error::ParameterDegeneration(_))));
        assert!(matches!(sparse_params(8, Some(9)), Err(Error::SparsityExceedsRows { .. })));
        assert_eq!(sparse_params(4, Some(2)).unwrap().k, 2);
    }

    #[test]
    fn sampler_respects_sparsity() {
        let mut rng = stream_rng(3, 0);
        let mat = sample_sparse_matrix(10, 200, 3, &mut rng).unwrap();
        assert!((0..200).all(|j| mat.weight(j) <= 3));
        // weight 3 carries 120 of the 176 vectors of weight <= 3
        let heavy = (0..200).filter(|&j| mat.weight(j) == 3).count();
        assert!((100..170).contains(&heavy), "{heavy}");
    }

    #[test]
    fn containment_examples() {
        let m = RealMatrix01::new(4, None, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        assert!(!is_c_contained(&m, &[0, 2], 1, 1).unwrap());
        assert!(is_c_contained(&m, &[0, 2, 3], 2, 2).unwrap());
        assert!(is_c_contained(&m, &[0, 1], 1, 1).unwrap());
        assert!(!is_c_contained(&m, &[0, 1], 1, 2).unwrap());
        assert!(is_c_contained(&m, &[0], 1, 1).is_err());
    }

    #[test]
    fn duplicated_identity_violates_property3() {
        let n = 6;
        let sup: Vec<Vec<usize>> = (0..2 * n).map(|j| vec![j % n]).collect();
        let m = RealMatrix01::new(n, Some(1), &sup).unwrap();
        let mut opts = WellBehavedOptions::new(1, 5);
        opts.c = Some(1);
        opts.t_max = 4;
        opts.w_override = Some(n);
        opts.trials = 200;
        let r = check_well_behaved(&m, &opts).unwrap();
        assert!(r.passes1);
        assert!(!r.passes3);
        assert!(r.violations.iter().all(|v| v.t >= 2 && 2 * v.contained >= v.t));
    }

    #[test]
    fn identity_subset_rank() {
        let n = 5;
        let sup: Vec<Vec<usize>> = (0..n).map(|j| vec![j]).collect();
        let m = RealMatrix01::new(n, Some(1), &sup).unwrap();
        let mut opts = WellBehavedOptions::new(1, 1);
        opts.w_override = Some(n);
        opts.trials = 100;
        let r = check_well_behaved(&m, &opts).unwrap();
        assert_eq!(r.full_rank.successes, 100);
        assert!(r.passes2 && r.passes3);
        opts.w_override = Some(n - 1);
        assert_eq!(check_well_behaved(&m, &opts).unwrap().full_rank.successes, 0);
    }
}
