//! The `(cαq/r_w)^w` size bound, spreadness checks for distributions, and
//! DNF agreement with a target function.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Pow};
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use super::dist::{DistSpec, ProbEstimate, ProbMode};
use super::family::{mask_of, SetFamily};
use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::scalar::{format_rational, to_f64};
use crate::Rational;

#[derive(Debug, Clone)]
pub struct CriterionParams {
    pub alpha: Rational,
    pub q: Rational,
    pub t: usize,
    pub w: usize,
    pub r_w: Rational,
    pub c: Rational,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LbReport {
    pub alpha: String,
    pub q: String,
    pub t: usize,
    pub w: usize,
    pub r_w: String,
    pub c: String,
    pub n: usize,
    pub value: String,
    pub value_f64: f64,
    pub w_le_t_half: bool,
    pub q_ge_8rw: bool,
    pub q_le_rwn: bool,
    pub applies: bool,
    /// A bound of at most 1 says nothing about circuit size.
    pub vacuous: bool,
}

/// `(c·α·q/r_w)^w`, exact, with the hypotheses reported as flags.
pub fn lb_criterion(p: &CriterionParams) -> LbReport {
    let one = Rational::one();
    let value = if p.r_w == Rational::from_integer(BigInt::from(0)) {
        one.clone()
    } else {
        Pow::pow(&p.c * &p.alpha * &p.q / &p.r_w, p.w as u32)
    };
    let w_le_t_half = 2 * p.w <= p.t;
    let q_ge_8rw = p.q >= Rational::from_integer(BigInt::from(8)) * &p.r_w;
    let q_le_rwn = p.q <= &p.r_w * Rational::from_integer(BigInt::from(p.n));
    LbReport {
        alpha: format_rational(&p.alpha),
        q: format_rational(&p.q),
        t: p.t,
        w: p.w,
        r_w: format_rational(&p.r_w),
        c: format_rational(&p.c),
        n: p.n,
        value_f64: to_f64(&value),
        vacuous: value <= one,
        value: format_rational(&value),
        w_le_t_half,
        q_ge_8rw,
        q_le_rwn,
        applies: w_le_t_half && q_ge_8rw && q_le_rwn,
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub enum SpreadMode {
    /// Every `A` with `1 ≤ |A| ≤ min(t, cap)`; needs an explicit distribution on at most 20 coordinates.
    Exact { cap: usize },
    /// `sets` random `A`, each probability computed with `prob`.
    Sampled { sets: usize, seed: u64, prob: ProbMode },
}

#[derive(Debug, Clone, Serialize)]
pub struct SpreadReport {
    pub t: usize,
    pub q: String,
    pub passes: bool,
    pub sets_checked: u64,
    pub worst_set: Vec<usize>,
    pub worst_prob: ProbEstimate,
    /// `Pr[⌈A⌉ = 1]·q^{|A|}` for the worst `A`; at most 1 when spread.
    pub worst_ratio: f64,
}

pub const SPREAD_EXACT_N: usize = 20;

/// Checks `Pr[⌈A⌉(x) = 1] ≤ q^{−|A|}` for `|A| ≤ t`.
pub fn spread_check(d: &DistSpec, t: usize, q: &Rational, mode: SpreadMode) -> Result<SpreadReport> {
    let n = d.n();
    let mut worst: Option<(f64, Vec<usize>, ProbEstimate)> = None;
    let mut passes = true;
    let mut checked = 0u64;
    let mut consider = |set: Vec<usize>, prob: ProbEstimate, ok: bool, ratio: f64| {
        checked += 1;
        passes &= ok;
        if worst.as_ref().is_none_or(|w| ratio > w.0) {
            worst = Some((ratio, set, prob));
        }
    };
    match mode {
        SpreadMode::Exact { cap } => {
            if n > SPREAD_EXACT_N || !d.exact_capable() {
                return Err(Error::InvalidArgument(format!(
                    "exact spreadness needs an explicit distribution on at most {SPREAD_EXACT_N} coordinates"
                )));
            }
            for size in 1..=t.min(cap).min(n) {
                let qk = Pow::pow(q, size as u32);
                for set in (0..n).combinations(size) {
                    let a = mask_of(&set);
                    let prob = d.probability(|x| a & !x == 0, ProbMode::Exact)?;
                    let r = prob.value.clone().expect("exact") * &qk;
                    consider(set, prob, r <= Rational::one(), to_f64(&r));
                }
            }
        }
        SpreadMode::Sampled { sets, seed, prob: pm } => {
            let mut rng = stream_rng(seed, 0);
            let qf = to_f64(q);
            for _ in 0..sets {
                let size = rng.gen_range(1..=t.min(n).max(1));
                let set = sample(&mut rng, n, size).into_vec().into_iter().sorted().collect::<Vec<_>>();
                let a = mask_of(&set);
                let prob = d.probability(|x| a & !x == 0, pm)?;
                let scale = qf.powi(size as i32);
                let ok = match &prob.value {
                    Some(v) => v * Pow::pow(q, size as u32) <= Rational::one(),
                    None => prob.lower * scale <= 1.0,
                };
                let r = prob.mean * scale;
                consider(set, prob, ok, r);
            }
        }
    }
    let (worst_ratio, worst_set, worst_prob) = worst.unwrap_or((0.0, Vec::new(), ProbEstimate::zero()));
    Ok(SpreadReport { t, q: format_rational(q), passes, sets_checked: checked, worst_set, worst_prob, worst_ratio })
}

/// `Pr_{x∼d}[⌈fam⌉(x) = f(x)]`.
pub fn dnf_agreement(fam: &SetFamily, f: impl Fn(u64) -> bool + Sync, d: &DistSpec, mode: ProbMode) -> Result<ProbEstimate> {
    d.probability(|x| fam.eval(x) == f(x), mode)
}
