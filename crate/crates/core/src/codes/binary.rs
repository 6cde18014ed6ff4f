//! Binary linear codes: weight distributions, distance, dual distance and
//! t-wise independence.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, F2Vec};
use crate::scalar::format_rational;

/// Largest code dimension enumerated directly.
pub const ENUM_RANK_LIMIT: usize = 24;
/// Largest dimension for which all codewords are held in memory.
const STORE_RANK_LIMIT: usize = 20;
/// Work cap (coordinate sets × codewords) for direct pattern counting.
const PATTERN_BUDGET: u128 = 1 << 32;
/// Node cap for the dependent-column search.
const DEPENDENCY_BUDGET: u64 = 20_000_000;

/// The row space of a full-row-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCodeF2 {
    gen: BitMatrix,
}

impl LinearCodeF2 {
    pub fn new(gen: BitMatrix) -> Result<Self> {
        if gen.rank() != gen.rows() {
            return Err(Error::InvalidArgument(format!("generator has rank {} < {} rows", gen.rank(), gen.rows())));
        }
        Ok(LinearCodeF2 { gen })
    }

    pub fn gen(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rows spanning the dual code.
    pub fn parity_check(&self) -> BitMatrix {
        BitMatrix::from_rows(self.len(), self.gen.rank_kernel().kernel)
    }

    fn check_enumerable(&self, limit: usize) -> Result<()> {
        if self.dim() > limit {
            return Err(Error::EnumerationTooLarge { what: format!("2^{} codewords", self.dim()), limit: format!("2^{limit}") });
        }
        Ok(())
    }

    /// `A_w` for `w = 0..=len`, by Gray-code enumeration split over message
    /// prefixes.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        self.check_enumerable(ENUM_RANK_LIMIT)?;
        let r = self.dim();
        let p = r.min(8);
        let low = r - p;
        let rows = self.gen.row_vecs();
        let parts: Vec<Vec<u64>> = (0u64..1 << p)
            .into_par_iter()
            .map(|prefix| {
                let mut hist = vec![0u64; self.len() + 1];
                let mut word = F2Vec::zeros(self.len());
                for b in 0..p {
                    if prefix >> b & 1 == 1 {
                        word.xor_assign(&rows[low + b]);
                    }
                }
                hist[word.weight()] += 1;
                for i in 1u64..1 << low {
                    word.xor_assign(&rows[i.trailing_zeros() as usize]);
                    hist[word.weight()] += 1;
                }
                hist
            })
            .collect();
        let mut hist = vec![0u64; self.len() + 1];
        for h in parts {
            for (a, b) in hist.iter_mut().zip(h) {
                *a += b;
            }
        }
        Ok(hist)
    }

    /// Every codeword, in Gray-code message order.
    pub fn codewords(&self) -> Result<Vec<F2Vec>> {
        self.check_enumerable(STORE_RANK_LIMIT)?;
        let rows = self.gen.row_vecs();
        let mut word = F2Vec::zeros(self.len());
        let mut out = Vec::with_capacity(1 << self.dim());
        out.push(word.clone());
        for i in 1u64..1 << self.dim() {
            word.xor_assign(&rows[i.trailing_zeros() as usize]);
            out.push(word.clone());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DualMethod {
    Enumeration,
    MacWilliams,
    /// The code is the whole space; its dual is `{0}`.
    Trivial,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeStats {
    pub dim: usize,
    pub len: usize,
    pub distance: usize,
    /// `len + 1` when the dual code is `{0}`.
    pub dual_distance: usize,
    /// `Δ = 1 − d/len` for `d = distance − 1`, as `p/q`.
    pub delta: String,
    pub dual_method: DualMethod,
    /// Distance recomputed as the least number of dependent parity-check
    /// columns, when the search fits its budget.
    pub distance_by_dependency: Option<usize>,
    /// Dual distance recomputed as the least number of dependent generator
    /// columns, when the search fits its budget.
    pub dual_distance_by_dependency: Option<usize>,
    pub weight_distribution: Vec<u64>,
}

impl CodeStats {
    /// `d(𝒞) > d` and `d⊥(𝒞) > t`.
    pub fn well_behaved(&self, d: usize, t: usize) -> bool {
        self.distance > d && self.dual_distance > t
    }

    pub fn csv_header() -> &'static str {
        "dim,len,distance,dual_distance,delta,dual_method"
    }

    pub fn csv_row(&self) -> String {
        let method = serde_json::to_value(self.dual_method).expect("enum serializes");
        format!(
            "{},{},{},{},{},{}",
            self.dim,
            self.len,
            self.distance,
            self.dual_distance,
            self.delta,
            method.as_str().unwrap_or_default()
        )
    }
}

/// Weight distribution of the dual of a code over GF(q) with distribution
/// `a` (MacWilliams identity with Krawtchouk polynomials). Exact.
pub fn macwilliams(a: &[u64], q: u64) -> Vec<BigInt> {
    let len = a.len() - 1;
    let size: BigInt = a.iter().map(|&x| BigInt::from(x)).sum();
    let q1 = BigInt::from(q - 1);
    (0..=len)
        .map(|j| {
            let mut acc = BigInt::zero();
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let mut k = BigInt::zero();
                for h in 0..=j.min(i) {
                    if j - h > len - i {
                        continue;
                    }
                    let term = binomial(BigInt::from(i), BigInt::from(h))
                        * binomial(BigInt::from(len - i), BigInt::from(j - h))
                        * num_traits::pow(q1.clone(), j - h);
                    if h % 2 == 0 {
                        k += term;
                    } else {
                        k -= term;
                    }
                }
                acc += k * BigInt::from(ai);
            }
            assert!((&acc % &size).is_zero(), "MacWilliams transform must be integral");
            acc / &size
        })
        .collect()
}

/// Least set of columns summing to zero, searched by increasing size up to
/// `max_size`. For size `k` the search walks `(k−1)`-subsets in
/// lexicographic order and looks up the partial sum among later columns.
pub fn min_dependent_columns(cols: &[F2Vec], max_size: usize) -> Result<Option<Vec<usize>>> {
    if let Some(i) = cols.iter().position(F2Vec::is_zero) {
        return Ok(Some(vec![i]));
    }
    let mut index: HashMap<&[u64], Vec<usize>> = HashMap::new();
    for (i, c) in cols.iter().enumerate() {
        index.entry(c.words()).or_default().push(i);
    }
    let mut visited = 0u64;
    for k in 2..=max_size.min(cols.len()) {
        let mut stack = Vec::with_capacity(k);
        if let Some(found) = dfs(cols, &index, k - 1, 0, &mut stack, None, &mut visited)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn dfs(
    cols: &[F2Vec],
    index: &HashMap<&[u64], Vec<usize>>,
    depth: usize,
    start: usize,
    stack: &mut Vec<usize>,
    acc: Option<&F2Vec>,
    visited: &mut u64,
) -> Result<Option<Vec<usize>>> {
    if stack.len() == depth {
        *visited += 1;
        if *visited > DEPENDENCY_BUDGET {
            return Err(Error::EnumerationTooLarge { what: "dependent-column search".into(), limit: DEPENDENCY_BUDGET.to_string() });
        }
        let sum = acc.expect("depth >= 1");
        let last = *stack.last().expect("depth >= 1");
        if let Some(js) = index.get(sum.words()) {
            if let Some(&j) = js.iter().find(|&&j| j > last) {
                let mut out = stack.clone();
                out.push(j);
                return Ok(Some(out));
            }
        }
        return Ok(None);
    }
    for i in start..cols.len() {
        let mut next = cols[i].clone();
        if let Some(a) = acc {
            next.xor_assign(a);
        }
        stack.push(i);
        let r = dfs(cols, index, depth, i + 1, stack, Some(&next), visited)?;
        stack.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

fn columns(m: &BitMatrix) -> Vec<F2Vec> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// Exact distance and dual distance.
///
/// The distance comes from the enumerated weight distribution. The dual
/// distance comes from enumerating the dual code when its dimension is at
/// most [`ENUM_RANK_LIMIT`], and from the MacWilliams transform otherwise.
pub fn code_stats(c: &LinearCodeF2) -> Result<CodeStats> {
    let hist = c.weight_distribution()?;
    let distance = (1..hist.len()).find(|&w| hist[w] > 0).expect("code has a nonzero word");
    let h = c.parity_check();
    let (dual_distance, dual_method) = if h.rows() == 0 {
        (c.len() + 1, DualMethod::Trivial)
    } else if h.rows() <= ENUM_RANK_LIMIT {
        let dual = LinearCodeF2::new(h.clone())?.weight_distribution()?;
        ((1..dual.len()).find(|&w| dual[w] > 0).expect("nonzero dual"), DualMethod::Enumeration)
    } else {
        let b = macwilliams(&hist, 2);
        ((1..b.len()).find(|&j| !b[j].is_zero()).expect("nonzero dual"), DualMethod::MacWilliams)
    };
    let distance_by_dependency = min_dependent_columns(&columns(&h), distance).ok().flatten().map(|s| s.len());
    let dual_distance_by_dependency = if dual_method == DualMethod::Trivial {
        None
    } else {
        min_dependent_columns(&columns(c.gen()), dual_distance).ok().flatten().map(|s| s.len())
    };
    let delta = Ratio::<BigInt>::one() - Ratio::new(BigInt::from(distance - 1), BigInt::from(c.len()));
    Ok(CodeStats {
        dim: c.dim(),
        len: c.len(),
        distance,
        dual_distance,
        delta: format_rational(&delta),
        dual_method,
        distance_by_dependency,
        dual_distance_by_dependency,
        weight_distribution: hist,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndependenceMethod {
    /// Pattern counts over every codeword for every coordinate set.
    PatternCount,
    /// Linear independence of every `t` generator columns.
    ColumnRank,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndependenceReport {
    pub t: usize,
    pub independent: bool,
    pub method: IndependenceMethod,
    /// A coordinate set on which the codeword is not uniform.
    pub witness: Option<Vec<usize>>,
    pub sets_checked: u64,
}

fn uniform_on(words: &[F2Vec], set: &[usize]) -> bool {
    let mut counts = vec![0u64; 1 << set.len()];
    for w in words {
        let idx = set.iter().enumerate().fold(0usize, |acc, (b, &i)| acc | usize::from(w.get(i)) << b);
        counts[idx] += 1;
    }
    counts.iter().all(|&c| c == counts[0])
}

/// Whether a uniform codeword is uniform on every set of at most `t`
/// coordinates. It suffices to check sets of size exactly `min(t, len)`.
///
/// Counts patterns directly when the work fits the budget; otherwise checks
/// that every `t` generator columns are linearly independent, which is the
/// same condition for linear codes.
pub fn check_t_wise_independence(c: &LinearCodeF2, t: usize) -> Result<IndependenceReport> {
    let t_eff = t.min(c.len());
    if t_eff == 0 {
        return Ok(IndependenceReport { t, independent: true, method: IndependenceMethod::PatternCount, witness: None, sets_checked: 0 });
    }
    let n_sets = binomial(c.len() as u128, t_eff as u128);
    let work = n_sets.saturating_mul(1u128 << c.dim().min(127));
    if c.dim() <= STORE_RANK_LIMIT && work <= PATTERN_BUDGET {
        let words = c.codewords()?;
        let mut checked = 0u64;
        for chunk in &(0..c.len()).combinations(t_eff).chunks(1 << 14) {
            let sets: Vec<Vec<usize>> = chunk.collect();
            let bad = sets.par_iter().position_first(|s| !uniform_on(&words, s));
            if let Some(p) = bad {
                checked += p as u64 + 1;
                return Ok(IndependenceReport {
                    t,
                    independent: false,
                    method: IndependenceMethod::PatternCount,
                    witness: Some(sets[p].clone()),
                    sets_checked: checked,
                });
            }
            checked += sets.len() as u64;
        }
        return Ok(IndependenceReport { t, independent: true, method: IndependenceMethod::PatternCount, witness: None, sets_checked: checked });
    }
    let dep = min_dependent_columns(&columns(c.gen()), t_eff)?;
    Ok(IndependenceReport {
        t,
        independent: dep.is_none(),
        method: IndependenceMethod::ColumnRank,
        witness: dep,
        sets_checked: 0,
    })
}
