//! Input distributions over `{0,1}^n`: explicit weighted supports, which
//! give exact probabilities, and seeded samplers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, F2Vec};
use crate::rank::RealMatrix01;
use crate::rng::{shard_sizes, stream_rng, LabRng, MC_SHARDS};
use crate::scalar::format_rational;
use crate::stats::{wilson, DECISION_Z};
use crate::Rational;

/// Largest explicit support built by the enumerating constructors.
pub const SUPPORT_LIMIT: u64 = 1 << 22;

pub type Sampler = Arc<dyn Fn(&mut LabRng) -> u64 + Send + Sync>;

#[derive(Clone)]
pub enum DistKind {
    /// Points with positive integer weights; probabilities are weight / total.
    Explicit(Vec<(u64, u128)>),
    Sampler { name: String, draw: Sampler },
}

#[derive(Clone)]
pub struct DistSpec {
    n: usize,
    kind: DistKind,
}

impl fmt::Debug for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DistKind::Explicit(p) => write!(f, "DistSpec(n={}, explicit, {} points)", self.n, p.len()),
            DistKind::Sampler { name, .. } => write!(f, "DistSpec(n={}, sampler {name})", self.n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ProbMode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbEstimate {
    /// Exact value as `p/q` when computed by enumeration.
    pub exact: Option<String>,
    #[serde(skip)]
    pub value: Option<Rational>,
    pub mean: f64,
    pub lower: f64,
    pub upper: f64,
    pub trials: u64,
}

impl ProbEstimate {
    fn exact(r: Rational) -> Self {
        let f = crate::scalar::to_f64(&r);
        ProbEstimate { exact: Some(format_rational(&r)), value: Some(r), mean: f, lower: f, upper: f, trials: 0 }
    }

    pub fn zero() -> Self {
        Self::exact(Rational::from_integer(BigInt::from(0)))
    }
}

fn total_weight(points: &[(u64, u128)]) -> u128 {
    points.iter().map(|p| p.1).sum()
}

impl DistSpec {
    /// Merges repeated points; drops zero weights.
    pub fn explicit(n: usize, points: impl IntoIterator<Item = (u64, u128)>) -> Result<Self> {
        let mut merged: BTreeMap<u64, u128> = BTreeMap::new();
        for (x, w) in points {
            if n < 64 && x >> n != 0 {
                return Err(Error::InvalidArgument(format!("point {x:#b} outside {{0,1}}^{n}")));
            }
            if w > 0 {
                *merged.entry(x).or_default() += w;
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidArgument("distribution has no mass".into()));
        }
        Ok(DistSpec { n, kind: DistKind::Explicit(merged.into_iter().collect()) })
    }

    pub fn sampler(n: usize, name: &str, draw: Sampler) -> Self {
        DistSpec { n, kind: DistKind::Sampler { name: name.to_string(), draw } }
    }

    pub fn uniform_cube(n: usize) -> Result<Self> {
        if 1u64.checked_shl(n as u32).is_none_or(|s| s > SUPPORT_LIMIT) {
            return Err(Error::EnumerationTooLarge { what: format!("{{0,1}}^{n}"), limit: SUPPORT_LIMIT.to_string() });
        }
        Self::explicit(n, (0..1u64 << n).map(|x| (x, 1)))
    }

    /// Uniform over vectors of weight exactly `w`.
    pub fn uniform_weight(n: usize, w: usize) -> Result<Self> {
        if w > n {
            return Err(Error::WeightExceedsLength { weight: w, len: n });
        }
        let count = (0..w).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
        if count > u128::from(SUPPORT_LIMIT) {
            return Err(Error::EnumerationTooLarge { what: format!("C({n},{w}) points"), limit: SUPPORT_LIMIT.to_string() });
        }
        Self::explicit(n, (0..n).combinations(w).map(|c| (super::family::mask_of(&c), 1)))
    }

    pub fn point_mass(n: usize, x: u64) -> Result<Self> {
        Self::explicit(n, [(x, 1)])
    }

    /// `a = [Mᵀu = 0]` coordinatewise, `u` uniform in GF(2)^rows.
    pub fn d0_f2(m: &BitMatrix) -> Result<Self> {
        if m.cols() > 64 || m.rows() > 22 {
            return Err(Error::EnumerationTooLarge { what: format!("2^{} witnesses", m.rows()), limit: SUPPORT_LIMIT.to_string() });
        }
        Self::explicit(
            m.cols(),
            (0..1u64 << m.rows()).map(|u| {
                let c = m.left_mul(&F2Vec::from_mask(m.rows(), u));
                ((0..m.cols()).filter(|&j| !c.get(j)).fold(0u64, |acc, j| acc | 1 << j), 1)
            }),
        )
    }

    /// `a_j = [Σ_{i∈supp M[j]} u_i = 0]`, `u` uniform in `{−1,0,1}^n`.
    pub fn d0_real(m: &RealMatrix01) -> Result<Self> {
        if m.m() > 64 || m.n() > 13 {
            return Err(Error::EnumerationTooLarge { what: format!("3^{} witnesses", m.n()), limit: SUPPORT_LIMIT.to_string() });
        }
        let mut u = vec![0i8; m.n()];
        let mut points = Vec::new();
        for idx in 0..3u64.pow(m.n() as u32) {
            let mut rest = idx;
            for ui in u.iter_mut() {
                *ui = (rest % 3) as i8 - 1;
                rest /= 3;
            }
            let a = crate::rank::d0_real_from_u(m, &u);
            points.push(((0..m.m()).filter(|&j| a[j]).fold(0u64, |acc, j| acc | 1 << j), 1));
        }
        Self::explicit(m.m(), points)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &DistKind {
        &self.kind
    }

    pub fn exact_capable(&self) -> bool {
        matches!(self.kind, DistKind::Explicit(_))
    }

    pub fn points(&self) -> Option<&[(u64, u128)]> {
        match &self.kind {
            DistKind::Explicit(p) => Some(p),
            DistKind::Sampler { .. } => None,
        }
    }

    /// `(D + E)/2` for explicit distributions on the same cube.
    pub fn mix_half(&self, other: &DistSpec) -> Result<Self> {
        let (Some(a), Some(b)) = (self.points(), other.points()) else {
            return Err(Error::InvalidArgument("mixing needs explicit distributions".into()));
        };
        if self.n != other.n {
            return Err(Error::InvalidArgument("mixing distributions on different cubes".into()));
        }
        let (ta, tb) = (total_weight(a), total_weight(b));
        Self::explicit(self.n, a.iter().map(|&(x, w)| (x, w * tb)).chain(b.iter().map(|&(x, w)| (x, w * ta))))
    }

    /// `D` conditioned on `event`; fails when the event has no mass.
    pub fn condition(&self, event: impl Fn(u64) -> bool + Send + Sync + 'static) -> Result<Self> {
        match &self.kind {
            DistKind::Explicit(p) => Self::explicit(self.n, p.iter().copied().filter(|&(x, _)| event(x))),
            DistKind::Sampler { name, draw } => {
                let draw = draw.clone();
                let event = Arc::new(event);
                let name = format!("{name} | event");
                // rejection sampling; gives up after a fixed number of draws
                let f: Sampler = Arc::new(move |rng: &mut LabRng| {
                    for _ in 0..1_000_000 {
                        let x = draw(rng);
                        if event(x) {
                            return x;
                        }
                    }
                    panic!("conditioning event has negligible mass");
                });
                Ok(Self::sampler(self.n, &name, f))
            }
        }
    }

    pub fn draw(&self, rng: &mut LabRng) -> u64 {
        use rand::Rng;
        match &self.kind {
            DistKind::Explicit(p) => {
                let mut r = rng.gen_range(0..total_weight(p));
                for &(x, w) in p {
                    if r < w {
                        return x;
                    }
                    r -= w;
                }
                unreachable!()
            }
            DistKind::Sampler { draw, .. } => draw(rng),
        }
    }

    /// `Pr[event]`, exactly or by sharded sampling.
    pub fn probability(&self, event: impl Fn(u64) -> bool + Sync, mode: ProbMode) -> Result<ProbEstimate> {
        match (mode, &self.kind) {
            (ProbMode::Exact, DistKind::Explicit(p)) => {
                let hit: u128 = if p.len() > 4096 {
                    p.par_chunks(1024).map(|c| c.iter().filter(|(x, _)| event(*x)).map(|p| p.1).sum::<u128>()).sum()
                } else {
                    p.iter().filter(|(x, _)| event(*x)).map(|p| p.1).sum()
                };
                Ok(ProbEstimate::exact(Rational::new(BigInt::from(hit), BigInt::from(total_weight(p)))))
            }
            (ProbMode::Exact, DistKind::Sampler { name, .. }) => {
                Err(Error::InvalidArgument(format!("exact probabilities need an explicit distribution, not `{name}`")))
            }
            (ProbMode::MonteCarlo { trials, seed }, _) => {
                let hits: u64 = shard_sizes(trials as usize, MC_SHARDS)
                    .par_iter()
                    .enumerate()
                    .map(|(s, &count)| {
                        let mut rng = stream_rng(seed, s as u64);
                        (0..count).filter(|_| event(self.draw(&mut rng))).count() as u64
                    })
                    .sum();
                let e = wilson(hits, trials, DECISION_Z);
                Ok(ProbEstimate { exact: None, value: None, mean: e.mean, lower: e.lower, upper: e.upper, trials })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn exact_probabilities() {
        let d = DistSpec::uniform_cube(3).unwrap();
        let p = d.probability(|x| x & 0b110 != 0, ProbMode::Exact).unwrap();
        assert_eq!(p.value, Some(ratio(3, 4)));
        let w = DistSpec::uniform_weight(10, 4).unwrap();
        let p = w.probability(|x| x & 0b11 == 0b11, ProbMode::Exact).unwrap();
        assert_eq!(p.exact.as_deref(), Some("2/15"));
    }

    #[test]
    fn mixing_and_conditioning() {
        let a = DistSpec::point_mass(2, 0).unwrap();
        let b = DistSpec::uniform_cube(2).unwrap();
        let m = a.mix_half(&b).unwrap();
        assert_eq!(m.probability(|x| x == 0, ProbMode::Exact).unwrap().value, Some(ratio(5, 8)));
        let c = b.condition(|x| x != 0).unwrap();
        assert_eq!(c.probability(|x| x == 3, ProbMode::Exact).unwrap().value, Some(ratio(1, 3)));
        assert!(a.condition(|x| x != 0).is_err());
    }

    #[test]
    fn d0_f2_matches_definition() {
        // one row of ones over two columns: u = 0 gives 11, u = 1 gives 00
        let m = BitMatrix::from_bools(&[vec![true, true]]);
        let d = DistSpec::d0_f2(&m).unwrap();
        assert_eq!(d.points().unwrap(), &[(0, 1), (3, 1)]);
    }

    #[test]
    fn monte_carlo_brackets_exact() {
        let d = DistSpec::uniform_cube(4).unwrap();
        let e = d.probability(|x| x.count_ones() >= 2, ProbMode::MonteCarlo { trials: 20_000, seed: 9 }).unwrap();
        assert!(e.lower <= 11.0 / 16.0 && 11.0 / 16.0 <= e.upper);
    }
}
