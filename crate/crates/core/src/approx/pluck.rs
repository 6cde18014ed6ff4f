//! The plucking procedure: while some size slice of the family is too large,
//! replace a distributional sunflower by its core.

use serde::Serialize;

use super::dist::{DistSpec, ProbEstimate, ProbMode};
use super::family::{elements, SetFamily};
use super::sunflower::{classical_masks, core_of, test_masks};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FinderStrategy {
    /// Cores from pairwise intersections first, classical sunflowers second.
    Tiered,
    ClassicalOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct PluckOptions {
    pub eps: f64,
    pub r: usize,
    pub w: usize,
    pub mode: ProbMode,
    pub strategy: FinderStrategy,
}

#[derive(Debug, Clone, Serialize)]
pub struct PluckEntry {
    pub level: usize,
    pub members: Vec<Vec<usize>>,
    pub core: Vec<usize>,
    /// Probability of the petal event that certified the sunflower.
    pub petal_prob: ProbEstimate,
    /// `Pr_{D₀}[⌈K⌉ = 1 and the family before the pluck is 0]`.
    pub eps_est: ProbEstimate,
}

#[derive(Debug, Clone, Serialize)]
pub struct PluckResult {
    #[serde(skip)]
    pub family: SetFamily,
    pub ledger: Vec<PluckEntry>,
    /// `Pr_{D₀}[output = 1 and input = 0]`.
    pub total_error: ProbEstimate,
}

fn too_large(fam: &SetFamily, r: usize, w: usize) -> Option<usize> {
    (1..=2 * w).find(|&l| {
        let bound = (r as u128).checked_pow(l as u32).unwrap_or(u128::MAX);
        fam.slice(l).len() as u128 > bound
    })
}

fn find_sunflower(slice: &[u64], d0: &DistSpec, opts: &PluckOptions) -> Result<Option<(Vec<u64>, ProbEstimate)>> {
    if opts.strategy == FinderStrategy::Tiered {
        let mut cores: Vec<u64> = Vec::new();
        for (i, &a) in slice.iter().enumerate() {
            for &b in &slice[i + 1..] {
                cores.push(a & b);
            }
        }
        cores.sort_by(|x, y| y.count_ones().cmp(&x.count_ones()).then(x.cmp(y)));
        cores.dedup();
        let mut tried: Vec<Vec<u64>> = Vec::new();
        for k in cores {
            let members: Vec<u64> = slice.iter().copied().filter(|&s| s & k == k).collect();
            if members.len() < 2 || tried.contains(&members) {
                continue;
            }
            let (_, prob, ok) = test_masks(&members, d0, opts.eps, opts.mode)?;
            if ok {
                return Ok(Some((members, prob)));
            }
            tried.push(members);
        }
    }
    let mut petals = opts.r.max(2);
    while petals <= slice.len() {
        let Some(members) = classical_masks(slice, petals) else { break };
        let (_, prob, ok) = test_masks(&members, d0, opts.eps, opts.mode)?;
        if ok {
            return Ok(Some((members, prob)));
        }
        petals += 1;
    }
    Ok(None)
}

/// Plucks until the family is `r`-small. Requires width at most `2w`. The
/// output DNF is pointwise at least the input.
pub fn pluck(fam: &SetFamily, d0: &DistSpec, opts: &PluckOptions) -> Result<PluckResult> {
    if fam.width() > 2 * opts.w {
        return Err(Error::PreconditionViolated(format!("family width {} exceeds 2w = {}", fam.width(), 2 * opts.w)));
    }
    if fam.n() > d0.n() {
        return Err(Error::InvalidArgument(format!("family over {} elements, distribution over {}", fam.n(), d0.n())));
    }
    let mut cur = fam.clone();
    let mut ledger = Vec::new();
    while let Some(level) = too_large(&cur, opts.r, opts.w) {
        let slice = cur.slice(level);
        let (members, petal_prob) = find_sunflower(&slice, d0, opts)?.ok_or(Error::SunflowerNotFound(level))?;
        let core = core_of(&members);
        let before = cur.clone();
        let eps_est = d0.probability(|x| core & !x == 0 && !before.eval(x), opts.mode)?;
        let kept = cur.masks().iter().copied().filter(|&s| s & core != core);
        cur = SetFamily::from_masks(cur.n(), kept.chain([core]).collect::<Vec<_>>());
        ledger.push(PluckEntry {
            level,
            members: members.iter().map(|&m| elements(m)).collect(),
            core: elements(core),
            petal_prob,
            eps_est,
        });
    }
    assert!(cur.is_r_small(opts.r) && cur.width() <= 2 * opts.w);
    let total_error = if ledger.is_empty() {
        ProbEstimate::zero()
    } else {
        d0.probability(|x| cur.eval(x) && !fam.eval(x), opts.mode)?
    };
    Ok(PluckResult { family: cur, ledger, total_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(eps: f64, r: usize, w: usize) -> PluckOptions {
        PluckOptions { eps, r, w, mode: ProbMode::Exact, strategy: FinderStrategy::Tiered }
    }

    #[test]
    fn small_family_unchanged() {
        let fam = SetFamily::new(3, &[vec![0, 1]]).unwrap();
        let d = DistSpec::uniform_cube(3).unwrap();
        let r = pluck(&fam, &d, &opts(0.1, 2, 1)).unwrap();
        assert_eq!(r.family, fam);
        assert!(r.ledger.is_empty());
    }

    #[test]
    fn singletons_pluck_to_constant_one() {
        let fam = SetFamily::new(3, &[vec![0], vec![1], vec![2]]).unwrap();
        let d = DistSpec::uniform_cube(3).unwrap();
        let r = pluck(&fam, &d, &opts(0.2, 1, 1)).unwrap();
        assert_eq!(r.family.sets(), vec![Vec::<usize>::new()]);
        assert!((0..8).all(|x| r.family.eval(x)));
        assert_eq!(r.ledger[0].core, Vec::<usize>::new());
        assert_eq!(r.total_error.exact.as_deref(), Some("1/8"));
    }

    #[test]
    fn failure_is_reported() {
        let fam = SetFamily::new(3, &[vec![0], vec![1], vec![2]]).unwrap();
        let d = DistSpec::point_mass(3, 0).unwrap();
        assert_eq!(pluck(&fam, &d, &opts(0.2, 1, 1)).unwrap_err(), Error::SunflowerNotFound(1));
        let wide = SetFamily::new(3, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(pluck(&wide, &d, &opts(0.2, 1, 1)), Err(Error::PreconditionViolated(_))));
    }
}
