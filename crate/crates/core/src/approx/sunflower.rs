//! Distributional sunflowers and classical sunflowers.

use itertools::Itertools;
use num_traits::One;
use serde::Serialize;

use super::dist::{DistSpec, ProbEstimate, ProbMode};
use super::family::{elements, SetFamily};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct SunflowerCheck {
    /// Indices into the family's sorted set list.
    pub members: Vec<usize>,
    pub core: Vec<usize>,
    pub epsilon: f64,
    /// `Pr[∃S: ⌈S∖K⌉(x) = 1]`.
    pub prob: ProbEstimate,
    pub accepted: bool,
}

pub(crate) fn core_of(sets: &[u64]) -> u64 {
    sets.iter().fold(u64::MAX, |acc, &s| acc & s)
}

/// Exact `1 − ε` for a float `ε`.
pub(crate) fn one_minus(eps: f64) -> Result<Rational> {
    let e = Rational::from_float(eps).ok_or_else(|| Error::InvalidArgument(format!("epsilon {eps} is not finite")))?;
    Ok(Rational::one() - e)
}

/// Tests the masks `sets` (at least two) against `d`. Accepts iff the
/// petal event has probability strictly above `1 − ε`; with sampling, iff
/// the lower confidence bound is.
pub(crate) fn test_masks(sets: &[u64], d: &DistSpec, eps: f64, mode: ProbMode) -> Result<(u64, ProbEstimate, bool)> {
    let core = core_of(sets);
    let petals: Vec<u64> = sets.iter().map(|&s| s & !core).collect();
    let prob = d.probability(|x| petals.iter().any(|&p| p & !x == 0), mode)?;
    let threshold = one_minus(eps)?;
    let accepted = match &prob.value {
        Some(v) => *v > threshold,
        None => prob.lower > crate::scalar::to_f64(&threshold),
    };
    Ok((core, prob, accepted))
}

/// Checks whether the chosen members of `fam` form a `(d, ε)`-sunflower.
/// Fewer than two members is rejected outright.
pub fn is_sunflower(fam: &SetFamily, members: &[usize], d: &DistSpec, eps: f64, mode: ProbMode) -> Result<SunflowerCheck> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&i| i >= fam.len()) {
        return Err(Error::InvalidArgument(format!("member {bad} outside the family")));
    }
    let sets: Vec<u64> = members.iter().map(|&i| fam.masks()[i]).collect();
    if sets.len() < 2 {
        let core = sets.first().copied().unwrap_or(0);
        return Ok(SunflowerCheck { members, core: elements(core), epsilon: eps, prob: ProbEstimate::zero(), accepted: false });
    }
    let (core, prob, accepted) = test_masks(&sets, d, eps, mode)?;
    Ok(SunflowerCheck { members, core: elements(core), epsilon: eps, prob, accepted })
}

fn is_classical(sets: &[u64]) -> bool {
    let core = core_of(sets);
    sets.iter().tuple_combinations().all(|(a, b)| a & b == core)
}

fn greedy(sets: &[u64], r: usize, budget: &mut u64) -> Option<(Vec<u64>, u64)> {
    if sets.len() < r || *budget == 0 {
        return None;
    }
    *budget -= 1;
    let mut union = 0u64;
    let mut disjoint = Vec::new();
    for &s in sets {
        if s & union == 0 {
            union |= s;
            disjoint.push(s);
            if disjoint.len() == r {
                return Some((disjoint, 0));
            }
        }
    }
    let mut counts: Vec<(usize, usize)> =
        elements(union).into_iter().map(|e| (sets.iter().filter(|&&s| s >> e & 1 == 1).count(), e)).collect();
    counts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (count, e) in counts {
        if count < r {
            break;
        }
        let bit = 1u64 << e;
        let link: Vec<u64> = sets.iter().filter(|&&s| s & bit != 0).map(|&s| s & !bit).collect();
        if let Some((petals, core)) = greedy(&link, r, budget) {
            return Some((petals.into_iter().map(|p| p | bit).collect(), core | bit));
        }
    }
    None
}

/// Largest family searched exhaustively after the greedy search fails.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// A sunflower with exactly `max(r, 2)` petals: greedy disjoint subfamily,
/// branching on popular elements, then exhaustive search for small
/// families. Returns member indices and the core.
pub fn find_classical_sunflower(fam: &SetFamily, r: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let masks = fam.masks();
    let petals = classical_masks(masks, r)?;
    debug_assert!(is_classical(&petals));
    let members = petals.iter().map(|p| masks.iter().position(|m| m == p).expect("member of family")).sorted().collect();
    Some((members, elements(core_of(&petals))))
}

pub(crate) fn classical_masks(masks: &[u64], r: usize) -> Option<Vec<u64>> {
    let r = r.max(2);
    let mut budget = 100_000;
    greedy(masks, r, &mut budget).map(|(p, _)| p).or_else(|| {
        if masks.len() > EXHAUSTIVE_LIMIT {
            return None;
        }
        masks.iter().copied().combinations(r).find(|c| is_classical(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand::Rng;

    #[test]
    fn sunflower_examples() {
        let fam = SetFamily::new(3, &[vec![0, 1], vec![0, 2]]).unwrap();
        let d = DistSpec::uniform_cube(3).unwrap();
        let yes = is_sunflower(&fam, &[0, 1], &d, 0.3, ProbMode::Exact).unwrap();
        assert!(yes.accepted);
        assert_eq!(yes.core, vec![0]);
        assert_eq!(yes.prob.exact.as_deref(), Some("3/4"));
        let no = is_sunflower(&fam, &[0, 1], &d, 0.25, ProbMode::Exact).unwrap();
        assert!(!no.accepted);
        assert!(!is_sunflower(&fam, &[0], &d, 0.9, ProbMode::Exact).unwrap().accepted);
    }

    #[test]
    fn classical_examples() {
        let fam = SetFamily::new(4, &[vec![0], vec![1], vec![2]]).unwrap();
        let (m, core) = find_classical_sunflower(&fam, 3).unwrap();
        assert_eq!((m, core), (vec![0, 1, 2], vec![]));
        let fam = SetFamily::new(5, &[vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let (m, core) = find_classical_sunflower(&fam, 3).unwrap();
        assert_eq!((m, core), (vec![0, 1, 2], vec![0]));
        let fam = SetFamily::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(find_classical_sunflower(&fam, 3).is_none());
    }

    #[test]
    fn classical_matches_brute_force() {
        let mut rng = stream_rng(12, 0);
        for _ in 0..300 {
            let n = rng.gen_range(3..7);
            let size = rng.gen_range(2..=EXHAUSTIVE_LIMIT);
            let fam = SetFamily::from_masks(n, (0..size).map(|_| rng.gen_range(1..1u64 << n)).collect::<Vec<_>>());
            for r in 2..=3 {
                let brute = fam.masks().iter().copied().combinations(r).any(|c| is_classical(&c));
                match find_classical_sunflower(&fam, r) {
                    Some((m, core)) => {
                        let sets: Vec<u64> = m.iter().map(|&i| fam.masks()[i]).collect();
                        assert_eq!(sets.len(), r);
                        assert!(is_classical(&sets));
                        assert_eq!(elements(core_of(&sets)), core);
                    }
                    None => assert!(!brute),
                }
            }
        }
    }
}
