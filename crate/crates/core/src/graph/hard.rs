//! The target function `f_G`, induced matchings, and the matching-based hard
//! distribution on `f_G⁻¹(1)`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Graph, Rectangle};
use crate::error::{Error, Result};
use crate::rng::{shard_sizes, stream_rng, MC_SHARDS};
use crate::stats::{wilson, Estimate, DECISION_Z};

/// `f_G(a) = 1` iff `G[supp(a)]` does not have exactly one edge.
pub fn f_g_eval(g: &Graph, a: &[bool]) -> bool {
    assert_eq!(a.len(), g.n(), "input length must equal the vertex count");
    g.edges().filter(|&(u, v)| a[u] && a[v]).count() != 1
}

pub fn f_g_mask(g: &Graph, mask: u64) -> bool {
    g.induced_edges(mask) != 1
}

/// Different-from-1 disjointness: `|supp(b) ∩ supp(c)| ≠ 1`.
pub fn udisj_ne1(b: &[bool], c: &[bool]) -> bool {
    assert_eq!(b.len(), c.len());
    b.iter().zip(c).filter(|&(&x, &y)| x && y).count() != 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
    pub induced: bool,
}

impl Matching {
    pub fn empty() -> Self {
        Matching { edges: Vec::new(), induced: true }
    }
}

/// Checks that `edges` are edges of `g`, pairwise vertex-disjoint, and that
/// no edge of `g` joins endpoints of two different matching edges.
pub fn is_induced_matching(g: &Graph, edges: &[(usize, usize)]) -> bool {
    if !edges.iter().all(|&(u, v)| g.has_edge(u, v)) {
        return false;
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            for x in [a, b] {
                for y in [c, d] {
                    if x == y || g.has_edge(x, y) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Repeats `m` times: delete every vertex within distance 2 (in `G`) of the
/// matching so far, then add a uniform edge of what remains.
pub fn sample_matching<R: Rng>(g: &Graph, m: usize, rng: &mut R) -> Result<Matching> {
    if m == 0 {
        return Err(Error::InvalidArgument("matching size must be at least 1".into()));
    }
    let adj = g.neighbors();
    let all: Vec<(usize, usize)> = g.edges().collect();
    let mut removed = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(m);
    for i in 1..=m {
        if let Some(&(u, v)) = chosen.last() {
            for s in [u, v] {
                removed[s] = true;
                for &x in &adj[s] {
                    removed[x] = true;
                    for &y in &adj[x] {
                        removed[y] = true;
                    }
                }
            }
        }
        let live: Vec<(usize, usize)> = all.iter().copied().filter(|&(u, v)| !removed[u] && !removed[v]).collect();
        if live.is_empty() {
            return Err(Error::GraphExhausted(i));
        }
        chosen.push(live[rng.gen_range(0..live.len())]);
    }
    Ok(Matching { edges: chosen, induced: true })
}

/// Zero off the matching; each matching edge gets `(0,0)`, `(1,0)` or
/// `(0,1)` uniformly.
pub fn sample_hard_input<R: Rng>(g: &Graph, m: &Matching, rng: &mut R) -> Result<Vec<bool>> {
    if !is_induced_matching(g, &m.edges) {
        return Err(Error::NotInducedMatching(format!("{:?}", m.edges)));
    }
    let mut a = vec![false; g.n()];
    for &(u, v) in &m.edges {
        match rng.gen_range(0..3) {
            1 => a[u] = true,
            2 => a[v] = true,
            _ => {}
        }
    }
    Ok(a)
}

fn to_mask(a: &[bool]) -> u64 {
    a.iter().enumerate().fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
}

#[derive(Debug, Clone, Serialize)]
pub struct HardStats {
    pub samples: u64,
    pub matching_size: usize,
    pub seed: u64,
    /// Samples with `f_G(a) = 0`.
    pub f_zero: u64,
    /// Largest `e(G[supp(a)])` seen.
    pub max_induced_edges: usize,
    /// Per matching position, counts of `(0,0)`, `(1,0)`, `(0,1)`.
    pub pair_counts: Vec<[u64; 3]>,
    pub pair_freqs: Vec<[Estimate; 3]>,
}

/// Draws `samples` fresh (matching, input) pairs. Shard `s` uses stream `s`.
pub fn hard_distribution_stats(g: &Graph, m: usize, samples: u64, seed: u64) -> Result<HardStats> {
    assert!(g.n() <= 64);
    let shards = shard_sizes(samples as usize, MC_SHARDS);
    let parts: Vec<Result<(u64, usize, Vec<[u64; 3]>)>> = shards
        .par_iter()
        .enumerate()
        .map(|(s, &count)| {
            let mut rng = stream_rng(seed, s as u64);
            let (mut f_zero, mut max_e) = (0u64, 0usize);
            let mut counts = vec![[0u64; 3]; m];
            for _ in 0..count {
                let mat = sample_matching(g, m, &mut rng)?;
                let a = sample_hard_input(g, &mat, &mut rng)?;
                let e = g.induced_edges(to_mask(&a));
                max_e = max_e.max(e);
                f_zero += u64::from(!f_g_eval(g, &a));
                for (i, &(u, v)) in mat.edges.iter().enumerate() {
                    counts[i][usize::from(a[u]) + 2 * usize::from(a[v])] += 1;
                }
            }
            Ok((f_zero, max_e, counts))
        })
        .collect();
    let mut stats = HardStats {
        samples,
        matching_size: m,
        seed,
        f_zero: 0,
        max_induced_edges: 0,
        pair_counts: vec![[0; 3]; m],
        pair_freqs: Vec::new(),
    };
    for part in parts {
        let (fz, me, counts) = part?;
        stats.f_zero += fz;
        stats.max_induced_edges = stats.max_induced_edges.max(me);
        for (acc, c) in stats.pair_counts.iter_mut().zip(counts) {
            for j in 0..3 {
                acc[j] += c[j];
            }
        }
    }
    stats.pair_freqs = stats
        .pair_counts
        .iter()
        .map(|c| [0, 1, 2].map(|j| wilson(c[j], samples, DECISION_Z)))
        .collect();
    Ok(stats)
}

/// Monte Carlo estimate of `Pr_a[supp(a) ∈ R]` under the hard distribution.
pub fn rectangle_measure_mc(g: &Graph, rect: &Rectangle, m: usize, samples: u64, seed: u64) -> Result<Estimate> {
    let shards = shard_sizes(samples as usize, MC_SHARDS);
    let hits: Vec<Result<u64>> = shards
        .par_iter()
        .enumerate()
        .map(|(s, &count)| {
            let mut rng = stream_rng(seed, s as u64);
            let mut hits = 0;
            for _ in 0..count {
                let mat = sample_matching(g, m, &mut rng)?;
                let a = sample_hard_input(g, &mat, &mut rng)?;
                hits += u64::from(rect.contains(to_mask(&a)));
            }
            Ok(hits)
        })
        .collect();
    let total = hits.into_iter().sum::<Result<u64>>()?;
    Ok(wilson(total, samples, DECISION_Z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    fn bits(n: usize, set: &[usize]) -> Vec<bool> {
        (0..n).map(|i| set.contains(&i)).collect()
    }

    #[test]
    fn f_g_examples() {
        let c4 = Graph::cycle(4);
        assert!(f_g_eval(&c4, &[false; 4]));
        assert!(!f_g_eval(&c4, &bits(4, &[0, 1])));
        assert!(f_g_eval(&c4, &bits(4, &[0, 1, 2])));
    }

    #[test]
    fn udisj_examples() {
        assert!(udisj_ne1(&[false, false], &[false, false]));
        assert!(!udisj_ne1(&[true, false], &[true, false]));
        assert!(udisj_ne1(&[true, true], &[true, true]));
    }

    #[test]
    fn matching_examples() {
        let mut rng = stream_rng(1, 0);
        let one = sample_matching(&Graph::cycle(6), 1, &mut rng).unwrap();
        assert_eq!(one.edges.len(), 1);
        let dod = Graph::dodecahedron();
        for _ in 0..200 {
            let m = sample_matching(&dod, 2, &mut rng).unwrap();
            assert_eq!(m.edges.len(), 2);
            assert!(is_induced_matching(&dod, &m.edges));
        }
        assert_eq!(sample_matching(&Graph::complete(4), 2, &mut rng).unwrap_err(), Error::GraphExhausted(2));
    }

    #[test]
    fn hard_inputs_are_accepted() {
        let c6 = Graph::cycle(6);
        let mut rng = stream_rng(2, 0);
        assert_eq!(sample_hard_input(&c6, &Matching::empty(), &mut rng).unwrap(), vec![false; 6]);
        let m = Matching { edges: vec![(0, 1)], induced: true };
        for _ in 0..50 {
            let a = sample_hard_input(&c6, &m, &mut rng).unwrap();
            assert_eq!(c6.induced_edges(to_mask(&a)), 0);
            assert!(f_g_eval(&c6, &a));
        }
        let bad = Matching { edges: vec![(0, 1), (2, 3)], induced: true };
        assert!(matches!(sample_hard_input(&c6, &bad, &mut rng), Err(Error::NotInducedMatching(_))));
    }

    #[test]
    fn marginals_near_one_third() {
        let st = hard_distribution_stats(&Graph::dodecahedron(), 2, 30_000, 9).unwrap();
        assert_eq!(st.f_zero, 0);
        assert_eq!(st.max_induced_edges, 0);
        for c in &st.pair_counts {
            for &x in c {
                assert!((x as f64 / 30_000.0 - 1.0 / 3.0).abs() < 0.02);
            }
        }
    }
}
