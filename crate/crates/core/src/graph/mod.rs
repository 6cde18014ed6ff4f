//! Simple undirected graphs on `[n]`, a small corpus, and the spectral
//! expander check.
//!
//! Vertices are 0-based internally; the text format is 1-based.

mod hard;
mod polys;
mod rect;

pub use hard::{
    f_g_eval, f_g_mask, hard_distribution_stats, is_induced_matching, rectangle_measure_mc,
    sample_hard_input, sample_matching, udisj_ne1, HardStats, Matching,
};
pub use polys::{
    build_p, build_q, build_sps_circuit, p_var, q_partition, q_var, sps_report, substitute_q_to_p,
    SpsReport, ENUMERATION_LIMIT,
};
pub use rect::{
    assignment, verify_pair_decomposition, verify_rectangle_cover, CoverReport, MonotonePair,
    PairReport, Rectangle,
};

use std::collections::BTreeSet;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    /// Fails on self-loops, repeated edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) outside [0,{n})")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            if !g.edges.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors().iter().map(Vec::len).collect()
    }

    /// Common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let d = *deg.first()?;
        deg.iter().all(|&x| x == d).then_some(d)
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let pos: std::collections::HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self.edges().filter_map(|(u, v)| Some((*pos.get(&u)?, *pos.get(&v)?)));
        Graph::from_edges(vertices.len(), edges).expect("subgraph of a simple graph is simple")
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shifted = other.edges().map(|(u, v)| (u + self.n, v + self.n));
        Graph::from_edges(self.n + other.n, self.edges().chain(shifted)).expect("union of simple graphs")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph is simple")
    }

    /// Vertex `i` adjacent to `i ± s` for each offset `s`.
    pub fn circulant(n: usize, offsets: &[usize]) -> Self {
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for &s in offsets {
                let j = (i + s) % n;
                if j != i {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
        Graph { n, edges }
    }

    /// Generalized Petersen graph GP(p, s): outer cycle, spokes, inner star polygon.
    pub fn generalized_petersen(p: usize, s: usize) -> Self {
        let outer = (0..p).map(|i| (i, (i + 1) % p));
        let spokes = (0..p).map(|i| (i, p + i));
        let inner = (0..p).map(|i| (p + i, p + (i + s) % p));
        Self::from_edges(2 * p, outer.chain(spokes).chain(inner)).expect("GP(p,s) is simple for p > 2s")
    }

    pub fn petersen() -> Self {
        Self::generalized_petersen(5, 2)
    }

    /// The dodecahedron, GP(10, 2): cubic on 20 vertices with λ₂ = √5.
    pub fn dodecahedron() -> Self {
        Self::generalized_petersen(10, 2)
    }

    /// Uniform-ish random `d`-regular graph by the pairing model with
    /// rejection of loops and multi-edges.
    pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Self> {
        if !(n * d).is_multiple_of(2) || d >= n {
            return Err(Error::InvalidArgument(format!("no {d}-regular graph on {n} vertices")));
        }
        for _ in 0..10_000 {
            let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
            points.shuffle(rng);
            let pairs: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
            if let Ok(g) = Graph::from_edges(n, pairs) {
                return Ok(g);
            }
        }
        Err(Error::InvalidArgument(format!("pairing model failed for n={n}, d={d}")))
    }

    /// Number of edges with both endpoints in the vertex set `mask`.
    pub fn induced_edges(&self, mask: u64) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count()
    }

    /// Text form: `graph <n>` then one 1-based `u v` per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["graph", n] => n.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex count `{n}`")))?,
            _ => return Err(Error::Parse(format!("bad header `{header}`"))),
        };
        let mut edges = Vec::new();
        for line in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad edge line `{line}`"))))
                .collect::<Result<_>>()?;
            match nums[..] {
                [u, v] if u >= 1 && v >= 1 => edges.push((u - 1, v - 1)),
                _ => return Err(Error::Parse(format!("bad edge line `{line}`"))),
            }
        }
        Graph::from_edges(n, edges).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Named graphs used by the test corpus and presets.
pub fn corpus_graph(name: &str) -> Option<Graph> {
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    let num = || arg.parse::<usize>().ok();
    Some(match kind {
        "petersen" => Graph::petersen(),
        "dodecahedron" => Graph::dodecahedron(),
        "cycle" | "c" => Graph::cycle(num().filter(|&n| n >= 3)?),
        "complete" | "k" => Graph::complete(num()?),
        "empty" => Graph::empty(num()?),
        "mobius" => {
            let n = num().filter(|&n| n >= 4 && n % 2 == 0)?;
            Graph::circulant(n, &[1, n / 2])
        }
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenMode {
    /// Second-largest eigenvalue with sign.
    Signed,
    /// Largest absolute value among all but the top eigenvalue.
    Abs,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpanderCert {
    pub d: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub mode: EigenMode,
    pub bound: f64,
    pub residual: f64,
    pub passes: bool,
}

pub const EIGEN_LIMIT: usize = 2000;

/// Regularity plus the spectral condition `λ₂ ≤ d^0.75`.
pub fn check_expander(g: &Graph, tol: f64, mode: EigenMode) -> Result<ExpanderCert> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidArgument("empty graph".into()));
    }
    if n > EIGEN_LIMIT {
        return Err(Error::EnumerationTooLarge { what: format!("dense eigensolve on {n} vertices"), limit: EIGEN_LIMIT.to_string() });
    }
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let lambda1 = eig.eigenvalues[order[0]];
    let (idx2, lambda2) = match (n, mode) {
        (1, _) => (order[0], f64::NEG_INFINITY),
        (_, EigenMode::Signed) => (order[1], eig.eigenvalues[order[1]]),
        (_, EigenMode::Abs) => {
            let &i = order[1..]
                .iter()
                .max_by(|&&i, &&j| eig.eigenvalues[i].abs().total_cmp(&eig.eigenvalues[j].abs()))
                .expect("n >= 2");
            (i, eig.eigenvalues[i].abs())
        }
    };
    let mut residual = 0.0f64;
    for &i in &[order[0], idx2] {
        let v = eig.eigenvectors.column(i);
        residual = residual.max((&a * v - v * eig.eigenvalues[i]).norm());
    }
    let bound = (d as f64).powf(0.75);
    Ok(ExpanderCert { d, lambda1, lambda2, mode, bound, residual, passes: residual <= tol && lambda2 <= bound + tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expander_examples() {
        let k6 = check_expander(&Graph::complete(6), 1e-9, EigenMode::Signed).unwrap();
        assert_eq!(k6.d, 5);
        assert!((k6.lambda2 + 1.0).abs() < 1e-9 && k6.passes);

        let c4 = check_expander(&Graph::cycle(4), 1e-9, EigenMode::Signed).unwrap();
        assert!(c4.lambda2.abs() < 1e-9 && c4.passes);

        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let t = check_expander(&two_triangles, 1e-9, EigenMode::Signed).unwrap();
        assert!((t.lambda2 - 2.0).abs() < 1e-9 && !t.passes);

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(check_expander(&path, 1e-9, EigenMode::Signed).unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn corpus_spectra() {
        let dod = check_expander(&Graph::dodecahedron(), 1e-9, EigenMode::Signed).unwrap();
        assert_eq!((dod.d, Graph::dodecahedron().n()), (3, 20));
        assert!((dod.lambda2 - 5f64.sqrt()).abs() < 1e-9 && dod.passes);
        let pet = check_expander(&Graph::petersen(), 1e-9, EigenMode::Signed).unwrap();
        assert!((pet.lambda2 - 1.0).abs() < 1e-9);
        // Petersen's most negative eigenvalue is -2
        let pet_abs = check_expander(&Graph::petersen(), 1e-9, EigenMode::Abs).unwrap();
        assert!((pet_abs.lambda2 - 2.0).abs() < 1e-9);
        let mob = check_expander(&corpus_graph("mobius:8").unwrap(), 1e-9, EigenMode::Signed).unwrap();
        assert!((mob.lambda2 - 1.0).abs() < 1e-9);
        let mut rng = crate::rng::stream_rng(5, 0);
        let r = Graph::random_regular(16, 3, &mut rng).unwrap();
        assert_eq!(r.regular_degree(), Some(3));
    }

    #[test]
    fn text_format() {
        let g = Graph::cycle(4);
        assert_eq!(g.to_text(), "graph 4\n1 2\n1 4\n2 3\n3 4\n");
        assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
        assert!(Graph::from_text("graph 3\n1 1\n").is_err());
        assert!(Graph::from_text("graph 3\n1 2\n2 1\n").is_err());
        assert!(Graph::from_text("graph 3\n1 4\n").is_err());
        assert!(Graph::from_text("grph 3\n").is_err());
    }
}
