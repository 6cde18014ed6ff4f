//! The graph polynomials `Q_{k,G}` (with `P_G = Q_{n,G}`) and their ΣΠΣ
//! formulas.
//!
//! Variable `x_{i,a}` of `Q_{k,G}` (block `i` in `0..k`, pattern `a` in
//! `{0,1}^{n/k}`) has id `i·2^{n/k} + a`, where bit `j` of `a` is the value of
//! vertex `i·(n/k) + j`. For `k = n` this gives `x_{u,b} = 2u + b`.

use serde::Serialize;

use super::Graph;
use crate::circuit::CircuitBuilder;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Var, VarPartition};
use crate::scalar::Ring;
use crate::{Circuit, Poly, Rational};

/// Largest `n` for which the `2^n` sum is enumerated.
pub const ENUMERATION_LIMIT: usize = 22;

fn block_len(n: usize, k: usize) -> Result<usize> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotADivisor(k, n));
    }
    Ok(n / k)
}

pub fn q_var(i: usize, pattern: u64, b: usize) -> Var {
    ((i << b) as u64 | pattern) as Var
}

pub fn p_var(u: usize, bit: bool) -> Var {
    (2 * u + usize::from(bit)) as Var
}

/// The `k` blocks `{x_{i,a} : a}` of the `Q_{k,·}` variables.
pub fn q_partition(n: usize, k: usize) -> Result<VarPartition> {
    let b = block_len(n, k)?;
    VarPartition::new((0..k).map(|i| (0..1u64 << b).map(|a| q_var(i, a, b)).collect()).collect())
}

fn edge_masks(g: &Graph) -> Vec<u64> {
    g.edges().map(|(u, v)| 1u64 << u | 1u64 << v).collect()
}

/// `Q_{k,G}` by direct summation over `a ∈ {0,1}^n`.
pub fn build_q(g: &Graph, k: usize) -> Result<Poly> {
    let n = g.n();
    let b = block_len(n, k)?;
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { what: format!("2^{n} assignments"), limit: format!("n <= {ENUMERATION_LIMIT}") });
    }
    let edges = edge_masks(g);
    let low = (1u64 << b) - 1;
    let mut terms = Vec::new();
    for a in 0u64..1 << n {
        let e = edges.iter().filter(|&&m| a & m == m).count() as i64;
        let coeff = (e - 1) * (e - 1);
        if coeff == 0 {
            continue;
        }
        let mono = Monomial::from_vars((0..k).map(|i| q_var(i, a >> (i * b) & low, b)));
        terms.push((mono, Rational::from_i64(coeff)));
    }
    Ok(Poly::from_terms(terms))
}

pub fn build_p(g: &Graph) -> Result<Poly> {
    build_q(g, g.n())
}

/// Applies `x_{i,a} ← ∏_j x_{i·(n/k)+j, a_j}`.
pub fn substitute_q_to_p(q: &Poly, n: usize, k: usize) -> Result<Poly> {
    let b = block_len(n, k)?;
    let universe = (k as u64) << b;
    let mut terms = Vec::with_capacity(q.num_terms());
    for (m, c) in q.terms() {
        let mut pairs = Vec::new();
        for &(v, e) in m.pairs() {
            if u64::from(v) >= universe {
                return Err(Error::VariableUniverseMismatch(format!("variable {v} is not an x_(i,a) for n={n}, k={k}")));
            }
            let (i, a) = ((v as usize) >> b, u64::from(v) & ((1 << b) - 1));
            pairs.extend((0..b).map(|j| (p_var(i * b + j, a >> j & 1 == 1), e)));
        }
        terms.push((Monomial::from_pairs(pairs), c.clone()));
    }
    Ok(Poly::from_terms(terms))
}

/// ΣΠΣ formula `Q₂ − 2Q₁ + Q₀`.
///
/// Every product term has the shape `∏ᵢ Σ_{a ⊇ U∩block i} x_{i,a}` for a
/// vertex set `U`: empty for `Q₀`, an edge for `Q_{1,uv}`, and the union of an
/// ordered pair of edges for `Q_{2,uv,rs}`. Linear forms and leaves are not
/// shared between products, so the result is a formula. The factor `−2` of the
/// `Q₁` terms is a constant child of each product gate.
pub fn build_sps_circuit(g: &Graph, k: usize) -> Result<Circuit> {
    let n = g.n();
    let b = block_len(n, k)?;
    if b >= 32 {
        return Err(Error::EnumerationTooLarge { what: format!("linear forms with 2^{b} terms"), limit: "n/k < 32".into() });
    }
    let edges = edge_masks(g);
    let low = (1u64 << b) - 1;
    let mut cb = CircuitBuilder::<Rational>::new();
    let product = |cb: &mut CircuitBuilder<Rational>, set: u64, coeff: Option<i64>| {
        let mut factors = Vec::with_capacity(k + 1);
        for i in 0..k {
            let need = set >> (i * b) & low;
            let leaves = (0..=low).filter(|a| a & need == need).map(|a| cb.input(q_var(i, a, b))).collect();
            factors.push(cb.add(leaves));
        }
        if let Some(c) = coeff {
            factors.push(cb.constant(Rational::from_i64(c)));
        }
        cb.mul(factors)
    };
    let mut top = Vec::new();
    for &e in &edges {
        for &f in &edges {
            top.push(product(&mut cb, e | f, None));
        }
    }
    for &e in &edges {
        top.push(product(&mut cb, e, Some(-2)));
    }
    top.push(product(&mut cb, 0, None));
    let out = cb.add(top);
    Ok(cb.finish(out))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpsReport {
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub gates: usize,
    pub wires: usize,
    pub depth: usize,
    /// `e(G)²·k·2^{n/k}`.
    pub scale: u64,
    /// `wires / scale`, absent for edgeless graphs.
    pub constant: Option<f64>,
}

pub fn sps_report(g: &Graph, k: usize, c: &Circuit) -> SpsReport {
    let size = c.size();
    let e = g.num_edges() as u64;
    let scale = e * e * k as u64 * (1u64 << (g.n() / k));
    SpsReport {
        n: g.n(),
        k,
        edges: g.num_edges(),
        gates: size.gates,
        wires: size.wires,
        depth: size.depth,
        scale,
        constant: (scale > 0).then(|| size.wires as f64 / scale as f64),
    }
}
