//! Gate-by-gate approximation of a monotone Boolean circuit by small DNFs,
//! with measured error at every gate.

use num_traits::Zero;
use serde::Serialize;

use super::criterion::{lb_criterion, CriterionParams, LbReport};
use super::dist::{DistSpec, ProbEstimate, ProbMode};
use super::family::{SetFamily, SetFamilyJson};
use super::pluck::{pluck, FinderStrategy, PluckOptions};
use crate::boolcircuit::{BoolCircuit, BoolGate};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, ratio};
use crate::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct ApproxOptions {
    pub w: usize,
    pub r: usize,
    pub eps: f64,
    pub mode: ProbMode,
    pub strategy: FinderStrategy,
    /// Spreadness of `D₁`, for the per-gate budget `(2r/q)^w`.
    pub q: Option<f64>,
    /// Independence of `D₀`, for the bound block.
    pub t: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PluckSummary {
    pub core: Vec<usize>,
    pub eps_est: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateReport {
    pub gate_id: usize,
    pub kind: &'static str,
    pub terms: usize,
    pub width: usize,
    /// `Pr_{D₀}[approx = 1, combined = 0]`.
    #[serde(rename = "E0")]
    pub e0: ProbEstimate,
    /// `Pr_{D₁}[approx = 0, combined = 1]`.
    #[serde(rename = "E1")]
    pub e1: ProbEstimate,
    pub plucks: Vec<PluckSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxReport {
    pub gates: Vec<GateReport>,
    pub total_e0: f64,
    pub total_e1: f64,
    pub total_e0_exact: Option<String>,
    pub total_e1_exact: Option<String>,
    /// `Pr_{D₀}[F = 1, C = 0]`.
    pub false_positive: ProbEstimate,
    /// `Pr_{D₁}[F = 0, C = 1]`.
    pub false_negative: ProbEstimate,
    /// Whether the final errors are within the summed gate errors (exact mode).
    pub union_bound_holds: Option<bool>,
    /// `Pr_{(D₀+D₁)/2}[F = C]`.
    pub agreement: f64,
    /// `gates·(2r/q)^w` when `q` is given.
    pub e1_budget: Option<f64>,
    pub final_family: SetFamilyJson,
    pub criterion: Option<LbReport>,
}

fn sum_exact(ps: &[&ProbEstimate]) -> Option<Rational> {
    ps.iter().map(|p| p.value.clone()).sum()
}

pub fn approximate_circuit(c: &BoolCircuit, d0: &DistSpec, d1: &DistSpec, opts: &ApproxOptions) -> Result<(SetFamily, ApproxReport)> {
    let n = d0.n();
    if d1.n() != n {
        return Err(Error::InvalidArgument("D0 and D1 live on different cubes".into()));
    }
    if c.num_vars() > n || n > 64 {
        return Err(Error::InvalidArgument(format!("circuit uses {} variables, distributions cover {n}", c.num_vars())));
    }
    let popts = PluckOptions { eps: opts.eps, r: opts.r, w: opts.w, mode: opts.mode, strategy: opts.strategy };
    let mut fams: Vec<SetFamily> = Vec::with_capacity(c.gates().len());
    let mut gates = Vec::new();
    for (id, g) in c.gates().iter().enumerate() {
        let (kind, combined) = match *g {
            BoolGate::Input(v) => ("input", SetFamily::from_masks(n, [1u64 << v])),
            BoolGate::Const(true) => ("const", SetFamily::from_masks(n, [0u64])),
            BoolGate::Const(false) => ("const", SetFamily::empty(n)),
            BoolGate::Or(a, b) => ("or", fams[a].union(&fams[b])),
            BoolGate::And(a, b) => ("and", fams[a].join(&fams[b])),
        };
        let (approx, plucks) = match g {
            BoolGate::Or(..) | BoolGate::And(..) => {
                let res = pluck(&combined, d0, &popts)?;
                let mut fam = res.family;
                if kind == "and" {
                    fam = fam.truncate_width(opts.w);
                }
                let plucks = res
                    .ledger
                    .iter()
                    .map(|e| PluckSummary { core: e.core.clone(), eps_est: e.eps_est.mean })
                    .collect();
                (fam, plucks)
            }
            _ => (combined.clone(), Vec::new()),
        };
        let (e0, e1) = if approx != combined {
            (
                d0.probability(|x| approx.eval(x) && !combined.eval(x), opts.mode)?,
                d1.probability(|x| !approx.eval(x) && combined.eval(x), opts.mode)?,
            )
        } else {
            (ProbEstimate::zero(), ProbEstimate::zero())
        };
        gates.push(GateReport { gate_id: id, kind, terms: approx.len(), width: approx.width(), e0, e1, plucks });
        fams.push(approx);
    }
    let fin = fams[c.output()].clone();
    let false_positive = d0.probability(|x| fin.eval(x) && !c.eval_mask(x), opts.mode)?;
    let false_negative = d1.probability(|x| !fin.eval(x) && c.eval_mask(x), opts.mode)?;
    let e0s: Vec<&ProbEstimate> = gates.iter().map(|g| &g.e0).collect();
    let e1s: Vec<&ProbEstimate> = gates.iter().map(|g| &g.e1).collect();
    let (t0, t1) = (sum_exact(&e0s), sum_exact(&e1s));
    let union_bound_holds = match (&t0, &t1, &false_positive.value, &false_negative.value) {
        (Some(a), Some(b), Some(fp), Some(fnv)) => Some(fp <= a && fnv <= b),
        _ => None,
    };
    let agree0 = d0.probability(|x| fin.eval(x) == c.eval_mask(x), opts.mode)?;
    let agree1 = d1.probability(|x| fin.eval(x) == c.eval_mask(x), opts.mode)?;
    let internal = c.size();
    let e1_budget = opts.q.map(|q| internal as f64 * (2.0 * opts.r as f64 / q).powi(opts.w as i32));
    let criterion = match (opts.q, opts.t) {
        (Some(q), Some(t)) => {
            let c0 = d0.probability(|x| !c.eval_mask(x), opts.mode)?;
            let c1 = d1.probability(|x| c.eval_mask(x), opts.mode)?;
            let alpha = match (c0.value, c1.value) {
                (Some(a), Some(b)) => a.min(b),
                _ => Rational::from_float(c0.mean.min(c1.mean)).unwrap_or_else(Rational::zero),
            };
            Some(lb_criterion(&CriterionParams {
                alpha,
                q: Rational::from_float(q).ok_or_else(|| Error::InvalidArgument("q must be finite".into()))?,
                t,
                w: opts.w,
                r_w: ratio(opts.r as i64, 1),
                c: ratio(1, 20),
                n,
            }))
        }
        _ => None,
    };
    let report = ApproxReport {
        total_e0: e0s.iter().map(|p| p.mean).sum(),
        total_e1: e1s.iter().map(|p| p.mean).sum(),
        total_e0_exact: t0.as_ref().map(format_rational),
        total_e1_exact: t1.as_ref().map(format_rational),
        gates,
        false_positive,
        false_negative,
        union_bound_holds,
        agreement: (agree0.mean + agree1.mean) / 2.0,
        e1_budget,
        final_family: fin.to_json(),
        criterion,
    };
    Ok((fin, report))
}
