//! One handler per subcommand. Each returns a report; only malformed input
//! is an error.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use monoforge_core::approx::{
    approximate_circuit, find_classical_sunflower, is_sunflower, pluck, ApproxOptions, FinderStrategy, PluckOptions,
    ProbMode, SetFamily,
};
use monoforge_core::circuit::DEFAULT_TERM_CAP;
use monoforge_core::codes::{
    binary_expand_code, check_t_wise_independence, code_stats, rs_stats, code_size_bound, CodeJson, CodeStats,
    LinearCodeF2, RSCode,
};
use monoforge_core::error::Error;
use monoforge_core::gf2e::{FieldBasis, GF2eCtx};
use monoforge_core::graph::{build_q, build_sps_circuit, q_partition, sps_report, substitute_q_to_p, Graph};
use monoforge_core::io::{circuit_to_json, poly_to_json};
use monoforge_core::pit::random_identity_test;
use monoforge_core::poly::poly_equal;
use monoforge_core::rank::{
    cauchy_binet_poly, check_well_behaved, f_m_eval_f2, f_m_eval_real, sample_d0_f2, sample_d0_real, sample_d1,
    sample_sparse_matrix, samples_csv, sparse_params, spreadness_exact, DistSample, LogBase, WellBehavedOptions,
};
use monoforge_core::rng::stream_rng;
use monoforge_core::{Circuit, Poly, QMatrix};
use serde_json::{json, Value};

use crate::args::*;
use crate::inputs;
use crate::report::Report;

pub fn seed(g: &Global, what: &str) -> Result<u64> {
    g.seed.ok_or_else(|| anyhow!("{what} is randomized; pass --seed"))
}

/// `MONOFORGE_TERM_CAP` overrides the expansion budget.
pub fn term_cap() -> Result<usize> {
    match std::env::var("MONOFORGE_TERM_CAP") {
        Ok(v) => v.parse().with_context(|| format!("MONOFORGE_TERM_CAP=`{v}` is not a count")),
        Err(_) => Ok(DEFAULT_TERM_CAP),
    }
}

pub fn prob_mode(g: &Global, what: &str) -> Result<ProbMode> {
    Ok(match g.mode {
        Mode::Exact => ProbMode::Exact,
        Mode::Mc => ProbMode::MonteCarlo { trials: g.trials.unwrap_or(10_000), seed: seed(g, what)? },
    })
}

fn write_csv(g: &Global, text: &str) -> Result<()> {
    if let Some(p) = &g.csv {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn config(g: &Global, cmd: &impl serde::Serialize) -> Value {
    json!({ "global": g, "args": cmd })
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

pub fn poly(g: &Global, cmd: &PolyCmd) -> Result<Report> {
    match cmd {
        PolyCmd::Build { graph, k } => {
            let gr = inputs::graph(graph)?;
            let k = k.unwrap_or(gr.n());
            let q = build_q(&gr, k)?;
            let mut rep = Report::new("poly build", config(g, cmd));
            rep.check("set-multilinear", q.is_set_multilinear(&q_partition(gr.n(), k)?));
            rep.result = json!({
                "n": gr.n(),
                "edges": gr.num_edges(),
                "k": k,
                "terms": q.num_terms(),
                "degree": q.total_degree(),
                "poly": poly_to_json(&q),
            });
            Ok(rep)
        }
        PolyCmd::Sps { graph, k } => {
            let gr = inputs::graph(graph)?;
            let c = build_sps_circuit(&gr, *k)?;
            let sr = sps_report(&gr, *k, &c);
            let mut rep = Report::new("poly sps", config(g, cmd));
            rep.check_with("wires <= 40·scale", sr.wires as u64 <= 40 * sr.scale, format!("{} <= 40·{}", sr.wires, sr.scale));
            rep.check("depth <= 3", sr.depth <= 3);
            rep.result = json!({ "size": sr, "circuit": circuit_to_json(&c) });
            Ok(rep)
        }
        PolyCmd::CheckIdentity { graph, k, circuit, poly } => {
            let mut rep = Report::new("poly check-identity", config(g, cmd));
            let mut rows = Vec::new();
            if let (Some(cp), Some(pp)) = (circuit, poly) {
                let c = inputs::circuit(cp)?;
                let p = inputs::poly(pp)?;
                let (ok, v) = identity(g, &c, &p)?;
                rep.check("circuit == polynomial", ok);
                rows.push(v);
            } else {
                let gr = inputs::graph(graph)?;
                let ks = match k {
                    Some(k) => vec![*k],
                    None => divisors(gr.n()),
                };
                let p = build_q(&gr, gr.n())?;
                for k in ks {
                    let c = build_sps_circuit(&gr, k)?;
                    let q = build_q(&gr, k)?;
                    let (ok, mut v) = identity(g, &c, &q)?;
                    rep.check(format!("sps == brute-force (k={k})"), ok);
                    let sub = poly_equal(&substitute_q_to_p(&q, gr.n(), k)?, &p);
                    rep.check(format!("substitution == P (k={k})"), sub);
                    v["k"] = json!(k);
                    rows.push(v);
                }
            }
            rep.result = json!({ "comparisons": rows });
            Ok(rep)
        }
    }
}

fn identity(g: &Global, c: &Circuit, p: &Poly) -> Result<(bool, Value)> {
    Ok(match g.mode {
        Mode::Exact => {
            let e = c.expand(term_cap()?)?;
            (poly_equal(&e, p), json!({ "method": "expansion", "terms": e.num_terms() }))
        }
        Mode::Mc => {
            let s = seed(g, "randomized identity testing")?;
            let v = random_identity_test(c, p, g.trials.unwrap_or(20) as usize, s);
            (v.is_equal(), json!({ "method": "random evaluation", "verdict": v, "seed": s, "stream": 0 }))
        }
    })
}

pub fn build_code(a: &CodeArgs) -> Result<(RSCode, LinearCodeF2)> {
    let ctx = match a.modulus {
        Some(m) => GF2eCtx::new(a.l, m)?,
        None => GF2eCtx::with_default_modulus(a.l),
    };
    let code = RSCode::new(ctx, a.n, a.m, a.points.clone())?;
    let bin = binary_expand_code(&code, &FieldBasis::polynomial(ctx))?;
    Ok((code, bin))
}

pub fn code(g: &Global, cmd: &CodeCmd) -> Result<Report> {
    match cmd {
        CodeCmd::Rs(a) => {
            let (code, _) = build_code(a)?;
            let st = rs_stats(&code)?;
            let mut rep = Report::new("code rs", config(g, cmd));
            rep.check_with("distance == m-n+1", st.distance == a.m - a.n + 1, st.distance.to_string());
            rep.check_with("dual distance == n+1", st.dual_distance == a.n + 1, st.dual_distance.to_string());
            rep.result = json!({ "generator": code.generator(), "stats": st });
            Ok(rep)
        }
        CodeCmd::Expand(a) => {
            let (code, bin) = build_code(a)?;
            let mut rep = Report::new("code expand", config(g, cmd));
            rep.result = json!({ "dim": bin.dim(), "len": bin.len(), "code": CodeJson::new(&code, &bin) });
            Ok(rep)
        }
        CodeCmd::Stats { code: a, b } => {
            let (code, bin) = build_code(a)?;
            let q = rs_stats(&code)?;
            let st = code_stats(&bin)?;
            let l = a.l as usize;
            let mut rep = Report::new("code stats", config(g, cmd));
            rep.check_with("q-ary distance == m-n+1", q.distance == a.m - a.n + 1, q.distance.to_string());
            rep.check_with("q-ary dual distance == n+1", q.dual_distance == a.n + 1, q.dual_distance.to_string());
            rep.check_with(
                "binary distance in [d, l·d]",
                (q.distance..=l * q.distance).contains(&st.distance),
                format!("{} <= {} <= {}", q.distance, st.distance, l * q.distance),
            );
            rep.check_with(
                "binary dual distance in [d⊥, l·d⊥]",
                (q.dual_distance..=l * q.dual_distance).contains(&st.dual_distance),
                format!("{} <= {} <= {}", q.dual_distance, st.dual_distance, l * q.dual_distance),
            );
            let bound = code_size_bound(
                st.dim as f64,
                st.len as f64,
                (st.distance - 1) as f64,
                (st.dual_distance - 1) as f64,
                *b,
            );
            write_csv(g, &format!("{}\n{}\n", CodeStats::csv_header(), st.csv_row()))?;
            rep.result = json!({ "qary": q, "binary": st, "size_bound": bound });
            Ok(rep)
        }
        CodeCmd::Independence { code: a, t } => {
            let (_, bin) = build_code(a)?;
            let mut rep = Report::new("code independence", config(g, cmd));
            let mut rows = Vec::new();
            match t {
                Some(t) => {
                    let r = check_t_wise_independence(&bin, *t)?;
                    rep.check(format!("{t}-wise independent"), r.independent);
                    rows.push(r);
                }
                None => {
                    let dd = code_stats(&bin)?.dual_distance;
                    let r = check_t_wise_independence(&bin, dd - 1)?;
                    rep.check(format!("{}-wise independent", dd - 1), r.independent);
                    rows.push(r);
                    if dd <= bin.len() {
                        let r = check_t_wise_independence(&bin, dd)?;
                        rep.check(format!("not {dd}-wise independent"), !r.independent);
                        rows.push(r);
                    }
                }
            }
            rep.result = json!({ "reports": rows });
            Ok(rep)
        }
    }
}

fn sign_string(u: &[i8]) -> String {
    u.iter().map(|&x| ['-', '0', '+'][(x + 1) as usize]).collect()
}

pub fn dist(g: &Global, cmd: &DistCmd) -> Result<Report> {
    match cmd {
        DistCmd::Sample { kind, matrix, field, weight, count } => {
            let s = seed(g, "sampling")?;
            let mut rng = stream_rng(s, 0);
            let mut rows = Vec::with_capacity(*count);
            let mut sound = true;
            enum M {
                F2(monoforge_core::f2::BitMatrix),
                Real(monoforge_core::rank::RealMatrix01),
            }
            let m = match field {
                Field::F2 => M::F2(inputs::bit_matrix(matrix)?),
                Field::Real => M::Real(inputs::real_matrix(matrix)?),
            };
            let cols = match &m {
                M::F2(b) => b.cols(),
                M::Real(r) => r.m(),
            };
            for id in 0..*count {
                let (a, witness, nonzero) = match (kind, &m) {
                    (DistKindArg::D1, _) => {
                        let w = weight.ok_or_else(|| anyhow!("D1 needs --W"))?;
                        (sample_d1(cols, w, &mut rng)?, String::new(), false)
                    }
                    (DistKindArg::D0, M::F2(b)) => {
                        let (a, u) = sample_d0_f2(b, &mut rng);
                        let text: String = (0..u.len()).map(|i| if u.get(i) { '1' } else { '0' }).collect();
                        (a, text, !u.is_zero())
                    }
                    (DistKindArg::D0, M::Real(r)) => {
                        let (a, u) = sample_d0_real(r, &mut rng);
                        (a, sign_string(&u), u.iter().any(|&x| x != 0))
                    }
                };
                let f = match &m {
                    M::F2(b) => f_m_eval_f2(b, &a),
                    M::Real(r) => f_m_eval_real(r, &a),
                };
                if *kind == DistKindArg::D0 && nonzero && f {
                    sound = false;
                }
                rows.push(DistSample { sample_id: id, weight: a.iter().filter(|&&b| b).count(), f_m: f, witness_u: witness });
            }
            write_csv(g, &samples_csv(&rows))?;
            let mut rep = Report::new("dist sample", config(g, cmd));
            if *kind == DistKindArg::D0 {
                rep.check("u != 0 implies f_M = 0", sound);
            }
            let ones = rows.iter().filter(|r| r.f_m).count();
            rep.result = json!({ "seed": s, "stream": 0, "f_M_ones": ones, "samples": rows });
            Ok(rep)
        }
        DistCmd::Spread { m, weight, kmax } => {
            let table = spreadness_exact(*m, *weight, *kmax)?;
            let mut rep = Report::new("dist spread", config(g, cmd));
            rep.check("Pr[A ⊆ x] <= (W/m)^|A| for every k", table.iter().all(|r| r.holds));
            let mut csv = String::from("k,prob,bound,holds\n");
            for r in &table {
                csv.push_str(&format!("{},{},{},{}\n", r.k, r.prob, r.bound, r.holds));
            }
            write_csv(g, &csv)?;
            rep.result = json!({ "table": table });
            Ok(rep)
        }
    }
}

fn log_base(l: Log) -> LogBase {
    match l {
        Log::Two => LogBase::Two,
        Log::E => LogBase::E,
    }
}

pub fn matrix(g: &Global, cmd: &MatrixCmd) -> Result<Report> {
    match cmd {
        MatrixCmd::Sample { n, s, m, save } => {
            let sd = seed(g, "matrix sampling")?;
            let params = sparse_params(*n, *s)?;
            let cols = m.unwrap_or(params.m);
            let mat = sample_sparse_matrix(*n, cols, params.s, &mut stream_rng(sd, 0))?;
            let text = mat.to_text();
            if let Some(p) = save {
                fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            }
            let mut rep = Report::new("matrix sample", config(g, cmd));
            rep.result = json!({
                "params": params,
                "columns": cols,
                "rank": mat.rank_of(&(0..cols).collect::<Vec<_>>()),
                "seed": sd,
                "stream": 0,
                "matrix": text,
            });
            Ok(rep)
        }
        MatrixCmd::WellBehaved { matrix, k, c, t_max, weight, tuple_trials, delta, log } => {
            let sd = seed(g, "the well-behavedness check")?;
            let mat = inputs::real_matrix(matrix)?;
            let s = mat.s().ok_or_else(|| anyhow!("the matrix file must record its sparsity s"))?;
            let k = match k {
                Some(k) => *k,
                None => sparse_params(mat.n(), Some(s))?.k,
            };
            let mut opts = WellBehavedOptions::new(k, sd);
            opts.c = *c;
            opts.t_max = *t_max;
            opts.w_override = *weight;
            opts.log_base = log_base(*log);
            opts.tuple_trials = *tuple_trials;
            opts.delta = *delta;
            if let Some(t) = g.trials {
                opts.trials = t as usize;
            }
            let r = check_well_behaved(&mat, &opts)?;
            let mut rep = Report::new("matrix well-behaved", config(g, cmd));
            rep.check("column supports at least s/2", r.passes1);
            rep.check("random W-subsets have full rank w.p. >= 0.1", r.passes2);
            rep.check("no containment violation found under budget", r.passes3);
            rep.result = json!({ "report": r, "seed": sd });
            Ok(rep)
        }
    }
}

pub fn rank(g: &Global, cmd: &RankCmd) -> Result<Report> {
    let RankCmd::Eval { matrix, field, x } = cmd;
    let x = inputs::bits(x)?;
    let (f, rank, rows) = match field {
        Field::F2 => {
            let b = inputs::bit_matrix(matrix)?;
            if x.len() != b.cols() {
                bail!("x has length {}, the matrix has {} columns", x.len(), b.cols());
            }
            let set: Vec<usize> = (0..x.len()).filter(|&j| x[j]).collect();
            (f_m_eval_f2(&b, &x), b.select_columns(&set).rank(), b.rows())
        }
        Field::Real => {
            let r = inputs::real_matrix(matrix)?;
            if x.len() != r.m() {
                bail!("x has length {}, the matrix has {} columns", x.len(), r.m());
            }
            let set: Vec<usize> = (0..x.len()).filter(|&j| x[j]).collect();
            (f_m_eval_real(&r, &x), r.rank_of(&set), r.n())
        }
    };
    let mut rep = Report::new("rank eval", config(g, cmd));
    rep.result = json!({ "f_M": f, "rank": rank, "rows": rows });
    Ok(rep)
}

pub fn leading(a: &QMatrix, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |i, j| a[(i, j)].clone())
}

pub fn cb(g: &Global, cmd: &CbCmd) -> Result<Report> {
    let CbCmd::Verify { matrix, rows, cols } = cmd;
    let m = inputs::real_matrix(matrix)?;
    let q = m.to_qmatrix();
    let (r, c) = (rows.unwrap_or(q.rows()), cols.unwrap_or(q.cols()));
    if r > q.rows() || c > q.cols() {
        bail!("requested {r}×{c} from a {}×{} matrix", q.rows(), q.cols());
    }
    let rep_cb = cauchy_binet_poly(&leading(&q, r, c))?;
    let mut rep = Report::new("cb verify", config(g, cmd));
    rep.check("det expansion == sum of squared minors", rep_cb.equal);
    rep.check("coefficients nonnegative", rep_cb.nonnegative);
    rep.check("P(1_S) > 0 iff full rank, all S", rep_cb.positivity);
    rep.result = json!({
        "rows": r,
        "cols": c,
        "terms": rep_cb.p_direct.num_terms(),
        "p": poly_to_json(&rep_cb.p_direct),
    });
    Ok(rep)
}

fn strategy(s: Strategy) -> FinderStrategy {
    match s {
        Strategy::Tiered => FinderStrategy::Tiered,
        Strategy::Classical => FinderStrategy::ClassicalOnly,
    }
}

/// Largest cube enumerated for the pointwise comparison.
const POINTWISE_LIMIT: usize = 24;

pub fn pluck_checks(rep: &mut Report, before: &SetFamily, after: &SetFamily, r: usize, w: usize) {
    rep.check("output r-small", after.is_r_small(r));
    rep.check("output width <= 2w", after.width() <= 2 * w);
    if before.n() <= POINTWISE_LIMIT {
        let ok = (0..1u64 << before.n()).all(|x| !before.eval(x) || after.eval(x));
        rep.check("output >= input pointwise", ok);
    }
}

pub fn approx(g: &Global, cmd: &ApproxCmd) -> Result<Report> {
    match cmd {
        ApproxCmd::Run { circuit, d0, d1, n, params, q, t } => {
            let c = inputs::bool_circuit(circuit)?;
            let n = n.unwrap_or(c.num_vars());
            let (d0, d1) = (inputs::dist(d0, n)?, inputs::dist(d1, n)?);
            let opts = ApproxOptions {
                w: params.w,
                r: params.r,
                eps: params.eps,
                mode: prob_mode(g, "sampled probabilities")?,
                strategy: strategy(params.strategy),
                q: *q,
                t: *t,
            };
            let mut rep = Report::new("approx run", config(g, cmd));
            match approximate_circuit(&c, &d0, &d1, &opts) {
                Ok((_, r)) => {
                    if let Some(u) = r.union_bound_holds {
                        rep.check("final errors within summed gate errors", u);
                    }
                    rep.result = serde_json::to_value(&r)?;
                }
                Err(Error::SunflowerNotFound(l)) => {
                    rep.check_with("sunflower found at every pluck", false, format!("none in the {l}-uniform slice"));
                }
                Err(e) => return Err(e.into()),
            }
            Ok(rep)
        }
        ApproxCmd::Pluck { family, d0, params } => {
            let fam = inputs::family(family)?;
            let d = inputs::dist(d0, fam.n())?;
            let mode = prob_mode(g, "sampled probabilities")?;
            let opts = PluckOptions { eps: params.eps, r: params.r, w: params.w, mode, strategy: strategy(params.strategy) };
            let mut rep = Report::new("approx pluck", config(g, cmd));
            match pluck(&fam, &d, &opts) {
                Ok(res) => {
                    pluck_checks(&mut rep, &fam, &res.family, params.r, params.w);
                    if let Some(err) = &res.total_error.value {
                        let eps = monoforge_core::Rational::from_float(params.eps).ok_or_else(|| anyhow!("bad eps"))?;
                        let budget = eps * monoforge_core::scalar::ratio(res.ledger.len() as i64, 1);
                        rep.check("D0 error <= plucks·eps", *err <= budget);
                    }
                    rep.result = json!({ "family": res.family.to_json(), "pluck": res });
                }
                Err(Error::SunflowerNotFound(l)) => {
                    rep.check_with("sunflower found at every pluck", false, format!("none in the {l}-uniform slice"));
                }
                Err(e) => return Err(e.into()),
            }
            Ok(rep)
        }
        ApproxCmd::Sunflower { family, d0, eps, members, r } => {
            let fam = inputs::family(family)?;
            let d = inputs::dist(d0, fam.n())?;
            let mode = prob_mode(g, "sampled probabilities")?;
            let mut rep = Report::new("approx sunflower", config(g, cmd));
            let chosen = match (members, r) {
                (Some(m), _) => Some(m.clone()),
                (None, Some(r)) => {
                    let found = find_classical_sunflower(&fam, *r).map(|(m, _)| m);
                    rep.check(format!("classical sunflower with {r} petals found"), found.is_some());
                    found
                }
                (None, None) => bail!("give --members or --r"),
            };
            if let Some(m) = chosen {
                let chk = is_sunflower(&fam, &m, &d, *eps, mode)?;
                rep.check("petal event probability > 1 - eps", chk.accepted);
                rep.result = serde_json::to_value(&chk)?;
            }
            Ok(rep)
        }
    }
}

/// Graph summary for reports.
pub fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.num_edges(), "text": g.to_text() })
}
