use std::collections::HashMap;

use monoforge_core::circuit::{CircuitBuilder, DEFAULT_TERM_CAP};
use monoforge_core::graph::{
    build_p, build_q, build_sps_circuit, check_expander, hard_distribution_stats, sps_report, substitute_q_to_p,
    EigenMode, Graph,
};
use monoforge_core::poly::poly_equal;
use monoforge_core::rng::stream_rng;
use monoforge_core::scalar::ratio;
use monoforge_core::{Circuit, Rational};
use num_traits::{Signed, Zero};
use rand::Rng;

fn corpus() -> Vec<(String, Graph)> {
    let p = Graph::petersen();
    vec![
        ("C4".into(), Graph::cycle(4)),
        ("C6".into(), Graph::cycle(6)),
        ("C8".into(), Graph::cycle(8)),
        ("K4".into(), Graph::complete(4)),
        ("K5".into(), Graph::complete(5)),
        ("Petersen[0..6]".into(), p.induced_subgraph(&[0, 1, 2, 3, 4, 5])),
        ("Petersen[0..8]".into(), p.induced_subgraph(&[0, 1, 2, 3, 4, 5, 6, 7])),
        ("Petersen".into(), p),
    ]
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

#[test]
fn sps_expands_to_q() {
    for (name, g) in corpus() {
        for k in divisors(g.n()) {
            let c = build_sps_circuit(&g, k).unwrap();
            let q = build_q(&g, k).unwrap();
            assert!(poly_equal(&c.expand(DEFAULT_TERM_CAP).unwrap(), &q), "{name}, k={k}");
        }
    }
}

#[test]
fn substitution_gives_p() {
    for (name, g) in corpus() {
        let p = build_q(&g, g.n()).unwrap();
        assert_eq!(p, build_p(&g).unwrap());
        for k in divisors(g.n()) {
            let sub = substitute_q_to_p(&build_q(&g, k).unwrap(), g.n(), k).unwrap();
            assert!(poly_equal(&sub, &p), "{name}, k={k}");
        }
    }
}

#[test]
fn sps_wires_within_budget() {
    for (name, g) in corpus() {
        for k in divisors(g.n()) {
            let r = sps_report(&g, k, &build_sps_circuit(&g, k).unwrap());
            assert!(r.wires as u64 <= 40 * r.scale, "{name}, k={k}: {} wires vs scale {}", r.wires, r.scale);
            assert!(r.depth <= 3);
        }
    }
}

#[test]
fn hard_inputs_on_dodecahedron() {
    let g = Graph::dodecahedron();
    assert!(check_expander(&g, 1e-9, EigenMode::Signed).unwrap().passes);
    let st = hard_distribution_stats(&g, 2, 100_000, 11).unwrap();
    assert_eq!(st.f_zero, 0);
    assert_eq!(st.max_induced_edges, 0);
    for counts in &st.pair_counts {
        for &c in counts {
            let f = c as f64 / st.samples as f64;
            assert!((f - 1.0 / 3.0).abs() <= 0.02, "{f}");
        }
    }
}

fn random_monotone(n: u32, gates: usize, rng: &mut impl Rng) -> Circuit {
    let mut b = CircuitBuilder::new();
    let mut ids: Vec<usize> = (0..n).map(|v| b.input(v)).collect();
    ids.push(b.constant(ratio(0, 1)));
    ids.push(b.constant(ratio(rng.gen_range(1..4), rng.gen_range(1..3))));
    for _ in 0..gates {
        let arity = rng.gen_range(1..=3);
        let ch: Vec<usize> = (0..arity).map(|_| ids[rng.gen_range(0..ids.len())]).collect();
        let id = if rng.gen_bool(0.5) { b.add(ch) } else { b.mul(ch) };
        ids.push(id);
    }
    b.finish(*ids.last().unwrap())
}

#[test]
fn booleanization_matches_positivity() {
    let mut rng = stream_rng(40, 0);
    for _ in 0..50 {
        let n = rng.gen_range(1..=12);
        let gates = rng.gen_range(1..30);
        let c = random_monotone(n, gates, &mut rng);
        let bc = c.booleanize().unwrap();
        for x in 0u64..1 << n {
            let point: HashMap<u32, Rational> = (0..n).map(|v| (v, ratio((x >> v & 1) as i64, 1))).collect();
            let val = c.eval(&point).unwrap();
            assert!(!val.is_negative());
            assert_eq!(bc.eval_mask(x), !val.is_zero(), "x = {x:b}");
        }
    }
}
