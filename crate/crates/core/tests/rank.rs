use monoforge_core::f2::{BitMatrix, F2Vec};
use monoforge_core::rank::{
    cauchy_binet_poly, count_ball_subspace_f2, count_ball_subspace_q, d0_real_from_u, f_m_eval_real,
    sample_d1, sample_sparse_matrix, spread_holds, spreadness_exact, weak_independence_probe, RealMatrix01,
};
use monoforge_core::rng::stream_rng;
use monoforge_core::scalar::ratio;
use monoforge_core::QMatrix;
use rand::Rng;
use rayon::prelude::*;

#[test]
fn cauchy_binet_all_small_01_matrices() {
    for n in 1..=3usize {
        for m in 1..=5usize {
            let bad = (0u32..1 << (n * m)).into_par_iter().find_any(|&bits| {
                let a = QMatrix::from_fn(n, m, |i, j| ratio(i64::from(bits >> (i * m + j) & 1), 1));
                let r = cauchy_binet_poly(&a).unwrap();
                !(r.equal && r.positivity && r.nonnegative)
            });
            assert_eq!(bad, None, "n={n}, m={m}");
        }
    }
}

#[test]
fn cauchy_binet_random_rational() {
    let mut rng = stream_rng(50, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=7);
        let a = QMatrix::from_rows((0..n).map(|_| (0..m).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect()).collect());
        let r = cauchy_binet_poly(&a).unwrap();
        assert!(r.equal && r.positivity && r.nonnegative);
    }
}

#[test]
fn spreadness_grid() {
    let violations: usize = (10..=200usize)
        .into_par_iter()
        .map(|m| (0..=m / 2).filter(|&w| !spread_holds(m, w, w)).count())
        .sum();
    assert_eq!(violations, 0);
}

#[test]
fn spreadness_matches_sampled_d1() {
    // Pr[{0,1} ⊆ supp x] for x uniform of weight 4 in {0,1}^10 is 2/15.
    let rows = spreadness_exact(10, 4, 2).unwrap();
    assert_eq!(rows[1].prob, "2/15");
    let mut rng = stream_rng(51, 0);
    let trials = 30_000;
    let hits = (0..trials).filter(|_| {
        let x = sample_d1(10, 4, &mut rng).unwrap();
        x[0] && x[1]
    });
    let f = hits.count() as f64 / trials as f64;
    assert!((f - 2.0 / 15.0).abs() < 0.01, "{f}");
}

#[test]
fn subspace_ball_bound() {
    let mut rng = stream_rng(52, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=14);
        let d = rng.gen_range(1..=7usize.min(n));
        let s = rng.gen_range(0..=4);
        let rows: Vec<F2Vec> = (0..d).map(|_| F2Vec::from_mask(n, rng.gen_range(0..1u64 << n))).collect();
        let b = BitMatrix::from_rows(n, rows);
        let r = count_ball_subspace_f2(&b, s).unwrap();
        assert!(r.holds, "{r:?}");
    }
    for n in 4..=10 {
        for d in 1..=4 {
            let mut b = BitMatrix::zeros(d, n);
            for i in 0..d {
                b.set(i, i, true);
            }
            for s in 0..=4 {
                let r = count_ball_subspace_f2(&b, s).unwrap();
                assert_eq!(r.count, r.bound);
            }
        }
    }
}

#[test]
fn subspace_ball_bound_over_q() {
    let mut rng = stream_rng(53, 0);
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let d = rng.gen_range(1..=3);
        let a = QMatrix::from_rows((0..d).map(|_| (0..n).map(|_| ratio(rng.gen_range(-1..=1), 1)).collect()).collect());
        let r = count_ball_subspace_q(&a, 3).unwrap();
        assert!(r.holds, "{r:?}");
    }
}

fn full_rank_sparse(n: usize, seed: u64) -> RealMatrix01 {
    let mut rng = stream_rng(seed, 0);
    loop {
        let m = sample_sparse_matrix(n, n * n, 4.min(n), &mut rng).unwrap();
        if m.rank_of(&(0..m.m()).collect::<Vec<_>>()) == n {
            return m;
        }
    }
}

#[test]
fn d0_real_soundness_exhaustive() {
    for n in 1..=8usize {
        let m = full_rank_sparse(n, 54 + n as u64);
        let mut zero_count = 0u64;
        let total = 3u64.pow(n as u32);
        let mut u = vec![0i8; n];
        for idx in 0..total {
            let mut rest = idx;
            for ui in u.iter_mut() {
                *ui = (rest % 3) as i8 - 1;
                rest /= 3;
            }
            let f = f_m_eval_real(&m, &d0_real_from_u(&m, &u));
            if u.iter().any(|&x| x != 0) {
                assert!(!f, "n={n}, u={u:?}");
            }
            zero_count += u64::from(!f);
        }
        assert_eq!(zero_count, total - 1);
    }
}

#[test]
fn probe_sampling_brackets_enumeration() {
    let m = full_rank_sparse(6, 60);
    let mut rng = stream_rng(61, 0);
    let mut checked = 0;
    while checked < 10 {
        let tuple: Vec<usize> = rand::seq::index::sample(&mut rng, m.m(), 3).into_vec();
        let Ok(exact) = weak_independence_probe(&m, &tuple, 3, true, 0, 0) else { continue };
        let mc = weak_independence_probe(&m, &tuple, 3, false, 40_000, 62).unwrap();
        for p in &mc.patterns {
            let e = exact.patterns.iter().find(|q| q.pattern == p.pattern).unwrap();
            assert!(p.lower <= e.mean && e.mean <= p.upper, "{:?} vs {}", p, e.mean);
        }
        checked += 1;
    }
}
