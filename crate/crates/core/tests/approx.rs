use monoforge_core::approx::{
    approximate_circuit, dnf_agreement, is_sunflower, pluck, ApproxOptions, DistSpec, FinderStrategy, PluckOptions,
    ProbMode, SetFamily,
};
use monoforge_core::boolcircuit::BoolCircuit;
use monoforge_core::error::Error;
use monoforge_core::rng::stream_rng;
use monoforge_core::scalar::ratio;
use monoforge_core::Rational;
use rand::seq::index::sample;
use rand::Rng;

/// Product distribution with `Pr[x_i = 1] = a/b`, as exact integer weights.
fn biased(n: usize, a: u128, b: u128) -> DistSpec {
    let pts = (0..1u64 << n).map(|x| {
        let k = x.count_ones();
        (x, a.pow(k) * (b - a).pow(n as u32 - k))
    });
    DistSpec::explicit(n, pts).unwrap()
}

fn random_family(n: usize, max_width: usize, count: usize, rng: &mut impl Rng) -> SetFamily {
    let sets: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_width);
            sample(rng, n, k).into_vec()
        })
        .collect();
    SetFamily::new(n, &sets).unwrap()
}

#[test]
fn pluck_postconditions_on_random_families() {
    let mut rng = stream_rng(70, 0);
    let mut done = 0;
    let mut regenerated = 0;
    let mut total_plucks = 0;
    while done < 200 {
        let n = rng.gen_range(4..=16);
        let w = rng.gen_range(1..=2);
        let r = rng.gen_range(2..=3);
        let eps = rng.gen_range(0.3..=0.5);
        let fam = random_family(n, (2 * w).min(n), rng.gen_range(3..=40), &mut rng);
        let d0 = biased(n, rng.gen_range(2..=3), 4);
        let opts = PluckOptions { eps, r, w, mode: ProbMode::Exact, strategy: FinderStrategy::Tiered };
        let res = match pluck(&fam, &d0, &opts) {
            Ok(res) => res,
            Err(Error::SunflowerNotFound(_)) => {
                regenerated += 1;
                continue;
            }
            Err(e) => panic!("{e}"),
        };
        let out = &res.family;
        assert!(out.is_r_small(r));
        assert!(out.width() <= 2 * w);
        for x in 0..1u64 << n {
            assert!(!fam.eval(x) || out.eval(x), "output below input at {x:b}");
        }
        let err = res.total_error.value.clone().unwrap();
        let budget = Rational::from_float(eps).unwrap() * ratio(res.ledger.len() as i64, 1);
        assert!(err <= budget, "error {err} above {budget}");
        total_plucks += res.ledger.len();
        done += 1;
    }
    assert!(total_plucks > 0);
    assert!(regenerated < 200, "{regenerated} regenerated");
}

#[test]
fn pluck_error_per_step_is_bounded() {
    let mut rng = stream_rng(71, 0);
    for _ in 0..50 {
        let n = rng.gen_range(6..=12);
        let fam = random_family(n, 2, 30, &mut rng);
        let d0 = biased(n, 3, 4);
        let opts = PluckOptions { eps: 0.4, r: 2, w: 1, mode: ProbMode::Exact, strategy: FinderStrategy::Tiered };
        let Ok(res) = pluck(&fam, &d0, &opts) else { continue };
        let eps = Rational::from_float(0.4).unwrap();
        for e in &res.ledger {
            assert!(e.eps_est.value.clone().unwrap() < eps);
        }
    }
}

#[test]
fn sunflower_sampling_matches_enumeration() {
    let mut rng = stream_rng(72, 0);
    for case in 0..100u64 {
        let n = rng.gen_range(3..=10);
        let fam = random_family(n, 3.min(n), rng.gen_range(2..=8), &mut rng);
        if fam.len() < 2 {
            continue;
        }
        let k = rng.gen_range(2..=fam.len());
        let members = sample(&mut rng, fam.len(), k).into_vec();
        let d = biased(n, rng.gen_range(1..=3), 4);
        let exact = is_sunflower(&fam, &members, &d, 0.3, ProbMode::Exact).unwrap();
        let trials = 20_000;
        let mc = is_sunflower(&fam, &members, &d, 0.3, ProbMode::MonteCarlo { trials, seed: case }).unwrap();
        let p = exact.prob.mean;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((mc.prob.mean - p).abs() <= 3.0 * sigma + 1e-3, "case {case}: {} vs {p}", mc.prob.mean);
        assert_eq!(exact.core, mc.core);
        if mc.accepted {
            assert!(exact.accepted);
        }
    }
}

/// Uniform over weight-`big` vectors is `(m/big)`-spread; the point at zero sits in `f⁻¹(0)` for threshold `f`.
#[test]
fn small_dnfs_barely_beat_a_coin() {
    let mut rng = stream_rng(73, 0);
    for (m, big, r, delta_den) in [(16usize, 2usize, 2usize, 4i64), (12, 3, 1, 4), (16, 4, 1, 4)] {
        let delta = ratio(1, delta_den);
        assert_eq!(ratio(m as i64, big as i64) * delta.clone(), ratio(r as i64, 1));
        let d0 = DistSpec::point_mass(m, 0).unwrap();
        let d1 = DistSpec::uniform_weight(m, big).unwrap();
        let d = d0.mix_half(&d1).unwrap();
        let f = move |x: u64| x.count_ones() as usize >= big;
        let w = (big / 2).max(1);
        for _ in 0..40 {
            let mut sets = Vec::new();
            for l in 1..=w {
                for _ in 0..rng.gen_range(0..=r.pow(l as u32)) {
                    sets.push(sample(&mut rng, m, l).into_vec());
                }
            }
            let fam = SetFamily::new(m, &sets).unwrap();
            assert!(fam.is_r_small(r));
            let agree = dnf_agreement(&fam, f, &d, ProbMode::Exact).unwrap();
            assert!(agree.value.unwrap() <= ratio(1, 2) + ratio(2, 1) * delta.clone());
        }
    }
}

fn random_dnf(n: usize, terms: usize, width: usize, rng: &mut impl Rng) -> BoolCircuit {
    let t: Vec<Vec<u32>> = (0..terms)
        .map(|_| {
            let k = rng.gen_range(1..=width.min(n));
            sample(rng, n, k).into_iter().map(|v| v as u32).collect()
        })
        .collect();
    BoolCircuit::from_dnf(&t)
}

#[test]
fn huge_r_gives_exact_dnf() {
    let mut rng = stream_rng(74, 0);
    for _ in 0..30 {
        let n = rng.gen_range(3..=10);
        let c = if rng.gen_bool(0.5) {
            random_dnf(n, rng.gen_range(1..=6), 3.min(n), &mut rng)
        } else {
            BoolCircuit::random(n as u32, rng.gen_range(1..=12), &mut rng)
        };
        let d = DistSpec::uniform_cube(n).unwrap();
        let opts = ApproxOptions {
            w: n,
            r: 1 << 20,
            eps: 0.1,
            mode: ProbMode::Exact,
            strategy: FinderStrategy::Tiered,
            q: None,
            t: None,
        };
        let (fam, rep) = approximate_circuit(&c, &d, &d, &opts).unwrap();
        assert!(rep.gates.iter().all(|g| g.plucks.is_empty()));
        assert_eq!(rep.agreement, 1.0);
        for x in 0..1u64 << n {
            assert_eq!(fam.eval(x), c.eval_mask(x));
        }
    }
}

#[test]
fn e1_within_truncation_budget() {
    let mut rng = stream_rng(75, 0);
    let mut runs = 0;
    for case in 0..60 {
        // q = m/big must be at least 2r and 2w ≤ big for the per-gate bound.
        let (m, big, w, r) = if case % 2 == 0 { (16usize, 2usize, 1usize, 2usize) } else { (12, 4, 2, 1) };
        let q = m as f64 / big as f64;
        let c = random_dnf(m, rng.gen_range(2..=8), 2 * w, &mut rng);
        let d0 = biased(m, 3, 4);
        let d1 = DistSpec::uniform_weight(m, big).unwrap();
        let opts = ApproxOptions {
            w,
            r,
            eps: 0.45,
            mode: ProbMode::Exact,
            strategy: FinderStrategy::Tiered,
            q: Some(q),
            t: Some(big),
        };
        let (_, rep) = match approximate_circuit(&c, &d0, &d1, &opts) {
            Ok(x) => x,
            Err(Error::SunflowerNotFound(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        assert!(rep.total_e1 <= rep.e1_budget.unwrap() + 1e-12, "{} vs {:?}", rep.total_e1, rep.e1_budget);
        assert_eq!(rep.union_bound_holds, Some(true));
        assert!(rep.criterion.is_some());
        runs += 1;
    }
    assert!(runs > 10, "only {runs} runs completed");
}

#[test]
fn singletons_collapse_under_uniform_measure() {
    let fam = SetFamily::new(4, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
    let d = DistSpec::uniform_cube(4).unwrap();
    let opts = PluckOptions { eps: 0.1, r: 2, w: 1, mode: ProbMode::Exact, strategy: FinderStrategy::Tiered };
    let res = pluck(&fam, &d, &opts).unwrap();
    assert_eq!(res.family.sets(), vec![Vec::<usize>::new()]);
    assert_eq!(res.ledger.len(), 1);
    assert_eq!(res.total_error.exact.as_deref(), Some("1/16"));
}
