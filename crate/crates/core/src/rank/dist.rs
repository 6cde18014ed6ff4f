//! The yes/no input distributions `D₁` (uniform fixed weight) and `D₀`
//! (zero pattern of `Mᵀu` for random `u`), and exact spreadness of `D₁`.

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use super::RealMatrix01;
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, F2Vec};
use crate::scalar::format_rational;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LogBase {
    Two,
    E,
}

impl LogBase {
    pub fn ceil_log(self, x: usize) -> usize {
        let x = x as f64;
        let v = match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        };
        // guard exact powers against rounding
        let r = v.round();
        if (v - r).abs() < 1e-9 { r as usize } else { v.ceil() as usize }
    }
}

/// `n·⌈m/d⌉`.
pub fn d1_weight_f2(n: usize, m: usize, d: usize) -> usize {
    assert!(d > 0, "distance must be positive");
    n * m.div_ceil(d)
}

/// `10·n·⌈log n⌉`.
pub fn d1_weight_real(n: usize, base: LogBase) -> usize {
    10 * n * base.ceil_log(n.max(1))
}

/// Uniform `x ∈ {0,1}^m` of weight exactly `w`.
pub fn sample_d1(m: usize, w: usize, rng: &mut impl Rng) -> Result<Vec<bool>> {
    if w > m {
        return Err(Error::WeightExceedsLength { weight: w, len: m });
    }
    let mut x = vec![false; m];
    for j in sample(rng, m, w) {
        x[j] = true;
    }
    Ok(x)
}

/// `a_j = [⟨M[j], u⟩ = 0]` for `u` uniform in GF(2)^n. Returns `(a, u)`.
pub fn sample_d0_f2(m: &BitMatrix, rng: &mut impl Rng) -> (Vec<bool>, F2Vec) {
    let u = F2Vec::from_bools(&(0..m.rows()).map(|_| rng.gen::<bool>()).collect::<Vec<_>>());
    let c = m.left_mul(&u);
    ((0..m.cols()).map(|j| !c.get(j)).collect(), u)
}

/// `a_j = [Σ_{i ∈ supp M[j]} u_i = 0]`.
pub fn d0_real_from_u(m: &RealMatrix01, u: &[i8]) -> Vec<bool> {
    assert_eq!(u.len(), m.n());
    (0..m.m())
        .map(|j| m.support(j).iter().map(|&i| i64::from(u[i])).sum::<i64>() == 0)
        .collect()
}

/// `D₀` over ℚ with `u` uniform in `{−1,0,1}^n`. Returns `(a, u)`.
pub fn sample_d0_real(m: &RealMatrix01, rng: &mut impl Rng) -> (Vec<bool>, Vec<i8>) {
    let u: Vec<i8> = (0..m.n()).map(|_| rng.gen_range(-1..=1)).collect();
    (d0_real_from_u(m, &u), u)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpreadRow {
    pub k: usize,
    /// `Pr[T ⊆ supp(x)]` for any fixed `|T| = k`.
    pub prob: String,
    /// `(W/m)^k`.
    pub bound: String,
    pub prob_f64: f64,
    pub bound_f64: f64,
    pub holds: bool,
}

/// Exact `∏_{i<k} (W−i)/(m−i)` against `(W/m)^k` for `k = 1..=kmax`.
pub fn spreadness_exact(m: usize, w: usize, kmax: usize) -> Result<Vec<SpreadRow>> {
    if w > m {
        return Err(Error::WeightExceedsLength { weight: w, len: m });
    }
    let kmax = kmax.min(w);
    let step = Rational::new(BigInt::from(w), BigInt::from(m.max(1)));
    let mut prob = Rational::one();
    let mut bound = Rational::one();
    let mut rows = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        prob *= Rational::new(BigInt::from(w - k + 1), BigInt::from(m - k + 1));
        bound *= &step;
        rows.push(SpreadRow {
            k,
            prob: format_rational(&prob),
            bound: format_rational(&bound),
            prob_f64: crate::scalar::to_f64(&prob),
            bound_f64: crate::scalar::to_f64(&bound),
            holds: prob <= bound,
        });
    }
    Ok(rows)
}

/// Whether spreadness holds for every `k ≤ kmax`, by the integer comparison
/// `∏(W−i)·m^k ≤ W^k·∏(m−i)`.
pub fn spread_holds(m: usize, w: usize, kmax: usize) -> bool {
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    let (mut wk, mut mk) = (BigInt::one(), BigInt::one());
    for k in 1..=kmax.min(w) {
        num *= w - k + 1;
        den *= m - k + 1;
        wk *= w;
        mk *= m;
        if &num * &mk > &wk * &den {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Serialize)]
pub struct DistSample {
    pub sample_id: usize,
    pub weight: usize,
    pub f_m: bool,
    /// `u` as a 0/1 string over GF(2) or a `-0+` string over ℚ; empty for `D₁`.
    pub witness_u: String,
}

pub fn samples_csv(rows: &[DistSample]) -> String {
    let mut out = String::from("sample_id,weight,f_M,witness_u\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.sample_id, r.weight, u8::from(r.f_m), r.witness_u));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    #[test]
    fn weights() {
        assert_eq!(d1_weight_f2(4, 10, 3), 16);
        assert_eq!(d1_weight_real(8, LogBase::Two), 240);
        assert_eq!(d1_weight_real(8, LogBase::E), 240);
        assert_eq!(d1_weight_real(16, LogBase::Two), 640);
        let mut rng = stream_rng(1, 0);
        let x = sample_d1(10, 4, &mut rng).unwrap();
        assert_eq!(x.iter().filter(|&&b| b).count(), 4);
        assert_eq!(sample_d1(3, 4, &mut rng), Err(Error::WeightExceedsLength { weight: 4, len: 3 }));
    }

    #[test]
    fn spread_example() {
        let rows = spreadness_exact(10, 4, 2).unwrap();
        assert_eq!(rows[0].prob, "2/5");
        assert_eq!(rows[1].prob, "2/15");
        assert_eq!(rows[1].bound, "4/25");
        assert!(rows.iter().all(|r| r.holds));
        assert!(spread_holds(10, 4, 4));
    }

    #[test]
    fn d0_real_identity() {
        let m = RealMatrix01::new(3, None, &[vec![0], vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(d0_real_from_u(&m, &[1, -1, 1]), vec![false, true, true]);
    }

    #[test]
    fn d0_f2_zero_pattern() {
        let m = BitMatrix::identity(3);
        let mut rng = stream_rng(2, 0);
        for _ in 0..20 {
            let (a, u) = sample_d0_f2(&m, &mut rng);
            for j in 0..3 {
                assert_eq!(a[j], !u.get(j));
            }
        }
    }
}
