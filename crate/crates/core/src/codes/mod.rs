//! Reed–Solomon codes over GF(2^l), their binary images under a field
//! basis, and exact distance / dual distance computations.

mod binary;
mod bounds;

pub use binary::{
    check_t_wise_independence, code_stats, macwilliams, min_dependent_columns, CodeStats, DualMethod,
    IndependenceMethod, IndependenceReport, LinearCodeF2, ENUM_RANK_LIMIT,
};
pub use bounds::{main4_params, code_size_bound, Main4Params, CodeSizeBound};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, F2Vec};
use crate::gf2e::{FieldBasis, GF2eCtx, Gf};

/// Largest message or dual space enumerated directly.
pub const QARY_ENUM_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSCode {
    ctx: GF2eCtx,
    n: usize,
    m: usize,
    points: Vec<Gf>,
}

impl RSCode {
    /// Without explicit points, uses the first `m` field elements `0, 1, …, m−1`.
    pub fn new(ctx: GF2eCtx, n: usize, m: usize, points: Option<Vec<Gf>>) -> Result<Self> {
        if m as u64 > u64::from(ctx.order()) {
            return Err(Error::InvalidArgument(format!("length {m} exceeds the field size {}", ctx.order())));
        }
        if n == 0 || n > m {
            return Err(Error::InvalidArgument(format!("need 1 <= n <= m, got n={n}, m={m}")));
        }
        let points = points.unwrap_or_else(|| (0..m as Gf).collect());
        let mut seen = std::collections::HashSet::new();
        if points.len() != m || !points.iter().all(|&p| p < ctx.order() && seen.insert(p)) {
            return Err(Error::InvalidArgument("evaluation points must be m distinct field elements".into()));
        }
        Ok(RSCode { ctx, n, m, points })
    }

    pub fn ctx(&self) -> GF2eCtx {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[Gf] {
        &self.points
    }

    /// `G[i][j] = points[j]^i` for `i < n` (with `0^0 = 1`).
    pub fn generator(&self) -> Vec<Vec<Gf>> {
        (0..self.n).map(|i| self.points.iter().map(|&p| self.ctx.pow(p, i as u64)).collect()).collect()
    }

    /// `Gᵀ w`.
    pub fn encode(&self, w: &[Gf]) -> Vec<Gf> {
        assert_eq!(w.len(), self.n);
        let g = self.generator();
        (0..self.m).map(|j| (0..self.n).fold(0, |acc, i| acc ^ self.ctx.mul(w[i], g[i][j]))).collect()
    }
}

pub fn rs_generator(code: &RSCode) -> Vec<Vec<Gf>> {
    code.generator()
}

/// Binary generator with rows `γ(b_j·g_i)` in order `i·l + j`.
pub fn binary_expand_code(code: &RSCode, basis: &FieldBasis) -> Result<LinearCodeF2> {
    if basis.ctx() != code.ctx() {
        return Err(Error::InvalidArgument("basis and code use different fields".into()));
    }
    let f = code.ctx();
    let l = f.degree() as usize;
    let rows: Vec<F2Vec> = code
        .generator()
        .iter()
        .flat_map(|g| basis.elements().iter().map(move |&b| basis.expand(&g.iter().map(|&x| f.mul(b, x)).collect::<Vec<_>>())))
        .collect();
    LinearCodeF2::new(BitMatrix::from_rows(l * code.m(), rows))
}

#[derive(Debug, Clone, Serialize)]
pub struct QaryStats {
    pub q: u32,
    pub n: usize,
    pub m: usize,
    pub distance: usize,
    pub dual_distance: usize,
    pub dual_method: DualMethod,
    /// `A_w` for `w = 0..=m`.
    pub weight_distribution: Vec<u64>,
}

fn enumerate_span(f: GF2eCtx, rows: &[Vec<Gf>], len: usize) -> Vec<u64> {
    let q = u64::from(f.order());
    let mut hist = vec![0u64; len + 1];
    let total = q.pow(rows.len() as u32);
    for idx in 0..total {
        let mut word = vec![0; len];
        let mut rest = idx;
        for row in rows {
            let c = (rest % q) as Gf;
            rest /= q;
            if c != 0 {
                for (w, &x) in word.iter_mut().zip(row) {
                    *w ^= f.mul(c, x);
                }
            }
        }
        hist[word.iter().filter(|&&x| x != 0).count()] += 1;
    }
    hist
}

fn min_positive_weight(hist: &[u64]) -> Option<usize> {
    (1..hist.len()).find(|&w| hist[w] > 0)
}

/// Distance by enumerating all `q^n` codewords; dual distance by
/// enumerating the dual when it has at most [`QARY_ENUM_LIMIT`] words, and
/// by the MacWilliams transform of the weight distribution otherwise.
pub fn rs_stats(code: &RSCode) -> Result<QaryStats> {
    let f = code.ctx();
    let q = u64::from(f.order());
    let size = q.checked_pow(code.n() as u32).filter(|&s| s <= QARY_ENUM_LIMIT);
    if size.is_none() {
        return Err(Error::EnumerationTooLarge { what: format!("{q}^{} codewords", code.n()), limit: QARY_ENUM_LIMIT.to_string() });
    }
    let g = code.generator();
    let hist = enumerate_span(f, &g, code.m());
    let distance = min_positive_weight(&hist).expect("nonzero code");
    let kernel = f.kernel(&g);
    let dual_size = q.checked_pow(kernel.len() as u32).filter(|&s| s <= QARY_ENUM_LIMIT);
    let (dual_distance, dual_method) = if kernel.is_empty() {
        (code.m() + 1, DualMethod::Trivial)
    } else if dual_size.is_some() {
        let dual = enumerate_span(f, &kernel, code.m());
        (min_positive_weight(&dual).expect("nonzero dual"), DualMethod::Enumeration)
    } else {
        let b = macwilliams(&hist, q);
        let d = (1..b.len()).find(|&j| b[j] != num_bigint::BigInt::from(0)).expect("nonzero dual");
        (d, DualMethod::MacWilliams)
    };
    Ok(QaryStats { q: f.order(), n: code.n(), m: code.m(), distance, dual_distance, dual_method, weight_distribution: hist })
}

/// Serialized form of a binary code built from a Reed–Solomon code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeJson {
    pub l: u32,
    pub n: usize,
    pub m: usize,
    pub modulus: u32,
    pub points: Vec<Gf>,
    pub generator: String,
}

impl CodeJson {
    pub fn new(code: &RSCode, bin: &LinearCodeF2) -> Self {
        CodeJson {
            l: code.ctx().degree(),
            n: code.n(),
            m: code.m(),
            modulus: code.ctx().modulus(),
            points: code.points().to_vec(),
            generator: bin.gen().to_text(),
        }
    }

    pub fn code(&self) -> Result<LinearCodeF2> {
        LinearCodeF2::new(BitMatrix::from_text(&self.generator)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn gf8() -> GF2eCtx {
        GF2eCtx::new(3, 0b1011).unwrap()
    }

    #[test]
    fn rs_over_gf8() {
        let code = RSCode::new(gf8(), 2, 7, Some((1..8).collect())).unwrap();
        let g = rs_generator(&code);
        assert_eq!((g.len(), g[0].len()), (2, 7));
        assert_eq!(gf8().rank(&g), 2);
        let st = rs_stats(&code).unwrap();
        assert_eq!((st.distance, st.dual_distance), (6, 3));
        assert_eq!(st.dual_method, DualMethod::Enumeration);
    }

    #[test]
    fn constant_code() {
        let code = RSCode::new(gf8(), 1, 7, None).unwrap();
        assert!(rs_generator(&code)[0].iter().all(|&x| x == 1));
        assert_eq!(rs_stats(&code).unwrap().distance, 7);
    }

    #[test]
    fn macwilliams_agrees_with_enumeration() {
        for (n, m) in [(2, 7), (3, 6), (4, 8)] {
            let f = gf8();
            let code = RSCode::new(f, n, m, None).unwrap();
            let st = rs_stats(&code).unwrap();
            let b = macwilliams(&st.weight_distribution, 8);
            let dual = enumerate_span(f, &f.kernel(&code.generator()), m);
            assert_eq!(b, dual.iter().map(|&x| num_bigint::BigInt::from(x)).collect::<Vec<_>>());
            assert_eq!(st.dual_distance, n + 1);
        }
    }

    #[test]
    fn binary_expansion_shape_and_image() {
        let code = RSCode::new(gf8(), 2, 7, None).unwrap();
        let basis = FieldBasis::polynomial(gf8());
        let bin = binary_expand_code(&code, &basis).unwrap();
        assert_eq!((bin.gen().rows(), bin.gen().cols()), (6, 21));
        assert!(basis.expand(&code.encode(&[0, 0])).is_zero());
        let mut rng = crate::rng::stream_rng(4, 0);
        for _ in 0..100 {
            let w = [rng.gen_range(0..8), rng.gen_range(0..8)];
            assert!(bin.gen().row_space_contains(&basis.expand(&code.encode(&w))));
        }
    }

    #[test]
    fn invalid_codes() {
        assert!(RSCode::new(gf8(), 2, 9, None).is_err());
        assert!(RSCode::new(gf8(), 3, 2, None).is_err());
        assert!(RSCode::new(gf8(), 2, 3, Some(vec![1, 1, 2])).is_err());
    }
}
