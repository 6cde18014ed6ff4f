//! Counting 0/1 vectors of weight at most `s` inside a subspace, against the
//! bound `Σ_{w≤s} C(d, w)` for a `d`-dimensional subspace.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, F2Vec};
use crate::scalar::Ring;
use crate::{QMatrix, Rational};

/// Largest number of vectors enumerated.
pub const BALL_ENUM_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, Serialize)]
pub struct BallCount {
    pub n: usize,
    pub dim: usize,
    pub s: usize,
    pub count: u64,
    pub bound: u64,
    pub holds: bool,
}

fn binom_sum(d: usize, s: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for w in 0..=s.min(d) {
        total = total.saturating_add(c);
        c = c.saturating_mul((d - w) as u64) / (w as u64 + 1);
    }
    total
}

fn ball_vectors(n: usize, s: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, s: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        f(cur);
        if cur.len() == s {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, s, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, s, 0, &mut Vec::new(), f);
}

fn check_ball_size(n: usize, s: usize) -> Result<()> {
    if binom_sum(n, s) > BALL_ENUM_LIMIT {
        return Err(Error::EnumerationTooLarge { what: format!("weight <= {s} vectors of length {n}"), limit: BALL_ENUM_LIMIT.to_string() });
    }
    Ok(())
}

/// Over GF(2), for the row span of `basis`.
pub fn count_ball_subspace_f2(basis: &BitMatrix, s: usize) -> Result<BallCount> {
    let n = basis.cols();
    let (rref, _) = basis.rref();
    let dim = rref.rank();
    let rows: Vec<F2Vec> = (0..dim).map(|i| rref.row(i).clone()).collect();
    let count = if dim <= 24 {
        let mut count = 0;
        let mut v = F2Vec::zeros(n);
        // Gray code walk over the span
        for i in 0u64..1 << dim {
            if i > 0 {
                v.xor_assign(&rows[i.trailing_zeros() as usize]);
            }
            if v.weight() <= s {
                count += 1;
            }
        }
        count
    } else {
        check_ball_size(n, s)?;
        let mut count = 0;
        ball_vectors(n, s, &mut |sup| {
            let mut v = F2Vec::zeros(n);
            for &i in sup {
                v.set(i, true);
            }
            if basis.row_space_contains(&v) {
                count += 1;
            }
        });
        count
    };
    let bound = binom_sum(dim, s);
    Ok(BallCount { n, dim, s, count, bound, holds: count <= bound })
}

/// Over ℚ, for the row span of `basis`, by testing every 0/1 vector of
/// weight at most `s` for membership.
pub fn count_ball_subspace_q(basis: &QMatrix, s: usize) -> Result<BallCount> {
    let n = basis.cols();
    check_ball_size(n, s)?;
    let dim = basis.rank();
    let mut count = 0;
    ball_vectors(n, s, &mut |sup| {
        let mut rows: Vec<Vec<Rational>> = (0..basis.rows()).map(|i| basis.row(i).to_vec()).collect();
        rows.push((0..n).map(|i| Rational::from_i64(i64::from(sup.contains(&i)))).collect());
        if QMatrix::from_rows(rows).rank() == dim {
            count += 1;
        }
    });
    let bound = binom_sum(dim, s);
    Ok(BallCount { n, dim, s, count, bound, holds: count <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn standard_span_is_tight() {
        let mut b = BitMatrix::zeros(3, 6);
        for i in 0..3 {
            b.set(i, i, true);
        }
        for s in 0..=3 {
            let r = count_ball_subspace_f2(&b, s).unwrap();
            assert_eq!(r.count, r.bound);
        }
        let q = QMatrix::from_fn(3, 6, |i, j| ratio(i64::from(i == j), 1));
        let r = count_ball_subspace_q(&q, 2).unwrap();
        assert_eq!((r.count, r.bound), (7, 7));
    }

    #[test]
    fn all_ones_line() {
        let q = QMatrix::from_rows(vec![vec![ratio(1, 1); 5]]);
        let r = count_ball_subspace_q(&q, 5).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.holds);
        assert!(matches!(count_ball_subspace_q(&QMatrix::zeros(1, 40), 20), Err(Error::EnumerationTooLarge { .. })));
    }
}
