//! Rank functions `f_M(S) = [M[S] has full row rank]` over GF(2) and ℚ,
//! their input distributions, and the sparse 0/1 matrices they are built on.

mod cb;
mod dist;
mod probe;
mod sparse;
mod subspace;

pub use cb::{cauchy_binet_poly, CbReport, CB_COLS_LIMIT, CB_ROWS_LIMIT};
pub use dist::{
    d0_real_from_u, d1_weight_f2, d1_weight_real, sample_d0_f2, sample_d0_real, sample_d1, samples_csv,
    spread_holds, spreadness_exact, DistSample, LogBase, SpreadRow,
};
pub use probe::{weak_independence_probe, PatternStat, ProbeReport, PROBE_EXACT_LIMIT};
pub use sparse::{
    check_well_behaved, is_c_contained, sample_sparse_matrix, sparse_params, ContainmentQuery,
    ContainmentViolation, SparseParams, WellBehavedOptions, WellBehavedReport,
};
pub use subspace::{count_ball_subspace_f2, count_ball_subspace_q, BallCount, BALL_ENUM_LIMIT};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::matrix::{rank_mod_prime, Matrix};
use crate::scalar::Ring;
use crate::{QMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldTag {
    F2,
    Real,
}

/// An `n × m` 0/1 matrix over ℚ stored by column supports (0-based rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealMatrix01 {
    n: usize,
    s: Option<usize>,
    cols: Vec<u128>,
}

pub const MAX_ROWS: usize = 127;

impl RealMatrix01 {
    pub fn new(n: usize, s: Option<usize>, supports: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_ROWS {
            return Err(Error::InvalidArgument(format!("at most {MAX_ROWS} rows supported")));
        }
        let mut cols = Vec::with_capacity(supports.len());
        for (j, sup) in supports.iter().enumerate() {
            let mut mask = 0u128;
            for &i in sup {
                if i >= n {
                    return Err(Error::InvalidArgument(format!("column {j} has row {i} outside [0,{n})")));
                }
                mask |= 1 << i;
            }
            if let Some(s) = s {
                if mask.count_ones() as usize > s {
                    return Err(Error::InvalidArgument(format!("column {j} has weight above s = {s}")));
                }
            }
            cols.push(mask);
        }
        Ok(RealMatrix01 { n, s, cols })
    }

    pub(crate) fn from_masks(n: usize, s: Option<usize>, cols: Vec<u128>) -> Self {
        RealMatrix01 { n, s, cols }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.cols.len()
    }

    pub fn s(&self) -> Option<usize> {
        self.s
    }

    pub fn column_mask(&self, j: usize) -> u128 {
        self.cols[j]
    }

    pub fn support(&self, j: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.cols[j] >> i & 1 == 1).collect()
    }

    pub fn weight(&self, j: usize) -> usize {
        self.cols[j].count_ones() as usize
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cols[j] >> i & 1 == 1
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        Matrix::from_fn(self.n, self.m(), |i, j| Rational::from_i64(i64::from(self.get(i, j))))
    }

    pub fn to_f2(&self) -> BitMatrix {
        let mut b = BitMatrix::zeros(self.n, self.m());
        for j in 0..self.m() {
            for i in self.support(j) {
                b.set(i, j, true);
            }
        }
        b
    }

    /// Rank of the columns in `set`, over ℚ. Tries a prime first: full rank
    /// modulo a prime implies full rank over ℚ.
    pub fn rank_of(&self, set: &[usize]) -> usize {
        let rows: Vec<Vec<i64>> = (0..self.n).map(|i| set.iter().map(|&j| i64::from(self.get(i, j))).collect()).collect();
        let r = rank_mod_prime(&rows);
        if r == self.n.min(set.len()) {
            return r;
        }
        Matrix::from_fn(self.n, set.len(), |i, j| BigInt::from(rows[i][j])).rank_bareiss()
    }

    /// Text form: `q01 <n> <m> <s>`, then one line of 1-based row indices per
    /// column (`-` for an empty column). `s` is `-` when unrecorded.
    pub fn to_text(&self) -> String {
        let s = self.s.map_or("-".to_string(), |s| s.to_string());
        let mut out = format!("q01 {} {} {}\n", self.n, self.m(), s);
        for j in 0..self.m() {
            let sup = self.support(j);
            if sup.is_empty() {
                out.push_str("-\n");
            } else {
                out.push_str(&sup.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let bad = || Error::Parse(format!("bad header `{header}`"));
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "q01" {
            return Err(bad());
        }
        let n: usize = parts[1].parse().map_err(|_| bad())?;
        let m: usize = parts[2].parse().map_err(|_| bad())?;
        let s = if parts[3] == "-" { None } else { Some(parts[3].parse().map_err(|_| bad())?) };
        let mut supports = Vec::with_capacity(m);
        for line in lines {
            if line == "-" {
                supports.push(Vec::new());
                continue;
            }
            let sup = line
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(Error::Parse(format!("bad support line `{line}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            supports.push(sup);
        }
        if supports.len() != m {
            return Err(Error::Parse(format!("expected {m} columns, found {}", supports.len())));
        }
        RealMatrix01::new(n, s, &supports).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn support_of(x: &[bool]) -> Vec<usize> {
    x.iter().enumerate().filter(|&(_, &b)| b).map(|(i, _)| i).collect()
}

/// `f_M(x)` over GF(2).
pub fn f_m_eval_f2(m: &BitMatrix, x: &[bool]) -> bool {
    assert_eq!(x.len(), m.cols());
    m.select_columns(&support_of(x)).rank() == m.rows()
}

/// `f_M(x)` over ℚ for a 0/1 matrix.
pub fn f_m_eval_real(m: &RealMatrix01, x: &[bool]) -> bool {
    assert_eq!(x.len(), m.m());
    m.rank_of(&support_of(x)) == m.n()
}

/// `f_M(x)` over ℚ for an arbitrary rational matrix.
pub fn f_m_eval_q(m: &QMatrix, x: &[bool]) -> bool {
    assert_eq!(x.len(), m.cols());
    m.select_columns(&support_of(x)).rank() == m.rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn f_m_examples() {
        let id = BitMatrix::identity(2);
        assert!(f_m_eval_f2(&id, &[true, true]));
        assert!(!f_m_eval_f2(&id, &[true, false]));
        let a = QMatrix::from_rows(vec![
            vec![ratio(1, 1), ratio(0, 1), ratio(1, 1)],
            vec![ratio(0, 1), ratio(1, 1), ratio(1, 1)],
        ]);
        assert!(f_m_eval_q(&a, &[false, true, true]));
        assert!(!f_m_eval_q(&a, &[false, false, false]));
        let r = RealMatrix01::new(2, None, &[vec![0], vec![1], vec![0, 1]]).unwrap();
        assert!(f_m_eval_real(&r, &[false, true, true]));
        assert!(!f_m_eval_real(&r, &[false, false, false]));
    }

    #[test]
    fn real_rank_differs_from_f2() {
        // columns 110, 011, 101 are dependent over GF(2) but not over ℚ
        let r = RealMatrix01::new(3, None, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(f_m_eval_real(&r, &[true; 3]));
        assert!(!f_m_eval_f2(&r.to_f2(), &[true; 3]));
    }

    #[test]
    fn text_round_trip() {
        let r = RealMatrix01::new(3, Some(2), &[vec![0, 2], vec![], vec![1]]).unwrap();
        assert_eq!(r.to_text(), "q01 3 3 2\n1 3\n-\n2\n");
        assert_eq!(RealMatrix01::from_text(&r.to_text()).unwrap(), r);
        assert!(RealMatrix01::from_text("q01 3 2 1\n1 2\n3\n").is_err());
        assert!(RealMatrix01::from_text("q01 3 1 -\n4\n").is_err());
        assert!(RealMatrix01::from_text("q01 3 2 -\n1\n").is_err());
    }
}
