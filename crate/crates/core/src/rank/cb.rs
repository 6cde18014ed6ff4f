//! The Cauchy–Binet polynomial `Σ_{|S|=n} det(A[S])² ∏_{i∈S} x_i`, computed
//! both from subset determinants and as `det(A·diag(x)·Aᵀ)`.

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::f_m_eval_q;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Monomial, Var};
use crate::{Poly, QMatrix, Rational};

pub const CB_ROWS_LIMIT: usize = 6;
pub const CB_COLS_LIMIT: usize = 14;

#[derive(Debug, Clone)]
pub struct CbReport {
    pub n: usize,
    pub m: usize,
    pub p_direct: Poly,
    pub p_det: Poly,
    pub equal: bool,
    pub nonnegative: bool,
    /// `P(1_S) > 0 ⇔ f_A(1_S) = 1` for every `S ⊆ [m]`.
    pub positivity: bool,
}

fn p_direct(a: &QMatrix) -> Poly {
    let mut p = Poly::zero();
    for set in (0..a.cols()).combinations(a.rows()) {
        let d = a.select_columns(&set).det_bareiss();
        if !d.is_zero() {
            p.add_term(Monomial::from_vars(set.iter().map(|&i| i as Var)), &d * &d);
        }
    }
    p
}

fn p_det(a: &QMatrix) -> Poly {
    let n = a.rows();
    let gram = Matrix::from_fn(n, n, |i, j| {
        let mut e = Poly::zero();
        for l in 0..a.cols() {
            let c = &a[(i, l)] * &a[(j, l)];
            if !c.is_zero() {
                e.add_term(Monomial::var(l as Var), c);
            }
        }
        e
    });
    gram.det_division_free()
}

pub fn cauchy_binet_poly(a: &QMatrix) -> Result<CbReport> {
    let (n, m) = (a.rows(), a.cols());
    if n > CB_ROWS_LIMIT || m > CB_COLS_LIMIT {
        return Err(Error::EnumerationTooLarge {
            what: format!("Cauchy–Binet expansion of a {n}×{m} matrix"),
            limit: format!("{CB_ROWS_LIMIT}×{CB_COLS_LIMIT}"),
        });
    }
    let direct = p_direct(a);
    let det = p_det(a);
    let masks: Vec<(u32, Rational)> =
        direct.terms().map(|(mono, c)| (mono.vars().fold(0u32, |acc, v| acc | 1 << v), c.clone())).collect();
    let positivity = (0u32..1 << m).all(|s| {
        let value: Rational = masks.iter().filter(|(mask, _)| mask & !s == 0).map(|(_, c)| c.clone()).sum();
        let x: Vec<bool> = (0..m).map(|i| s >> i & 1 == 1).collect();
        value.is_positive() == f_m_eval_q(a, &x)
    });
    let nonnegative = direct.terms().all(|(_, c)| !c.is_negative());
    Ok(CbReport {
        n,
        m,
        equal: direct == det,
        nonnegative,
        p_direct: direct,
        p_det: det,
        positivity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn two_by_three() {
        let a = QMatrix::from_rows(vec![
            vec![ratio(1, 1), ratio(0, 1), ratio(1, 1)],
            vec![ratio(0, 1), ratio(1, 1), ratio(1, 1)],
        ]);
        let r = cauchy_binet_poly(&a).unwrap();
        let expect = Poly::from_terms([
            (Monomial::from_vars([0, 1]), ratio(1, 1)),
            (Monomial::from_vars([0, 2]), ratio(1, 1)),
            (Monomial::from_vars([1, 2]), ratio(1, 1)),
        ]);
        assert_eq!(r.p_direct, expect);
        assert!(r.equal && r.positivity && r.nonnegative);
    }

    #[test]
    fn wide_matrix_has_zero_polynomial() {
        let a = QMatrix::from_rows(vec![vec![ratio(1, 1)], vec![ratio(2, 1)]]);
        let r = cauchy_binet_poly(&a).unwrap();
        assert!(r.p_direct.is_zero() && r.p_det.is_zero() && r.positivity);
    }
}
