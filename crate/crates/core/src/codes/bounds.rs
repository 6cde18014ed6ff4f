//! Closed-form lower-bound formulas and parameter choices for codes.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CodeSizeBound {
    pub n: f64,
    pub m: f64,
    pub d: f64,
    pub t: f64,
    pub b: f64,
    /// `d / (n·√t)`.
    pub base: f64,
    /// `√t / (b·log₂ m)`.
    pub exponent: f64,
    pub value: f64,
    /// Whether `2n < d`.
    pub precondition: bool,
    /// Whether the bound is at most 1.
    pub vacuous: bool,
}

/// `(d/(n√t))^{√t/(b·log₂ m)}` with the hidden constant set to 1.
pub fn code_size_bound(n: f64, m: f64, d: f64, t: f64, b: f64) -> CodeSizeBound {
    let base = d / (n * t.sqrt());
    let exponent = t.sqrt() / (b * m.log2());
    let value = base.powf(exponent);
    CodeSizeBound { n, m, d, t, b, base, exponent, value, precondition: 2.0 * n < d, vacuous: value <= 1.0 }
}

#[derive(Debug, Clone, Serialize)]
pub struct Main4Params {
    pub n: u64,
    /// `⌈n^{3/2}·(log₂ n)²⌉`.
    pub m: u64,
    /// `⌈log₂ m⌉`.
    pub l: u32,
}

pub fn main4_params(n: u64) -> Main4Params {
    let nf = n as f64;
    let m = (nf.powf(1.5) * nf.log2().powi(2)).ceil() as u64;
    let l = if m <= 1 { 0 } else { 64 - (m - 1).leading_zeros() };
    Main4Params { n, m, l }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = code_size_bound(10.0, 1000.0, 100.0, 100.0, 10.0);
        assert_eq!(b.base, 1.0);
        assert_eq!(b.value, 1.0);
        assert!(b.vacuous);

        let b = code_size_bound(10.0, 1000.0, 500.0, 100.0, 10.0);
        // 5^(10 / (10·log₂ 1000)) = exp(ln 5 · ln 2 / ln 1000)
        let expect = (5f64.ln() * 2f64.ln() / 1000f64.ln()).exp();
        assert!((b.value - expect).abs() < 1e-12);
        assert!(b.precondition && !b.vacuous);
    }

    #[test]
    fn main4() {
        let p = main4_params(16);
        assert_eq!(p.m, 1024);
        assert_eq!(p.l, 10);
        assert_eq!(main4_params(4).l, 5); // m = 32
    }
}
