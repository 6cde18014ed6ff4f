//! Randomized polynomial identity testing between a circuit and a polynomial.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use crate::poly::Var;
use crate::rng::stream_rng;
use crate::{Circuit, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IdentityVerdict {
    /// No difference found at any sampled point.
    EqualWhp { trials: usize, range: u64 },
    /// The two sides differ at `witness`.
    Unequal { witness: Vec<(Var, i64)> },
}

impl IdentityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, IdentityVerdict::EqualWhp { .. })
    }
}

/// Compares `c` and `p` at `trials` random integer points with coordinates in
/// `[0, 2·deg·trials·n]`, so a nonzero difference of degree `deg` vanishes at
/// one point with probability at most `1/(2·trials)`.
pub fn random_identity_test(c: &Circuit, p: &Poly, trials: usize, seed: u64) -> IdentityVerdict {
    assert!(trials >= 1, "at least one trial");
    let vars: BTreeSet<Var> = c.input_vars().union(&p.variables()).copied().collect();
    let deg = c.formal_degree().max(u64::from(p.total_degree())).max(1);
    let n = vars.len().max(1) as u64;
    let range = 2 * deg * trials as u64 * n;
    let mut rng = stream_rng(seed, 0);
    for _ in 0..trials {
        let pt: HashMap<Var, i64> = vars.iter().map(|&v| (v, rng.gen_range(0..=range as i64))).collect();
        let lift = |v: Var| pt.get(&v).map(|&x| Ratio::from_integer(BigInt::from(x)));
        let lhs = c.eval_with(lift, Rational::clone).expect("all variables assigned");
        let rhs = p.evaluate_with(lift).expect("all variables assigned");
        if lhs != rhs {
            let mut witness: Vec<(Var, i64)> = pt.into_iter().collect();
            witness.sort_unstable();
            return IdentityVerdict::Unequal { witness };
        }
    }
    IdentityVerdict::EqualWhp { trials, range }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    fn sum12() -> Circuit {
        let mut b = CircuitBuilder::new();
        let x1 = b.input(1);
        let x2 = b.input(2);
        let s = b.add(vec![x1, x2]);
        b.finish(s)
    }

    #[test]
    fn identical_sides_agree() {
        let c = sum12();
        let p = c.expand(100).unwrap();
        for seed in 0..20 {
            assert!(random_identity_test(&c, &p, 5, seed).is_equal());
        }
    }

    #[test]
    fn different_sides_produce_a_witness() {
        let c = sum12();
        let p = Poly::var(1);
        match random_identity_test(&c, &p, 10, 1) {
            IdentityVerdict::Unequal { witness } => {
                let x2 = witness.iter().find(|&&(v, _)| v == 2).unwrap().1;
                assert_ne!(x2, 0);
            }
            v => panic!("expected a witness, got {v:?}"),
        }
    }
}
