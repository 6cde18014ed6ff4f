//! Monotone Boolean circuits with fan-in-2 AND/OR gates.

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Var;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolGate {
    Input(Var),
    Const(bool),
    And(usize, usize),
    Or(usize, usize),
}

/// Gates stored children-first; negation is not representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolCircuit {
    gates: Vec<BoolGate>,
    output: usize,
}

#[derive(Debug, Default)]
pub struct BoolBuilder {
    gates: Vec<BoolGate>,
}

impl BoolBuilder {
    fn push(&mut self, g: BoolGate) -> usize {
        self.gates.push(g);
        self.gates.len() - 1
    }

    pub fn input(&mut self, v: Var) -> usize {
        self.push(BoolGate::Input(v))
    }

    pub fn constant(&mut self, b: bool) -> usize {
        self.push(BoolGate::Const(b))
    }

    pub fn and(&mut self, a: usize, b: usize) -> usize {
        assert!(a < self.gates.len() && b < self.gates.len());
        self.push(BoolGate::And(a, b))
    }

    pub fn or(&mut self, a: usize, b: usize) -> usize {
        assert!(a < self.gates.len() && b < self.gates.len());
        self.push(BoolGate::Or(a, b))
    }

    pub fn finish(self, output: usize) -> BoolCircuit {
        assert!(output < self.gates.len());
        BoolCircuit { gates: self.gates, output }
    }
}

impl BoolCircuit {
    pub fn builder() -> BoolBuilder {
        BoolBuilder::default()
    }

    pub fn from_gates(gates: Vec<BoolGate>, output: usize) -> Result<Self> {
        if output >= gates.len() {
            return Err(Error::MalformedCircuit(format!("output {output} out of range")));
        }
        for (i, g) in gates.iter().enumerate() {
            if let BoolGate::And(a, b) | BoolGate::Or(a, b) = *g {
                if a >= i || b >= i {
                    return Err(Error::MalformedCircuit(format!("gate {i} refers forward")));
                }
            }
        }
        Ok(BoolCircuit { gates, output })
    }

    pub fn gates(&self) -> &[BoolGate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Number of AND/OR gates.
    pub fn size(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, BoolGate::And(..) | BoolGate::Or(..))).count()
    }

    pub fn num_vars(&self) -> usize {
        self.gates
            .iter()
            .filter_map(|g| match g {
                BoolGate::Input(v) => Some(*v as usize + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Values of every gate on one input.
    pub fn eval_all(&self, value: impl Fn(Var) -> bool) -> Vec<bool> {
        let mut vals = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                BoolGate::Input(x) => value(x),
                BoolGate::Const(b) => b,
                BoolGate::And(a, b) => vals[a] && vals[b],
                BoolGate::Or(a, b) => vals[a] || vals[b],
            };
            vals.push(v);
        }
        vals
    }

    pub fn eval_fn(&self, value: impl Fn(Var) -> bool) -> bool {
        self.eval_all(value)[self.output]
    }

    /// Evaluates on a bitmask input (bit `i` is variable `i`).
    pub fn eval_mask(&self, x: u64) -> bool {
        self.eval_fn(|v| x >> v & 1 == 1)
    }

    /// DNF circuit from a list of terms: OR of ANDs of inputs.
    pub fn from_dnf(terms: &[Vec<Var>]) -> Self {
        let mut b = Self::builder();
        let mut ors: Option<usize> = None;
        for t in terms {
            let mut acc: Option<usize> = None;
            for &v in t {
                let x = b.input(v);
                acc = Some(match acc {
                    None => x,
                    Some(a) => b.and(a, x),
                });
            }
            let term = acc.unwrap_or_else(|| b.constant(true));
            ors = Some(match ors {
                None => term,
                Some(o) => b.or(o, term),
            });
        }
        let out = ors.unwrap_or_else(|| b.constant(false));
        b.finish(out)
    }

    /// Random monotone circuit over `n` variables with `gates` binary gates.
    pub fn random<R: Rng>(n: u32, gates: usize, rng: &mut R) -> Self {
        let mut b = Self::builder();
        for v in 0..n {
            b.input(v);
        }
        for _ in 0..gates {
            let len = b.gates.len();
            let x = rng.gen_range(0..len);
            let y = rng.gen_range(0..len);
            if rng.gen_bool(0.5) {
                b.and(x, y);
            } else {
                b.or(x, y);
            }
        }
        let out = b.gates.len() - 1;
        b.finish(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dnf_circuit_matches_terms() {
        let c = BoolCircuit::from_dnf(&[vec![0, 1], vec![2]]);
        for x in 0u64..8 {
            let expect = (x & 3 == 3) || (x & 4 != 0);
            assert_eq!(c.eval_mask(x), expect);
        }
        assert!(!BoolCircuit::from_dnf(&[]).eval_mask(7));
        assert!(BoolCircuit::from_dnf(&[vec![]]).eval_mask(0));
    }

    #[test]
    fn rejects_forward_references() {
        assert!(BoolCircuit::from_gates(vec![BoolGate::And(0, 1), BoolGate::Input(0)], 0).is_err());
    }

    #[test]
    fn monotone_by_construction() {
        let mut rng = crate::rng::stream_rng(3, 0);
        for _ in 0..20 {
            let c = BoolCircuit::random(6, 12, &mut rng);
            for x in 0u64..64 {
                for i in 0..6 {
                    if c.eval_mask(x) {
                        assert!(c.eval_mask(x | 1 << i));
                    }
                }
            }
        }
    }
}
