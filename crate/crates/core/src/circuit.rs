//! Arithmetic circuits as topologically ordered DAGs with n-ary gates.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::boolcircuit::BoolCircuit;
use crate::error::{Error, Result};
use crate::poly::{SparsePoly, Var};
use crate::scalar::Ring;

pub type NodeId = usize;

/// Default term budget for [`ArithCircuit::expand`].
pub const DEFAULT_TERM_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq)]
pub enum Node<C> {
    Input(Var),
    Const(C),
    Add(Vec<NodeId>),
    Mul(Vec<NodeId>),
}

/// Circuit whose nodes are stored children-first; `nodes[i]` only refers to
/// ids below `i`, which makes every stored circuit acyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithCircuit<C> {
    nodes: Vec<Node<C>>,
    output: NodeId,
}

/// Gate and wire counts. Inputs and constants are leaves, not gates; a wire
/// is one child reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircuitSize {
    pub gates: usize,
    pub wires: usize,
    pub leaves: usize,
    pub depth: usize,
}

/// Incremental constructor.
#[derive(Debug, Clone)]
pub struct CircuitBuilder<C> {
    nodes: Vec<Node<C>>,
}

impl<C: Ring> Default for CircuitBuilder<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Ring> CircuitBuilder<C> {
    pub fn new() -> Self {
        CircuitBuilder { nodes: Vec::new() }
    }

    fn push(&mut self, n: Node<C>) -> NodeId {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    pub fn input(&mut self, v: Var) -> NodeId {
        self.push(Node::Input(v))
    }

    pub fn constant(&mut self, c: C) -> NodeId {
        self.push(Node::Const(c))
    }

    pub fn add(&mut self, children: Vec<NodeId>) -> NodeId {
        assert!(children.iter().all(|&c| c < self.nodes.len()), "child id out of order");
        self.push(Node::Add(children))
    }

    pub fn mul(&mut self, children: Vec<NodeId>) -> NodeId {
        assert!(children.iter().all(|&c| c < self.nodes.len()), "child id out of order");
        self.push(Node::Mul(children))
    }

    pub fn finish(self, output: NodeId) -> ArithCircuit<C> {
        assert!(output < self.nodes.len());
        ArithCircuit { nodes: self.nodes, output }
    }
}

impl<C: Ring> ArithCircuit<C> {
    /// Validates child ordering before accepting a raw node list.
    pub fn from_nodes(nodes: Vec<Node<C>>, output: NodeId) -> Result<Self> {
        if output >= nodes.len() {
            return Err(Error::MalformedCircuit(format!("output {output} out of range")));
        }
        for (i, n) in nodes.iter().enumerate() {
            if let Node::Add(ch) | Node::Mul(ch) = n {
                if let Some(&bad) = ch.iter().find(|&&c| c >= i) {
                    return Err(Error::MalformedCircuit(format!(
                        "node {i} refers to {bad}, which is not an earlier node"
                    )));
                }
            }
        }
        Ok(ArithCircuit { nodes, output })
    }

    pub fn nodes(&self) -> &[Node<C>] {
        &self.nodes
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    fn reachable(&self) -> Vec<bool> {
        let mut live = vec![false; self.nodes.len()];
        live[self.output] = true;
        for i in (0..self.nodes.len()).rev() {
            if !live[i] {
                continue;
            }
            if let Node::Add(ch) | Node::Mul(ch) = &self.nodes[i] {
                for &c in ch {
                    live[c] = true;
                }
            }
        }
        live
    }

    pub fn input_vars(&self) -> BTreeSet<Var> {
        let live = self.reachable();
        self.nodes
            .iter()
            .zip(live)
            .filter_map(|(n, l)| match n {
                Node::Input(v) if l => Some(*v),
                _ => None,
            })
            .collect()
    }

    /// All constants nonnegative.
    pub fn is_monotone(&self) -> bool
    where
        C: PartialOrd,
    {
        self.nodes.iter().all(|n| match n {
            Node::Const(c) => *c >= C::zero(),
            _ => true,
        })
    }

    pub fn size(&self) -> CircuitSize {
        let live = self.reachable();
        let mut depth = vec![0usize; self.nodes.len()];
        let (mut gates, mut wires, mut leaves) = (0, 0, 0);
        for (i, n) in self.nodes.iter().enumerate() {
            if !live[i] {
                continue;
            }
            match n {
                Node::Input(_) | Node::Const(_) => leaves += 1,
                Node::Add(ch) | Node::Mul(ch) => {
                    gates += 1;
                    wires += ch.len();
                    depth[i] = 1 + ch.iter().map(|&c| depth[c]).max().unwrap_or(0);
                }
            }
        }
        CircuitSize { gates, wires, leaves, depth: depth[self.output] }
    }

    /// Formal degree: sums over products, maxima over sums.
    pub fn formal_degree(&self) -> u64 {
        let mut deg = vec![0u64; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            deg[i] = match n {
                Node::Input(_) => 1,
                Node::Const(_) => 0,
                Node::Add(ch) => ch.iter().map(|&c| deg[c]).max().unwrap_or(0),
                Node::Mul(ch) => ch.iter().map(|&c| deg[c]).sum(),
            };
        }
        deg[self.output]
    }

    /// Evaluates over any ring `T`, mapping constants with `lift`.
    pub fn eval_with<T: Ring>(
        &self,
        value: impl Fn(Var) -> Option<T>,
        lift: impl Fn(&C) -> T,
    ) -> Result<T> {
        let live = self.reachable();
        let mut vals: Vec<Option<T>> = vec![None; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if !live[i] {
                continue;
            }
            let v = match n {
                Node::Input(x) => value(*x).ok_or(Error::MissingVariable(*x))?,
                Node::Const(c) => lift(c),
                Node::Add(ch) => ch.iter().fold(T::zero(), |acc, &c| {
                    acc + vals[c].clone().expect("children evaluated first")
                }),
                Node::Mul(ch) => ch.iter().fold(T::one(), |acc, &c| {
                    acc * vals[c].clone().expect("children evaluated first")
                }),
            };
            vals[i] = Some(v);
        }
        Ok(vals[self.output].take().expect("output is live"))
    }

    /// Exact value of the computed polynomial at `assignment`.
    pub fn eval(&self, assignment: &HashMap<Var, C>) -> Result<C> {
        self.eval_with(|v| assignment.get(&v).cloned(), C::clone)
    }

    /// Expands into a sparse polynomial, failing once any intermediate
    /// polynomial holds more than `term_cap` terms.
    pub fn expand(&self, term_cap: usize) -> Result<SparsePoly<C>> {
        let live = self.reachable();
        let mut polys: Vec<Option<SparsePoly<C>>> = vec![None; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if !live[i] {
                continue;
            }
            let p = match n {
                Node::Input(v) => SparsePoly::var(*v),
                Node::Const(c) => SparsePoly::constant(c.clone()),
                Node::Add(ch) => {
                    let mut acc = SparsePoly::zero();
                    for &c in ch {
                        acc += polys[c].as_ref().expect("children expanded first");
                        if acc.num_terms() > term_cap {
                            return Err(Error::TermBudgetExceeded(term_cap));
                        }
                    }
                    acc
                }
                Node::Mul(ch) => {
                    let mut acc = SparsePoly::one();
                    for &c in ch {
                        acc = acc.mul_capped(polys[c].as_ref().expect("children expanded first"), term_cap)?;
                    }
                    acc
                }
            };
            if p.num_terms() > term_cap {
                return Err(Error::TermBudgetExceeded(term_cap));
            }
            polys[i] = Some(p);
        }
        Ok(polys[self.output].take().expect("output is live"))
    }

    /// Replaces sums by OR and products by AND. Positive constants become
    /// `true`, zero constants `false`. N-ary gates are split into left-leaning
    /// chains of fan-in 2; an empty sum is `false` and an empty product `true`.
    pub fn booleanize(&self) -> Result<BoolCircuit>
    where
        C: PartialOrd,
    {
        if !self.is_monotone() {
            return Err(Error::NotMonotone);
        }
        let mut b = BoolCircuit::builder();
        let mut map = vec![usize::MAX; self.nodes.len()];
        let live = self.reachable();
        for (i, n) in self.nodes.iter().enumerate() {
            if !live[i] {
                continue;
            }
            map[i] = match n {
                Node::Input(v) => b.input(*v),
                Node::Const(c) => b.constant(!c.is_zero()),
                Node::Add(ch) => fold_gate(&mut b, ch, &map, false),
                Node::Mul(ch) => fold_gate(&mut b, ch, &map, true),
            };
        }
        Ok(b.finish(map[self.output]))
    }
}

fn fold_gate(b: &mut crate::boolcircuit::BoolBuilder, ch: &[NodeId], map: &[usize], and: bool) -> usize {
    let mut it = ch.iter().map(|&c| map[c]);
    let Some(first) = it.next() else {
        return b.constant(and);
    };
    it.fold(first, |acc, x| if and { b.and(acc, x) } else { b.or(acc, x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::{Circuit, Rational};

    fn point(vals: &[(Var, i64)]) -> HashMap<Var, Rational> {
        vals.iter().map(|&(v, x)| (v, ratio(x, 1))).collect()
    }

    // x1*x2 + x3
    fn sample() -> Circuit {
        let mut b = CircuitBuilder::new();
        let x1 = b.input(1);
        let x2 = b.input(2);
        let x3 = b.input(3);
        let p = b.mul(vec![x1, x2]);
        let s = b.add(vec![p, x3]);
        b.finish(s)
    }

    fn square_of_sum() -> Circuit {
        let mut b = CircuitBuilder::new();
        let x1 = b.input(1);
        let x2 = b.input(2);
        let s = b.add(vec![x1, x2]);
        let sq = b.mul(vec![s, s]);
        b.finish(sq)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(sample().eval(&point(&[(1, 1), (2, 1), (3, 0)])).unwrap(), ratio(1, 1));
        assert_eq!(square_of_sum().eval(&point(&[(1, 1), (2, 1)])).unwrap(), ratio(4, 1));
        assert_eq!(sample().eval(&point(&[(1, 1), (2, 1)])), Err(Error::MissingVariable(3)));
    }

    #[test]
    fn expand_examples() {
        let e = square_of_sum().expand(100).unwrap();
        let x = |v| crate::Poly::var(v);
        let expected = &(&x(1) * &x(1)) + &(&(&x(1) * &x(2)).scale(&ratio(2, 1)) + &(&x(2) * &x(2)));
        assert_eq!(e, expected);

        let mut b = CircuitBuilder::new();
        let i = b.input(1);
        let single = b.finish(i);
        assert_eq!(single.expand(10).unwrap(), x(1));

        let mut b = CircuitBuilder::new();
        let c = b.constant(ratio(-2, 1));
        let i = b.input(1);
        let m = b.mul(vec![c, i]);
        let neg = b.finish(m);
        assert_eq!(neg.expand(10).unwrap(), x(1).scale(&ratio(-2, 1)));
        assert!(!neg.is_monotone());
        assert_eq!(neg.booleanize().unwrap_err(), Error::NotMonotone);
    }

    #[test]
    fn expansion_budget() {
        assert_eq!(square_of_sum().expand(2), Err(Error::TermBudgetExceeded(2)));
    }

    #[test]
    fn booleanize_examples() {
        let bc = sample().booleanize().unwrap();
        for x in 0u64..8 {
            let bits = |i: u32| x >> (i - 1) & 1 == 1;
            assert_eq!(bc.eval_fn(&bits), (bits(1) && bits(2)) || bits(3));
        }
        let mut b = CircuitBuilder::<Rational>::new();
        let z = b.constant(ratio(0, 1));
        let zero = b.finish(z).booleanize().unwrap();
        assert!(!zero.eval_fn(|_| true));
    }

    #[test]
    fn size_counts_wires_and_gates() {
        let s = sample().size();
        assert_eq!(s, CircuitSize { gates: 2, wires: 4, leaves: 3, depth: 2 });
        assert_eq!(sample().formal_degree(), 2);
    }

    #[test]
    fn out_of_order_nodes_rejected() {
        let nodes = vec![Node::Add(vec![1]), Node::Input(0)];
        assert!(matches!(Circuit::from_nodes(nodes, 0), Err(Error::MalformedCircuit(_))));
    }
}
