//! JSON forms of polynomials and circuits.
//!
//! Polynomials: `{"vars": n, "terms": [{"m": [[var, exp], …], "c": "p/q"}]}`.
//! Circuits: `{"output": id, "nodes": [{"id": 0, "op": "in", "var": 3}, …]}`
//! with nodes listed children-first; arithmetic circuits use ops
//! `in`/`const`/`add`/`mul`, Boolean ones `in`/`const`/`and`/`or`.

use serde::{Deserialize, Serialize};

use crate::boolcircuit::{BoolCircuit, BoolGate};
use crate::circuit::{ArithCircuit, Node};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Var};
use crate::scalar::{format_rational, parse_rational};
use crate::{Circuit, Poly};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub m: Vec<(Var, u32)>,
    pub c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    let vars = p.variables().iter().next_back().map_or(0, |&v| v as usize + 1);
    PolyJson {
        vars,
        terms: p.terms().map(|(m, c)| TermJson { m: m.pairs().to_vec(), c: format_rational(c) }).collect(),
    }
}

pub fn poly_from_json(j: &PolyJson) -> Result<Poly> {
    let mut p = Poly::default();
    for t in &j.terms {
        let c = parse_rational(&t.c).ok_or_else(|| Error::Parse(format!("bad coefficient `{}`", t.c)))?;
        if let Some(&(v, _)) = t.m.iter().find(|&&(v, _)| v as usize >= j.vars) {
            return Err(Error::Parse(format!("variable {v} outside the declared {} variables", j.vars)));
        }
        p.add_term(Monomial::from_pairs(t.m.iter().copied()), c);
    }
    Ok(p)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum NodeJson {
    In { id: usize, var: Var },
    Const { id: usize, c: String },
    Add { id: usize, args: Vec<usize> },
    Mul { id: usize, args: Vec<usize> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitJson {
    pub output: usize,
    pub nodes: Vec<NodeJson>,
}

pub fn circuit_to_json(c: &Circuit) -> CircuitJson {
    let nodes = c
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, n)| match n {
            Node::Input(v) => NodeJson::In { id, var: *v },
            Node::Const(x) => NodeJson::Const { id, c: format_rational(x) },
            Node::Add(a) => NodeJson::Add { id, args: a.clone() },
            Node::Mul(a) => NodeJson::Mul { id, args: a.clone() },
        })
        .collect();
    CircuitJson { output: c.output(), nodes }
}

fn check_id(expected: usize, id: usize) -> Result<()> {
    if expected != id {
        return Err(Error::Parse(format!("node {expected} carries id {id}; nodes must be listed in id order")));
    }
    Ok(())
}

pub fn circuit_from_json(j: &CircuitJson) -> Result<Circuit> {
    let mut nodes = Vec::with_capacity(j.nodes.len());
    for (i, n) in j.nodes.iter().enumerate() {
        let node = match n {
            NodeJson::In { id, var } => {
                check_id(i, *id)?;
                Node::Input(*var)
            }
            NodeJson::Const { id, c } => {
                check_id(i, *id)?;
                Node::Const(parse_rational(c).ok_or_else(|| Error::Parse(format!("bad constant `{c}`")))?)
            }
            NodeJson::Add { id, args } => {
                check_id(i, *id)?;
                Node::Add(args.clone())
            }
            NodeJson::Mul { id, args } => {
                check_id(i, *id)?;
                Node::Mul(args.clone())
            }
        };
        nodes.push(node);
    }
    ArithCircuit::from_nodes(nodes, j.output)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum BoolNodeJson {
    In { id: usize, var: Var },
    Const { id: usize, value: bool },
    And { id: usize, args: [usize; 2] },
    Or { id: usize, args: [usize; 2] },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoolCircuitJson {
    pub output: usize,
    pub nodes: Vec<BoolNodeJson>,
}

pub fn bool_circuit_to_json(c: &BoolCircuit) -> BoolCircuitJson {
    let nodes = c
        .gates()
        .iter()
        .enumerate()
        .map(|(id, g)| match *g {
            BoolGate::Input(var) => BoolNodeJson::In { id, var },
            BoolGate::Const(value) => BoolNodeJson::Const { id, value },
            BoolGate::And(a, b) => BoolNodeJson::And { id, args: [a, b] },
            BoolGate::Or(a, b) => BoolNodeJson::Or { id, args: [a, b] },
        })
        .collect();
    BoolCircuitJson { output: c.output(), nodes }
}

pub fn bool_circuit_from_json(j: &BoolCircuitJson) -> Result<BoolCircuit> {
    let mut gates = Vec::with_capacity(j.nodes.len());
    for (i, n) in j.nodes.iter().enumerate() {
        let (id, g) = match *n {
            BoolNodeJson::In { id, var } => (id, BoolGate::Input(var)),
            BoolNodeJson::Const { id, value } => (id, BoolGate::Const(value)),
            BoolNodeJson::And { id, args } => (id, BoolGate::And(args[0], args[1])),
            BoolNodeJson::Or { id, args } => (id, BoolGate::Or(args[0], args[1])),
        };
        check_id(i, id)?;
        gates.push(g);
    }
    BoolCircuit::from_gates(gates, j.output)
}
