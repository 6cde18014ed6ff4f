//! Reading input files and distribution specifications.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use monoforge_core::approx::{DistSpec, SetFamily, SetFamilyJson};
use monoforge_core::boolcircuit::BoolCircuit;
use monoforge_core::f2::BitMatrix;
use monoforge_core::graph::{corpus_graph, Graph};
use monoforge_core::io::{bool_circuit_from_json, circuit_from_json, poly_from_json, BoolCircuitJson, CircuitJson, PolyJson};
use monoforge_core::rank::RealMatrix01;
use monoforge_core::{Circuit, Poly};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::args::GraphArgs;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn graph(a: &GraphArgs) -> Result<Graph> {
    match (&a.graph, &a.named) {
        (Some(p), _) => Graph::from_text(&read(p)?).with_context(|| format!("parsing {}", p.display())),
        (None, Some(name)) => corpus_graph(name).ok_or_else(|| anyhow!("unknown graph `{name}`")),
        (None, None) => bail!("give --graph FILE or --named NAME"),
    }
}

pub fn bit_matrix(path: &Path) -> Result<BitMatrix> {
    BitMatrix::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn real_matrix(path: &Path) -> Result<RealMatrix01> {
    RealMatrix01::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn circuit(path: &Path) -> Result<Circuit> {
    Ok(circuit_from_json(&read_json::<CircuitJson>(path)?)?)
}

pub fn poly(path: &Path) -> Result<Poly> {
    Ok(poly_from_json(&read_json::<PolyJson>(path)?)?)
}

pub fn bool_circuit(path: &Path) -> Result<BoolCircuit> {
    Ok(bool_circuit_from_json(&read_json::<BoolCircuitJson>(path)?)?)
}

pub fn family(path: &Path) -> Result<SetFamily> {
    Ok(SetFamily::from_json(&read_json::<SetFamilyJson>(path)?)?)
}

/// 0/1 string, least significant coordinate first.
pub fn bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(anyhow!("`{s}` is not a 0/1 string")),
        })
        .collect()
}

#[derive(Deserialize)]
struct ExplicitJson {
    n: usize,
    /// `[point, weight]` pairs; points as 0/1 strings.
    points: Vec<(String, u128)>,
}

fn mask(b: &[bool]) -> u64 {
    b.iter().enumerate().fold(0, |acc, (i, &x)| acc | u64::from(x) << i)
}

/// Parses `cube`, `weight:W`, `biased:P/Q`, `point:BITS`, `explicit:FILE`,
/// `d0f2:FILE` or `d0real:FILE` over `n` coordinates.
pub fn dist(spec: &str, n: usize) -> Result<DistSpec> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let d = match kind {
        "cube" => DistSpec::uniform_cube(n)?,
        "weight" => DistSpec::uniform_weight(n, arg.parse().with_context(|| format!("bad weight in `{spec}`"))?)?,
        "biased" => {
            let (p, q) = arg.split_once('/').ok_or_else(|| anyhow!("biased needs P/Q"))?;
            let (p, q): (u128, u128) = (p.parse()?, q.parse()?);
            if p > q || q == 0 || n > 20 {
                bail!("biased:P/Q needs 0 <= P <= Q, Q > 0 and n <= 20");
            }
            let pts = (0..1u64 << n).map(|x| {
                let k = x.count_ones();
                (x, p.pow(k) * (q - p).pow(n as u32 - k))
            });
            DistSpec::explicit(n, pts)?
        }
        "point" => {
            let b = bits(arg)?;
            if b.len() != n {
                bail!("point has {} coordinates, expected {n}", b.len());
            }
            DistSpec::point_mass(n, mask(&b))?
        }
        "explicit" => {
            let j: ExplicitJson = read_json(Path::new(arg))?;
            let pts = j.points.iter().map(|(p, w)| bits(p).map(|b| (mask(&b), *w))).collect::<Result<Vec<_>>>()?;
            DistSpec::explicit(j.n, pts)?
        }
        "d0f2" => DistSpec::d0_f2(&bit_matrix(Path::new(arg))?)?,
        "d0real" => DistSpec::d0_real(&real_matrix(Path::new(arg))?)?,
        _ => bail!("unknown distribution `{spec}`"),
    };
    if d.n() != n {
        bail!("distribution `{spec}` has {} coordinates, expected {n}", d.n());
    }
    Ok(d)
}
