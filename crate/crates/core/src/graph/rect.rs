//! Rectangles over a ground set, cover verification, and the balanced
//! monotone pair decomposition check.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Var, VarPartition};
use crate::Poly;

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &i| acc | 1 << i)
}

fn set_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `{S ∪ T : S ∈ fam_y, T ∈ fam_z}` over the partition `(y, z)` of `[n]`.
/// Elements are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub n: usize,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub fam_y: Vec<Vec<usize>>,
    pub fam_z: Vec<Vec<usize>>,
}

impl Rectangle {
    pub fn new(n: usize, y: Vec<usize>, z: Vec<usize>, fam_y: Vec<Vec<usize>>, fam_z: Vec<Vec<usize>>) -> Result<Self> {
        let r = Rectangle { n, y, z, fam_y, fam_z };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > 64 {
            return Err(Error::InvalidArgument("rectangles limited to n <= 64".into()));
        }
        let (ym, zm) = (mask_of(&self.y), mask_of(&self.z));
        let full = if self.n == 64 { u64::MAX } else { (1 << self.n) - 1 };
        if ym & zm != 0 || ym | zm != full || self.y.iter().chain(&self.z).any(|&i| i >= self.n) {
            return Err(Error::InvalidArgument("(Y, Z) is not a partition of the ground set".into()));
        }
        if self.fam_y.iter().any(|s| mask_of(s) & !ym != 0) || self.fam_z.iter().any(|s| mask_of(s) & !zm != 0) {
            return Err(Error::InvalidArgument("family member outside its side of the partition".into()));
        }
        Ok(())
    }

    /// `|Y|, |Z| ∈ [n/3, 2n/3)`.
    pub fn balanced(&self) -> bool {
        let ok = |s: usize| 3 * s >= self.n && 3 * s < 2 * self.n;
        ok(self.y.len()) && ok(self.z.len())
    }

    pub fn generated(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for s in &self.fam_y {
            for t in &self.fam_z {
                out.insert(mask_of(s) | mask_of(t));
            }
        }
        out
    }

    pub fn contains(&self, set: u64) -> bool {
        let (ym, zm) = (mask_of(&self.y), mask_of(&self.z));
        self.fam_y.iter().any(|s| mask_of(s) == set & ym) && self.fam_z.iter().any(|t| mask_of(t) == set & zm)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub covered: bool,
    pub balanced_all: bool,
    /// Least set (as a bitmask) in the symmetric difference.
    pub witness: Option<Vec<usize>>,
}

/// Whether the rectangles generate exactly `f_ones` (sets as bitmasks).
pub fn verify_rectangle_cover(rects: &[Rectangle], f_ones: &[u64]) -> CoverReport {
    let union: BTreeSet<u64> = rects.iter().flat_map(Rectangle::generated).collect();
    let target: BTreeSet<u64> = f_ones.iter().copied().collect();
    let witness = union.symmetric_difference(&target).next().map(|&m| set_of(m));
    CoverReport { covered: witness.is_none(), balanced_all: rects.iter().all(Rectangle::balanced), witness }
}

/// Vertices `u` with `x_{u,1}` in a selector monomial of `P_G`.
pub fn assignment(m: &Monomial) -> u64 {
    m.vars().filter(|&v| v % 2 == 1).fold(0, |acc, v| acc | 1 << (v / 2))
}

#[derive(Debug, Clone)]
pub struct MonotonePair {
    pub g: Poly,
    pub h: Poly,
    pub y: Vec<Var>,
    pub z: Vec<Var>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub ok: bool,
    pub failed_clause: Option<String>,
    pub pair: Option<usize>,
}

impl PairReport {
    fn fail(clause: &str, pair: Option<usize>) -> Self {
        PairReport { ok: false, failed_clause: Some(clause.into()), pair }
    }
}

/// Checks each pair for partition refinement, variable sides, monotonicity,
/// block balance and support containment, then that the products sum to `p`.
pub fn verify_pair_decomposition(p: &Poly, pairs: &[MonotonePair], part: &VarPartition) -> PairReport {
    if !p.is_set_multilinear(part) {
        return PairReport::fail("precondition", None);
    }
    let universe = part.universe();
    let blocks = part.blocks().len();
    let support: HashSet<&Monomial> = p.support().collect();
    let mut sum = Poly::default();
    for (i, pr) in pairs.iter().enumerate() {
        let (y, z): (BTreeSet<Var>, BTreeSet<Var>) = (pr.y.iter().copied().collect(), pr.z.iter().copied().collect());
        let refines = part.blocks().iter().all(|b| b.iter().all(|v| y.contains(v)) || b.iter().all(|v| z.contains(v)));
        if !y.is_disjoint(&z) || y.union(&z).copied().collect::<BTreeSet<_>>() != universe || !refines {
            return PairReport::fail("partition", Some(i));
        }
        if !pr.g.variables().is_subset(&y) || !pr.h.variables().is_subset(&z) {
            return PairReport::fail("variables", Some(i));
        }
        if !pr.g.is_monotone() || !pr.h.is_monotone() {
            return PairReport::fail("monotonicity", Some(i));
        }
        let in_y = part.blocks().iter().filter(|b| b.first().is_some_and(|v| y.contains(v))).count();
        let ok = |c: usize| 3 * c >= blocks && 3 * c < 2 * blocks;
        if !ok(in_y) || !ok(blocks - in_y) {
            return PairReport::fail("balance", Some(i));
        }
        let prod = &pr.g * &pr.h;
        if prod.support().any(|m| !support.contains(m)) {
            return PairReport::fail("support containment", Some(i));
        }
        sum += &prod;
    }
    if sum != *p {
        return PairReport::fail("sum", None);
    }
    PairReport { ok: true, failed_clause: None, pair: None }
}
