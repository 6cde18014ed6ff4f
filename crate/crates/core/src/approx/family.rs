//! Set families over `[n]` read as monotone DNFs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;

/// Deduplicated sets stored as bitmasks, sorted by size and then mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    sets: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetFamilyJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &i| acc | 1 << i)
}

pub fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn sort_key(m: &u64) -> (u32, u64) {
    (m.count_ones(), *m)
}

impl SetFamily {
    pub fn new(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::InvalidArgument(format!("ground set larger than {MAX_GROUND}")));
        }
        if let Some(&bad) = sets.iter().flatten().find(|&&i| i >= n) {
            return Err(Error::InvalidArgument(format!("element {bad} outside [0,{n})")));
        }
        Ok(Self::from_masks(n, sets.iter().map(|s| mask_of(s))))
    }

    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        let mut sets: Vec<u64> = masks.into_iter().collect();
        sets.sort_by_key(sort_key);
        sets.dedup();
        SetFamily { n, sets }
    }

    pub fn empty(n: usize) -> Self {
        SetFamily { n, sets: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[u64] {
        &self.sets
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&m| elements(m)).collect()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn width(&self) -> usize {
        self.sets.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn slice(&self, size: usize) -> Vec<u64> {
        self.sets.iter().copied().filter(|m| m.count_ones() as usize == size).collect()
    }

    /// Whether `|{S : |S| = ℓ}| ≤ r^ℓ` for every `ℓ ≥ 1`.
    pub fn is_r_small(&self, r: usize) -> bool {
        (1..=self.width()).all(|l| {
            let bound = (r as u128).checked_pow(l as u32).unwrap_or(u128::MAX);
            self.slice(l).len() as u128 <= bound
        })
    }

    /// OR over sets of the AND of their variables; `∅` is constant 1.
    pub fn eval(&self, x: u64) -> bool {
        self.sets.iter().any(|&s| s & !x == 0)
    }

    /// Drops sets that contain another member; the function is unchanged.
    pub fn minimal(&self) -> SetFamily {
        let keep = self
            .sets
            .iter()
            .enumerate()
            .filter(|&(i, &s)| !self.sets[..i].iter().any(|&t| t & !s == 0))
            .map(|(_, &s)| s);
        SetFamily::from_masks(self.n, keep.collect::<Vec<_>>())
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        SetFamily::from_masks(self.n.max(other.n), self.sets.iter().chain(&other.sets).copied().collect::<Vec<_>>())
    }

    /// `{S ∪ T}` over all pairs.
    pub fn join(&self, other: &SetFamily) -> SetFamily {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &s in &self.sets {
            for &t in &other.sets {
                out.push(s | t);
            }
        }
        SetFamily::from_masks(self.n.max(other.n), out)
    }

    pub fn truncate_width(&self, w: usize) -> SetFamily {
        SetFamily { n: self.n, sets: self.sets.iter().copied().filter(|m| m.count_ones() as usize <= w).collect() }
    }

    pub fn to_json(&self) -> SetFamilyJson {
        SetFamilyJson { n: self.n, sets: self.sets() }
    }

    pub fn from_json(j: &SetFamilyJson) -> Result<Self> {
        Self::new(j.n, &j.sets)
    }
}

/// `⌈𝒮⌉(x)` for a Boolean vector of length `n`.
pub fn dnf_eval(fam: &SetFamily, x: &[bool]) -> Result<bool> {
    if x.len() != fam.n() {
        return Err(Error::InvalidArgument(format!("input length {} differs from n = {}", x.len(), fam.n())));
    }
    Ok(fam.eval(mask_of(&(0..x.len()).filter(|&i| x[i]).collect::<Vec<_>>())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dnf_examples() {
        let one = SetFamily::new(3, &[vec![]]).unwrap();
        assert!((0..8).all(|x| one.eval(x)));
        let f = SetFamily::new(2, &[vec![0], vec![1]]).unwrap();
        assert!(dnf_eval(&f, &[false, true]).unwrap());
        assert!(!dnf_eval(&f, &[false, false]).unwrap());
        assert!(dnf_eval(&f, &[true]).is_err());
        let zero = SetFamily::empty(3);
        assert!((0..8).all(|x| !zero.eval(x)));
    }

    #[test]
    fn shape() {
        let f = SetFamily::new(4, &[vec![0, 1], vec![1, 0], vec![2], vec![0, 1, 3]]).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.width(), 3);
        assert_eq!(f.sets(), vec![vec![2], vec![0, 1], vec![0, 1, 3]]);
        assert!(f.is_r_small(1));
        assert_eq!(f.minimal().sets(), vec![vec![2], vec![0, 1]]);
        let g = SetFamily::new(4, &[vec![0], vec![1]]).unwrap();
        assert!(!g.is_r_small(1) && g.is_r_small(2));
        assert_eq!(g.join(&g).sets(), vec![vec![0], vec![1], vec![0, 1]]);
        assert!(SetFamily::new(2, &[vec![2]]).is_err());
    }
}
