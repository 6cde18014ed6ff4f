//! Sparse multivariate polynomials over a generic coefficient ring.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Variable identifier.
pub type Var = u32;

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats and
    /// dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Product of distinct variables, each to the first power.
    pub fn from_vars(vars: impl IntoIterator<Item = Var>) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: canonical map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Default for SparsePoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> SparsePoly<C> {
    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m`, removing the entry if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Product with a bound on the number of stored terms.
    pub fn mul_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
            if out.terms.len() > cap {
                return Err(Error::TermBudgetExceeded(cap));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())))
    }

    /// Evaluates at a point given by `value(var)`.
    pub fn evaluate_with(&self, value: impl Fn(Var) -> Option<C>) -> Result<C> {
        let mut acc = C::zero();
        let mut cache: HashMap<Var, C> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or(Error::MissingVariable(v))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &HashMap<Var, C>) -> Result<C> {
        self.evaluate_with(|v| point.get(&v).cloned())
    }

    /// Replaces every variable by a polynomial. Variables missing from `map`
    /// are an error.
    pub fn substitute(&self, map: &HashMap<Var, SparsePoly<C>>, cap: usize) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for &(v, e) in m.pairs() {
                let image = map.get(&v).ok_or(Error::MissingVariable(v))?;
                for _ in 0..e {
                    t = t.mul_capped(image, cap)?;
                }
            }
            out = out + t;
            if out.num_terms() > cap {
                return Err(Error::TermBudgetExceeded(cap));
            }
        }
        Ok(out)
    }

    /// Every coefficient nonnegative.
    pub fn is_monotone(&self) -> bool
    where
        C: PartialOrd,
    {
        self.terms.values().all(|c| *c >= C::zero())
    }

    /// True iff every monomial takes exactly one variable, to the first power,
    /// from every block of `part`, and no variable outside the partition.
    pub fn is_set_multilinear(&self, part: &VarPartition) -> bool {
        let block_of = part.block_index();
        self.terms.keys().all(|m| {
            let mut hits = vec![0u32; part.blocks().len()];
            for &(v, e) in m.pairs() {
                match block_of.get(&v) {
                    Some(&b) if e == 1 => hits[b] += 1,
                    _ => return false,
                }
            }
            hits.iter().all(|&h| h == 1)
        })
    }
}

/// Structural equality of canonical term maps.
pub fn poly_equal<C: Ring>(p: &SparsePoly<C>, q: &SparsePoly<C>) -> bool {
    p == q
}

impl<C: Ring> Zero for SparsePoly<C> {
    fn zero() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for SparsePoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> AddAssign<&SparsePoly<C>> for SparsePoly<C> {
    fn add_assign(&mut self, rhs: &SparsePoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Ring> Add for SparsePoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        if self.terms.len() < rhs.terms.len() {
            let mut r = rhs;
            r += &self;
            return r;
        }
        self += &rhs;
        self
    }
}

impl<C: Ring> Add for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn add(self, rhs: Self) -> SparsePoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Ring> Neg for SparsePoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        SparsePoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<C: Ring> Sub for SparsePoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Sub for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn sub(self, rhs: Self) -> SparsePoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Ring> Mul for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn mul(self, rhs: Self) -> SparsePoly<C> {
        self.mul_capped(rhs, usize::MAX).expect("uncapped product")
    }
}

impl<C: Ring> Mul for SparsePoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring> Ring for SparsePoly<C> {
    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m:?}")?;
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Partition of a variable universe into disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarPartition {
    blocks: Vec<Vec<Var>>,
}

impl VarPartition {
    pub fn new(blocks: Vec<Vec<Var>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            for &v in b {
                if !seen.insert(v) {
                    return Err(Error::InvalidArgument(format!("variable {v} appears in two blocks")));
                }
            }
        }
        Ok(VarPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<Var>] {
        &self.blocks
    }

    pub fn universe(&self) -> BTreeSet<Var> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn block_index(&self) -> HashMap<Var, usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |&v| (v, i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Poly;

    fn x(v: Var) -> Poly {
        Poly::var(v)
    }

    #[test]
    fn commutativity_and_inequality() {
        assert!(poly_equal(&(x(1) + x(2)), &(x(2) + x(1))));
        assert!(!poly_equal(&x(1), &x(1).scale(&ratio(2, 1))));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &(x(1) + x(2)) - &x(2);
        assert_eq!(p, x(1));
        assert_eq!(p.num_terms(), 1);
        let z = &p - &p;
        assert!(z.is_zero());
    }

    #[test]
    fn square_of_binomial() {
        let s = x(1) + x(2);
        let sq = &s * &s;
        assert_eq!(sq.coefficient(&Monomial::from_pairs([(1, 2)])), ratio(1, 1));
        assert_eq!(sq.coefficient(&Monomial::from_vars([1, 2])), ratio(2, 1));
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.total_degree(), 2);
    }

    #[test]
    fn capped_product_fails_safely() {
        let a = x(1) + x(2) + x(3);
        let b = x(4) + x(5) + x(6);
        assert_eq!(a.mul_capped(&b, 4), Err(Error::TermBudgetExceeded(4)));
        assert_eq!(a.mul_capped(&b, 9).unwrap().num_terms(), 9);
    }

    #[test]
    fn set_multilinearity() {
        let part = VarPartition::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let good = &(x(0) + x(1)) * &(x(2) + x(3));
        assert!(good.is_set_multilinear(&part));
        assert!(!(&x(0) * &x(1)).is_set_multilinear(&part));
        assert!(!Poly::one().is_set_multilinear(&part));
        assert!(!(&x(0) * &x(0)).is_set_multilinear(&part));
        assert!(VarPartition::new(vec![vec![0], vec![0]]).is_err());
    }

    #[test]
    fn evaluation_reports_missing_variables() {
        let p = &x(1) * &x(2);
        let mut pt = HashMap::new();
        pt.insert(1, ratio(3, 1));
        assert_eq!(p.evaluate(&pt), Err(Error::MissingVariable(2)));
        pt.insert(2, ratio(1, 2));
        assert_eq!(p.evaluate(&pt).unwrap(), ratio(3, 2));
    }
}
