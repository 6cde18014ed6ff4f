//! Arithmetic in GF(2^l) for l ≤ 16 and coordinate maps to GF(2)^l.
//!
//! Elements are `u32` values whose bit `i` is the coefficient of `α^i`
//! (little-endian bit integers).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, F2Vec};

pub type Gf = u32;

pub const MAX_DEGREE: u32 = 16;

fn degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

/// Remainder of carry-less division.
fn poly_mod(mut a: u32, m: u32) -> u32 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Irreducibility by trial division with every polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(p: u32) -> bool {
    let d = degree(p);
    if d < 1 {
        return false;
    }
    for dd in 1..=d / 2 {
        for q in (1u32 << dd)..(1u32 << (dd + 1)) {
            if poly_mod(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

/// Numerically least irreducible polynomial of exact degree `l`.
pub fn default_modulus(l: u32) -> u32 {
    assert!((1..=MAX_DEGREE).contains(&l));
    ((1u32 << l)..(1u32 << (l + 1))).find(|&p| is_irreducible(p)).expect("irreducible polynomials exist in every degree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GF2eCtx {
    l: u32,
    modulus: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow,
}

impl GF2eCtx {
    pub fn new(l: u32, modulus: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&l) || degree(modulus) != l as i32 || !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { modulus, degree: l });
        }
        Ok(GF2eCtx { l, modulus })
    }

    pub fn with_default_modulus(l: u32) -> Self {
        GF2eCtx { l, modulus: default_modulus(l) }
    }

    pub fn degree(&self) -> u32 {
        self.l
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.l
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        0..self.order()
    }

    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        a ^ b
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        let mut acc = 0u32;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.l & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: Gf, mut e: u64) -> Gf {
        let mut base = a;
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, u64::from(self.order()) - 2))
    }

    /// Dispatch used by the command line; `b` is the exponent for `Pow`.
    pub fn apply(&self, op: FieldOp, a: Gf, b: Gf) -> Result<Gf> {
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow => Ok(self.pow(a, u64::from(b))),
        }
    }
}

impl GF2eCtx {
    /// Reduced row echelon form of a matrix over the field; returns the
    /// reduced rows and the pivot columns.
    pub fn rref(&self, rows: &[Vec<Gf>]) -> (Vec<Vec<Gf>>, Vec<usize>) {
        let mut a = rows.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(p, r);
            let inv = self.inv(a[r][c]).expect("pivot is nonzero");
            for x in a[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] ^= self.mul(f, a[r][j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, rows: &[Vec<Gf>]) -> usize {
        self.rref(rows).1.len()
    }

    /// Basis of `{w : A·w = 0}`.
    pub fn kernel(&self, rows: &[Vec<Gf>]) -> Vec<Vec<Gf>> {
        let cols = rows.first().map_or(0, Vec::len);
        let (r, pivots) = self.rref(rows);
        (0..cols)
            .filter(|f| !pivots.contains(f))
            .map(|f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                // characteristic 2: -x = x
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r[row][f];
                }
                v
            })
            .collect()
    }
}

/// A GF(2)-basis of GF(2^l) with its coordinate map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldBasis {
    ctx: GF2eCtx,
    basis: Vec<Gf>,
    // coordinates of α^k with respect to `basis`, as bitmasks
    unit_coords: Vec<u32>,
}

impl FieldBasis {
    pub fn new(ctx: GF2eCtx, basis: Vec<Gf>) -> Result<Self> {
        let l = ctx.degree() as usize;
        if basis.len() != l || basis.iter().any(|&b| b >= ctx.order()) {
            return Err(Error::InvalidArgument(format!("a basis of GF(2^{l}) needs {l} field elements")));
        }
        // Column k holds the bits of b_k; solve for each unit vector.
        let cols: Vec<F2Vec> = basis.iter().map(|&b| F2Vec::from_mask(l, u64::from(b))).collect();
        let a = BitMatrix::from_columns(l, &cols);
        if a.rank() != l {
            return Err(Error::InvalidArgument("basis elements are linearly dependent over GF(2)".into()));
        }
        // Augment [A | I] and reduce to [I | A^-1].
        let mut aug = BitMatrix::zeros(l, 2 * l);
        for i in 0..l {
            for j in 0..l {
                aug.set(i, j, a.get(i, j));
            }
            aug.set(i, l + i, true);
        }
        let (r, _) = aug.rref();
        let unit_coords = (0..l)
            .map(|k| (0..l).fold(0u32, |acc, i| acc | (u32::from(r.get(i, l + k)) << i)))
            .collect();
        Ok(FieldBasis { ctx, basis, unit_coords })
    }

    /// The polynomial basis `1, α, …, α^{l-1}`.
    pub fn polynomial(ctx: GF2eCtx) -> Self {
        let basis = (0..ctx.degree()).map(|i| 1u32 << i).collect();
        Self::new(ctx, basis).expect("polynomial basis is a basis")
    }

    pub fn ctx(&self) -> GF2eCtx {
        self.ctx
    }

    pub fn elements(&self) -> &[Gf] {
        &self.basis
    }

    /// Coordinates of `v` as a bitmask: bit `i` is the coefficient of `b_{i+1}`.
    pub fn coords(&self, v: Gf) -> u32 {
        (0..self.ctx.degree()).filter(|&k| v >> k & 1 == 1).fold(0, |acc, k| acc ^ self.unit_coords[k as usize])
    }

    pub fn phi(&self, v: Gf) -> F2Vec {
        F2Vec::from_mask(self.ctx.degree() as usize, u64::from(self.coords(v)))
    }

    /// Concatenated coordinate vectors of the entries of `v`.
    pub fn expand(&self, v: &[Gf]) -> F2Vec {
        F2Vec::concat(&v.iter().map(|&x| self.phi(x)).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(1), 0b10);
        assert_eq!(default_modulus(2), 0b111);
        assert_eq!(default_modulus(3), 0b1011);
        assert_eq!(default_modulus(4), 0b10011);
        assert_eq!(default_modulus(8), 0b1_0001_1011);
        for l in 1..=MAX_DEGREE {
            assert!(is_irreducible(default_modulus(l)));
        }
        assert!(GF2eCtx::new(3, 0b1001).is_err()); // x^3+1 = (x+1)(x^2+x+1)
    }

    #[test]
    fn gf8_examples() {
        let f = GF2eCtx::new(3, 0b1011).unwrap();
        let alpha = 0b010;
        let alpha2 = 0b100;
        assert_eq!(f.mul(alpha, alpha2), 0b011); // α^3 = α + 1
        for a in f.elements() {
            assert_eq!(f.add(a, a), 0);
        }
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        assert_eq!(f.apply(FieldOp::Pow, alpha, 7).unwrap(), 1);
    }

    fn check_axioms(f: GF2eCtx) {
        let els: Vec<Gf> = f.elements().collect();
        for &a in &els {
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
            for &b in &els {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_gf8_gf16() {
        check_axioms(GF2eCtx::with_default_modulus(3));
        check_axioms(GF2eCtx::with_default_modulus(4));
    }

    #[test]
    fn coordinate_map_properties() {
        let f = GF2eCtx::with_default_modulus(8);
        // a non-polynomial basis: α^{2i}·(1+α) style elements, checked for independence
        let basis: Vec<Gf> = (0..8).map(|i| f.mul(f.pow(2, 2 * i + 1), 0b11)).collect();
        let b = FieldBasis::new(f, basis.clone()).unwrap();
        for (i, &bi) in basis.iter().enumerate() {
            assert_eq!(b.phi(bi), F2Vec::unit(8, i));
        }
        assert!(b.expand(&[0, 0, 0]).is_zero());
        let mut rng = crate::rng::stream_rng(11, 0);
        for _ in 0..200 {
            let (u, v) = (rng.gen_range(0..256), rng.gen_range(0..256));
            let mut lhs = b.phi(u);
            lhs.xor_assign(&b.phi(v));
            assert_eq!(b.phi(u ^ v), lhs);
            // reconstruct v from its coordinates
            let c = b.coords(v);
            let back = (0..8).filter(|&i| c >> i & 1 == 1).fold(0, |acc, i| acc ^ basis[i]);
            assert_eq!(back, v);
        }
    }

    #[test]
    fn expansion_injective_on_gf8_squared() {
        let b = FieldBasis::polynomial(GF2eCtx::with_default_modulus(3));
        let mut seen = std::collections::HashSet::new();
        for x in 0..8 {
            for y in 0..8 {
                assert!(seen.insert(b.expand(&[x, y])));
            }
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn kernel_over_gf16() {
        let f = GF2eCtx::with_default_modulus(4);
        let rows: Vec<Vec<Gf>> = (0..3).map(|i| (1..16).map(|x| f.pow(x, i)).collect()).collect();
        assert_eq!(f.rank(&rows), 3);
        let ker = f.kernel(&rows);
        assert_eq!(ker.len(), 12);
        for w in &ker {
            for r in &rows {
                assert_eq!(r.iter().zip(w).fold(0, |acc, (&a, &b)| acc ^ f.mul(a, b)), 0);
            }
        }
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = GF2eCtx::with_default_modulus(3);
        assert!(FieldBasis::new(f, vec![1, 2, 3]).is_err());
        assert!(FieldBasis::new(f, vec![1, 2]).is_err());
    }
}
