//! Dense GF(2) vectors and matrices, bit-packed into `u64` words.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

const W: usize = 64;

fn words(len: usize) -> usize {
    len.div_ceil(W)
}

/// A GF(2) vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vec {
    len: usize,
    bits: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec { len, bits: vec![0; words(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(b: &[bool]) -> Self {
        let mut v = Self::zeros(b.len());
        for (i, &x) in b.iter().enumerate() {
            v.set(i, x);
        }
        v
    }

    /// Low `len` bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= W);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.bits[0] = if len == W { mask } else { mask & ((1 << len) - 1) };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.bits[i / W] >> (i % W) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        if b {
            self.bits[i / W] |= 1 << (i % W);
        } else {
            self.bits[i / W] &= !(1 << (i % W));
        }
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &F2Vec) -> bool {
        self.bits.iter().zip(&other.bits).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    /// Indices of the one entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Concatenation.
    pub fn concat(parts: &[F2Vec]) -> F2Vec {
        let len = parts.iter().map(F2Vec::len).sum();
        let mut out = F2Vec::zeros(len);
        let mut off = 0;
        for p in parts {
            for i in p.support() {
                out.set(off + i, true);
            }
            off += p.len;
        }
        out
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Dense GF(2) matrix stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<F2Vec>,
}

/// Rank together with a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<F2Vec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixShape {
    pub rows: usize,
    pub cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows, cols, data: vec![F2Vec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<F2Vec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        BitMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(cols, rows.iter().map(|r| F2Vec::from_bools(r)).collect())
    }

    pub fn from_columns(rows: usize, cols: &[F2Vec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.support() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.data[i].set(j, b);
    }

    pub fn row(&self, i: usize) -> &F2Vec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[F2Vec] {
        &self.data
    }

    pub fn column(&self, j: usize) -> F2Vec {
        let mut c = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            c.set(i, self.get(i, j));
        }
        c
    }

    /// Column `j` as a bitmask over rows; requires `rows <= 64`.
    pub fn column_mask(&self, j: usize) -> u64 {
        assert!(self.rows <= W);
        (0..self.rows).fold(0, |acc, i| acc | (u64::from(self.get(i, j)) << i))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].support() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.set(i, k, self.get(i, j));
            }
        }
        m
    }

    /// `M · w`.
    pub fn mul_vec(&self, w: &F2Vec) -> F2Vec {
        assert_eq!(w.len(), self.cols);
        F2Vec::from_bools(&self.data.iter().map(|r| r.dot(w)).collect::<Vec<_>>())
    }

    /// `Mᵀ · w`, the codeword generated by message `w`.
    pub fn left_mul(&self, w: &F2Vec) -> F2Vec {
        assert_eq!(w.len(), self.rows);
        let mut out = F2Vec::zeros(self.cols);
        for i in w.support() {
            out.xor_assign(&self.data[i]);
        }
        out
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| a.data[i].get(c)) else {
                continue;
            };
            a.data.swap(p, r);
            let pivot_row = a.data[r].clone();
            for i in 0..a.rows {
                if i != r && a.data[i].get(c) {
                    a.data[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a basis of `{w : M·w = 0}`.
    pub fn rank_kernel(&self) -> RankKernel {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = F2Vec::unit(self.cols, f);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        RankKernel { rank: pivots.len(), kernel }
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &F2Vec) -> bool {
        let mut ext = self.clone();
        ext.data.push(v.clone());
        ext.rows += 1;
        ext.rank() == self.rank()
    }

    /// Text form: `f2 <rows> <cols>` then one 0/1 string per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("f2 {} {}\n", self.rows, self.cols);
        for r in &self.data {
            s.push_str(&format!("{r:?}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad header `{header}`"));
        if parts.len() != 3 || parts[0] != "f2" {
            return Err(bad());
        }
        let rows: usize = parts[1].parse().map_err(|_| bad())?;
        let cols: usize = parts[2].parse().map_err(|_| bad())?;
        let mut data = Vec::with_capacity(rows);
        for (i, line) in lines.enumerate() {
            if line.len() != cols {
                return Err(Error::Parse(format!("row {i} has length {}, expected {cols}", line.len())));
            }
            let bits: Option<Vec<bool>> = line
                .chars()
                .map(|ch| match ch {
                    '0' => Some(false),
                    '1' => Some(true),
                    _ => None,
                })
                .collect();
            data.push(F2Vec::from_bools(&bits.ok_or_else(|| Error::Parse(format!("row {i} is not 0/1")))?));
        }
        if data.len() != rows {
            return Err(Error::Parse(format!("expected {rows} rows, found {}", data.len())));
        }
        Ok(BitMatrix { rows, cols, data })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
