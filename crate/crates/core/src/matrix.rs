//! Dense matrices over a generic scalar, with exact rank and determinants.

use std::ops::{Index, IndexMut};

use crate::scalar::{ExactDiv, Field, Ring};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Columns listed in `idx`, in that order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self[(i, k)].clone() * rhs[(k, j)].clone())
        })
    }

    /// Determinant by Laplace expansion memoized over column subsets. Uses
    /// only ring operations, so it works for polynomial entries.
    pub fn det_division_free(&self) -> T {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        assert!(n <= 20, "division-free determinant limited to n <= 20");
        if n == 0 {
            return T::one();
        }
        // minors[S] = det(rows 0..|S|, columns S)
        let mut minors: Vec<Option<T>> = vec![None; 1 << n];
        minors[0] = Some(T::one());
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for s in 0usize..1 << n {
            by_size[s.count_ones() as usize].push(s);
        }
        for size in 1..=n {
            let row = size - 1;
            for &s in &by_size[size] {
                let mut acc = T::zero();
                let mut after = 0u32; // columns of s above j
                for j in (0..n).rev() {
                    if s >> j & 1 == 0 {
                        continue;
                    }
                    let entry = &self[(row, j)];
                    if !entry.is_zero() {
                        if let Some(sub) = &minors[s & !(1 << j)] {
                            let term = entry.clone() * sub.clone();
                            acc = if after.is_multiple_of(2) { acc + term } else { acc - term };
                        }
                    }
                    after += 1;
                }
                minors[s] = Some(acc);
            }
            for &s in &by_size[size - 1] {
                minors[s] = None;
            }
        }
        minors[(1 << n) - 1].take().expect("full minor computed")
    }
}

impl<T: ExactDiv> Matrix<T> {
    /// Fraction-free (Bareiss) determinant.
    pub fn det_bareiss(&self) -> T {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign_negative = false;
        let mut prev = T::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return T::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign_negative = !sign_negative;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v.exact_div(&prev);
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = if n == 0 { T::one() } else { a[(n - 1, n - 1)].clone() };
        if sign_negative {
            -d
        } else {
            d
        }
    }

    /// Fraction-free rank.
    pub fn rank_bareiss(&self) -> usize {
        let mut a = self.clone();
        let mut prev = T::one();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            for i in rank + 1..a.rows {
                for j in col + 1..a.cols {
                    let v = a[(i, j)].clone() * a[(rank, col)].clone() - a[(i, col)].clone() * a[(rank, j)].clone();
                    a[(i, j)] = v.exact_div(&prev);
                }
                a[(i, col)] = T::zero();
            }
            prev = a[(rank, col)].clone();
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Rank by Gaussian elimination over a field.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let inv = a[(rank, col)].inv();
            for i in rank + 1..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone() * inv.clone();
                for j in col..a.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(rank, j)].clone();
                    a[(i, j)] = v;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Mersenne prime used for the modular fast path.
pub const RANK_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % RANK_PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Rank of an integer matrix modulo [`RANK_PRIME`]. Never exceeds the rank
/// over the rationals, and equals it unless the prime divides every maximal
/// nonzero minor.
pub fn rank_mod_prime(rows: &[Vec<i64>]) -> usize {
    let p = RANK_PRIME;
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let Some(piv) = (rank..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = powmod(a[rank][col], p - 2);
        for i in rank + 1..a.len() {
            if a[i][col] == 0 {
                continue;
            }
            let f = mulmod(a[i][col], inv);
            for j in col..cols {
                let sub = mulmod(f, a[rank][j]);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}
