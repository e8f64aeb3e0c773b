//! Dense matrices over the integers with exact determinant, adjugate, rank
//! and rational solves.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Rat, Result};

/// Row-major dense integer matrix. Zero rows or columns are allowed; they
/// show up as the empty kernel basis of a square system and similar corner
/// cases.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch("data length differs from rows * cols"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers; all rows must have the
    /// same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().map(|&x| Int::from(x)));
        }
        Self { rows: rows.len(), cols: ncols, data }
    }

    pub fn from_big_rows(rows: Vec<Vec<Int>>, ncols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows"));
            }
            data.extend(r);
        }
        Ok(Self { rows: nrows, cols: ncols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimensions");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimensions");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + b * a)).collect()
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row count");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn with_column(&self, j: usize, col: &[Int]) -> IntMatrix {
        let mut m = self.clone();
        for (i, x) in col.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
        m
    }

    pub fn max_abs(&self) -> Int {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self[(i, j)];
            *x = -core::mem::take(x);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self[(i, j)];
            *x = -core::mem::take(x);
        }
    }

    /// `row[dst] += c * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += c * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self[(i, dst)] += v;
        }
    }

    /// Replaces rows `a`, `b` by `M * [row_a; row_b]` with `M = [[p, q], [r, s]]`.
    pub fn transform_rows(&mut self, a: usize, b: usize, m: &[Int; 4]) {
        let [p, q, r, s] = m;
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = r * x + s * y;
        }
    }

    /// Replaces columns `a`, `b` by `[col_a, col_b] * M` with `M = [[p, q], [r, s]]`.
    pub fn transform_cols(&mut self, a: usize, b: usize, m: &[Int; 4]) {
        let [p, q, r, s] = m;
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = p * &x + r * &y;
            self[(i, b)] = q * x + s * y;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    debug_assert!((&v % &prev).is_zero());
                    m[(i, j)] = v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Rank by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Int::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &m[(r, c)] * &m[(i, j)] - &m[(i, c)] * &m[(r, j)];
                    debug_assert!((&v % &prev).is_zero());
                    m[(i, j)] = v / &prev;
                }
                m[(i, c)] = Int::zero();
            }
            prev = m[(r, c)].clone();
            r += 1;
        }
        r
    }

    /// Adjugate `A*` with `A * A* = det(A) * I`, by cofactor expansion.
    pub fn adjugate(&self) -> IntMatrix {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Self::zeros(0, 0);
        }
        let mut adj = Self::zeros(n, n);
        let idx: Vec<usize> = (0..n).collect();
        for i in 0..n {
            let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != i).collect();
            for j in 0..n {
                let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != j).collect();
                let minor = self.select(&rows, &cols).det();
                adj[(j, i)] = if (i + j).is_even() { minor } else { -minor };
            }
        }
        adj
    }

    /// Exact inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix"));
        }
        let d = self.det();
        if d.is_one() {
            Ok(self.adjugate())
        } else if (-&d).is_one() {
            Ok(self.adjugate().neg())
        } else {
            Err(Error::NotUnimodular)
        }
    }

    /// Solves `self * x = rhs` for a square nonsingular matrix by rational
    /// Gauss-Jordan elimination; `None` when singular.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert!(self.is_square(), "solve with a non-square matrix");
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut r: Vec<Rat> = self.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !m[i][c].is_zero())?;
            m.swap(p, c);
            let piv = m[c][c].clone();
            for x in m[c].iter_mut().skip(c) {
                *x /= &piv;
            }
            for i in 0..n {
                if i != c && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..=n {
                        let v = &m[c][j] * &f;
                        m[i][j] -= v;
                    }
                }
            }
        }
        Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
    }

    pub fn solve_int(&self, rhs: &[Int]) -> Option<Vec<Rat>> {
        let r: Vec<Rat> = rhs.iter().map(|x| Rat::from_integer(x.clone())).collect();
        self.solve(&r)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn ceil_vec(v: &[Rat]) -> Vec<Int> {
    v.iter().map(|x| x.ceil().to_integer()).collect()
}
