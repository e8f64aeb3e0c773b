//! Hermite and Smith normal forms with unimodular transforms.
//!
//! Both are classical elimination algorithms driven by extended-gcd 2x2
//! transforms. Every transform is recorded together with its inverse so the
//! callers never have to invert a unimodular matrix after the fact.

use alloc::vec::Vec;

use num_integer::{ExtendedGcd, Integer};
use num_traits::{One, Signed, Zero};

use crate::{Error, Int, IntMatrix, Result};

/// `A = [H; B] * Q` with `H` lower triangular, `H_ii > 0`,
/// `0 <= H_ij < H_ii` for `j < i`, and `Q` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub b: IntMatrix,
    pub q: IntMatrix,
    /// `Q^{-1}`, i.e. the column transform with `A * Q^{-1} = [H; B]`.
    pub q_inv: IntMatrix,
}

/// `A = P * D * Q` where `D` is `rows x cols` with the invariant factors on
/// its leading diagonal and zeros elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors `S_1 | S_2 | ... | S_r`, all positive.
    pub diag: Vec<Int>,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub p_inv: IntMatrix,
    pub q_inv: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The `rows x cols` diagonal matrix `D`.
    pub fn d_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.p.rows(), self.q.rows());
        for (i, s) in self.diag.iter().enumerate() {
            d[(i, i)] = s.clone();
        }
        d
    }
}

/// Column-style echelon form `A * U = E`: each pivot row has its pivot in
/// the next free column, entries right of the pivot are zero, entries left of
/// it are reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub(crate) struct ColumnEchelon {
    pub e: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    /// `(row, col)` of every pivot, in increasing order.
    pub pivots: Vec<(usize, usize)>,
}

fn gcd_transform(a: &Int, b: &Int) -> (Int, [Int; 4]) {
    // returns g and M = [[x, -b/g], [y, a/g]] so that [a, b] * M = [g, 0]
    let ExtendedGcd { gcd, x, y, .. } = a.extended_gcd(b);
    let (g, x, y) = if gcd.is_negative() { (-gcd, -x, -y) } else { (gcd, x, y) };
    let m = [x, -(b / &g), y, a / &g];
    (g, m)
}

fn inverse_2x2(m: &[Int; 4]) -> [Int; 4] {
    let [p, q, r, s] = m;
    let det = p * s - q * r;
    debug_assert!(det.abs().is_one());
    if det.is_one() {
        [s.clone(), -q, -r, p.clone()]
    } else {
        [-s, q.clone(), r.clone(), -p]
    }
}

pub(crate) fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let (m, n) = (a.rows(), a.cols());
    let mut e = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    let mut pivots = Vec::new();
    let mut col = 0;
    for row in 0..m {
        if col == n {
            break;
        }
        for j in col + 1..n {
            if e[(row, j)].is_zero() {
                continue;
            }
            if e[(row, col)].is_zero() {
                e.swap_cols(col, j);
                u.swap_cols(col, j);
                u_inv.swap_rows(col, j);
                continue;
            }
            let (p, x) = (e[(row, col)].clone(), e[(row, j)].clone());
            if (&x % &p).is_zero() {
                let c = -(x / p);
                e.add_col_multiple(j, col, &c);
                u.add_col_multiple(j, col, &c);
                u_inv.add_row_multiple(col, j, &-c);
            } else {
                let (_, t) = gcd_transform(&p, &x);
                e.transform_cols(col, j, &t);
                u.transform_cols(col, j, &t);
                u_inv.transform_rows(col, j, &inverse_2x2(&t));
            }
        }
        if e[(row, col)].is_zero() {
            continue;
        }
        if e[(row, col)].is_negative() {
            e.negate_col(col);
            u.negate_col(col);
            u_inv.negate_row(col);
        }
        let piv = e[(row, col)].clone();
        for j in 0..col {
            let c = e[(row, j)].div_floor(&piv);
            if !c.is_zero() {
                e.add_col_multiple(j, col, &-&c);
                u.add_col_multiple(j, col, &-&c);
                u_inv.add_row_multiple(col, j, &c);
            }
        }
        pivots.push((row, col));
        col += 1;
    }
    ColumnEchelon { e, u, u_inv, pivots }
}

/// Hermite normal form of a matrix with full column rank. The leading
/// `cols x cols` block must be nonsingular so that `H` sits on top.
pub fn hnf(a: &IntMatrix) -> Result<HnfResult> {
    let n = a.cols();
    let ech = column_echelon(a);
    if ech.pivots.len() < n {
        return Err(Error::RankDeficient);
    }
    if ech.pivots.iter().enumerate().any(|(i, &(r, _))| r != i) {
        return Err(Error::LeadingBlockSingular);
    }
    let top: Vec<usize> = (0..n).collect();
    let rest: Vec<usize> = (n..a.rows()).collect();
    Ok(HnfResult { h: ech.e.select_rows(&top), b: ech.e.select_rows(&rest), q: ech.u_inv, q_inv: ech.u })
}

struct SnfState {
    d: IntMatrix,
    l: IntMatrix,
    l_inv: IntMatrix,
    r: IntMatrix,
    r_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.l.swap_rows(a, b);
        self.l_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.r.swap_cols(a, b);
        self.r_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        self.d.add_row_multiple(dst, src, c);
        self.l.add_row_multiple(dst, src, c);
        self.l_inv.add_col_multiple(src, dst, &-c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        self.d.add_col_multiple(dst, src, c);
        self.r.add_col_multiple(dst, src, c);
        self.r_inv.add_row_multiple(src, dst, &-c);
    }

    fn transform_rows(&mut self, a: usize, b: usize, t: &[Int; 4]) {
        self.d.transform_rows(a, b, t);
        self.l.transform_rows(a, b, t);
        self.l_inv.transform_cols(a, b, &inverse_2x2(t));
    }

    fn transform_cols(&mut self, a: usize, b: usize, t: &[Int; 4]) {
        self.d.transform_cols(a, b, t);
        self.r.transform_cols(a, b, t);
        self.r_inv.transform_rows(a, b, &inverse_2x2(t));
    }

    /// Clears row and column `t` outside the pivot; returns once both are clean.
    fn clear_cross(&mut self, t: usize) {
        let (m, n) = (self.d.rows(), self.d.cols());
        loop {
            for i in t + 1..m {
                let x = self.d[(i, t)].clone();
                if x.is_zero() {
                    continue;
                }
                let p = self.d[(t, t)].clone();
                if (&x % &p).is_zero() {
                    self.add_row(i, t, &-(x / p));
                } else {
                    // rows: [row_t; row_i] <- M^T [row_t; row_i]
                    let (_, c) = gcd_transform(&p, &x);
                    let rt = [c[0].clone(), c[2].clone(), c[1].clone(), c[3].clone()];
                    self.transform_rows(t, i, &rt);
                }
            }
            for j in t + 1..n {
                let x = self.d[(t, j)].clone();
                if x.is_zero() {
                    continue;
                }
                let p = self.d[(t, t)].clone();
                if (&x % &p).is_zero() {
                    self.add_col(j, t, &-(x / p));
                } else {
                    let (_, c) = gcd_transform(&p, &x);
                    self.transform_cols(t, j, &c);
                }
            }
            if (t + 1..m).all(|i| self.d[(i, t)].is_zero()) {
                return;
            }
        }
    }
}

/// Smith normal form `A = P * D * Q`.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut st = SnfState {
        d: a.clone(),
        l: IntMatrix::identity(m),
        l_inv: IntMatrix::identity(m),
        r: IntMatrix::identity(n),
        r_inv: IntMatrix::identity(n),
    };
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &st.d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);
        loop {
            st.clear_cross(t);
            let p = st.d[(t, t)].clone();
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&st.d[(i, j)] % &p).is_zero());
            match bad {
                Some((i, _)) => st.add_row(t, i, &Int::one()),
                None => break,
            }
        }
        if st.d[(t, t)].is_negative() {
            st.d.negate_col(t);
            st.r.negate_col(t);
            st.r_inv.negate_row(t);
        }
        diag.push(st.d[(t, t)].clone());
    }
    SnfResult { diag, p: st.l_inv, q: st.r_inv, p_inv: st.l, q_inv: st.r }
}
