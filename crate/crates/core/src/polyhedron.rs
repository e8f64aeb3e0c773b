//! H-represented polyhedra: vertices with their tight sets, feasibility and
//! line detection, and the standard-form to inequality-form transform.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::normal_form::{column_echelon, snf};
use crate::{Error, Int, IntMatrix, Rat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `{x in R^n : Ax <= b}`
    Inequality,
    /// `{x in R^n : x >= 0, Ax = b}`
    Standard,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRepPolyhedron {
    form: Form,
    a: IntMatrix,
    b: Vec<Int>,
}

impl HRepPolyhedron {
    pub fn inequality(a: IntMatrix, b: Vec<Int>) -> Result<Self> {
        Self::new(Form::Inequality, a, b)
    }

    pub fn standard(a: IntMatrix, b: Vec<Int>) -> Result<Self> {
        Self::new(Form::Standard, a, b)
    }

    pub fn new(form: Form, a: IntMatrix, b: Vec<Int>) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch("right-hand side length differs from row count"));
        }
        Ok(Self { form, a, b })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(form: Form, a: &[&[i64]], b: &[i64]) -> Result<Self> {
        Self::new(form, IntMatrix::from_rows(a), b.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &[Int] {
        &self.b
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    /// The dilate `qP`, realized on the right-hand side.
    pub fn dilate(&self, q: &Int) -> Self {
        Self { form: self.form, a: self.a.clone(), b: self.b.iter().map(|x| x * q).collect() }
    }

    /// An inequality system `A'x <= b'` in `R^n` describing the same set. For
    /// standard form this stacks `A`, `-A` and `-I`.
    pub fn inequality_system(&self) -> (IntMatrix, Vec<Int>) {
        match self.form {
            Form::Inequality => (self.a.clone(), self.b.clone()),
            Form::Standard => {
                let n = self.dim();
                let a = self.a.vstack(&self.a.neg()).vstack(&IntMatrix::identity(n).neg());
                let mut b = self.b.clone();
                b.extend(self.b.iter().map(|x| -x));
                b.extend(core::iter::repeat_n(Int::zero(), n));
                (a, b)
            }
        }
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        let ax = self.a.mul_vec(x);
        match self.form {
            Form::Inequality => ax.iter().zip(&self.b).all(|(l, r)| l <= r),
            Form::Standard => ax == self.b && x.iter().all(|v| !v.is_negative()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexInfo {
    pub point: Vec<Rat>,
    /// Every row of the inequality system that is tight at `point`.
    pub active: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Empty,
    HasLine,
    Pointed,
}

fn satisfies(a: &IntMatrix, b: &[Int], x: &[Rat]) -> bool {
    a.mul_rat_vec(x).iter().zip(b).all(|(l, r)| *l <= Rat::from_integer(r.clone()))
}

/// All basic feasible solutions of `Ax <= b`, assuming `rank A = cols`.
pub(crate) fn basic_solutions(a: &IntMatrix, b: &[Int]) -> Vec<VertexInfo> {
    let n = a.cols();
    let all_cols: Vec<usize> = (0..n).collect();
    let mut seen: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
    for basis in (0..a.rows()).combinations(n) {
        let sub = a.select(&basis, &all_cols);
        let rhs: Vec<Int> = basis.iter().map(|&i| b[i].clone()).collect();
        let Some(v) = sub.solve_int(&rhs) else { continue };
        if !seen.contains_key(&v) && satisfies(a, b, &v) {
            seen.insert(v, ());
        }
    }
    seen.into_keys()
        .map(|point| {
            let ax = a.mul_rat_vec(&point);
            let active = (0..a.rows()).filter(|&j| ax[j] == Rat::from_integer(b[j].clone())).collect();
            VertexInfo { point, active }
        })
        .collect()
}

/// Indices of a maximal set of linearly independent columns, chosen greedily
/// from the left.
pub(crate) fn column_basis(a: &IntMatrix) -> Vec<usize> {
    let mut basis: Vec<usize> = Vec::new();
    for j in 0..a.cols() {
        let mut trial = basis.clone();
        trial.push(j);
        if a.select_columns(&trial).rank() == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// Exact rational feasibility of `Ax <= b`.
pub(crate) fn is_feasible(a: &IntMatrix, b: &[Int]) -> bool {
    let basis = column_basis(a);
    let reduced = a.select_columns(&basis);
    // {Ax} equals {A_C y}; A_C has full column rank, so nonempty iff pointed
    // and then it has a vertex.
    let n = reduced.cols();
    let all_cols: Vec<usize> = (0..n).collect();
    (0..reduced.rows()).combinations(n).any(|rows| {
        let sub = reduced.select(&rows, &all_cols);
        let rhs: Vec<Int> = rows.iter().map(|&i| b[i].clone()).collect();
        sub.solve_int(&rhs).is_some_and(|v| satisfies(&reduced, b, &v))
    })
}

/// Vertices of `P` with their full tight sets, indexed into
/// [`HRepPolyhedron::inequality_system`]. Requires `rank A = n`.
pub fn vertices(p: &HRepPolyhedron) -> Result<Vec<VertexInfo>> {
    let (a, b) = p.inequality_system();
    if a.rank() < p.dim() {
        return Err(Error::RankDeficient);
    }
    Ok(basic_solutions(&a, &b))
}

pub fn classify(p: &HRepPolyhedron) -> Classification {
    let (a, b) = p.inequality_system();
    if !is_feasible(&a, &b) {
        Classification::Empty
    } else if a.rank() < p.dim() {
        Classification::HasLine
    } else {
        Classification::Pointed
    }
}

/// Whether the recession cone `{x : A'x <= 0}` of the (pointed) inequality
/// system is trivial. Checks every extreme-ray candidate, i.e. the kernel
/// direction of each rank-`(n-1)` row subset.
pub(crate) fn recession_cone_trivial(a: &IntMatrix) -> bool {
    let n = a.cols();
    if n == 0 {
        return true;
    }
    let zero = Int::zero();
    for rows in (0..a.rows()).combinations(n - 1) {
        let sub = a.select_rows(&rows);
        if sub.rank() != n - 1 {
            continue;
        }
        let dir = kernel_vector(&sub);
        let ad = a.mul_vec(&dir);
        if ad.iter().all(|x| *x <= zero) || ad.iter().all(|x| *x >= zero) {
            return false;
        }
    }
    true
}

/// A nonzero integer vector spanning the kernel of an `(n-1) x n` matrix of
/// rank `n-1`, via the generalized cross product.
fn kernel_vector(a: &IntMatrix) -> Vec<Int> {
    let n = a.cols();
    let rows: Vec<usize> = (0..a.rows()).collect();
    (0..n)
        .map(|j| {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let d = a.select(&rows, &cols).det();
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Whether `P` is nonempty and bounded.
pub fn is_polytope(p: &HRepPolyhedron) -> bool {
    classify(p) == Classification::Pointed && recession_cone_trivial(&p.inequality_system().0)
}

/// Rewrites a standard-form system so that `Δ_gcd(A') = 1` while keeping the
/// integer solution set: rows are multiplied by `(P S)^{-1}` from the Smith
/// form `A = P (S 0) Q`.
pub fn normalize_standard(a: &IntMatrix, b: &[Int]) -> Result<(IntMatrix, Vec<Int>)> {
    let k = a.rows();
    if b.len() != k {
        return Err(Error::DimensionMismatch("right-hand side length differs from row count"));
    }
    let s = snf(a);
    if s.rank() < k {
        return Err(Error::RankDeficient);
    }
    if s.diag.iter().all(One::is_one) {
        return Ok((a.clone(), b.to_vec()));
    }
    let pa = s.p_inv.mul(a);
    let pb = s.p_inv.mul_vec(b);
    let mut rows = Vec::with_capacity(k);
    let mut rhs = Vec::with_capacity(k);
    for (i, si) in s.diag.iter().enumerate() {
        let (q, r) = pb[i].div_rem(si);
        if !r.is_zero() {
            return Err(Error::Infeasible);
        }
        rhs.push(q);
        rows.push(pa.row(i).iter().map(|x| x / si).collect::<Vec<_>>());
    }
    Ok((IntMatrix::from_big_rows(rows, a.cols())?, rhs))
}

/// Parametrization `x = r + B x̂` of the integer solutions of `Ax = b`, and
/// the inequality polyhedron `{x̂ : Â x̂ <= b̂}` with `Â = -B`, `b̂ = r`
/// whose lattice points correspond one-to-one to `{x in Z^n_+ : Ax = b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTransform {
    pub a_hat: IntMatrix,
    pub b_hat: Vec<Int>,
    /// `B`, an `n x (n-k)` lattice basis of `ker A ∩ Z^n`.
    pub kernel: IntMatrix,
    /// `r`, one integer solution of `Ax = b`.
    pub offset: Vec<Int>,
}

impl StandardTransform {
    /// Dimension `d = n - k` of the transformed space.
    pub fn dim(&self) -> usize {
        self.kernel.cols()
    }

    pub fn lift(&self, x_hat: &[Int]) -> Vec<Int> {
        let bx = self.kernel.mul_vec(x_hat);
        self.offset.iter().zip(bx).map(|(r, y)| r + y).collect()
    }

    pub fn polyhedron(&self) -> HRepPolyhedron {
        HRepPolyhedron { form: Form::Inequality, a: self.a_hat.clone(), b: self.b_hat.clone() }
    }
}

/// Solves `Ax = b` over the integers through the column Hermite form
/// `A U = (H 0)`: `B` is the trailing `n - k` columns of `U`, and
/// `r = U_{:, 1..k} H^{-1} b`. Kernel columns are signed so that their first
/// nonzero entry is positive.
pub fn standard_to_inequality(a: &IntMatrix, b: &[Int]) -> Result<StandardTransform> {
    let (k, n) = (a.rows(), a.cols());
    if b.len() != k {
        return Err(Error::DimensionMismatch("right-hand side length differs from row count"));
    }
    let ech = column_echelon(a);
    if ech.pivots.len() < k {
        return Err(Error::RankDeficient);
    }
    // forward substitution H y = b
    let mut y: Vec<Int> = Vec::with_capacity(k);
    for i in 0..k {
        let partial: Int = (0..i).map(|j| &ech.e[(i, j)] * &y[j]).sum();
        let (q, r) = (&b[i] - partial).div_rem(&ech.e[(i, i)]);
        if !r.is_zero() {
            return Err(Error::Infeasible);
        }
        y.push(q);
    }
    let lead: Vec<usize> = (0..k).collect();
    let tail: Vec<usize> = (k..n).collect();
    let offset = ech.u.select_columns(&lead).mul_vec(&y);
    let mut kernel = ech.u.select_columns(&tail);
    for j in 0..kernel.cols() {
        let first = (0..n).map(|i| &kernel[(i, j)]).find(|x| !x.is_zero());
        if first.is_some_and(Signed::is_negative) {
            kernel.negate_col(j);
        }
    }
    Ok(StandardTransform { a_hat: kernel.neg(), b_hat: offset.clone(), kernel, offset })
}

/// Generators `A_{J(v)}^T` of the polar of the feasible cone at `v`.
pub fn feasible_cone_polar_generators(p: &HRepPolyhedron, v: &VertexInfo) -> IntMatrix {
    let (a, _) = p.inequality_system();
    a.select_rows(&v.active).transpose()
}
