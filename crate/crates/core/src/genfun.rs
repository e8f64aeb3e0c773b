//! Short rational generating functions of polyhedra.
//!
//! Three assembly routes:
//!
//! * [`gf_inequality`]: vertices of `{Ax <= b}`, triangulation of each polar
//!   tangent cone `cone(A_J^T)`, signed decomposition into unimodular cones,
//!   polarization back (`B = -U^{-T}`), and vertex rounding
//!   `w = B ceil(B^{-1} v)`. Each unimodular cone contributes
//!   `ε X^w / prod_j (1 - X^{b_j})`.
//! * [`gf_standard`]: the same pipeline on the transformed polyhedron
//!   `{x̂ : -B x̂ <= r}`, mapped back through `x = r + B x̂`.
//! * [`gf_vrep`]: homogenization `cone((1 0; P R))`, half-open placing
//!   triangulation, parallelepiped numerators, and extraction of the
//!   degree-one part in the homogenizing coordinate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conedecomp::{is_pointed, placing_triangulation, polarize_unimodular, sign_decompose};
use crate::matrix::ceil_vec;
use crate::normal_form::snf;
use crate::polyhedron::{basic_solutions, classify, normalize_standard, standard_to_inequality};
use crate::{Classification, Error, Form, HRepPolyhedron, Int, IntMatrix, Rat, Result};

/// `coeff * X^exponent`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub coeff: Int,
    pub exponent: Vec<Int>,
}

/// `(sum of numerator monomials) / prod_j (1 - X^{u_j})`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrfTerm {
    pub numerator: Vec<Monomial>,
    pub denominator: Vec<Vec<Int>>,
}

impl SrfTerm {
    /// `sign * X^w / prod (1 - X^u)`
    pub fn signed(sign: i8, exponent: Vec<Int>, denominator: Vec<Vec<Int>>) -> Self {
        Self { numerator: vec![Monomial { coeff: Int::from(sign), exponent }], denominator }
    }
}

/// A finite sum of rational terms; the empty sum is the zero function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortRationalFunction {
    pub dim: usize,
    pub terms: Vec<SrfTerm>,
}

impl ShortRationalFunction {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest numerator size over all terms.
    pub fn max_numerator_len(&self) -> usize {
        self.terms.iter().map(|t| t.numerator.len()).max().unwrap_or(0)
    }
}

/// Integral apex `w = B ceil(B^{-1} v)` with
/// `(v + cone B) ∩ Z^n = (w + cone B) ∩ Z^n` for unimodular `B`.
pub fn vertex_round(v: &[Rat], b: &IntMatrix) -> Result<Vec<Int>> {
    if !b.det().abs().is_one() {
        return Err(Error::NotUnimodular);
    }
    let t = b.solve(v).expect("unimodular matrices are invertible");
    Ok(b.mul_vec(&ceil_vec(&t)))
}

/// One unimodular tangent-cone piece: `sign * [w + cone(generators)]`.
#[derive(Clone, Debug)]
pub(crate) struct ConePiece {
    pub sign: i8,
    pub apex: Vec<Int>,
    pub generators: IntMatrix,
}

/// Signed unimodular pieces of all tangent cones of a pointed, nonempty
/// `{x : Ax <= b}`. Handles degenerate vertices (more than `n` tight rows)
/// and lower-dimensional polyhedra, whose polar tangent cones contain lines.
pub(crate) fn tangent_pieces(a: &IntMatrix, b: &[Int]) -> Result<Vec<ConePiece>> {
    let mut pieces = Vec::new();
    for v in basic_solutions(a, b) {
        let polar = a.select_rows(&v.active).transpose();
        for cell in placing_triangulation(&polar) {
            let simple = polar.select_columns(&cell);
            for sc in sign_decompose(&simple)? {
                let generators = polarize_unimodular(&sc.generators)?.transpose();
                let apex = vertex_round(&v.point, &generators)?;
                pieces.push(ConePiece { sign: sc.sign, apex, generators });
            }
        }
    }
    Ok(pieces)
}

/// Generating function of `{x : A'x <= b'}` where `(A', b')` is the
/// inequality system of `p` (for standard form, the stacked system in
/// `R^n`). Empty polyhedra and polyhedra with lines give the zero function.
pub fn gf_inequality(p: &HRepPolyhedron) -> Result<ShortRationalFunction> {
    let n = p.dim();
    if classify(p) != Classification::Pointed {
        return Ok(ShortRationalFunction::zero(n));
    }
    let (a, b) = p.inequality_system();
    let terms = tangent_pieces(&a, &b)?
        .into_iter()
        .map(|pc| SrfTerm::signed(pc.sign, pc.apex, pc.generators.columns()))
        .collect();
    Ok(ShortRationalFunction { dim: n, terms })
}

/// Generating function of `{x in R^n_+ : Ax = b}` in the original variables,
/// with `d = n - k` denominator factors per term.
pub fn gf_standard(p: &HRepPolyhedron) -> Result<ShortRationalFunction> {
    if p.form() != Form::Standard {
        return Err(Error::DimensionMismatch("expected a standard-form polyhedron"));
    }
    let n = p.dim();
    let zero = ShortRationalFunction::zero(n);
    let (a, b) = match normalize_standard(p.a(), p.b()) {
        Ok(ab) => ab,
        Err(Error::Infeasible) => return Ok(zero),
        Err(e) => return Err(e),
    };
    let tr = match standard_to_inequality(&a, &b) {
        Ok(t) => t,
        Err(Error::Infeasible) => return Ok(zero),
        Err(e) => return Err(e),
    };
    if tr.dim() == 0 {
        if tr.offset.iter().any(Signed::is_negative) {
            return Ok(zero);
        }
        return Ok(ShortRationalFunction { dim: n, terms: vec![SrfTerm::signed(1, tr.offset, Vec::new())] });
    }
    let reduced = tr.polyhedron();
    if classify(&reduced) == Classification::Empty {
        return Ok(zero);
    }
    let terms = tangent_pieces(&tr.a_hat, &tr.b_hat)?
        .into_iter()
        .map(|pc| {
            let m = tr.kernel.mul(&pc.generators);
            SrfTerm::signed(pc.sign, tr.lift(&pc.apex), m.columns())
        })
        .collect();
    Ok(ShortRationalFunction { dim: n, terms })
}

/// Generating function by form.
pub fn generating_function(p: &HRepPolyhedron) -> Result<ShortRationalFunction> {
    match p.form() {
        Form::Inequality => gf_inequality(p),
        Form::Standard => gf_standard(p),
    }
}

/// A simplicial cone with some facets removed: point `sum_j t_j g_j` belongs
/// to it iff `t_j >= 0` for closed `j` and `t_j > 0` where `open[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenCone {
    pub generators: IntMatrix,
    /// `open[j]`: the facet opposite generator `j` is excluded.
    pub open: Vec<bool>,
}

impl HalfOpenCone {
    pub fn contains(&self, x: &[Rat]) -> bool {
        let t = self.generators.solve(x).expect("simplicial cones are nonsingular");
        t.iter().zip(&self.open).all(|(tj, &open)| if open { tj.is_positive() } else { !tj.is_negative() })
    }
}

/// Turns the cells of a triangulation into half-open cones that partition
/// their union exactly. A generic reference point `q` (a random positive
/// combination of all generators, redrawn until it avoids every facet
/// hyperplane) decides each facet: it stays closed iff `q` lies on the
/// cell's side of it.
pub fn half_open_flags(cones: &[IntMatrix]) -> Vec<HalfOpenCone> {
    let Some(first) = cones.first() else { return Vec::new() };
    let d = first.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1a9);
    let gens: Vec<Vec<Int>> = cones.iter().flat_map(IntMatrix::columns).collect();
    loop {
        let mut q = vec![Rat::zero(); d];
        for g in &gens {
            let c = Int::from(rng.gen_range(1u32..=1000));
            for (qi, gi) in q.iter_mut().zip(g) {
                *qi += Rat::from_integer(&c * gi);
            }
        }
        let coords: Vec<Vec<Rat>> =
            cones.iter().map(|c| c.solve(&q).expect("simplicial cones are nonsingular")).collect();
        if coords.iter().flatten().any(Zero::is_zero) {
            continue;
        }
        return cones
            .iter()
            .zip(coords)
            .map(|(c, lam)| HalfOpenCone { generators: c.clone(), open: lam.iter().map(Signed::is_negative).collect() })
            .collect();
    }
}

/// Lattice points of the half-open fundamental parallelepiped
/// `{sum_j t_j b_j : 0 <= t_j < 1, or 0 < t_j <= 1 where strict[j]}`.
/// There are exactly `|det B|` of them, one per coset of `B Z^n`.
pub fn parallelepiped_points(b: &IntMatrix, strict: &[bool]) -> Result<Vec<Vec<Int>>> {
    if !b.is_square() || strict.len() != b.cols() {
        return Err(Error::DimensionMismatch("expected a square matrix and one flag per column"));
    }
    let det = b.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = b.rows();
    let adj = b.adjugate();
    let s = snf(b);
    // coset representatives P y with 0 <= y_i < s_i
    let mut y = vec![Int::zero(); n];
    let mut out = Vec::new();
    loop {
        let x = s.p.mul_vec(&y);
        let ax = adj.mul_vec(&x);
        let t: Vec<Rat> = ax
            .into_iter()
            .zip(strict)
            .map(|(num, &st)| {
                let f = Rat::new(num.mod_floor(&det.abs()) * det.signum(), det.clone());
                let f = if f.is_negative() { f + Rat::one() } else { f };
                if st && f.is_zero() {
                    Rat::one()
                } else {
                    f
                }
            })
            .collect();
        let pt = b.mul_rat_vec(&t);
        out.push(pt.into_iter().map(|v| v.to_integer()).collect::<Vec<Int>>());
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return Ok(out);
            }
            y[i] += 1;
            if y[i] < s.diag[i] {
                break;
            }
            y[i] = Int::zero();
            i += 1;
        }
    }
}

/// Generating function of `conv(P) + cone(R)` (points and rays as columns).
/// Returns the zero function when `cone(R)` contains a line or `P` has no
/// columns.
pub fn gf_vrep(points: &IntMatrix, rays: &IntMatrix) -> Result<ShortRationalFunction> {
    let n = points.rows();
    if rays.cols() > 0 && rays.rows() != n {
        return Err(Error::DimensionMismatch("points and rays live in different dimensions"));
    }
    if points.cols() == 0 {
        return Ok(ShortRationalFunction::zero(n));
    }
    let mut columns: Vec<Vec<Int>> = Vec::new();
    for p in points.columns() {
        let mut c = vec![Int::one()];
        c.extend(p);
        columns.push(c);
    }
    for r in rays.columns() {
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        let mut c = vec![Int::zero()];
        c.extend(r);
        columns.push(c);
    }
    let homog = IntMatrix::from_columns(n + 1, &columns);
    if homog.rank() < n + 1 {
        return Err(Error::NotFullDim);
    }
    if !is_pointed(&homog) {
        return Ok(ShortRationalFunction::zero(n));
    }
    let cells: Vec<IntMatrix> = placing_triangulation(&homog).iter().map(|c| homog.select_columns(c)).collect();
    let mut terms = Vec::new();
    for cone in half_open_flags(&cells) {
        if let Some(t) = dehomogenized_term(&cone)? {
            terms.push(t);
        }
    }
    Ok(ShortRationalFunction { dim: n, terms })
}

/// Degree-one part in the homogenizing coordinate `z` of
/// `sum_{m in Π} X^m / prod_j (1 - X^{a_j})`. Factors of `z`-degree `h > 0`
/// expand as `1 + [h = 1] z X^a + O(z^2)`; factors with `h = 0` stay in the
/// denominator.
fn dehomogenized_term(cone: &HalfOpenCone) -> Result<Option<SrfTerm>> {
    let gens = cone.generators.columns();
    let tail = |v: &[Int]| v[1..].to_vec();
    let mut numerator: BTreeMap<Vec<Int>, Int> = BTreeMap::new();
    let mut add = |e: Vec<Int>| *numerator.entry(e).or_insert_with(Int::zero) += 1;
    for pt in parallelepiped_points(&cone.generators, &cone.open)? {
        if pt[0].is_one() {
            add(tail(&pt));
        } else if pt[0].is_zero() {
            for g in gens.iter().filter(|g| g[0].is_one()) {
                add(tail(&pt).iter().zip(&g[1..]).map(|(x, y)| x + y).collect());
            }
        }
    }
    let numerator: Vec<Monomial> = numerator
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(exponent, coeff)| Monomial { coeff, exponent })
        .collect();
    if numerator.is_empty() {
        return Ok(None);
    }
    let denominator = gens.iter().filter(|g| g[0].is_zero()).map(|g| tail(g)).collect();
    Ok(Some(SrfTerm { numerator, denominator }))
}

pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Whether `count <= binom(d + k, k) * d^{log2 Δ}`. The integer bound with
/// `floor(log2 Δ)` is tried first; the real-valued comparison is only a
/// fallback.
pub fn brion_term_bound_holds(count: usize, d: usize, k: usize, delta: &Int) -> bool {
    let delta = if delta.is_positive() { delta.clone() } else { Int::one() };
    let floor_log = delta.bits() - 1;
    let binom = binomial(d + k, k);
    let exact = &binom * num_traits::pow(Int::from(d), floor_log as usize);
    if Int::from(count) <= exact {
        return true;
    }
    let (Some(c), Some(b), Some(dl)) = (Int::from(count).to_f64(), binom.to_f64(), delta.to_f64()) else {
        return false;
    };
    libm_log2(c) <= libm_log2(b) + libm_log2(dl) * libm_log2(d as f64)
}

/// Term bound `binom(d + k, k - 1)` for the V-representation route.
pub fn vrep_term_bound(d: usize, k: usize) -> Int {
    if k == 0 {
        return Int::zero();
    }
    binomial(d + k, k - 1)
}

fn libm_log2(x: f64) -> f64 {
    // no_std: log2 via the exponent and a short series for the mantissa
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64 - 1023;
    let mant = f64::from_bits((bits & ((1u64 << 52) - 1)) | (1023u64 << 52));
    // ln(m) for m in [1, 2) via atanh series
    let y = (mant - 1.0) / (mant + 1.0);
    let y2 = y * y;
    let mut term = y;
    let mut sum = 0.0;
    let mut k = 1.0;
    while k < 60.0 {
        sum += term / k;
        term *= y2;
        k += 2.0;
    }
    exp as f64 + 2.0 * sum / core::f64::consts::LN_2
}
