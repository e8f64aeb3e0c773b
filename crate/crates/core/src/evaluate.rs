//! Limits of short rational generating functions at `X -> 1`.
//!
//! Along `X = exp(τ l)` every denominator factor becomes
//! `1 / (1 - e^{ξτ}) = -(1/(ξτ)) g(ξτ)` with `g(x) = x / (e^x - 1)`, and every
//! numerator monomial becomes `e^{ητ}`. A term with `d` factors is then
//! `τ^{-d}` times a power series; its constant Laurent coefficient is the
//! coefficient of `τ^d` in that series. Summing the constant coefficients
//! over all terms gives the lattice-point count.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::genfun::ShortRationalFunction;
use crate::matrix::dot;
use crate::series;
use crate::{Error, Int, Rat, Result};

/// Direction `l` on the moment curve with all `ξ = <l, u>` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericDirection {
    pub l: Vec<Int>,
    /// `xi[i][j] = <l, u_ij>` for denominator `j` of term `i`.
    pub xi: Vec<Vec<Int>>,
    /// `eta[i][m] = <l, w>` for numerator monomial `m` of term `i`.
    pub eta: Vec<Vec<Int>>,
}

/// `td_0 .. td_d` of a list of `d` nonzero integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToddTable {
    pub values: Vec<Rat>,
}

/// Smallest `τ >= 1` such that `l = (1, τ, ..., τ^{n-1})` is orthogonal to no
/// denominator vector. A nonzero `u` vanishes on at most `n - 1` values of
/// `τ`, so the search terminates.
pub fn generic_direction(f: &ShortRationalFunction) -> GenericDirection {
    let n = f.dim;
    let mut tau = Int::one();
    loop {
        let mut l = Vec::with_capacity(n);
        let mut p = Int::one();
        for _ in 0..n {
            l.push(p.clone());
            p *= &tau;
        }
        let xi: Vec<Vec<Int>> = f.terms.iter().map(|t| t.denominator.iter().map(|u| dot(&l, u)).collect()).collect();
        if xi.iter().flatten().all(|x| !x.is_zero()) {
            let eta = f.terms.iter().map(|t| t.numerator.iter().map(|m| dot(&l, &m.exponent)).collect()).collect();
            return GenericDirection { l, xi, eta };
        }
        tau += 1;
    }
}

/// Coefficients of `prod_i τξ_i / (1 - e^{-τξ_i})` up to `τ^d`.
pub fn todd_values(xi: &[Int]) -> ToddTable {
    let d = xi.len();
    // x / (1 - e^{-x}) = g(-x)
    let g = series::bernoulli_generating(d + 1);
    let mut acc = vec![Rat::zero(); d + 1];
    acc[0] = Rat::one();
    for x in xi {
        acc = series::mul(&acc, &series::scale_argument(&g, &-x), d + 1);
    }
    ToddTable { values: acc }
}

/// Integer form of the series of order `d`: `g(x) = (1/den) sum_k beta_k x^k`
/// and `exp(x) = (1/d!) sum_k fact_k x^k` with `fact_k = d!/k!`.
struct IntegerSeries {
    beta: Vec<Int>,
    den: Int,
    fact: Vec<Int>,
    d_factorial: Int,
}

impl IntegerSeries {
    fn new(d: usize) -> Self {
        let g = series::bernoulli_generating(d + 1);
        let den = g.iter().fold(Int::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let beta = g.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut fact = vec![Int::one(); d + 1];
        for k in (0..d).rev() {
            fact[k] = &fact[k + 1] * Int::from(k + 1);
        }
        let d_factorial = fact[0].clone();
        Self { beta, den, fact, d_factorial }
    }
}

fn int_mul(a: &[Int], b: &[Int], len: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Laurent coefficients of one term along the direction: `out[i]` is the
/// coefficient of `τ^{i-d}`, for `i = 0..=d`.
fn term_laurent(coeffs: &[Int], eta: &[Int], xi: &[Int], s: &IntegerSeries) -> Vec<Rat> {
    let d = xi.len();
    let len = d + 1;
    let mut acc = vec![Int::zero(); len];
    for (c, e) in coeffs.iter().zip(eta) {
        let mut pow = c.clone();
        for (a, f) in acc.iter_mut().zip(&s.fact) {
            *a += &pow * f;
            pow *= e;
        }
    }
    let mut denom = s.d_factorial.clone();
    for x in xi {
        let mut pow = Int::one();
        let g: Vec<Int> = s
            .beta
            .iter()
            .map(|b| {
                let v = b * &pow;
                pow *= x;
                v
            })
            .collect();
        acc = int_mul(&acc, &g, len);
        denom *= &s.den * -x;
    }
    acc.into_iter().map(|a| Rat::new(a, denom.clone())).collect()
}

/// Exact value of `lim_{X -> 1} f`. Fails with [`Error::NonPolytope`] when
/// the sum keeps a pole at `τ = 0`, and with [`Error::NonInteger`] when the
/// finite limit is not an integer.
pub fn specialize_count(f: &ShortRationalFunction) -> Result<Int> {
    let dir = generic_direction(f);
    let max_d = f.terms.iter().map(|t| t.denominator.len()).max().unwrap_or(0);
    // laurent[k] is the coefficient of τ^{k - max_d}
    let mut laurent = vec![Rat::zero(); max_d + 1];
    let mut tables: Vec<Option<IntegerSeries>> = (0..=max_d).map(|_| None).collect();
    for (i, t) in f.terms.iter().enumerate() {
        let coeffs: Vec<Int> = t.numerator.iter().map(|m| m.coeff.clone()).collect();
        let table = tables[t.denominator.len()].get_or_insert_with(|| IntegerSeries::new(t.denominator.len()));
        let part = term_laurent(&coeffs, &dir.eta[i], &dir.xi[i], table);
        let shift = max_d - t.denominator.len();
        for (k, v) in part.into_iter().enumerate() {
            laurent[k + shift] += v;
        }
    }
    let constant = laurent.pop().expect("at least the constant coefficient");
    if laurent.iter().any(|c| !c.is_zero()) {
        return Err(Error::NonPolytope);
    }
    if !constant.is_integer() {
        return Err(Error::NonInteger);
    }
    Ok(constant.to_integer())
}

/// The same limit through Todd polynomials:
/// `sum_i (1/prod ξ'_ij) sum_m c_m sum_j η_m^j / j! td_{d-j}(ξ'_i)` with
/// `ξ' = -ξ`. Does not check for poles.
pub fn specialize_count_todd(f: &ShortRationalFunction) -> Rat {
    let dir = generic_direction(f);
    let mut total = Rat::zero();
    for (i, t) in f.terms.iter().enumerate() {
        let xi: Vec<Int> = dir.xi[i].iter().map(|x| -x).collect();
        let d = xi.len();
        let td = todd_values(&xi).values;
        let prod: Int = xi.iter().product();
        let mut inner = Rat::zero();
        for (m, eta) in t.numerator.iter().zip(&dir.eta[i]) {
            let powers = series::exp_scaled(eta, d + 1);
            let s: Rat = (0..=d).map(|j| &powers[j] * &td[d - j]).sum();
            inner += s * Rat::from_integer(m.coeff.clone());
        }
        total += inner / Rat::from_integer(prod);
    }
    total
}

fn monomial(x: &[Rat], e: &[Int]) -> Result<Rat> {
    let mut acc = Rat::one();
    for (xi, ei) in x.iter().zip(e) {
        if ei.is_zero() {
            continue;
        }
        if xi.is_zero() {
            if ei.is_negative() {
                return Err(Error::PoleAt);
            }
            return Ok(Rat::zero());
        }
        let k: i32 = i32::try_from(ei.abs()).map_err(|_| Error::ExponentTooLarge)?;
        let p = num_traits::pow(xi.clone(), k as usize);
        acc *= if ei.is_negative() { p.recip() } else { p };
    }
    Ok(acc)
}

/// Exact value of `f` at a rational point.
pub fn evaluate_at(f: &ShortRationalFunction, x: &[Rat]) -> Result<Rat> {
    if x.len() != f.dim {
        return Err(Error::DimensionMismatch("point dimension differs from the function's"));
    }
    let mut total = Rat::zero();
    for t in &f.terms {
        let mut den = Rat::one();
        for u in &t.denominator {
            let factor = Rat::one() - monomial(x, u)?;
            if factor.is_zero() {
                return Err(Error::PoleAt);
            }
            den *= factor;
        }
        let mut num = Rat::zero();
        for m in &t.numerator {
            num += monomial(x, &m.exponent)? * Rat::from_integer(m.coeff.clone());
        }
        total += num / den;
    }
    Ok(total)
}
