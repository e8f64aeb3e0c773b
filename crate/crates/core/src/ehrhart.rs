//! Ehrhart quasi-polynomials `m -> |mP ∩ Z^n|` of rational polytopes.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::evaluate::specialize_count;
use crate::genfun::generating_function;
use crate::polyhedron::is_polytope;
use crate::{classify, vertices, Classification, Error, Form, HRepPolyhedron, Int, IntMatrix, Rat, Result};

/// `|mP ∩ Z^n| = sum_j coeffs[m mod period][j] m^j` for `m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub dim: usize,
    pub period: Int,
    /// One coefficient vector `e_0..e_d` per residue class.
    pub coeffs: Vec<Vec<Rat>>,
}

impl QuasiPolynomial {
    /// Leading coefficients of all residue classes.
    pub fn leading(&self) -> Vec<&Rat> {
        self.coeffs.iter().map(|c| &c[self.dim]).collect()
    }
}

/// Lcm of the denominators of all vertex coordinates.
pub fn dilation_period(p: &HRepPolyhedron) -> Result<Int> {
    if classify(p) == Classification::Empty {
        return Err(Error::Empty);
    }
    if !is_polytope(p) {
        return Err(Error::Unbounded);
    }
    let mut t = Int::one();
    for v in vertices(p)? {
        for x in &v.point {
            t = t.lcm(x.denom());
        }
    }
    Ok(t)
}

fn count_dilation(p: &HRepPolyhedron, q: &Int) -> Result<Int> {
    specialize_count(&generating_function(&p.dilate(q))?)
}

/// Interpolates `d + 1` dilation counts per residue class, where `d = n` for
/// inequality form and `d = n - rank A` for standard form.
pub fn ehrhart_quasipolynomial(p: &HRepPolyhedron) -> Result<QuasiPolynomial> {
    let t = dilation_period(p)?;
    let d = match p.form() {
        Form::Inequality => p.dim(),
        Form::Standard => p.dim() - p.a().rank(),
    };
    let period = usize::try_from(&t).map_err(|_| Error::TooLarge { limit: usize::MAX as u64 })?;
    let mut coeffs = vec_of_empty(period);
    for rho in 1..=period {
        let qs: Vec<Int> = (0..=d).map(|i| Int::from(rho) + &t * Int::from(i)).collect();
        let values: Vec<Rat> = qs.iter().map(|q| count_dilation(p, q).map(Rat::from_integer)).collect::<Result<_>>()?;
        let vandermonde = IntMatrix::from_big_rows(
            qs.iter().map(|q| (0..=d).map(|j| num_traits::pow(q.clone(), j)).collect()).collect(),
            d + 1,
        )?;
        coeffs[rho % period] = vandermonde.solve(&values).expect("distinct nodes");
    }
    Ok(QuasiPolynomial { dim: d, period: t, coeffs })
}

fn vec_of_empty(n: usize) -> Vec<Vec<Rat>> {
    (0..n).map(|_| Vec::new()).collect()
}

/// Value at `m >= 1`.
pub fn eval_quasipolynomial(qp: &QuasiPolynomial, m: &Int) -> Result<Int> {
    if m < &Int::one() {
        return Err(Error::DimensionMismatch("quasi-polynomials are evaluated at m >= 1"));
    }
    let rho = usize::try_from(m.mod_floor(&qp.period)).expect("residue below the period");
    let mut value = Rat::zero();
    let mut pow = Rat::one();
    let mr = Rat::from_integer(m.clone());
    for c in &qp.coeffs[rho] {
        value += c * &pow;
        pow *= &mr;
    }
    if !value.is_integer() {
        return Err(Error::NonInteger);
    }
    Ok(value.to_integer())
}
