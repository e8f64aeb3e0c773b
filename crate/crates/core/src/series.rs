//! Truncated power series in one variable with exact rational coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::{Int, Rat};

/// Product of two series, truncated to `len` coefficients.
pub fn mul(a: &[Rat], b: &[Rat], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
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

/// Multiplicative inverse of a series with nonzero constant term.
pub fn inverse(a: &[Rat], len: usize) -> Vec<Rat> {
    assert!(!a[0].is_zero(), "series inverse needs a nonzero constant term");
    let a0 = a[0].recip();
    let mut out: Vec<Rat> = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            out.push(a0.clone());
            continue;
        }
        let mut s = Rat::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out.push(-s * &a0);
    }
    out
}

/// `exp(c τ)` truncated to `len` coefficients.
pub fn exp_scaled(c: &Int, len: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(len);
    let mut term = Rat::one();
    let c = Rat::from_integer(c.clone());
    for k in 0..len {
        out.push(term.clone());
        term = term * &c / Rat::from_integer(Int::from(k + 1));
    }
    out
}

/// Coefficients of `x / (e^x - 1) = sum_k B_k x^k / k!` (so `B_1 = -1/2`).
pub fn bernoulli_generating(len: usize) -> Vec<Rat> {
    // (e^x - 1) / x = sum_k x^k / (k + 1)!
    let mut denom = Vec::with_capacity(len);
    let mut fact = Int::one();
    for k in 0..len {
        fact *= Int::from(k + 1);
        denom.push(Rat::new(Int::one(), fact.clone()));
    }
    inverse(&denom, len)
}

/// Substitutes `x -> c x`: coefficient `k` is multiplied by `c^k`.
pub fn scale_argument(a: &[Rat], c: &Int) -> Vec<Rat> {
    let mut pow = Int::one();
    a.iter()
        .map(|x| {
            let v = x * Rat::from_integer(pow.clone());
            pow *= c;
            v
        })
        .collect()
}
