//! Brute-force ground truth: exhaustive lattice-point scans, a knapsack
//! dynamic program, and sampling checks of signed cone identities.
//!
//! Nothing here shares code with the generating-function pipeline beyond
//! the matrix type and vertex enumeration (used only to size the scan box).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conedecomp::SignedCone;
use crate::polyhedron::is_polytope;
use crate::{classify, vertices, Classification, Error, HRepPolyhedron, Int, IntMatrix, Rat, Result};

/// Scan limit on enumerated candidate prefixes.
pub const SCAN_LIMIT: u64 = 10_000_000;

/// Integer box `lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntBox {
    pub lower: Vec<Int>,
    pub upper: Vec<Int>,
}

/// Smallest integer box around the vertices of a nonempty polytope.
pub fn bounding_box(p: &HRepPolyhedron) -> Result<Option<IntBox>> {
    if classify(p) == Classification::Empty {
        return Ok(None);
    }
    if !is_polytope(p) {
        return Err(Error::Unbounded);
    }
    let n = p.dim();
    let vs = vertices(p)?;
    let mut lower: Vec<Int> = vec![Int::zero(); n];
    let mut upper: Vec<Int> = vec![Int::zero(); n];
    for i in 0..n {
        lower[i] = vs.iter().map(|v| v.point[i].floor().to_integer()).min().expect("polytopes have vertices");
        upper[i] = vs.iter().map(|v| v.point[i].ceil().to_integer()).max().expect("polytopes have vertices");
    }
    Ok(Some(IntBox { lower, upper }))
}

struct Scan {
    a: Vec<Vec<i128>>,
    b: Vec<i128>,
    lo: Vec<i128>,
    hi: Vec<i128>,
    // rest_min[r][i]: minimum of sum_{j > i} a_rj x_j over the box
    rest_min: Vec<Vec<i128>>,
    nodes: u64,
}

fn small(x: &Int) -> Result<i128> {
    x.to_i64().map(i128::from).ok_or(Error::TooLarge { limit: SCAN_LIMIT })
}

impl Scan {
    fn new(a: &IntMatrix, b: &[Int], bx: &IntBox) -> Result<Self> {
        let a: Vec<Vec<i128>> = a.to_rows().iter().map(|r| r.iter().map(small).collect()).collect::<Result<_>>()?;
        let b: Vec<i128> = b.iter().map(small).collect::<Result<_>>()?;
        let lo: Vec<i128> = bx.lower.iter().map(small).collect::<Result<_>>()?;
        let hi: Vec<i128> = bx.upper.iter().map(small).collect::<Result<_>>()?;
        let n = lo.len();
        let rest_min = a
            .iter()
            .map(|row| {
                let mut out = vec![0i128; n];
                for i in (0..n.saturating_sub(1)).rev() {
                    let j = i + 1;
                    out[i] = out[j] + (row[j] * lo[j]).min(row[j] * hi[j]);
                }
                out
            })
            .collect();
        Ok(Self { a, b, lo, hi, rest_min, nodes: 0 })
    }

    /// Feasible range of `x_i` given the prefix sums `s_r = sum_{j < i} a_rj x_j`.
    fn range(&self, i: usize, sums: &[i128]) -> Option<(i128, i128)> {
        let (mut lo, mut hi) = (self.lo[i], self.hi[i]);
        for (r, row) in self.a.iter().enumerate() {
            let c = self.b[r] - sums[r] - self.rest_min[r][i];
            let a = row[i];
            if a > 0 {
                hi = hi.min(c.div_euclid(a));
            } else if a < 0 {
                lo = lo.max(-(c.div_euclid(-a)));
            } else if c < 0 {
                return None;
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn walk(
        &mut self,
        prefix: &mut Vec<i128>,
        sums: &mut Vec<i128>,
        leaf: &mut dyn FnMut(&[i128], i128, i128),
    ) -> Result<()> {
        let n = self.lo.len();
        let i = prefix.len();
        let Some((lo, hi)) = self.range(i, sums) else { return Ok(()) };
        if i + 1 == n {
            leaf(prefix, lo, hi);
            return Ok(());
        }
        for x in lo..=hi {
            self.nodes += 1;
            if self.nodes > SCAN_LIMIT {
                return Err(Error::TooLarge { limit: SCAN_LIMIT });
            }
            for (s, row) in sums.iter_mut().zip(&self.a) {
                *s += row[i] * x;
            }
            prefix.push(x);
            self.walk(prefix, sums, leaf)?;
            prefix.pop();
            for (s, row) in sums.iter_mut().zip(&self.a) {
                *s -= row[i] * x;
            }
        }
        Ok(())
    }
}

fn scan(p: &HRepPolyhedron, bx: Option<&IntBox>, leaf: &mut dyn FnMut(&[i128], i128, i128)) -> Result<()> {
    let (a, b) = p.inequality_system();
    let derived;
    let bx = match bx {
        Some(bx) => bx,
        None => match bounding_box(p)? {
            Some(bx) => {
                derived = bx;
                &derived
            }
            None => return Ok(()),
        },
    };
    if bx.lower.len() != p.dim() || bx.upper.len() != p.dim() {
        return Err(Error::DimensionMismatch("box dimension differs from the polyhedron's"));
    }
    if p.dim() == 0 {
        if b.iter().all(|x| !x.is_negative()) {
            leaf(&[], 0, 0);
        }
        return Ok(());
    }
    let mut s = Scan::new(&a, &b, bx)?;
    let mut sums = vec![0i128; a.rows()];
    s.walk(&mut Vec::new(), &mut sums, leaf)
}

/// `|P ∩ Z^n ∩ box|` by exhaustive scan; without a box, `P` must be a
/// polytope and the box comes from its vertices.
pub fn brute_count(p: &HRepPolyhedron, bx: Option<&IntBox>) -> Result<Int> {
    let mut total = Int::zero();
    scan(p, bx, &mut |_, lo, hi| total += hi - lo + 1)?;
    Ok(total)
}

/// All lattice points of `P ∩ box` in lexicographic order.
pub fn lattice_points(p: &HRepPolyhedron, bx: Option<&IntBox>) -> Result<Vec<Vec<Int>>> {
    let mut out = Vec::new();
    scan(p, bx, &mut |prefix, lo, hi| {
        if prefix.is_empty() && lo == 0 && hi == 0 && p.dim() == 0 {
            out.push(Vec::new());
            return;
        }
        for x in lo..=hi {
            let mut pt: Vec<Int> = prefix.iter().map(|&v| Int::from(v)).collect();
            pt.push(Int::from(x));
            out.push(pt);
        }
    })?;
    Ok(out)
}

/// `|{x in Z^n_+ : Ax = b}|` by an unbounded knapsack recurrence over the
/// right-hand sides `0 <= y <= b`. Needs nonnegative entries and no zero
/// column.
pub fn knapsack_dp_count(a: &IntMatrix, b: &[Int]) -> Result<Int> {
    let k = a.rows();
    if b.len() != k {
        return Err(Error::DimensionMismatch("right-hand side length differs from row count"));
    }
    if a.to_rows().iter().flatten().any(Signed::is_negative) {
        return Err(Error::DimensionMismatch("knapsack entries must be nonnegative"));
    }
    if b.iter().any(Signed::is_negative) {
        return Ok(Int::zero());
    }
    let cols = a.columns();
    if cols.iter().any(|c| c.iter().all(Zero::is_zero)) {
        return Err(Error::Unbounded);
    }
    let dims: Vec<usize> = b
        .iter()
        .map(|x| x.to_usize().map(|v| v + 1))
        .collect::<Option<_>>()
        .ok_or(Error::TooLarge { limit: SCAN_LIMIT })?;
    let size: usize =
        dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).ok_or(Error::TooLarge { limit: SCAN_LIMIT })?;
    if size as u64 > SCAN_LIMIT {
        return Err(Error::TooLarge { limit: SCAN_LIMIT });
    }
    // row-major index, last coordinate fastest
    let mut strides = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut y = vec![0usize; k];
        for i in 0..k {
            y[i] = idx / strides[i];
            idx %= strides[i];
        }
        y
    };
    let mut dp = vec![Int::zero(); size];
    dp[0] = Int::from(1);
    for c in &cols {
        let c: Vec<usize> = c.iter().map(|x| x.to_usize().unwrap_or(usize::MAX)).collect();
        for idx in 0..size {
            let y = decode(idx);
            if y.iter().zip(&c).any(|(yi, ci)| yi < ci) {
                continue;
            }
            let prev: usize = y.iter().zip(&c).zip(&strides).map(|((yi, ci), s)| (yi - ci) * s).sum();
            let add = dp[prev].clone();
            dp[idx] += add;
        }
    }
    Ok(dp[size - 1].clone())
}

/// Outcome of [`indicator_identity_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub accepted: usize,
    pub rejected: usize,
    pub failures: Vec<Vec<Rat>>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const SAMPLE_DENOMINATOR: i64 = 7;

fn strictly_inside(adj_rows: &[Vec<Int>], det_sign: bool, x: &[Rat]) -> bool {
    adj_rows.iter().all(|r| {
        let v: Rat = r.iter().zip(x).map(|(a, xi)| xi * Rat::from_integer(a.clone())).sum();
        v.is_positive() == det_sign
    })
}

/// Checks `[cone U] = sum_i ε_i [cone U_i]` at random rational points off
/// every facet hyperplane of every involved cone. Half the samples are
/// positive combinations of the generators of one of the involved cones, so
/// that thin cones get hit too.
pub fn indicator_identity_check(
    target: &IntMatrix,
    signed: &[SignedCone],
    samples: usize,
    seed: u64,
) -> IdentityReport {
    let n = target.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cones: Vec<&IntMatrix> = core::iter::once(target).chain(signed.iter().map(|c| &c.generators)).collect();
    let facets: Vec<(Vec<Vec<Int>>, bool)> =
        cones.iter().map(|c| (c.adjugate().to_rows(), c.det().is_positive())).collect();
    let mag = cones.iter().map(|c| c.max_abs()).max().unwrap_or_default().to_i64().unwrap_or(i64::MAX / 1000).max(1);
    let m = 10 * mag * SAMPLE_DENOMINATOR;
    let den = Int::from(SAMPLE_DENOMINATOR);
    let mut report = IdentityReport { accepted: 0, rejected: 0, failures: Vec::new() };
    let max_rejections = 100 * samples.max(1);
    while report.accepted < samples && report.rejected < max_rejections {
        let x: Vec<Rat> = if rng.gen_bool(0.5) {
            (0..n).map(|_| Rat::new(Int::from(rng.gen_range(-m..=m)), den.clone())).collect()
        } else {
            let cone = cones[rng.gen_range(0..cones.len())];
            let c: Vec<Rat> = (0..cone.cols())
                .map(|_| Rat::new(Int::from(rng.gen_range(1..=10 * SAMPLE_DENOMINATOR)), den.clone()))
                .collect();
            cone.mul_rat_vec(&c)
        };
        let on_hyperplane = facets.iter().any(|(rows, _)| {
            rows.iter()
                .any(|r| r.iter().zip(&x).map(|(a, xi)| xi * Rat::from_integer(a.clone())).sum::<Rat>().is_zero())
        });
        if on_hyperplane {
            report.rejected += 1;
            continue;
        }
        report.accepted += 1;
        let lhs = i64::from(strictly_inside(&facets[0].0, facets[0].1, &x));
        let rhs: i64 = signed
            .iter()
            .zip(&facets[1..])
            .filter(|(_, (rows, pos))| strictly_inside(rows, *pos, &x))
            .map(|(c, _)| i64::from(c.sign))
            .sum();
        if lhs != rhs {
            report.failures.push(x);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{sign_decompose, Form};

    fn cols(c: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(c).transpose()
    }

    #[test]
    fn brute_count_examples() {
        let square =
            HRepPolyhedron::from_i64(Form::Inequality, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[2, 0, 2, 0]).unwrap();
        assert_eq!(brute_count(&square, None).unwrap(), Int::from(9));
        let knap = HRepPolyhedron::from_i64(Form::Standard, &[&[1, 2]], &[4]).unwrap();
        assert_eq!(brute_count(&knap, None).unwrap(), Int::from(3));
        assert_eq!(
            lattice_points(&knap, None).unwrap(),
            vec![vec![Int::from(0), Int::from(2)], vec![Int::from(2), Int::from(1)], vec![Int::from(4), Int::from(0)]]
        );
        let empty = HRepPolyhedron::from_i64(Form::Inequality, &[&[1], &[-1]], &[-1, 0]).unwrap();
        assert_eq!(brute_count(&empty, None).unwrap(), Int::zero());
        let ray = HRepPolyhedron::from_i64(Form::Inequality, &[&[-1]], &[0]).unwrap();
        assert_eq!(brute_count(&ray, None), Err(Error::Unbounded));
        let bx = IntBox { lower: vec![Int::from(0)], upper: vec![Int::from(5)] };
        assert_eq!(brute_count(&ray, Some(&bx)).unwrap(), Int::from(6));
    }

    #[test]
    fn knapsack_dp_examples() {
        assert_eq!(knapsack_dp_count(&IntMatrix::from_rows(&[[1, 2]]), &[Int::from(4)]).unwrap(), Int::from(3));
        assert_eq!(knapsack_dp_count(&IntMatrix::from_rows(&[[1, 1, 1]]), &[Int::from(3)]).unwrap(), Int::from(10));
        let a = IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]);
        // x1 + x2 = 2, x2 + x3 = 1
        assert_eq!(knapsack_dp_count(&a, &[Int::from(2), Int::from(1)]).unwrap(), Int::from(2));
    }

    #[test]
    fn identity_check_detects_sign_errors() {
        let u = cols(&[&[1, 0], &[1, 3]]);
        let mut dec = sign_decompose(&u).unwrap();
        let report = indicator_identity_check(&u, &dec, 100, 7);
        assert!(report.passed());
        assert_eq!(report.accepted, 100);
        dec[0].sign = -dec[0].sign;
        assert!(!indicator_identity_check(&u, &dec, 100, 7).passed());
    }
}
