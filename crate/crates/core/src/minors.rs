//! Statistics over all `k x k` minors of a matrix.

use alloc::vec::Vec;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Int, IntMatrix};

/// `delta_max` is the largest absolute `k`-minor, `delta_gcd` / `delta_lcm`
/// the gcd / lcm of the nonzero ones. All three are zero when every
/// `k`-minor vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorStats {
    pub order: usize,
    pub delta_max: Int,
    pub delta_gcd: Int,
    pub delta_lcm: Int,
}

/// Exhaustive scan over all `k x k` minors. Exponential in the dimensions;
/// intended for small matrices.
pub fn delta_stats(a: &IntMatrix, k: usize) -> MinorStats {
    assert!(k <= a.rows().min(a.cols()), "minor order exceeds matrix size");
    let mut max = Int::zero();
    let mut gcd = Int::zero();
    let mut lcm = Int::zero();
    let row_sets: Vec<Vec<usize>> = (0..a.rows()).combinations(k).collect();
    for cols in (0..a.cols()).combinations(k) {
        for rows in &row_sets {
            let d = a.select(rows, &cols).det().abs();
            if d.is_zero() {
                continue;
            }
            if d > max {
                max = d.clone();
            }
            gcd = gcd.gcd(&d);
            lcm = if lcm.is_zero() { d } else { lcm.lcm(&d) };
        }
    }
    MinorStats { order: k, delta_max: max, delta_gcd: gcd, delta_lcm: lcm }
}

/// `Δ(A)`: minor statistics at order `rank A`.
pub fn rank_stats(a: &IntMatrix) -> MinorStats {
    delta_stats(a, a.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(rows: &[&[i64]], k: usize) -> (i64, i64, i64) {
        let s = delta_stats(&IntMatrix::from_rows(rows), k);
        let f = |x: Int| i64::try_from(x).unwrap();
        (f(s.delta_max), f(s.delta_gcd), f(s.delta_lcm))
    }

    #[test]
    fn examples() {
        assert_eq!(stats(&[&[1, 0], &[0, 1], &[1, 1]], 2), (1, 1, 1));
        assert_eq!(stats(&[&[1, 2], &[3, 4]], 2), (2, 2, 2));
        assert_eq!(stats(&[&[1, 2], &[3, 4]], 1), (4, 1, 12));
        assert_eq!(stats(&[&[1, 2], &[2, 4]], 2), (0, 0, 0));
    }
}
