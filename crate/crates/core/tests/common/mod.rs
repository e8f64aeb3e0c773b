//! Random instance generators and test-side oracles shared by the
//! integration suites.
#![allow(dead_code)]

use itertools::Itertools;
use latcount_core::oracle::brute_count;
use latcount_core::polyhedron::is_polytope;
use latcount_core::*;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| Int::from(rng.gen_range(lo..=hi))).collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

pub fn count(p: &HRepPolyhedron) -> Int {
    let f = match p.form() {
        Form::Inequality => gf_inequality(p),
        Form::Standard => gf_standard(p),
    };
    specialize_count(&f.unwrap()).unwrap()
}

/// Bounded, nonempty `{Ax <= b}` with `n + k` rows, `rank A = n`, entries of
/// `A` in `[-e, e]` and `b` in `[0, bmax]` (so the origin is feasible).
/// Rejects instances whose oracle scan exceeds the cap or whose `Δ` is above
/// `delta_cap`.
pub fn bounded_inequality(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    e: i64,
    bmax: i64,
    delta_cap: i64,
) -> (HRepPolyhedron, Int) {
    loop {
        let a = random_matrix(rng, n + k, n, -e, e);
        if a.rank() < n {
            continue;
        }
        let b: Vec<Int> = (0..n + k).map(|_| Int::from(rng.gen_range(0..=bmax))).collect();
        let p = HRepPolyhedron::inequality(a.clone(), b).unwrap();
        if !is_polytope(&p) {
            continue;
        }
        let delta = delta_stats(&a, n).delta_max;
        if delta > Int::from(delta_cap) {
            continue;
        }
        match brute_count(&p, None) {
            Ok(c) => return (p, c),
            Err(_) => continue,
        }
    }
}

/// Hyperplane normal through `n` points of `R^n`: the generalized cross
/// product of the `n - 1` difference vectors.
fn normal_through(points: &[Vec<Int>]) -> Vec<Int> {
    let n = points[0].len();
    let diffs: Vec<Vec<Int>> =
        points[1..].iter().map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect()).collect();
    (0..n)
        .map(|i| {
            let cols: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let rows: Vec<Vec<Int>> = diffs.iter().map(|d| cols.iter().map(|&j| d[j].clone()).collect()).collect();
            let det = if n == 1 { Int::from(1) } else { IntMatrix::from_big_rows(rows, n - 1).unwrap().det() };
            if i % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// Facet description of a full-dimensional `conv(points)` by brute force
/// over all `n`-subsets of points.
pub fn facets_of_hull(points: &[Vec<Int>]) -> HRepPolyhedron {
    let n = points[0].len();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Int> = Vec::new();
    let dot = |a: &[Int], b: &[Int]| -> Int { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    for subset in (0..points.len()).combinations(n) {
        let chosen: Vec<Vec<Int>> = subset.iter().map(|&i| points[i].clone()).collect();
        let mut normal = normal_through(&chosen);
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let level = dot(&normal, &chosen[0]);
        let sides: Vec<Int> = points.iter().map(|p| dot(&normal, p) - &level).collect();
        let above = sides.iter().any(Signed::is_positive);
        let below = sides.iter().any(Signed::is_negative);
        if above && below {
            continue;
        }
        let mut level = level;
        if above {
            normal = normal.iter().map(|x| -x).collect();
            level = -level;
        }
        // lattice points keep the level divisible by the content
        let content = normal.iter().fold(Int::zero(), |g, x| g.gcd(x));
        let normal: Vec<Int> = normal.iter().map(|x| x / &content).collect();
        let level = level / &content;
        if rows.contains(&normal) {
            continue;
        }
        rows.push(normal);
        rhs.push(level);
    }
    HRepPolyhedron::inequality(IntMatrix::from_big_rows(rows, n).unwrap(), rhs).unwrap()
}

/// Random full-dimensional lattice polytope `conv(points)` with coordinates
/// in `[0, c]`, returned as a point matrix (columns) and its facet system.
pub fn random_lattice_polytope(rng: &mut ChaCha8Rng, n: usize, extra: usize, c: i64) -> (IntMatrix, HRepPolyhedron) {
    loop {
        let pts: Vec<Vec<Int>> =
            (0..n + 1 + extra).map(|_| (0..n).map(|_| Int::from(rng.gen_range(0..=c))).collect()).collect();
        let mut homog: Vec<Vec<Int>> = Vec::new();
        for p in &pts {
            let mut h = vec![Int::from(1)];
            h.extend(p.iter().cloned());
            homog.push(h);
        }
        if IntMatrix::from_columns(n + 1, &homog).rank() < n + 1 {
            continue;
        }
        return (IntMatrix::from_columns(n, &pts), facets_of_hull(&pts));
    }
}

/// Nonsingular `n x n` matrix with `|det| <= max_det`: a random lower
/// triangular core scrambled by random unimodular row and column operations.
pub fn small_det_matrix(rng: &mut ChaCha8Rng, n: usize, max_det: i64) -> IntMatrix {
    loop {
        let mut m = IntMatrix::zeros(n, n);
        let mut det = 1i64;
        for i in 0..n {
            let room = max_det / det;
            let d = rng.gen_range(1..=room.clamp(1, 8));
            det *= d;
            m[(i, i)] = Int::from(d);
            for j in 0..i {
                m[(i, j)] = Int::from(rng.gen_range(-2..=2));
            }
        }
        for _ in 0..3 * n {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a == b {
                continue;
            }
            let c = Int::from(rng.gen_range(-1..=1));
            if rng.gen_bool(0.5) {
                m.add_row_multiple(a, b, &c);
            } else {
                m.add_col_multiple(a, b, &c);
            }
        }
        if m.max_abs() > Int::from(12) {
            continue;
        }
        if rng.gen_bool(0.5) {
            m.negate_col(0);
        }
        let d = m.det();
        if !d.is_zero() && d.abs() <= Int::from(max_det) {
            return m;
        }
    }
}
