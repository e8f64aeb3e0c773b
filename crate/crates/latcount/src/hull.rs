//! Facet description of the convex hull of a full-dimensional point set, by
//! checking every hyperplane through `n` affinely independent points. Only
//! meant for the small instances the brute-force oracle can handle anyway.

use itertools::Itertools;
use latcount_core::{Form, HRepPolyhedron, Int, IntMatrix};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Normal of the hyperplane through `pts[0..n]`, or `None` if they are
/// affinely dependent. Cofactor expansion of the difference vectors.
fn hyperplane_normal(pts: &[Vec<Int>]) -> Option<Vec<Int>> {
    let n = pts[0].len();
    let diffs: Vec<Vec<Int>> = pts[1..].iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
    let rows = IntMatrix::from_big_rows(diffs, n).expect("uniform row length");
    let all: Vec<usize> = (0..n - 1).collect();
    let normal: Vec<Int> = (0..n)
        .map(|j| {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let d = rows.select(&all, &cols).det();
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    let content = normal.iter().fold(Int::zero(), |g, x| g.gcd(x));
    Some(normal.into_iter().map(|x| x / &content).collect())
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `{x : Ax <= b}` with one primitive row per facet of `conv(points)`.
/// `None` when the points do not span `R^n`.
pub fn hull_inequalities(points: &IntMatrix) -> Option<HRepPolyhedron> {
    let n = points.rows();
    let pts: Vec<Vec<Int>> = points.columns().into_iter().unique().collect();
    if pts.len() <= n {
        return None;
    }
    if n == 1 {
        let lo = pts.iter().map(|p| &p[0]).min().unwrap().clone();
        let hi = pts.iter().map(|p| &p[0]).max().unwrap().clone();
        let a = IntMatrix::from_rows(&[[1i64], [-1]]);
        return Some(HRepPolyhedron::new(Form::Inequality, a, vec![hi, -lo]).expect("two rows"));
    }
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Int> = Vec::new();
    for subset in pts.iter().cloned().combinations(n) {
        let Some(normal) = hyperplane_normal(&subset) else { continue };
        let level = dot(&normal, &subset[0]);
        let (mut below, mut above) = (false, false);
        for p in &pts {
            let s = dot(&normal, p) - &level;
            below |= s.is_negative();
            above |= s.is_positive();
        }
        let (row, b) = match (below, above) {
            (true, true) => continue,
            (false, true) => (normal.iter().map(|x| -x).collect::<Vec<_>>(), -level),
            _ => (normal, level),
        };
        if !rows.contains(&row) {
            rows.push(row);
            rhs.push(b);
        }
    }
    let a = IntMatrix::from_big_rows(rows, n).ok()?;
    if a.rank() < n {
        return None;
    }
    HRepPolyhedron::new(Form::Inequality, a, rhs).ok()
}
