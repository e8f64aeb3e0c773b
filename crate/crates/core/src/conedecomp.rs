//! Cone triangulation, signed decomposition into unimodular cones, and
//! polarization of unimodular cones.
//!
//! The signed decomposition replaces one generator at a time by a short
//! lattice vector `b = U t` with `0 < ||t||_inf <= 1/2`. Since
//! `|det U(i, b)| = |t_i| |det U|`, every level at least halves the
//! determinant, so the recursion depth is at most `log2 |det U|` and the
//! output has at most `n^{log2 |det U|}` cones.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyhedron::{column_basis, is_feasible};
use crate::{Error, Int, IntMatrix, Rat, Result};

/// `sign * [cone(generators)]`; generators are the columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCone {
    pub sign: i8,
    pub generators: IntMatrix,
}

/// Lattice vector `b = U t` with `0 < ||t||_inf <= 1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfVector {
    pub b: Vec<Int>,
    pub t: Vec<Rat>,
}

/// Whether `cone(G)` contains no line: some functional is positive on every
/// nonzero generator.
pub(crate) fn is_pointed(g: &IntMatrix) -> bool {
    let nonzero: Vec<usize> = (0..g.cols()).filter(|&j| g.column(j).iter().any(|x| !x.is_zero())).collect();
    if nonzero.is_empty() {
        return true;
    }
    let a = g.select_columns(&nonzero).transpose().neg();
    let b = vec![-Int::one(); nonzero.len()];
    is_feasible(&a, &b)
}

/// Placing triangulation of `cone(G)` for a `d x m` generator matrix with
/// `rank G = d`. Columns of the greedy leading basis seed the first cell; the
/// remaining columns are placed in order, each coned over the boundary facets
/// it sees. Returns sorted column-index sets.
///
/// Works for non-pointed cones as well, which the inequality pipeline relies
/// on for lower-dimensional polyhedra.
pub(crate) fn placing_triangulation(g: &IntMatrix) -> Vec<Vec<usize>> {
    let d = g.rows();
    let seed = column_basis(g);
    debug_assert_eq!(seed.len(), d);
    let mut cells: Vec<Vec<usize>> = vec![seed.clone()];
    for j in 0..g.cols() {
        if seed.contains(&j) {
            continue;
        }
        let p = g.column(j);
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        // boundary facets: (d-1)-subsets owned by exactly one cell
        let mut owners: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, cell) in cells.iter().enumerate() {
            for pos in 0..d {
                let mut facet = cell.clone();
                facet.remove(pos);
                owners.entry(facet).or_default().push((ci, pos));
            }
        }
        let mut added = Vec::new();
        for (facet, own) in owners {
            if own.len() != 1 {
                continue;
            }
            let (ci, pos) = own[0];
            let basis = g.select_columns(&cells[ci]);
            let coords = basis.solve_int(&p).expect("cells are nonsingular");
            if coords[pos].is_negative() {
                let mut cell = facet;
                cell.push(j);
                cell.sort_unstable();
                added.push(cell);
            }
        }
        cells.extend(added);
    }
    cells
}

/// Triangulation of a pointed full-dimensional cone into simplicial cones
/// spanned by columns of `g`.
pub fn triangulate(g: &IntMatrix) -> Result<Vec<Vec<usize>>> {
    if g.rank() < g.rows() {
        return Err(Error::NotFullDim);
    }
    if !is_pointed(g) {
        return Err(Error::NotPointed);
    }
    Ok(placing_triangulation(g))
}

fn reduce_centered(x: &Int, sigma: &Int) -> Int {
    // representative in (-sigma/2, sigma/2]
    let r = x.mod_floor(sigma);
    if Int::from(2) * &r > *sigma {
        r - sigma
    } else {
        r
    }
}

/// Short lattice vector in the parallelepiped lattice of `U` from the last
/// column of the Smith right transform, shifted componentwise into
/// `(-σ/2, σ/2]`. The sign is fixed so that the last nonzero entry of `t`
/// is positive.
pub fn find_half_vector(u: &IntMatrix) -> Result<HalfVector> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch("expected a square matrix"));
    }
    let det = u.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if det.abs().is_one() {
        return Err(Error::UnimodularInput);
    }
    let n = u.rows();
    let s = crate::normal_form::snf(u);
    let sigma = s.diag[n - 1].clone();
    let mut t_hat: Vec<Int> = s.q_inv.column(n - 1).iter().map(|x| reduce_centered(x, &sigma)).collect();
    if t_hat.iter().rev().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        t_hat = t_hat.iter().map(|x| reduce_centered(&-x, &sigma)).collect();
    }
    let b = u
        .mul_vec(&t_hat)
        .into_iter()
        .map(|x| {
            debug_assert!((&x % &sigma).is_zero());
            x / &sigma
        })
        .collect();
    let t = t_hat.into_iter().map(|x| Rat::new(x, sigma.clone())).collect();
    Ok(HalfVector { b, t })
}

fn decompose_into(sign: i8, u: IntMatrix, det: Int, out: &mut Vec<SignedCone>) -> Result<()> {
    if det.abs().is_one() {
        out.push(SignedCone { sign, generators: u });
        return Ok(());
    }
    let half = find_half_vector(&u)?;
    for i in 0..u.cols() {
        let child = u.with_column(i, &half.b);
        let child_det = child.det();
        if child_det.is_zero() {
            continue;
        }
        let flip = child_det.is_negative() != det.is_negative();
        decompose_into(if flip { -sign } else { sign }, child, child_det, out)?;
    }
    Ok(())
}

/// Signed decomposition `[cone(U)] = sum_i ε_i [cone(U_i)]` modulo
/// lower-dimensional cones, with every `U_i` unimodular.
pub fn sign_decompose(u: &IntMatrix) -> Result<Vec<SignedCone>> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch("expected a square matrix"));
    }
    let det = u.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut out = Vec::new();
    decompose_into(1, u.clone(), det, &mut out)?;
    Ok(out)
}

/// `-U^{-1}` for unimodular `U`. Its rows generate the polar of `cone(U)`:
/// the polar is `{x : U^T x <= 0}`, i.e. the column cone of `-U^{-T}`.
pub fn polarize_unimodular(u: &IntMatrix) -> Result<IntMatrix> {
    Ok(u.unimodular_inverse()?.neg())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    /// Generators given as columns.
    fn cols(c: &[&[i64]]) -> IntMatrix {
        m(c).transpose()
    }

    #[test]
    fn triangulate_examples() {
        let g = cols(&[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(triangulate(&g).unwrap(), vec![vec![0, 1], vec![1, 2]]);

        assert_eq!(triangulate(&IntMatrix::identity(3)).unwrap(), vec![vec![0, 1, 2]]);

        let square = cols(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let cells = triangulate(&square).unwrap();
        assert_eq!(cells.len(), 2);
        for c in &cells {
            assert!(!square.select_columns(c).det().is_zero());
        }
    }

    #[test]
    fn triangulate_errors() {
        assert_eq!(triangulate(&cols(&[&[1, 0], &[2, 0]])), Err(Error::NotFullDim));
        assert_eq!(triangulate(&cols(&[&[1, 0], &[-1, 0], &[0, 1]])), Err(Error::NotPointed));
    }

    #[test]
    fn placing_covers_non_pointed_cones() {
        let half_plane = cols(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(placing_triangulation(&half_plane), vec![vec![0, 2], vec![1, 2]]);
        let plane = cols(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(placing_triangulation(&plane).len(), 3);
    }

    #[test]
    fn half_vector_examples() {
        let h = find_half_vector(&cols(&[&[1, 1], &[0, 2]])).unwrap();
        assert_eq!(h.b, ints(&[0, 1]));
        assert_eq!(h.t, vec![rat(0, 1), rat(1, 2)]);

        let h = find_half_vector(&m(&[&[1, 0], &[0, 3]])).unwrap();
        assert_eq!(h.b, ints(&[0, 1]));
        assert_eq!(h.t, vec![rat(0, 1), rat(1, 3)]);

        assert_eq!(find_half_vector(&IntMatrix::identity(2)), Err(Error::UnimodularInput));
        assert_eq!(find_half_vector(&m(&[&[1, 2], &[2, 4]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn sign_decompose_examples() {
        let out = sign_decompose(&cols(&[&[1, 1], &[0, 2]])).unwrap();
        assert_eq!(out, vec![SignedCone { sign: 1, generators: cols(&[&[1, 1], &[0, 1]]) }]);

        let u = cols(&[&[2, 1], &[1, 1]]);
        assert_eq!(sign_decompose(&u).unwrap(), vec![SignedCone { sign: 1, generators: u }]);

        let out = sign_decompose(&cols(&[&[1, 0], &[1, 3]])).unwrap();
        assert_eq!(
            out,
            vec![
                SignedCone { sign: -1, generators: cols(&[&[0, 1], &[1, 3]]) },
                SignedCone { sign: 1, generators: cols(&[&[1, 0], &[0, 1]]) },
            ]
        );

        assert_eq!(sign_decompose(&m(&[&[1, 2], &[2, 4]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn polarize_examples() {
        assert_eq!(polarize_unimodular(&IntMatrix::identity(2)).unwrap(), IntMatrix::identity(2).neg());
        assert_eq!(polarize_unimodular(&m(&[&[1, 0], &[1, 1]])).unwrap(), m(&[&[-1, 0], &[1, -1]]));
        assert_eq!(polarize_unimodular(&m(&[&[0, 1], &[1, 0]])).unwrap(), m(&[&[0, -1], &[-1, 0]]));
        assert_eq!(polarize_unimodular(&m(&[&[2, 0], &[0, 1]])), Err(Error::NotUnimodular));
    }
}
