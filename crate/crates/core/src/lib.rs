//! Exact lattice-point counting for polyhedra whose rank-order minors are
//! bounded in absolute value.
//!
//! The crate computes short rational generating functions
//! `f(P, X) = sum_{m in P ∩ Z^n} X^m` for polyhedra given by
//!
//! * an inequality system `{x : Ax <= b}` with `rank A = n`,
//! * a standard-form system `{x >= 0 : Ax = b}` with `rank A = k`,
//! * a V-representation `conv(P) + cone(R)`,
//!
//! specializes them at `X -> 1` to obtain exact counts, and interpolates
//! Ehrhart quasi-polynomials of rational polytopes. Everything is exact:
//! integers are arbitrary precision and no floating point enters any result.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the `latcount` crate.
#![no_std]
#![forbid(unsafe_code)]
extern crate alloc;

pub mod conedecomp;
pub mod ehrhart;
mod error;
pub mod evaluate;
pub mod genfun;
pub mod matrix;
pub mod minors;
pub mod normal_form;
pub mod oracle;
pub mod polyhedron;
pub mod series;

pub use error::{Error, Result};
pub use matrix::IntMatrix;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Exact rational number.
pub type Rat = num_rational::BigRational;

pub use conedecomp::{find_half_vector, polarize_unimodular, sign_decompose, triangulate, HalfVector, SignedCone};
pub use ehrhart::{dilation_period, ehrhart_quasipolynomial, eval_quasipolynomial, QuasiPolynomial};
pub use evaluate::{evaluate_at, generic_direction, specialize_count, todd_values, GenericDirection, ToddTable};
pub use genfun::{
    generating_function, gf_inequality, gf_standard, gf_vrep, half_open_flags, parallelepiped_points, vertex_round,
    HalfOpenCone, Monomial, ShortRationalFunction, SrfTerm,
};
pub use minors::{delta_stats, MinorStats};
pub use normal_form::{hnf, snf, HnfResult, SnfResult};
pub use polyhedron::{
    classify, feasible_cone_polar_generators, normalize_standard, standard_to_inequality, vertices, Classification,
    Form, HRepPolyhedron, StandardTransform, VertexInfo,
};
