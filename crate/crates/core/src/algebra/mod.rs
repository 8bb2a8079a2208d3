//! Exact arithmetic: rationals, multi-indices, polynomials, matrices and
//! sparse linear solving.

pub mod linsolve;
pub mod matrix;
pub mod monomial;
mod parse;
pub mod poly;
pub mod rational;

pub use linsolve::{solve_homogeneous, LinearForm, LinearSolution};
pub use matrix::{PolyMatrix, RatMatrix};
pub use monomial::MultiIndex;
pub use poly::{Coords, Poly, VarNames};
pub use rational::{parse_rational, rat, ratio, Rational};
