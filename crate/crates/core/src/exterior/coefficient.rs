use std::fmt::Debug;

use crate::algebra::{Poly, Rational, VarNames};

/// Coefficient ring for forms and fields: a module over ℚ[x] closed under
/// partial differentiation. `Poly` is the main instance; jet expressions are
/// the other.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero(nvars: usize) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn mul_poly(&self, p: &Poly) -> Self;
    fn partial(&self, var: usize) -> Self;
    fn embed(p: &Poly) -> Self;
    /// Same expression on a chart of `nvars` coordinates.
    fn with_nvars(&self, nvars: usize) -> Self;
    fn num_terms(&self) -> usize;
    /// Independent of every chart variable.
    fn is_constant(&self) -> bool;
    fn to_text(&self, names: &dyn VarNames) -> String;
}

impl Coefficient for Poly {
    fn zero(nvars: usize) -> Self {
        Poly::zero(nvars)
    }
    fn nvars(&self) -> usize {
        Poly::nvars(self)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        Poly::scale(self, c)
    }
    fn mul_poly(&self, p: &Poly) -> Self {
        self * p
    }
    fn partial(&self, var: usize) -> Self {
        Poly::partial(self, var)
    }
    fn embed(p: &Poly) -> Self {
        p.clone()
    }
    fn with_nvars(&self, nvars: usize) -> Self {
        Poly::with_nvars(self, nvars)
    }
    fn num_terms(&self) -> usize {
        Poly::num_terms(self)
    }
    fn is_constant(&self) -> bool {
        Poly::is_constant(self)
    }
    fn to_text(&self, names: &dyn VarNames) -> String {
        Poly::to_text(self, names)
    }
}
