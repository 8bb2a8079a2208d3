#![allow(dead_code)]

use flagsys::algebra::{rat, ratio, MultiIndex, Poly, Rational};
use flagsys::exterior::{OneForm, VectorField};
use proptest::prelude::*;

/// Polynomials with at most `terms` terms of total degree at most `deg`
/// and small integer coefficients.
pub fn poly(nvars: usize, deg: u32, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=deg, nvars), -5i64..=5), 0..=terms).prop_map(move |ts| {
        ts.into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
            .fold(Poly::zero(nvars), |acc, (e, c)| &acc + &Poly::monomial(nvars, MultiIndex::new(e), rat(c)))
    })
}

pub fn field(dim: usize, deg: u32) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly(dim, deg, 3), dim).prop_map(VectorField::new)
}

pub fn form(dim: usize, deg: u32) -> impl Strategy<Value = OneForm> {
    prop::collection::vec(poly(dim, deg, 3), dim).prop_map(OneForm::new)
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| ratio(n, d))
}

pub fn point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), dim)
}
