use std::collections::BTreeMap;

use num_traits::Zero;

use super::coefficient::Coefficient;
use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};

/// `Σ ω_i dx^i`; `coeffs[i]` multiplies `dx^{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<C = Poly> {
    coeffs: Vec<C>,
}

/// `Σ_{i<j} β_ij dx^i ∧ dx^j`, stored strictly upper triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<C = Poly> {
    dim: usize,
    nvars: usize,
    coeffs: BTreeMap<(usize, usize), C>,
}

/// `Σ X_i ∂_i`; `coeffs[i]` multiplies `∂/∂x^{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField<C = Poly> {
    coeffs: Vec<C>,
}

fn check_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch(format!("dimension {a} against dimension {b}")))
    }
}

impl<C: Coefficient> OneForm<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "forms live on charts of dimension at least 1");
        let n = coeffs[0].nvars();
        assert!(coeffs.iter().all(|c| c.nvars() == n), "chart mismatch inside a form");
        OneForm { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        OneForm { coeffs: vec![C::zero(dim); dim] }
    }

    /// `dx^{i+1}`.
    pub fn dx(dim: usize, i: usize) -> Self {
        let mut f = OneForm::zero(dim);
        f.coeffs[i] = C::embed(&Poly::one(dim));
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "chart mismatch");
        OneForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "chart mismatch");
        OneForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        OneForm { coeffs: self.coeffs.iter().map(C::neg).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        OneForm { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        OneForm { coeffs: self.coeffs.iter().map(|a| a.mul_poly(p)).collect() }
    }

    /// `dω` with `(dω)_ij = ∂_i ω_j − ∂_j ω_i`.
    pub fn d(&self) -> TwoForm<C> {
        let n = self.dim();
        let mut out = TwoForm::zero(n, self.nvars());
        for i in 0..n {
            for j in (i + 1)..n {
                let c = self.coeffs[j].partial(i).sub(&self.coeffs[i].partial(j));
                out.set(i, j, c);
            }
        }
        out
    }
}

impl OneForm<Poly> {
    pub fn eval(&self, point: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }

    /// `σ ∧ τ`.
    pub fn wedge(&self, other: &OneForm) -> TwoForm {
        assert_eq!(self.dim(), other.dim(), "chart mismatch");
        let n = self.dim();
        let mut out = TwoForm::zero(n, self.nvars());
        for i in 0..n {
            for j in (i + 1)..n {
                let c = &(&self.coeffs[i] * &other.coeffs[j]) - &(&self.coeffs[j] * &other.coeffs[i]);
                out.set(i, j, c);
            }
        }
        out
    }

    /// Pads with zero components and re-embeds coefficients into a chart
    /// of dimension `dim` (which must not drop used variables).
    pub fn with_dim(&self, dim: usize) -> OneForm {
        let mut coeffs: Vec<Poly> = self.coeffs.iter().map(|c| c.with_nvars(dim)).collect();
        coeffs.resize(dim, Poly::zero(dim));
        OneForm { coeffs }
    }

    pub fn try_interior(&self, x: &VectorField) -> Result<Poly> {
        check_dim(self.dim(), x.dim())?;
        Ok(interior(x, self))
    }
}

impl<C: Coefficient> TwoForm<C> {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        TwoForm { dim, nvars, coeffs: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        assert!(i < j && j < self.dim);
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    /// `β(∂_i, ∂_j)`, antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> C {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => C::zero(self.nvars),
            Less => self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| C::zero(self.nvars)),
            Greater => self.get(j, i).neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero entries `((i, j), β_ij)` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &C)> {
        self.coeffs.iter()
    }
}

impl TwoForm<Poly> {
    /// `β(u, v)` for vector fields.
    pub fn apply(&self, u: &VectorField, v: &VectorField) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for ((i, j), b) in &self.coeffs {
            let t = &(&u.coeffs[*i] * &v.coeffs[*j]) - &(&u.coeffs[*j] * &v.coeffs[*i]);
            out += &(b * &t);
        }
        out
    }

    /// `β(p)` as an antisymmetric rational matrix.
    pub fn eval_matrix(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for ((i, j), b) in &self.coeffs {
            let v = b.eval(point);
            m[*j][*i] = -v.clone();
            m[*i][*j] = v;
        }
        m
    }
}

impl<C: Coefficient> VectorField<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "fields live on charts of dimension at least 1");
        let n = coeffs[0].nvars();
        assert!(coeffs.iter().all(|c| c.nvars() == n), "chart mismatch inside a field");
        VectorField { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        VectorField { coeffs: vec![C::zero(dim); dim] }
    }

    /// `∂/∂x^{i+1}`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut f = VectorField::zero(dim);
        f.coeffs[i] = C::embed(&Poly::one(dim));
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "chart mismatch");
        VectorField { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "chart mismatch");
        VectorField { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        VectorField { coeffs: self.coeffs.iter().map(|a| a.mul_poly(p)).collect() }
    }

    /// `X(f) = Σ X_i ∂_i f` for a polynomial function `f`.
    pub fn derivative_of(&self, f: &Poly) -> C {
        self.coeffs
            .iter()
            .enumerate()
            .fold(C::zero(self.nvars()), |acc, (i, x)| acc.add(&x.mul_poly(&f.partial(i))))
    }

    /// Appends a component `c ∂_{n+1}`.
    pub fn push(&mut self, c: C) {
        self.coeffs.push(c);
    }
}

impl<C: Coefficient> VectorField<C> {
    /// Re-embeds into a chart of dimension `dim`, padding with zero components.
    pub fn with_dim(&self, dim: usize) -> Self {
        let mut coeffs: Vec<C> = self.coeffs.iter().map(|c| c.with_nvars(dim)).collect();
        coeffs.resize(dim, C::zero(dim));
        VectorField { coeffs }
    }
}

impl VectorField<Poly> {
    pub fn eval(&self, point: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }

    /// `X(f)` for a coefficient `f` of any kind.
    pub fn apply<C: Coefficient>(&self, f: &C) -> C {
        self.coeffs
            .iter()
            .enumerate()
            .fold(C::zero(f.nvars()), |acc, (i, x)| acc.add(&f.partial(i).mul_poly(x)))
    }

    /// Lie bracket `[X, Y]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.dim(), other.dim(), "chart mismatch");
        VectorField {
            coeffs: (0..self.dim())
                .map(|j| &self.apply(&other.coeffs[j]) - &other.apply(&self.coeffs[j]))
                .collect(),
        }
    }

    pub fn try_bracket(&self, other: &VectorField) -> Result<VectorField> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.bracket(other))
    }
}

/// `ι(X)ω`.
pub fn interior<C: Coefficient>(x: &VectorField<C>, w: &OneForm<Poly>) -> C {
    assert_eq!(x.dim(), w.dim(), "chart mismatch");
    x.coeffs
        .iter()
        .zip(&w.coeffs)
        .fold(C::zero(x.nvars()), |acc, (a, b)| acc.add(&a.mul_poly(b)))
}

/// `ι(X)β`, contraction in the first slot: `(ι(X)β)_j = Σ_i X_i β_ij`.
pub fn interior2<C: Coefficient>(x: &VectorField<C>, b: &TwoForm<Poly>) -> OneForm<C> {
    assert_eq!(x.dim(), b.dim(), "chart mismatch");
    let n = x.dim();
    let mut coeffs = vec![C::zero(x.nvars()); n];
    for ((i, j), bij) in &b.coeffs {
        coeffs[*j] = coeffs[*j].add(&x.coeffs[*i].mul_poly(bij));
        coeffs[*i] = coeffs[*i].sub(&x.coeffs[*j].mul_poly(bij));
    }
    OneForm { coeffs }
}

/// `θ(X)ω`, with components `Σ_i X_i ∂_i ω_j + ω_i ∂_j X_i`.
pub fn lie_derivative<C: Coefficient>(x: &VectorField<C>, w: &OneForm<Poly>) -> OneForm<C> {
    assert_eq!(x.dim(), w.dim(), "chart mismatch");
    let n = x.dim();
    let coeffs = (0..n)
        .map(|j| {
            (0..n).fold(C::zero(x.nvars()), |acc, i| {
                let a = x.coeffs[i].mul_poly(&w.coeffs[j].partial(i));
                let b = x.coeffs[i].partial(j).mul_poly(&w.coeffs[i]);
                acc.add(&a).add(&b)
            })
        })
        .collect();
    OneForm { coeffs }
}

pub fn try_lie_derivative(x: &VectorField, w: &OneForm) -> Result<OneForm> {
    check_dim(x.dim(), w.dim())?;
    Ok(lie_derivative(x, w))
}
