//! Contact Hamiltonians on the Darboux chart and the prolongation of
//! infinitesimal automorphisms up a flag.

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::exterior::{interior, lie_derivative, reduce_mod_system, Coefficient, OneForm, VectorField};
use crate::models::{generate_model, FlagCode, PseudoNormalForm};

/// The Darboux form `dx2 + x3 dx1`.
pub fn darboux_form() -> OneForm {
    let mut c = vec![Poly::zero(3); 3];
    c[0] = Poly::var(3, 2);
    c[1] = Poly::one(3);
    OneForm::new(c)
}

/// `H⁻¹(f) = f₃ ∂₁ + (f − x³f₃) ∂₂ − (f₁ − x³f₂) ∂₃`.
pub fn hamiltonian_to_field<C: Coefficient>(f: &C) -> VectorField<C> {
    assert_eq!(f.nvars(), 3, "contact Hamiltonians live on the 3-dimensional chart");
    let x3 = Poly::var(3, 2);
    let f1 = f.partial(0);
    let f2 = f.partial(1);
    let f3 = f.partial(2);
    VectorField::new(vec![
        f3.clone(),
        f.sub(&f3.mul_poly(&x3)),
        f2.mul_poly(&x3).sub(&f1),
    ])
}

/// `H(ξ) = ι(ξ)ω`, defined on Darboux symmetries.
pub fn field_to_hamiltonian(xi: &VectorField) -> Result<Poly> {
    if xi.dim() != 3 {
        return Err(Error::ChartMismatch(format!("field of dimension {} on the Darboux chart", xi.dim())));
    }
    let model = generate_model(&FlagCode::darboux());
    if !verify_symmetry(xi, &model)? {
        return Err(Error::ContractViolation("field is not an infinitesimal automorphism of the Darboux system".into()));
    }
    Ok(interior(xi, &darboux_form()))
}

/// `[f, g] = ξ_f(g) − g ∂f/∂x²`, with `ξ_f = H⁻¹(f)` and `H⁻¹(1) = ∂₂`.
pub fn lagrange_bracket(f: &Poly, g: &Poly) -> Poly {
    let xi = hamiltonian_to_field(f);
    &xi.apply(g) - &(g * &f.partial(1))
}

/// One prolongation step: the new field and the data read off the
/// reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Prolongation<C = Poly> {
    pub field: VectorField<C>,
    /// Coefficient of the new vertical direction `∂_{ℓ+2}`.
    pub new_coefficient: C,
    /// Multipliers of `θ(ξ)ω^ℓ` against `ω¹..ω^ℓ`, in generator order.
    pub multipliers: Vec<C>,
}

/// Lifts a symmetry of the first derived system (a field on `ℝ^{ℓ+1}`) to
/// the unique symmetry `ξ + F ∂_{ℓ+2}` of the model.
pub fn prolong_once<C: Coefficient>(xi: &VectorField<C>, model: &PseudoNormalForm) -> Result<Prolongation<C>> {
    let n = model.dim();
    let l = model.length();
    if xi.dim() + 1 != n {
        return Err(Error::ChartMismatch(format!(
            "field of dimension {} lifted to a model on dimension {n}",
            xi.dim()
        )));
    }
    let zeta0 = xi.with_dim(n);
    let top = &model.generators()[l - 1];
    let theta = lie_derivative(&zeta0, top);
    let red = reduce_mod_system(&theta, model.generators(), &model.pivots())?;
    let q = model.pairs[l - 1].1 - 1;
    for (c, r) in red.residual.coeffs().iter().enumerate() {
        if c != q && !r.is_zero() {
            return Err(Error::ContractViolation(format!(
                "residual along dx{} cannot be absorbed: the field is not a symmetry of the derived system",
                c + 1
            )));
        }
    }
    let new_coefficient = red.residual.coeff(q).neg();
    let mut comps = zeta0.into_coeffs();
    comps[n - 1] = new_coefficient.clone();
    Ok(Prolongation { field: VectorField::new(comps), new_coefficient, multipliers: red.multipliers })
}

/// Codes of the tower `D, E, ..., code`.
pub fn tower_codes(code: &FlagCode) -> Vec<FlagCode> {
    let mut chain = vec![code.clone()];
    while let Some(p) = chain.last().unwrap().parent() {
        chain.push(p);
    }
    chain.reverse();
    chain
}

/// Iterates the lift from `H⁻¹(f)` on the Darboux chart to the top of the
/// tower. Returns every step, the last being a symmetry of the full model.
pub fn prolong_tower<C: Coefficient>(f: &C, code: &FlagCode) -> Result<Vec<Prolongation<C>>> {
    let mut xi = hamiltonian_to_field(f);
    let mut steps = Vec::new();
    for c in tower_codes(code).iter().skip(1) {
        let step = prolong_once(&xi, &generate_model(c))?;
        xi = step.field.clone();
        steps.push(step);
    }
    Ok(steps)
}

pub fn prolong_to_top<C: Coefficient>(f: &C, code: &FlagCode) -> Result<VectorField<C>> {
    Ok(match prolong_tower(f, code)?.pop() {
        Some(step) => step.field,
        None => hamiltonian_to_field(f),
    })
}

/// `θ(ζ)ω^ν ≡ 0` modulo the model for every generator.
pub fn verify_symmetry<C: Coefficient>(zeta: &VectorField<C>, model: &PseudoNormalForm) -> Result<bool> {
    if zeta.dim() != model.dim() {
        return Err(Error::ChartMismatch(format!(
            "field of dimension {} against a model on dimension {}",
            zeta.dim(),
            model.dim()
        )));
    }
    let pivots = model.pivots();
    for w in model.generators() {
        let red = reduce_mod_system(&lie_derivative(zeta, w), model.generators(), &pivots)?;
        if !red.residual.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
