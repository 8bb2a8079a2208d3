mod common;

use common::poly;
use flagsys::algebra::{rat, MultiIndex, Poly, Rational};
use flagsys::exterior::{lie_derivative, VectorField};
use flagsys::models::{generate_model, singular_locus, FlagCode};
use flagsys::pfaffian::canonical_span;
use flagsys::symmetry::{
    darboux_form, field_to_hamiltonian, hamiltonian_to_field, lagrange_bracket, prolong_once, prolong_to_top,
    prolong_tower, verify_symmetry,
};
use proptest::prelude::*;

fn code(s: &str) -> FlagCode {
    s.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hamiltonian_round_trip(f in poly(3, 4, 8)) {
        prop_assert_eq!(field_to_hamiltonian(&hamiltonian_to_field(&f)).unwrap(), f);
    }

    #[test]
    fn contact_multiplier_is_f2(f in poly(3, 4, 8)) {
        let w = darboux_form();
        prop_assert_eq!(lie_derivative(&hamiltonian_to_field(&f), &w), w.mul_poly(&f.partial(1)));
    }

    #[test]
    fn lagrange_bracket_matches_field_bracket(f in poly(3, 3, 5), g in poly(3, 3, 5)) {
        let lhs = hamiltonian_to_field(&lagrange_bracket(&f, &g));
        prop_assert_eq!(lhs, hamiltonian_to_field(&f).bracket(&hamiltonian_to_field(&g)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Prolongation is a Lie algebra morphism.
    #[test]
    fn prolongation_commutes_with_brackets(f in poly(3, 3, 4), g in poly(3, 3, 4), idx in 0usize..5) {
        let c = code(["E", "1.", "3.", "3.1.", "3.2."][idx]);
        let pf = prolong_to_top(&f, &c).unwrap();
        let pg = prolong_to_top(&g, &c).unwrap();
        prop_assert_eq!(prolong_to_top(&lagrange_bracket(&f, &g), &c).unwrap(), pf.bracket(&pg));
    }

    /// Each lift projects onto the field it lifts and is a symmetry.
    #[test]
    fn lifts_project_and_preserve(f in poly(3, 3, 5), idx in 0usize..4) {
        let c = code(["1.1.", "1.3.", "3.2.", "3.3.1."][idx]);
        let mut below = hamiltonian_to_field(&f);
        for step in prolong_tower(&f, &c).unwrap() {
            let n = step.field.dim();
            let embedded = below.with_dim(n);
            prop_assert_eq!(&step.field.coeffs()[..n - 1], &embedded.coeffs()[..n - 1]);
            below = step.field;
        }
        prop_assert!(verify_symmetry(&below, &generate_model(&c)).unwrap());
    }
}

fn hamiltonians(degree: u32) -> Vec<Poly> {
    MultiIndex::all_up_to_degree(3, degree).into_iter().map(|m| Poly::monomial(3, m, rat(1))).collect()
}

#[test]
fn homogeneous_flags_are_transitive_at_the_origin() {
    for c in ["D", "E", "1.", "1.1.", "1.1.1."] {
        let c = code(c);
        let n = c.chart_dim();
        let origin = vec![Rational::from_integer(0.into()); n];
        let values: Vec<Vec<Rational>> =
            hamiltonians(c.length() as u32 + 1).iter().map(|f| prolong_to_top(f, &c).unwrap().eval(&origin)).collect();
        assert_eq!(canonical_span(&values, n).len(), n, "{c}");
    }
}

#[test]
fn symmetries_are_tangent_to_singular_strata() {
    for c in ["3.", "3.1.", "3.2.", "3.3."] {
        let c = code(c);
        let locus = singular_locus(&generate_model(&c), 3);
        assert!(!locus.is_empty(), "{c}");
        let fields: Vec<VectorField> = hamiltonians(3).iter().map(|f| prolong_to_top(f, &c).unwrap()).collect();
        for s in &locus.strata {
            let values: Vec<(usize, Rational)> = s
                .equations
                .iter()
                .map(|e| {
                    let v = e.support()[0];
                    (v, -e.coeff(&MultiIndex::zero(e.nvars())))
                })
                .collect();
            for xi in &fields {
                for (v, _) in &values {
                    assert!(xi.coeff(*v).eval_partial(&values).is_zero(), "{c}: stratum {:?}", s.equations);
                }
            }
        }
    }
}

/// The top congruence always has a solution on a pseudo-normal form; a
/// field that is not a symmetry below shows up in the verification instead.
#[test]
fn lift_of_a_non_symmetry_is_not_a_symmetry() {
    let engel = generate_model(&FlagCode::engel());
    let lift = prolong_once(&VectorField::<Poly>::coordinate(3, 2), &engel).unwrap();
    assert!(!verify_symmetry(&lift.field, &engel).unwrap());
}
