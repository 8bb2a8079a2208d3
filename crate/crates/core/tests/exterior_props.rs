mod common;

use common::{field, form, poly};
use flagsys::exterior::{interior, lie_derivative, OneForm, VectorField};
use proptest::prelude::*;

fn exact(f: &flagsys::algebra::Poly, dim: usize) -> OneForm {
    OneForm::new((0..dim).map(|i| f.partial(i)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(f in poly(4, 4, 6)) {
        prop_assert!(exact(&f, 4).d().is_zero());
    }

    /// `dω(X, Y) = X ω(Y) − Y ω(X) − ω([X, Y])`.
    #[test]
    fn invariant_formula_for_d(w in form(3, 2), x in field(3, 2), y in field(3, 2)) {
        let lhs = w.d().apply(&x, &y);
        let rhs = &(&x.apply(&interior(&y, &w)) - &y.apply(&interior(&x, &w))) - &interior(&x.bracket(&y), &w);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_leibniz(g in poly(3, 2, 3), w in form(3, 2), x in field(3, 2)) {
        let lhs = lie_derivative(&x, &w.mul_poly(&g));
        let rhs = w.mul_poly(&x.apply(&g)).add(&lie_derivative(&x, &w).mul_poly(&g));
        prop_assert_eq!(lhs, rhs);
    }

    /// `L_{[X,Y]} = [L_X, L_Y]` on 1-forms.
    #[test]
    fn lie_derivative_of_bracket(w in form(3, 2), x in field(3, 1), y in field(3, 1)) {
        let lhs = lie_derivative(&x.bracket(&y), &w);
        let rhs = lie_derivative(&x, &lie_derivative(&y, &w)).sub(&lie_derivative(&y, &lie_derivative(&x, &w)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_a_lie_bracket(x in field(3, 2), y in field(3, 2), z in field(3, 1)) {
        prop_assert!(x.bracket(&y).add(&y.bracket(&x)).is_zero());
        let jacobi = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn fields_act_as_derivations(f in poly(3, 3, 4), g in poly(3, 3, 4), x in field(3, 2)) {
        prop_assert_eq!(x.apply(&(&f * &g)), &(&x.apply(&f) * &g) + &(&f * &x.apply(&g)));
        prop_assert_eq!(interior(&x, &exact(&f, 3)), x.apply(&f));
    }
}

#[test]
fn coordinate_fields_commute() {
    let a = VectorField::<flagsys::algebra::Poly>::coordinate(4, 1);
    let b = VectorField::coordinate(4, 3);
    assert!(a.bracket(&b).is_zero());
}
