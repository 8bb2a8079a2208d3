mod common;

use common::{point, poly};
use flagsys::algebra::{rat, Poly, PolyMatrix, RatMatrix};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 2, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partials_obey_leibniz_and_commute(a in poly(3, 3, 5), b in poly(3, 3, 5), i in 0usize..3, j in 0usize..3) {
        let lhs = (&a * &b).partial(i);
        let rhs = &(&a.partial(i) * &b) + &(&a * &b.partial(i));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.partial(i).partial(j), a.partial(j).partial(i));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(3, 3, 5), b in poly(3, 3, 5), p in point(3)) {
        prop_assert_eq!((&a * &b).eval(&p), a.eval(&p) * b.eval(&p));
        prop_assert_eq!((&a + &b).eval(&p), a.eval(&p) + b.eval(&p));
    }

    #[test]
    fn text_round_trips(a in poly(4, 4, 6)) {
        prop_assert_eq!(Poly::parse(&a.to_string(), 4).unwrap(), a);
    }

    #[test]
    fn generic_rank_bounds_pointwise_rank(entries in prop::collection::vec(poly(2, 2, 3), 9), p in point(2)) {
        let rows: Vec<Vec<Poly>> = entries.chunks(3).map(<[Poly]>::to_vec).collect();
        let m = PolyMatrix::new(2, rows);
        prop_assert!(m.eval(&p).rank() <= m.rank_generic());
    }

    #[test]
    fn rational_kernel_is_annihilated(rows in prop::collection::vec(point(5), 1..4)) {
        let m = RatMatrix::new(5, rows);
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
    }
}
