use flagsys::algebra::{Poly, Rational};
use flagsys::isotropy::corank_sequence;
use flagsys::models::{enumerate_codes, generate_model, singular_locus, to_elementary, FlagCode};
use flagsys::pfaffian::canonical_span;
use flagsys::sample::PointSampler;

fn code(s: &str) -> FlagCode {
    s.parse().unwrap()
}

fn contains(big: &[Vec<Rational>], small: &[Vec<Rational>], dim: usize) -> bool {
    let mut all = big.to_vec();
    all.extend_from_slice(small);
    canonical_span(&all, dim).len() == canonical_span(big, dim).len()
}

#[test]
fn derived_systems_drop_the_bottom_generator() {
    for length in 1..=5 {
        for c in enumerate_codes(length) {
            let m = generate_model(&c);
            let flag = m.system().derived_flag();
            assert!(flag.is_flag(), "{c}");
            for (nu, s) in flag.systems.iter().enumerate() {
                assert!(s.same_span(&m.truncated(length - nu)), "{c}: S{nu}");
            }
        }
    }
}

/// Characteristic systems shrink up the derived flag, Cauchy spaces grow,
/// and `S_k ⊂ χ(S_{k+1})`.
#[test]
fn characteristic_nesting_at_generic_points() {
    let mut sampler = PointSampler::new(4);
    for c in ["1.", "3.", "1.3.", "3.2.", "3.3.", "3.1.2."] {
        let c = code(c);
        let m = generate_model(&c);
        let n = m.dim();
        let flag = m.system().derived_flag();
        let p = sampler.point(n);
        let chi: Vec<_> = flag.systems.iter().map(|s| s.char_span_at(&p)).collect();
        let cauchy: Vec<_> = flag.systems.iter().map(|s| s.cauchy_space_at(&p)).collect();
        for nu in 0..flag.systems.len() {
            for mu in nu..flag.systems.len() {
                assert!(contains(&chi[nu], &chi[mu], n), "{c}: chi(S{mu}) in chi(S{nu})");
                assert!(contains(&cauchy[mu], &cauchy[nu], n), "{c}: Cauchy(S{nu}) in Cauchy(S{mu})");
            }
        }
        for k in 0..=(c.length() - 2) {
            assert!(contains(&chi[k + 1], &flag.systems[k].span_at(&p), n), "{c}: S{k} in chi(S{})", k + 1);
        }
    }
}

#[test]
fn classes_follow_the_flag() {
    let mut sampler = PointSampler::new(8);
    for c in enumerate_codes(4) {
        let m = generate_model(&c);
        let flag = m.system().derived_flag();
        let p = sampler.point(m.dim());
        for (nu, s) in flag.systems.iter().enumerate().take(flag.length) {
            assert_eq!(s.characteristic_report(&p).class, m.dim() - nu, "{c}: S{nu}");
        }
    }
}

#[test]
fn growth_is_invariant_under_constant_absorption() {
    for c in ["3.2.", "3.2(5/2).", "3.1.2(-3).", "3.3.2."] {
        let c = code(c);
        let m = generate_model(&c);
        let (elem, shift) = to_elementary(&m);
        assert!(elem.code.is_elementary());
        let origin = vec![Rational::from_integer(0.into()); m.dim()];
        let depth = m.dim() + 2;
        assert_eq!(m.system().small_growth_vector(&origin, depth), elem.system().small_growth_vector(&shift, depth), "{c}");
    }
}

#[test]
fn length_four_models_are_pairwise_distinguished() {
    let codes = enumerate_codes(4);
    let inv: Vec<_> = codes
        .iter()
        .map(|c| {
            let m = generate_model(c);
            let origin = vec![Rational::from_integer(0.into()); m.dim()];
            (
                m.system().small_growth_vector(&origin, m.dim() + 2).dims,
                m.system().char_signature().unwrap(),
                corank_sequence(c, 2).unwrap(),
            )
        })
        .collect();
    for i in 0..codes.len() {
        for j in i + 1..codes.len() {
            assert_ne!(inv[i], inv[j], "{} vs {}", codes[i], codes[j]);
        }
    }
}

#[test]
fn singular_loci_of_small_models() {
    let locus = |c: &str| singular_locus(&generate_model(&code(c)), 2);
    assert!(locus("1.").is_empty());
    assert!(locus("1.1.").is_empty());
    let x = |n: usize, s: &str| Poly::parse(s, n).unwrap();
    let l3 = locus("3.");
    assert_eq!(l3.strata.len(), 1);
    assert_eq!(l3.strata[0].equations, vec![x(5, "x5")]);
    assert!(locus("3.1.").stratum(&[x(6, "x5"), x(6, "x6")]).is_some());
}
