use std::collections::BTreeMap;

use flagsys::algebra::{rational::factorial, solve_homogeneous, LinearForm, MultiIndex, Poly, Rational};
use flagsys::isotropy::{GenericSymmetry, IsotropyReport};
use flagsys::jet::{jet_unknowns, JetSymbol};
use flagsys::models::{enumerate_codes, FlagCode};
use flagsys::sample::PointSampler;
use flagsys::symmetry::prolong_to_top;

fn code(s: &str) -> FlagCode {
    s.parse().unwrap()
}

fn conditions(r: &IsotropyReport) -> Vec<LinearForm<JetSymbol>> {
    let one = Rational::from_integer(1.into());
    r.forced.iter().map(|s| LinearForm::from([(s.clone(), one.clone())])).chain(r.relations.iter().cloned()).collect()
}

/// The parent's conditions lie in the span of the child's: isotropy never
/// grows along an extension.
#[test]
fn isotropy_is_nested_along_extensions() {
    for length in 2..=4 {
        for child in enumerate_codes(length) {
            let parent = child.parent().unwrap();
            let (gc, gp) = (GenericSymmetry::new(&child).unwrap(), GenericSymmetry::new(&parent).unwrap());
            for k in 0..=2 {
                let c = gc.isotropy(k).unwrap();
                let p = gp.isotropy(k).unwrap();
                let mut all = conditions(&c);
                all.extend(conditions(&p));
                let unknowns = jet_unknowns(c.truncation.max(p.truncation));
                assert_eq!(solve_homogeneous(&unknowns, &all).rank, c.corank, "{parent} -> {child}, k = {k}");
                assert!(c.forced.is_superset(&p.forced), "{parent} -> {child}, k = {k}");
            }
        }
    }
}

#[test]
fn pure_x2_jet_is_never_forced() {
    for c in ["D", "E", "1.", "1.1.", "1.1.1."] {
        let g = GenericSymmetry::new(&code(c)).unwrap();
        for k in 0..=2 {
            let r = g.isotropy(k).unwrap();
            let s = JetSymbol::new([0, k + 1, 0]);
            assert!(!r.forced.contains(&s), "{c}, k = {k}");
            assert!(r.free_witness.contains(&s), "{c}, k = {k}");
        }
    }
}

#[test]
fn truncation_is_stable() {
    for c in ["E", "3.", "1.3.", "3.2."] {
        let g = GenericSymmetry::new(&code(c)).unwrap();
        for k in 0..=2 {
            let n = k + code(c).length() as u32 + 1;
            let a = g.truncated(k, n).unwrap();
            let b = g.truncated(k, n + 2).unwrap();
            assert_eq!((a.forced, a.corank, a.relations), (b.forced, b.corank, b.relations), "{c}, k = {k}");
        }
    }
}

/// A Hamiltonian whose jets at the origin satisfy the report, with the free
/// jets drawn at random.
fn sample_member(r: &IsotropyReport, sampler: &mut PointSampler) -> Poly {
    let mut values: BTreeMap<JetSymbol, Rational> = BTreeMap::new();
    let pivots: Vec<&JetSymbol> = r.relations.iter().map(|f| f.keys().next().unwrap()).collect();
    for s in jet_unknowns(r.truncation) {
        let v = if r.forced.contains(&s) || pivots.contains(&&s) { Rational::from_integer(0.into()) } else { sampler.rational() };
        values.insert(s, v);
    }
    for rel in &r.relations {
        let mut it = rel.iter();
        let (pivot, pc) = it.next().unwrap();
        let rest: Rational = it.map(|(s, c)| c * &values[s]).sum();
        values.insert(pivot.clone(), -rest / pc);
    }
    values.iter().fold(Poly::zero(3), |acc, (s, v)| {
        let a: &MultiIndex = s.alpha();
        let denom: Rational = a.exponents().iter().map(|&e| Rational::from_integer(factorial(e))).product();
        &acc + &Poly::monomial(3, a.clone(), v / denom)
    })
}

#[test]
fn members_have_vanishing_k_jets() {
    let mut sampler = PointSampler::new(11);
    for c in ["D", "E", "1.", "3.", "1.3.", "3.2."] {
        let c = code(c);
        let g = GenericSymmetry::new(&c).unwrap();
        for k in 0..=2 {
            let r = g.isotropy(k).unwrap();
            for _ in 0..5 {
                let f = sample_member(&r, &mut sampler);
                let xi = prolong_to_top(&f, &c).unwrap();
                for comp in xi.coeffs() {
                    assert!(comp.terms().all(|(m, _)| m.degree() > k), "{c}, k = {k}: {comp}");
                }
            }
        }
    }
}

/// Dropping one forced condition produces a field whose k-jet survives.
#[test]
fn forced_conditions_are_needed() {
    let c = code("1.");
    let g = GenericSymmetry::new(&c).unwrap();
    let r = g.isotropy(1).unwrap();
    for s in &r.forced {
        let mut f = Poly::zero(3);
        let denom: Rational = s.alpha().exponents().iter().map(|&e| Rational::from_integer(factorial(e))).product();
        f = &f + &Poly::monomial(3, s.alpha().clone(), denom.recip());
        let xi = prolong_to_top(&f, &c).unwrap();
        assert!(xi.coeffs().iter().any(|comp| comp.terms().any(|(m, _)| m.degree() <= 1)), "{s}");
    }
}
