use flagsys::algebra::{MultiIndex, RatMatrix, Rational};
use flagsys::groupoid::{
    first_order_equations, groupoid_equations_of_order, stabilization_check, GroupoidEquationSet, JetVar,
};
use flagsys::models::{enumerate_codes, FlagCode};
use flagsys::sample::PointSampler;

fn code(s: &str) -> FlagCode {
    s.parse().unwrap()
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

#[test]
fn identity_jet_solves_every_order() {
    let mut sampler = PointSampler::new(21);
    for length in 1..=4 {
        for c in enumerate_codes(length) {
            let top = if length <= 3 { 3 } else { 2 };
            for order in 1..=top {
                let set = groupoid_equations_of_order(&c, &c, order).unwrap();
                for _ in 0..2 {
                    let p = sampler.point(c.chart_dim());
                    let vals = set.vars.identity_values(&p);
                    for e in &set.equations {
                        assert!(e.poly.eval_partial(&vals).is_zero(), "{c} order {order}: {}", e.label);
                    }
                }
            }
        }
    }
}

type Jacobian = Vec<Vec<Rational>>;

/// First-order jets `(j, i)` present in the ring.
fn jet_slots(set: &GroupoidEquationSet) -> Vec<(usize, usize, usize)> {
    (0..set.vars.len())
        .filter_map(|v| match set.vars.var(v) {
            JetVar::Jet(j, s) if s.degree() == 1 => Some((v, *j, s.exponents().iter().position(|&e| e == 1).unwrap())),
            _ => None,
        })
        .collect()
}

/// A random invertible solution of the first-order equations from `x` to
/// `y`; they are linear in the jets once the points are fixed.
fn random_solution(set: &GroupoidEquationSet, x: &[Rational], y: &[Rational], sampler: &mut PointSampler) -> Jacobian {
    let slots = jet_slots(set);
    let nv = set.vars.len();
    let rows: Vec<Vec<Rational>> = set
        .at_points(x, y)
        .unwrap()
        .iter()
        .map(|(label, p)| {
            assert!(p.total_degree().unwrap_or(0) <= 1, "{label} is not linear at fixed points");
            assert!(p.coeff(&MultiIndex::zero(nv)) == zero(), "{label} has a constant term");
            slots.iter().map(|(v, _, _)| p.coeff(&MultiIndex::unit(nv, *v))).collect()
        })
        .collect();
    let kernel = RatMatrix::new(slots.len(), rows).kernel();
    let n = set.vars.dim();
    loop {
        let mut jac = vec![vec![zero(); n]; n];
        for basis in &kernel {
            let t = sampler.nonzero();
            for ((_, j, i), b) in slots.iter().zip(basis) {
                jac[*j][*i] += &t * b;
            }
        }
        if RatMatrix::new(n, jac.clone()).rank() == n {
            return jac;
        }
    }
}

fn satisfies(set: &GroupoidEquationSet, x: &[Rational], y: &[Rational], jac: &Jacobian) -> bool {
    let mut vals = set.vars.point_values(x, y);
    for (v, j, i) in jet_slots(set) {
        vals.push((v, jac[j][i].clone()));
    }
    let n = set.vars.dim();
    let slots: Vec<(usize, usize)> = jet_slots(set).into_iter().map(|(_, j, i)| (j, i)).collect();
    let triangular = (0..n).all(|j| (0..n).all(|i| slots.contains(&(j, i)) || jac[j][i] == zero()));
    triangular && set.polys().all(|p| p.eval_partial(&vals).is_zero())
}

fn compose(outer: &Jacobian, inner: &Jacobian) -> Jacobian {
    let n = outer.len();
    (0..n).map(|j| (0..n).map(|i| (0..n).map(|k| &outer[j][k] * &inner[k][i]).sum()).collect()).collect()
}

#[test]
fn first_order_jets_compose() {
    let mut sampler = PointSampler::new(33);
    for c in ["D", "E", "1.", "1.1.", "3.", "3.2."] {
        let c = code(c);
        let set = first_order_equations(&c).unwrap();
        let n = c.chart_dim();
        for _ in 0..3 {
            let (x, y, z) = (sampler.point(n), sampler.point(n), sampler.point(n));
            let a = random_solution(&set, &x, &y, &mut sampler);
            let b = random_solution(&set, &y, &z, &mut sampler);
            assert!(satisfies(&set, &x, &y, &a), "{c}");
            assert!(satisfies(&set, &x, &z, &compose(&b, &a)), "{c}: composite fails");
            let mut off = a.clone();
            off[1][0] += Rational::from_integer(1.into());
            assert!(!satisfies(&set, &x, &y, &off), "{c}: perturbed jet accepted");
        }
    }
}

#[test]
fn translations_satisfy_the_stabilized_equations() {
    for c in ["D", "E"] {
        assert!(stabilization_check(&code(c), 9).unwrap(), "{c}");
    }
}
