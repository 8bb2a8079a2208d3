use super::coefficient::Coefficient;
use super::forms::OneForm;
use crate::algebra::Poly;
use crate::error::{Error, Result};

/// `η = Σ λ_ν ω^ν + residual`, the residual vanishing on every pivot
/// differential.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<C = Poly> {
    pub residual: OneForm<C>,
    pub multipliers: Vec<C>,
}

/// Order in which the multipliers can be solved for: pairs `(row, generator)`
/// where row `r` reads the pivot differential `pivots[r]`.
fn solve_order(system: &[OneForm], pivots: &[usize]) -> Option<Vec<(usize, usize)>> {
    let n = system.len();
    let mut solved = vec![false; n];
    let mut used = vec![false; pivots.len()];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let step = (0..pivots.len()).filter(|&r| !used[r]).find_map(|r| {
            let open: Vec<usize> = (0..n)
                .filter(|&m| !solved[m] && !system[m].coeff(pivots[r]).is_zero())
                .collect();
            match open.as_slice() {
                [m] if system[*m].coeff(pivots[r]).is_constant() => Some((r, *m)),
                _ => None,
            }
        })?;
        used[step.0] = true;
        solved[step.1] = true;
        order.push(step);
    }
    Some(order)
}

/// Pivot differentials for the generators: for each generator a column with
/// a nonzero constant coefficient, chosen so the multipliers solve
/// triangularly.
pub fn leading_pivots(system: &[OneForm]) -> Result<Vec<usize>> {
    fn search(system: &[OneForm], chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == system.len() {
            return solve_order(system, chosen).is_some();
        }
        for c in 0..system[k].dim() {
            if chosen.contains(&c) {
                continue;
            }
            let a = system[k].coeff(c);
            if a.is_zero() || !a.is_constant() {
                continue;
            }
            chosen.push(c);
            if search(system, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if search(system, &mut chosen) {
        Ok(chosen)
    } else {
        Err(Error::DegenerateSystem(
            "generators admit no triangular set of constant pivots at the origin".into(),
        ))
    }
}

/// Reduces `η` modulo the span of `system`, eliminating the differentials
/// listed in `pivots` (one per generator).
pub fn reduce_mod_system<C: Coefficient>(
    eta: &OneForm<C>,
    system: &[OneForm],
    pivots: &[usize],
) -> Result<Reduction<C>> {
    if pivots.len() != system.len() {
        return Err(Error::DegenerateSystem(format!(
            "{} pivots for {} generators",
            pivots.len(),
            system.len()
        )));
    }
    if let Some(w) = system.iter().find(|w| w.dim() != eta.dim()) {
        return Err(Error::ChartMismatch(format!(
            "form of dimension {} reduced against a generator of dimension {}",
            eta.dim(),
            w.dim()
        )));
    }
    let order = solve_order(system, pivots).ok_or_else(|| {
        Error::DegenerateSystem("generators are dependent at the origin along the pivots".into())
    })?;
    let nvars = eta.nvars();
    let mut lambda: Vec<Option<C>> = vec![None; system.len()];
    for (r, m) in order {
        let col = pivots[r];
        let mut rhs = eta.coeff(col).clone();
        for (mu, l) in lambda.iter().enumerate() {
            if let Some(l) = l {
                rhs = rhs.sub(&l.mul_poly(system[mu].coeff(col)));
            }
        }
        let a = system[m].coeff(col).constant_value().expect("constant pivot");
        lambda[m] = Some(rhs.scale(&a.recip()));
    }
    let multipliers: Vec<C> = lambda.into_iter().map(|l| l.unwrap_or_else(|| C::zero(nvars))).collect();
    let mut residual = eta.clone();
    for (l, w) in multipliers.iter().zip(system) {
        let mut comps = residual.coeffs().to_vec();
        for (c, wc) in comps.iter_mut().zip(w.coeffs()) {
            *c = c.sub(&l.mul_poly(wc));
        }
        residual = OneForm::new(comps);
    }
    Ok(Reduction { residual, multipliers })
}

/// Reduction against the automatically chosen pivots.
pub fn reduce_auto<C: Coefficient>(eta: &OneForm<C>, system: &[OneForm]) -> Result<Reduction<C>> {
    let pivots = leading_pivots(system)?;
    reduce_mod_system(eta, system, &pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    fn darboux() -> OneForm {
        OneForm::new(vec![p("x3"), p("1"), p("0")])
    }

    #[test]
    fn examples() {
        let s = vec![darboux()];
        let r = reduce_mod_system(&darboux(), &s, &[1]).unwrap();
        assert!(r.residual.is_zero());
        assert_eq!(r.multipliers, vec![p("1")]);

        let r = reduce_mod_system(&OneForm::<Poly>::dx(3, 2), &s, &[1]).unwrap();
        assert_eq!(r.residual, OneForm::dx(3, 2));
        assert_eq!(r.multipliers, vec![p("0")]);

        let r = reduce_mod_system(&OneForm::<Poly>::dx(3, 1), &s, &[1]).unwrap();
        assert_eq!(r.residual, OneForm::new(vec![p("-x3"), p("0"), p("0")]));
        assert_eq!(r.multipliers, vec![p("1")]);
    }

    #[test]
    fn reassembly() {
        let s = vec![
            OneForm::new(vec![p("x3"), p("1"), p("0")]),
            OneForm::new(vec![p("x2"), p("0"), p("1")]),
        ];
        let eta = OneForm::new(vec![p("x1^2"), p("x2*x3"), p("x1 + 3")]);
        let r = reduce_auto(&eta, &s).unwrap();
        let mut back = r.residual.clone();
        for (l, w) in r.multipliers.iter().zip(&s) {
            back = back.add(&w.mul_poly(l));
        }
        assert_eq!(back, eta);
        assert!(r.residual.coeff(1).is_zero() && r.residual.coeff(2).is_zero());
    }

    #[test]
    fn degenerate_system() {
        let s = vec![OneForm::new(vec![p("x3"), p("x1"), p("0")])];
        assert!(matches!(leading_pivots(&s), Err(Error::DegenerateSystem(_))));
        assert!(reduce_mod_system(&darboux(), &s, &[1]).is_err());
    }
}
