//! Text formats: one-forms as `dx2 + x3*dx1`, fields as `x3*d1 + d2`.

use std::fmt;

use super::coefficient::Coefficient;
use super::forms::{OneForm, VectorField};
use crate::algebra::{Coords, Poly, VarNames};
use crate::error::{Error, Result};

/// Chart variables `x1..xn` followed by basis symbols `<prefix>1..<prefix>n`.
struct Extended {
    n: usize,
    prefix: &'static str,
}

impl VarNames for Extended {
    fn var_name(&self, var: usize) -> String {
        if var < self.n {
            format!("x{}", var + 1)
        } else {
            format!("{}{}", self.prefix, var - self.n + 1)
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        if let Some(rest) = name.strip_prefix(self.prefix) {
            let k: usize = rest.parse().ok()?;
            return (1..=self.n).contains(&k).then(|| self.n + k - 1);
        }
        Coords(self.n).var_index(name)
    }
}

fn parse_linear(text: &str, n: usize, prefix: &'static str) -> Result<Vec<Poly>> {
    let names = Extended { n, prefix };
    let big = Poly::parse_with(text, 2 * n, &names)?;
    let mut coeffs = vec![Poly::zero(n); n];
    for (m, c) in big.terms() {
        let basis: Vec<usize> = (n..2 * n).filter(|&v| m.get(v) > 0).collect();
        match basis.as_slice() {
            [b] if m.get(*b) == 1 => {
                let mono = crate::algebra::MultiIndex::new(m.exponents()[..n].to_vec());
                coeffs[b - n] = &coeffs[b - n] + &Poly::monomial(n, mono, c.clone());
            }
            _ => {
                return Err(Error::Parse(format!(
                    "expression is not linear in the {prefix}i symbols"
                )))
            }
        }
    }
    Ok(coeffs)
}

impl OneForm<Poly> {
    pub fn parse(text: &str, dim: usize) -> Result<OneForm> {
        Ok(OneForm::new(parse_linear(text, dim, "dx")?))
    }
}

impl VectorField<Poly> {
    pub fn parse(text: &str, dim: usize) -> Result<VectorField> {
        Ok(VectorField::new(parse_linear(text, dim, "d")?))
    }
}

fn push_component(out: &mut String, coeff: &str, many_terms: bool, basis: &str) {
    let first = out.is_empty();
    let (negative, body) = match coeff.strip_prefix('-') {
        Some(rest) if !many_terms => (true, rest),
        _ => (false, coeff),
    };
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    if many_terms {
        out.push_str(&format!("({body})*{basis}"));
    } else if body == "1" {
        out.push_str(basis);
    } else {
        out.push_str(&format!("{body}*{basis}"));
    }
}

/// Renders `(coefficient, basis symbol)` pairs in the given order.
fn render<C: Coefficient>(items: &[(usize, &C)], prefix: &str, names: &dyn VarNames) -> String {
    let mut out = String::new();
    for (i, c) in items {
        push_component(&mut out, &c.to_text(names), c.num_terms() > 1, &format!("{prefix}{}", i + 1));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Components of a form ordered by coefficient simplicity, then index, so
/// the leading differential of a normal-form generator comes first.
pub fn one_form_text<C: Coefficient>(w: &OneForm<C>, names: &dyn VarNames) -> String {
    let mut items: Vec<(usize, &C)> = w.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    items.sort_by_key(|(i, c)| (!c.is_constant(), *i));
    render(&items, "dx", names)
}

pub fn vector_field_text<C: Coefficient>(x: &VectorField<C>, names: &dyn VarNames) -> String {
    let items: Vec<(usize, &C)> = x.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    render(&items, "d", names)
}

impl fmt::Display for OneForm<Poly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&one_form_text(self, &Coords(self.dim())))
    }
}

impl fmt::Display for VectorField<Poly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&vector_field_text(self, &Coords(self.dim())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_forms() {
        for s in ["dx2 + x3*dx1", "dx1 + x5*dx4", "dx5 + (x6 + 1)*dx4", "-dx1 - x2*dx3", "0"] {
            let w = OneForm::parse(s, 6).unwrap();
            assert_eq!(w.to_string(), s);
            assert_eq!(OneForm::parse(&w.to_string(), 6).unwrap(), w);
        }
    }

    #[test]
    fn round_trip_fields() {
        for s in ["x3*d1 + d2", "x2*d2 + x3*d3", "-d3", "(x1 - 1/2*x3)*d1"] {
            let x = VectorField::parse(s, 3).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn rejects_nonlinear() {
        assert!(OneForm::parse("dx1*dx2", 3).is_err());
        assert!(OneForm::parse("x1", 3).is_err());
        assert!(VectorField::parse("d4", 3).is_err());
    }
}
