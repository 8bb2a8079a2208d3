//! Jet expressions in a contact Hamiltonian: polynomials in the chart
//! variables whose coefficients are linear in the derivatives of `f`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::algebra::poly::needs_parens;
use crate::algebra::rational::factorial;
use crate::algebra::{LinearForm, MultiIndex, Poly, Rational, VarNames};
use crate::exterior::Coefficient;

/// Number of variables the Hamiltonian depends on.
pub const BASE_VARS: usize = 3;

/// `f_α`, the α-th partial derivative of the Hamiltonian.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetSymbol(pub MultiIndex);

impl JetSymbol {
    pub fn new(alpha: [u32; 3]) -> Self {
        JetSymbol(MultiIndex::new(alpha.to_vec()))
    }

    pub fn alpha(&self) -> &MultiIndex {
        &self.0
    }

    pub fn order(&self) -> u32 {
        self.0.degree()
    }
}

/// Written with repeated indices: `f`, `f1`, `f113`.
impl fmt::Display for JetSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f")?;
        for (v, &e) in self.0.exponents().iter().enumerate() {
            for _ in 0..e {
                write!(f, "{}", v + 1)?;
            }
        }
        Ok(())
    }
}

/// What a polynomial coefficient multiplies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JetKey {
    /// Plain polynomial part.
    Unit,
    /// The function `f_α(x)`, differentiated by shifting α.
    Germ(JetSymbol),
    /// The number `f_α(0)`, constant under differentiation.
    Value(JetSymbol),
}

/// `Σ P_key(x) · key`, with at most one polynomial per key.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoly {
    nvars: usize,
    parts: BTreeMap<JetKey, Poly>,
}

impl JetPoly {
    /// The Hamiltonian `f` itself as a germ on a chart with `nvars ≥ 3`.
    pub fn germ(nvars: usize) -> Self {
        JetPoly::symbol(nvars, JetKey::Germ(JetSymbol(MultiIndex::zero(BASE_VARS))))
    }

    pub fn symbol(nvars: usize, key: JetKey) -> Self {
        assert!(nvars >= BASE_VARS, "jet expressions need the three base variables");
        let mut parts = BTreeMap::new();
        parts.insert(key, Poly::one(nvars));
        JetPoly { nvars, parts }
    }

    pub fn parts(&self) -> &BTreeMap<JetKey, Poly> {
        &self.parts
    }

    pub fn part(&self, key: &JetKey) -> Option<&Poly> {
        self.parts.get(key)
    }

    fn add_part(&mut self, key: JetKey, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.parts.get_mut(&key) {
            Some(q) => {
                *q += &p;
                if q.is_zero() {
                    self.parts.remove(&key);
                }
            }
            None => {
                self.parts.insert(key, p);
            }
        }
    }

    fn map_parts(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = JetPoly::zero(self.nvars);
        for (k, p) in &self.parts {
            out.add_part(k.clone(), f(p));
        }
        out
    }

    /// Highest jet order appearing.
    pub fn max_order(&self) -> Option<u32> {
        self.parts
            .keys()
            .filter_map(|k| match k {
                JetKey::Unit => None,
                JetKey::Germ(s) | JetKey::Value(s) => Some(s.order()),
            })
            .max()
    }

    /// Taylor coefficients at the origin of total degree `≤ k`, each a
    /// linear form in the numbers `f_δ(0)`. Jets of order above `cap` are
    /// truncated. The polynomial part contributes under `None`.
    pub fn taylor_at_origin(&self, k: u32, cap: u32) -> BTreeMap<MultiIndex, LinearForm<Option<JetSymbol>>> {
        let mut out: BTreeMap<MultiIndex, LinearForm<Option<JetSymbol>>> = BTreeMap::new();
        let mut push = |m: MultiIndex, u: Option<JetSymbol>, c: Rational| {
            let form = out.entry(m).or_default();
            let e = form.entry(u.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                form.remove(&u);
            }
        };
        for (key, p) in &self.parts {
            for (beta, r) in p.terms() {
                let d = beta.degree();
                if d > k {
                    continue;
                }
                match key {
                    JetKey::Unit => push(beta.clone(), None, r.clone()),
                    JetKey::Value(s) => {
                        if s.order() <= cap {
                            push(beta.clone(), Some(s.clone()), r.clone());
                        }
                    }
                    JetKey::Germ(s) => {
                        for gamma in MultiIndex::all_up_to_degree(BASE_VARS, k - d) {
                            let delta = s.0.mul(&gamma);
                            if delta.degree() > cap {
                                continue;
                            }
                            let fact: num_bigint::BigInt =
                                gamma.exponents().iter().map(|&g| factorial(g)).product();
                            let m = beta.mul(&gamma.resized(self.nvars));
                            push(m, Some(JetSymbol(delta)), r / Rational::from_integer(fact));
                        }
                    }
                }
            }
        }
        out.retain(|_, f| !f.is_empty());
        out
    }

    /// Replaces every germ `f_α(x)` by its Taylor polynomial of degree
    /// `≤ order` with symbolic values `f_δ(0)`.
    pub fn expand_germs(&self, order: u32) -> JetPoly {
        let mut out = JetPoly::zero(self.nvars);
        for (key, p) in &self.parts {
            match key {
                JetKey::Germ(s) => {
                    for gamma in MultiIndex::all_up_to_degree(BASE_VARS, order) {
                        let fact: num_bigint::BigInt = gamma.exponents().iter().map(|&g| factorial(g)).product();
                        let mono = Poly::monomial(
                            self.nvars,
                            gamma.resized(self.nvars),
                            Rational::new(1.into(), fact),
                        );
                        out.add_part(JetKey::Value(JetSymbol(s.0.mul(&gamma))), p * &mono);
                    }
                }
                _ => out.add_part(key.clone(), p.clone()),
            }
        }
        out
    }

    /// The polynomial obtained by substituting a concrete Hamiltonian.
    pub fn instantiate(&self, f: &Poly) -> Poly {
        assert_eq!(f.nvars(), BASE_VARS);
        let mut out = Poly::zero(self.nvars);
        let at_origin = vec![Rational::zero(); BASE_VARS];
        for (key, p) in &self.parts {
            let value = match key {
                JetKey::Unit => Poly::one(self.nvars),
                JetKey::Germ(s) => derivative(f, &s.0).with_nvars(self.nvars),
                JetKey::Value(s) => Poly::constant(self.nvars, derivative(f, &s.0).eval(&at_origin)),
            };
            out += &(p * &value);
        }
        out
    }
}

fn derivative(f: &Poly, alpha: &MultiIndex) -> Poly {
    let mut g = f.clone();
    for (v, &e) in alpha.exponents().iter().enumerate() {
        for _ in 0..e {
            g = g.partial(v);
        }
    }
    g
}

/// The generic truncated Hamiltonian `Σ_{|α|≤N} f_α(0) x^α / α!`.
pub fn generic_jet_hamiltonian(n: u32) -> JetPoly {
    JetPoly::germ(BASE_VARS).expand_germs(n)
}

/// Symbols `f_δ(0)` with `|δ| ≤ n`, graded-lex.
pub fn jet_unknowns(n: u32) -> BTreeSet<JetSymbol> {
    MultiIndex::all_up_to_degree(BASE_VARS, n).into_iter().map(JetSymbol).collect()
}

impl Coefficient for JetPoly {
    fn zero(nvars: usize) -> Self {
        JetPoly { nvars, parts: BTreeMap::new() }
    }
    fn nvars(&self) -> usize {
        self.nvars
    }
    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "chart mismatch between jet expressions");
        let mut out = self.clone();
        for (k, p) in &other.parts {
            out.add_part(k.clone(), p.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn neg(&self) -> Self {
        self.map_parts(|p| -p)
    }
    fn scale(&self, c: &Rational) -> Self {
        self.map_parts(|p| p.scale(c))
    }
    fn mul_poly(&self, q: &Poly) -> Self {
        self.map_parts(|p| p * q)
    }
    /// `∂ᵢ(P f_α) = ∂ᵢP f_α + P f_{α+eᵢ}`, the second term only for base
    /// variables.
    fn partial(&self, var: usize) -> Self {
        let mut out = self.map_parts(|p| p.partial(var));
        if var < BASE_VARS {
            for (k, p) in &self.parts {
                if let JetKey::Germ(s) = k {
                    out.add_part(JetKey::Germ(JetSymbol(s.0.incremented(var))), p.clone());
                }
            }
        }
        out
    }
    fn embed(p: &Poly) -> Self {
        let mut out = JetPoly::zero(p.nvars());
        out.add_part(JetKey::Unit, p.clone());
        out
    }
    fn with_nvars(&self, nvars: usize) -> Self {
        let mut out = JetPoly::zero(nvars);
        for (k, p) in &self.parts {
            out.add_part(k.clone(), p.with_nvars(nvars));
        }
        out
    }
    fn num_terms(&self) -> usize {
        self.parts.values().map(Poly::num_terms).sum()
    }
    fn is_constant(&self) -> bool {
        self.parts.iter().all(|(k, p)| !matches!(k, JetKey::Germ(_)) && p.is_constant())
    }
    fn to_text(&self, names: &dyn VarNames) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, p)) in self.parts.iter().enumerate() {
            let sym = match k {
                JetKey::Unit => None,
                JetKey::Germ(s) => Some(s.to_string()),
                JetKey::Value(s) => Some(format!("{s}(0)")),
            };
            let body = match sym {
                None => p.to_text(names),
                Some(s) if p.is_constant() => {
                    let c = p.constant_value().unwrap();
                    if c == Rational::from_integer(1.into()) {
                        s
                    } else if c == Rational::from_integer((-1).into()) {
                        format!("-{s}")
                    } else {
                        format!("{c}*{s}")
                    }
                }
                Some(s) if needs_parens(p) => format!("({})*{s}", p.to_text(names)),
                Some(s) => format!("{}*{s}", p.to_text(names)),
            };
            if i == 0 {
                out.push_str(&body);
            } else if let Some(rest) = body.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        out
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&crate::algebra::Coords(self.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn generic_term_counts() {
        assert_eq!(generic_jet_hamiltonian(0).parts().len(), 1);
        assert_eq!(generic_jet_hamiltonian(1).parts().len(), 4);
        for n in 0..6u32 {
            let expected = ((n + 1) * (n + 2) * (n + 3) / 6) as usize;
            assert_eq!(generic_jet_hamiltonian(n).parts().len(), expected);
        }
    }

    #[test]
    fn germ_partial_rule() {
        let x1 = Poly::var(4, 0);
        let e = JetPoly::germ(4).mul_poly(&x1.pow(2));
        let d = e.partial(0);
        assert_eq!(d.to_string(), "2*x1*f + x1^2*f1");
        assert_eq!(e.partial(3), JetPoly::zero(4));
    }

    #[test]
    fn taylor_of_germ() {
        // x1 f(x) to degree 2: x1 f(0) + x1^2 f1(0) + x1 x2 f2(0) + x1 x3 f3(0)
        let e = JetPoly::germ(3).mul_poly(&Poly::var(3, 0));
        let t = e.taylor_at_origin(2, 10);
        assert_eq!(t.len(), 4);
        let m = MultiIndex::new(vec![2, 0, 0]);
        assert_eq!(t[&m][&Some(JetSymbol::new([1, 0, 0]))], rat(1));
        // f to degree 2 carries 1/2 on squares
        let t = JetPoly::germ(3).taylor_at_origin(2, 10);
        assert_eq!(t[&m][&Some(JetSymbol::new([2, 0, 0]))], Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn instantiate_matches_direct() {
        let f = Poly::parse("x1^2*x3 + x2 - 3*x3^2", 3).unwrap();
        let e = JetPoly::germ(3).partial(0).partial(2);
        assert_eq!(e.instantiate(&f), f.partial(0).partial(2));
        assert_eq!(generic_jet_hamiltonian(3).instantiate(&f), f);
    }

    #[test]
    fn symbol_text() {
        assert_eq!(JetSymbol::new([2, 0, 1]).to_string(), "f113");
        assert_eq!(JetSymbol::new([0, 0, 0]).to_string(), "f");
    }
}
