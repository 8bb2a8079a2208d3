//! Equivalence-groupoid equations: conditions on the jets of a local
//! diffeomorphism `y = φ(x)` pulling a target model back into the span of a
//! source model.

mod obstruction;

pub use obstruction::{
    check_obstruction, forced_relations_on_locus, stabilization_check, Certificate, CertificateStep, Contradiction,
    Derivation, ForcedRelation, Obstruction, SearchBudget, StepOp,
};

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{MultiIndex, Poly, Rational, VarNames};
use crate::error::{Error, Result};
use crate::exterior::{reduce_mod_system, OneForm};
use crate::models::{generate_model, FlagCode};

/// A variable of the jet ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JetVar {
    /// Source coordinate `x^{i+1}`.
    Source(usize),
    /// `y^{j+1}_σ`: derivative of the target component `j` along the
    /// multi-index `σ` of source variables. `σ = 0` is the target point.
    Jet(usize, MultiIndex),
}

/// Variables up to a jet order on charts of dimension `n`, restricted to
/// the triangular shape: `y^j` depends only on `x^1, ..., x^{max(j,3)}`.
#[derive(Clone, Debug)]
pub struct JetVars {
    n: usize,
    order: u32,
    vars: Vec<JetVar>,
    index: HashMap<JetVar, usize>,
    by_name: HashMap<String, usize>,
}

/// Highest source index (0-based) component `j` may depend on.
pub fn dependency_bound(j: usize) -> usize {
    j.max(2)
}

impl JetVars {
    pub fn new(n: usize, order: u32) -> Self {
        let mut vars: Vec<JetVar> = (0..n).map(JetVar::Source).collect();
        for d in 0..=order {
            for j in 0..n {
                let m = dependency_bound(j) + 1;
                for sigma in MultiIndex::all_of_degree(m, d).into_iter().rev() {
                    vars.push(JetVar::Jet(j, sigma.resized(n)));
                }
            }
        }
        let index: HashMap<JetVar, usize> = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut out = JetVars { n, order, vars, index, by_name: HashMap::new() };
        out.by_name = (0..out.vars.len()).map(|i| (out.var_name(i), i)).collect();
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, i: usize) -> &JetVar {
        &self.vars[i]
    }

    pub fn position(&self, v: &JetVar) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn x(&self, i: usize) -> Poly {
        Poly::var(self.len(), i)
    }

    /// `y^{j+1}_σ`, or zero when the triangular shape excludes it.
    pub fn jet(&self, j: usize, sigma: &MultiIndex) -> Poly {
        match self.position(&JetVar::Jet(j, sigma.clone())) {
            Some(i) => Poly::var(self.len(), i),
            None => Poly::zero(self.len()),
        }
    }

    pub fn y(&self, j: usize) -> Poly {
        self.jet(j, &MultiIndex::zero(self.n))
    }

    /// First-order jet `y^{j+1}_{i+1}`.
    pub fn y1(&self, j: usize, i: usize) -> Poly {
        self.jet(j, &MultiIndex::unit(self.n, i))
    }

    /// Whether the variable is a diagonal jet `y^j_j`, `j ≥ 4`, assumed
    /// nonzero.
    pub fn is_protected(&self, var: usize) -> bool {
        match &self.vars[var] {
            JetVar::Jet(j, s) => *j >= 3 && s.degree() == 1 && s.get(*j) == 1,
            JetVar::Source(_) => false,
        }
    }

    /// `det (y^a_b)_{a,b ≤ 3}`, the other invertibility side-condition.
    pub fn base_determinant(&self) -> Poly {
        let e = |a: usize, b: usize| self.y1(a, b);
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&e(a, c) * &e(b, d)) - &(&e(a, d) * &e(b, c));
        let t0 = &e(0, 0) * &minor(1, 2, 1, 2);
        let t1 = &e(0, 1) * &minor(1, 2, 0, 2);
        let t2 = &e(0, 2) * &minor(1, 2, 0, 1);
        &(&t0 - &t1) + &t2
    }

    /// Re-embeds a polynomial from a lower-order ring.
    pub fn lift(&self, lower: &JetVars, p: &Poly) -> Poly {
        let map: Vec<usize> = lower.vars.iter().map(|v| self.index[v]).collect();
        p.remap(&map, self.len())
    }

    /// `D_i p = ∂p/∂x^i + Σ ∂p/∂y^j_σ · y^j_{σ+e_i}`. Jets of the top order
    /// have no successor here, so `p` must avoid them.
    pub fn total_derivative(&self, p: &Poly, i: usize) -> Result<Poly> {
        let mut out = p.partial(i);
        for v in p.support() {
            if let JetVar::Jet(j, s) = &self.vars[v] {
                if s.degree() >= self.order {
                    return Err(Error::ChartMismatch(format!(
                        "total derivative of a top-order jet {} needs a higher ring",
                        self.var_name(v)
                    )));
                }
                let next = self.jet(*j, &s.incremented(i));
                if !next.is_zero() {
                    out += &(&p.partial(v) * &next);
                }
            }
        }
        Ok(out)
    }

    /// Values of the source point and target point.
    pub fn point_values(&self, src: &[Rational], tgt: &[Rational]) -> Vec<(usize, Rational)> {
        let mut out: Vec<(usize, Rational)> = src.iter().cloned().enumerate().collect();
        let zero = MultiIndex::zero(self.n);
        for (j, v) in tgt.iter().enumerate() {
            out.push((self.index[&JetVar::Jet(j, zero.clone())], v.clone()));
        }
        out
    }

    /// The identity jet at `point`: `y = x`, `y^j_i = δ^j_i`, higher jets 0.
    pub fn identity_values(&self, point: &[Rational]) -> Vec<(usize, Rational)> {
        self.vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let val = match v {
                    JetVar::Source(k) => point[*k].clone(),
                    JetVar::Jet(j, s) if s.degree() == 0 => point[*j].clone(),
                    JetVar::Jet(j, s) if s.degree() == 1 && s.get(*j) == 1 => Rational::from_integer(1.into()),
                    JetVar::Jet(..) => Rational::from_integer(0.into()),
                };
                (i, val)
            })
            .collect()
    }
}

impl VarNames for JetVars {
    /// `x3`, `y5`, `y5_4`, `y4_46`; indices are joined with dots past 9.
    fn var_name(&self, var: usize) -> String {
        match &self.vars[var] {
            JetVar::Source(i) => format!("x{}", i + 1),
            JetVar::Jet(j, s) if s.degree() == 0 => format!("y{}", j + 1),
            JetVar::Jet(j, s) => {
                let idx: Vec<String> = s
                    .exponents()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &e)| std::iter::repeat((i + 1).to_string()).take(e as usize))
                    .collect();
                let sep = if self.n > 9 { "." } else { "" };
                format!("y{}_{}", j + 1, idx.join(sep))
            }
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }
}

/// One equation with its provenance: `ω3·dx4` is the `dx4` residual of the
/// third generator, `D6(...)` a total derivative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupoidEquation {
    pub label: String,
    #[serde(skip)]
    pub poly: Poly,
    #[serde(rename = "equation")]
    pub text: String,
}

/// The equations of `Ḡ^k` between two models of the same shape.
#[derive(Clone, Debug, Serialize)]
pub struct GroupoidEquationSet {
    pub source: FlagCode,
    pub target: FlagCode,
    pub order: u32,
    #[serde(skip)]
    pub vars: Arc<JetVars>,
    pub equations: Vec<GroupoidEquation>,
    /// Set when the order does not exceed the length: the lifted set may be
    /// larger than the true groupoid.
    pub may_exceed_groupoid: bool,
}

impl GroupoidEquationSet {
    pub fn get(&self, label: &str) -> Option<&GroupoidEquation> {
        self.equations.iter().find(|e| e.label == label)
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.equations.iter().map(|e| &e.poly)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        Poly::parse_with(text, self.vars.len(), self.vars.as_ref())
    }

    pub fn text(&self, p: &Poly) -> String {
        p.to_text(self.vars.as_ref())
    }

    /// Equations with the source and target points substituted.
    pub fn at_points(&self, src: &[Rational], tgt: &[Rational]) -> Result<Vec<(String, Poly)>> {
        let n = self.vars.dim();
        if src.len() != n || tgt.len() != n {
            return Err(Error::ChartMismatch(format!("points must have {n} coordinates")));
        }
        let values = self.vars.point_values(src, tgt);
        Ok(self
            .equations
            .iter()
            .map(|e| (e.label.clone(), e.poly.eval_partial(&values)))
            .filter(|(_, p)| !p.is_zero())
            .collect())
    }
}

fn equation(vars: &JetVars, label: String, p: Poly) -> GroupoidEquation {
    let poly = p.primitive();
    GroupoidEquation { text: poly.to_text(vars), label, poly }
}

/// `Ḡ¹` for diffeomorphisms from `source` to `target`.
pub fn groupoid_equations(source: &FlagCode, target: &FlagCode) -> Result<GroupoidEquationSet> {
    if source.length() != target.length() {
        return Err(Error::ChartMismatch(format!(
            "models {source} and {target} have different lengths"
        )));
    }
    let a = generate_model(source);
    let b = generate_model(target);
    let n = a.dim();
    let vars = JetVars::new(n, 1);
    let nv = vars.len();
    let to_target: Vec<Option<Poly>> =
        (0..n).map(|k| Some(vars.y(k))).chain((n..nv).map(|_| None)).collect();
    let src_gens: Vec<OneForm> = a
        .generators()
        .iter()
        .map(|w| OneForm::new(w.coeffs().iter().map(|c| c.with_nvars(nv)).collect()))
        .collect();
    let pivots = a.pivots();
    let mut equations = Vec::new();
    for nu in 0..a.length() {
        let (p, q) = b.pairs[nu];
        let y_coeff = b.coefficients[nu].with_nvars(nv).substitute(&to_target);
        let comps: Vec<Poly> =
            (0..n).map(|i| &vars.y1(p - 1, i) + &(&y_coeff * &vars.y1(q - 1, i))).collect();
        let red = reduce_mod_system(&OneForm::new(comps), &src_gens[..=nu], &pivots[..=nu])?;
        for (c, r) in red.residual.coeffs().iter().enumerate() {
            if !r.is_zero() {
                equations.push(equation(&vars, format!("w{}.dx{}", nu + 1, c + 1), r.clone()));
            }
        }
    }
    Ok(GroupoidEquationSet {
        source: source.clone(),
        target: target.clone(),
        order: 1,
        vars: Arc::new(vars),
        equations,
        may_exceed_groupoid: source.length() >= 1,
    })
}

/// `Ḡ¹` of a model with itself.
pub fn first_order_equations(code: &FlagCode) -> Result<GroupoidEquationSet> {
    groupoid_equations(code, code)
}

/// Next order: the equations re-read in the larger ring together with all
/// their total derivatives.
pub fn prolong_by_total_derivatives(set: &GroupoidEquationSet) -> Result<GroupoidEquationSet> {
    let old = set.vars.as_ref();
    let vars = JetVars::new(old.dim(), set.order + 1);
    let mut equations = Vec::new();
    let mut derived = Vec::new();
    for e in &set.equations {
        let p = vars.lift(old, &e.poly);
        for i in 0..old.dim() {
            let d = vars.total_derivative(&p, i)?;
            if !d.is_zero() {
                derived.push(equation(&vars, format!("D{}({})", i + 1, e.label), d));
            }
        }
        equations.push(equation(&vars, e.label.clone(), p));
    }
    equations.extend(derived);
    Ok(GroupoidEquationSet {
        source: set.source.clone(),
        target: set.target.clone(),
        order: set.order + 1,
        may_exceed_groupoid: set.order + 1 <= set.source.length() as u32,
        vars: Arc::new(vars),
        equations,
    })
}

/// `Ḡ^k` by `k - 1` prolongations of the first-order set.
pub fn groupoid_equations_of_order(source: &FlagCode, target: &FlagCode, order: u32) -> Result<GroupoidEquationSet> {
    if order == 0 {
        return Err(Error::Domain("groupoid equations start at order 1".into()));
    }
    let mut set = groupoid_equations(source, target)?;
    while set.order < order {
        set = prolong_by_total_derivatives(&set)?;
    }
    Ok(set)
}
