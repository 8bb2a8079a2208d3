//! Bounded derivation search on groupoid equations evaluated at a pair of
//! points, producing replayable non-equivalence certificates.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{groupoid_equations, prolong_by_total_derivatives, GroupoidEquationSet, JetVar, JetVars};
use crate::algebra::{MultiIndex, Poly, Rational, VarNames};
use crate::error::{Error, Result};
use crate::isotropy::corank_sequence;
use crate::models::{generate_model, FlagCode};
use crate::sample::PointSampler;

/// Limits of the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_prolongations: u32,
    pub max_chain: usize,
    pub max_steps: usize,
    /// Rings with more variables are not attempted.
    pub max_vars: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_prolongations: 2, max_chain: 12, max_steps: 4000, max_vars: 900 }
    }
}

/// An operation applied to an equation before it yields a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOp {
    /// Substitute the value solved in an earlier step.
    Substitute(usize),
    /// Divide out this product of nonzero diagonal jets.
    DivideProtected(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateStep {
    pub id: usize,
    /// Equation label, or `det` for the base Jacobian block.
    pub equation: String,
    pub ops: Vec<StepOp>,
    /// The resulting relation, as text.
    pub relation: String,
    /// Variable solved for, if any.
    pub solves: Option<String>,
    #[serde(skip)]
    poly: Poly,
    #[serde(skip)]
    solved: Option<(usize, Poly)>,
}

impl CertificateStep {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contradiction {
    /// A nonzero diagonal jet forced to vanish.
    ProtectedVanishes,
    /// A nonzero constant, or a sum of squares and a constant of one sign.
    DefiniteSign,
    /// The base 3×3 Jacobian block forced singular.
    SingularBaseBlock,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub source: FlagCode,
    pub target: FlagCode,
    pub source_point: Vec<String>,
    pub target_point: Vec<String>,
    pub order: u32,
    pub steps: Vec<CertificateStep>,
    pub contradiction: Contradiction,
    #[serde(skip)]
    vars: Arc<JetVars>,
    #[serde(skip)]
    src: Vec<Rational>,
    #[serde(skip)]
    tgt: Vec<Rational>,
}

/// Relations derived in the search.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub vars: Arc<JetVars>,
    pub steps: Vec<CertificateStep>,
    pub contradiction: Option<(usize, Contradiction)>,
}

impl Derivation {
    /// Value of a variable after every substitution.
    pub fn reduced(&self, var: usize) -> Poly {
        let mut p = Poly::var(self.vars.len(), var);
        for s in &self.steps {
            if let Some((v, val)) = &s.solved {
                if p.involves(*v) {
                    p = substitute_one(&p, *v, val);
                }
            }
        }
        p
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub invariant: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Obstruction {
    Certificate(Certificate),
    /// No contradiction within budget; invariants compared instead.
    Inconclusive { comparisons: Vec<Comparison>, invariants_differ: bool },
}

fn substitute_one(p: &Poly, var: usize, value: &Poly) -> Poly {
    let mut images = vec![None; p.nvars()];
    images[var] = Some(value.clone());
    p.substitute(&images)
}

/// Product of protected variables dividing every term.
fn protected_content(vars: &JetVars, p: &Poly) -> MultiIndex {
    let m = p.monomial_content();
    let e: Vec<u32> =
        m.exponents().iter().enumerate().map(|(v, &e)| if vars.is_protected(v) { e } else { 0 }).collect();
    MultiIndex::new(e)
}

fn divide_monomial(p: &Poly, m: &MultiIndex) -> Poly {
    Poly::from_terms(p.nvars(), p.terms().map(|(k, c)| (k.div(m).expect("content divides"), c.clone())))
}

fn monomial_text(vars: &JetVars, m: &MultiIndex) -> String {
    Poly::monomial(vars.len(), m.clone(), Rational::from_integer(1.into())).to_text(vars)
}

/// Whether `p = 0` is impossible: all terms squares of one sign with at
/// least one strictly nonzero term.
fn is_definite(vars: &JetVars, p: &Poly) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut sign = None;
    let mut strict = false;
    for (m, c) in p.terms() {
        if m.exponents().iter().any(|e| e % 2 == 1) {
            return false;
        }
        let s = c.is_positive();
        if *sign.get_or_insert(s) != s {
            return false;
        }
        if m.exponents().iter().enumerate().all(|(v, &e)| e == 0 || vars.is_protected(v)) {
            strict = true;
        }
    }
    strict
}

/// `p = c·v + r` with `c` constant and `r` free of `v`: the value `-r/c`.
fn linear_solution(p: &Poly, v: usize) -> Option<Poly> {
    if p.degree_in(v) != 1 {
        return None;
    }
    let unit = MultiIndex::unit(p.nvars(), v);
    let c = p.coeff(&unit);
    if c.is_zero() || p.terms().any(|(m, _)| m.get(v) > 0 && *m != unit) {
        return None;
    }
    let rest = &p.clone() - &Poly::monomial(p.nvars(), unit, c.clone());
    Some(rest.scale(&(-c.recip())))
}

struct Work {
    label: String,
    poly: Poly,
    ops: Vec<StepOp>,
}

struct Engine {
    vars: Arc<JetVars>,
    works: Vec<Work>,
    steps: Vec<CertificateStep>,
    /// Base determinant under the substitutions so far.
    det: Work,
}

enum Action {
    Contradiction(usize, Contradiction),
    Solve(usize, usize, Poly),
}

impl Engine {
    fn new(vars: Arc<JetVars>, equations: Vec<(String, Poly)>, det: Poly) -> Self {
        let works = equations.into_iter().map(|(label, poly)| Work { label, poly, ops: Vec::new() }).collect();
        let det = Work { label: "det".into(), poly: det, ops: Vec::new() };
        let mut e = Engine { vars, works, steps: Vec::new(), det };
        for i in 0..e.works.len() {
            e.normalize(i);
        }
        e.works.retain(|w| !w.poly.is_zero());
        e
    }

    fn normalize(&mut self, i: usize) {
        let w = &mut self.works[i];
        let m = protected_content(&self.vars, &w.poly);
        if !m.is_constant() {
            w.ops.push(StepOp::DivideProtected(monomial_text(&self.vars, &m)));
            w.poly = divide_monomial(&w.poly, &m);
        }
    }

    fn choose(&self, linear: bool) -> Option<Action> {
        for (i, w) in self.works.iter().enumerate() {
            if is_definite(&self.vars, &w.poly) {
                let kind = if w.poly.is_constant() && matches!(w.ops.last(), Some(StepOp::DivideProtected(_))) {
                    Contradiction::ProtectedVanishes
                } else {
                    Contradiction::DefiniteSign
                };
                return Some(Action::Contradiction(i, kind));
            }
        }
        // Vanishings first, then undifferentiated equations, then short ones.
        let mut best: Option<((usize, usize, usize), usize, usize, Poly)> = None;
        for (i, w) in self.works.iter().enumerate() {
            let p = &w.poly;
            let single = p.num_terms() == 1 && p.support().len() == 1;
            let key = (usize::from(!single), w.label.matches('(').count(), p.num_terms());
            if best.as_ref().is_some_and(|(k, ..)| *k <= key) {
                continue;
            }
            if single {
                best = Some((key, i, p.support()[0], Poly::zero(p.nvars())));
            } else if let Some((v, val)) =
                p.support().into_iter().filter(|_| linear).find_map(|v| linear_solution(p, v).map(|s| (v, s)))
            {
                best = Some((key, i, v, val));
            }
        }
        best.map(|(_, i, v, val)| Action::Solve(i, v, val))
    }

    fn record(&mut self, w: Work, solved: Option<(usize, Poly)>) -> usize {
        let id = self.steps.len();
        let vars = self.vars.as_ref();
        let relation = match &solved {
            Some((v, val)) => format!("{} = {}", vars.var_name(*v), val.to_text(vars)),
            None => format!("{} = 0", w.poly.to_text(vars)),
        };
        self.steps.push(CertificateStep {
            id,
            equation: w.label,
            ops: w.ops,
            relation,
            solves: solved.as_ref().map(|(v, _)| vars.var_name(*v)),
            poly: w.poly,
            solved,
        });
        id
    }

    fn apply(&mut self, id: usize) {
        let (v, val) = self.steps[id].solved.clone().expect("solve step");
        for i in 0..self.works.len() {
            if self.works[i].poly.involves(v) {
                let p = substitute_one(&self.works[i].poly, v, &val);
                self.works[i].poly = p;
                self.works[i].ops.push(StepOp::Substitute(id));
                self.normalize(i);
            }
        }
        self.works.retain(|w| !w.poly.is_zero());
        if self.det.poly.involves(v) {
            self.det.poly = substitute_one(&self.det.poly, v, &val);
            self.det.ops.push(StepOp::Substitute(id));
        }
    }

    /// Runs to a contradiction, a fixed point, or the step budget. Without
    /// `linear` only vanishings are derived.
    fn run(mut self, max_steps: usize, linear: bool) -> Derivation {
        let mut contradiction = None;
        while self.steps.len() < max_steps {
            if self.det.poly.is_zero() {
                let det = Work { label: "det".into(), poly: self.det.poly.clone(), ops: self.det.ops.clone() };
                let id = self.record(det, None);
                contradiction = Some((id, Contradiction::SingularBaseBlock));
                break;
            }
            match self.choose(linear) {
                None => break,
                Some(Action::Contradiction(i, kind)) => {
                    let w = self.works.swap_remove(i);
                    let id = self.record(w, None);
                    contradiction = Some((id, kind));
                    break;
                }
                Some(Action::Solve(i, v, val)) => {
                    let w = self.works.swap_remove(i);
                    let id = self.record(w, Some((v, val)));
                    self.apply(id);
                }
            }
        }
        Derivation { vars: self.vars, steps: self.steps, contradiction }
    }
}

/// Runs the derivation search on an equation set at a pair of points.
pub fn derive_at_points(set: &GroupoidEquationSet, src: &[Rational], tgt: &[Rational], max_steps: usize) -> Result<Derivation> {
    derive(set, src, tgt, max_steps, true)
}

fn derive(set: &GroupoidEquationSet, src: &[Rational], tgt: &[Rational], max_steps: usize, linear: bool) -> Result<Derivation> {
    let eqs = set.at_points(src, tgt)?;
    let det = set.vars.base_determinant().eval_partial(&set.vars.point_values(src, tgt));
    Ok(Engine::new(set.vars.clone(), eqs, det).run(max_steps, linear))
}

/// Steps the final one depends on, renumbered from zero.
fn prune(steps: &[CertificateStep], last: usize) -> Vec<CertificateStep> {
    let mut keep = BTreeSet::new();
    let mut stack = vec![last];
    while let Some(s) = stack.pop() {
        if keep.insert(s) {
            for op in &steps[s].ops {
                if let StepOp::Substitute(d) = op {
                    stack.push(*d);
                }
            }
        }
    }
    let renumber: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    keep.iter()
        .map(|&old| {
            let mut s = steps[old].clone();
            s.id = renumber[&old];
            s.ops = s
                .ops
                .into_iter()
                .map(|op| match op {
                    StepOp::Substitute(d) => StepOp::Substitute(renumber[&d]),
                    other => other,
                })
                .collect();
            s
        })
        .collect()
}

impl Certificate {
    pub fn vars(&self) -> &JetVars {
        &self.vars
    }

    pub fn last(&self) -> &CertificateStep {
        self.steps.last().expect("certificates are nonempty")
    }

    /// Whether some step states `relation` (parsed in the jet ring) up to a
    /// constant factor.
    pub fn states(&self, relation: &str) -> Result<bool> {
        let target = Poly::parse_with(relation, self.vars.len(), self.vars.as_ref())?;
        Ok(self.steps.iter().any(|s| {
            let p = match &s.solved {
                Some((v, val)) => &Poly::var(self.vars.len(), *v) - val,
                None => s.poly.clone(),
            };
            p.proportional_to(&target)
        }))
    }

    /// Recomputes every step from the equations and checks the final
    /// contradiction.
    pub fn replay(&self) -> Result<()> {
        let set = equations_of_order(&self.source, &self.target, self.order)?;
        let eqs: BTreeMap<String, Poly> = set.at_points(&self.src, &self.tgt)?.into_iter().collect();
        let vars = set.vars.as_ref();
        let fail = |id: usize, why: &str| Err(Error::ContractViolation(format!("step {id} does not replay: {why}")));
        for s in &self.steps {
            let mut p = if s.equation == "det" {
                vars.base_determinant().eval_partial(&vars.point_values(&self.src, &self.tgt))
            } else {
                match eqs.get(&s.equation) {
                    Some(p) => p.clone(),
                    None => return fail(s.id, "unknown equation"),
                }
            };
            for op in &s.ops {
                match op {
                    StepOp::Substitute(d) => {
                        let Some((v, val)) = self.steps.get(*d).filter(|_| *d < s.id).and_then(|t| t.solved.as_ref())
                        else {
                            return fail(s.id, "substitution from a later or non-solving step");
                        };
                        p = substitute_one(&p, *v, val);
                    }
                    StepOp::DivideProtected(text) => {
                        let m = protected_content(vars, &p);
                        if m.is_constant() || monomial_text(vars, &m) != *text {
                            return fail(s.id, "protected factor mismatch");
                        }
                        p = divide_monomial(&p, &m);
                    }
                }
            }
            if p != s.poly {
                return fail(s.id, "relation mismatch");
            }
            if let Some((v, val)) = &s.solved {
                if linear_solution(&p, *v).as_ref() != Some(val) {
                    return fail(s.id, "solved value mismatch");
                }
            }
        }
        let last = self.last();
        let ok = match self.contradiction {
            Contradiction::SingularBaseBlock => last.equation == "det" && last.poly.is_zero(),
            Contradiction::ProtectedVanishes | Contradiction::DefiniteSign => is_definite(vars, &last.poly),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ContractViolation("final relation is not contradictory".into()))
        }
    }
}

fn equations_of_order(source: &FlagCode, target: &FlagCode, order: u32) -> Result<GroupoidEquationSet> {
    let mut set = groupoid_equations(source, target)?;
    while set.order < order {
        set = prolong_by_total_derivatives(&set)?;
    }
    Ok(set)
}

fn point_text(p: &[Rational]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

/// Searches for a contradiction in `Ḡ^k`, `k = 1, 2, ...` within budget;
/// falls back to comparing invariants.
pub fn check_obstruction(
    source: &FlagCode,
    src: &[Rational],
    target: &FlagCode,
    tgt: &[Rational],
    budget: SearchBudget,
) -> Result<Obstruction> {
    let mut set = groupoid_equations(source, target)?;
    loop {
        if set.vars.len() > budget.max_vars {
            break;
        }
        let d = derive_at_points(&set, src, tgt, budget.max_steps)?;
        if let Some((last, kind)) = d.contradiction {
            let steps = prune(&d.steps, last);
            if steps.len() <= budget.max_chain {
                return Ok(Obstruction::Certificate(Certificate {
                    source: source.clone(),
                    target: target.clone(),
                    source_point: point_text(src),
                    target_point: point_text(tgt),
                    order: set.order,
                    steps,
                    contradiction: kind,
                    vars: set.vars.clone(),
                    src: src.to_vec(),
                    tgt: tgt.to_vec(),
                }));
            }
        }
        if set.order > budget.max_prolongations {
            break;
        }
        set = prolong_by_total_derivatives(&set)?;
    }
    compare_invariants(source, src, target, tgt)
}

fn compare_invariants(source: &FlagCode, src: &[Rational], target: &FlagCode, tgt: &[Rational]) -> Result<Obstruction> {
    let a = generate_model(source);
    let b = generate_model(target);
    let depth = a.dim() + 2;
    let mut comparisons = vec![Comparison {
        invariant: "growth vector".into(),
        source: format!("{:?}", a.system().small_growth_vector(src, depth).dims),
        target: format!("{:?}", b.system().small_growth_vector(tgt, depth).dims),
    }];
    if src.iter().chain(tgt).all(Zero::is_zero) {
        comparisons.push(Comparison {
            invariant: "characteristic signature".into(),
            source: format!("{:?}", a.system().char_signature()?),
            target: format!("{:?}", b.system().char_signature()?),
        });
        comparisons.push(Comparison {
            invariant: "isotropy co-ranks".into(),
            source: format!("{:?}", corank_sequence(source, 2)?),
            target: format!("{:?}", corank_sequence(target, 2)?),
        });
    }
    let invariants_differ = comparisons.iter().any(|c| c.source != c.target);
    Ok(Obstruction::Inconclusive { comparisons, invariants_differ })
}

/// A relation holding on every sampled pair of points of a singular
/// stratum but at no regular pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedRelation {
    pub relation: String,
    pub justification: String,
}

/// Points with the stratum equations `x^m + c = 0` imposed.
fn locus_point(stratum: &[Poly], n: usize, sampler: &mut PointSampler) -> Result<Vec<Rational>> {
    let mut p = sampler.point(n);
    for eq in stratum {
        let support = eq.support();
        let [v] = support.as_slice() else {
            return Err(Error::Domain(format!("stratum equation {eq} is not a coordinate hyperplane")));
        };
        let val = linear_solution(eq, *v)
            .and_then(|s| s.constant_value())
            .ok_or_else(|| Error::Domain(format!("stratum equation {eq} is not a coordinate hyperplane")))?;
        p[*v] = val;
    }
    Ok(p)
}

/// First-order jets and target coordinates that vanish at every sampled
/// point of the set.
fn forced_zero_jets(set: &GroupoidEquationSet, pairs: &[(Vec<Rational>, Vec<Rational>)], budget: SearchBudget) -> Result<BTreeSet<usize>> {
    let vars = set.vars.as_ref();
    let mut common: Option<BTreeSet<usize>> = None;
    for (src, tgt) in pairs {
        let d = derive(set, src, tgt, budget.max_steps, false)?;
        if d.contradiction.is_some() {
            return Err(Error::Internal("contradiction between points of the same stratum".into()));
        }
        let mut zero: BTreeSet<usize> = (0..vars.len())
            .filter(|&v| matches!(vars.var(v), JetVar::Jet(_, s) if s.degree() == 1))
            .filter(|&v| d.reduced(v).is_zero())
            .collect();
        let zero_t = MultiIndex::zero(vars.dim());
        zero.extend((0..vars.dim()).filter(|&j| tgt[j].is_zero()).map(|j| vars.position(&JetVar::Jet(j, zero_t.clone())).unwrap()));
        common = Some(match common {
            None => zero,
            Some(c) => c.intersection(&zero).copied().collect(),
        });
    }
    Ok(common.unwrap_or_default())
}

/// Relations forced on a singular stratum of `code`: the source is placed
/// on the stratum, the target on the same stratum, and the derivation search
/// runs on the prolonged equations at sampled pairs. Relations that also
/// hold at regular pairs are discarded.
pub fn forced_relations_on_locus(
    code: &FlagCode,
    stratum: &[Poly],
    seed: u64,
    budget: SearchBudget,
) -> Result<Vec<ForcedRelation>> {
    if stratum.is_empty() {
        return Ok(Vec::new());
    }
    let n = code.chart_dim();
    let mut set = groupoid_equations(code, code)?;
    for _ in 0..budget.max_prolongations {
        let next = prolong_by_total_derivatives(&set)?;
        if next.vars.len() > budget.max_vars {
            break;
        }
        set = next;
    }
    let mut sampler = PointSampler::new(seed);
    let mut on = Vec::new();
    let mut off = Vec::new();
    for _ in 0..3 {
        on.push((locus_point(stratum, n, &mut sampler)?, locus_point(stratum, n, &mut sampler)?));
        off.push((sampler.point(n), sampler.point(n)));
    }
    let singular = forced_zero_jets(&set, &on, budget)?;
    let regular = forced_zero_jets(&set, &off, budget)?;
    let vars = set.vars.as_ref();
    let eqs: Vec<String> = stratum.iter().map(|p| format!("{p} = 0")).collect();
    Ok(singular
        .difference(&regular)
        .map(|&v| {
            let justification = match vars.var(v) {
                JetVar::Jet(_, s) if s.degree() == 0 => "target lies on the same stratum".to_string(),
                _ => format!("derived on {{{}}} at order {}", eqs.join(", "), set.order),
            };
            ForcedRelation { relation: format!("{} = 0", vars.var_name(v)), justification }
        })
        .collect())
}

/// Jets of translations along `x¹, x²` at sampled points, which solve the
/// order `ℓ+1` equations, also solve the order `ℓ+2` equations.
pub fn stabilization_check(code: &FlagCode, seed: u64) -> Result<bool> {
    let l = code.length() as u32;
    let low = equations_of_order(code, code, l + 1)?;
    let high = prolong_by_total_derivatives(&low)?;
    let n = code.chart_dim();
    let mut sampler = PointSampler::new(seed);
    for _ in 0..3 {
        let src = sampler.point(n);
        let mut tgt = src.clone();
        tgt[0] += sampler.rational();
        tgt[1] += sampler.rational();
        let jet = |set: &GroupoidEquationSet| {
            let mut vals = set.vars.identity_values(&src);
            let nv = set.vars.len();
            for (v, val) in vals.iter_mut() {
                if let JetVar::Jet(j, s) = set.vars.var(*v) {
                    if s.degree() == 0 {
                        *val = tgt[*j].clone();
                    }
                }
                debug_assert!(*v < nv);
            }
            vals
        };
        let solves = |set: &GroupoidEquationSet| {
            let vals = jet(set);
            set.polys().all(|p| p.eval_partial(&vals).is_zero())
        };
        if !solves(&low) {
            return Err(Error::Internal(format!("translation jets do not solve the order-{} equations", l + 1)));
        }
        if !solves(&high) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::point;

    #[test]
    fn definiteness() {
        let v = JetVars::new(4, 1);
        let p = |s: &str| Poly::parse_with(s, v.len(), &v).unwrap();
        assert!(is_definite(&v, &p("1 + y1_1^2")));
        assert!(is_definite(&v, &p("y4_4^2")));
        assert!(!is_definite(&v, &p("y1_1^2")));
        assert!(!is_definite(&v, &p("1 - y1_1^2")));
        assert!(is_definite(&v, &p("-3")));
    }

    #[test]
    fn exceptional_vs_cartan() {
        let a: FlagCode = "3.".parse().unwrap();
        let b: FlagCode = "1.".parse().unwrap();
        let o = check_obstruction(&a, &point(&[0; 5]), &b, &point(&[0; 5]), SearchBudget::default()).unwrap();
        let Obstruction::Certificate(c) = o else { panic!("expected a certificate") };
        assert_eq!(c.contradiction, Contradiction::ProtectedVanishes);
        c.replay().unwrap();
    }

    #[test]
    fn regular_points_are_inconclusive() {
        let a: FlagCode = "1.".parse().unwrap();
        let o = check_obstruction(&a, &point(&[0; 5]), &a, &point(&[1, 2, 0, 1, 3]), SearchBudget::default()).unwrap();
        assert!(matches!(o, Obstruction::Inconclusive { .. }));
    }

    #[test]
    fn locus_relations_of_the_first_exceptional_flags() {
        let rels = |code: &str, n: usize, eqs: &[&str]| -> BTreeSet<String> {
            let stratum: Vec<Poly> = eqs.iter().map(|e| Poly::parse(e, n).unwrap()).collect();
            forced_relations_on_locus(&code.parse().unwrap(), &stratum, 5, SearchBudget::default())
                .unwrap()
                .into_iter()
                .map(|r| r.relation)
                .collect()
        };
        let want = |names: &[&str]| names.iter().map(|v| format!("{v} = 0")).collect::<BTreeSet<_>>();
        assert_eq!(rels("3.", 5, &["x5"]), want(&["y5", "y5_1", "y5_2", "y5_3", "y5_4"]));
        assert_eq!(
            rels("3.1.", 6, &["x5", "x6"]),
            want(&["y5", "y5_1", "y5_2", "y5_3", "y5_4", "y6", "y6_1", "y6_2", "y6_3", "y6_4"])
        );
        assert!(rels("1.", 5, &[]).is_empty());
    }
}
