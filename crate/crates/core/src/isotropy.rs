//! Isotropy algebras at the origin: linear conditions on the jets of the
//! contact Hamiltonian under which the prolonged field vanishes to order k.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{solve_homogeneous, LinearForm, MultiIndex, Rational};
use crate::error::{Error, Result};
use crate::exterior::VectorField;
use crate::jet::{jet_unknowns, JetPoly, JetSymbol, BASE_VARS};
use crate::models::{enumerate_codes, FlagCode};
use crate::symmetry::prolong_to_top;

/// Conditions defining `I_k` for one model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsotropyReport {
    pub code: FlagCode,
    pub order: u32,
    pub truncation: u32,
    /// Jets `f_α(0)` forced to vanish, graded-lex.
    #[serde(serialize_with = "serialize_symbols")]
    pub forced: BTreeSet<JetSymbol>,
    /// Number of independent conditions.
    pub corank: usize,
    /// Reduced conditions tying several jets together.
    #[serde(serialize_with = "serialize_relations")]
    pub relations: Vec<LinearForm<JetSymbol>>,
    /// Unconstrained jets of order at most `k + 1`.
    #[serde(serialize_with = "serialize_symbol_vec")]
    pub free_witness: Vec<JetSymbol>,
}

fn serialize_symbols<S: serde::Serializer>(s: &BTreeSet<JetSymbol>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter().map(ToString::to_string))
}

fn serialize_symbol_vec<S: serde::Serializer>(s: &[JetSymbol], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter().map(ToString::to_string))
}

fn serialize_relations<S: serde::Serializer>(
    r: &[LinearForm<JetSymbol>],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(r.iter().map(relation_text))
}

pub fn relation_text(form: &LinearForm<JetSymbol>) -> String {
    let mut out = String::new();
    for (i, (s, c)) in form.iter().enumerate() {
        let neg = c < &Rational::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        let sign = match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coeff = if abs == Rational::from_integer(1.into()) { String::new() } else { format!("{abs}*") };
        let _ = write!(out, "{sign}{coeff}{s}(0)");
    }
    out.push_str(" = 0");
    out
}

/// The symmetry of a model prolonged from a generic germ `f`, computed once
/// and reused for every order.
#[derive(Clone, Debug)]
pub struct GenericSymmetry {
    code: FlagCode,
    field: VectorField<JetPoly>,
}

impl GenericSymmetry {
    pub fn new(code: &FlagCode) -> Result<Self> {
        let field = prolong_to_top(&JetPoly::germ(BASE_VARS), code)?;
        Ok(GenericSymmetry { code: code.clone(), field })
    }

    pub fn field(&self) -> &VectorField<JetPoly> {
        &self.field
    }

    /// Jet order of the deepest derivative of `f` in the field.
    pub fn depth(&self) -> u32 {
        self.field.coeffs().iter().filter_map(JetPoly::max_order).max().unwrap_or(0)
    }

    fn equations(&self, k: u32, cap: u32) -> Result<Vec<LinearForm<JetSymbol>>> {
        let mut eqs = Vec::new();
        for c in self.field.coeffs() {
            for (_, form) in c.taylor_at_origin(k, cap) {
                let mut lin = LinearForm::new();
                for (u, r) in form {
                    match u {
                        Some(s) => {
                            lin.insert(s, r);
                        }
                        None => return Err(Error::Internal("prolonged field is not linear in f".into())),
                    }
                }
                eqs.push(lin);
            }
        }
        Ok(eqs)
    }

    /// `I_k` with jets truncated at order `cap`.
    pub fn truncated(&self, k: u32, cap: u32) -> Result<IsotropyReport> {
        let unknowns = jet_unknowns(cap);
        let sol = solve_homogeneous(&unknowns, &self.equations(k, cap)?);
        let free_witness = sol.free.iter().filter(|s| s.order() <= k + 1).cloned().collect();
        Ok(IsotropyReport {
            code: self.code.clone(),
            order: k,
            truncation: cap,
            forced: sol.forced_zero,
            corank: sol.rank,
            relations: sol.relations,
            free_witness,
        })
    }

    /// `I_k` at the default truncation `k + ℓ + 1`, checked against one
    /// more order (and retried once higher if that changes anything).
    pub fn isotropy(&self, k: u32) -> Result<IsotropyReport> {
        let base = k + self.code.length() as u32 + 1;
        for n in [base, base + 1] {
            let a = self.truncated(k, n)?;
            let b = self.truncated(k, n + 1)?;
            if a.forced == b.forced && a.corank == b.corank && a.relations == b.relations {
                return Ok(a);
            }
        }
        Err(Error::Internal(format!("isotropy of {} at order {k} did not stabilize under truncation", self.code)))
    }
}

pub fn isotropy_equations(code: &FlagCode, k: u32) -> Result<IsotropyReport> {
    GenericSymmetry::new(code)?.isotropy(k)
}

/// Jets forced by the closed-form laws: `|α| ≤ k+1` with `α ≠ (0,k+1,0)`,
/// together with `α₁ ≥ j`, `|α| = k + j` for `2 ≤ j ≤ ℓ`.
pub fn cartan_law(length: usize, k: u32) -> BTreeSet<JetSymbol> {
    let excluded = MultiIndex::new(vec![0, k + 1, 0]);
    let mut out: BTreeSet<JetSymbol> = MultiIndex::all_up_to_degree(BASE_VARS, k + 1)
        .into_iter()
        .filter(|a| *a != excluded)
        .map(JetSymbol)
        .collect();
    for j in 2..=length as u32 {
        out.extend(
            MultiIndex::all_of_degree(BASE_VARS, k + j).into_iter().filter(|a| a.get(0) >= j).map(JetSymbol),
        );
    }
    out
}

/// The closed-form law for Darboux, homogeneous Cartan words and the
/// primary exceptional flag (same isotropy as the Cartan flag one shorter).
pub fn expected_law(code: &FlagCode, k: u32) -> Option<BTreeSet<JetSymbol>> {
    if code.is_cartan() {
        Some(cartan_law(code.length(), k))
    } else if code.is_primary_exceptional() {
        Some(cartan_law(code.length() - 1, k))
    } else {
        None
    }
}

/// Whether the computed `I_k` is exactly the closed-form law; `None` when
/// no law applies.
pub fn isotropy_law_check(code: &FlagCode, k: u32) -> Result<Option<bool>> {
    let Some(law) = expected_law(code, k) else {
        return Ok(None);
    };
    let r = isotropy_equations(code, k)?;
    Ok(Some(r.relations.is_empty() && r.forced == law))
}

pub fn corank_sequence(code: &FlagCode, k_max: u32) -> Result<Vec<usize>> {
    let g = GenericSymmetry::new(code)?;
    (0..=k_max).map(|k| g.isotropy(k).map(|r| r.corank)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Co-rank strictly increases at every tested order.
    Shrink,
    /// Co-rank unchanged at every tested order.
    Stagnate,
    /// Neither: increases at some orders only.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayEdge {
    pub from: FlagCode,
    pub to: FlagCode,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpiderWeb {
    pub k_max: u32,
    pub nodes: Vec<(FlagCode, Vec<usize>)>,
    pub edges: Vec<DecayEdge>,
}

pub fn edge_kind(parent: &[usize], child: &[usize]) -> EdgeKind {
    if parent.iter().zip(child).all(|(p, c)| c > p) {
        EdgeKind::Shrink
    } else if parent == child {
        EdgeKind::Stagnate
    } else {
        EdgeKind::Mixed
    }
}

/// Codes of length `1..=ℓ`, parents before children.
pub fn web_codes(length: usize) -> Result<Vec<FlagCode>> {
    if length < 2 {
        return Err(Error::Domain("the isotropy web starts at length 2".into()));
    }
    Ok((1..=length).flat_map(enumerate_codes).collect())
}

/// All codes of length `≤ ℓ` with their co-rank sequences and an edge from
/// each code to every one-letter extension.
pub fn spider_web(length: usize, k_max: u32) -> Result<SpiderWeb> {
    let nodes = web_codes(length)?
        .into_iter()
        .map(|c| corank_sequence(&c, k_max).map(|s| (c, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpiderWeb::assemble(k_max, nodes))
}

impl SpiderWeb {
    /// Edges from precomputed co-rank sequences.
    pub fn assemble(k_max: u32, nodes: Vec<(FlagCode, Vec<usize>)>) -> Self {
        let seqs: BTreeMap<String, &Vec<usize>> = nodes.iter().map(|(c, s)| (c.to_string(), s)).collect();
        let edges = nodes
            .iter()
            .filter_map(|(c, s)| {
                let p = c.parent()?;
                let kind = edge_kind(seqs.get(&p.to_string())?, s);
                Some(DecayEdge { from: p, to: c.clone(), kind })
            })
            .collect();
        SpiderWeb { k_max, nodes, edges }
    }
}

impl SpiderWeb {
    /// Undirected segments for stagnation, bold arrows for shrinking.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph isotropy {\n  node [shape=box];\n");
        for (c, s) in &self.nodes {
            let seq: Vec<String> = s.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  \"{c}\" [label=\"{c}\\n{}\"];", seq.join(","));
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Shrink => "style=bold",
                EdgeKind::Stagnate => "dir=none",
                EdgeKind::Mixed => "style=dashed",
            };
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [{style}];", e.from, e.to);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(list: &[[u32; 3]]) -> BTreeSet<JetSymbol> {
        list.iter().map(|a| JetSymbol::new(*a)).collect()
    }

    #[test]
    fn darboux_order_zero() {
        let r = isotropy_equations(&FlagCode::darboux(), 0).unwrap();
        assert_eq!(r.forced, syms(&[[0, 0, 0], [1, 0, 0], [0, 0, 1]]));
        assert_eq!(r.corank, 3);
        assert!(r.relations.is_empty());
        assert_eq!(r.free_witness, vec![JetSymbol::new([0, 1, 0])]);
    }

    #[test]
    fn engel_and_cartan_order_zero() {
        let e = isotropy_equations(&FlagCode::engel(), 0).unwrap();
        assert_eq!(e.forced, syms(&[[0, 0, 0], [1, 0, 0], [0, 0, 1], [2, 0, 0]]));
        let c = isotropy_equations(&"1.".parse().unwrap(), 0).unwrap();
        assert_eq!(c.forced, syms(&[[0, 0, 0], [1, 0, 0], [0, 0, 1], [2, 0, 0], [3, 0, 0]]));
        assert_eq!(c.corank, 5);
    }

    #[test]
    fn law_counts() {
        assert_eq!(cartan_law(1, 0).len(), 3);
        assert_eq!(cartan_law(1, 1).len(), 9);
        assert_eq!(cartan_law(2, 1).len(), 12);
    }

    #[test]
    fn edge_kinds() {
        assert_eq!(edge_kind(&[3, 9], &[4, 12]), EdgeKind::Shrink);
        assert_eq!(edge_kind(&[4, 12], &[4, 12]), EdgeKind::Stagnate);
        assert_eq!(edge_kind(&[4, 12], &[4, 13]), EdgeKind::Mixed);
    }
}
