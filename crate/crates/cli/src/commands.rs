use std::fmt::Write as _;

use flagsys::algebra::{parse_rational, Coords, Poly, Rational};
use flagsys::exterior::vector_field_text;
use flagsys::groupoid::{
    check_obstruction, forced_relations_on_locus, groupoid_equations_of_order, Obstruction, SearchBudget, StepOp,
};
use flagsys::isotropy::{corank_sequence, expected_law, isotropy_equations, relation_text, web_codes, SpiderWeb};
use flagsys::models::{cited_equivalences, enumerate_codes, generate_model, singular_locus, to_elementary, FlagCode};
use flagsys::pfaffian::PfaffianSystem;
use flagsys::symmetry::{prolong_tower, verify_symmetry};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, SystemArgs, Verb};
use crate::parallel::par_map;
use crate::CliError;

/// What a verb produced, before rendering.
pub struct Report {
    pub verb: &'static str,
    pub code: Option<String>,
    pub result: Value,
    pub text: String,
    pub dot: Option<String>,
}

type Outcome = Result<Report, CliError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn parse_code(text: &str) -> Result<FlagCode, CliError> {
    Ok(text.parse::<FlagCode>()?)
}

/// `a,b,c` of rationals; `None` means the origin.
fn parse_point(text: Option<&str>, dim: usize) -> Result<Vec<Rational>, CliError> {
    let Some(text) = text else {
        return Ok(vec![Rational::from_integer(0.into()); dim]);
    };
    let coords = text
        .split(',')
        .map(|c| parse_rational(c).ok_or_else(|| CliError::Usage(format!("bad coordinate `{}` in `{text}`", c.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(CliError::Usage(format!("point `{text}` has {} coordinates, expected {dim}", coords.len())));
    }
    Ok(coords)
}

fn vector_text(v: &[Rational]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", items.join(", "))
}

fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn forms_text(s: &PfaffianSystem) -> Vec<String> {
    s.generators().iter().map(ToString::to_string).collect()
}

struct Subject {
    code: Option<FlagCode>,
    system: PfaffianSystem,
}

fn subject(args: &SystemArgs) -> Result<Subject, CliError> {
    match (&args.code, args.dim) {
        (Some(c), _) => {
            let code = parse_code(c)?;
            let system = generate_model(&code).system().clone();
            Ok(Subject { code: Some(code), system })
        }
        (None, Some(dim)) if !args.form.is_empty() => {
            let forms: Vec<&str> = args.form.iter().map(String::as_str).collect();
            Ok(Subject { code: None, system: PfaffianSystem::parse(dim, &forms)? })
        }
        _ => Err(CliError::Usage("give --code, or --dim with at least one --form".into())),
    }
}

pub fn run(cli: &Cli, seed: u64) -> Outcome {
    match &cli.verb {
        Verb::Model { code, locus } => model(code, *locus, seed),
        Verb::Derive(args) => derive(args),
        Verb::Class { system, point, level } => class(system, point.as_deref(), *level),
        Verb::Growth { system, point, depth } => growth(system, point.as_deref(), *depth),
        Verb::Isotropy { code, order, k_max } => isotropy(code, *order, *k_max),
        Verb::Web { length, k_max } => web(*length, *k_max, cli.jobs),
        Verb::Prolong { code, hamiltonian } => prolong(code, hamiltonian),
        Verb::Groupoid { code, code2, order, locus } => groupoid(code, code2.as_deref(), *order, locus.as_deref(), seed),
        Verb::Noneq { code, code2, src, tgt, max_prolongations } => {
            noneq(code, code2, src.as_deref(), tgt.as_deref(), *max_prolongations)
        }
        Verb::Signature(args) => signature(args),
        Verb::Enumerate { length, invariants } => enumerate(*length, *invariants, cli.jobs),
    }
}

fn model(code: &str, with_locus: bool, seed: u64) -> Outcome {
    let code = parse_code(code)?;
    let m = generate_model(&code);
    let generators = forms_text(m.system());
    let (elem, shift) = to_elementary(&m);
    let locus = with_locus.then(|| singular_locus(&m, seed));
    let mut text = format!("model {code} on R^{}\n", m.dim());
    for (k, g) in generators.iter().enumerate() {
        let _ = writeln!(text, "  w{} = {g}", k + 1);
    }
    if !code.is_elementary() {
        let _ = writeln!(text, "elementary form {} with the origin at {}", elem.code, vector_text(&shift));
    }
    if code.grammar_extrapolated() {
        text.push_str("note: letter placement beyond the tabulated grammar\n");
    }
    if let Some(l) = &locus {
        if l.is_empty() {
            text.push_str("singular locus: empty\n");
        }
        for s in &l.strata {
            let eqs: Vec<String> = s.equations.iter().map(|p| format!("{p} = 0")).collect();
            let _ = writeln!(text, "singular stratum {{{}}}: growth {:?} (generic {:?})", eqs.join(", "), s.growth, l.generic_growth);
        }
    }
    let result = json!({
        "dim": m.dim(),
        "length": m.length(),
        "pairs": m.pairs,
        "generators": generators,
        "elementary": code.is_elementary(),
        "elementary_code": elem.code,
        "origin_shift": vector_strings(&shift),
        "cartan": code.is_cartan(),
        "primary_exceptional": code.is_primary_exceptional(),
        "grammar_extrapolated": code.grammar_extrapolated(),
        "singular_locus": locus,
    });
    Ok(Report { verb: "model", code: Some(code.to_string()), result, text, dot: None })
}

fn derive(args: &SystemArgs) -> Outcome {
    let s = subject(args)?;
    let flag = s.system.derived_flag();
    let systems: Vec<Vec<String>> = flag.systems.iter().map(forms_text).collect();
    // For models, S_ν should be the first ℓ-ν generators.
    let bottom_removal = s.code.as_ref().map(|c| {
        let m = generate_model(c);
        flag.systems.iter().enumerate().all(|(nu, sys)| nu > m.length() || sys.same_span(&m.truncated(m.length() - nu)))
    });
    let mut text = format!("ranks {:?}, length {}, flag: {}\n", flag.ranks, flag.length, flag.is_flag());
    for (nu, gens) in systems.iter().enumerate() {
        let _ = writeln!(text, "  S{nu}: {}", if gens.is_empty() { "0".to_string() } else { gens.join("; ") });
    }
    if let Some(b) = bottom_removal {
        let _ = writeln!(text, "bottommost-generator removal: {}", if b { "matches" } else { "differs" });
    }
    for w in &flag.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let result = json!({
        "ranks": flag.ranks,
        "length": flag.length,
        "is_flag": flag.is_flag(),
        "systems": systems,
        "matches_bottom_removal": bottom_removal,
        "warnings": flag.warnings,
    });
    Ok(Report { verb: "derive", code: s.code.map(|c| c.to_string()), result, text, dot: None })
}

fn class(args: &SystemArgs, point: Option<&str>, level: usize) -> Outcome {
    let s = subject(args)?;
    let flag = s.system.derived_flag();
    let sys = flag
        .systems
        .get(level)
        .ok_or_else(|| CliError::Usage(format!("level {level} exceeds the derived length {}", flag.length)))?;
    let p = parse_point(point, sys.dim())?;
    let r = sys.characteristic_report(&p);
    let cauchy: Vec<Vec<String>> = r.cauchy_basis.iter().map(|v| vector_strings(v)).collect();
    let chi: Vec<Vec<String>> = r.char_covectors.iter().map(|v| vector_strings(v)).collect();
    let mut text = format!("S{level} at {}: class {}, Cauchy dimension {}\n", vector_text(&p), r.class, r.cauchy_dim);
    for v in &r.cauchy_basis {
        let _ = writeln!(text, "  Cauchy {}", vector_text(v));
    }
    let result = json!({
        "level": level,
        "point": vector_strings(&p),
        "class": r.class,
        "cauchy_dim": r.cauchy_dim,
        "cauchy_basis": cauchy,
        "char_covectors": chi,
        "char_system": forms_text(&r.char_system),
    });
    Ok(Report { verb: "class", code: s.code.map(|c| c.to_string()), result, text, dot: None })
}

fn growth(args: &SystemArgs, point: Option<&str>, depth: Option<usize>) -> Outcome {
    let s = subject(args)?;
    let p = parse_point(point, s.system.dim())?;
    let g = s.system.small_growth_vector(&p, depth.unwrap_or(s.system.dim() + 2));
    let mut text = format!("growth vector at {}: {:?}\n", vector_text(&p), g.dims);
    if g.truncated {
        text.push_str("warning: depth exhausted before full rank\n");
    }
    let result = json!({ "point": vector_strings(&p), "growth_vector": g.dims, "truncated": g.truncated });
    Ok(Report { verb: "growth", code: s.code.map(|c| c.to_string()), result, text, dot: None })
}

fn isotropy(code: &str, order: u32, k_max: Option<u32>) -> Outcome {
    let code = parse_code(code)?;
    let r = isotropy_equations(&code, order)?;
    let law = expected_law(&code, order).map(|l| r.relations.is_empty() && r.forced == l);
    let coranks = k_max.map(|k| corank_sequence(&code, k)).transpose()?;
    let forced: Vec<String> = r.forced.iter().map(|s| format!("{s}(0)")).collect();
    let mut text = format!("I{order} of {code}: co-rank {}\n  forced: {}\n", r.corank, forced.join(", "));
    for rel in &r.relations {
        let _ = writeln!(text, "  relation: {}", relation_text(rel));
    }
    let free: Vec<String> = r.free_witness.iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "  free up to order {}: {}", order + 1, free.join(", "));
    match law {
        Some(true) => text.push_str("  closed-form law: match\n"),
        Some(false) => text.push_str("  closed-form law: MISMATCH\n"),
        None => {}
    }
    if let Some(c) = &coranks {
        let _ = writeln!(text, "  co-ranks: {c:?}");
    }
    let mut result = to_value(&r);
    result["law_match"] = json!(law);
    result["coranks"] = json!(coranks);
    Ok(Report { verb: "isotropy", code: Some(code.to_string()), result, text, dot: None })
}

fn web(length: usize, k_max: u32, jobs: usize) -> Outcome {
    let codes = web_codes(length)?;
    let seqs = par_map(&codes, jobs, |c| corank_sequence(c, k_max));
    let nodes = codes.into_iter().zip(seqs).map(|(c, s)| s.map(|s| (c, s))).collect::<Result<Vec<_>, _>>()?;
    let w = SpiderWeb::assemble(k_max, nodes);
    let mut text = String::new();
    for (c, s) in &w.nodes {
        let _ = writeln!(text, "{c}: {s:?}");
    }
    for e in &w.edges {
        let _ = writeln!(text, "{} -> {}: {:?}", e.from, e.to, e.kind);
    }
    Ok(Report { verb: "web", code: None, result: to_value(&w), dot: Some(w.to_dot()), text })
}

fn prolong(code: &str, hamiltonian: &str) -> Outcome {
    let code = parse_code(code)?;
    let f = Poly::parse(hamiltonian, 3)?;
    let steps = prolong_tower(&f, &code)?;
    let field = match steps.last() {
        Some(s) => s.field.clone(),
        None => flagsys::symmetry::hamiltonian_to_field(&f),
    };
    let verified = verify_symmetry(&field, &generate_model(&code))?;
    let names = Coords(field.dim());
    let field_text = vector_field_text(&field, &names);
    let coefficients: Vec<String> = steps.iter().map(|s| s.new_coefficient.to_string()).collect();
    let mut text = format!("{field_text}\n");
    for (k, c) in coefficients.iter().enumerate() {
        let _ = writeln!(text, "  coefficient of d{}: {c}", k + 4);
    }
    let _ = writeln!(text, "symmetry verified: {verified}");
    let result = json!({
        "hamiltonian": f.to_string(),
        "field": field_text,
        "new_coefficients": coefficients,
        "verified": verified,
    });
    Ok(Report { verb: "prolong", code: Some(code.to_string()), result, text, dot: None })
}

fn groupoid(code: &str, code2: Option<&str>, order: u32, locus: Option<&str>, seed: u64) -> Outcome {
    let a = parse_code(code)?;
    let b = code2.map(parse_code).transpose()?.unwrap_or_else(|| a.clone());
    let set = groupoid_equations_of_order(&a, &b, order)?;
    let mut text = format!("order {} equations from {a} to {b}: {}\n", set.order, set.equations.len());
    for e in &set.equations {
        let _ = writeln!(text, "  {}: {} = 0", e.label, e.text);
    }
    if set.may_exceed_groupoid {
        text.push_str("note: at this order the set may be larger than the groupoid\n");
    }
    let mut result = to_value(&set);
    if let Some(locus) = locus {
        if a != b {
            return Err(CliError::Usage("--locus needs a single model".into()));
        }
        let stratum = locus.split(',').map(|e| Poly::parse(e.trim(), a.chart_dim())).collect::<Result<Vec<_>, _>>()?;
        let rels = forced_relations_on_locus(&a, &stratum, seed, SearchBudget::default())?;
        let _ = writeln!(text, "forced on {{{locus}}}:");
        for r in &rels {
            let _ = writeln!(text, "  {} ({})", r.relation, r.justification);
        }
        result["locus_relations"] = to_value(&rels);
    }
    Ok(Report { verb: "groupoid", code: Some(a.to_string()), result, text, dot: None })
}

fn op_text(op: &StepOp) -> String {
    match op {
        StepOp::Substitute(id) => format!("#{id}"),
        StepOp::DivideProtected(m) => format!("/{m}"),
    }
}

fn noneq(code: &str, code2: &str, src: Option<&str>, tgt: Option<&str>, max_prolongations: u32) -> Outcome {
    let a = parse_code(code)?;
    let b = parse_code(code2)?;
    let src = parse_point(src, a.chart_dim())?;
    let tgt = parse_point(tgt, b.chart_dim())?;
    let budget = SearchBudget { max_prolongations, ..SearchBudget::default() };
    let o = check_obstruction(&a, &src, &b, &tgt, budget)?;
    let mut text = format!("{a} at {} vs {b} at {}\n", vector_text(&src), vector_text(&tgt));
    let mut result = to_value(&o);
    match &o {
        Obstruction::Certificate(c) => {
            let replays = c.replay().is_ok();
            let _ = writeln!(text, "not equivalent: certificate at order {} ({:?})", c.order, c.contradiction);
            for s in &c.steps {
                let ops: Vec<String> = s.ops.iter().map(op_text).collect();
                let via = if ops.is_empty() { String::new() } else { format!(" [{}]", ops.join(" ")) };
                let _ = writeln!(text, "  #{} {}{via}: {}", s.id, s.equation, s.relation);
            }
            let _ = writeln!(text, "replay: {}", if replays { "ok" } else { "FAILED" });
            result["replays"] = json!(replays);
        }
        Obstruction::Inconclusive { comparisons, invariants_differ } => {
            text.push_str("no contradiction within budget\n");
            for c in comparisons {
                let _ = writeln!(text, "  {}: {} vs {}", c.invariant, c.source, c.target);
            }
            let _ = writeln!(text, "invariants differ: {invariants_differ}");
        }
    }
    result["code2"] = json!(b);
    Ok(Report { verb: "noneq", code: Some(a.to_string()), result, text, dot: None })
}

fn signature(args: &SystemArgs) -> Outcome {
    let s = subject(args)?;
    let origin = parse_point(None, s.system.dim())?;
    let r = s.system.report(&origin)?;
    let sig: Vec<&str> = r.signature.iter().map(|&b| if b { "≠" } else { "=" }).collect();
    let text = format!(
        "ranks {:?}, length {}, class {}, growth {:?}\nsignature [S_k vs chi(S_k+2)]: {}\n",
        r.ranks,
        r.length,
        r.class,
        r.growth_vector,
        sig.join(" ")
    );
    Ok(Report { verb: "signature", code: s.code.map(|c| c.to_string()), result: to_value(&r), text, dot: None })
}

#[derive(Serialize)]
struct Invariants {
    growth_vector: Vec<usize>,
    signature: Vec<bool>,
    coranks: Vec<usize>,
}

fn invariants(code: &FlagCode) -> flagsys::Result<Invariants> {
    let m = generate_model(code);
    let origin = vec![Rational::from_integer(0.into()); m.dim()];
    Ok(Invariants {
        growth_vector: m.system().small_growth_vector(&origin, m.dim() + 2).dims,
        signature: m.system().char_signature()?,
        coranks: corank_sequence(code, 2)?,
    })
}

fn enumerate(length: usize, with_invariants: bool, jobs: usize) -> Outcome {
    if length == 0 {
        return Err(CliError::Usage("length must be at least 1".into()));
    }
    let codes = enumerate_codes(length);
    let inv = if with_invariants {
        Some(par_map(&codes, jobs, invariants).into_iter().collect::<Result<Vec<_>, _>>()?)
    } else {
        None
    };
    let cited = cited_equivalences(length);
    let mut text = format!("{} codes of length {length}\n", codes.len());
    let mut entries = Vec::new();
    for (k, c) in codes.iter().enumerate() {
        let _ = write!(text, "{:>3}. {c}", k + 1);
        if c.grammar_extrapolated() {
            text.push_str(" (extrapolated grammar)");
        }
        let mut entry = json!({ "index": k + 1, "code": c, "grammar_extrapolated": c.grammar_extrapolated() });
        if let Some(inv) = &inv {
            let i = &inv[k];
            let _ = write!(text, "  growth {:?} signature {:?} co-ranks {:?}", i.growth_vector, i.signature, i.coranks);
            entry["invariants"] = to_value(i);
        }
        text.push('\n');
        entries.push(entry);
    }
    for e in &cited {
        let _ = writeln!(text, "cited: {} = {} ({} and {}); {}", e.codes.0, e.codes.1, e.first, e.second, e.note);
    }
    let result = json!({ "length": length, "count": codes.len(), "codes": entries, "cited_equivalences": cited });
    Ok(Report { verb: "enumerate", code: None, result, text, dot: None })
}
