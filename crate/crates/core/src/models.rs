//! Classification codes and the pseudo-normal-form models they label.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{parse_rational, rat, Poly, Rational};
use crate::error::{Error, Result};
use crate::exterior::{OneForm, VectorField};
use crate::pfaffian::{BracketTower, GrowthVector, PfaffianSystem};
use crate::sample::PointSampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// Homogeneous extension.
    One,
    /// Extension with a nonzero constant.
    Two,
    /// Inversion.
    Three,
}

impl Letter {
    pub fn digit(self) -> char {
        match self {
            Letter::One => '1',
            Letter::Two => '2',
            Letter::Three => '3',
        }
    }
}

/// A code word: the flag length and the letters for positions `3..=ℓ`,
/// with constants at some positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagCode {
    length: usize,
    letters: Vec<Letter>,
    constants: BTreeMap<usize, Rational>,
}

impl FlagCode {
    pub fn darboux() -> Self {
        FlagCode { length: 1, letters: Vec::new(), constants: BTreeMap::new() }
    }

    pub fn engel() -> Self {
        FlagCode { length: 2, letters: Vec::new(), constants: BTreeMap::new() }
    }

    /// Builds and validates a code from letters for positions `3..`, with
    /// constants keyed by position.
    pub fn new(letters: Vec<Letter>, constants: BTreeMap<usize, Rational>) -> Result<Self> {
        let mut seen_three = false;
        for (k, &l) in letters.iter().enumerate() {
            let pos = k + 3;
            match l {
                Letter::Three => {
                    seen_three = true;
                    if constants.contains_key(&pos) {
                        return Err(Error::InvalidCode(format!("inversion at position {pos} carries a constant")));
                    }
                }
                Letter::Two => {
                    if !seen_three {
                        return Err(Error::InvalidCode(format!(
                            "letter 2 at position {pos} is not preceded by an inversion"
                        )));
                    }
                    match constants.get(&pos) {
                        Some(c) if c.is_zero() => {
                            return Err(Error::InvalidCode(format!("zero constant at position {pos}")))
                        }
                        Some(_) => {}
                        None => return Err(Error::InvalidCode(format!("letter 2 at position {pos} lacks its constant"))),
                    }
                }
                Letter::One => {}
            }
        }
        if let Some(p) = constants.keys().find(|&&p| p < 3 || p >= letters.len() + 3) {
            return Err(Error::InvalidCode(format!("constant at position {p} outside the word")));
        }
        let constants = constants.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(FlagCode { length: letters.len() + 2, letters, constants })
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        let constants = letters
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Letter::Two)
            .map(|(k, _)| (k + 3, Rational::one()))
            .collect();
        FlagCode::new(letters.to_vec(), constants)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Dimension `ℓ + 2` of the model's chart.
    pub fn chart_dim(&self) -> usize {
        self.length + 2
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at flag position `ν ≥ 3`.
    pub fn letter(&self, pos: usize) -> Letter {
        self.letters[pos - 3]
    }

    pub fn constant(&self, pos: usize) -> Option<&Rational> {
        self.constants.get(&pos)
    }

    pub fn constants(&self) -> &BTreeMap<usize, Rational> {
        &self.constants
    }

    pub fn is_elementary(&self) -> bool {
        self.constants.is_empty()
    }

    /// No inversion anywhere: Darboux, Engel or a homogeneous Cartan word.
    pub fn is_cartan(&self) -> bool {
        self.letters.iter().all(|&l| l == Letter::One) && self.constants.is_empty()
    }

    /// Homogeneous extensions closed by a single inversion at the top
    /// level: `(3.)`, `(1.3.)`, `(1.1.3.)`, ...
    pub fn is_primary_exceptional(&self) -> bool {
        match self.letters.split_last() {
            Some((&Letter::Three, rest)) => rest.iter().all(|&l| l == Letter::One) && self.constants.is_empty(),
            _ => false,
        }
    }

    /// Two consecutive letters 2: accepted, but beyond the documented
    /// placement rules.
    pub fn grammar_extrapolated(&self) -> bool {
        self.letters.windows(2).any(|w| w == [Letter::Two, Letter::Two])
    }

    /// The code of the first derived system.
    pub fn parent(&self) -> Option<FlagCode> {
        match self.length {
            1 => None,
            2 => Some(FlagCode::darboux()),
            3 => Some(FlagCode::engel()),
            _ => {
                let letters = self.letters[..self.letters.len() - 1].to_vec();
                let last = self.length;
                let constants = self.constants.iter().filter(|(&p, _)| p < last).map(|(p, c)| (*p, c.clone())).collect();
                Some(FlagCode { length: self.length - 1, letters, constants })
            }
        }
    }

    /// Appends a letter with the normalized constant.
    pub fn extend(&self, letter: Letter) -> Result<FlagCode> {
        if self.length == 1 {
            return if letter == Letter::One {
                Ok(FlagCode::engel())
            } else {
                Err(Error::InvalidCode("the Engel step admits no choice".into()))
            };
        }
        let mut letters = self.letters.clone();
        letters.push(letter);
        let mut constants = self.constants.clone();
        if letter == Letter::Two {
            constants.insert(self.length + 1, Rational::one());
        }
        FlagCode::new(letters, constants)
    }

    /// Same letters with every constant removed (2 becomes 1).
    pub fn elementary_shape(&self) -> FlagCode {
        if self.length <= 2 {
            return self.clone();
        }
        let letters = self.letters.iter().map(|&l| if l == Letter::Two { Letter::One } else { l }).collect();
        FlagCode { length: self.length, letters, constants: BTreeMap::new() }
    }
}

impl fmt::Display for FlagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.length {
            1 => return f.write_str("D"),
            2 => return f.write_str("E"),
            _ => {}
        }
        for (k, l) in self.letters.iter().enumerate() {
            let pos = k + 3;
            match (l, self.constants.get(&pos)) {
                (Letter::Two, Some(c)) if c.is_one() => write!(f, "2.")?,
                (_, Some(c)) => write!(f, "{}({}).", l.digit(), c)?,
                (_, None) => write!(f, "{}.", l.digit())?,
            }
        }
        Ok(())
    }
}

impl FromStr for FlagCode {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t: String = text.trim().replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect();
        let t = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(inner) => inner,
            None => t.as_str(),
        };
        match t {
            "D" | "d" => return Ok(FlagCode::darboux()),
            "E" | "e" => return Ok(FlagCode::engel()),
            "" => return Err(Error::Parse("empty code".into())),
            _ => {}
        }
        let chars: Vec<char> = t.chars().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        let mut constants = BTreeMap::new();
        while i < chars.len() {
            let letter = match chars[i] {
                '1' => Letter::One,
                '2' => Letter::Two,
                '3' => Letter::Three,
                c => return Err(Error::Parse(format!("unexpected '{c}' in code '{text}'"))),
            };
            i += 1;
            let pos = letters.len() + 3;
            let mut constant = None;
            if i < chars.len() && chars[i] == '(' {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| Error::Parse(format!("unclosed constant in '{text}'")))?;
                let inner: String = chars[i + 1..i + close].iter().collect();
                constant = Some(
                    parse_rational(&inner).ok_or_else(|| Error::Parse(format!("bad constant '{inner}'")))?,
                );
                i += close + 1;
            } else if i < chars.len() && chars[i] == '-' {
                constant = Some(-Rational::one());
                i += 1;
            }
            match (letter, constant) {
                (Letter::Two, None) => {
                    constants.insert(pos, Rational::one());
                }
                (_, Some(c)) => {
                    constants.insert(pos, c);
                }
                _ => {}
            }
            letters.push(letter);
            if i < chars.len() {
                if chars[i] != '.' {
                    return Err(Error::Parse(format!("expected '.' after letter in '{text}'")));
                }
                i += 1;
            }
        }
        FlagCode::new(letters, constants)
    }
}

impl Serialize for FlagCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Generators `ω^ν = dx^{i_ν} + X^{ν+2} dx^{j_ν}` on `ℝ^{ℓ+2}`.
#[derive(Clone, Debug)]
pub struct PseudoNormalForm {
    pub code: FlagCode,
    /// `(i_ν, j_ν)`, 1-based.
    pub pairs: Vec<(usize, usize)>,
    /// `X^{ν+2}`.
    pub coefficients: Vec<Poly>,
    system: PfaffianSystem,
}

impl PseudoNormalForm {
    pub fn dim(&self) -> usize {
        self.code.chart_dim()
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn system(&self) -> &PfaffianSystem {
        &self.system
    }

    pub fn generators(&self) -> &[OneForm] {
        self.system.generators()
    }

    /// 0-based leading differentials `i_ν - 1`.
    pub fn pivots(&self) -> Vec<usize> {
        self.pairs.iter().map(|(i, _)| i - 1).collect()
    }

    /// The first `count` generators as a system on the same chart.
    pub fn truncated(&self, count: usize) -> PfaffianSystem {
        PfaffianSystem::new(self.dim(), self.generators()[..count].to_vec()).expect("sub-system of a model")
    }
}

pub fn generate_model(code: &FlagCode) -> PseudoNormalForm {
    let l = code.length();
    let n = code.chart_dim();
    let x = |k: usize| Poly::var(n, k - 1);
    let mut pairs = vec![(2, 1)];
    if l >= 2 {
        pairs.push((3, 1));
    }
    for pos in 3..=l {
        let j_prev = pairs[pos - 2].1;
        pairs.push(match code.letter(pos) {
            Letter::One | Letter::Two => (pos + 1, j_prev),
            Letter::Three => (j_prev, pos + 1),
        });
    }
    let coefficients: Vec<Poly> = (1..=l)
        .map(|pos| {
            let c = code.constant(pos).cloned().unwrap_or_else(Rational::zero);
            &x(pos + 2) + &Poly::constant(n, c)
        })
        .collect();
    let gens = pairs
        .iter()
        .zip(&coefficients)
        .map(|(&(i, j), c)| {
            let mut comps = vec![Poly::zero(n); n];
            comps[i - 1] = Poly::one(n);
            comps[j - 1] = c.clone();
            OneForm::new(comps)
        })
        .collect();
    let system = PfaffianSystem::new(n, gens).expect("normal forms are independent");
    PseudoNormalForm { code: code.clone(), pairs, coefficients, system }
}

/// All valid letter words of length `ℓ`, lexicographic with `1 < 2 < 3`,
/// constants normalized to 1.
pub fn enumerate_codes(length: usize) -> Vec<FlagCode> {
    match length {
        0 => return Vec::new(),
        1 => return vec![FlagCode::darboux()],
        2 => return vec![FlagCode::engel()],
        _ => {}
    }
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 3..=length {
        words = words
            .into_iter()
            .flat_map(|w| {
                [Letter::One, Letter::Two, Letter::Three].into_iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    words.iter().filter_map(|w| FlagCode::from_letters(w).ok()).collect()
}

/// A cited equivalence between two enumerated words (1-based positions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CitedEquivalence {
    pub first: usize,
    pub second: usize,
    pub codes: (String, String),
    pub note: String,
}

/// Equivalences known from the classification literature but not derived
/// here.
pub fn cited_equivalences(length: usize) -> Vec<CitedEquivalence> {
    if length != 5 {
        return Vec::new();
    }
    let codes = enumerate_codes(5);
    vec![CitedEquivalence {
        first: 9,
        second: 10,
        codes: (codes[8].to_string(), codes[9].to_string()),
        note: "the 9th and 10th listed models of length five are known to be equivalent; cited, not derived"
            .into(),
    }]
}

/// One stratum of the singular locus: coordinate equations and the growth
/// vector observed there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stratum {
    #[serde(serialize_with = "serialize_polys")]
    pub equations: Vec<Poly>,
    pub growth: Vec<usize>,
}

fn serialize_polys<S: Serializer>(ps: &[Poly], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(ps.len()))?;
    for p in ps {
        seq.serialize_element(&p.to_string())?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularLocus {
    pub generic_growth: Vec<usize>,
    pub strata: Vec<Stratum>,
}

impl SingularLocus {
    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// The stratum cut out by exactly these equations, if detected.
    pub fn stratum(&self, equations: &[Poly]) -> Option<&Stratum> {
        self.strata.iter().find(|s| {
            s.equations.len() == equations.len() && equations.iter().all(|e| s.equations.contains(e))
        })
    }
}

/// Candidate hyperplanes `x^k = a`: each coordinate entering a coefficient,
/// at zero and at minus its constant.
fn candidate_hyperplanes(model: &PseudoNormalForm) -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    for (pos, c) in model.coefficients.iter().enumerate() {
        let var = pos + 2;
        let shift = -c.coeff(&crate::algebra::MultiIndex::zero(model.dim()));
        out.push((var, Rational::zero()));
        if !shift.is_zero() {
            out.push((var, shift));
        }
    }
    out
}

fn stratum_growth(
    tower: &mut BracketTower,
    sampler: &mut PointSampler,
    dim: usize,
    fixed: &[(usize, Rational)],
    samples: usize,
) -> Option<GrowthVector> {
    let mut seen: Option<GrowthVector> = None;
    for _ in 0..samples {
        let mut p = sampler.point(dim);
        for (v, a) in fixed {
            p[*v] = a.clone();
        }
        let g = tower.growth_at(&p, dim + 2);
        match &seen {
            None => seen = Some(g),
            Some(s) if *s != g => return None,
            _ => {}
        }
    }
    seen
}

fn hyperplane_equation(dim: usize, var: usize, a: &Rational) -> Poly {
    &Poly::var(dim, var) - &Poly::constant(dim, a.clone())
}

/// Hyperplanes and codimension-2 coordinate strata on which the growth
/// vector differs from its generic value, found by sampling seeded points.
pub fn singular_locus(model: &PseudoNormalForm, seed: u64) -> SingularLocus {
    let n = model.dim();
    let mut tower = BracketTower::new(model.system());
    let mut sampler = PointSampler::new(seed);
    let generic = stratum_growth(&mut tower, &mut sampler, n, &[], 3)
        .expect("generic growth is constant off a proper subset");
    let cands = candidate_hyperplanes(model);
    let mut strata = Vec::new();
    let mut singular = Vec::new();
    for (v, a) in &cands {
        if let Some(g) = stratum_growth(&mut tower, &mut sampler, n, &[(*v, a.clone())], 3) {
            if g != generic {
                strata.push(Stratum { equations: vec![hyperplane_equation(n, *v, a)], growth: g.dims.clone() });
                singular.push(((*v, a.clone()), g));
            }
        }
    }
    for ((v, a), g) in &singular {
        for (w, b) in &cands {
            if w == v {
                continue;
            }
            let fixed = [(*v, a.clone()), (*w, b.clone())];
            if let Some(h) = stratum_growth(&mut tower, &mut sampler, n, &fixed, 3) {
                if h != *g {
                    let mut eqs = vec![hyperplane_equation(n, *v, a), hyperplane_equation(n, *w, b)];
                    eqs.sort_by_key(|e| e.support());
                    if !strata.iter().any(|s: &Stratum| s.equations == eqs) {
                        strata.push(Stratum { equations: eqs, growth: h.dims });
                    }
                }
            }
        }
    }
    SingularLocus { generic_growth: generic.dims, strata }
}

/// Absorbs every constant by `x̄^{ν+2} = x^{ν+2} + c^{ν+2}`. Returns the
/// elementary model and the image of the origin in its chart.
pub fn to_elementary(model: &PseudoNormalForm) -> (PseudoNormalForm, Vec<Rational>) {
    let n = model.dim();
    let mut shift = vec![Rational::zero(); n];
    for (pos, c) in model.code.constants() {
        shift[pos + 1] = c.clone();
    }
    (generate_model(&model.code.elementary_shape()), shift)
}

/// Pushes a field forward along the translation `x ↦ x + shift`.
pub fn translate_field(x: &VectorField, shift: &[Rational]) -> VectorField {
    let n = x.dim();
    let images: Vec<Option<Poly>> = (0..n)
        .map(|k| Some(&Poly::var(n, k) - &Poly::constant(n, shift[k].clone())))
        .collect();
    VectorField::new(x.coeffs().iter().map(|c| c.substitute(&images)).collect())
}

/// Small integer point helper for tests and reports.
pub fn point(coords: &[i64]) -> Vec<Rational> {
    coords.iter().map(|&c| rat(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> FlagCode {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        let c = code("3.2.");
        assert_eq!(c.letters(), &[Letter::Three, Letter::Two]);
        assert_eq!(c.constant(4), Some(&rat(1)));
        assert_eq!(code("1.1.1.").length(), 5);
        assert!(matches!("2.1.".parse::<FlagCode>(), Err(Error::InvalidCode(_))));
        assert!(matches!("1.x.".parse::<FlagCode>(), Err(Error::Parse(_))));
        assert!("3.2(0).".parse::<FlagCode>().is_err());
        let c = code("1.3.2(5/2).");
        assert_eq!(c.constant(5), Some(&crate::algebra::ratio(5, 2)));
        assert_eq!(c.to_string(), "1.3.2(5/2).");
        assert_eq!(code("(1.3.2(5/2))"), c);
        assert_eq!(code("3.2.3.3.2-.").constant(7), Some(&rat(-1)));
        assert_eq!(code("3.2.3.3.2(-1).").to_string(), "3.2.3.3.2(-1).");
        assert_eq!(code("D").length(), 1);
        assert_eq!(code("E").to_string(), "E");
        assert!(code("3.2.2.").grammar_extrapolated());
        assert!(!code("3.2.1.").grammar_extrapolated());
    }

    #[test]
    fn models() {
        let m = generate_model(&code("1."));
        let text: Vec<String> = m.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(text, ["dx2 + x3*dx1", "dx3 + x4*dx1", "dx4 + x5*dx1"]);
        let m = generate_model(&code("3."));
        assert_eq!(m.generators()[2].to_string(), "dx1 + x5*dx4");
        let m = generate_model(&code("3.2."));
        assert_eq!(m.generators()[3].to_string(), "dx5 + (x6 + 1)*dx4");
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_codes(3).len(), 2);
        let four: Vec<String> = enumerate_codes(4).iter().map(|c| c.to_string()).collect();
        assert_eq!(four, ["1.1.", "1.3.", "3.1.", "3.2.", "3.3."]);
        assert_eq!(enumerate_codes(5).len(), 14);
        assert_eq!(cited_equivalences(5).len(), 1);
    }

    #[test]
    fn elementary_shift() {
        let (e, shift) = to_elementary(&generate_model(&code("3.2.")));
        assert_eq!(e.code.to_string(), "3.1.");
        assert_eq!(shift, point(&[0, 0, 0, 0, 0, 1]));
        let (e, shift) = to_elementary(&generate_model(&code("3.1.")));
        assert_eq!(e.code, code("3.1."));
        assert!(shift.iter().all(Zero::is_zero));
    }

    #[test]
    fn parent_codes() {
        assert_eq!(code("3.2.").parent(), Some(code("3.")));
        assert_eq!(code("1.").parent(), Some(FlagCode::engel()));
        assert_eq!(FlagCode::engel().parent(), Some(FlagCode::darboux()));
    }
}
