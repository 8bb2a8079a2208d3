//! Sparse multivariate polynomials over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::MultiIndex;
use super::rational::{is_minus_one, is_one, Rational};
use crate::error::{Error, Result};

/// Naming scheme used to print and parse polynomial variables.
pub trait VarNames {
    fn var_name(&self, var: usize) -> String;
    fn var_index(&self, name: &str) -> Option<usize>;
}

/// The default scheme `x1, ..., xn`.
#[derive(Clone, Copy, Debug)]
pub struct Coords(pub usize);

impl VarNames for Coords {
    fn var_name(&self, var: usize) -> String {
        format!("x{}", var + 1)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        let idx: usize = name.strip_prefix('x')?.parse().ok()?;
        idx.checked_sub(1)
    }
}

/// A polynomial on a chart with `nvars` coordinates. No zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(MultiIndex::zero(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Poly::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    /// The coordinate function `x_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} outside chart of dimension {nvars}");
        Poly::monomial(nvars, MultiIndex::unit(nvars, var), Rational::one())
    }

    pub fn monomial(nvars: usize, exps: MultiIndex, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.get(var)).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m.get(v) > 0))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.get(var) > 0)
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &MultiIndex, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the 0-based variable `var`.
    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable {var} outside chart of dimension {}", self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(var);
            if e > 0 {
                out.add_term(m.with(var, e - 1), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Partial derivative with a chart-range check.
    pub fn try_partial(&self, var: usize) -> Result<Poly> {
        if var >= self.nvars {
            return Err(Error::ChartMismatch(format!(
                "derivative in variable {} on a chart of dimension {}",
                var + 1,
                self.nvars
            )));
        }
        Ok(self.partial(var))
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point dimension does not match chart");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    if point[v].is_zero() {
                        t = Rational::zero();
                        break;
                    }
                    t *= num_traits::pow(point[v].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes rational values for some variables; the result keeps the
    /// same number of variables.
    pub fn eval_partial(&self, values: &[(usize, Rational)]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = m.clone();
            for (v, val) in values {
                let e = m.get(*v);
                if e > 0 {
                    coeff *= num_traits::pow(val.clone(), e as usize);
                    mono = mono.with(*v, 0);
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Simultaneous substitution `x_v ↦ images[v]` for every `v` with
    /// `Some` image. Images must live on the same chart.
    pub fn substitute(&self, images: &[Option<Poly>]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut power_cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut kept = m.clone();
            let mut factor = Poly::constant(self.nvars, c.clone());
            for (v, img) in images.iter().enumerate() {
                let e = m.get(v);
                if e == 0 {
                    continue;
                }
                if let Some(img) = img {
                    kept = kept.with(v, 0);
                    let pw = power_cache
                        .entry((v, e))
                        .or_insert_with(|| img.pow(e))
                        .clone();
                    factor = &factor * &pw;
                    if factor.is_zero() {
                        break;
                    }
                }
            }
            if factor.is_zero() {
                continue;
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), fc);
            }
        }
        out
    }

    /// Re-embeds into a chart of `nvars` coordinates, keeping variable
    /// indices. Shrinking requires the dropped variables not to occur.
    pub fn with_nvars(&self, nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (m.resized(nvars), c.clone())).collect(),
        }
    }

    /// Sends variable `v` to `map[v]` in a chart of `nvars` coordinates.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (v, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[map[v]] += x;
                }
            }
            out.add_term(MultiIndex::new(e), c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (dm, dc) = divisor.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> MultiIndex {
        let mut it = self.terms.keys();
        match it.next() {
            None => MultiIndex::zero(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients with a positive leading coefficient (sign folded in).
    pub fn rational_content(&self) -> Rational {
        let Some((_, lc)) = self.leading_term() else {
            return Rational::one();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rational::new(num_gcd, den_lcm);
        if lc.is_negative() {
            -content
        } else {
            content
        }
    }

    /// Integer-primitive form with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.rational_content().recip())
    }

    /// Divides out the monomial content and the rational content.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let m = self.monomial_content();
        let stripped = Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(&m).expect("content divides"), c.clone()))
                .collect(),
        };
        stripped.primitive()
    }

    /// Same polynomial up to a nonzero rational factor.
    pub fn proportional_to(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.primitive() == other.primitive()
    }

    pub fn to_text(&self, names: &dyn VarNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term_text(m, &c.abs(), names));
        }
        out
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        Poly::parse_with(text, nvars, &Coords(nvars))
    }

    pub fn parse_with(text: &str, nvars: usize, names: &dyn VarNames) -> Result<Poly> {
        super::parse::parse_poly(text, nvars, names)
    }
}

fn monomial_text(m: &MultiIndex, names: &dyn VarNames) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names.var_name(v)),
            _ => parts.push(format!("{}^{}", names.var_name(v), e)),
        }
    }
    parts.join("*")
}

/// `c*monomial` with `c > 0`, eliding a unit coefficient.
fn term_text(m: &MultiIndex, c: &Rational, names: &dyn VarNames) -> String {
    if m.is_constant() {
        return c.to_string();
    }
    let mono = monomial_text(m, names);
    if is_one(c) {
        mono
    } else {
        format!("{c}*{mono}")
    }
}

/// Whether printing needs parentheses when used as a factor.
pub(crate) fn needs_parens(p: &Poly) -> bool {
    if p.num_terms() > 1 {
        return true;
    }
    match p.leading_term() {
        Some((_, c)) => c.is_negative() && !is_minus_one(c),
        None => false,
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&Coords(self.nvars)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch in addition");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch in multiplication");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch in addition");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "chart mismatch in subtraction");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}
