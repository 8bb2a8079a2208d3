//! Pfaffian systems: derived systems and flags, Cauchy characteristics,
//! growth vectors, integrability and intersections.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::matrix::normalize_vector;
use crate::algebra::{MultiIndex, Poly, PolyMatrix, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::exterior::{leading_pivots, OneForm, TwoForm, VectorField};

/// An ordered list of polynomial 1-forms on `ℝ^dim`, generically independent.
#[derive(Clone, Debug, PartialEq)]
pub struct PfaffianSystem {
    dim: usize,
    generators: Vec<OneForm>,
}

/// A derived system together with regularity diagnostics.
#[derive(Clone, Debug)]
pub struct Derived {
    pub system: PfaffianSystem,
    /// Generic rank of the Martinet matrix.
    pub tensor_rank: usize,
    pub warnings: Vec<String>,
}

/// `S = S_0 ⊃ S_1 ⊃ ... ⊃ S_ℓ`, stopping at the first stationary system.
#[derive(Clone, Debug)]
pub struct DerivedFlag {
    pub systems: Vec<PfaffianSystem>,
    pub ranks: Vec<usize>,
    pub length: usize,
    pub warnings: Vec<String>,
}

impl DerivedFlag {
    /// Ranks drop by exactly one at each step down to zero.
    pub fn is_flag(&self) -> bool {
        let r = self.ranks[0];
        self.ranks.len() == r + 1 && self.ranks.iter().enumerate().all(|(i, &x)| x == r - i)
    }
}

/// Cauchy characteristics at a point.
#[derive(Clone, Debug)]
pub struct CharReport {
    pub class: usize,
    pub cauchy_dim: usize,
    /// Basis of the Cauchy characteristic space at the point.
    pub cauchy_basis: Vec<Vec<Rational>>,
    /// Basis of `χ(S)` at the point, as covectors.
    pub char_covectors: Vec<Vec<Rational>>,
    /// Generic characteristic system.
    pub char_system: PfaffianSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthVector {
    pub dims: Vec<usize>,
    /// Full rank was not reached within the depth budget.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub ranks: Vec<usize>,
    pub length: usize,
    pub class: usize,
    pub growth_vector: Vec<usize>,
    pub signature: Vec<bool>,
}

/// Canonical basis of a span of rational vectors (reduced row echelon rows).
pub fn canonical_span(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (red, piv) = RatMatrix::new(dim, vectors.to_vec()).rref();
    red.rows()[..piv.len()].to_vec()
}

fn form_from_components(dim: usize, comps: Vec<Poly>) -> OneForm {
    if comps.iter().all(Poly::is_zero) {
        return OneForm::zero(dim);
    }
    OneForm::new(normalize_vector(comps))
}

impl PfaffianSystem {
    pub fn new(dim: usize, generators: Vec<OneForm>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ChartMismatch("chart of dimension 0".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != dim || g.nvars() != dim) {
            return Err(Error::ChartMismatch(format!(
                "generator of dimension {} in a system on dimension {dim}",
                g.dim()
            )));
        }
        let s = PfaffianSystem { dim, generators };
        let r = s.coefficient_matrix().rank_generic();
        if r != s.rank() {
            return Err(Error::DegenerateSystem(format!(
                "{} generators span a system of generic rank {r}",
                s.rank()
            )));
        }
        Ok(s)
    }

    pub fn empty(dim: usize) -> Self {
        PfaffianSystem { dim, generators: Vec::new() }
    }

    pub fn parse(dim: usize, forms: &[&str]) -> Result<Self> {
        let gens = forms.iter().map(|s| OneForm::parse(s, dim)).collect::<Result<Vec<_>>>()?;
        PfaffianSystem::new(dim, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[OneForm] {
        &self.generators
    }

    pub fn coefficient_matrix(&self) -> PolyMatrix {
        PolyMatrix::with_cols(
            self.dim,
            self.dim,
            self.generators.iter().map(|g| g.coeffs().to_vec()).collect(),
        )
    }

    pub fn rank_at(&self, point: &[Rational]) -> usize {
        self.coefficient_matrix().eval(point).rank()
    }

    /// Canonical basis of the evaluated span at a point.
    pub fn span_at(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = self.generators.iter().map(|g| g.eval(point)).collect();
        canonical_span(&rows, self.dim)
    }

    /// Equal spans over the field of rational functions.
    pub fn same_span(&self, other: &PfaffianSystem) -> bool {
        assert_eq!(self.dim, other.dim, "chart mismatch");
        let both: Vec<Vec<Poly>> = self
            .generators
            .iter()
            .chain(&other.generators)
            .map(|g| g.coeffs().to_vec())
            .collect();
        let joint = PolyMatrix::with_cols(self.dim, self.dim, both).rank_generic();
        joint == self.rank() && joint == other.rank()
    }

    /// `other ⊂ self` generically.
    pub fn contains(&self, other: &PfaffianSystem) -> bool {
        let both: Vec<Vec<Poly>> = self
            .generators
            .iter()
            .chain(&other.generators)
            .map(|g| g.coeffs().to_vec())
            .collect();
        PolyMatrix::with_cols(self.dim, self.dim, both).rank_generic() == self.rank()
    }

    /// Polynomial vector fields spanning the annihilator `S⊥` generically.
    /// With triangular constant pivots they span it at every point.
    pub fn annihilator_fields(&self) -> Vec<VectorField> {
        if self.generators.is_empty() {
            return (0..self.dim).map(|i| VectorField::coordinate(self.dim, i)).collect();
        }
        let m = self.coefficient_matrix();
        let kernel = leading_pivots(&self.generators)
            .ok()
            .and_then(|p| m.kernel_with_pivots(&p))
            .unwrap_or_else(|| m.kernel());
        kernel.into_iter().map(VectorField::new).collect()
    }

    fn differentials(&self) -> Vec<TwoForm> {
        self.generators.iter().map(OneForm::d).collect()
    }

    /// Martinet matrix: rows indexed by pairs of annihilator fields, columns
    /// by generators, entries `dω^ν(V_a, V_b)`.
    pub fn martinet_matrix(&self) -> PolyMatrix {
        let v = self.annihilator_fields();
        let dw = self.differentials();
        let mut rows = Vec::new();
        for a in 0..v.len() {
            for b in (a + 1)..v.len() {
                rows.push(dw.iter().map(|d| d.apply(&v[a], &v[b])).collect());
            }
        }
        PolyMatrix::with_cols(self.dim, self.rank(), rows)
    }

    pub fn derived_system(&self) -> Derived {
        let m = self.martinet_matrix();
        if self.rank() == 0 || m.nrows() == 0 {
            return Derived { system: self.clone(), tensor_rank: 0, warnings: Vec::new() };
        }
        let g = m.rank_generic();
        let origin = vec![Rational::zero(); self.dim];
        let at_origin = m.eval(&origin).rank();
        let mut warnings = Vec::new();
        if at_origin != g {
            warnings.push(format!(
                "Martinet tensor has generic rank {g} but rank {at_origin} at the origin"
            ));
        }
        let gens = m
            .kernel()
            .into_iter()
            .map(|lambda| {
                let comps = (0..self.dim)
                    .map(|c| {
                        lambda
                            .iter()
                            .zip(&self.generators)
                            .fold(Poly::zero(self.dim), |acc, (l, w)| &acc + &(l * w.coeff(c)))
                    })
                    .collect();
                form_from_components(self.dim, comps)
            })
            .collect();
        Derived { system: PfaffianSystem { dim: self.dim, generators: gens }, tensor_rank: g, warnings }
    }

    pub fn derived_flag(&self) -> DerivedFlag {
        let mut systems = vec![self.clone()];
        let mut warnings = Vec::new();
        loop {
            let last = systems.last().unwrap();
            let d = last.derived_system();
            warnings.extend(d.warnings);
            if d.system.rank() == last.rank() {
                break;
            }
            systems.push(d.system);
        }
        let ranks = systems.iter().map(PfaffianSystem::rank).collect();
        DerivedFlag { length: systems.len() - 1, systems, ranks, warnings }
    }

    pub fn is_integrable(&self) -> bool {
        self.derived_system().system.rank() == self.rank()
    }

    /// Cauchy characteristic space at a point.
    pub fn cauchy_space_at(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        let n = self.dim;
        let perp = if self.generators.is_empty() {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
                .collect()
        } else {
            self.coefficient_matrix().eval(point).kernel()
        };
        let forms: Vec<Vec<Vec<Rational>>> = self.differentials().iter().map(|d| d.eval_matrix(point)).collect();
        let m = perp.len();
        let mut rows = Vec::new();
        for b in forms.iter() {
            for ub in &perp {
                let bu: Vec<Rational> = (0..n)
                    .map(|i| (0..n).map(|j| &b[i][j] * &ub[j]).sum())
                    .collect();
                rows.push(perp.iter().map(|ua| ua.iter().zip(&bu).map(|(x, y)| x * y).sum()).collect());
            }
        }
        let coeffs = if rows.is_empty() {
            (0..m)
                .map(|i| (0..m).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
                .collect()
        } else {
            RatMatrix::new(m, rows).kernel()
        };
        let vectors: Vec<Vec<Rational>> = coeffs
            .iter()
            .map(|t| (0..n).map(|i| t.iter().zip(&perp).map(|(ta, ua)| ta * &ua[i]).sum()).collect())
            .collect();
        canonical_span(&vectors, n)
    }

    /// `χ(S)` at a point: the annihilator of the Cauchy space there.
    pub fn char_span_at(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        let c = self.cauchy_space_at(point);
        let n = self.dim;
        if c.is_empty() {
            return canonical_span(
                &(0..n)
                    .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
                    .collect::<Vec<_>>(),
                n,
            );
        }
        canonical_span(&RatMatrix::new(n, c).kernel(), n)
    }

    /// Generic Cauchy characteristic fields.
    pub fn cauchy_fields(&self) -> Vec<VectorField> {
        let v = self.annihilator_fields();
        let dw = self.differentials();
        let mut rows = Vec::new();
        for d in &dw {
            for vb in &v {
                rows.push(v.iter().map(|va| d.apply(va, vb)).collect());
            }
        }
        let ts: Vec<Vec<Poly>> = if rows.is_empty() {
            (0..v.len())
                .map(|i| (0..v.len()).map(|j| if i == j { Poly::one(self.dim) } else { Poly::zero(self.dim) }).collect())
                .collect()
        } else {
            PolyMatrix::with_cols(self.dim, v.len(), rows).kernel()
        };
        ts.into_iter()
            .map(|t| {
                let comps: Vec<Poly> = (0..self.dim)
                    .map(|i| t.iter().zip(&v).fold(Poly::zero(self.dim), |acc, (ta, va)| &acc + &(ta * va.coeff(i))))
                    .collect();
                VectorField::new(normalize_vector(comps))
            })
            .collect()
    }

    /// Generic characteristic system `χ(S)`.
    pub fn characteristic_system(&self) -> PfaffianSystem {
        let c = self.cauchy_fields();
        let n = self.dim;
        let gens: Vec<OneForm> = if c.is_empty() {
            (0..n).map(|i| OneForm::dx(n, i)).collect()
        } else {
            let m = PolyMatrix::with_cols(n, n, c.iter().map(|f| f.coeffs().to_vec()).collect());
            m.kernel().into_iter().map(|k| form_from_components(n, k)).collect()
        };
        PfaffianSystem { dim: n, generators: gens }
    }

    pub fn characteristic_report(&self, point: &[Rational]) -> CharReport {
        let cauchy = self.cauchy_space_at(point);
        CharReport {
            class: self.dim - cauchy.len(),
            cauchy_dim: cauchy.len(),
            char_covectors: self.char_span_at(point),
            cauchy_basis: cauchy,
            char_system: self.characteristic_system(),
        }
    }

    /// Small growth vector of `S⊥` at a point.
    pub fn small_growth_vector(&self, point: &[Rational], depth: usize) -> GrowthVector {
        BracketTower::new(self).growth_at(point, depth)
    }

    /// Generic intersection of two spans.
    pub fn intersect(&self, other: &PfaffianSystem) -> Result<(PfaffianSystem, Vec<String>)> {
        if self.dim != other.dim {
            return Err(Error::ChartMismatch(format!("dimensions {} and {}", self.dim, other.dim)));
        }
        let n = self.dim;
        let cols = self.rank() + other.rank();
        let rows: Vec<Vec<Poly>> = (0..n)
            .map(|c| {
                self.generators
                    .iter()
                    .map(|g| g.coeff(c).clone())
                    .chain(other.generators.iter().map(|g| -g.coeff(c)))
                    .collect()
            })
            .collect();
        let m = PolyMatrix::with_cols(n, cols, rows);
        let gens: Vec<OneForm> = m
            .kernel()
            .into_iter()
            .map(|v| {
                let comps = (0..n)
                    .map(|c| {
                        v.iter()
                            .zip(&self.generators)
                            .fold(Poly::zero(n), |acc, (a, g)| &acc + &(a * g.coeff(c)))
                    })
                    .collect();
                form_from_components(n, comps)
            })
            .collect();
        let system = PfaffianSystem::new(n, gens)?;
        let mut warnings = Vec::new();
        let origin = vec![Rational::zero(); n];
        if system.rank_at(&origin) != system.rank() {
            warnings.push(format!(
                "intersection has generic rank {} but rank {} at the origin",
                system.rank(),
                system.rank_at(&origin)
            ));
        }
        Ok((system, warnings))
    }

    /// `[S_k ≠ χ(S_{k+2})` at the origin`]` for `k = 0..=ℓ-3`.
    pub fn char_signature(&self) -> Result<Vec<bool>> {
        let flag = self.derived_flag();
        if !flag.is_flag() {
            return Err(Error::Domain(format!("ranks {:?} do not form a flag", flag.ranks)));
        }
        let origin = vec![Rational::zero(); self.dim];
        let l = flag.length;
        Ok((0..l.saturating_sub(2))
            .map(|k| flag.systems[k].span_at(&origin) != flag.systems[k + 2].char_span_at(&origin))
            .collect())
    }

    pub fn report(&self, point: &[Rational]) -> Result<SystemReport> {
        let flag = self.derived_flag();
        let signature = if flag.is_flag() { self.char_signature()? } else { Vec::new() };
        Ok(SystemReport {
            ranks: flag.ranks.clone(),
            length: flag.length,
            class: self.characteristic_report(point).class,
            growth_vector: self.small_growth_vector(point, self.dim + 2).dims,
            signature,
        })
    }
}

/// Iterated brackets of the annihilator fields, kept as a ℚ-basis per
/// level and extended on demand. Level `k` holds brackets of length `k + 1`
/// independent of all lower levels.
pub struct BracketTower {
    dim: usize,
    base: Vec<VectorField>,
    levels: Vec<Vec<VectorField>>,
    basis: FieldBasis,
}

impl BracketTower {
    pub fn new(system: &PfaffianSystem) -> Self {
        let base = system.annihilator_fields();
        let mut basis = FieldBasis::default();
        let first = base.iter().filter(|f| basis.insert(f)).cloned().collect();
        BracketTower { dim: system.dim, base, levels: vec![first], basis }
    }

    fn ensure_levels(&mut self, count: usize) {
        while self.levels.len() < count {
            let newest = self.levels.last().unwrap();
            let mut next = Vec::new();
            for v in &self.base {
                for w in newest {
                    let b = v.bracket(w);
                    if self.basis.insert(&b) {
                        next.push(b);
                    }
                }
            }
            self.levels.push(next);
        }
    }

    pub fn growth_at(&mut self, point: &[Rational], depth: usize) -> GrowthVector {
        let n = self.dim;
        let mut values: Vec<Vec<Rational>> = Vec::new();
        let mut dims = Vec::new();
        for k in 0..depth.max(1) {
            self.ensure_levels(k + 1);
            if self.levels[k].is_empty() && k > 0 {
                break;
            }
            values.extend(self.levels[k].iter().map(|f| f.eval(point)));
            let d = canonical_span(&values, n).len();
            dims.push(d);
            if d == n {
                break;
            }
        }
        let truncated = dims.last().is_none_or(|&d| d < n);
        GrowthVector { dims, truncated }
    }
}

/// Incremental echelon basis of vector fields over ℚ, for detecting constant
/// linear dependence among brackets.
#[derive(Default)]
struct FieldBasis {
    rows: BTreeMap<(usize, MultiIndex), BTreeMap<(usize, MultiIndex), Rational>>,
}

impl FieldBasis {
    fn insert(&mut self, f: &VectorField) -> bool {
        let mut v: BTreeMap<(usize, MultiIndex), Rational> = BTreeMap::new();
        for (i, c) in f.coeffs().iter().enumerate() {
            for (m, a) in c.terms() {
                v.insert((i, m.clone()), a.clone());
            }
        }
        loop {
            let Some((lead, lc)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
                return false;
            };
            match self.rows.get(&lead) {
                None => {
                    self.rows.insert(lead, v);
                    return true;
                }
                Some(row) => {
                    let factor = &lc / &row[&lead];
                    for (k, c) in row {
                        let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                        *e -= &factor * c;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn origin(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n]
    }

    fn engel() -> PfaffianSystem {
        PfaffianSystem::parse(4, &["dx2 + x3*dx1", "dx3 + x4*dx1"]).unwrap()
    }

    #[test]
    fn derived_examples() {
        let d = engel().derived_system();
        assert_eq!(d.system.rank(), 1);
        assert!(d.system.same_span(&PfaffianSystem::parse(4, &["dx2 + x3*dx1"]).unwrap()));
        let int = PfaffianSystem::parse(2, &["dx1"]).unwrap();
        assert!(int.derived_system().system.same_span(&int));
        assert!(int.is_integrable());
        assert!(PfaffianSystem::parse(3, &["dx1", "dx2"]).unwrap().is_integrable());
    }

    #[test]
    fn flags() {
        let darboux = PfaffianSystem::parse(3, &["dx2 + x3*dx1"]).unwrap();
        let f = darboux.derived_flag();
        assert_eq!((f.ranks.clone(), f.length), (vec![1, 0], 1));
        assert!(f.is_flag());
        assert!(!darboux.is_integrable());
        let f = engel().derived_flag();
        assert_eq!(f.ranks, vec![2, 1, 0]);
    }

    #[test]
    fn characteristics() {
        let darboux = PfaffianSystem::parse(3, &["dx2 + x3*dx1"]).unwrap();
        let r = darboux.characteristic_report(&origin(3));
        assert_eq!((r.class, r.cauchy_dim), (3, 0));
        let s1 = PfaffianSystem::parse(4, &["dx2 + x3*dx1"]).unwrap();
        let r = s1.characteristic_report(&origin(4));
        assert_eq!(r.cauchy_basis, vec![vec![rat(0), rat(0), rat(0), rat(1)]]);
        assert_eq!(r.class, 3);
        assert_eq!(r.char_system.rank(), 3);
        let int = PfaffianSystem::parse(2, &["dx1"]).unwrap();
        assert_eq!(int.characteristic_report(&origin(2)).class, 1);
    }

    #[test]
    fn growth() {
        let g = engel().small_growth_vector(&origin(4), 6);
        assert_eq!(g.dims, vec![2, 3, 4]);
        assert!(!g.truncated);
    }

    #[test]
    fn intersections() {
        let a = PfaffianSystem::parse(3, &["dx1"]).unwrap();
        let b = PfaffianSystem::parse(3, &["dx2"]).unwrap();
        assert_eq!(a.intersect(&b).unwrap().0.rank(), 0);
        let e = engel();
        assert!(e.intersect(&e).unwrap().0.same_span(&e));
    }

    #[test]
    fn rejects_dependent_generators() {
        assert!(PfaffianSystem::parse(3, &["dx1", "x2*dx1"]).is_err());
    }
}
