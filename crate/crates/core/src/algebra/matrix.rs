//! Matrices over ℚ[x] and over ℚ.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;

/// Dense matrix of polynomials on a common chart.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: Vec<Vec<Poly>>,
    ncols: usize,
}

/// Outcome of fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    /// Original row indices of the pivots, in pivot order.
    pub pivot_rows: Vec<usize>,
    /// Original column indices of the pivots, in pivot order.
    pub pivot_cols: Vec<usize>,
}

impl PolyMatrix {
    pub fn new(nvars: usize, rows: Vec<Vec<Poly>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        assert!(rows.iter().flatten().all(|p| p.nvars() == nvars), "chart mismatch");
        PolyMatrix { nvars, rows, ncols }
    }

    pub fn with_cols(nvars: usize, ncols: usize, rows: Vec<Vec<Poly>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        PolyMatrix { nvars, rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn eval(&self, point: &[Rational]) -> RatMatrix {
        RatMatrix::new(
            self.ncols,
            self.rows
                .iter()
                .map(|r| r.iter().map(|p| p.eval(point)).collect())
                .collect(),
        )
    }

    /// Bareiss elimination with full pivoting. The pivot is the entry whose
    /// leading term is smallest in graded-lex order, ties going to the
    /// lowest row and then the lowest column.
    pub fn eliminate(&self) -> Elimination {
        let mut a = self.rows.clone();
        let m = a.len();
        let n = self.ncols;
        let mut row_idx: Vec<usize> = (0..m).collect();
        let mut col_idx: Vec<usize> = (0..n).collect();
        let mut prev = Poly::one(self.nvars);
        let mut k = 0;
        while k < m.min(n) {
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => {
                            let (lm, _) = a[i][j].leading_term().unwrap();
                            let (bm, _) = a[bi][bj].leading_term().unwrap();
                            (a[i][j].num_terms(), lm) < (a[bi][bj].num_terms(), bm)
                        }
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(k, pi);
            row_idx.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            col_idx.swap(k, pj);
            let piv = a[k][k].clone();
            for i in (k + 1)..m {
                let factor = a[i][k].clone();
                for j in (k + 1)..n {
                    let num = &(&piv * &a[i][j]) - &(&factor * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss step divides exactly");
                }
                a[i][k] = Poly::zero(self.nvars);
            }
            prev = piv;
            k += 1;
        }
        Elimination {
            rank: k,
            pivot_rows: row_idx[..k].to_vec(),
            pivot_cols: col_idx[..k].to_vec(),
        }
    }

    /// Rank over the field of rational functions.
    pub fn rank_generic(&self) -> usize {
        self.eliminate().rank
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Poly {
        assert_eq!(self.nrows(), self.ncols, "determinant of a non-square matrix");
        let n = self.ncols;
        if n == 0 {
            return Poly::one(self.nvars);
        }
        let mut a = self.rows.clone();
        let mut sign = Rational::one();
        let mut prev = Poly::one(self.nvars);
        for k in 0..n {
            let Some(pi) = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (a[i][k].num_terms(), a[i][k].leading_term().unwrap().0.clone()))
            else {
                return Poly::zero(self.nvars);
            };
            if pi != k {
                a.swap(k, pi);
                sign = -sign;
            }
            let piv = a[k][k].clone();
            for i in (k + 1)..n {
                let factor = a[i][k].clone();
                for j in (k + 1)..n {
                    let num = &(&piv * &a[i][j]) - &(&factor * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
                }
                a[i][k] = Poly::zero(self.nvars);
            }
            prev = piv;
        }
        a[n - 1][n - 1].scale(&sign)
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::with_cols(
            self.nvars,
            cols.len(),
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect())
                .collect(),
        )
    }

    /// Polynomial basis of the right kernel over the fraction field.
    ///
    /// One vector per non-pivot column, built from maximal minors so every
    /// entry is a polynomial; each vector is reduced by its common factor
    /// when one is detectable.
    pub fn kernel(&self) -> Vec<Vec<Poly>> {
        let el = self.eliminate();
        let r = el.rank;
        let pr = &el.pivot_rows;
        let pc = &el.pivot_cols;
        let base = self.submatrix(pr, pc);
        let d = base.det();
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|c| !pc.contains(c)) {
            let mut v = vec![Poly::zero(self.nvars); self.ncols];
            v[f] = d.clone();
            for k in 0..r {
                let mut cols = pc.clone();
                cols[k] = f;
                v[pc[k]] = -self.submatrix(pr, &cols).det();
            }
            let mut v = normalize_vector(v);
            if v[f].leading_term().is_some_and(|(_, c)| c < &Rational::zero()) {
                v = v.iter().map(|p| -p).collect();
            }
            out.push(v);
        }
        out
    }

    /// Kernel basis with prescribed pivot columns, one per row. When the
    /// pivot minor is a nonzero constant the vectors are `e_f` plus pivot
    /// components, exactly polynomial; otherwise `None`.
    pub fn kernel_with_pivots(&self, pivot_cols: &[usize]) -> Option<Vec<Vec<Poly>>> {
        assert_eq!(pivot_cols.len(), self.nrows());
        let rows: Vec<usize> = (0..self.nrows()).collect();
        let d = self.submatrix(&rows, pivot_cols).det().constant_value()?;
        if d.is_zero() {
            return None;
        }
        let inv = d.recip();
        Some(
            (0..self.ncols)
                .filter(|c| !pivot_cols.contains(c))
                .map(|f| {
                    let mut v = vec![Poly::zero(self.nvars); self.ncols];
                    v[f] = Poly::one(self.nvars);
                    for (k, &pc) in pivot_cols.iter().enumerate() {
                        let mut cols = pivot_cols.to_vec();
                        cols[k] = f;
                        v[pc] = -self.submatrix(&rows, &cols).det().scale(&inv);
                    }
                    v
                })
                .collect(),
        )
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Poly::zero(self.nvars), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

/// Divides a polynomial vector by a detectable common factor: a shared
/// nonconstant entry that divides all others, then the monomial and rational
/// contents. The first nonzero entry ends with a positive leading
/// coefficient.
pub fn normalize_vector(v: Vec<Poly>) -> Vec<Poly> {
    let nonzero: Vec<&Poly> = v.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return v;
    }
    let nvars = nonzero[0].nvars();
    let mut v = v;
    // common polynomial factor among entries: try each distinct entry
    let mut candidates: Vec<Poly> = v
        .iter()
        .filter(|p| !p.is_zero() && !p.is_constant())
        .map(|p| p.normalized())
        .filter(|p| !p.is_constant())
        .collect();
    candidates.sort_by_key(|p| p.num_terms());
    candidates.dedup();
    for c in candidates {
        let divided: Option<Vec<Poly>> = v
            .iter()
            .map(|p| if p.is_zero() { Some(p.clone()) } else { p.div_exact(&c) })
            .collect();
        if let Some(d) = divided {
            v = d;
        }
    }
    let mono = v
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monomial_content())
        .reduce(|a, b| a.gcd(&b))
        .unwrap();
    let mono_poly = Poly::monomial(nvars, mono, Rational::one());
    let mut v: Vec<Poly> = v
        .into_iter()
        .map(|p| if p.is_zero() { p } else { p.div_exact(&mono_poly).expect("content divides") })
        .collect();
    let mut num_gcd = num_bigint::BigInt::zero();
    let mut den_lcm = num_bigint::BigInt::one();
    for p in v.iter() {
        for (_, c) in p.terms() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
    }
    let mut content = Rational::new(num_gcd, den_lcm);
    let first = v.iter().find(|p| !p.is_zero()).unwrap();
    if first.leading_term().map(|(_, c)| c < &Rational::zero()).unwrap_or(false) {
        content = -content;
    }
    let inv = content.recip();
    for p in v.iter_mut() {
        *p = p.scale(&inv);
    }
    v
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    rows: Vec<Vec<Rational>>,
    ncols: usize,
}

impl RatMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        RatMatrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.rows.clone();
        let m = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..self.ncols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (RatMatrix { rows: a, ncols: self.ncols }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = self.rref();
        (0..self.ncols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red.rows[k][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Rank of a list of rational vectors.
pub fn rank_of_vectors(vectors: &[Vec<Rational>]) -> usize {
    match vectors.first() {
        None => 0,
        Some(first) => RatMatrix::new(first.len(), vectors.to_vec()).rank(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    fn pm(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::new(3, rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect())
    }

    #[test]
    fn generic_rank() {
        let m = pm(&[&["x1", "x2"], &["x1*x3", "x2*x3"]]);
        assert_eq!(m.rank_generic(), 1);
        let m = pm(&[&["x1", "1", "0"], &["0", "x2", "1"]]);
        assert_eq!(m.rank_generic(), 2);
        let z = pm(&[&["0", "0"]]);
        assert_eq!(z.rank_generic(), 0);
    }

    #[test]
    fn determinant() {
        let m = pm(&[&["x1", "x2"], &["x3", "1"]]);
        assert_eq!(m.det(), p("x1 - x2*x3"));
        let m = pm(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "x1"]]);
        assert_eq!(m.det(), p("-x1"));
    }

    #[test]
    fn polynomial_kernel_annihilates() {
        let m = pm(&[&["1", "0", "x3"], &["0", "1", "x1*x2"]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Poly::is_zero));
        assert_eq!(k[0], vec![p("-x3"), p("-x1*x2"), p("1")]);
    }

    #[test]
    fn rational_kernel() {
        let m = RatMatrix::new(3, vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}
