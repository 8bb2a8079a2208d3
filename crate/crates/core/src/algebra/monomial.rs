use std::cmp::Ordering;
use std::fmt;

/// Exponent vector, one entry per chart variable.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the first variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// The unit vector `e_var`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if b > a {
                return None;
            }
            out.push(a - b);
        }
        Some(MultiIndex(out))
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Component-wise minimum.
    pub fn gcd(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn with(&self, var: usize, exp: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[var] = exp;
        MultiIndex(e)
    }

    pub fn incremented(&self, var: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[var] += 1;
        MultiIndex(e)
    }

    pub fn decremented(&self, var: usize) -> Option<MultiIndex> {
        if self.0[var] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[var] -= 1;
        Some(MultiIndex(e))
    }

    /// Pads (or truncates, which must drop only zeros) to `nvars` entries.
    pub fn resized(&self, nvars: usize) -> MultiIndex {
        let mut e = self.0.clone();
        if nvars < e.len() {
            debug_assert!(e[nvars..].iter().all(|&x| x == 0));
        }
        e.resize(nvars, 0);
        MultiIndex(e)
    }

    /// All multi-indices in `nvars` variables with `|α| = degree`, in
    /// descending graded-lex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        if nvars == 0 {
            return if degree == 0 { vec![MultiIndex(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, degree, &mut vec![0; nvars], &mut out);
        out
    }

    /// All multi-indices with `|α| <= degree`, ascending graded-lex.
    pub fn all_up_to_degree(nvars: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = (0..=degree)
            .flat_map(|d| MultiIndex::all_of_degree(nvars, d))
            .collect();
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = MultiIndex::new(vec![0, 0, 2]);
        let b = MultiIndex::new(vec![1, 0, 0]);
        let c = MultiIndex::new(vec![0, 1, 1]);
        let d = MultiIndex::new(vec![1, 1, 0]);
        assert!(a > b);
        assert!(c > a);
        assert!(d > c);
    }

    #[test]
    fn enumeration_counts() {
        // binomial(d + 2, 2) monomials of degree d in three variables
        assert_eq!(MultiIndex::all_of_degree(3, 0).len(), 1);
        assert_eq!(MultiIndex::all_of_degree(3, 2).len(), 6);
        assert_eq!(MultiIndex::all_up_to_degree(3, 3).len(), 20);
        let all = MultiIndex::all_up_to_degree(3, 2);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn division() {
        let a = MultiIndex::new(vec![2, 1, 0]);
        let b = MultiIndex::new(vec![1, 1, 0]);
        assert_eq!(a.div(&b), Some(MultiIndex::new(vec![1, 0, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.gcd(&MultiIndex::new(vec![0, 3, 1])), MultiIndex::new(vec![0, 1, 0]));
    }
}
