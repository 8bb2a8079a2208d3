//! Sparse homogeneous linear systems over ℚ with arbitrary unknown labels.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::rational::Rational;

/// A homogeneous linear form `Σ c_u u`.
pub type LinearForm<U> = BTreeMap<U, Rational>;

/// Reduced solution of a homogeneous system.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution<U: Ord> {
    /// Unknowns forced to vanish.
    pub forced_zero: BTreeSet<U>,
    /// Reduced relations that involve more than one unknown; the first key
    /// of each form is its pivot.
    pub relations: Vec<LinearForm<U>>,
    /// Unknowns left free (non-pivot).
    pub free: BTreeSet<U>,
    pub rank: usize,
}

impl<U: Ord + Clone> LinearSolution<U> {
    /// Dimension of the solution space.
    pub fn corank(&self) -> usize {
        self.free.len()
    }
}

/// Gauss-Jordan reduction. `unknowns` fixes the full set of unknowns (those
/// not appearing in any equation are free); pivots are chosen in the order of
/// the set.
pub fn solve_homogeneous<U: Ord + Clone>(
    unknowns: &BTreeSet<U>,
    equations: &[LinearForm<U>],
) -> LinearSolution<U> {
    let mut rows: Vec<LinearForm<U>> = equations
        .iter()
        .map(|e| e.iter().filter(|(_, c)| !c.is_zero()).map(|(u, c)| (u.clone(), c.clone())).collect())
        .filter(|e: &LinearForm<U>| !e.is_empty())
        .collect();
    let mut pivots: Vec<(U, LinearForm<U>)> = Vec::new();
    while let Some(pos) = (0..rows.len()).min_by(|&a, &b| {
        rows[a].keys().next().cmp(&rows[b].keys().next()).then(rows[a].len().cmp(&rows[b].len()))
    }) {
        let row = rows.swap_remove(pos);
        let (pu, pc) = row.iter().next().map(|(u, c)| (u.clone(), c.clone())).unwrap();
        let inv = pc.recip();
        let row: LinearForm<U> = row.into_iter().map(|(u, c)| (u, c * &inv)).collect();
        let eliminate = |target: &mut LinearForm<U>| {
            if let Some(f) = target.get(&pu).cloned() {
                for (u, c) in &row {
                    let e = target.entry(u.clone()).or_insert_with(Rational::zero);
                    *e -= &f * c;
                    if e.is_zero() {
                        target.remove(u);
                    }
                }
            }
        };
        for r in rows.iter_mut() {
            eliminate(r);
        }
        rows.retain(|r| !r.is_empty());
        for (_, r) in pivots.iter_mut() {
            eliminate(r);
        }
        pivots.push((pu, row));
    }
    let pivot_set: BTreeSet<U> = pivots.iter().map(|(u, _)| u.clone()).collect();
    let mut forced_zero = BTreeSet::new();
    let mut relations = Vec::new();
    for (u, r) in &pivots {
        if r.len() == 1 {
            debug_assert!(r.values().next().unwrap().is_one());
            forced_zero.insert(u.clone());
        } else {
            relations.push(r.clone());
        }
    }
    relations.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
    let mut all = unknowns.clone();
    for r in equations {
        all.extend(r.keys().cloned());
    }
    LinearSolution {
        forced_zero,
        relations,
        free: all.difference(&pivot_set).cloned().collect(),
        rank: pivots.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn form(pairs: &[(&'static str, i64)]) -> LinearForm<&'static str> {
        pairs.iter().map(|(u, c)| (*u, rat(*c))).collect()
    }

    #[test]
    fn forced_and_relations() {
        let unknowns: BTreeSet<_> = ["a", "b", "c", "d"].into_iter().collect();
        let eqs = vec![
            form(&[("a", 1), ("b", 1)]),
            form(&[("a", 1), ("b", -1)]),
            form(&[("c", 2), ("d", 3)]),
        ];
        let s = solve_homogeneous(&unknowns, &eqs);
        assert_eq!(s.rank, 3);
        assert_eq!(s.corank(), 1);
        assert_eq!(s.forced_zero, ["a", "b"].into_iter().collect());
        assert_eq!(s.relations.len(), 1);
        assert_eq!(s.free, ["d"].into_iter().collect());
    }

    #[test]
    fn empty_system() {
        let unknowns: BTreeSet<_> = ["a"].into_iter().collect();
        let s = solve_homogeneous::<&str>(&unknowns, &[form(&[("a", 0)])]);
        assert_eq!(s.corank(), 1);
        assert_eq!(s.rank, 0);
    }
}
