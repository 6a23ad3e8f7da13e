use std::collections::BTreeMap;

use crate::lattice;
use crate::potential::TrigPotential;

/// Multiset of nonzero integer vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VectorSet {
    entries: BTreeMap<Vec<i64>, usize>,
}

impl VectorSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one copy of `v`; the zero vector is ignored.
    pub fn insert(&mut self, v: Vec<i64>) {
        if !lattice::is_zero(&v) {
            *self.entries.entry(v).or_default() += 1;
        }
    }

    /// Adds one copy each of `v` and `-v`.
    pub fn insert_pm(&mut self, v: &[i64]) {
        self.insert(v.to_vec());
        self.insert(v.iter().map(|x| -x).collect());
    }

    pub fn multiplicity(&self, v: &[i64]) -> usize {
        self.entries.get(v).copied().unwrap_or(0)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.multiplicity(v) > 0
    }

    /// Distinct vectors with their multiplicities, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, usize)> {
        self.entries.iter().map(|(k, &m)| (k, m))
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.entries.keys()
    }

    /// Number of distinct vectors.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_negation_closed(&self) -> bool {
        self.entries.iter().all(|(k, &m)| {
            let neg: Vec<i64> = k.iter().map(|x| -x).collect();
            self.multiplicity(&neg) == m
        })
    }
}

impl FromIterator<Vec<i64>> for VectorSet {
    fn from_iter<I: IntoIterator<Item = Vec<i64>>>(iter: I) -> Self {
        let mut s = VectorSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// `{±u_i} ∪ {±u_i ± u_j : i < j, u_i·u_j ≠ 0}` counted with multiplicity.
pub(crate) fn pair_set(us: &[Vec<i64>]) -> VectorSet {
    let mut s = VectorSet::new();
    for u in us {
        s.insert_pm(u);
    }
    for i in 0..us.len() {
        for j in (i + 1)..us.len() {
            if lattice::dot_i(&us[i], &us[j]) != 0 {
                s.insert_pm(&add(&us[i], &us[j], 1));
                s.insert_pm(&add(&us[i], &us[j], -1));
            }
        }
    }
    s
}

/// Candidates `α u_i + β u_j` (`i ≠ j`, every pair) whose multiplicity in
/// `set` is exactly one.
pub(crate) fn sole_in(set: &VectorSet, us: &[Vec<i64>]) -> VectorSet {
    let mut out = VectorSet::new();
    for i in 0..us.len() {
        for j in (i + 1)..us.len() {
            for beta in [1, -1] {
                let w = add(&us[i], &us[j], beta);
                if set.multiplicity(&w) == 1 && !out.contains(&w) {
                    out.insert_pm(&w);
                }
            }
        }
    }
    out
}

fn add(a: &[i64], b: &[i64], beta: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + beta * y).collect()
}

fn mode_vectors(v: &TrigPotential) -> Vec<Vec<i64>> {
    v.modes()
        .iter()
        .map(|m| m.k.canonical().components().to_vec())
        .collect()
}

/// The A-set of a potential: its modes and the signed sums of distinct
/// non-orthogonal mode pairs.
pub fn build_a_set(v: &TrigPotential) -> VectorSet {
    pair_set(&mode_vectors(v))
}

/// Signed pair sums `±k_i ± k_j` (`i ≠ j`) occurring exactly once in `a`.
/// Sums of orthogonal pairs qualify when they coincide with a single entry.
pub fn sole_vectors(a: &VectorSet, v: &TrigPotential) -> VectorSet {
    sole_in(a, &mode_vectors(v))
}

/// `a ≺ b`: every vector of `a` is parallel to some vector of `b`.
pub fn prec(a: &VectorSet, b: &VectorSet) -> bool {
    a.vectors()
        .all(|u| b.vectors().any(|w| lattice::is_parallel(u, w)))
}
