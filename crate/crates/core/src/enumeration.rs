//! Exact brute-force oracles on a [`CompactGraph`]: maximal independent
//! sets (which are exactly the independent dominating sets) and independent
//! sets, both tallied by cardinality.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::CompactGraph;
use crate::polynomial::IntPolynomial;

pub const DEFAULT_MIS_LIMIT: usize = 150;
pub const DEFAULT_INDEPENDENT_LIMIT: usize = 100;
/// Memo entries kept by [`independent_sets_by_size`] before it stops caching.
pub const MEMO_CAPACITY: usize = 1 << 22;

/// Vertex-count limits for the two oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub mis: usize,
    pub independent: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            mis: DEFAULT_MIS_LIMIT,
            independent: DEFAULT_INDEPENDENT_LIMIT,
        }
    }
}

/// Count of sets per cardinality. Zero counts are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SizeHistogram {
    counts: BTreeMap<usize, BigUint>,
}

impl SizeHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, size: usize, count: impl Into<BigUint>) {
        let count = count.into();
        if count.is_zero() {
            return;
        }
        *self.counts.entry(size).or_default() += count;
    }

    pub fn get(&self, size: usize) -> BigUint {
        self.counts.get(&size).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        self.counts.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_size(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_size(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Generating polynomial `Σ counts[k]·x^k`.
    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_terms(self.counts.iter().map(|(&k, c)| (k, BigInt::from(c.clone()))))
    }

    /// Inverse of [`to_polynomial`](Self::to_polynomial); fails on negative
    /// coefficients.
    pub fn from_polynomial(p: &IntPolynomial) -> Result<Self> {
        let mut h = Self::new();
        for (k, c) in p.terms() {
            let c = c
                .to_biguint()
                .ok_or_else(|| Error::Domain(format!("negative count {c} at size {k}")))?;
            h.add(k, c);
        }
        Ok(h)
    }
}

fn check_limit(g: &CompactGraph, limit: usize) -> Result<()> {
    if g.order() > limit {
        return Err(Error::Capacity {
            what: "oracle graph order",
            got: g.order() as u64,
            limit: limit as u64,
        });
    }
    Ok(())
}

fn closed_neighborhood(g: &CompactGraph, v: usize) -> BitSet {
    let mut n = g.neighbors(v).clone();
    n.insert(v);
    n
}

/// Calls `visit` once per maximal independent set.
///
/// Bron–Kerbosch on the complement, expressed in terms of `g` itself: the
/// candidate set after choosing `v` is `P \ N[v]`, and with pivot `u` only
/// the vertices of `P ∩ N[u]` are branched on. The pivot minimises that
/// branch set, so a universal vertex yields its singleton and is then
/// excluded at once.
pub fn for_each_maximal_independent_set<F>(g: &CompactGraph, limit: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&BitSet),
{
    check_limit(g, limit)?;
    let n = g.order();
    let closed: Vec<BitSet> = (0..n).map(|v| closed_neighborhood(g, v)).collect();
    let mut current = BitSet::new(n);
    expand(&closed, &mut current, BitSet::full(n), BitSet::new(n), &mut visit);
    Ok(())
}

fn expand<F: FnMut(&BitSet)>(
    closed: &[BitSet],
    current: &mut BitSet,
    mut candidates: BitSet,
    mut excluded: BitSet,
    visit: &mut F,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            visit(current);
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .min_by_key(|&u| candidates.intersection_count(&closed[u]))
        .expect("candidates nonempty");
    let branch = candidates.intersection(&closed[pivot]);
    for v in branch.iter() {
        current.insert(v);
        expand(
            closed,
            current,
            candidates.difference(&closed[v]),
            excluded.difference(&closed[v]),
            visit,
        );
        current.remove(v);
        candidates.remove(v);
        excluded.insert(v);
    }
}

/// Number of maximal independent sets of each size.
pub fn maximal_independent_sets(g: &CompactGraph, limit: usize) -> Result<SizeHistogram> {
    let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
    for_each_maximal_independent_set(g, limit, |s| *tally.entry(s.count()).or_default() += 1)?;
    let mut h = SizeHistogram::new();
    for (k, c) in tally {
        h.add(k, c);
    }
    Ok(h)
}

struct IndependenceCounter<'g> {
    g: &'g CompactGraph,
    memo: HashMap<BitSet, IntPolynomial>,
    binomials: HashMap<usize, IntPolynomial>,
}

impl IndependenceCounter<'_> {
    fn binomial(&mut self, k: usize) -> IntPolynomial {
        self.binomials
            .entry(k)
            .or_insert_with(|| IntPolynomial::binomial_power(k as u64).expect("k bounded by graph order"))
            .clone()
    }

    /// Independence polynomial of the subgraph induced on `alive`.
    fn count(&mut self, alive: BitSet) -> IntPolynomial {
        let mut isolated = 0usize;
        let mut rest = alive.clone();
        let mut pivot: Option<(usize, usize)> = None;
        for v in alive.iter() {
            let deg = self.g.neighbors(v).intersection_count(&alive);
            if deg == 0 {
                isolated += 1;
                rest.remove(v);
            } else if pivot.is_none_or(|(_, best)| deg > best) {
                pivot = Some((v, deg));
            }
        }
        let Some((v, _)) = pivot else {
            return self.binomial(isolated);
        };
        let factor = self.binomial(isolated);
        if let Some(hit) = self.memo.get(&rest) {
            return &factor * hit;
        }
        let mut without = rest.clone();
        without.remove(v);
        let mut with = rest.clone();
        with.difference_with(self.g.neighbors(v));
        with.remove(v);
        let a = self.count(without);
        let b = self.count(with).shift(1);
        let result = &a + &b;
        if self.memo.len() < MEMO_CAPACITY {
            self.memo.insert(rest, result.clone());
        }
        &factor * &result
    }
}

/// Number of independent sets of each size, including the empty set.
///
/// Uses `I(G) = I(G − v) + x·I(G − N[v])` on a highest-degree vertex,
/// peeling off isolated vertices as `(1 + x)^k` and memoising on the
/// surviving vertex set.
pub fn independent_sets_by_size(g: &CompactGraph, limit: usize) -> Result<SizeHistogram> {
    check_limit(g, limit)?;
    let poly = independence_polynomial_unchecked(g);
    SizeHistogram::from_polynomial(&poly)
}

pub(crate) fn independence_polynomial_unchecked(g: &CompactGraph) -> IntPolynomial {
    let mut counter = IndependenceCounter {
        g,
        memo: HashMap::new(),
        binomials: HashMap::new(),
    };
    counter.count(BitSet::full(g.order()))
}

/// True iff `set` is independent and every other vertex has a neighbour
/// in it.
pub fn verify_dominating_independent(g: &CompactGraph, set: &[usize]) -> Result<bool> {
    let n = g.order();
    if let Some(&bad) = set.iter().find(|&&v| v >= n) {
        return Err(Error::Domain(format!("vertex {bad} out of range for order {n}")));
    }
    let members = BitSet::from_indices(n, set.iter().copied());
    let mut dominated = members.clone();
    for v in members.iter() {
        if !g.neighbors(v).is_disjoint(&members) {
            return Ok(false);
        }
        dominated.union_with(g.neighbors(v));
    }
    Ok(dominated.count() == n)
}

/// `(γ_i, α)`: independent domination number and independence number.
pub fn graph_numbers(g: &CompactGraph, limits: OracleLimits) -> Result<(usize, usize)> {
    let mis = maximal_independent_sets(g, limits.mis)?;
    let ind = independent_sets_by_size(g, limits.independent)?;
    let gamma_i = mis.min_size().unwrap_or(0);
    let alpha = ind.max_size().unwrap_or(0);
    Ok((gamma_i, alpha))
}

/// Exhaustive subset scan; test oracle for the two enumerators.
#[cfg(test)]
pub(crate) fn subset_scan(g: &CompactGraph) -> (SizeHistogram, SizeHistogram) {
    let n = g.order();
    assert!(n <= 20);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut independent = SizeHistogram::new();
    let mut maximal = SizeHistogram::new();
    for s in 0..=full {
        let independent_set = (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0);
        if !independent_set {
            continue;
        }
        independent.add(s.count_ones() as usize, 1u32);
        let dominated = (0..n).filter(|&v| s >> v & 1 == 1).fold(s, |m, v| m | adj[v]);
        if dominated == full {
            maximal.add(s.count_ones() as usize, 1u32);
        }
    }
    (maximal, independent)
}

/// Convenience for tests and callers holding small counts.
pub fn histogram_from_pairs(pairs: &[(usize, u64)]) -> SizeHistogram {
    let mut h = SizeHistogram::new();
    for &(k, c) in pairs {
        h.add(k, c);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{comaximal_graph_direct, DEFAULT_VERTEX_CAPACITY};
    use rand::{Rng, SeedableRng};

    fn gamma(n: u64) -> CompactGraph {
        comaximal_graph_direct(n, DEFAULT_VERTEX_CAPACITY).unwrap().0
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> CompactGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        CompactGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn mis_examples() {
        let k5 = CompactGraph::complete(5);
        assert_eq!(maximal_independent_sets(&k5, 150).unwrap(), histogram_from_pairs(&[(1, 5)]));
        assert_eq!(
            maximal_independent_sets(&gamma(15), 150).unwrap(),
            histogram_from_pairs(&[(1, 8), (3, 1), (5, 1)])
        );
        assert_eq!(
            maximal_independent_sets(&gamma(30), 150).unwrap(),
            histogram_from_pairs(&[(1, 8), (6, 1), (8, 1), (10, 1), (15, 1)])
        );
        assert!(matches!(
            maximal_independent_sets(&gamma(151), 150),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn independent_set_examples() {
        assert_eq!(
            independent_sets_by_size(&CompactGraph::complete(7), 100).unwrap(),
            histogram_from_pairs(&[(0, 1), (1, 7)])
        );
        let expected = {
            let p = &IntPolynomial::monomial(1, 8) + &IntPolynomial::binomial_power(8).unwrap();
            SizeHistogram::from_polynomial(&p).unwrap()
        };
        let got = independent_sets_by_size(&gamma(16), 100).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.get(1), BigUint::from(16u32));
        assert_eq!(got.get(2), BigUint::from(28u32));
        assert_eq!(got.get(3), BigUint::from(56u32));
        assert_eq!(got.get(8), BigUint::from(1u32));
        assert_eq!(
            independent_sets_by_size(&CompactGraph::empty(3), 100).unwrap(),
            histogram_from_pairs(&[(0, 1), (1, 3), (2, 3), (3, 1)])
        );
        assert!(independent_sets_by_size(&gamma(101), 100).is_err());
    }

    #[test]
    fn verify_examples() {
        let g15 = gamma(15);
        assert!(verify_dominating_independent(&g15, &[0, 5, 10]).unwrap());
        assert!(!verify_dominating_independent(&g15, &[3, 5]).unwrap());
        assert!(verify_dominating_independent(&CompactGraph::complete(5), &[3]).unwrap());
        assert!(verify_dominating_independent(&g15, &[15]).is_err());
        // independent but not dominating
        assert!(!verify_dominating_independent(&g15, &[0]).unwrap());
    }

    #[test]
    fn graph_number_examples() {
        let limits = OracleLimits::default();
        assert_eq!(graph_numbers(&CompactGraph::complete(9), limits).unwrap(), (1, 1));
        assert_eq!(graph_numbers(&gamma(15), limits).unwrap(), (1, 5));
        assert_eq!(graph_numbers(&gamma(36), limits).unwrap(), (1, 18));
    }

    #[test]
    fn enumerators_agree_with_subset_scan_on_comaximal_graphs() {
        for n in 2..=20 {
            let g = gamma(n);
            let (mis, ind) = subset_scan(&g);
            assert_eq!(maximal_independent_sets(&g, 150).unwrap(), mis, "n = {n}");
            assert_eq!(independent_sets_by_size(&g, 100).unwrap(), ind, "n = {n}");
        }
    }

    #[test]
    fn enumerators_agree_with_subset_scan_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..300 {
            let n = rng.gen_range(0..=16);
            let p = rng.gen_range(0.05..0.9);
            let g = random_graph(&mut rng, n, p);
            let (mis, ind) = subset_scan(&g);
            assert_eq!(maximal_independent_sets(&g, 150).unwrap(), mis, "trial {trial}");
            let got = independent_sets_by_size(&g, 100).unwrap();
            assert_eq!(got, ind, "trial {trial}");
            assert_eq!(got.total(), ind.total());
        }
    }

    #[test]
    fn every_enumerated_set_is_independent_dominating() {
        for n in 2..=120 {
            let g = gamma(n);
            let mut sets = 0usize;
            for_each_maximal_independent_set(&g, 150, |s| {
                let members: Vec<usize> = s.iter().collect();
                assert!(verify_dominating_independent(&g, &members).unwrap(), "n = {n}: {members:?}");
                sets += 1;
            })
            .unwrap();
            assert!(sets > 0);
        }
    }

    #[test]
    fn comaximal_graph_numbers_and_pointwise_bound() {
        for n in 2..=100 {
            let g = gamma(n);
            let mis = maximal_independent_sets(&g, 150).unwrap();
            let ind = independent_sets_by_size(&g, 100).unwrap();
            let gamma_i = mis.min_size().unwrap();
            let alpha = ind.max_size().unwrap();
            assert_eq!(gamma_i, 1, "n = {n}");
            assert!(gamma_i <= alpha);
            for (k, c) in mis.iter() {
                assert!(k >= 1);
                assert!(*c <= ind.get(k), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn histogram_has_no_zero_entries() {
        let mut h = SizeHistogram::new();
        h.add(3, 0u32);
        assert_eq!(h.iter().count(), 0);
        assert!(SizeHistogram::from_polynomial(&IntPolynomial::constant(-1)).is_err());
    }
}
