//! Simple graphs with bit-packed adjacency rows, and the two constructions
//! of the comaximal graph of `Z_n`.
//!
//! `Γ(Z_n)` always uses ring elements `0..n` as vertex indices, so the
//! direct build and the assembled `K_φ(n) ∨ (K_1 ∪ G_2)` build can be
//! compared edge for edge.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::number_theory::{factorize, gcd, proper_divisors, totient};

/// Default cap on the number of vertices a graph build may allocate.
pub const DEFAULT_VERTEX_CAPACITY: usize = 5000;

/// Undirected simple graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompactGraph {
    rows: Vec<BitSet>,
    labels: Option<Vec<u64>>,
}

impl CompactGraph {
    /// Edgeless graph.
    pub fn empty(order: usize) -> Self {
        Self {
            rows: vec![BitSet::new(order); order],
            labels: None,
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Self::empty(order);
        for v in 0..order {
            g.rows[v] = BitSet::full(order);
            g.rows[v].remove(v);
        }
        g
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(order);
        for (u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) out of range for order {order}"
                )));
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::Domain(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Open neighbourhood of `v`.
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to the index.
    pub fn label(&self, v: usize) -> u64 {
        self.labels.as_ref().map_or(v as u64, |l| l[v])
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Vertices with no neighbours.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.rows[v].is_empty()).collect()
    }

    pub fn complement(&self) -> Self {
        let n = self.order();
        let rows = (0..n)
            .map(|v| {
                let mut r = self.rows[v].complement();
                r.remove(v);
                r
            })
            .collect();
        Self {
            rows,
            labels: self.labels.clone(),
        }
    }

    /// Disjoint union; `self`'s vertices come first.
    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (self.order(), other.order());
        let mut g = Self::empty(a + b);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v);
        }
        g.labels = match (&self.labels, &other.labels) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
            _ => None,
        };
        g
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Self) -> Self {
        let a = self.order();
        let mut g = self.union(other);
        for u in 0..a {
            for v in 0..other.order() {
                g.add_edge(u, a + v);
            }
        }
        g
    }

    /// Same graph with vertex `v` moved to position `new_index[v]`.
    pub fn permuted(&self, new_index: &[usize]) -> Result<Self> {
        let n = self.order();
        if new_index.len() != n {
            return Err(Error::Domain("permutation length mismatch".into()));
        }
        let mut seen = BitSet::new(n);
        for &i in new_index {
            if i >= n || seen.contains(i) {
                return Err(Error::Domain("not a permutation".into()));
            }
            seen.insert(i);
        }
        let mut g = Self::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(new_index[u], new_index[v]);
        }
        if let Some(labels) = &self.labels {
            let mut out = vec![0; n];
            for (v, &l) in labels.iter().enumerate() {
                out[new_index[v]] = l;
            }
            g.labels = Some(out);
        }
        Ok(g)
    }

    /// Subgraph induced on `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = Self::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&v| l[v]).collect());
        g
    }
}

/// Replaces quotient vertex `i` by an independent set of `sizes[i]` vertices,
/// fully joined to the cells of the quotient neighbours of `i`. Cells are laid
/// out consecutively in quotient order.
pub fn blow_up(quotient: &CompactGraph, sizes: &[usize]) -> Result<CompactGraph> {
    if sizes.len() != quotient.order() {
        return Err(Error::Domain(format!(
            "{} cell sizes for a quotient of order {}",
            sizes.len(),
            quotient.order()
        )));
    }
    let mut offsets = Vec::with_capacity(sizes.len() + 1);
    offsets.push(0usize);
    for &s in sizes {
        offsets.push(offsets.last().unwrap() + s);
    }
    let total = *offsets.last().unwrap();
    let mut g = CompactGraph::empty(total);
    for (i, j) in quotient.edges() {
        for u in offsets[i]..offsets[i + 1] {
            for v in offsets[j]..offsets[j + 1] {
                g.add_edge(u, v);
            }
        }
    }
    if let Some(labels) = quotient.labels() {
        let expanded = sizes
            .iter()
            .zip(labels)
            .flat_map(|(&s, &l)| std::iter::repeat_n(l, s))
            .collect();
        g.labels = Some(expanded);
    }
    Ok(g)
}

/// The partition of `Z_n` into units, `{0}` and the classes
/// `A_d = {x : gcd(x, n) = d}` over proper divisors `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorPartition {
    pub n: u64,
    pub units: Vec<u64>,
    pub zero: u64,
    /// `(d, A_d)` in increasing order of `d`.
    pub classes: Vec<(u64, Vec<u64>)>,
}

/// Which partition cell a ring element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellTag {
    Unit,
    Zero,
    Class(u64),
}

impl std::fmt::Display for CellTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CellTag::Unit => f.write_str("unit"),
            CellTag::Zero => f.write_str("zero"),
            CellTag::Class(d) => write!(f, "d={d}"),
        }
    }
}

impl DivisorPartition {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("Z_{n} has no comaximal graph here; need n >= 2")));
        }
        let divisors = proper_divisors(n)?;
        let mut classes: Vec<(u64, Vec<u64>)> = divisors.iter().map(|&d| (d, Vec::new())).collect();
        let mut units = Vec::new();
        for x in 1..n {
            let g = gcd(x, n);
            if g == 1 {
                units.push(x);
            } else {
                let idx = divisors.binary_search(&g).expect("gcd is a proper divisor");
                classes[idx].1.push(x);
            }
        }
        Ok(Self {
            n,
            units,
            zero: 0,
            classes,
        })
    }

    pub fn tag(&self, x: u64) -> CellTag {
        match gcd(x, self.n) {
            1 => CellTag::Unit,
            g if g == self.n => CellTag::Zero,
            d => CellTag::Class(d),
        }
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|(_, c)| c.len()).collect()
    }
}

fn check_capacity(n: u64, capacity: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    if n > capacity as u64 {
        return Err(Error::Capacity {
            what: "vertex count",
            got: n,
            limit: capacity as u64,
        });
    }
    Ok(())
}

/// `Γ(Z_n)` from the definition: distinct `a, b` are adjacent iff
/// `gcd(gcd(a, n), gcd(b, n)) = 1`.
pub fn comaximal_graph_direct(n: u64, capacity: usize) -> Result<(CompactGraph, DivisorPartition)> {
    check_capacity(n, capacity)?;
    let order = n as usize;
    let ideal: Vec<u64> = (0..n).map(|a| gcd(a, n)).collect();
    let mut g = CompactGraph::empty(order);
    for a in 0..order {
        for b in a + 1..order {
            if gcd(ideal[a], ideal[b]) == 1 {
                g.add_edge(a, b);
            }
        }
    }
    let g = g.with_labels((0..n).collect())?;
    Ok((g, DivisorPartition::new(n)?))
}

/// Proper divisors of `n` as vertices, adjacent when coprime. Empty for
/// prime `n`.
pub fn divisor_graph(n: u64) -> Result<CompactGraph> {
    let divisors = proper_divisors(n)?;
    let k = divisors.len();
    let mut g = CompactGraph::empty(k);
    for i in 0..k {
        for j in i + 1..k {
            if gcd(divisors[i], divisors[j]) == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g.with_labels(divisors)
}

/// `Γ(Z_n)` assembled as `K_φ(n) ∨ (K_1 ∪ G_2)` with `G_2` the blow-up of the
/// divisor graph by the class sizes `φ(n/d)`, then renumbered by ring element.
pub fn comaximal_graph_structured(n: u64, capacity: usize) -> Result<CompactGraph> {
    check_capacity(n, capacity)?;
    let phi = totient(n)? as usize;
    let quotient = divisor_graph(n)?;
    let sizes = quotient
        .labels()
        .unwrap_or_default()
        .iter()
        .map(|&d| totient(n / d).map(|s| s as usize))
        .collect::<Result<Vec<_>>>()?;
    let g2 = blow_up(&quotient, &sizes)?;
    let units = CompactGraph::complete(phi);
    let zero = CompactGraph::empty(1);
    let assembled = units.join(&zero.union(&g2));

    // cell layout: units, then 0, then each A_d in divisor order
    let partition = DivisorPartition::new(n)?;
    let mut element_of_vertex: Vec<u64> = Vec::with_capacity(n as usize);
    element_of_vertex.extend(&partition.units);
    element_of_vertex.push(0);
    for (_, members) in &partition.classes {
        element_of_vertex.extend(members);
    }
    debug_assert_eq!(element_of_vertex.len(), assembled.order());
    let new_index: Vec<usize> = element_of_vertex.iter().map(|&x| x as usize).collect();
    let g = CompactGraph {
        rows: assembled.rows,
        labels: None,
    };
    let g = g.permuted(&new_index)?;
    g.with_labels((0..n).collect())
}

/// Graphviz rendering of `Γ(Z_n)` with a `class` attribute per node.
pub fn to_dot(graph: &CompactGraph, partition: &DivisorPartition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph comaximal_{} {{", partition.n);
    for v in 0..graph.order() {
        let x = graph.label(v);
        let _ = writeln!(out, "  {v} [label=\"{x}\", class=\"{}\"];", partition.tag(x));
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Factorization-driven sanity check: the class sizes of the partition equal
/// `φ(n/d)` and the units number `φ(n)`.
pub fn partition_is_consistent(p: &DivisorPartition) -> Result<bool> {
    let f = factorize(p.n)?;
    if p.units.len() as u64 != f.totient() {
        return Ok(false);
    }
    for (d, members) in &p.classes {
        if members.len() as u64 != totient(p.n / d)? {
            return Ok(false);
        }
        if members.iter().any(|&x| gcd(x, p.n) != *d) {
            return Ok(false);
        }
    }
    let total = p.units.len() + 1 + p.classes.iter().map(|(_, m)| m.len()).sum::<usize>();
    Ok(total as u64 == p.n)
}
