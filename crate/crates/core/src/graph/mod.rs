//! Edge-colored simple graphs and the monochromatic clique-cover property.
//!
//! Vertices are `0..n`, colors `0..t`. With two colors, color [`BLUE`] is `0`
//! and [`RED`] is `1`. Adjacency is stored as one `u128` bit row per vertex
//! per color, which caps the vertex count at [`MAX_VERTICES`].

mod canon;
mod clique;
mod ecg;

use std::fmt;

use rayon::prelude::*;

use crate::error::{precondition, usage};
use crate::Result;

pub use canon::{are_isomorphic, canonical_form, SwapPolicy, MAX_CANON_VERTICES};
pub use clique::find_clique;
pub use ecg::{parse_ecg, to_ecg};

pub const BLUE: usize = 0;
pub const RED: usize = 1;
pub const MAX_VERTICES: usize = 128;

pub(crate) type Row = u128;

/// Iterates the set bits of a row in ascending order.
pub(crate) fn bits(mut row: Row) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if row == 0 {
            None
        } else {
            let v = row.trailing_zeros() as usize;
            row &= row - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiColoredGraph {
    n: usize,
    t: usize,
    /// `adj[c][v]`: neighbors of `v` in color `c`.
    adj: Vec<Vec<Row>>,
}

impl fmt::Debug for MultiColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiColoredGraph")
            .field("n", &self.n)
            .field("t", &self.t)
            .field("edges", &self.edges())
            .finish()
    }
}

impl MultiColoredGraph {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(usage(format!("{n} vertices exceeds capacity {MAX_VERTICES}")));
        }
        if t < 2 {
            return Err(usage(format!("color count must be at least 2, got {t}")));
        }
        Ok(MultiColoredGraph { n, t, adj: vec![vec![0; n]; t] })
    }

    pub fn from_edges(n: usize, t: usize, edges: &[(usize, usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n, t)?;
        for &(u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Adds `{u, v}` in color `c`. Re-adding an edge with its current color is a
    /// no-op; giving an existing edge a different color is a conflict.
    pub fn add_edge(&mut self, u: usize, v: usize, c: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.check_color(c)?;
        if u == v {
            return Err(usage(format!("loop at vertex {u}")));
        }
        match self.color_of(u, v) {
            Some(existing) if existing == c => Ok(()),
            Some(_) => Err(crate::Error::Conflict { u: u.min(v), v: u.max(v) }),
            None => {
                self.adj[c][u] |= 1 << v;
                self.adj[c][v] |= 1 << u;
                Ok(())
            }
        }
    }

    /// Removes `{u, v}` and returns its former color.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Option<usize> {
        let c = self.color_of(u, v)?;
        self.adj[c][u] &= !(1 << v);
        self.adj[c][v] &= !(1 << u);
        Some(c)
    }

    pub fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        (0..self.t).find(|&c| self.adj[c][u] >> v & 1 == 1)
    }

    /// Neighbors of `v` in color `c` as a bit row.
    pub(crate) fn row(&self, c: usize, v: usize) -> Row {
        self.adj[c][v]
    }

    pub fn neighbors(&self, c: usize, v: usize) -> Vec<usize> {
        bits(self.adj[c][v]).collect()
    }

    /// All edges `(u, v, c)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if let Some(c) = self.color_of(u, v) {
                    out.push((u, v, c));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|rows| rows.iter().map(|r| r.count_ones() as usize).sum::<usize>())
            .sum::<usize>()
            / 2
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(usage("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(usage("not a permutation"));
            }
        }
        let mut g = Self::new(self.n, self.t)?;
        for (u, v, c) in self.edges() {
            g.add_edge(perm[u], perm[v], c)?;
        }
        Ok(g)
    }

    /// Returns the graph with color `c` renamed to `perm[c]`.
    pub fn recolor(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.t {
            return Err(usage("color permutation length differs from color count"));
        }
        let mut g = Self::new(self.n, self.t)?;
        for (u, v, c) in self.edges() {
            g.add_edge(u, v, perm[c])?;
        }
        Ok(g)
    }

    /// True when every edge of `self` is an edge of `other` with the same color.
    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self.t <= other.t
            && self.edges().iter().all(|&(u, v, c)| other.color_of(u, v) == Some(c))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(usage(format!("vertex {v} out of range 0..{}", self.n)));
        }
        Ok(())
    }

    pub(crate) fn check_color(&self, c: usize) -> Result<()> {
        if c >= self.t {
            return Err(usage(format!("color {c} out of range 0..{}", self.t)));
        }
        Ok(())
    }
}

/// A monochromatic clique through `vertex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueWitness {
    pub vertex: usize,
    pub color: usize,
    /// Sorted ascending; contains `vertex`.
    pub clique: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub holds: bool,
    /// One witness per `(vertex, color)` in lexicographic order when `holds`.
    pub witnesses: Vec<CliqueWitness>,
    /// First `(vertex, color)` without a k-clique.
    pub failure: Option<(usize, usize)>,
}

impl PropertyReport {
    pub fn witness(&self, vertex: usize, color: usize) -> Option<&CliqueWitness> {
        self.witnesses.get(vertex * self.t + color).filter(|w| w.vertex == vertex && w.color == color)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property: every vertex in a monochromatic {}-clique of each color", self.k)?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "t: {}", self.t)?;
        writeln!(f, "holds: {}", self.holds)?;
        match self.failure {
            Some((v, c)) => writeln!(f, "failure: vertex {v} color {c}")?,
            None => {
                for w in &self.witnesses {
                    writeln!(f, "witness: vertex {} color {} clique {}", w.vertex, w.color, crate::text::join_indices(&w.clique))?;
                }
            }
        }
        if self.t == 2 {
            let bound = 4 * (self.k - 1);
            writeln!(f, "vertex_bound: {} >= {} {}", self.n, bound, self.n >= bound)?;
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(usage(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// Decides whether every vertex lies in a monochromatic `k`-clique of every color.
pub fn check_property(g: &MultiColoredGraph, k: usize) -> Result<PropertyReport> {
    check_k(k)?;
    let mut witnesses = Vec::with_capacity(g.n * g.t);
    let mut failure = None;
    'outer: for v in 0..g.n {
        for c in 0..g.t {
            match find_clique(g, c, v, k)? {
                Some(clique) => witnesses.push(CliqueWitness { vertex: v, color: c, clique }),
                None => {
                    failure = Some((v, c));
                    break 'outer;
                }
            }
        }
    }
    let holds = failure.is_none();
    if !holds {
        witnesses.clear();
    }
    Ok(PropertyReport { k, n: g.n, t: g.t, holds, witnesses, failure })
}

/// Property check without witness collection.
pub fn has_property(g: &MultiColoredGraph, k: usize) -> Result<bool> {
    check_k(k)?;
    for v in 0..g.n {
        for c in 0..g.t {
            if find_clique(g, c, v, k)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub k: usize,
    pub critical: bool,
    /// Edges whose removal keeps the property, in edge-list order.
    pub removable: Vec<(usize, usize, usize)>,
}

impl fmt::Display for CriticalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "critical: {}", self.critical)?;
        for (u, v, c) in &self.removable {
            writeln!(f, "removable: {u} {v} {c}")?;
        }
        Ok(())
    }
}

/// Tests every edge by removal and a full re-check of the property.
pub fn is_edge_critical(g: &MultiColoredGraph, k: usize) -> Result<CriticalityReport> {
    if !has_property(g, k)? {
        return Err(precondition(format!("the {k}-clique property does not hold")));
    }
    let edges = g.edges();
    let keep: Vec<bool> = edges
        .par_iter()
        .map(|&(u, v, _)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            has_property(&h, k).expect("k validated above")
        })
        .collect();
    let removable: Vec<_> = edges.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
    Ok(CriticalityReport { k, critical: removable.is_empty(), removable })
}
