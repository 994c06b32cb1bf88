//! Canonical forms for small edge-colored graphs.
//!
//! The form is the minimum adjacency encoding over all labelings reachable by
//! individualization and refinement: vertices are split into ordered cells by
//! their per-color neighbor counts into every other cell, a non-singleton cell
//! is split by individualizing each of its vertices in turn, and every
//! discrete partition yields a labeling. Vertices of a cell that are twins
//! (same color to every third vertex) are interchangeable, so only one of
//! them is individualized.

use super::{MultiColoredGraph, Row};
use crate::error::capability;
use crate::Result;

pub const MAX_CANON_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SwapPolicy {
    /// Only vertices may be relabeled.
    #[default]
    ColorFixed,
    /// Vertices and colors may be relabeled simultaneously.
    ColorPermuting,
}

/// Byte string equal for two graphs iff they are isomorphic under `policy`.
pub fn canonical_form(g: &MultiColoredGraph, policy: SwapPolicy) -> Result<Vec<u8>> {
    if g.n() > MAX_CANON_VERTICES {
        return Err(capability(format!(
            "canonical form supports at most {MAX_CANON_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    match policy {
        SwapPolicy::ColorFixed => Ok(color_fixed_form(g)),
        SwapPolicy::ColorPermuting => {
            let mut best: Option<Vec<u8>> = None;
            for perm in permutations(g.t()) {
                let form = color_fixed_form(&g.recolor(&perm)?);
                if best.as_ref().is_none_or(|b| form < *b) {
                    best = Some(form);
                }
            }
            Ok(best.expect("at least one color permutation"))
        }
    }
}

pub fn are_isomorphic(g1: &MultiColoredGraph, g2: &MultiColoredGraph, policy: SwapPolicy) -> Result<bool> {
    let (a, b) = (canonical_form(g1, policy)?, canonical_form(g2, policy)?);
    Ok(g1.n() == g2.n() && g1.t() == g2.t() && a == b)
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                rec(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; t], &mut out);
    out
}

struct Canon<'a> {
    g: &'a MultiColoredGraph,
    /// `code[u][v]`: 0 for no edge, `c + 1` for color `c`.
    code: Vec<Vec<u8>>,
    best: Option<Vec<u8>>,
}

fn color_fixed_form(g: &MultiColoredGraph) -> Vec<u8> {
    let n = g.n();
    let code = (0..n)
        .map(|u| (0..n).map(|v| g.color_of(u, v).map_or(0, |c| c as u8 + 1)).collect())
        .collect();
    let mut canon = Canon { g, code, best: None };
    let cells = if n == 0 { Vec::new() } else { vec![(0..n).collect::<Vec<_>>()] };
    canon.search(cells);
    let mut out = vec![n as u8, g.t() as u8];
    out.extend(canon.best.unwrap_or_default());
    out
}

impl Canon<'_> {
    fn search(&mut self, mut cells: Vec<Vec<usize>>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let enc = self.encode(&order);
            if self.best.as_ref().is_none_or(|b| enc < *b) {
                self.best = Some(enc);
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.search(next);
        }
    }

    fn twins(&self, u: usize, w: usize) -> bool {
        (0..self.g.n()).all(|x| x == u || x == w || self.code[u][x] == self.code[w][x])
    }

    /// Splits cells by neighbor-count signatures until stable. Depends only on
    /// the graph and the ordered partition, never on vertex names.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let t = self.g.t();
        loop {
            let masks: Vec<Row> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
            let mut split = None;
            for (ci, cell) in cells.iter().enumerate() {
                if cell.len() < 2 {
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks
                            .iter()
                            .flat_map(|&m| (0..t).map(move |c| (self.g.row(c, v) & m).count_ones()))
                            .collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                if keyed.first().map(|k| &k.0) != keyed.last().map(|k| &k.0) {
                    let mut parts: Vec<Vec<usize>> = Vec::new();
                    let mut last: Option<&Vec<u32>> = None;
                    for (sig, v) in &keyed {
                        if last != Some(sig) {
                            parts.push(Vec::new());
                            last = Some(sig);
                        }
                        parts.last_mut().unwrap().push(*v);
                    }
                    split = Some((ci, parts));
                    break;
                }
            }
            match split {
                Some((ci, parts)) => {
                    cells.splice(ci..=ci, parts);
                }
                None => return,
            }
        }
    }

    /// Column-major upper triangle of the relabeled adjacency matrix.
    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for j in 1..n {
            for i in 0..j {
                out.push(self.code[order[i]][order[j]]);
            }
        }
        out
    }
}
