//! Witness families: a ground set `0..nv` with a blue family `B_0..B_{b-1}`
//! and a red family `R_0..R_{r-1}` of vertex sets.
//!
//! The five structural conditions, numbered as in [`ConditionReport`]:
//!
//! 1. every set has at least `k` elements;
//! 2. `|B_i ∩ R_j| <= 1` for all `i, j`;
//! 3. both families cover the ground set;
//! 4. every set has a private vertex (one in no other set of its family);
//! 5. `|B_i ∩ R_j| = 1` for all `i, j`.
//!
//! Under (5) the products `I_v × J_v` of the incidence sets tile the grid
//! `[b] × [r]`, which is the view used by the certificates and the search.

use std::fmt;

use crate::error::{precondition, usage, validation};
use crate::graph::{self, MultiColoredGraph, BLUE, RED};
use crate::text::{expect_count, join_indices, lines, parse_index_list, parse_nat, ParseError};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Blue,
    Red,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Blue => "B",
            Family::Red => "R",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFamilies {
    nv: usize,
    blue: Vec<Vec<usize>>,
    red: Vec<Vec<usize>>,
}

impl CoverFamilies {
    /// Sets are sorted and deduplicated; each must be nonempty and inside `0..nv`.
    pub fn new(nv: usize, blue: Vec<Vec<usize>>, red: Vec<Vec<usize>>) -> Result<Self> {
        if blue.is_empty() || red.is_empty() {
            return Err(validation("both families need at least one set"));
        }
        let clean = |fam: Family, sets: Vec<Vec<usize>>| -> Result<Vec<Vec<usize>>> {
            sets.into_iter()
                .enumerate()
                .map(|(i, mut s)| {
                    s.sort_unstable();
                    s.dedup();
                    if s.is_empty() {
                        return Err(validation(format!("{fam}_{i} is empty")));
                    }
                    if let Some(&v) = s.iter().find(|&&v| v >= nv) {
                        return Err(validation(format!("{fam}_{i} contains {v}, outside 0..{nv}")));
                    }
                    Ok(s)
                })
                .collect()
        };
        Ok(CoverFamilies { nv, blue: clean(Family::Blue, blue)?, red: clean(Family::Red, red)? })
    }

    pub fn nv(&self) -> usize {
        self.nv
    }

    pub fn b(&self) -> usize {
        self.blue.len()
    }

    pub fn r(&self) -> usize {
        self.red.len()
    }

    pub fn blue(&self) -> &[Vec<usize>] {
        &self.blue
    }

    pub fn red(&self) -> &[Vec<usize>] {
        &self.red
    }

    pub fn family(&self, fam: Family) -> &[Vec<usize>] {
        match fam {
            Family::Blue => &self.blue,
            Family::Red => &self.red,
        }
    }

    /// `|B_i ∩ R_j|`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        intersection_size(&self.blue[i], &self.red[j])
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| b.binary_search(v).is_ok()).count()
}

/// Members of `sets[idx]` that lie in no other set of `sets`.
fn private_vertices(sets: &[Vec<usize>], idx: usize) -> Vec<usize> {
    sets[idx]
        .iter()
        .copied()
        .filter(|v| sets.iter().enumerate().all(|(o, s)| o == idx || s.binary_search(v).is_err()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// (1)
    SmallSet { family: Family, index: usize, size: usize },
    /// (2)
    LargeIntersection { blue: usize, red: usize, size: usize },
    /// (3)
    Uncovered { family: Family, vertex: usize },
    /// (4): the set is contained in the union of its peers.
    NoPrivateVertex { family: Family, index: usize },
    /// (5)
    IntersectionNotOne { blue: usize, red: usize, size: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SmallSet { family, index, size } => write!(f, "{family}_{index} has size {size}"),
            Violation::LargeIntersection { blue, red, size } | Violation::IntersectionNotOne { blue, red, size } => {
                write!(f, "|B_{blue} & R_{red}| = {size}")
            }
            Violation::Uncovered { family, vertex } => write!(f, "vertex {vertex} is in no {family} set"),
            Violation::NoPrivateVertex { family, index } => {
                write!(f, "{family}_{index} is covered by the other {family} sets")
            }
        }
    }
}

/// Outcome of [`check_conditions`]; `violations[c - 1]` is the first witness
/// against condition `c`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub k: usize,
    pub violations: [Option<Violation>; 5],
}

impl ConditionReport {
    /// `cond` is 1-based.
    pub fn holds(&self, cond: usize) -> bool {
        self.violations[cond - 1].is_none()
    }

    pub fn all_hold(&self) -> bool {
        self.violations.iter().all(Option::is_none)
    }

    pub(crate) fn require(&self, conds: &[usize]) -> Result<()> {
        for &c in conds {
            if let Some(v) = &self.violations[c - 1] {
                return Err(precondition(format!("condition ({c}) fails: {v}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        for (i, v) in self.violations.iter().enumerate() {
            match v {
                None => writeln!(f, "condition ({}): holds", i + 1)?,
                Some(v) => writeln!(f, "condition ({}): fails: {v}", i + 1)?,
            }
        }
        Ok(())
    }
}

pub fn check_conditions(fam: &CoverFamilies, k: usize) -> ConditionReport {
    let sets = [(Family::Blue, &fam.blue), (Family::Red, &fam.red)];
    let small = sets.iter().find_map(|(family, sets)| {
        sets.iter()
            .position(|s| s.len() < k)
            .map(|index| Violation::SmallSet { family: *family, index, size: sets[index].len() })
    });
    let pairs = || (0..fam.b()).flat_map(|i| (0..fam.r()).map(move |j| (i, j)));
    let large = pairs().find_map(|(i, j)| {
        let size = fam.meet(i, j);
        (size > 1).then_some(Violation::LargeIntersection { blue: i, red: j, size })
    });
    let uncovered = sets.iter().find_map(|(family, sets)| {
        (0..fam.nv)
            .find(|v| sets.iter().all(|s| s.binary_search(v).is_err()))
            .map(|vertex| Violation::Uncovered { family: *family, vertex })
    });
    let no_private = sets.iter().find_map(|(family, sets)| {
        (0..sets.len())
            .find(|&i| private_vertices(sets, i).is_empty())
            .map(|index| Violation::NoPrivateVertex { family: *family, index })
    });
    let not_one = pairs().find_map(|(i, j)| {
        let size = fam.meet(i, j);
        (size != 1).then_some(Violation::IntersectionNotOne { blue: i, red: j, size })
    });
    ConditionReport { k, violations: [small, large, uncovered, no_private, not_one] }
}

/// One blue and one red witness clique per vertex from the property check,
/// deduplicated in vertex order.
pub fn extract_witnesses(g: &MultiColoredGraph, k: usize) -> Result<CoverFamilies> {
    if g.t() != 2 {
        return Err(usage(format!("witness families need a 2-colored graph, got t = {}", g.t())));
    }
    let report = graph::check_property(g, k)?;
    if let Some((v, c)) = report.failure {
        return Err(precondition(format!("vertex {v} has no {k}-clique in color {c}")));
    }
    let mut blue: Vec<Vec<usize>> = Vec::new();
    let mut red: Vec<Vec<usize>> = Vec::new();
    for w in report.witnesses {
        let target = if w.color == BLUE { &mut blue } else { &mut red };
        if !target.contains(&w.clique) {
            target.push(w.clique);
        }
    }
    CoverFamilies::new(g.n(), blue, red)
}

/// Brings families satisfying (1)-(3) to families satisfying (1)-(5) on the
/// same ground set, by deleting redundant sets and adding private vertices
/// to sets that miss each other. Deterministic: lowest indices first.
pub fn normalize(fam: &CoverFamilies, k: usize) -> Result<CoverFamilies> {
    check_conditions(fam, k).require(&[1, 2, 3])?;
    let mut blue = fam.blue.clone();
    let mut red = fam.red.clone();
    let mut last_measure = (usize::MAX, usize::MAX);
    loop {
        drop_redundant(&mut blue, &mut red);
        let empty_pairs: Vec<(usize, usize)> = (0..blue.len())
            .flat_map(|i| (0..red.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| intersection_size(&blue[i], &red[j]) == 0)
            .collect();
        let measure = (blue.len() + red.len(), empty_pairs.len());
        assert!(measure < last_measure, "normalization made no progress");
        last_measure = measure;
        let Some(&(i, j)) = empty_pairs.first() else { break };

        let count_in = |sets: &[Vec<usize>], v: usize| sets.iter().filter(|s| s.binary_search(&v).is_ok()).count();
        let pick = |cands: Vec<usize>, other: &[Vec<usize>]| -> (usize, bool) {
            match cands.iter().copied().find(|&v| count_in(other, v) >= 2) {
                Some(v) => (v, true),
                None => (cands[0], false),
            }
        };
        let (bv, b_rich) = pick(private_vertices(&blue, i), &red);
        let (rv, r_rich) = pick(private_vertices(&red, j), &blue);
        if r_rich && !b_rich {
            insert_sorted(&mut blue[i], rv);
        } else {
            insert_sorted(&mut red[j], bv);
        }
    }
    CoverFamilies::new(fam.nv, blue, red)
}

fn insert_sorted(set: &mut Vec<usize>, v: usize) {
    if let Err(pos) = set.binary_search(&v) {
        set.insert(pos, v);
    }
}

/// Deletes, one at a time, the lowest-index set (blue before red) that has
/// no private vertex, until every set has one.
fn drop_redundant(blue: &mut Vec<Vec<usize>>, red: &mut Vec<Vec<usize>>) {
    loop {
        if let Some(i) = (0..blue.len()).find(|&i| private_vertices(blue, i).is_empty()) {
            blue.remove(i);
        } else if let Some(j) = (0..red.len()).find(|&j| private_vertices(red, j).is_empty()) {
            red.remove(j);
        } else {
            return;
        }
    }
}

/// For each vertex `v`, `I_v = { i : v ∈ B_i }` and `J_v = { j : v ∈ R_j }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidencePattern {
    pub blue: Vec<Vec<usize>>,
    pub red: Vec<Vec<usize>>,
}

impl IncidencePattern {
    pub fn i(&self, v: usize) -> &[usize] {
        &self.blue[v]
    }

    pub fn j(&self, v: usize) -> &[usize] {
        &self.red[v]
    }
}

pub fn incidence(fam: &CoverFamilies) -> IncidencePattern {
    let invert = |sets: &[Vec<usize>]| {
        let mut out = vec![Vec::new(); fam.nv];
        for (i, s) in sets.iter().enumerate() {
            for &v in s {
                out[v].push(i);
            }
        }
        out
    };
    IncidencePattern { blue: invert(&fam.blue), red: invert(&fam.red) }
}

/// The product set `I_v × J_v` of one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridBox {
    pub vertex: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// The tiling of `[b] × [r]` by the boxes `I_v × J_v` (vertices with empty
/// incidence on either side contribute nothing and are skipped).
pub fn grid_boxes(fam: &CoverFamilies) -> Result<Vec<GridBox>> {
    check_conditions(fam, 0).require(&[5])?;
    let inc = incidence(fam);
    let boxes: Vec<GridBox> = (0..fam.nv)
        .filter(|&v| !inc.i(v).is_empty() && !inc.j(v).is_empty())
        .map(|v| GridBox { vertex: v, rows: inc.i(v).to_vec(), cols: inc.j(v).to_vec() })
        .collect();
    let mut hits = vec![0usize; fam.b() * fam.r()];
    for bx in &boxes {
        for &i in &bx.rows {
            for &j in &bx.cols {
                hits[i * fam.r() + j] += 1;
            }
        }
    }
    assert!(hits.iter().all(|&h| h == 1), "condition (5) implies an exact tiling");
    Ok(boxes)
}

/// Blue edges join pairs inside a common `B_i`, red edges pairs inside a common `R_j`.
pub fn graph_from_families(fam: &CoverFamilies) -> Result<MultiColoredGraph> {
    let mut g = MultiColoredGraph::new(fam.nv, 2)?;
    for (color, sets) in [(BLUE, &fam.blue), (RED, &fam.red)] {
        for s in sets.iter() {
            for (a, &u) in s.iter().enumerate() {
                for &v in &s[a + 1..] {
                    g.add_edge(u, v, color)?;
                }
            }
        }
    }
    Ok(g)
}

/// Serializes to the `.fam` text format:
///
/// ```text
/// fam 1
/// v <N>
/// B <i1>,<i2>,...     one per blue set, in order
/// R <i1>,<i2>,...     one per red set, in order
/// ```
pub fn to_fam(fam: &CoverFamilies) -> String {
    let mut out = format!("fam 1\nv {}\n", fam.nv);
    for s in &fam.blue {
        out.push_str(&format!("B {}\n", join_indices(s)));
    }
    for s in &fam.red {
        out.push_str(&format!("R {}\n", join_indices(s)));
    }
    out
}

pub fn parse_fam(input: &str) -> Result<CoverFamilies> {
    let ls = lines(input)?;
    let magic = ls[0];
    let args = magic.keyword("fam")?;
    expect_count(&magic, &args, 1)?;
    if args[0].1 != "1" {
        return Err(magic.error(args[0].0, format!("unsupported version `{}`", args[0].1)).into());
    }
    let vl = *ls.get(1).ok_or_else(|| ParseError::new(2, 1, "missing `v` line"))?;
    let args = vl.keyword("v")?;
    expect_count(&vl, &args, 1)?;
    let nv = parse_nat(&vl, args[0].0, args[0].1)?;
    let (mut blue, mut red) = (Vec::new(), Vec::new());
    for line in &ls[2..] {
        let toks = line.tokens()?;
        expect_count(line, &toks[1..], 1)?;
        let (col, list) = toks[1];
        let set = parse_index_list(line, col, list, false)?;
        if let Some(&v) = set.iter().find(|&&v| v >= nv) {
            return Err(line.error(col, format!("vertex {v} out of range 0..{nv}")).into());
        }
        match toks[0].1 {
            "B" if red.is_empty() => blue.push(set),
            "B" => return Err(line.error(1, "all B lines must precede the R lines").into()),
            "R" => red.push(set),
            other => return Err(line.error(1, format!("expected `B` or `R`, found `{other}`")).into()),
        }
    }
    let last = ls.last().copied().unwrap_or(vl);
    if blue.is_empty() || red.is_empty() {
        return Err(ParseError::new(last.number + 1, 1, "both families need at least one set").into());
    }
    CoverFamilies::new(nv, blue, red)
}
