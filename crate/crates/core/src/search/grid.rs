//! Tilings of the grid `[b] × [r]` by product sets `I × J`.
//!
//! Under the five family conditions the incidence boxes of a witness family
//! tile the grid, every row and every column lies in at least `k` boxes, and
//! every row and column has a box whose row (column) set is that line alone.
//! A graph on `m` vertices with the property therefore yields such a tiling
//! with `m` boxes, which is what these searches rule out or enumerate.

use std::collections::{HashMap, HashSet};
use std::time::Duration;

use super::{Conclusion, Ctx, ProofRecord, RangeEntry, SearchLimits};
use crate::constructions::{blowup_four_cycle, build_extremal, enumerate_pairs, BipartitePair};
use crate::error::{capability, usage};
use crate::families::{check_conditions, graph_from_families, grid_boxes, CoverFamilies};
use crate::graph::{canonical_form, check_property, to_ecg, MultiColoredGraph, SwapPolicy};
use crate::text::join_indices;
use crate::Result;

pub const MAX_GRID_SIDE: usize = 8;
pub const MAX_GRID_BOXES: usize = 16;
/// Depth of the sequential expansion whose nodes become parallel work items.
const SPLIT_DEPTH: usize = 2;

/// A box `I × J` as row and column bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tile {
    pub rows: u8,
    pub cols: u8,
}

fn members(mask: u8) -> Vec<usize> {
    (0..8).filter(|&i| mask >> i & 1 == 1).collect()
}

impl Tile {
    pub fn row_set(&self) -> Vec<usize> {
        members(self.rows)
    }

    pub fn col_set(&self) -> Vec<usize> {
        members(self.cols)
    }
}

fn tiles_text(tiles: &[Tile]) -> String {
    tiles.iter().map(|t| format!("{} x {}\n", join_indices(&t.row_set()), join_indices(&t.col_set()))).collect()
}

/// Families on the ground set of tiles: `B_i` holds the tiles meeting row
/// `i`, `R_j` those meeting column `j`.
pub fn tiles_to_families(b: usize, r: usize, tiles: &[Tile]) -> Result<CoverFamilies> {
    let blue = (0..b).map(|i| (0..tiles.len()).filter(|&v| tiles[v].rows >> i & 1 == 1).collect()).collect();
    let red = (0..r).map(|j| (0..tiles.len()).filter(|&v| tiles[v].cols >> j & 1 == 1).collect()).collect();
    CoverFamilies::new(tiles.len(), blue, red)
}

/// Checks a tiling with the family checkers, which share no code with the search.
fn tiling_is_valid(b: usize, r: usize, k: usize, singletons: bool, tiles: &[Tile]) -> bool {
    let Ok(fam) = tiles_to_families(b, r, tiles) else {
        return false;
    };
    let report = check_conditions(&fam, k);
    let needed: &[usize] = if singletons { &[1, 2, 3, 4, 5] } else { &[1, 2, 3, 5] };
    needed.iter().all(|&c| report.holds(c)) && grid_boxes(&fam).is_ok_and(|bx| bx.len() == tiles.len())
}

#[derive(Debug, Clone, Copy)]
struct State {
    free: [u8; MAX_GRID_SIDE],
    row_hits: [u8; MAX_GRID_SIDE],
    col_hits: [u8; MAX_GRID_SIDE],
    row_single: u8,
    col_single: u8,
}

struct Problem {
    b: usize,
    r: usize,
    k: u8,
    singletons: bool,
    /// Every line in exactly `k` boxes.
    exact: bool,
    /// Skip boxes that differ only by swapping interchangeable lines.
    symmetry: bool,
}

impl Problem {
    fn root(&self) -> State {
        let full = ((1u16 << self.r) - 1) as u8;
        let mut free = [0; MAX_GRID_SIDE];
        free[..self.b].fill(full);
        State { free, row_hits: [0; 8], col_hits: [0; 8], row_single: 0, col_single: 0 }
    }

    /// Boxes still needed, or `None` when some line can no longer be satisfied.
    fn lower_bound(&self, st: &State) -> Option<usize> {
        let mut lb = 0u8;
        let mut any_free = false;
        let mut unsat_rows = 0u8;
        let mut col_free = [0u8; MAX_GRID_SIDE];
        for i in 0..self.b {
            let f = st.free[i];
            let u = f.count_ones() as u8;
            any_free |= u > 0;
            let need = self.k.saturating_sub(st.row_hits[i]);
            if u < need {
                return None;
            }
            if self.singletons && st.row_single >> i & 1 == 0 {
                if u == 0 {
                    return None;
                }
                unsat_rows += 1;
            }
            lb = lb.max(need);
            for (j, c) in col_free.iter_mut().enumerate().take(self.r) {
                *c += f >> j & 1;
            }
        }
        let mut unsat_cols = 0u8;
        for j in 0..self.r {
            let need = self.k.saturating_sub(st.col_hits[j]);
            if col_free[j] < need {
                return None;
            }
            if self.singletons && st.col_single >> j & 1 == 0 {
                if col_free[j] == 0 {
                    return None;
                }
                unsat_cols += 1;
            }
            lb = lb.max(need);
        }
        lb = lb.max(unsat_rows).max(unsat_cols);
        if any_free {
            lb = lb.max(1);
        }
        Some(lb as usize)
    }

    fn place(&self, st: &State, t: Tile) -> Option<State> {
        let mut next = *st;
        for i in members(t.rows) {
            next.free[i] &= !t.cols;
            next.row_hits[i] += 1;
            if self.exact && next.row_hits[i] > self.k {
                return None;
            }
        }
        for j in members(t.cols) {
            next.col_hits[j] += 1;
            if self.exact && next.col_hits[j] > self.k {
                return None;
            }
        }
        if t.rows.count_ones() == 1 {
            next.row_single |= t.rows;
        }
        if t.cols.count_ones() == 1 {
            next.col_single |= t.cols;
        }
        Some(next)
    }

    /// Boxes through the first uncovered cell (row-major) that avoid covered
    /// cells. Rows above it are full, so `I` starts at its row.
    fn candidates(&self, st: &State) -> Vec<Tile> {
        let Some(i0) = (0..self.b).find(|&i| st.free[i] != 0) else {
            return Vec::new();
        };
        let j0 = st.free[i0].trailing_zeros();
        let rest = st.free[i0] & !(1 << j0);
        let (row_prev, col_prev) = if self.symmetry { self.equivalent_lines(st) } else { ([0; 8], [0; 8]) };
        let prefix_closed = |set: u8, prev: &[u8; 8]| members(set).into_iter().all(|x| prev[x] & !set == 0);
        let mut out = Vec::new();
        let mut sub = rest;
        loop {
            let cols = sub | 1 << j0;
            if prefix_closed(cols, &col_prev) {
                let fits: u8 = (i0 + 1..self.b).filter(|&i| st.free[i] & cols == cols).map(|i| 1 << i).sum();
                let mut rows = fits;
                loop {
                    if prefix_closed(rows | 1 << i0, &row_prev) {
                        out.push(Tile { rows: rows | 1 << i0, cols });
                    }
                    if rows == 0 {
                        break;
                    }
                    rows = (rows - 1) & fits;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        out
    }

    /// For each line, the earlier lines it can be swapped with: same free
    /// cells, same hit count and same singleton status. The rest of the
    /// search cannot tell such lines apart, so a box only needs to take a
    /// prefix of each class.
    fn equivalent_lines(&self, st: &State) -> ([u8; 8], [u8; 8]) {
        let mut rows = [0u8; 8];
        for i in 0..self.b {
            for i2 in 0..i {
                if st.free[i2] == st.free[i]
                    && st.row_hits[i2] == st.row_hits[i]
                    && (st.row_single >> i2 & 1) == (st.row_single >> i & 1)
                {
                    rows[i] |= 1 << i2;
                }
            }
        }
        let column = |j: usize| -> u8 { (0..self.b).map(|i| (st.free[i] >> j & 1) << i).sum() };
        let mut cols = [0u8; 8];
        for j in 0..self.r {
            for j2 in 0..j {
                if column(j2) == column(j)
                    && st.col_hits[j2] == st.col_hits[j]
                    && (st.col_single >> j2 & 1) == (st.col_single >> j & 1)
                {
                    cols[j] |= 1 << j2;
                }
            }
        }
        (rows, cols)
    }

    /// `sink` receives each complete tiling within `limit` and returns the new limit.
    fn dfs(
        &self,
        st: &State,
        tiles: &mut Vec<Tile>,
        limit: &mut usize,
        ctx: &Ctx,
        pending: &mut u64,
        sink: &mut dyn FnMut(&[Tile]) -> usize,
    ) -> bool {
        if !ctx.tick(pending) {
            return false;
        }
        let Some(lb) = self.lower_bound(st) else {
            return true;
        };
        if tiles.len() + lb > *limit {
            return true;
        }
        if lb == 0 {
            *limit = sink(tiles);
            return true;
        }
        for t in self.candidates(st) {
            if let Some(next) = self.place(st, t) {
                tiles.push(t);
                let go = self.dfs(&next, tiles, limit, ctx, pending, sink);
                tiles.pop();
                if !go {
                    return false;
                }
            }
        }
        true
    }

    /// Sequentially expands the tree to `depth`, handing complete tilings
    /// found on the way to `sink` and collecting the nodes at `depth`.
    #[allow(clippy::too_many_arguments)]
    fn expand(
        &self,
        st: &State,
        tiles: &mut Vec<Tile>,
        depth: usize,
        limit: usize,
        ctx: &Ctx,
        pending: &mut u64,
        frontier: &mut Vec<(State, Vec<Tile>)>,
        sink: &mut dyn FnMut(&[Tile]) -> usize,
    ) {
        if depth == 0 {
            frontier.push((*st, tiles.clone()));
            return;
        }
        if !ctx.tick(pending) {
            return;
        }
        let Some(lb) = self.lower_bound(st) else {
            return;
        };
        if tiles.len() + lb > limit {
            return;
        }
        if lb == 0 {
            sink(tiles);
            return;
        }
        for t in self.candidates(st) {
            if let Some(next) = self.place(st, t) {
                tiles.push(t);
                self.expand(&next, tiles, depth - 1, limit, ctx, pending, frontier, sink);
                tiles.pop();
            }
        }
    }

    /// Searches every frontier subtree with its own limit. The first entry
    /// holds what the shallow expansion found, the rest follow frontier order.
    fn run<T: Send + Default>(
        &self,
        ctx: &Ctx,
        max_m: usize,
        collect: impl Fn(&[Tile], &mut T, usize) -> usize + Sync,
    ) -> Result<Vec<T>> {
        let mut shallow = T::default();
        let mut frontier = Vec::new();
        let mut pending = 0;
        self.expand(&self.root(), &mut Vec::new(), SPLIT_DEPTH, max_m, ctx, &mut pending, &mut frontier, &mut |sol| {
            collect(sol, &mut shallow, max_m)
        });
        ctx.flush(&mut pending);
        let mut out = vec![shallow];
        out.extend(ctx.run_branches(&frontier, |(st, start), pending| {
            let mut acc = T::default();
            let mut tiles = start.clone();
            let mut limit = max_m;
            self.dfs(st, &mut tiles, &mut limit, ctx, pending, &mut |sol| collect(sol, &mut acc, max_m));
            acc
        })?);
        Ok(out)
    }
}

fn check_grid_params(b: usize, r: usize, k: usize, max_m: usize) -> Result<()> {
    if k < 1 {
        return Err(usage("k must be at least 1"));
    }
    if !(1..=MAX_GRID_SIDE).contains(&b) || !(1..=MAX_GRID_SIDE).contains(&r) {
        return Err(capability(format!("grid {b} x {r} exceeds the search budget of {MAX_GRID_SIDE} per side")));
    }
    if max_m > MAX_GRID_BOXES {
        return Err(capability(format!("max_m = {max_m} exceeds the search budget {MAX_GRID_BOXES}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSearch {
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub require_singletons: bool,
    pub max_m: usize,
    pub nodes: u64,
    pub elapsed_ms: u128,
    pub conclusion: Conclusion,
    pub witness: Option<Vec<Tile>>,
}

impl GridSearch {
    pub fn minimum(&self) -> Option<usize> {
        match self.conclusion {
            Conclusion::Minimum(m) => Some(m),
            _ => None,
        }
    }

    pub fn record(&self) -> ProofRecord {
        let mut rec = ProofRecord::new("grid-tiling-minimum")
            .param("b", self.b)
            .param("r", self.r)
            .param("k", self.k)
            .param("singletons", self.require_singletons)
            .param("max_m", self.max_m)
            .justify("boxes through the first uncovered cell in row-major order are branched exhaustively");
        rec.nodes = self.nodes;
        rec.elapsed_ms = self.elapsed_ms;
        rec.conclusion = self.conclusion.clone();
        if let Some(w) = &self.witness {
            rec.witness("tiling", tiles_text(w));
        }
        rec
    }
}

/// Least number of disjoint nonempty boxes `I × J` tiling `[b] × [r]` with
/// every row and column in at least `k` boxes (and, if `require_singletons`,
/// a box with `I = {i}` for each row and `J = {j}` for each column), among
/// tilings with at most `max_m` boxes.
pub fn min_grid_boxes(
    b: usize,
    r: usize,
    k: usize,
    require_singletons: bool,
    max_m: usize,
    limits: &SearchLimits,
) -> Result<GridSearch> {
    grid_minimum(b, r, k, require_singletons, max_m, limits, true)
}

fn grid_minimum(
    b: usize,
    r: usize,
    k: usize,
    require_singletons: bool,
    max_m: usize,
    limits: &SearchLimits,
    symmetry: bool,
) -> Result<GridSearch> {
    check_grid_params(b, r, k, max_m)?;
    let ctx = Ctx::new(limits);
    let problem = Problem { b, r, k: k.min(MAX_GRID_SIDE + 1) as u8, singletons: require_singletons, exact: false, symmetry };
    let best: Vec<Option<Vec<Tile>>> = problem.run(&ctx, max_m, |sol, acc: &mut Option<Vec<Tile>>, _| {
        *acc = Some(sol.to_vec());
        sol.len() - 1
    })?;
    let winner = best.into_iter().flatten().fold(None::<Vec<Tile>>, |acc, sol| match acc {
        Some(a) if a.len() <= sol.len() => Some(a),
        _ => Some(sol),
    });
    let (conclusion, witness) = match (ctx.stop_reason(), winner) {
        (Some(why), _) => (Conclusion::Inconclusive(why), None),
        (None, None) => (Conclusion::NoneUpTo(max_m), None),
        (None, Some(w)) if tiling_is_valid(b, r, k, require_singletons, &w) => (Conclusion::Minimum(w.len()), Some(w)),
        (None, Some(w)) => (Conclusion::Failed("witness rejected by the family checker".into()), Some(w)),
    };
    Ok(GridSearch {
        b,
        r,
        k,
        require_singletons,
        max_m,
        nodes: ctx.nodes(),
        elapsed_ms: ctx.elapsed_ms(),
        conclusion,
        witness,
    })
}

/// What is left of the limits after `used_nodes` and `used` time.
fn remaining(limits: &SearchLimits, used_nodes: u64, used: Duration) -> SearchLimits {
    SearchLimits {
        node_budget: limits.node_budget.map(|b| b.saturating_sub(used_nodes)),
        timeout: limits.timeout.map(|t| t.saturating_sub(used)),
        ..limits.clone()
    }
}

/// Shows that no graph on fewer than `4(k-1)` vertices has every vertex in
/// a blue and a red `k`-clique, by ruling out every grid tiling such a graph
/// would induce, and exhibits a graph on exactly `4(k-1)` vertices.
pub fn verify_theorem1(k: usize, limits: &SearchLimits) -> Result<ProofRecord> {
    if k < 2 {
        return Err(usage(format!("k must be at least 2, got {k}")));
    }
    if k > 4 || (k == 4 && !limits.extended) {
        return Err(capability(format!("k = {k} is outside the search budget (k = 4 needs the extended flag)")));
    }
    let start = std::time::Instant::now();
    let target = 4 * (k - 1) - 1;
    let mut rec = ProofRecord::new("min-vertices-two-colors")
        .param("k", k)
        .param("target", target)
        .justify("a graph on m vertices with the property yields blue and red witness cliques; normalizing them keeps all m vertices and gives families meeting all five conditions")
        .justify("their incidence boxes I_v x J_v then tile [b] x [r] with m boxes, every line lies in >= k boxes and every line has a singleton box")
        .justify("b, r >= k because a set of size k meets k distinct sets of the other family; b <= r after swapping the colors")
        .justify("the rank certificate gives m >= b + r - 1, so m <= target forces b + r <= target + 1");
    let mut nodes = 0;
    let mut conclusion = None;
    'outer: for b in k..=MAX_GRID_SIDE {
        for r in b..=MAX_GRID_SIDE {
            if b + r > target + 1 {
                break;
            }
            let gs = min_grid_boxes(b, r, k, true, target, &remaining(limits, nodes, start.elapsed()))?;
            nodes += gs.nodes;
            rec.ranges.push(RangeEntry {
                label: format!("(b, r) = ({b}, {r})"),
                nodes: gs.nodes,
                result: gs.conclusion.to_string(),
            });
            match gs.conclusion {
                Conclusion::NoneUpTo(_) => {}
                Conclusion::Minimum(m) => {
                    rec.witness(format!("tiling of {b} x {r}"), tiles_text(gs.witness.as_deref().unwrap_or(&[])));
                    conclusion = Some(Conclusion::Failed(format!("a tiling of {b} x {r} with {m} boxes exists")));
                    break 'outer;
                }
                other => {
                    conclusion = Some(other);
                    break 'outer;
                }
            }
        }
    }
    let conclusion = conclusion.unwrap_or_else(|| {
        let g = blowup_four_cycle(k).expect("k is in range");
        let ok = g.n() == target + 1 && check_property(&g, k).map(|p| p.holds).unwrap_or(false);
        rec.witness(format!("graph on {} vertices", g.n()), to_ecg(&g));
        if ok {
            Conclusion::Minimum(target + 1)
        } else {
            Conclusion::Failed("the blowup graph does not have the property".into())
        }
    });
    rec.nodes = nodes;
    rec.elapsed_ms = start.elapsed().as_millis();
    rec.conclusion = conclusion;
    Ok(rec)
}

#[derive(Debug, Clone)]
pub struct ExtremalReport {
    pub k: usize,
    /// Labeled tilings found.
    pub tilings: usize,
    pub classes_fixed: usize,
    pub classes_permuting: usize,
    /// One graph per class (colors fixed), in order of first appearance.
    pub representatives: Vec<MultiColoredGraph>,
    /// For each representative, a pair whose extremal graph is isomorphic to it.
    pub matches: Vec<Option<BipartitePair>>,
    pub record: ProofRecord,
}

impl ExtremalReport {
    pub fn all_matched(&self) -> bool {
        self.matches.iter().all(Option::is_some)
    }
}

/// All graphs on `4(k-1)` vertices arising from tilings of the
/// `2(k-1) × 2(k-1)` grid with `4(k-1)` boxes where every line lies in
/// exactly `k` boxes and has a singleton box, up to isomorphism, each
/// matched against the extremal graphs of all complementary pairs.
pub fn enumerate_extremal(k: usize, limits: &SearchLimits) -> Result<ExtremalReport> {
    if !(2..=3).contains(&k) {
        return Err(capability(format!("extremal enumeration supports k in 2..=3, got {k}")));
    }
    let side = 2 * (k - 1);
    let m = 4 * (k - 1);
    let ctx = Ctx::new(limits);
    let problem = Problem { b: side, r: side, k: k as u8, singletons: true, exact: true, symmetry: false };
    let found: Vec<Vec<Vec<Tile>>> = problem.run(&ctx, m, |sol, acc: &mut Vec<Vec<Tile>>, limit| {
        if sol.len() == limit {
            acc.push(sol.to_vec());
        }
        limit
    })?;
    let tilings: Vec<Vec<Tile>> = found.into_iter().flatten().collect();
    let mut rec = ProofRecord::new("extremal-classes")
        .param("k", k)
        .param("grid", format!("{side} x {side}"))
        .param("boxes", m)
        .justify("every line lies in exactly k boxes and has a singleton box; all tilings are enumerated")
        .justify("each tiling is converted to a graph and classified by canonical form");
    rec.nodes = ctx.nodes();
    if let Some(why) = ctx.stop_reason() {
        rec.elapsed_ms = ctx.elapsed_ms();
        rec.conclusion = Conclusion::Inconclusive(why);
        return Ok(ExtremalReport {
            k,
            tilings: tilings.len(),
            classes_fixed: 0,
            classes_permuting: 0,
            representatives: Vec::new(),
            matches: Vec::new(),
            record: rec,
        });
    }

    let mut reps = Vec::new();
    let mut seen_fixed = HashSet::new();
    let mut seen_perm = HashSet::new();
    let mut rejected = 0;
    for tiles in &tilings {
        if !tiling_is_valid(side, side, k, true, tiles) {
            rejected += 1;
            continue;
        }
        let g = graph_from_families(&tiles_to_families(side, side, tiles)?)?;
        seen_perm.insert(canonical_form(&g, SwapPolicy::ColorPermuting)?);
        if seen_fixed.insert(canonical_form(&g, SwapPolicy::ColorFixed)?) {
            reps.push(g);
        }
    }

    let mut by_form: HashMap<Vec<u8>, BipartitePair> = HashMap::new();
    for pair in enumerate_pairs(k, false)? {
        let form = canonical_form(&build_extremal(&pair), SwapPolicy::ColorFixed)?;
        by_form.entry(form).or_insert(pair);
    }
    let mut matches = Vec::with_capacity(reps.len());
    for (idx, g) in reps.iter().enumerate() {
        let hit = by_form.get(&canonical_form(g, SwapPolicy::ColorFixed)?).cloned();
        let ok = check_property(g, k)?.holds;
        let name = match &hit {
            Some(p) => format!("class {idx} = extremal graph of pair {}", p.to_string().trim_end().replace('\n', "/")),
            None => format!("class {idx} unmatched"),
        };
        rec.witness(name, to_ecg(g));
        matches.push(if ok { hit } else { None });
    }
    rec.ranges.push(RangeEntry {
        label: format!("tilings of {side} x {side}"),
        nodes: ctx.nodes(),
        result: format!("{} tilings, {} classes with colors fixed, {} with colors swappable", tilings.len(), reps.len(), seen_perm.len()),
    });
    rec.conclusion = if rejected > 0 {
        Conclusion::Failed(format!("{rejected} tilings rejected by the family checker"))
    } else if matches.iter().any(Option::is_none) {
        Conclusion::Failed("some class is not an extremal pair graph".into())
    } else {
        Conclusion::Enumerated { objects: tilings.len(), classes: reps.len() }
    };
    rec.elapsed_ms = ctx.elapsed_ms();
    Ok(ExtremalReport {
        k,
        tilings: tilings.len(),
        classes_fixed: reps.len(),
        classes_permuting: seen_perm.len(),
        representatives: reps,
        matches,
        record: rec,
    })
}
