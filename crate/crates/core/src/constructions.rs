//! Extremal constructions.
//!
//! [`build_extremal`] turns a pair of complementary `(k-1)`-regular bipartite
//! graphs on parts `X`, `Y` of size `2(k-1)` into a 2-colored graph on
//! `4(k-1)` vertices: all `X`–`Y` pairs are edges colored by the pair, two
//! vertices of `X` with a common blue neighbor get a blue edge and two
//! vertices of `Y` with a common red neighbor get a red edge.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{capability, usage, validation};
use crate::graph::{self, canonical_form, MultiColoredGraph, SwapPolicy, BLUE, RED};
use crate::Result;

/// Largest `k` whose extremal graph fits the graph capacity.
pub const MAX_PAIR_K: usize = 33;
pub const MAX_ENUMERATION_K: usize = 4;

/// Complementary `(k-1)`-regular bipartite graphs on `X`, `Y` with
/// `|X| = |Y| = 2(k-1)`, stored as the blue biadjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartitePair {
    k: usize,
    /// Bit `y` of `blue[x]` is set iff `xy` is blue.
    blue: Vec<u64>,
}

impl BipartitePair {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn side(&self) -> usize {
        self.blue.len()
    }

    pub fn is_blue(&self, x: usize, y: usize) -> bool {
        self.blue[x] >> y & 1 == 1
    }

    pub fn blue_rows(&self) -> &[u64] {
        &self.blue
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        (0..self.side()).map(|x| (0..self.side()).map(|y| self.is_blue(x, y) as u8).collect()).collect()
    }
}

impl fmt::Display for BipartitePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.matrix() {
            let s: String = row.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

fn check_k(k: usize) -> Result<()> {
    if !(2..=MAX_PAIR_K).contains(&k) {
        return Err(usage(format!("k must be in 2..={MAX_PAIR_K}, got {k}")));
    }
    Ok(())
}

/// `X = X_1 ∪ X_2`, `Y = Y_1 ∪ Y_2` (first halves first); blue is
/// `X_1 × Y_1 ∪ X_2 × Y_2`.
pub fn block_pair(k: usize) -> Result<BipartitePair> {
    check_k(k)?;
    let h = k - 1;
    let blue = (0..2 * h).map(|x| if x < h { low_bits(h) } else { low_bits(2 * h) & !low_bits(h) }).collect();
    Ok(BipartitePair { k, blue })
}

/// Circulant pair: `x` is blue to `x, x+1, ..., x+k-2` (mod `2(k-1)`). For
/// `k = 3` both colors are 8-cycles.
pub fn cycle_pair(k: usize) -> Result<BipartitePair> {
    check_k(k)?;
    let s = 2 * (k - 1);
    let blue = (0..s).map(|x| (0..k - 1).fold(0u64, |row, d| row | 1 << ((x + d) % s))).collect();
    Ok(BipartitePair { k, blue })
}

/// Validates a square 0/1 matrix of side `2(k-1)` with all line sums `k-1`.
pub fn pair_from_biadjacency(k: usize, matrix: &[Vec<u8>]) -> Result<BipartitePair> {
    check_k(k)?;
    let s = 2 * (k - 1);
    if matrix.len() != s {
        return Err(validation(format!("expected {s} rows, got {}", matrix.len())));
    }
    let mut blue = Vec::with_capacity(s);
    for (x, row) in matrix.iter().enumerate() {
        if row.len() != s {
            return Err(validation(format!("row {x} has {} entries, expected {s}", row.len())));
        }
        let mut bits = 0u64;
        for (y, &e) in row.iter().enumerate() {
            match e {
                0 => {}
                1 => bits |= 1 << y,
                _ => return Err(validation(format!("entry ({x}, {y}) is {e}, expected 0 or 1"))),
            }
        }
        let sum = bits.count_ones() as usize;
        if sum != k - 1 {
            return Err(validation(format!("row {x} sums to {sum}, expected {}", k - 1)));
        }
        blue.push(bits);
    }
    for y in 0..s {
        let sum = blue.iter().filter(|&&r| r >> y & 1 == 1).count();
        if sum != k - 1 {
            return Err(validation(format!("column {y} sums to {sum}, expected {}", k - 1)));
        }
    }
    Ok(BipartitePair { k, blue })
}

/// A union of `k-1` random disjoint permutation matrices, deterministic in
/// `seed`. Each permutation is a random perfect matching of the still-unused
/// entries, which always exists because they form a regular bipartite graph.
pub fn random_pair(k: usize, seed: u64) -> Result<BipartitePair> {
    check_k(k)?;
    let s = 2 * (k - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blue = vec![0u64; s];
    for _ in 0..k - 1 {
        let allowed: Vec<u64> = blue.iter().map(|&r| !r & low_bits(s)).collect();
        let matching = random_perfect_matching(&allowed, &mut rng);
        for (x, y) in matching.into_iter().enumerate() {
            blue[x] |= 1 << y;
        }
    }
    Ok(BipartitePair { k, blue })
}

/// Kuhn's augmenting paths with shuffled visiting orders. `allowed[x]` must
/// describe a regular bipartite graph; returns the partner of each row.
fn random_perfect_matching(allowed: &[u64], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let s = allowed.len();
    let adj: Vec<Vec<usize>> = allowed
        .iter()
        .map(|&row| {
            let mut ys: Vec<usize> = (0..s).filter(|&y| row >> y & 1 == 1).collect();
            ys.shuffle(rng);
            ys
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; s];
    fn augment(x: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                if owner[y].is_none_or(|o| augment(o, adj, seen, owner)) {
                    owner[y] = Some(x);
                    return true;
                }
            }
        }
        false
    }
    let mut order: Vec<usize> = (0..s).collect();
    order.shuffle(rng);
    for x in order {
        let found = augment(x, &adj, &mut vec![false; s], &mut owner);
        assert!(found, "a regular bipartite graph has a perfect matching");
    }
    let mut partner = vec![0; s];
    for (y, o) in owner.into_iter().enumerate() {
        partner[o.expect("perfect")] = y;
    }
    partner
}

/// All 0/1 matrices of side `2(k-1)` with line sums `k-1`; with `up_to_iso`,
/// one representative per class under row and column permutations and
/// transposition (the first one generated).
pub fn enumerate_pairs(k: usize, up_to_iso: bool) -> Result<Vec<BipartitePair>> {
    check_k(k)?;
    if k > MAX_ENUMERATION_K {
        return Err(capability(format!("pair enumeration supports k <= {MAX_ENUMERATION_K}, got {k}")));
    }
    let s = 2 * (k - 1);
    let row_choices: Vec<u64> = (0..1u64 << s).filter(|r| r.count_ones() as usize == k - 1).collect();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(s);
    fill_rows(k, s, &row_choices, up_to_iso, &mut rows, &mut vec![0; s], &mut out);
    if up_to_iso {
        let perms = permutations(s);
        let mut seen = std::collections::HashSet::new();
        out.retain(|p: &BipartitePair| seen.insert(matrix_class_key(&p.blue, &perms)));
    }
    Ok(out)
}

fn fill_rows(
    k: usize,
    s: usize,
    choices: &[u64],
    sorted: bool,
    rows: &mut Vec<u64>,
    col_sums: &mut Vec<usize>,
    out: &mut Vec<BipartitePair>,
) {
    if rows.len() == s {
        out.push(BipartitePair { k, blue: rows.clone() });
        return;
    }
    let remaining = s - rows.len();
    for &row in choices {
        if sorted && rows.last().is_some_and(|&prev| row < prev) {
            continue;
        }
        let ok = (0..s).all(|y| {
            let sum = col_sums[y] + (row >> y & 1) as usize;
            // every column must still be able to reach k-1
            sum <= k - 1 && sum + remaining - 1 >= k - 1
        });
        if !ok {
            continue;
        }
        for (y, c) in col_sums.iter_mut().enumerate() {
            *c += (row >> y & 1) as usize;
        }
        rows.push(row);
        fill_rows(k, s, choices, sorted, rows, col_sums, out);
        rows.pop();
        for (y, c) in col_sums.iter_mut().enumerate() {
            *c -= (row >> y & 1) as usize;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, p, out);
}

/// Invariant of a square 0/1 matrix under row/column permutations and
/// transposition: the least sorted row list over all column permutations,
/// minimized with the same for the transpose.
fn matrix_class_key(rows: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    let s = rows.len();
    let transpose: Vec<u64> =
        (0..s).map(|y| (0..s).fold(0u64, |acc, x| acc | (rows[x] >> y & 1) << x)).collect();
    let key = |m: &[u64]| {
        perms
            .iter()
            .map(|perm| {
                let mut permuted: Vec<u64> =
                    m.iter().map(|&r| (0..s).fold(0u64, |acc, y| acc | (r >> y & 1) << perm[y])).collect();
                permuted.sort_unstable();
                permuted
            })
            .min()
            .expect("nonempty")
    };
    key(rows).min(key(&transpose))
}

/// The graph G(X, Y, B, R) with `X = 0..2(k-1)` and `Y` after it.
pub fn build_extremal(pair: &BipartitePair) -> MultiColoredGraph {
    let s = pair.side();
    let mut g = MultiColoredGraph::new(2 * s, 2).expect("within capacity");
    let add = |g: &mut MultiColoredGraph, u, v, c| g.add_edge(u, v, c).expect("colors never clash");
    for x in 0..s {
        for y in 0..s {
            add(&mut g, x, s + y, if pair.is_blue(x, y) { BLUE } else { RED });
        }
    }
    for x in 0..s {
        for x2 in x + 1..s {
            if pair.blue[x] & pair.blue[x2] != 0 {
                add(&mut g, x, x2, BLUE);
            }
        }
    }
    for y in 0..s {
        for y2 in y + 1..s {
            let common = (0..s).any(|x| !pair.is_blue(x, y) && !pair.is_blue(x, y2));
            if common {
                add(&mut g, s + y, s + y2, RED);
            }
        }
    }
    g
}

/// Alternating 4-cycle with each vertex replaced by a monochromatic
/// `(k-1)`-clique. Groups `V_0..V_3` occupy consecutive ranges; `V_0`, `V_2`
/// are blue cliques, `V_1`, `V_3` red cliques, and the group edges
/// `V_0V_1`, `V_2V_3` are blue, `V_1V_2`, `V_3V_0` red.
pub fn blowup_four_cycle(k: usize) -> Result<MultiColoredGraph> {
    check_k(k)?;
    let h = k - 1;
    let mut g = MultiColoredGraph::new(4 * h, 2)?;
    let group = |v: usize| v / h;
    for u in 0..4 * h {
        for v in u + 1..4 * h {
            let (a, b) = (group(u), group(v));
            let color = if a == b {
                if a % 2 == 0 { BLUE } else { RED }
            } else if b - a == 2 {
                continue;
            } else if (a.min(b) == 0 && a.max(b) == 1) || (a.min(b) == 2 && a.max(b) == 3) {
                BLUE
            } else {
                RED
            };
            g.add_edge(u, v, color)?;
        }
    }
    Ok(g)
}

/// Vertex map from `build_extremal(block_pair(k))` onto `blowup_four_cycle(k)`:
/// `X_1 → V_0`, `X_2 → V_2`, `Y_1 → V_1`, `Y_2 → V_3`.
pub fn block_to_blowup_map(k: usize) -> Vec<usize> {
    let h = k - 1;
    (0..4 * h)
        .map(|v| {
            let (part, off) = (v / h, v % h);
            let group = [0, 2, 1, 3][part];
            group * h + off
        })
        .collect()
}

/// Ways of choosing the bipartite pair for each color pair of a t-color
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairChoice {
    Blocks,
    Cycle,
    /// Independent random pairs, seeded from `seed` and the color pair.
    Random { seed: u64 },
}

impl PairChoice {
    pub fn pair(&self, k: usize, i: usize, j: usize) -> Result<BipartitePair> {
        match *self {
            PairChoice::Blocks => block_pair(k),
            PairChoice::Cycle => cycle_pair(k),
            PairChoice::Random { seed } => {
                random_pair(k, seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (j as u64).rotate_left(32))
            }
        }
    }
}

/// t-color version on parts `X_0..X_{t-1}` of size `2(k-1)` each (part `i`
/// occupies `i*2(k-1)..`). For colors `i < j`, `pair_source(i, j)` colors
/// `X_i × X_j`: blue entries get color `i`, red entries color `j`. Two
/// vertices of `X_i` with a common color-`i` neighbor get a color-`i` edge.
pub fn build_tcolor(
    k: usize,
    t: usize,
    pair_source: impl Fn(usize, usize) -> Result<BipartitePair>,
) -> Result<MultiColoredGraph> {
    check_k(k)?;
    if t < 2 {
        return Err(usage(format!("t must be at least 2, got {t}")));
    }
    let s = 2 * (k - 1);
    let n = t * s;
    if n > graph::MAX_VERTICES {
        return Err(usage(format!("{n} vertices exceeds capacity {}", graph::MAX_VERTICES)));
    }
    let mut g = MultiColoredGraph::new(n, t)?;
    for i in 0..t {
        for j in i + 1..t {
            let pair = pair_source(i, j)?;
            if pair.k() != k {
                return Err(usage(format!("pair for colors ({i}, {j}) has k = {}, expected {k}", pair.k())));
            }
            for x in 0..s {
                for y in 0..s {
                    let c = if pair.is_blue(x, y) { i } else { j };
                    g.add_edge(i * s + x, j * s + y, c)?;
                }
            }
        }
    }
    for i in 0..t {
        for a in 0..s {
            for b in a + 1..s {
                let (u, v) = (i * s + a, i * s + b);
                if g.row(i, u) & g.row(i, v) != 0 {
                    g.add_edge(u, v, i)?;
                }
            }
        }
    }
    Ok(g)
}

pub fn build_tcolor_default(k: usize, t: usize) -> Result<MultiColoredGraph> {
    build_tcolor(k, t, |_, _| block_pair(k))
}

/// `K_4` with its three perfect matchings in three colors: every vertex is
/// in an edge (a 2-clique) of each color on 4 vertices.
pub fn k4_three_coloring() -> MultiColoredGraph {
    MultiColoredGraph::from_edges(4, 3, &[(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)])
        .expect("valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSurvey {
    pub k: usize,
    pub labeled_pairs: usize,
    /// `edges -> number of labeled pairs` in ascending edge order.
    pub histogram: Vec<(usize, usize)>,
    pub min_edges: usize,
    /// `2(k-1)(3k-4)`.
    pub formula: usize,
    pub minimizers: usize,
    /// Isomorphism classes (color-fixed) among minimizing graphs.
    pub minimizer_classes: usize,
    pub minimizer_is_block: bool,
    /// Least intra-part degree over all graphs built.
    pub min_intra_degree: usize,
}

impl EdgeSurvey {
    pub fn unique_block_minimizer(&self) -> bool {
        self.minimizer_classes == 1 && self.minimizer_is_block
    }
}

impl fmt::Display for EdgeSurvey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "survey: edge counts of G(X,Y,B,R)")?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "labeled_pairs: {}", self.labeled_pairs)?;
        for (e, c) in &self.histogram {
            writeln!(f, "edges {e}: {c}")?;
        }
        writeln!(f, "min_edges: {}", self.min_edges)?;
        writeln!(f, "formula: {}", self.formula)?;
        writeln!(f, "minimizers: {}", self.minimizers)?;
        writeln!(f, "minimizer_classes: {}", self.minimizer_classes)?;
        writeln!(f, "minimizer_is_block: {}", self.minimizer_is_block)?;
        writeln!(f, "min_intra_degree: {}", self.min_intra_degree)
    }
}

/// Edge counts of G(X, Y, B, R) over every labeled pair for `k ∈ {3, 4}`.
pub fn min_edges_survey(k: usize) -> Result<EdgeSurvey> {
    if !(3..=4).contains(&k) {
        return Err(capability(format!("edge survey supports k in 3..=4, got {k}")));
    }
    let pairs = enumerate_pairs(k, false)?;
    let s = 2 * (k - 1);
    let mut histogram: HashMap<usize, usize> = HashMap::new();
    let mut min_edges = usize::MAX;
    let mut min_graphs = Vec::new();
    let mut min_intra_degree = usize::MAX;
    for pair in &pairs {
        let g = build_extremal(pair);
        let e = g.edge_count();
        *histogram.entry(e).or_default() += 1;
        let intra = (0..2 * s)
            .map(|v| {
                let part = if v < s { low_bits(s) } else { low_bits(s) << s };
                let row = g.row(BLUE, v) | g.row(RED, v);
                (row & part as u128).count_ones() as usize
            })
            .min()
            .unwrap_or(0);
        min_intra_degree = min_intra_degree.min(intra);
        if e < min_edges {
            min_edges = e;
            min_graphs.clear();
        }
        if e == min_edges {
            min_graphs.push(g);
        }
    }
    let mut classes = std::collections::HashSet::new();
    for g in &min_graphs {
        classes.insert(canonical_form(g, SwapPolicy::ColorFixed)?);
    }
    let block = canonical_form(&build_extremal(&block_pair(k)?), SwapPolicy::ColorFixed)?;
    let mut histogram: Vec<_> = histogram.into_iter().collect();
    histogram.sort_unstable();
    Ok(EdgeSurvey {
        k,
        labeled_pairs: pairs.len(),
        histogram,
        min_edges,
        formula: 2 * (k - 1) * (3 * k - 4),
        minimizers: min_graphs.len(),
        minimizer_classes: classes.len(),
        minimizer_is_block: classes.contains(&block),
        min_intra_degree,
    })
}
