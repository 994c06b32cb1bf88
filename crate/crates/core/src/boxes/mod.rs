//! Discrete boxes `A_1 × ... × A_d` (axis `i` is `0..n_i`, `n_i >= 2`),
//! families of sub-boxes `B_1 × ... × B_d` with arbitrary (not necessarily
//! contiguous) factors, the piercing number of a family, and the reduction
//! of a disjoint 2-dimensional family to a 2-colored graph.

mod boxf;
mod svg;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificates::{prop2_certificate, RankCertificate};
use crate::error::{precondition, usage, validation};
use crate::families::CoverFamilies;
use crate::graph::{MultiColoredGraph, BLUE, MAX_VERTICES, RED};
use crate::Result;

pub use boxf::{parse_boxf, to_boxf};
pub use svg::render_svg;

/// Axis sets are stored as bit masks.
pub const MAX_AXIS: usize = 64;
/// Coverage of overlapping families is decided cell by cell up to this volume.
pub const MAX_MATERIALIZED_CELLS: u128 = 1_000_000;

fn axis_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteBox {
    sizes: Vec<usize>,
}

impl DiscreteBox {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(validation("a box needs at least one axis"));
        }
        if let Some((i, &n)) = sizes.iter().enumerate().find(|(_, &n)| !(2..=MAX_AXIS).contains(&n)) {
            return Err(validation(format!("axis {i} has size {n}, expected 2..={MAX_AXIS}")));
        }
        Ok(DiscreteBox { sizes })
    }

    pub fn d(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn volume(&self) -> u128 {
        self.sizes.iter().map(|&n| n as u128).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubBox {
    masks: Vec<u64>,
}

impl SubBox {
    pub fn from_sets(sets: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for (i, set) in sets.iter().enumerate() {
            let mut m = 0u64;
            for &a in set {
                if a >= MAX_AXIS {
                    return Err(validation(format!("index {a} on axis {i} exceeds {}", MAX_AXIS - 1)));
                }
                m |= 1 << a;
            }
            masks.push(m);
        }
        Ok(SubBox { masks })
    }

    pub fn from_masks(masks: Vec<u64>) -> Self {
        SubBox { masks }
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn mask(&self, axis: usize) -> u64 {
        self.masks[axis]
    }

    pub fn set(&self, axis: usize) -> Vec<usize> {
        (0..MAX_AXIS).filter(|&a| self.masks[axis] >> a & 1 == 1).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.iter().any(|&m| m == 0)
    }

    pub fn volume(&self) -> u128 {
        self.masks.iter().map(|m| m.count_ones() as u128).product()
    }

    pub fn contains(&self, point: &[usize]) -> bool {
        point.iter().zip(&self.masks).all(|(&a, &m)| m >> a & 1 == 1)
    }

    pub fn is_disjoint(&self, other: &SubBox) -> bool {
        self.masks.iter().zip(&other.masks).any(|(a, b)| a & b == 0)
    }

    /// Every factor is nonempty and proper.
    pub fn is_nontrivial(&self, space: &DiscreteBox) -> bool {
        self.masks.iter().zip(&space.sizes).all(|(&m, &n)| m != 0 && m != axis_mask(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxFamily {
    space: DiscreteBox,
    subs: Vec<SubBox>,
}

impl BoxFamily {
    pub fn new(space: DiscreteBox, subs: Vec<SubBox>) -> Result<Self> {
        for (t, sb) in subs.iter().enumerate() {
            if sb.masks.len() != space.d() {
                return Err(validation(format!("sub-box {t} has {} axes, box has {}", sb.masks.len(), space.d())));
            }
            for (i, (&m, &n)) in sb.masks.iter().zip(&space.sizes).enumerate() {
                if m & !axis_mask(n) != 0 {
                    return Err(validation(format!("sub-box {t} leaves axis {i} (size {n})")));
                }
            }
        }
        Ok(BoxFamily { space, subs })
    }

    pub fn space(&self) -> &DiscreteBox {
        &self.space
    }

    pub fn subs(&self) -> &[SubBox] {
        &self.subs
    }

    pub fn m(&self) -> usize {
        self.subs.len()
    }

    fn first_overlap(&self) -> Option<(usize, usize)> {
        (0..self.subs.len()).find_map(|a| {
            (a + 1..self.subs.len())
                .find(|&b| !self.subs[a].is_disjoint(&self.subs[b]))
                .map(|b| (a, b))
        })
    }

    /// Index of the first sub-box containing `point`.
    pub fn owner(&self, point: &[usize]) -> Option<usize> {
        self.subs.iter().position(|s| s.contains(point))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub disjoint: bool,
    /// `None` when the family overlaps and the box is too large to scan.
    pub covering: Option<bool>,
    pub partition: bool,
    pub all_nontrivial: bool,
    pub first_overlap: Option<(usize, usize)>,
    pub first_trivial: Option<usize>,
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "disjoint: {}", self.disjoint)?;
        if let Some((a, b)) = self.first_overlap {
            writeln!(f, "overlap: {a} {b}")?;
        }
        match self.covering {
            Some(c) => writeln!(f, "covering: {c}")?,
            None => writeln!(f, "covering: unknown")?,
        }
        writeln!(f, "partition: {}", self.partition)?;
        writeln!(f, "all_nontrivial: {}", self.all_nontrivial)?;
        if let Some(t) = self.first_trivial {
            writeln!(f, "trivial: {t}")?;
        }
        Ok(())
    }
}

/// Calls `f` on every point of the product of `ranges` (last axis fastest).
fn for_each_point(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut point = vec![0; sizes.len()];
    loop {
        f(&point);
        let mut axis = sizes.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            point[axis] += 1;
            if point[axis] < sizes[axis] {
                break;
            }
            point[axis] = 0;
        }
    }
}

pub fn validate_family(fam: &BoxFamily) -> ValidityReport {
    let first_overlap = fam.first_overlap();
    let disjoint = first_overlap.is_none();
    let covering = if disjoint {
        Some(fam.subs.iter().map(SubBox::volume).sum::<u128>() == fam.space.volume())
    } else if fam.space.volume() <= MAX_MATERIALIZED_CELLS {
        let mut all = true;
        for_each_point(&fam.space.sizes, |p| all &= fam.owner(p).is_some());
        Some(all)
    } else {
        None
    };
    let first_trivial = fam.subs.iter().position(|s| !s.is_nontrivial(&fam.space));
    ValidityReport {
        disjoint,
        covering,
        partition: disjoint && covering == Some(true),
        all_nontrivial: first_trivial.is_none(),
        first_overlap,
        first_trivial,
    }
}

/// Least number of sub-boxes met by an axis-parallel line. A line along axis
/// `i` with the other coordinates fixed to `a_j` meets a nonempty sub-box iff
/// `a_j ∈ B_j` for every `j != i`.
pub fn piercing_number(fam: &BoxFamily) -> usize {
    let d = fam.space.d();
    let live: Vec<&SubBox> = fam.subs.iter().filter(|s| !s.is_empty()).collect();
    let mut best = usize::MAX;
    for axis in 0..d {
        let others: Vec<usize> = (0..d).filter(|&j| j != axis).collect();
        let sizes: Vec<usize> = others.iter().map(|&j| fam.space.sizes[j]).collect();
        for_each_point(&sizes, |coords| {
            let hits = live
                .iter()
                .filter(|s| others.iter().zip(coords).all(|(&j, &a)| s.masks[j] >> a & 1 == 1))
                .count();
            best = best.min(hits);
        });
    }
    best
}

/// Splits `lo..hi` into `parts` contiguous, near-equal pieces.
fn strips(lo: usize, hi: usize, parts: usize) -> Vec<u64> {
    let len = hi - lo;
    (0..parts)
        .map(|p| {
            let (a, b) = (lo + p * len / parts, lo + (p + 1) * len / parts);
            axis_mask(b) & !axis_mask(a)
        })
        .collect()
}

/// The `4(k-1)`-part k-piercing partition of an `n1 × n2` box: each axis is
/// halved (`floor(n/2)` / `ceil(n/2)`); the (low, low) and (high, high)
/// quarters are cut into `k-1` strips across axis 1, the other two quarters
/// into `k-1` strips across axis 2.
pub fn figure1_partition(k: usize, n1: usize, n2: usize) -> Result<BoxFamily> {
    if k < 2 {
        return Err(usage(format!("k must be at least 2, got {k}")));
    }
    for n in [n1, n2] {
        if n < 2 * (k - 1) {
            return Err(usage(format!("axis size {n} is below 2(k-1) = {}", 2 * (k - 1))));
        }
    }
    let space = DiscreteBox::new(vec![n1, n2])?;
    let (h1, h2) = (n1 / 2, n2 / 2);
    let halves1 = [(0, h1), (h1, n1)];
    let halves2 = [(0, h2), (h2, n2)];
    let mut subs = Vec::with_capacity(4 * (k - 1));
    for (q1, &(a1, b1)) in halves1.iter().enumerate() {
        for (q2, &(a2, b2)) in halves2.iter().enumerate() {
            let full1 = axis_mask(b1) & !axis_mask(a1);
            let full2 = axis_mask(b2) & !axis_mask(a2);
            if q1 == q2 {
                subs.extend(strips(a1, b1, k - 1).into_iter().map(|s| SubBox::from_masks(vec![s, full2])));
            } else {
                subs.extend(strips(a2, b2, k - 1).into_iter().map(|s| SubBox::from_masks(vec![full1, s])));
            }
        }
    }
    BoxFamily::new(space, subs)
}

/// Product partition into contiguous near-equal blocks, `cuts[i]` per axis.
/// Sub-boxes are listed with the last axis varying fastest.
pub fn grid_partition(space: &DiscreteBox, cuts: &[usize]) -> Result<BoxFamily> {
    if cuts.len() != space.d() {
        return Err(usage(format!("{} cut counts for a {}-dimensional box", cuts.len(), space.d())));
    }
    for (i, (&c, &n)) in cuts.iter().zip(&space.sizes).enumerate() {
        if c < 1 || c > n {
            return Err(usage(format!("axis {i}: cannot cut size {n} into {c} parts")));
        }
    }
    let pieces: Vec<Vec<u64>> = cuts.iter().zip(&space.sizes).map(|(&c, &n)| strips(0, n, c)).collect();
    let mut subs = Vec::new();
    for_each_point(cuts, |p| {
        subs.push(SubBox::from_masks(p.iter().enumerate().map(|(i, &b)| pieces[i][b]).collect()));
    });
    BoxFamily::new(space.clone(), subs)
}

/// Random partition of an `n1 × n2` box into product sets with arbitrary
/// (non-contiguous) factors. Each part grows from the first uncovered cell,
/// taking every other admissible column, then row, with probability `density`.
pub fn random_partition(n1: usize, n2: usize, density: f64, seed: u64) -> Result<BoxFamily> {
    let space = DiscreteBox::new(vec![n1, n2])?;
    if !(0.0..=1.0).contains(&density) {
        return Err(usage(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut free = vec![axis_mask(n2); n1];
    let mut subs = Vec::new();
    while let Some(i0) = free.iter().position(|&f| f != 0) {
        let j0 = free[i0].trailing_zeros();
        let mut cols = 1u64 << j0;
        for j in j0 + 1..n2 as u32 {
            if free[i0] >> j & 1 == 1 && rng.gen_bool(density) {
                cols |= 1 << j;
            }
        }
        let mut rows = 1u64 << i0;
        for (i, f) in free.iter().enumerate().skip(i0 + 1) {
            if f & cols == cols && rng.gen_bool(density) {
                rows |= 1 << i;
            }
        }
        for (i, f) in free.iter_mut().enumerate() {
            if rows >> i & 1 == 1 {
                *f &= !cols;
            }
        }
        subs.push(SubBox::from_masks(vec![rows, cols]));
    }
    BoxFamily::new(space, subs)
}

/// Splits sub-boxes until every row `x` is the whole first factor of some
/// sub-box and every column likewise: `I × J` with `x ∈ I`, `|I| >= 2` becomes
/// `{x} × J` (in place) and `(I \ {x}) × J` (appended). Disjointness and
/// coverage are preserved.
pub fn split_to_singletons(fam: &BoxFamily) -> Result<BoxFamily> {
    require_plane(fam)?;
    let mut subs = fam.subs.clone();
    for axis in 0..2 {
        for x in 0..fam.space.sizes[axis] {
            let bit = 1u64 << x;
            if subs.iter().any(|s| s.masks[axis] == bit) {
                continue;
            }
            if let Some(t) = subs.iter().position(|s| s.masks[axis] & bit != 0 && !s.is_empty()) {
                let mut rest = subs[t].clone();
                rest.masks[axis] &= !bit;
                subs[t].masks[axis] = bit;
                subs.push(rest);
            }
        }
    }
    BoxFamily::new(fam.space.clone(), subs)
}

fn require_plane(fam: &BoxFamily) -> Result<()> {
    if fam.space.d() != 2 {
        return Err(usage(format!("operation needs a 2-dimensional box, got d = {}", fam.space.d())));
    }
    Ok(())
}

/// One vertex per sub-box; blue when two boxes meet a common line along
/// axis 1 (their axis-2 factors intersect), red when they meet a common line
/// along axis 2.
pub fn reduce_to_graph(fam: &BoxFamily) -> Result<MultiColoredGraph> {
    require_plane(fam)?;
    if let Some((a, b)) = fam.first_overlap() {
        return Err(precondition(format!("sub-boxes {a} and {b} overlap")));
    }
    if fam.m() > MAX_VERTICES {
        return Err(usage(format!("{} sub-boxes exceeds graph capacity {MAX_VERTICES}", fam.m())));
    }
    let mut g = MultiColoredGraph::new(fam.m(), 2)?;
    for (a, s) in fam.subs.iter().enumerate() {
        for (b, t) in fam.subs.iter().enumerate().skip(a + 1) {
            if s.is_empty() || t.is_empty() {
                continue;
            }
            let blue = s.masks[1] & t.masks[1] != 0;
            let red = s.masks[0] & t.masks[0] != 0;
            assert!(!(blue && red), "disjoint boxes cannot share both a row and a column");
            if blue {
                g.add_edge(a, b, BLUE)?;
            } else if red {
                g.add_edge(a, b, RED)?;
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub m: usize,
    pub n1: usize,
    pub n2: usize,
    pub partition: bool,
    /// First `x ∈ A_1` with no sub-box whose first factor is `{x}`.
    pub missing_row_singleton: Option<usize>,
    pub missing_col_singleton: Option<usize>,
    /// Present when the family is a partition with both singleton conditions.
    pub certificate: Option<RankCertificate>,
    /// `n1 + n2 - 1`.
    pub bound: usize,
    pub piercing: usize,
}

impl DecompositionReport {
    pub fn singletons(&self) -> bool {
        self.missing_row_singleton.is_none() && self.missing_col_singleton.is_none()
    }

    /// `m >= n1 + n2 - 1`, established by the rank certificate.
    pub fn bound_certified(&self) -> bool {
        self.certificate.is_some() && self.m >= self.bound
    }

    pub fn tight(&self) -> bool {
        self.bound_certified() && self.m == self.bound
    }

    /// `4(p - 1)` for piercing number `p >= 2`.
    pub fn piercing_bound(&self) -> Option<usize> {
        (self.piercing >= 2).then(|| 4 * (self.piercing - 1))
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m: {}", self.m)?;
        writeln!(f, "axes: {} {}", self.n1, self.n2)?;
        writeln!(f, "partition: {}", self.partition)?;
        match self.missing_row_singleton {
            Some(x) => writeln!(f, "row_singletons: missing {x}")?,
            None => writeln!(f, "row_singletons: ok")?,
        }
        match self.missing_col_singleton {
            Some(y) => writeln!(f, "col_singletons: missing {y}")?,
            None => writeln!(f, "col_singletons: ok")?,
        }
        match &self.certificate {
            Some(c) => writeln!(f, "rank: {} of {}", c.rank, c.cols)?,
            None => writeln!(f, "rank: not applicable")?,
        }
        writeln!(f, "bound: {} >= {} {}", self.m, self.bound, self.bound_certified())?;
        writeln!(f, "tight: {}", self.tight())?;
        writeln!(f, "piercing: {}", self.piercing)?;
        if let Some(pb) = self.piercing_bound() {
            writeln!(f, "piercing_bound: {} >= {} {}", self.m, pb, self.m >= pb)?;
        }
        Ok(())
    }
}

/// Views a 2-dimensional family as a decomposition of the complete bipartite
/// graph on `(A_1, A_2)`. For a partition where every `x ∈ A_1` is the whole
/// first factor of some sub-box (and likewise for `A_2`), sub-boxes become
/// ground elements with `I = B_1`, `J = B_2` and the rank certificate gives
/// `m >= |A_1| + |A_2| - 1`.
pub fn corollary5_check(fam: &BoxFamily, require_cover: bool) -> Result<DecompositionReport> {
    require_plane(fam)?;
    let validity = validate_family(fam);
    if require_cover && !validity.partition {
        return Err(precondition("the family is not a partition of the box"));
    }
    let (n1, n2) = (fam.space.sizes[0], fam.space.sizes[1]);
    let missing = |axis: usize, n: usize| (0..n).find(|&x| !fam.subs.iter().any(|s| s.masks[axis] == 1 << x));
    let missing_row_singleton = missing(0, n1);
    let missing_col_singleton = missing(1, n2);
    let certificate = if validity.partition && missing_row_singleton.is_none() && missing_col_singleton.is_none() {
        let fams = box_families(fam)?;
        Some(prop2_certificate(&fams)?)
    } else {
        None
    };
    Ok(DecompositionReport {
        m: fam.m(),
        n1,
        n2,
        partition: validity.partition,
        missing_row_singleton,
        missing_col_singleton,
        certificate,
        bound: n1 + n2 - 1,
        piercing: piercing_number(fam),
    })
}

/// Ground set = sub-boxes; `B_x` = sub-boxes whose first factor holds `x`,
/// `R_y` = sub-boxes whose second factor holds `y`.
pub fn box_families(fam: &BoxFamily) -> Result<CoverFamilies> {
    require_plane(fam)?;
    let collect = |axis: usize, n: usize| -> Vec<Vec<usize>> {
        (0..n).map(|x| (0..fam.m()).filter(|&t| fam.subs[t].masks[axis] >> x & 1 == 1).collect()).collect()
    };
    CoverFamilies::new(fam.m(), collect(0, fam.space.sizes[0]), collect(1, fam.space.sizes[1]))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::tests::four_cycle;
    use crate::graph::{are_isomorphic, check_property, SwapPolicy};

    pub(crate) fn staircase() -> BoxFamily {
        let sets: [[&[usize]; 2]; 5] =
            [[&[0], &[0, 1, 2]], [&[1, 2], &[0]], [&[1], &[1, 2]], [&[2], &[1]], [&[2], &[2]]];
        let subs = sets.iter().map(|[a, b]| SubBox::from_sets(&[a.to_vec(), b.to_vec()]).unwrap()).collect();
        BoxFamily::new(DiscreteBox::new(vec![3, 3]).unwrap(), subs).unwrap()
    }

    fn square(n: usize) -> DiscreteBox {
        DiscreteBox::new(vec![n, n]).unwrap()
    }

    #[test]
    fn box_validation() {
        assert!(DiscreteBox::new(vec![]).is_err());
        assert!(DiscreteBox::new(vec![2, 1]).is_err());
        assert!(DiscreteBox::new(vec![65]).is_err());
        let sb = SubBox::from_sets(&[vec![0, 2]]).unwrap();
        assert!(BoxFamily::new(DiscreteBox::new(vec![2]).unwrap(), vec![sb]).is_err());
    }

    #[test]
    fn singleton_cells() {
        let fam = grid_partition(&square(2), &[2, 2]).unwrap();
        let v = validate_family(&fam);
        assert!(v.partition && v.all_nontrivial);
        let whole = grid_partition(&square(2), &[1, 1]).unwrap();
        let v = validate_family(&whole);
        assert!(v.disjoint && v.covering == Some(true) && !v.all_nontrivial);
        assert_eq!(v.first_trivial, Some(0));
    }

    #[test]
    fn overlapping_coverage_scanned() {
        let a = SubBox::from_sets(&[vec![0, 1], vec![0]]).unwrap();
        let b = SubBox::from_sets(&[vec![0], vec![0, 1]]).unwrap();
        let fam = BoxFamily::new(square(2), vec![a.clone(), b.clone()]).unwrap();
        let v = validate_family(&fam);
        assert_eq!((v.disjoint, v.covering, v.partition, v.first_overlap), (false, Some(false), false, Some((0, 1))));
        let c = SubBox::from_sets(&[vec![1], vec![1]]).unwrap();
        let fam = BoxFamily::new(square(2), vec![a, b, c]).unwrap();
        assert_eq!(validate_family(&fam).covering, Some(true));
    }

    #[test]
    fn piercing_examples() {
        for k in 2..=5 {
            let fam = grid_partition(&square(k), &[k, k]).unwrap();
            assert_eq!(fam.m(), k * k);
            assert_eq!(piercing_number(&fam), k);
        }
        let whole = grid_partition(&DiscreteBox::new(vec![2, 3]).unwrap(), &[1, 1]).unwrap();
        assert_eq!(piercing_number(&whole), 1);
        let empty = BoxFamily::new(square(2), vec![]).unwrap();
        assert_eq!(piercing_number(&empty), 0);
        let line = grid_partition(&DiscreteBox::new(vec![5]).unwrap(), &[3]).unwrap();
        assert_eq!(piercing_number(&line), 3);
    }

    #[test]
    fn grid_in_three_dimensions() {
        let fam = grid_partition(&DiscreteBox::new(vec![2, 2, 2]).unwrap(), &[2, 2, 2]).unwrap();
        assert_eq!(fam.m(), 8);
        let v = validate_family(&fam);
        assert!(v.partition && v.all_nontrivial);
        assert!(grid_partition(&square(2), &[3, 1]).is_err());
    }

    #[test]
    fn figure1_shapes() {
        let f = figure1_partition(2, 2, 2).unwrap();
        assert_eq!(f.m(), 4);
        assert!(f.subs().iter().all(|s| s.volume() == 1));
        for k in 2..=6 {
            let n = 2 * (k - 1);
            let f = figure1_partition(k, n, n).unwrap();
            assert_eq!(f.m(), 4 * (k - 1));
            assert!(validate_family(&f).partition);
            assert_eq!(piercing_number(&f), k, "k={k}");
        }
        let odd = figure1_partition(3, 5, 7).unwrap();
        assert!(validate_family(&odd).partition);
        assert_eq!(piercing_number(&odd), 3);
        assert!(figure1_partition(3, 3, 4).is_err());
        assert!(figure1_partition(1, 4, 4).is_err());
    }

    #[test]
    fn reduction_examples() {
        let g = reduce_to_graph(&figure1_partition(2, 2, 2).unwrap()).unwrap();
        assert!(are_isomorphic(&g, &four_cycle(), SwapPolicy::ColorFixed).unwrap());
        let g = reduce_to_graph(&figure1_partition(3, 4, 4).unwrap()).unwrap();
        assert_eq!(g.n(), 8);
        assert!(check_property(&g, 3).unwrap().holds);
        let grid = reduce_to_graph(&grid_partition(&square(3), &[3, 3]).unwrap()).unwrap();
        // cell (a, b) is vertex 3a + b; blue joins equal b, red equal a
        for u in 0..9 {
            for v in u + 1..9 {
                let expect = if u % 3 == v % 3 {
                    Some(BLUE)
                } else if u / 3 == v / 3 {
                    Some(RED)
                } else {
                    None
                };
                assert_eq!(grid.color_of(u, v), expect);
            }
        }
        let overlap = BoxFamily::new(square(2), vec![SubBox::from_sets(&[vec![0], vec![0]]).unwrap(); 2]).unwrap();
        assert!(reduce_to_graph(&overlap).is_err());
        assert!(reduce_to_graph(&grid_partition(&DiscreteBox::new(vec![2, 2, 2]).unwrap(), &[2, 2, 2]).unwrap()).is_err());
    }

    #[test]
    fn random_partitions() {
        for seed in 0..50 {
            let fam = random_partition(2 + seed as usize % 6, 3 + seed as usize % 5, 0.4, seed).unwrap();
            assert!(validate_family(&fam).partition, "seed {seed}");
            let split = split_to_singletons(&fam).unwrap();
            assert!(validate_family(&split).partition);
            let rep = corollary5_check(&split, true).unwrap();
            assert!(rep.singletons() && rep.bound_certified(), "seed {seed}");
        }
        assert_eq!(random_partition(4, 4, 0.0, 1).unwrap().m(), 16);
        assert_eq!(random_partition(4, 4, 1.0, 1).unwrap().m(), 1);
        assert_eq!(random_partition(5, 3, 0.5, 9).unwrap(), random_partition(5, 3, 0.5, 9).unwrap());
    }

    #[test]
    fn staircase_decomposition() {
        let rep = corollary5_check(&staircase(), true).unwrap();
        assert!(rep.partition && rep.singletons());
        assert_eq!(rep.certificate.as_ref().unwrap().rank, 6);
        assert!(rep.tight());
        assert_eq!(rep.bound, 5);
        let whole = grid_partition(&square(3), &[1, 1]).unwrap();
        let rep = corollary5_check(&whole, true).unwrap();
        assert!(!rep.singletons() && rep.certificate.is_none());
        let fig = corollary5_check(&figure1_partition(3, 4, 4).unwrap(), false).unwrap();
        assert_eq!((fig.piercing, fig.m, fig.piercing_bound()), (3, 8, Some(8)));
        let mut broken = staircase();
        broken.subs.pop();
        assert!(corollary5_check(&broken, true).is_err());
        assert!(corollary5_check(&broken, false).unwrap().certificate.is_none());
    }
}
