use super::{Conclusion, Ctx, ProofRecord, RangeEntry, SearchLimits};
use crate::boxes::{to_boxf, validate_family, BoxFamily, DiscreteBox, SubBox};
use crate::error::capability;
use crate::Result;

pub const MAX_COVER_CELLS: u128 = 64;
pub const MAX_COVER_BOXES: usize = 12;
pub const MAX_CANDIDATES: u128 = 1_000_000;

struct Candidate {
    cells: u64,
    masks: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct BoxSearch {
    pub sizes: Vec<usize>,
    pub max_m: usize,
    pub nodes: u64,
    pub conclusion: Conclusion,
    pub witness: Option<BoxFamily>,
    pub record: ProofRecord,
}

impl BoxSearch {
    pub fn minimum(&self) -> Option<usize> {
        match self.conclusion {
            Conclusion::Minimum(m) => Some(m),
            _ => None,
        }
    }
}

fn cell_index(sizes: &[usize], point: &[usize]) -> usize {
    point.iter().zip(sizes).fold(0, |acc, (&a, &n)| acc * n + a)
}

fn candidates(space: &DiscreteBox) -> Vec<Candidate> {
    let sizes = space.sizes();
    let proper: Vec<Vec<u64>> = sizes.iter().map(|&n| (1..(1u64 << n) - 1).collect()).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; sizes.len()];
    'outer: loop {
        let masks: Vec<u64> = pick.iter().enumerate().map(|(i, &p)| proper[i][p]).collect();
        let sb = SubBox::from_masks(masks.clone());
        let mut cells = 0u64;
        let mut point = vec![0usize; sizes.len()];
        loop {
            if sb.contains(&point) {
                cells |= 1 << cell_index(sizes, &point);
            }
            let mut axis = sizes.len();
            loop {
                if axis == 0 {
                    break;
                }
                axis -= 1;
                point[axis] += 1;
                if point[axis] < sizes[axis] {
                    break;
                }
                point[axis] = 0;
            }
            if point.iter().all(|&a| a == 0) {
                break;
            }
        }
        out.push(Candidate { cells, masks });
        let mut axis = sizes.len();
        loop {
            if axis == 0 {
                break 'outer;
            }
            axis -= 1;
            pick[axis] += 1;
            if pick[axis] < proper[axis].len() {
                break;
            }
            pick[axis] = 0;
        }
    }
    out
}

struct Cover<'a> {
    full: u64,
    by_cell: Vec<Vec<usize>>,
    cands: &'a [Candidate],
    largest: u32,
}

impl Cover<'_> {
    fn dfs(&self, covered: u64, chosen: &mut Vec<usize>, limit: &mut usize, best: &mut Option<Vec<usize>>, ctx: &Ctx, pending: &mut u64) -> bool {
        if !ctx.tick(pending) {
            return false;
        }
        if covered == self.full {
            *best = Some(chosen.clone());
            *limit = chosen.len() - 1;
            return true;
        }
        let left = (self.full & !covered).count_ones();
        if chosen.len() + left.div_ceil(self.largest) as usize > *limit {
            return true;
        }
        let cell = (!covered).trailing_zeros() as usize;
        for &c in &self.by_cell[cell] {
            if self.cands[c].cells & covered == 0 {
                chosen.push(c);
                let go = self.dfs(covered | self.cands[c].cells, chosen, limit, best, ctx, pending);
                chosen.pop();
                if !go {
                    return false;
                }
            }
        }
        true
    }
}

/// Fewest nontrivial sub-boxes (every factor a proper nonempty subset)
/// partitioning `space`, among partitions with at most `max_m` parts.
pub fn min_nontrivial_boxes(space: &DiscreteBox, max_m: usize, limits: &SearchLimits) -> Result<BoxSearch> {
    if space.volume() > MAX_COVER_CELLS {
        return Err(capability(format!("box volume {} exceeds {MAX_COVER_CELLS} cells", space.volume())));
    }
    if max_m > MAX_COVER_BOXES {
        return Err(capability(format!("max_m = {max_m} exceeds {MAX_COVER_BOXES}")));
    }
    let count: u128 = space.sizes().iter().map(|&n| (1u128 << n) - 2).product();
    if count > MAX_CANDIDATES {
        return Err(capability(format!("{count} candidate sub-boxes exceed {MAX_CANDIDATES}")));
    }
    let cands = candidates(space);
    let volume = space.volume() as usize;
    let full = if volume == 64 { u64::MAX } else { (1 << volume) - 1 };
    let mut by_cell = vec![Vec::new(); volume];
    for (idx, c) in cands.iter().enumerate() {
        for (cell, list) in by_cell.iter_mut().enumerate() {
            if c.cells >> cell & 1 == 1 {
                list.push(idx);
            }
        }
    }
    // larger boxes first so good incumbents appear early
    for list in &mut by_cell {
        list.sort_by_key(|&i| (std::cmp::Reverse(cands[i].cells.count_ones()), i));
    }
    let largest = cands.iter().map(|c| c.cells.count_ones()).max().unwrap_or(1);
    let cover = Cover { full, by_cell, cands: &cands, largest };

    let ctx = Ctx::new(limits);
    let roots = cover.by_cell[0].clone();
    let per_branch = ctx.run_branches(&roots, |&c, pending| {
        let mut limit = max_m;
        let mut best = None;
        let mut chosen = vec![c];
        cover.dfs(cands[c].cells, &mut chosen, &mut limit, &mut best, &ctx, pending);
        best
    })?;
    let winner = per_branch.into_iter().flatten().fold(None::<Vec<usize>>, |acc, sol| match acc {
        Some(a) if a.len() <= sol.len() => Some(a),
        _ => Some(sol),
    });
    let witness = match &winner {
        Some(sol) => Some(BoxFamily::new(
            space.clone(),
            sol.iter().map(|&c| SubBox::from_masks(cands[c].masks.clone())).collect(),
        )?),
        None => None,
    };
    let conclusion = match (ctx.stop_reason(), &witness) {
        (Some(why), _) => Conclusion::Inconclusive(why),
        (None, None) => Conclusion::NoneUpTo(max_m),
        (None, Some(w)) => {
            let v = validate_family(w);
            if v.partition && v.all_nontrivial {
                Conclusion::Minimum(w.m())
            } else {
                Conclusion::Failed("witness rejected by the box checker".into())
            }
        }
    };
    let sizes: Vec<String> = space.sizes().iter().map(usize::to_string).collect();
    let mut record = ProofRecord::new("min-nontrivial-partition")
        .param("axes", sizes.join(" x "))
        .param("max_m", max_m)
        .justify("exact cover over all nontrivial sub-boxes, branching on the first uncovered cell")
        .justify("lower bound: uncovered cells divided by the largest candidate volume, rounded up");
    record.ranges.push(RangeEntry {
        label: format!("{} candidate sub-boxes", cands.len()),
        nodes: ctx.nodes(),
        result: conclusion.to_string(),
    });
    record.nodes = ctx.nodes();
    record.elapsed_ms = ctx.elapsed_ms();
    record.conclusion = conclusion.clone();
    if let Some(w) = &witness {
        record.witness("partition", to_boxf(w));
    }
    Ok(BoxSearch { sizes: space.sizes().to_vec(), max_m, nodes: ctx.nodes(), conclusion, witness, record })
}
