use super::{Conclusion, Ctx, ProofRecord, RangeEntry, SearchLimits};
use crate::error::{capability, usage};
use crate::graph::{has_property, to_ecg, MultiColoredGraph, MAX_VERTICES};
use crate::Result;

/// Colorings scanned at most.
pub const MAX_BRUTE_COLORINGS: u128 = 100_000_000;

#[derive(Debug, Clone)]
pub struct BruteReport {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub scanned: u64,
    pub witness: Option<MultiColoredGraph>,
    pub record: ProofRecord,
}

/// Whether some `t`-edge-colored graph on `n` vertices has every vertex in a
/// monochromatic `k`-clique of every color. Adding edges never destroys a
/// clique, so only complete colorings are scanned, and since the property
/// is symmetric in the colors the edge `01` is fixed to color 0.
pub fn brute_force_graphs(n: usize, t: usize, k: usize, limits: &SearchLimits) -> Result<BruteReport> {
    if k < 2 || t < 2 || n < 2 {
        return Err(usage(format!("need n, t, k >= 2, got n = {n}, t = {t}, k = {k}")));
    }
    if n > MAX_VERTICES {
        return Err(capability(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let free = pairs.len() - 1;
    let total = (t as u128).checked_pow(free as u32).filter(|&c| c <= MAX_BRUTE_COLORINGS).ok_or_else(|| {
        capability(format!("{t}^{free} colorings exceed the scan budget {MAX_BRUTE_COLORINGS}"))
    })? as u64;

    let ctx = Ctx::new(limits);
    let mut pending = 0;
    let mut witness = None;
    let mut colors = vec![0usize; pairs.len()];
    let mut scanned = 0;
    for code in 0..total {
        if !ctx.tick(&mut pending) {
            break;
        }
        scanned += 1;
        let mut c = code;
        for slot in colors[1..].iter_mut().rev() {
            *slot = (c % t as u64) as usize;
            c /= t as u64;
        }
        let edges: Vec<(usize, usize, usize)> = pairs.iter().zip(&colors).map(|(&(u, v), &c)| (u, v, c)).collect();
        let g = MultiColoredGraph::from_edges(n, t, &edges)?;
        if has_property(&g, k)? {
            witness = Some(g);
            break;
        }
    }
    ctx.flush(&mut pending);

    let mut record = ProofRecord::new("brute-force-colorings")
        .param("n", n)
        .param("t", t)
        .param("k", k)
        .justify("adding edges preserves every monochromatic clique, so complete colorings suffice")
        .justify("the property is invariant under permuting colors, so edge 0-1 is fixed to color 0");
    record.ranges.push(RangeEntry {
        label: format!("{t}^{free} complete colorings in lexicographic order"),
        nodes: scanned,
        result: format!("{scanned} scanned"),
    });
    record.nodes = ctx.nodes();
    record.elapsed_ms = ctx.elapsed_ms();
    record.conclusion = match (&witness, ctx.stop_reason()) {
        (Some(g), _) => {
            record.witness("graph", to_ecg(g));
            Conclusion::Exists
        }
        (None, Some(why)) => Conclusion::Inconclusive(why),
        (None, None) => Conclusion::Absent,
    };
    Ok(BruteReport { n, t, k, scanned, witness, record })
}
