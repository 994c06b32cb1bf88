//! Monochromatic k-clique search through a fixed vertex.
//!
//! Candidates are restricted to the color-neighborhood of the pivot and
//! branched in ascending order, so the first clique found is the
//! lexicographically smallest one. A greedy coloring of the candidate set
//! bounds the clique size that can still be reached.

use super::{MultiColoredGraph, Row};
use crate::error::usage;
use crate::Result;

/// Returns the lexicographically smallest `k`-set containing `v` that is
/// complete in color `color`, or `None` if there is none.
pub fn find_clique(g: &MultiColoredGraph, color: usize, v: usize, k: usize) -> Result<Option<Vec<usize>>> {
    g.check_vertex(v)?;
    g.check_color(color)?;
    if k == 0 {
        return Err(usage("clique size must be at least 1"));
    }
    let mut chosen = Vec::with_capacity(k);
    if !extend(g, color, g.row(color, v), k - 1, &mut chosen) {
        return Ok(None);
    }
    chosen.push(v);
    chosen.sort_unstable();
    Ok(Some(chosen))
}

fn extend(g: &MultiColoredGraph, color: usize, cand: Row, need: usize, chosen: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need || color_bound(g, color, cand) < need {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        if (rest.count_ones() as usize) < need {
            return false;
        }
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        chosen.push(u);
        // only vertices above `u` remain, keeping the branching ascending
        if extend(g, color, rest & g.row(color, u), need - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Number of classes in a greedy sequential coloring of `cand`; an upper bound
/// on the largest clique inside it.
fn color_bound(g: &MultiColoredGraph, color: usize, cand: Row) -> usize {
    let mut uncolored = cand;
    let mut classes = 0;
    while uncolored != 0 {
        classes += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let u = avail.trailing_zeros() as usize;
            uncolored &= !(1 << u);
            avail &= !(1 << u) & !g.row(color, u);
        }
    }
    classes
}

#[cfg(test)]
pub(crate) fn brute_force_clique(g: &MultiColoredGraph, color: usize, v: usize, k: usize) -> Option<Vec<usize>> {
    // reference for tests: scan k-subsets in lexicographic order
    let n = g.n();
    let mut combo: Vec<usize> = (0..k).collect();
    if k > n {
        return None;
    }
    loop {
        if combo.contains(&v)
            && combo.iter().enumerate().all(|(i, &a)| combo[i + 1..].iter().all(|&b| g.color_of(a, b) == Some(color)))
        {
            return Some(combo);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] < n - k + i {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::four_cycle;
    use crate::graph::{BLUE, RED};
    use proptest::prelude::*;

    #[test]
    fn four_cycle_cliques() {
        let g = four_cycle();
        assert_eq!(find_clique(&g, BLUE, 0, 2).unwrap(), Some(vec![0, 1]));
        assert_eq!(find_clique(&g, BLUE, 0, 3).unwrap(), None);
        assert_eq!(find_clique(&g, RED, 0, 1).unwrap(), Some(vec![0]));
        assert!(find_clique(&g, 2, 0, 2).is_err());
        assert!(find_clique(&g, BLUE, 4, 2).is_err());
        assert!(find_clique(&g, BLUE, 0, 0).is_err());
    }

    #[test]
    fn color_bound_on_odd_cycle() {
        let mut g = MultiColoredGraph::new(5, 2).unwrap();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5, BLUE).unwrap();
        }
        assert_eq!(color_bound(&g, BLUE, 0b11111), 3);
        assert_eq!(crate::graph::bits(g.row(BLUE, 0)).collect::<Vec<_>>(), vec![1, 4]);
    }

    fn arb_graph() -> impl Strategy<Value = MultiColoredGraph> {
        (3usize..10).prop_flat_map(|n| {
            proptest::collection::vec(0usize..3, n * (n - 1) / 2).prop_map(move |codes| {
                let mut g = MultiColoredGraph::new(n, 2).unwrap();
                let mut it = codes.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        let c = it.next().unwrap();
                        if c < 2 {
                            g.add_edge(u, v, c).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn matches_lexicographic_scan(g in arb_graph(), k in 1usize..5, v in 0usize..3, c in 0usize..2) {
            prop_assert_eq!(find_clique(&g, c, v, k).unwrap(), brute_force_clique(&g, c, v, k));
        }
    }
}
