#![allow(dead_code)]

use kpierce_core::graph::{has_property, MultiColoredGraph};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank over the rationals by plain Gauss-Jordan elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = m[rank][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Random 2-colored graph: each pair is absent with probability `gap`,
/// otherwise blue or red with equal odds.
pub fn random_graph(n: usize, gap: f64, rng: &mut ChaCha8Rng) -> MultiColoredGraph {
    let mut g = MultiColoredGraph::new(n, 2).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if !rng.gen_bool(gap) {
                g.add_edge(u, v, rng.gen_range(0..2)).unwrap();
            }
        }
    }
    g
}

/// Random graphs with the k-clique property, by rejection.
pub fn property_graphs(count: usize, k: usize, seed: u64) -> Vec<MultiColoredGraph> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(4 * (k - 1)..=4 * (k - 1) + 6);
        let g = random_graph(n, rng.gen_range(0.0..0.3), &mut rng);
        if has_property(&g, k).unwrap() {
            out.push(g);
        }
    }
    out
}

pub fn shuffled(g: &MultiColoredGraph, rng: &mut ChaCha8Rng) -> MultiColoredGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm).unwrap()
}
