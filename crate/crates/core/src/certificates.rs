//! Lower-bound certificates for witness families.
//!
//! [`prop2_certificate`] builds the homogeneous system with one unknown per
//! blue set and per red set,
//!
//! ```text
//! sum_{i in I_v} x_i - sum_{j in J_v} y_j = 0    for every vertex v
//! sum_i x_i = 0
//! ```
//!
//! and computes its rank exactly. When the families have private vertices
//! and tile the grid, the system has only the trivial solution, so
//! `nv + 1 >= b + r`.
//!
//! [`counting_bound`] evaluates the counting chain
//! `nv >= k(b+r) - br >= k(b+r) - floor((b+r)^2 / 4)` together with the
//! slack of each inequality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::families::{check_conditions, incidence, CoverFamilies};
use crate::Result;

pub const DEFAULT_IDENTITY_SEED: u64 = 0x6b70_6965_7263_6531;
pub const DEFAULT_IDENTITY_TRIALS: usize = 100;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination on
/// arbitrary-precision integers. Every intermediate entry is a minor of the
/// input, so each division is exact.
pub fn exact_rank(matrix: &[Vec<i64>]) -> usize {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in below.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub nv: usize,
    pub b: usize,
    pub r: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kernel_trivial: bool,
    /// `b + r - 1`.
    pub implied_bound: usize,
    /// `nv >= b + r - 1`.
    pub holds: bool,
}

impl fmt::Display for RankCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate: rank")?;
        writeln!(f, "nv: {}", self.nv)?;
        writeln!(f, "b: {}", self.b)?;
        writeln!(f, "r: {}", self.r)?;
        writeln!(f, "rows: {}", self.rows)?;
        writeln!(f, "cols: {}", self.cols)?;
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(f, "kernel_trivial: {}", self.kernel_trivial)?;
        writeln!(f, "implied_bound: {}", self.implied_bound)?;
        writeln!(f, "holds: {} >= {} {}", self.nv, self.implied_bound, self.holds)
    }
}

/// The `(nv + 1) × (b + r)` coefficient matrix: row `v` has `+1` on the
/// columns of `I_v` and `-1` on `b + J_v`; the last row is `1` on the first
/// `b` columns.
pub fn system_matrix(fam: &CoverFamilies) -> Vec<Vec<i64>> {
    let (b, r) = (fam.b(), fam.r());
    let inc = incidence(fam);
    let mut m = Vec::with_capacity(fam.nv() + 1);
    for v in 0..fam.nv() {
        let mut row = vec![0i64; b + r];
        for &i in inc.i(v) {
            row[i] = 1;
        }
        for &j in inc.j(v) {
            row[b + j] = -1;
        }
        m.push(row);
    }
    let mut last = vec![0i64; b + r];
    last[..b].fill(1);
    m.push(last);
    m
}

/// Requires conditions (4) and (5).
pub fn prop2_certificate(fam: &CoverFamilies) -> Result<RankCertificate> {
    check_conditions(fam, 0).require(&[4, 5])?;
    let m = system_matrix(fam);
    let (b, r) = (fam.b(), fam.r());
    let rank = exact_rank(&m);
    let kernel_trivial = rank == b + r;
    assert!(kernel_trivial, "private vertices and an exact tiling force a trivial kernel");
    let implied_bound = b + r - 1;
    Ok(RankCertificate {
        nv: fam.nv(),
        b,
        r,
        rows: m.len(),
        cols: b + r,
        rank,
        kernel_trivial,
        implied_bound,
        holds: fam.nv() >= implied_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    pub k: usize,
    pub nv: usize,
    pub b: usize,
    pub r: usize,
    /// `sum_v |I_v| + |J_v|`.
    pub sum_incidence: usize,
    /// `sum_v |I_v| |J_v|`.
    pub sum_products: usize,
    /// `k(b+r) - br`.
    pub bound: i64,
    /// `k(b+r) - floor((b+r)^2 / 4)`.
    pub relaxed_bound: i64,
    /// `sum_incidence - k(b+r)`.
    pub slack10: i64,
    /// `sum_v (|I_v||J_v| - |I_v| - |J_v| + 1)`.
    pub slack12_total: i64,
    pub holds: bool,
}

impl fmt::Display for CountingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate: counting")?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "nv: {}", self.nv)?;
        writeln!(f, "b: {}", self.b)?;
        writeln!(f, "r: {}", self.r)?;
        writeln!(f, "sum_incidence: {}", self.sum_incidence)?;
        writeln!(f, "sum_products: {}", self.sum_products)?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "relaxed_bound: {}", self.relaxed_bound)?;
        writeln!(f, "slack10: {}", self.slack10)?;
        writeln!(f, "slack12_total: {}", self.slack12_total)?;
        writeln!(f, "holds: {} >= {} {}", self.nv, self.bound, self.holds)
    }
}

/// Requires conditions (1), (3) and (5).
pub fn counting_bound(fam: &CoverFamilies, k: usize) -> Result<CountingReport> {
    check_conditions(fam, k).require(&[1, 3, 5])?;
    let inc = incidence(fam);
    let (b, r) = (fam.b(), fam.r());
    let mut sum_incidence = 0;
    let mut sum_products = 0;
    let mut slack12_total = 0i64;
    for v in 0..fam.nv() {
        let (ni, nj) = (inc.i(v).len(), inc.j(v).len());
        sum_incidence += ni + nj;
        sum_products += ni * nj;
        slack12_total += (ni * nj) as i64 - (ni + nj) as i64 + 1;
    }
    assert_eq!(sum_products, b * r, "an exact tiling has total area br");
    let s = (b + r) as i64;
    let k = k as i64;
    let bound = k * s - (b * r) as i64;
    let relaxed_bound = k * s - s * s / 4;
    let slack10 = sum_incidence as i64 - k * s;
    let nv = fam.nv() as i64;
    debug_assert_eq!(nv, bound + slack10 + slack12_total);
    let holds = nv >= bound;
    assert!(holds && bound >= relaxed_bound);
    Ok(CountingReport {
        k: k as usize,
        nv: fam.nv(),
        b,
        r,
        sum_incidence,
        sum_products,
        bound,
        relaxed_bound,
        slack10,
        slack12_total,
        holds,
    })
}

/// Checks `sum_v (sum_{I_v} x)(sum_{J_v} y) = (sum x)(sum y)` at `trials`
/// seeded random points with coordinates in `[-100, 100]`. Requires (5).
pub fn identity_check(fam: &CoverFamilies, trials: usize, seed: u64) -> Result<bool> {
    check_conditions(fam, 0).require(&[5])?;
    Ok(identity_failures(fam, trials, seed) == 0)
}

/// Number of failing trials of the identity, without checking condition (5)
/// first. Families that double-cover a grid cell are expected to fail.
pub fn identity_failures(fam: &CoverFamilies, trials: usize, seed: u64) -> usize {
    let inc = incidence(fam);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let x: Vec<i64> = (0..fam.b()).map(|_| rng.gen_range(-100..=100)).collect();
        let y: Vec<i64> = (0..fam.r()).map(|_| rng.gen_range(-100..=100)).collect();
        let lhs: i64 = (0..fam.nv())
            .map(|v| inc.i(v).iter().map(|&i| x[i]).sum::<i64>() * inc.j(v).iter().map(|&j| y[j]).sum::<i64>())
            .sum();
        let rhs = x.iter().sum::<i64>() * y.iter().sum::<i64>();
        if lhs != rhs {
            failures += 1;
        }
    }
    failures
}
