mod common;

use kpierce_core::boxes::{box_families, random_partition, split_to_singletons};
use kpierce_core::certificates::{counting_bound, identity_check, prop2_certificate, system_matrix};
use kpierce_core::families::{check_conditions, incidence, CoverFamilies};
use rand::Rng;

/// Families satisfying (4) and (5) from random tilings with singleton boxes.
fn singleton_families(count: usize, seed: u64) -> Vec<CoverFamilies> {
    let mut rng = common::rng(seed);
    (0..count)
        .map(|_| {
            let (n1, n2) = (rng.gen_range(2..=7), rng.gen_range(2..=7));
            let fam = random_partition(n1, n2, rng.gen_range(0.1..0.7), rng.gen()).unwrap();
            box_families(&split_to_singletons(&fam).unwrap()).unwrap()
        })
        .collect()
}

/// Families satisfying (1), (3) and (5): tilings where every line meets at
/// least `k` boxes.
fn piercing_families(count: usize, seed: u64) -> Vec<(usize, CoverFamilies)> {
    let mut rng = common::rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(2..=4);
        let (n1, n2) = (rng.gen_range(k..=k + 4), rng.gen_range(k..=k + 4));
        let fam = random_partition(n1, n2, rng.gen_range(0.05..0.5), rng.gen()).unwrap();
        let fam = box_families(&fam).unwrap();
        let report = check_conditions(&fam, k);
        if report.holds(1) && report.holds(3) && report.holds(5) {
            out.push((k, fam));
        }
    }
    out
}

#[test]
fn rank_certificate_suite() {
    let fams = singleton_families(200, 2024);
    for fam in &fams {
        let report = check_conditions(fam, 1);
        assert!(report.holds(4) && report.holds(5));
        let cert = prop2_certificate(fam).unwrap();
        assert!(cert.kernel_trivial);
        assert_eq!(cert.rank, common::rational_rank(&system_matrix(fam)));
        assert_eq!(cert.rank, fam.b() + fam.r());
        assert!(fam.nv() + 1 >= fam.b() + fam.r());
    }
}

#[test]
fn counting_suite() {
    for (k, fam) in piercing_families(200, 77) {
        let (b, r, nv) = (fam.b() as i64, fam.r() as i64, fam.nv() as i64);
        let k64 = k as i64;
        assert!(nv >= k64 * (b + r) - b * r, "k={k} b={b} r={r} nv={nv}");

        let inc = incidence(&fam);
        let sum_i: usize = (0..fam.nv()).map(|v| inc.i(v).len() + inc.j(v).len()).sum();
        let sum_p: usize = (0..fam.nv()).map(|v| inc.i(v).len() * inc.j(v).len()).sum();
        assert_eq!(sum_p as i64, b * r);
        let report = counting_bound(&fam, k).unwrap();
        assert_eq!(report.bound, k64 * (b + r) - b * r);
        assert_eq!(report.sum_incidence, sum_i);
        assert_eq!(nv, report.bound + report.slack10 + report.slack12_total);
        assert!(report.holds);
        assert!(identity_check(&fam, 100, k as u64).unwrap());
    }
}
