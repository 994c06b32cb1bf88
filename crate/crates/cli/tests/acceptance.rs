//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use kpierce_cli::run;
use kpierce_core::boxes::{
    box_families, corollary5_check, figure1_partition, parse_boxf, piercing_number, random_partition,
    reduce_to_graph, split_to_singletons, to_boxf, validate_family, BoxFamily, DiscreteBox,
};
use kpierce_core::certificates::{counting_bound, identity_failures, prop2_certificate, system_matrix};
use kpierce_core::constructions::{build_extremal, build_tcolor_default, enumerate_pairs, min_edges_survey};
use kpierce_core::families::{check_conditions, parse_fam, to_fam};
use kpierce_core::graph::{
    are_isomorphic, canonical_form, check_property, parse_ecg, to_ecg, MultiColoredGraph, SwapPolicy, BLUE, RED,
};
use kpierce_core::search::{
    brute_force_graphs, enumerate_extremal, min_nontrivial_boxes, verify_theorem1, Conclusion, ExtremalReport,
    ProofRecord, SearchLimits,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_LIMIT: Duration = Duration::from_secs(10);
const C2_SMALL_LIMIT: Duration = Duration::from_secs(60);
const C2_K4_LIMIT: Duration = Duration::from_secs(30 * 60);
const C7_K3_LIMIT: Duration = Duration::from_secs(5);
const C7_K4_LIMIT: Duration = Duration::from_secs(10 * 60);
const C8_SEARCH_LIMIT: Duration = Duration::from_secs(60);
const SUITE_SIZE: usize = 200;
const IDENTITY_TRIALS: usize = 100;
/// Extremal classes for k = 3 with colors fixed, as found by the enumeration.
const EXTREMAL_CLASSES_K3: usize = 2;
const THREAD_COUNTS: [usize; 3] = [1, 2, 8];

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn alternating_four_cycle() -> MultiColoredGraph {
    MultiColoredGraph::from_edges(4, 2, &[(0, 1, BLUE), (1, 2, RED), (2, 3, BLUE), (0, 3, RED)]).unwrap()
}

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        let pivot: Vec<BigRational> = m[rank].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

fn c1_blowup_tightness() -> Verdict {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for k in 2..=8 {
        let file = dir.path().join(format!("blowup{k}.ecg"));
        let path = file.to_str().unwrap();
        let ks = k.to_string();
        let made = run(["kpierce", "construct", "blowup", "--k", &ks, "-o", path]);
        ensure(made.code == 0, || format!("construct k={k}: {}", made.stderr))?;
        let checked = run(["kpierce", "check-graph", "--k", &ks, path]);
        ensure(checked.code == 0, || format!("check-graph k={k} exit {}", checked.code))?;
        let n = 4 * (k - 1);
        ensure(checked.stdout.contains(&format!("\nn: {n}\n")), || format!("k={k}: expected n = {n}"))?;
    }
    let t = within(start, C1_LIMIT, "k = 2..8")?;
    Ok(format!("k = 2..8 pass on 4(k-1) vertices in {t:?}"))
}

fn expect_minimum(rec: &ProofRecord, m: usize) -> Result<(), String> {
    ensure(rec.conclusion == Conclusion::Minimum(m), || format!("expected minimum {m}, got {}", rec.conclusion))
}

fn c2_lower_bound(records: &mut Vec<(usize, ProofRecord)>) -> Verdict {
    let mut times = Vec::new();
    for k in 2..=3 {
        let start = Instant::now();
        let rec = verify_theorem1(k, &SearchLimits::default()).map_err(|e| e.to_string())?;
        expect_minimum(&rec, 4 * (k - 1))?;
        times.push(within(start, C2_SMALL_LIMIT, &format!("k = {k}"))?);
        records.push((k, rec));
    }
    let start = Instant::now();
    let limits = SearchLimits::default().threads(8).extended();
    let rec = verify_theorem1(4, &limits).map_err(|e| e.to_string())?;
    expect_minimum(&rec, 12)?;
    let t4 = within(start, C2_K4_LIMIT, "k = 4")?;
    records.push((4, rec));
    Ok(format!("minima 4, 8, 12 in {:?}, {:?}, {t4:?}", times[0], times[1]))
}

fn c3_extremal_k2() -> Verdict {
    let rep = enumerate_extremal(2, &SearchLimits::default()).map_err(|e| e.to_string())?;
    ensure(rep.classes_fixed == 1, || format!("{} classes", rep.classes_fixed))?;
    let iso = are_isomorphic(&rep.representatives[0], &alternating_four_cycle(), SwapPolicy::ColorFixed)
        .map_err(|e| e.to_string())?;
    ensure(iso, || "the class is not the alternating 4-cycle".into())?;
    Ok("one class, the alternating 4-cycle".into())
}

fn c4_extremal_k3(reports: &mut Vec<ExtremalReport>) -> Verdict {
    let rep = enumerate_extremal(3, &SearchLimits::default()).map_err(|e| e.to_string())?;
    ensure(rep.classes_fixed >= 2, || format!("only {} classes", rep.classes_fixed))?;
    // independent matching: isomorphism against every labeled pair graph
    let pairs = enumerate_pairs(3, false).map_err(|e| e.to_string())?;
    let graphs: Vec<MultiColoredGraph> = pairs.iter().map(build_extremal).collect();
    for (i, g) in rep.representatives.iter().enumerate() {
        let hit = graphs.iter().any(|h| are_isomorphic(g, h, SwapPolicy::ColorFixed).unwrap());
        ensure(hit, || format!("class {i} matches no extremal pair graph"))?;
    }
    ensure(rep.classes_fixed == EXTREMAL_CLASSES_K3, || {
        format!("class count {} differs from recorded {EXTREMAL_CLASSES_K3}", rep.classes_fixed)
    })?;
    let again = enumerate_extremal(3, &SearchLimits::default()).map_err(|e| e.to_string())?;
    ensure(again.record.stable_text() == rep.record.stable_text(), || "second run differs".into())?;
    let msg = format!(
        "{} tilings, {} classes (colors fixed), {} (colors swappable), all matched",
        rep.tilings, rep.classes_fixed, rep.classes_permuting
    );
    reports.push(rep);
    Ok(msg)
}

fn c5_rank_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..SUITE_SIZE {
        let (n1, n2) = (rng.gen_range(2..=7), rng.gen_range(2..=7));
        let tiling = random_partition(n1, n2, rng.gen_range(0.1..0.7), rng.gen()).map_err(|e| e.to_string())?;
        let fam = box_families(&split_to_singletons(&tiling).unwrap()).unwrap();
        let report = check_conditions(&fam, 1);
        ensure(report.holds(4) && report.holds(5), || format!("trial {trial}: generator broke (4)/(5)"))?;
        let cert = prop2_certificate(&fam).map_err(|e| format!("trial {trial}: {e}"))?;
        let oracle = rational_rank(&system_matrix(&fam));
        ensure(cert.kernel_trivial && oracle == fam.b() + fam.r(), || format!("trial {trial}: nontrivial kernel"))?;
        ensure(fam.nv() + 1 >= fam.b() + fam.r(), || format!("trial {trial}: nv < b + r - 1"))?;
    }
    Ok(format!("{SUITE_SIZE}/{SUITE_SIZE} families: trivial kernel and nv >= b + r - 1"))
}

fn c6_counting_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut per_k = [0usize; 5];
    let mut done = 0;
    while done < SUITE_SIZE {
        let k = 2 + done % 3;
        let (n1, n2) = (rng.gen_range(k..=k + 4), rng.gen_range(k..=k + 4));
        let tiling = random_partition(n1, n2, rng.gen_range(0.05..0.5), rng.gen()).unwrap();
        let fam = box_families(&tiling).unwrap();
        let report = check_conditions(&fam, k);
        if !(report.holds(1) && report.holds(3) && report.holds(5)) {
            continue;
        }
        let (b, r, nv) = (fam.b() as i64, fam.r() as i64, fam.nv() as i64);
        ensure(nv >= k as i64 * (b + r) - b * r, || format!("k={k} b={b} r={r}: nv = {nv} below bound"))?;
        let chain = counting_bound(&fam, k).map_err(|e| e.to_string())?;
        ensure(chain.holds, || "counting report disagrees".into())?;
        let failures = identity_failures(&fam, IDENTITY_TRIALS, done as u64);
        ensure(failures == 0, || format!("identity failed {failures}/{IDENTITY_TRIALS} trials"))?;
        per_k[k] += 1;
        done += 1;
    }
    Ok(format!(
        "{SUITE_SIZE} families (k=2: {}, k=3: {}, k=4: {}), bound and {IDENTITY_TRIALS}/{IDENTITY_TRIALS} identity trials each",
        per_k[2], per_k[3], per_k[4]
    ))
}

fn c7_edge_survey() -> Verdict {
    let mut parts = Vec::new();
    for (k, expected, limit) in [(3, 20, C7_K3_LIMIT), (4, 48, C7_K4_LIMIT)] {
        let start = Instant::now();
        let s = min_edges_survey(k).map_err(|e| e.to_string())?;
        let t = within(start, limit, &format!("k = {k}"))?;
        ensure(s.min_edges == expected && s.formula == expected, || {
            format!("k={k}: min {} formula {}, expected {expected}", s.min_edges, s.formula)
        })?;
        ensure(s.unique_block_minimizer(), || format!("k={k}: {} minimizer classes", s.minimizer_classes))?;
        parts.push(format!("k={k} min {expected} unique block minimizer in {t:?}"));
    }
    Ok(parts.join("; "))
}

fn c8_boxes() -> Verdict {
    for k in 2..=6 {
        let side = 2 * (k - 1);
        let fam = figure1_partition(k, side, side).map_err(|e| e.to_string())?;
        ensure(validate_family(&fam).partition, || format!("k={k}: not a partition"))?;
        ensure(fam.m() == 4 * (k - 1), || format!("k={k}: {} parts", fam.m()))?;
        let p = piercing_number(&fam);
        ensure(p == k, || format!("k={k}: piercing {p}"))?;
        let g = reduce_to_graph(&fam).map_err(|e| e.to_string())?;
        ensure(check_property(&g, k).unwrap().holds, || format!("k={k}: reduced graph fails"))?;
    }
    let mut times = Vec::new();
    for (sizes, max_m, expected) in [(vec![3, 3], 4, 4), (vec![3, 3, 3], 8, 8)] {
        let start = Instant::now();
        let space = DiscreteBox::new(sizes.clone()).unwrap();
        let res = min_nontrivial_boxes(&space, max_m, &SearchLimits::default()).map_err(|e| e.to_string())?;
        ensure(res.minimum() == Some(expected), || format!("{sizes:?}: {}", res.conclusion))?;
        let w = res.witness.as_ref().unwrap();
        let v = validate_family(w);
        ensure(v.partition && v.all_nontrivial, || "witness invalid".into())?;
        times.push(within(start, C8_SEARCH_LIMIT, &format!("{sizes:?}"))?);
    }
    Ok(format!("figure partitions k=2..6 ok; 3x3 -> 4 in {:?}, 3x3x3 -> 8 in {:?}", times[0], times[1]))
}

fn staircase() -> BoxFamily {
    parse_boxf("boxf 1\nd 2\naxes 3 3\nsub 0;0,1,2\nsub 1,2;0\nsub 1;1,2\nsub 2;1\nsub 2;2\n").unwrap()
}

fn c9_staircase() -> Verdict {
    let fam = staircase();
    let rep = corollary5_check(&fam, true).map_err(|e| e.to_string())?;
    ensure(rep.tight() && rep.bound == 5 && rep.m == 5, || format!("report:\n{rep}"))?;
    for drop in 0..fam.m() {
        let subs: Vec<_> = fam.subs().iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, s)| s.clone()).collect();
        let smaller = BoxFamily::new(fam.space().clone(), subs).unwrap();
        ensure(!validate_family(&smaller).partition, || format!("dropping {drop} keeps a partition"))?;
        ensure(corollary5_check(&smaller, true).is_err(), || format!("dropping {drop} still certified"))?;
    }
    Ok("5 = 3 + 3 - 1 tight; every deletion breaks the partition".into())
}

fn c10_tcolor() -> Verdict {
    for (k, t) in [(2, 2), (3, 3), (3, 4), (4, 3)] {
        let g = build_tcolor_default(k, t).map_err(|e| e.to_string())?;
        ensure(g.n() == 2 * t * (k - 1), || format!("({k},{t}): {} vertices", g.n()))?;
        ensure(check_property(&g, k).unwrap().holds, || format!("({k},{t}) fails"))?;
    }
    let found = brute_force_graphs(4, 3, 2, &SearchLimits::default()).map_err(|e| e.to_string())?;
    let g = found.witness.ok_or("no witness on 4 vertices with 3 colors")?;
    let proper = g.edge_count() == 6 && (0..3).all(|c| (0..4).all(|v| g.neighbors(c, v).len() == 1));
    ensure(proper, || "witness is not a proper 3-edge-coloring of K4".into())?;
    let none = brute_force_graphs(3, 3, 2, &SearchLimits::default()).map_err(|e| e.to_string())?;
    ensure(none.witness.is_none() && none.record.conclusion == Conclusion::Absent, || "found on 3 vertices".into())?;
    Ok("t-color constructions pass; K4 exists for t=3, none on 3 vertices".into())
}

fn c11_formats() -> Verdict {
    let mut count = 0;
    let mut entries: Vec<PathBuf> = fs::read_dir(golden()).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for path in entries.iter().filter(|p| p.is_file()) {
        let text = fs::read_to_string(path).unwrap();
        let again = match path.extension().and_then(|e| e.to_str()) {
            Some("ecg") => parse_ecg(&text).map(|g| to_ecg(&g)),
            Some("fam") => parse_fam(&text).map(|f| to_fam(&f)),
            Some("boxf") => parse_boxf(&text).map(|b| to_boxf(&b)),
            _ => continue,
        }
        .map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(again == text, || format!("{} is not byte-identical", path.display()))?;
        count += 1;
    }
    let mut bad: Vec<PathBuf> = fs::read_dir(golden().join("malformed")).unwrap().map(|e| e.unwrap().path()).collect();
    bad.sort();
    for path in &bad {
        let p = path.to_str().unwrap();
        let out = match path.extension().and_then(|e| e.to_str()) {
            Some("ecg") => run(["kpierce", "check-graph", "--k", "2", p]),
            Some("fam") => run(["kpierce", "families", "check", "--k", "2", p]),
            Some("boxf") => run(["kpierce", "box", "check", p]),
            _ => continue,
        };
        ensure(out.code == 2, || format!("{p}: exit {}", out.code))?;
        ensure(out.stderr.starts_with(&format!("error: {p}:")), || format!("{p}: diagnostic `{}`", out.stderr))?;
    }
    Ok(format!("{count} files round-trip, {} malformed rejected with exit 2", bad.len()))
}

fn c12_determinism(records: &[(usize, ProofRecord)], extremal: &[ExtremalReport]) -> Verdict {
    for (k, base) in records {
        for threads in THREAD_COUNTS {
            let limits = SearchLimits { threads, extended: *k == 4, ..SearchLimits::default() };
            let rec = verify_theorem1(*k, &limits).map_err(|e| e.to_string())?;
            ensure(rec.stable_text() == base.stable_text(), || format!("k={k} differs at {threads} threads"))?;
        }
    }
    let base = extremal.first().ok_or("criterion 4 produced no report")?;
    for threads in THREAD_COUNTS {
        let rep = enumerate_extremal(3, &SearchLimits::default().threads(threads)).map_err(|e| e.to_string())?;
        ensure(rep.record.stable_text() == base.record.stable_text(), || format!("extremal differs at {threads}"))?;
        let forms: Vec<Vec<u8>> =
            rep.representatives.iter().map(|g| canonical_form(g, SwapPolicy::ColorFixed).unwrap()).collect();
        let base_forms: Vec<Vec<u8>> =
            base.representatives.iter().map(|g| canonical_form(g, SwapPolicy::ColorFixed).unwrap()).collect();
        ensure(forms == base_forms, || "class representatives differ".into())?;
    }
    Ok(format!("records identical for {THREAD_COUNTS:?} threads (min-graph k=2..4, extremal k=3)"))
}

fn main() {
    let mut records = Vec::new();
    let mut extremal = Vec::new();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match verdict {
            Ok(msg) => println!("PASS criterion {n:>2} {name}: {msg} [{:?}]", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n:>2} {name}: {msg}");
            }
        }
    };
    report(1, "blowup tightness", &mut c1_blowup_tightness);
    report(2, "exhaustive lower bound", &mut || c2_lower_bound(&mut records));
    report(3, "extremal k=2", &mut c3_extremal_k2);
    report(4, "extremal k=3", &mut || c4_extremal_k3(&mut extremal));
    report(5, "rank certificate suite", &mut c5_rank_suite);
    report(6, "counting chain suite", &mut c6_counting_suite);
    report(7, "edge-minimum survey", &mut c7_edge_survey);
    report(8, "boxes", &mut c8_boxes);
    report(9, "staircase decomposition", &mut c9_staircase);
    report(10, "t-color", &mut c10_tcolor);
    report(11, "format round-trip", &mut c11_formats);
    report(12, "determinism", &mut || c12_determinism(&records, &extremal));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
