use kpierce_core::boxes::{figure1_partition, piercing_number, reduce_to_graph};
use kpierce_core::constructions::{blowup_four_cycle, build_extremal, enumerate_pairs};
use kpierce_core::graph::check_property;
use kpierce_core::search::{enumerate_extremal, min_grid_boxes, verify_theorem1, Conclusion, SearchLimits};

#[test]
fn constructions_meet_the_search_bound() {
    for k in 2..=3 {
        let rec = verify_theorem1(k, &SearchLimits::default()).unwrap();
        let Conclusion::Minimum(m) = rec.conclusion else { panic!("k={k}: {}", rec.conclusion) };
        assert_eq!(blowup_four_cycle(k).unwrap().n(), m);
        for pair in enumerate_pairs(k, true).unwrap() {
            let g = build_extremal(&pair);
            assert_eq!(g.n(), m);
            assert!(check_property(&g, k).unwrap().holds);
        }
        let fig = figure1_partition(k, 2 * (k - 1), 2 * (k - 1)).unwrap();
        assert_eq!(fig.m(), m);
        assert_eq!(piercing_number(&fig), k);
        assert!(check_property(&reduce_to_graph(&fig).unwrap(), k).unwrap().holds);
    }
}

/// Planar partitions where every line meets at least k parts need 4(k-1)
/// parts, checked over all small grids.
#[test]
fn piercing_partitions_of_small_grids() {
    for k in 2..=3 {
        for b in 1..=6 {
            for r in b..=6 {
                let gs = min_grid_boxes(b, r, k, false, 4 * (k - 1) - 1, &SearchLimits::default()).unwrap();
                assert_eq!(gs.conclusion, Conclusion::NoneUpTo(4 * (k - 1) - 1), "{b} x {r}, k={k}");
            }
        }
    }
}

#[test]
fn extremal_counts_are_stable() {
    let a = enumerate_extremal(3, &SearchLimits::default()).unwrap();
    let b = enumerate_extremal(3, &SearchLimits::default().threads(3)).unwrap();
    assert_eq!(a.record.stable_text(), b.record.stable_text());
    assert_eq!((a.tilings, a.classes_fixed, a.classes_permuting), (90, 2, 2));
    assert!(a.classes_permuting <= a.classes_fixed);
}
