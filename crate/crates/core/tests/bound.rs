mod common;

use mopdim_core::bound::{
    base_coloring, build_resolving_set_with, initial_coloring, target_size, Audit, BuildOptions,
};
use mopdim_core::families::{enumerate_mops, fan, random_mop};
use mopdim_core::{build_resolving_set, MopGraph};
use proptest::prelude::*;

const FULL: BuildOptions = BuildOptions {
    verify: true,
    audit: Audit::Full,
};

#[test]
fn initial_colorings_match_the_periodic_layout() {
    assert_eq!(base_coloring(10).black_set().members(), &[1, 3, 6, 8]);
    assert_eq!(base_coloring(9).black_set().members(), &[1, 3, 5, 8]);
    assert_eq!(base_coloring(3).black_set().members(), &[1, 3]);
    for n in 3..=40 {
        let g = random_mop(n, n as u64);
        let (s, _) = initial_coloring(&g);
        assert_eq!(s.black_count(), target_size(n));
        assert_eq!(s.frontier, 4);
    }
}

#[test]
fn fan_fifteen() {
    let g = fan(15);
    let s = build_resolving_set(&g).unwrap();
    assert_eq!(s.len(), 6);
    assert!(common::resolves_all(&common::floyd_warshall(&g), &s));
}

#[test]
fn exhaustive_up_to_ten_with_full_audit() {
    for n in 3..=10 {
        for g in enumerate_mops(n) {
            let (s, report) = build_resolving_set_with(&g, FULL).unwrap();
            assert_eq!(s.len(), target_size(n));
            assert!(report.steps <= n);
            assert!(
                common::resolves_all(&common::floyd_warshall(&g), &s),
                "{:?}",
                g.diagonals()
            );
        }
    }
}

#[test]
fn random_detection_agrees_with_oracle() {
    // 1000 random graphs up to 60 vertices: every structural detection is cross-checked.
    let opts = BuildOptions {
        verify: true,
        audit: Audit::Detection,
    };
    for seed in 0..1000u64 {
        let n = 3 + (seed as usize * 7919) % 58;
        let g = random_mop(n, seed);
        let (s, _) = build_resolving_set_with(&g, opts)
            .unwrap_or_else(|e| panic!("seed {seed}, n {n}: {e}"));
        assert_eq!(s.len(), target_size(n));
    }
}

#[test]
fn thousand_vertices() {
    let g = random_mop(1000, 42);
    let s = build_resolving_set(&g).unwrap();
    assert_eq!(s.len(), 400);
}

#[test]
fn every_case_is_exercised() {
    let mut seen = std::collections::BTreeSet::new();
    for n in 8..=12 {
        for g in enumerate_mops(n) {
            let (_, report) = build_resolving_set_with(&g, FULL).unwrap();
            seen.extend(report.cases.iter().map(|c| format!("{:?}", c.case)));
        }
    }
    let fast = BuildOptions {
        verify: true,
        audit: Audit::Off,
    };
    // Case f is rare: about once per thousand random graphs of order 200.
    for seed in 0..20_000 {
        if seen.len() == 8 {
            break;
        }
        let (_, report) = build_resolving_set_with(&random_mop(200, seed), fast).unwrap();
        seen.extend(report.cases.iter().map(|c| format!("{:?}", c.case)));
    }
    let all: Vec<String> = ["A", "B", "C", "D", "E", "F", "G", "H"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(seen.into_iter().collect::<Vec<_>>(), all);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn size_and_resolution_on_random_graphs(n in 3usize..120, seed in any::<u64>()) {
        let g = random_mop(n, seed);
        let (s, _) = build_resolving_set_with(&g, BuildOptions { verify: false, audit: Audit::Full }).unwrap();
        prop_assert_eq!(s.len(), target_size(n));
        prop_assert!(common::resolves_all(&common::floyd_warshall(&g), &s));
    }

    #[test]
    fn relabelling_by_rotation_keeps_the_size(n in 5usize..60, seed in any::<u64>(), shift in 0u32..60) {
        let g = random_mop(n, seed);
        let k = shift % n as u32;
        let diagonals: Vec<(u32, u32)> = g.diagonals().iter().map(|&(a, b)| ((a - 1 + k) % n as u32 + 1, (b - 1 + k) % n as u32 + 1)).collect();
        let h = MopGraph::from_diagonals(n, &diagonals).unwrap();
        let s = build_resolving_set(&h).unwrap();
        prop_assert_eq!(s.len(), target_size(n));
    }
}
