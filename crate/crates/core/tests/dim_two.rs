mod common;

use std::time::Instant;

use mopdim_core::dim_two::{base_graph, candidate_pairs, verify_characterization};
use mopdim_core::families::{brute_force_beta, enumerate_mops, fan, random_mop, zigzag};
use mopdim_core::{
    decide_dim_two, decide_dim_two_simple, distance_table, embed, is_resolving, VertexSet,
};

#[test]
fn zigzags_have_dimension_two() {
    for n in 3..=50 {
        let g = zigzag(n);
        let s = decide_dim_two(&g).unwrap_or_else(|| panic!("zigzag({n})"));
        assert!(is_resolving(&distance_table(&g), &s).is_resolving());
    }
}

#[test]
fn fans_of_order_seven_and_up_do_not() {
    for n in 7..=30 {
        assert_eq!(decide_dim_two(&fan(n)), None, "fan({n})");
    }
    assert_eq!(decide_dim_two(&fan(20)), None);
    assert_eq!(
        decide_dim_two_simple(&fan(20), &distance_table(&fan(20))),
        None
    );
}

#[test]
fn deciders_agree_with_oracle_up_to_nine() {
    for n in 3..=9 {
        for g in enumerate_mops(n) {
            let (beta, _) = brute_force_beta(&g).unwrap();
            assert!(beta >= 2);
            let fast = decide_dim_two(&g);
            let slow = decide_dim_two_simple(&g, &distance_table(&g));
            assert_eq!(fast.is_some(), beta == 2, "{:?}", g.diagonals());
            assert_eq!(slow.is_some(), beta == 2, "{:?}", g.diagonals());
        }
    }
}

#[test]
fn every_basis_embeds_and_verifies() {
    for n in 3..=9 {
        for g in enumerate_mops(n) {
            let t = distance_table(&g);
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    let s = VertexSet::from_labels([u, v]);
                    if !is_resolving(&t, &s).is_resolving() {
                        assert!(embed(&g, &s, &t).is_err());
                        continue;
                    }
                    let e = embed(&g, &s, &t).unwrap();
                    assert_eq!(e.d, t.get(u, v));
                    assert_eq!(e.coord(u), (0, e.d));
                    assert_eq!(e.coord(v), (e.d, 0));
                    verify_characterization(&g, &e)
                        .unwrap_or_else(|x| panic!("{:?} {s}: {x}", g.diagonals()));
                }
            }
        }
    }
}

#[test]
fn basis_vertices_are_consecutive_low_degree_vertices() {
    for n in 4..=9 {
        for g in enumerate_mops(n) {
            if let Some(s) = decide_dim_two(&g) {
                let (u, v) = (s.members()[0], s.members()[1]);
                assert!(candidate_pairs(&g)
                    .iter()
                    .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)));
            }
        }
    }
}

#[test]
fn tampered_embeddings_are_rejected() {
    let g = zigzag(9);
    let t = distance_table(&g);
    let s = decide_dim_two(&g).unwrap();
    let good = embed(&g, &s, &t).unwrap();
    assert!(verify_characterization(&g, &good).is_ok());
    assert!(base_graph(&g, &good).is_ok());

    // Two vertices on one point.
    let mut bad = good.clone();
    bad.coords[3] = bad.coords[4];
    assert!(verify_characterization(&g, &bad).is_err());

    // An edge stretched beyond Chebyshev distance one.
    let mut bad = good.clone();
    let far = (1..=9u32).find(|&v| {
        v != 1 && !g.has_edge(1, v) && {
            let (a, b) = (good.coord(1), good.coord(v));
            a.0.abs_diff(b.0) > 1 || a.1.abs_diff(b.1) > 1
        }
    });
    if let Some(v) = far {
        bad.coords.swap(0, v as usize - 1);
        assert!(verify_characterization(&g, &bad).is_err());
    }
}

#[test]
fn decider_handles_large_inputs() {
    for &n in &[20_000usize, 200_000] {
        let g = zigzag(n);
        let t0 = Instant::now();
        assert!(decide_dim_two(&g).is_some());
        let g = random_mop(n, 3);
        assert!(decide_dim_two(&g).is_none());
        eprintln!("n = {n}: {:?}", t0.elapsed());
    }
}
