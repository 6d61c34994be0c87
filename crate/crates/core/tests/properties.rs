//! Property suites for the module invariants: braid closures, graph parity,
//! signing lemma complementarity, augmentation minimality and spanning tree
//! counts.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plumb_bounds::braid::{random_connected_word, BraidLetter, BraidWord};
use plumb_bounds::catalog::load_fixtures;
use plumb_bounds::sign::Sign;
use plumb_bounds::spanning::{
    alternating_depth_signing, bfs_spanning_tree, check_sign_sum_lemma, compute_beta,
    compute_gamma, enumerate_spanning_trees, minimal_augmentation_fp, SearchMode,
};

fn arb_word() -> impl Strategy<Value = BraidWord> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec((1..n, any::<bool>()), 0..=20).prop_map(move |letters| {
            let letters = letters
                .into_iter()
                .map(|(index, positive)| {
                    BraidLetter::new(index, if positive { Sign::Plus } else { Sign::Minus })
                })
                .collect();
            BraidWord::new(n, letters).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn closure_graph_shape_matches_word(w in arb_word()) {
        let g = w.closure_seifert_graph();
        prop_assert_eq!(g.c(), w.len());
        prop_assert_eq!(g.s, w.strands());
        let all_used = (1..w.strands()).all(|i| w.letters().iter().any(|l| l.index == i));
        prop_assert_eq!(g.is_connected(), all_used);
        // Edges only join consecutive strand circles, so no odd cycles.
        prop_assert!(g.validate().unwrap().is_empty());
    }

    #[test]
    fn component_count_rotation_invariant(w in arb_word(), r in 0usize..40) {
        prop_assert_eq!(
            w.rotated(r).closure_component_count(),
            w.closure_component_count()
        );
    }

    #[test]
    fn padding_preserves_closure_data(w in arb_word()) {
        let padded = w.ensure_all_generators_both_signs();
        prop_assert_eq!(padded.closure_component_count(), w.closure_component_count());
        for counts in padded.letter_counts() {
            prop_assert!(counts.positive >= 1 && counts.negative >= 1);
        }
    }

    #[test]
    fn coil_remainder_length(w in arb_word()) {
        if let Some(coil) = w.find_coil_prefix() {
            prop_assert_eq!(coil.remainder.len(), w.len() - (w.strands() - 1));
        }
    }

    #[test]
    fn parity_of_braid_graphs(w in arb_word()) {
        let g = w.closure_seifert_graph();
        prop_assert_eq!((g.c() + g.s + g.l) % 2, 0);
    }

    #[test]
    fn braid_genus_matches_direct_formula(w in arb_word()) {
        let g = w.closure_seifert_graph();
        if g.is_connected() {
            // g_S = (2 - l - n + m) / 2 straight from the word data.
            let direct = (2 + w.len()) as i64 - g.l as i64 - w.strands() as i64;
            prop_assert_eq!(g.canonical_surface_genus().unwrap() as i64 * 2, direct);
        }
    }
}

#[test]
fn gamma_complementarity_on_random_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let w = random_connected_word(&mut rng, 6, 20);
        let g = w.closure_seifert_graph();
        let t = bfs_spanning_tree(&g, 1).unwrap();
        let plus = alternating_depth_signing(&t, Sign::Plus);
        let minus = alternating_depth_signing(&t, Sign::Minus);
        let non_tree = g.c() - t.tree_edge_ids().len();
        assert_eq!(
            compute_gamma(&g, &t, &plus) + compute_gamma(&g, &t, &minus),
            non_tree,
            "word {w}"
        );
        assert!(check_sign_sum_lemma(&g, &t, &plus));
        assert!(check_sign_sum_lemma(&g, &t, &minus));
    }
}

#[test]
fn beta_within_ceiling_on_random_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let w = random_connected_word(&mut rng, 6, 20);
        let g = w.closure_seifert_graph();
        let t = bfs_spanning_tree(&g, 1).unwrap();
        let (beta, _) = compute_beta(&g, &t);
        assert!(beta <= (g.s - 1).div_ceil(2), "word {w}");
    }
}

#[test]
fn augmentation_is_irredundant() {
    // Exact-mode minimality: dropping any chosen edge must break some path.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let w = random_connected_word(&mut rng, 6, 16);
        let g = w.closure_seifert_graph();
        let t = bfs_spanning_tree(&g, 1).unwrap();
        let aug = minimal_augmentation_fp(&g, &t).expect("braid graphs are bipartite");
        assert_eq!(aug.mode, SearchMode::Exact);
        for drop in &aug.tree_edge_ids {
            let reduced: Vec<usize> = aug
                .tree_edge_ids
                .iter()
                .copied()
                .filter(|id| id != drop)
                .collect();
            assert!(
                !augmentation_feasible(&g, &t, &reduced),
                "dropping edge {drop} kept feasibility for {w}"
            );
        }
    }
}

/// Independent feasibility check: enumerate the sign choices of augmented
/// positions outright.
fn augmentation_feasible(
    g: &plumb_bounds::SeifertGraph,
    t: &plumb_bounds::spanning::SpanningTree,
    set: &[usize],
) -> bool {
    g.edges
        .iter()
        .filter(|e| !t.contains_edge(e.id))
        .all(|e| {
            let path = t.path_edges(e.u, e.v);
            let free: Vec<usize> = path.iter().copied().filter(|id| set.contains(id)).collect();
            let kept: i64 = path
                .iter()
                .filter(|id| !set.contains(id))
                .map(|&id| g.edges[id].sign.value())
                .sum();
            let target = -e.sign.value();
            (0..(1u32 << free.len())).any(|mask| {
                let chosen: i64 = (0..free.len())
                    .map(|b| if mask & (1 << b) != 0 { 1 } else { -1 })
                    .sum();
                kept + chosen == target
            })
        })
}

#[test]
fn tree_enumeration_matches_kirchhoff() {
    for fixture in load_fixtures() {
        let g = fixture.seifert_graph();
        let enumeration = enumerate_spanning_trees(&g, 1_000_000).unwrap();
        assert!(!enumeration.truncated);
        assert_eq!(
            enumeration.trees.len() as i128,
            common::kirchhoff_tree_count(&g),
            "fixture {}",
            fixture.name
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let w = random_connected_word(&mut rng, 5, 12);
        let g = w.closure_seifert_graph();
        let enumeration = enumerate_spanning_trees(&g, 1_000_000).unwrap();
        assert!(!enumeration.truncated);
        assert_eq!(
            enumeration.trees.len() as i128,
            common::kirchhoff_tree_count(&g),
            "word {w}"
        );
    }
}

#[test]
fn values_are_thread_transferable() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<BraidWord>();
    assert_send_sync::<plumb_bounds::SeifertGraph>();
    assert_send_sync::<plumb_bounds::PdCode>();
    assert_send_sync::<plumb_bounds::OrientedDiagram>();
    assert_send_sync::<plumb_bounds::spanning::SpanningTree>();
    assert_send_sync::<plumb_bounds::BoundsReport>();
}

#[test]
fn euler_characteristic_additive_over_split() {
    let w = BraidWord::parse("1 1 3 -3", Some(5)).unwrap();
    let g = w.closure_seifert_graph();
    let parts = g.split_components().unwrap();
    assert_eq!(parts.len(), 3);
    let total: i64 = parts.iter().map(|p| p.euler_characteristic()).sum();
    assert_eq!(total, g.euler_characteristic());
    let total_l: usize = parts.iter().map(|p| p.l).sum();
    assert_eq!(total_l, g.l);
}
