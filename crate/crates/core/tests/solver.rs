use lcwlab::cotree::{cotree_to_graph, enumerate_cotrees};
use lcwlab::enumerate::all_graphs;
use lcwlab::expr::{generate_gk, sink_labels};
use lcwlab::graph::{complement, disjoint_union, Graph};
use lcwlab::patterns::is_cograph;
use lcwlab::solve::{exists_sink_expression, lcw_at_most, lcw_exact, naive_oracle_lcw, Outcome, SolverConfig};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn small_graphs() -> Vec<Graph> {
    (1..=5).flat_map(all_graphs).collect()
}

#[test]
fn every_mode_matches_the_oracle() {
    let modes = [
        ("unsaturated", SolverConfig { saturation: false, ..cfg() }),
        ("no dominance", SolverConfig { saturation: false, dominance_pruning: false, ..cfg() }),
        ("twins", SolverConfig { twin_pruning: true, ..cfg() }),
        ("parallel", SolverConfig { jobs: 2, ..cfg() }),
    ];
    for g in small_graphs() {
        for k in 1..=4 {
            let truth = naive_oracle_lcw(&g, k, 64).is_yes();
            for (name, m) in &modes {
                let d = lcw_at_most(&g, k, m).unwrap();
                assert_eq!(d.is_yes(), truth, "{name} on {g:?}, k = {k}");
                if let Some(w) = d.witness() {
                    assert!(w.builds(&g) && w.label_count() <= k, "{name} witness on {g:?}");
                }
            }
        }
    }
}

#[test]
fn oracle_witnesses_validate() {
    for g in (1..=4).flat_map(all_graphs) {
        let d = naive_oracle_lcw(&g, 3, 64);
        if let Some(w) = d.witness() {
            assert!(w.builds(&g));
        }
    }
}

#[test]
fn sink_mode_witnesses_have_a_sink() {
    for g in small_graphs() {
        for k in 1..=4 {
            let d = exists_sink_expression(&g, k, &cfg()).unwrap();
            if let Some(w) = d.witness() {
                assert!(w.builds(&g) && w.label_count() <= k);
                assert!(!sink_labels(&w.expression).is_empty(), "{g:?}");
            }
            // a sink expression is an expression, and one extra label always
            // gives room for a sink
            if d.is_yes() {
                assert!(lcw_at_most(&g, k, &cfg()).unwrap().is_yes());
            }
            if lcw_at_most(&g, k, &cfg()).unwrap().is_yes() {
                assert!(exists_sink_expression(&g, k + 1, &cfg()).unwrap().is_yes());
            }
        }
    }
}

#[test]
fn all_labels_in_use_on_exact_witnesses() {
    for g in (1..=7).flat_map(all_graphs).filter(|g| g.vertex_count() <= 6 || is_cograph(g)) {
        let e = lcw_exact(&g, &cfg()).unwrap();
        assert_eq!(e.witness.expression.max_labels_in_use().unwrap(), e.value, "{g:?}");
        assert_eq!(e.witness.label_count(), e.value);
    }
}

#[test]
fn monotone_in_k() {
    for g in small_graphs() {
        let mut seen_yes = false;
        for k in 1..=5 {
            let yes = lcw_at_most(&g, k, &cfg()).unwrap().is_yes();
            assert!(!seen_yes || yes, "{g:?}");
            seen_yes |= yes;
        }
        assert!(seen_yes);
    }
}

#[test]
fn induced_subgraphs_do_not_need_more_labels() {
    let mut rng = StdRng::seed_from_u64(11);
    let corpus: Vec<Graph> = enumerate_cotrees(8).iter().map(cotree_to_graph).chain(all_graphs(7)).collect();
    for g in corpus.choose_multiple(&mut rng, 120) {
        let full = lcw_exact(g, &cfg()).unwrap().value;
        let mut vs: Vec<usize> = (0..g.vertex_count()).filter(|_| rng.gen_bool(0.6)).collect();
        if vs.is_empty() {
            vs.push(0);
        }
        let sub = lcw_exact(&g.induced(&vs), &cfg()).unwrap().value;
        assert!(sub <= full, "{g:?} on {vs:?}");
    }
}

#[test]
fn complement_changes_lcw_by_at_most_one_on_small_graphs() {
    for g in (1..=6).flat_map(all_graphs) {
        let a = lcw_exact(&g, &cfg()).unwrap().value;
        let b = lcw_exact(&complement(&g), &cfg()).unwrap().value;
        assert!(a.abs_diff(b) <= 1, "{g:?}");
    }
}

#[test]
fn g3_lower_bound_under_other_modes() {
    let g3 = generate_gk(3).graph;
    let twins = SolverConfig { twin_pruning: true, ..cfg() };
    assert!(lcw_at_most(&g3, 3, &twins).unwrap().is_no());
    let d = lcw_at_most(&g3, 4, &twins).unwrap();
    assert!(d.witness().unwrap().builds(&g3));
    assert!(lcw_at_most(&g3, 3, &SolverConfig { jobs: 2, ..cfg() }).unwrap().is_no());
}

#[test]
fn doubling_adds_a_label() {
    for k in 1..=2 {
        let g = generate_gk(k).graph;
        let h = disjoint_union(&g, &g);
        assert_eq!(lcw_exact(&h, &cfg()).unwrap().value, k + 2);
    }
}

#[test]
fn budget_outcome_is_never_a_wrong_answer() {
    for budget in [1, 10, 100, 1000] {
        let d = lcw_at_most(&generate_gk(2).graph, 2, &SolverConfig::with_budget(budget)).unwrap();
        assert!(matches!(d.outcome, Outcome::No | Outcome::BudgetExceeded));
        assert!(d.states <= budget + 1);
    }
}
