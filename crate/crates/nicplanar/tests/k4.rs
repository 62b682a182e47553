mod common;

use common::{brute_k4, random_graph, rng};
use nicplanar::generate::{
    gen_densest_intermediate, gen_nested_k5_variant, gen_optimal, gen_rac_counterexample,
    gen_sparsest,
};
use nicplanar::graph_core::{complete_graph, Graph};
use nicplanar::k4::{bucket_by_edge, default_step_cap, list_k4, K4Outcome};

fn small_fixtures() -> Vec<(String, Graph)> {
    let mut v: Vec<(String, Graph)> = Vec::new();
    for t in 1..=9 {
        v.push((format!("K{t}"), complete_graph(t)));
    }
    v.push(("optimal(2)".into(), gen_optimal(2).unwrap().graph));
    v.push(("sparsest(1)".into(), gen_sparsest(1).unwrap().graph));
    v.push(("sparsest(2)".into(), gen_sparsest(2).unwrap().graph));
    v.push((
        "intermediate(1,4)".into(),
        gen_densest_intermediate(1, 4).unwrap().graph,
    ));
    let mut r = rng(7);
    for n in 4..=12 {
        let max = n * (n - 1) / 2;
        for m in [max / 3, max / 2, 2 * max / 3, max - 1] {
            v.push((format!("random n={n} m={m}"), random_graph(&mut r, n, m)));
        }
    }
    v
}

fn nic_fixtures() -> Vec<(String, Graph)> {
    let mut v: Vec<(String, Graph)> = Vec::new();
    for k in [2, 3, 5, 16, 100, 1000] {
        v.push((format!("optimal({k})"), gen_optimal(k).unwrap().graph));
    }
    for k in [1, 2, 3, 10, 200] {
        v.push((format!("sparsest({k})"), gen_sparsest(k).unwrap().graph));
    }
    for (k, i) in [(2, 1), (4, 2), (8, 2), (2, 3), (9, 3), (2, 4), (6, 4)] {
        v.push((
            format!("intermediate({k},{i})"),
            gen_densest_intermediate(k, i).unwrap().graph,
        ));
    }
    for k in [2, 4, 8] {
        v.push((
            format!("nested-k5({k})"),
            gen_nested_k5_variant(k, 0).unwrap().graph,
        ));
    }
    v.push(("rac".into(), gen_rac_counterexample().graph));
    v
}

#[test]
fn listing_matches_brute_force_on_small_graphs() {
    for (name, g) in small_fixtures() {
        let cat = list_k4(&g, u64::MAX).catalog().expect("no cap");
        let got: std::collections::BTreeSet<[usize; 4]> = cat.k4s.iter().copied().collect();
        assert_eq!(got.len(), cat.len(), "{name}: duplicates");
        assert_eq!(got, brute_k4(&g), "{name}");
        // Bucket consistency: kappa in B[e] iff e is an edge of kappa.
        let total: usize = cat.buckets.iter().map(Vec::len).sum();
        assert_eq!(total, 6 * cat.len(), "{name}");
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let want: Vec<usize> = (0..cat.len())
                .filter(|&i| cat.k4s[i].contains(&u) && cat.k4s[i].contains(&v))
                .collect();
            assert_eq!(cat.buckets[e], want, "{name}: bucket of {u}-{v}");
        }
    }
}

#[test]
fn bucket_sizes_of_complete_graphs() {
    for (t, size) in [(4, 1), (5, 3), (6, 6)] {
        let g = complete_graph(t);
        let cat = list_k4(&g, u64::MAX).catalog().unwrap();
        let b = bucket_by_edge(&cat.k4s, &g);
        assert!(b.iter().all(|x| x.len() == size), "K{t}");
    }
}

#[test]
fn nic_fixtures_stay_within_budget_and_catalog_bound() {
    for (name, g) in nic_fixtures() {
        let n = g.n();
        match list_k4(&g, default_step_cap(n)) {
            K4Outcome::Complete(c) => {
                assert!(c.steps <= 256 * n as u64, "{name}");
                assert!(c.len() <= 27 * n, "{name}: {} K4s", c.len());
            }
            K4Outcome::Timeout { steps } => panic!("{name}: timed out after {steps} steps"),
        }
    }
}

#[test]
fn optimal_k2_catalog_is_the_six_kites() {
    let g = gen_optimal(2).unwrap().graph;
    let cat = list_k4(&g, default_step_cap(g.n())).catalog().unwrap();
    assert_eq!(cat.len(), 6);
    assert!(cat.buckets.iter().all(|b| b.len() == 1));
}

/// Frozen regression: under the `256 n` budget K_t completes for t ≤ 12 and
/// times out from t = 13 on.
#[test]
fn dense_complete_graphs_time_out() {
    for t in 5..=12 {
        assert!(
            matches!(
                list_k4(&complete_graph(t), default_step_cap(t)),
                K4Outcome::Complete(_)
            ),
            "K{t}"
        );
    }
    for t in 13..=30 {
        assert!(
            matches!(
                list_k4(&complete_graph(t), default_step_cap(t)),
                K4Outcome::Timeout { .. }
            ),
            "K{t}"
        );
    }
}

#[test]
fn timeout_fires_exactly_at_the_cap() {
    let g = gen_optimal(3).unwrap().graph;
    let needed = list_k4(&g, u64::MAX).catalog().unwrap().steps;
    assert!(matches!(list_k4(&g, needed), K4Outcome::Complete(_)));
    match list_k4(&g, needed - 1) {
        K4Outcome::Timeout { steps } => assert!(steps > needed - 1),
        K4Outcome::Complete(_) => panic!("cap below the requirement must time out"),
    }
}
