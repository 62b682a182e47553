use nicplanar::embedding::*;
use nicplanar::generate::{gen_densest_intermediate, gen_optimal, gen_sparsest};
use nicplanar::graph_core::{complete_graph, Graph, GraphFormat};
use proptest::prelude::*;

#[test]
fn json_round_trip_on_generated_witnesses() {
    for emb in [
        gen_optimal(3).unwrap().embedding.unwrap(),
        gen_sparsest(4).unwrap().embedding.unwrap(),
        gen_densest_intermediate(4, 2).unwrap().embedding.unwrap(),
    ] {
        let s = emb.to_json_string();
        let back = NicEmbedding::from_json_str(&s).unwrap();
        assert_eq!(back.to_json_string(), s);
        assert!(verify_nic(&back).pass);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rotations"]["x0"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn tampered_rotations_fail_verification() {
    let emb = gen_optimal(2).unwrap().embedding.unwrap();
    let mut v = emb.to_json();
    // Swap two neighbors in the rotation of the first dummy: no alternation.
    let r = v["rotations"]["x0"].as_array_mut().unwrap();
    r.swap(0, 1);
    if let Ok(bad) = NicEmbedding::from_json(&v) {
        let rep = verify_nic(&bad);
        assert!(!rep.pass);
    }
    // Swap in an original vertex's rotation: the surface is no longer a sphere.
    let mut v = emb.to_json();
    let r = v["rotations"]["0"].as_array_mut().unwrap();
    r.swap(0, 2);
    if let Ok(bad) = NicEmbedding::from_json(&v) {
        assert!(!verify_nic(&bad).pass);
    }
}

#[test]
fn maximality_detects_missing_edges() {
    let emb = gen_optimal(3).unwrap().embedding.unwrap();
    let g = emb.graph();
    let crossed = emb.crossed_edges();
    let planar_edge = *g.edges().iter().find(|e| !crossed.contains(e)).unwrap();
    let h = g.without_edges(&[planar_edge]);
    let smaller = NicEmbedding::from_crossings(h, emb.crossings().to_vec()).unwrap();
    assert!(verify_nic(&smaller).pass);
    assert!(!verify_maximal_embedding(&smaller, MaximalityOptions::default()).pass);
}

#[test]
fn small_inputs_are_not_applicable_for_maximality() {
    let k4 = kite_k4();
    let rep = verify_maximal_embedding(&k4, MaximalityOptions::default());
    assert!(rep.pass && rep.not_applicable.is_some());
}

#[test]
fn k5_sharing_check_on_k5() {
    let emb = NicEmbedding::from_crossings(complete_graph(5), vec![Crossing::new((0, 2), (1, 3))])
        .unwrap();
    assert_eq!(list_k5(emb.graph()).len(), 1);
    assert!(check_k5_sharing(&emb).pass);
    assert!(
        verify_maximal_embedding(
            &emb,
            MaximalityOptions {
                check_k5_sharing: true
            }
        )
        .pass
    );
}

#[test]
fn reductions() {
    let emb = gen_optimal(4).unwrap().embedding.unwrap();
    let (n, m, c) = (emb.n(), emb.graph().m(), emb.crossings().len());
    assert_eq!(planar_reduction(&emb).m(), m - c);
    assert_eq!(planar_skeleton(&emb).m(), m - 2 * c);
    assert_eq!(planar_reduction(&emb).m(), 3 * n - 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn optimal_witnesses_round_trip_through_json_and_graph6(k in 2usize..40) {
        let inst = gen_optimal(k).unwrap();
        let emb = inst.embedding.unwrap();
        let back = NicEmbedding::from_json_str(&emb.to_json_string()).unwrap();
        prop_assert_eq!(&back, &emb);
        let g6 = inst.graph.serialize(GraphFormat::Graph6);
        prop_assert_eq!(Graph::parse(&g6, GraphFormat::Graph6).unwrap(), inst.graph.clone());
        let el = inst.graph.serialize(GraphFormat::EdgeList);
        prop_assert_eq!(Graph::parse(&el, GraphFormat::EdgeList).unwrap(), inst.graph);
    }

    #[test]
    fn removing_a_crossing_pair_keeps_nic(k in 2usize..12, idx in 0usize..100) {
        let emb = gen_optimal(k).unwrap().embedding.unwrap();
        let i = idx % emb.crossings().len();
        let [e1, _] = emb.crossings()[i].edges();
        let mut crossings = emb.crossings().to_vec();
        crossings.remove(i);
        let h = emb.graph().without_edges(&[e1]);
        let reduced = NicEmbedding::from_crossings(h, crossings).unwrap();
        prop_assert!(verify_nic(&reduced).pass);
    }
}
