mod common;

use std::collections::BTreeSet;

use common::brute_triconnected;
use nicplanar::dual::*;
use nicplanar::embedding::{
    trace_faces, verify_maximal_embedding, verify_nic, Crossing, MaximalityOptions, NicEmbedding,
};
use nicplanar::generate::*;
use nicplanar::graph_core::Graph;
use nicplanar::planarity::is_planar;

fn maximal_witnesses() -> Vec<(String, NicEmbedding)> {
    let mut v = Vec::new();
    for k in [2, 3, 5, 9] {
        v.push((
            format!("optimal({k})"),
            gen_optimal(k).unwrap().embedding.unwrap(),
        ));
    }
    for k in 1..=6 {
        v.push((
            format!("sparsest({k})"),
            gen_sparsest(k).unwrap().embedding.unwrap(),
        ));
    }
    for (k, i) in [
        (2, 1),
        (4, 1),
        (4, 2),
        (8, 2),
        (2, 3),
        (5, 3),
        (2, 4),
        (6, 4),
    ] {
        v.push((
            format!("intermediate({k},{i})"),
            gen_densest_intermediate(k, i).unwrap().embedding.unwrap(),
        ));
    }
    v
}

#[test]
fn dual_structure_on_maximal_witnesses() {
    for (name, emb) in maximal_witnesses() {
        let d = build_dual(&emb).unwrap();
        let faces = trace_faces(&emb).unwrap().faces.len();
        let grouped: usize = d.nodes.iter().map(|q| q.faces.len()).sum();
        assert_eq!(grouped, faces, "{name}");
        assert_eq!(d.face_count(), faces, "{name}");
        for (q, node) in d.nodes.iter().enumerate() {
            let (deg, size) = match node.kind {
                NodeKind::Kite => (4, 4),
                NodeKind::Tetrahedron => (3, 3),
                NodeKind::Triangle => (3, 1),
            };
            assert_eq!(
                (d.degree(q), node.faces.len()),
                (deg, size),
                "{name}: node {q}"
            );
        }
        assert_eq!(d.count(NodeKind::Kite), emb.crossings().len());
        assert!(d.is_simple(), "{name}");
        let simple = d.simple_graph();
        assert!(is_planar(&simple), "{name}");
        assert!(brute_triconnected(&simple), "{name}");
        assert!(simple.is_triconnected().unwrap(), "{name}");
        let rules = check_adjacency_rules(&d, emb.graph());
        assert!(rules.pass, "{name}: {:?}", rules.violations);
    }
}

#[test]
fn optimal_duals_are_bipartite_kite_triangle() {
    for k in 2..=12 {
        let emb = gen_optimal(k).unwrap().embedding.unwrap();
        let d = build_dual(&emb).unwrap();
        assert_eq!(d.count(NodeKind::Kite), 3 * k);
        assert_eq!(d.count(NodeKind::Triangle), 4 * k);
        assert_eq!(d.count(NodeKind::Tetrahedron), 0);
        assert!(d.is_kite_bipartite());
        for e in &d.edges {
            assert_ne!(d.nodes[e.a].kind, d.nodes[e.b].kind);
        }
        let lv = compute_levels(&d).unwrap();
        for (q, node) in d.nodes.iter().enumerate() {
            assert_eq!(lv.level[q], if node.kind == NodeKind::Kite { 0 } else { 1 });
        }
    }
}

fn accounting(emb: &NicEmbedding) -> SphereAccount {
    let d = build_dual(emb).unwrap();
    let lv = compute_levels(&d).unwrap();
    quarter_sphere_accounting(&d, &lv).unwrap()
}

#[test]
fn sphere_accounting_exact_values() {
    for k in [2, 3, 6, 10] {
        let emb = gen_optimal(k).unwrap().embedding.unwrap();
        let a = accounting(&emb);
        assert!(
            a.sphere_totals.values().all(|&t| t == Q::from_integer(4)),
            "optimal({k})"
        );
        assert!(a
            .quarters
            .iter()
            .all(|s| s.triangles == Q::new(1, 3) && s.tetrahedra == Q::from_integer(0)));
        assert_eq!(
            a.global_planar_edges,
            Q::from_integer(18 * k as i64 - 6 * k as i64)
        );
    }
    for k in 1..=8 {
        let inst = gen_sparsest(k).unwrap();
        let a = accounting(inst.embedding.as_ref().unwrap());
        assert!(
            a.sphere_totals.values().all(|&t| t == Q::from_integer(14)),
            "sparsest({k}): {:?}",
            a.sphere_totals
        );
        assert_eq!(a.global_planar_edges, Q::from_integer(14 * k as i64));
    }
    for (k, i) in [(2, 1), (4, 2), (2, 3), (2, 4), (8, 2)] {
        let inst = gen_densest_intermediate(k, i).unwrap();
        let emb = inst.embedding.as_ref().unwrap();
        let a = accounting(emb);
        let c = emb.crossings().len() as i64;
        assert_eq!(
            a.global_planar_edges,
            Q::from_integer(inst.graph.m() as i64 - 2 * c)
        );
        for s in &a.quarters {
            assert!(
                s.planar_edges >= Q::new(1, 2) && s.balanced_planar_edges <= Q::from_integer(3)
            );
        }
        if i == 1 {
            assert!(a.quarters.iter().any(|s| s.tetrahedra > Q::from_integer(0)));
        }
    }
}

#[test]
fn sparsest_duals_have_level_two_nodes() {
    for k in 3..=6 {
        let emb = gen_sparsest(k).unwrap().embedding.unwrap();
        let d = build_dual(&emb).unwrap();
        let lv = compute_levels(&d).unwrap();
        let tets: Vec<usize> = (0..d.nodes.len())
            .filter(|&q| d.nodes[q].kind == NodeKind::Tetrahedron)
            .collect();
        assert_eq!(tets.len(), 2 * k);
        assert!(tets.iter().all(|&q| lv.level[q] == 1));
    }
}

/// Two kites sharing the edge 2–3, closed off by a hub vertex 6.
fn adjacent_kites() -> NicEmbedding {
    let mut edges = vec![
        (0, 1),
        (1, 2),
        (2, 3),
        (0, 3),
        (0, 2),
        (1, 3),
        (2, 4),
        (4, 5),
        (3, 5),
        (2, 5),
        (3, 4),
    ];
    edges.extend([0, 1, 2, 3, 4, 5].map(|v| (v, 6)));
    let g = Graph::new(7, &edges).unwrap();
    NicEmbedding::from_crossings(
        g,
        vec![Crossing::new((0, 2), (1, 3)), Crossing::new((2, 5), (3, 4))],
    )
    .unwrap()
}

#[test]
fn rule_violations_are_reported() {
    let emb = adjacent_kites();
    assert!(!verify_nic(&emb).pass, "the kites share two vertices");
    let d = build_dual(&emb).unwrap();
    let rep = check_adjacency_rules(&d, emb.graph());
    assert!(rep.has_rule("rule-i"));

    // Planar K4 drawn with vertex 3 inside: one tetrahedron, no kite.
    let k4 =
        NicEmbedding::from_crossings(nicplanar::graph_core::complete_graph(4), Vec::new()).unwrap();
    let d = build_dual(&k4).unwrap();
    assert_eq!(d.count(NodeKind::Tetrahedron), 1);
    let rep = check_adjacency_rules(&d, k4.graph());
    assert!(rep.has_rule("rule-iii") && rep.has_rule("rule-ii"));
    assert!(compute_levels(&d).is_err());
    assert!(verify_maximal_embedding(&k4, MaximalityOptions::default())
        .not_applicable
        .is_some());
}

#[test]
fn dot_export_shapes() {
    let emb = gen_densest_intermediate(2, 1).unwrap().embedding.unwrap();
    let dot = dual_to_dot(&build_dual(&emb).unwrap());
    assert!(
        dot.contains("shape=diamond")
            && dot.contains("shape=triangle")
            && dot.contains("shape=house")
    );
}

#[test]
fn flip_on_fixture_and_back() {
    let emb = gen_flip_fixture().embedding.unwrap();
    let d = build_dual(&emb).unwrap();
    let cands = flip_candidates(&emb, &d);
    assert_eq!(cands.len(), 1);
    let c = cands[0];
    // The kite x1 M0 x2 x3, i.e. {12, 9, 13, 14} in the K = 2 labeling.
    assert_eq!(d.key(c.kite), (NodeKind::Kite, vec![9, 12, 13, 14]));
    let out = kite_flip(&emb, c.kite, (c.r, c.s)).unwrap();
    assert!(out.nic.pass && out.maximal.pass);
    let after = build_dual(&out.embedding).unwrap();
    let tr = check_flip_transformation(&d, &after, emb.graph(), c.kite, c.r, c.s);
    assert!(tr.pass, "{:?}", tr.violations);

    // Flipping back restores the crossing registry.
    let back_cands = flip_candidates(&out.embedding, &after);
    let rs: BTreeSet<usize> = [c.r, c.s]
        .iter()
        .flat_map(|&t| d.nodes[t].vertices.clone())
        .collect();
    let inverse = back_cands
        .iter()
        .find(|b| after.nodes[b.kite].vertices == rs.iter().copied().collect::<Vec<_>>())
        .expect("the new kite can be flipped back");
    let back = kite_flip(&out.embedding, inverse.kite, (inverse.r, inverse.s)).unwrap();
    let norm = |e: &NicEmbedding| -> BTreeSet<[(usize, usize); 2]> {
        e.crossings()
            .iter()
            .map(|c| {
                let mut x = c.edges();
                x.sort();
                x
            })
            .collect()
    };
    assert_eq!(norm(&back.embedding), norm(&emb));
}

#[test]
fn flip_preconditions_are_enforced() {
    let emb = gen_flip_fixture().embedding.unwrap();
    let d = build_dual(&emb).unwrap();
    let kite = (0..d.nodes.len())
        .find(|&q| d.nodes[q].kind == NodeKind::Kite)
        .unwrap();
    let tri = (0..d.nodes.len())
        .find(|&q| d.nodes[q].kind == NodeKind::Triangle)
        .unwrap();
    assert!(kite_flip(&emb, tri, (tri, tri)).is_err());
    assert!(kite_flip(&emb, kite, (kite, tri)).is_err());
    // Optimal graphs have no adjacent triangles, hence no flips.
    let opt = gen_optimal(4).unwrap().embedding.unwrap();
    assert!(flip_candidates(&opt, &build_dual(&opt).unwrap()).is_empty());
}

#[test]
fn flips_on_all_maximal_witnesses_preserve_maximality() {
    let mut total = 0;
    for (name, emb) in maximal_witnesses() {
        let d = build_dual(&emb).unwrap();
        for c in flip_candidates(&emb, &d) {
            total += 1;
            let out = kite_flip(&emb, c.kite, (c.r, c.s)).unwrap();
            assert!(out.nic.pass && out.maximal.pass, "{name}");
            let after = build_dual(&out.embedding).unwrap();
            assert!(
                check_flip_transformation(&d, &after, emb.graph(), c.kite, c.r, c.s).pass,
                "{name}"
            );
        }
    }
    assert!(total >= 1);
}
