mod common;

use std::collections::BTreeSet;

use common::{brute_biconnected, brute_k4};
use nicplanar::embedding::{
    verify_maximal_embedding, verify_nic, Crossing, MaximalityOptions, NicEmbedding,
};
use nicplanar::generate::*;
use nicplanar::graph_core::{complete_graph, Graph};

fn maximal_instances() -> Vec<GeneratedInstance> {
    let mut v = Vec::new();
    for k in [2, 3, 4, 7, 12] {
        v.push(gen_optimal(k).unwrap());
    }
    for k in 1..=8 {
        v.push(gen_sparsest(k).unwrap());
    }
    for (k, i) in [
        (2, 1),
        (3, 1),
        (4, 2),
        (8, 2),
        (3, 2),
        (2, 3),
        (3, 3),
        (2, 4),
        (6, 4),
        (1, 4),
        (5, 4),
    ] {
        v.push(gen_densest_intermediate(k, i).unwrap());
    }
    v
}

#[test]
fn counts_match_formulas_and_witnesses_verify() {
    for inst in maximal_instances() {
        let emb = inst.embedding.as_ref().unwrap();
        let tag = format!("{} k={} i={:?}", inst.family.name(), inst.k, inst.i);
        assert_eq!(inst.graph.n(), inst.expected.n, "{tag}");
        assert_eq!(inst.graph.m(), inst.expected.m, "{tag}");
        assert_eq!(emb.crossings().len(), inst.expected.crossings, "{tag}");
        // Triangulated planar reduction: c = m - (3n - 6).
        assert_eq!(
            emb.crossings().len() + 3 * inst.graph.n() - 6,
            inst.graph.m(),
            "{tag}"
        );
        assert!(verify_nic(emb).pass, "{tag}");
        let opts = MaximalityOptions {
            check_k5_sharing: inst.graph.n() <= 30,
        };
        let rep = verify_maximal_embedding(emb, opts);
        assert!(rep.pass, "{tag}: {:?}", rep.violations);
    }
}

#[test]
fn family_formulas() {
    for k in 2..=30 {
        let g = gen_optimal(k).unwrap().graph;
        assert_eq!((g.n(), g.m()), (5 * k + 2, 18 * k));
    }
    for k in 1..=30 {
        let g = gen_sparsest(k).unwrap().graph;
        assert_eq!((g.n(), g.m()), (5 * k + 2, 16 * k));
    }
    for (k, i, n, m) in [
        (2, 1, 13, 39),
        (2, 4, 16, 50),
        (4, 2, 24, 79),
        (2, 3, 15, 46),
    ] {
        let g = gen_densest_intermediate(k, i).unwrap().graph;
        assert_eq!((g.n(), g.m()), (n, m));
    }
    for k in 2..=12 {
        for i in 1..=4 {
            let Ok(inst) = gen_densest_intermediate(k, i) else {
                continue;
            };
            let n = 5 * k + 2 + i;
            assert_eq!(inst.graph.n(), n);
            assert_eq!(inst.graph.m(), 18 * (n - 2) / 5, "k={k} i={i}");
        }
    }
}

#[test]
fn density_sandwich() {
    for inst in maximal_instances() {
        let (n, m) = (inst.graph.n(), inst.graph.m());
        assert!(
            16 * (n - 2) <= 5 * m && 5 * m <= 18 * (n - 2),
            "{} n={n} m={m}",
            inst.family.name()
        );
        match inst.family {
            Family::Sparsest => assert_eq!(5 * m, 16 * (n - 2)),
            Family::Optimal => assert_eq!(5 * m, 18 * (n - 2)),
            _ => {}
        }
    }
}

#[test]
fn parameter_errors() {
    assert!(matches!(
        gen_optimal(1),
        Err(nicplanar::error::GenerateError::KTooSmall { k: 1, min: 2 })
    ));
    assert!(gen_sparsest(0).is_err());
    assert!(gen_densest_intermediate(3, 0).is_err());
    assert!(gen_densest_intermediate(3, 5).is_err());
    assert!(gen_densest_intermediate(1, 1).is_err());
    assert!(gen_densest_intermediate(2, 2).is_err());
    assert!(gen_nested_k5(1).is_err());
    assert!(gen_nested_k5_variant(3, 4).is_err());
}

#[test]
fn generators_are_deterministic() {
    let a = gen_densest_intermediate(8, 2).unwrap();
    let b = gen_densest_intermediate(8, 2).unwrap();
    assert_eq!(a.graph.to_graph6(), b.graph.to_graph6());
    assert_eq!(
        a.embedding.unwrap().to_json_string(),
        b.embedding.unwrap().to_json_string()
    );
}

#[test]
fn intermediate_i1_has_a_tetrahedron_center() {
    let inst = gen_densest_intermediate(3, 1).unwrap();
    let deg3: Vec<usize> = (0..inst.graph.n())
        .filter(|&v| inst.graph.degree(v) == 3)
        .collect();
    assert_eq!(deg3, vec![17]);
}

#[test]
fn nested_k5_variants() {
    let (inst, variants) = gen_nested_k5(4).unwrap();
    assert_eq!((inst.graph.n(), inst.graph.m()), (48, 51 * 4 - 48));
    assert_eq!(variants.len(), 8);
    let mut registries = BTreeSet::new();
    for emb in &variants {
        assert_eq!(emb.graph(), &inst.graph);
        assert!(verify_nic(emb).pass);
        let reg: BTreeSet<[(usize, usize); 2]> = emb
            .crossings()
            .iter()
            .map(|c| {
                let mut e = c.edges();
                e.sort();
                e
            })
            .collect();
        registries.insert(reg);
    }
    assert_eq!(registries.len(), 8);
    for k in 2..=6 {
        let g = gen_nested_k5_variant(k, 0).unwrap().graph;
        assert_eq!((g.n(), g.m()), (15 * k - 12, 51 * k - 48));
        // Every inserted pair a, b spans a K5 with its band triangle.
        assert!(brute_k4(&g).len() >= 5 * 6 * (k - 1));
    }
}

#[test]
fn rac_counterexample_structure() {
    let inst = gen_rac_counterexample();
    let g = &inst.graph;
    assert_eq!((g.n(), g.m()), (180, 372));
    let emb = inst.embedding.as_ref().unwrap();
    assert!(verify_nic(emb).pass);
    // Six K4s among the twelve original vertices.
    let original: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| u < 12 && v < 12)
        .collect();
    let base = Graph::new(12, &original).unwrap();
    assert_eq!(brute_k4(&base).len(), 6);
    // Every added vertex is the middle of a 2-path; seven per planar edge.
    let mut per_edge = std::collections::BTreeMap::new();
    for v in 12..180 {
        let nb = g.neighbors(v);
        assert_eq!(nb.len(), 2);
        assert!(base.has_edge(nb[0], nb[1]));
        *per_edge.entry((nb[0], nb[1])).or_insert(0) += 1;
    }
    assert_eq!(per_edge.len(), 24);
    assert!(per_edge.values().all(|&c| c == FAT_EDGE_PATHS));
    // Removing both edges of every crossing pair keeps the graph biconnected.
    let crossed: Vec<(usize, usize)> = emb.crossed_edges().into_iter().collect();
    assert_eq!(crossed.len(), 12);
    assert!(brute_biconnected(&g.without_edges(&crossed)));
}

#[test]
fn gadget_transform_sizes() {
    let empty = Graph::new(5, &[]).unwrap();
    assert_eq!(np_gadget_transform(&empty), empty);
    let k3 = complete_graph(3);
    let g = np_gadget_transform(&k3);
    assert_eq!((g.n(), g.m()), (3 + 3 * GADGET_VERTICES, 3 * GADGET_EDGES));
    for e in 0..3 {
        let (a, b) = gadget_designated(3, e);
        assert!(g.has_edge(a, b));
    }
}

fn designated(g: &Graph) -> BTreeSet<(usize, usize)> {
    (0..g.m()).map(|e| gadget_designated(g.n(), e)).collect()
}

#[test]
fn gadget_embedding_of_k5() {
    let k5 = k5_one_planar();
    assert!(verify_nic(&k5).pass);
    let emb = np_gadget_embedding(&k5).unwrap();
    assert_eq!(emb.graph(), &np_gadget_transform(k5.graph()));
    let rep = verify_nic(&emb);
    assert!(rep.pass, "{:?}", rep.violations);
    let crossed = emb.crossed_edges();
    assert_eq!(crossed.len(), 2);
    assert!(crossed.is_subset(&designated(k5.graph())));
}

#[test]
fn gadget_embedding_of_larger_one_planar_inputs() {
    for src in [
        gen_optimal(3).unwrap().embedding.unwrap(),
        gen_sparsest(2).unwrap().embedding.unwrap(),
    ] {
        let emb = np_gadget_embedding(&src).unwrap();
        assert!(verify_nic(&emb).pass);
        assert_eq!(emb.crossings().len(), src.crossings().len());
        assert!(emb.crossed_edges().is_subset(&designated(src.graph())));
    }
    // A planar source yields a planar gadget embedding.
    let planar = NicEmbedding::from_crossings(complete_graph(4), Vec::<Crossing>::new()).unwrap();
    let emb = np_gadget_embedding(&planar).unwrap();
    assert!(emb.crossings().is_empty() && verify_nic(&emb).pass);
}
