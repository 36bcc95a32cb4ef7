use std::time::Instant;

use pltg::discrete::{breaking_vertices, for_each_simple_graph, for_each_spec, full_set, members, node_mask, to_topgraph};

fn injective_on_g(spec: &pltg::discrete::DiscreteSpec) -> bool {
    let mut seen = 0u64;
    members(spec.g0).all(|u| {
        let bit = 1 << spec.m0[u];
        let fresh = seen & bit == 0;
        seen |= bit;
        fresh
    })
}

#[test]
fn breaking_vertices_and_unions_on_the_small_universe() {
    let start = Instant::now();
    let (mut regular, mut unions) = (0usize, 0usize);
    let total = for_each_spec(3, |spec| {
        let g = spec.g();
        let g_idx: Vec<usize> = members(spec.g0).collect();
        if spec.f.is_regular_subgraph(spec.g0) {
            let lhs = spec.breaking_in_f();
            let rhs = members(g.classify().regular).fold(0u64, |a, i| a | 1 << g_idx[i])
                & spec.f.classify().infinite_emitters;
            assert_eq!(lhs, rhs, "{spec:?}");
        }
        if !spec.is_regular_adjunction() {
            return;
        }
        regular += 1;
        let u = spec.glued();
        let nu = u.graph.vertex_count();
        let b = breaking_vertices(&u.graph, full_set(nu) & !u.e_vertices);
        assert_eq!(b, u.graph.classify().infinite_emitters & spec.e.classify().regular, "{spec:?}");
        if injective_on_g(spec) {
            unions += 1;
            let eq = spec.check_equivalence();
            assert!(eq.agree, "{spec:?} {eq:?}");
        }
    });
    eprintln!("{total} specs, {regular} regular, {unions} unions, {:?}", start.elapsed());
    assert!(unions > 0 && regular > unions);
}

#[test]
fn vertex_classes_match_the_topological_graph() {
    let mut count = 0;
    for_each_simple_graph(4, |d| {
        count += 1;
        let c = d.classify();
        let tg = to_topgraph(d).unwrap();
        let t = tg.classify();
        assert_eq!(node_mask(&t.sink), c.sinks, "{d:?}");
        assert_eq!(node_mask(&t.inf), c.infinite_emitters, "{d:?}");
        assert_eq!(node_mask(&t.reg), c.regular, "{d:?}");
        assert_eq!(node_mask(&t.sing), c.singular, "{d:?}");
    });
    assert_eq!(count, 1 + 2 + 16 + 512 + 65536);
}
