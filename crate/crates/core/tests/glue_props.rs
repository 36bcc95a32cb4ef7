use pltg::discrete::{members, to_topgraph, DiscreteGraph, DiscreteSpec, Mult};
use pltg::glue::{
    adjunction_graph, check_boundcond, check_main_theorem, check_regular_adjunction, GraphNames, Verdict,
};
use pltg::morphism::is_regular_closed_subgraph;
use pltg::plcore::{LhMode, Point, SemiSet};
use pltg::rational::q;
use pltg::suspend::isomorphic;
use pltg::testkit::fixtures::{counterexample_f, counterexample_union};
use pltg::testkit::gen;
use pltg::testkit::suites;

#[test]
fn counterexample_battery() {
    let res = counterexample_union();
    let f = counterexample_f();
    assert!(!f.is_row_finite());
    assert!(!f.source_image().is_preopen());
    let rep = check_regular_adjunction(&res);
    assert!(rep.g_in_f.regular() && rep.e_in_glued.regular() && rep.m.all() && rep.p.all());
    assert!(rep.regular);
    let (holds, witness) = check_boundcond(&res.spec).unwrap();
    assert!(!holds);
    assert_eq!(witness, SemiSet::from_points(f.v(), &[Point::Interior(0, q(1, 2))]));
    let cert = check_main_theorem(&res, &GraphNames::default(), None);
    assert_eq!(cert.verdict, Verdict::Positive);
    assert!(res.spec.g.sub.classify().reg.is_empty());
    let f_side = res.f_in_glued().unwrap();
    assert!(is_regular_closed_subgraph(&f_side).regular());
    assert_eq!(res.glued.v().node_count(), 4);
}

#[test]
fn gluing_property_suites() {
    let o = suites::glue_properties(0x36, 500);
    for out in o.all() {
        assert!(out.passed(500), "{}", out.summary());
    }
}

#[test]
fn preopen_source_images_keep_sink_boundaries_infinite() {
    let out = suites::preopen_implication(0x317, 500);
    assert!(out.passed(500), "{}", out.summary());
}

#[test]
fn negative_invariance_and_f3_fail_together() {
    let e = DiscreteGraph::new(1);
    let mut f = DiscreteGraph::new(3);
    f.set_mult(1, 2, Mult::ONE);
    let spec = DiscreteSpec::new(e, f, 0b011, vec![0, 0, 0]).unwrap();
    let res = adjunction_graph(&gen::discrete_glue_spec(&spec).unwrap()).unwrap();
    let rep = check_regular_adjunction(&res);
    assert!(!rep.e_negatively_invariant);
    assert!(!rep.p.f3);
    assert!(!rep.g_in_f.negatively_invariant);
    assert!(!rep.f3_equivalence_applies);
}

/// The discrete gluing and the cellular adjunction graph give the same graph and the same verdicts.
#[test]
fn discrete_gluing_matches_adjunction_graph() {
    let mut rng = gen::rng(0xd15);
    let mut checked = 0;
    while checked < 300 {
        let f2 = checked % 3 != 0;
        let spec = gen::random_discrete_spec(&mut rng, 3, f2, checked % 2 == 0);
        let Ok(glue) = gen::discrete_glue_spec(&spec) else { continue };
        checked += 1;
        let res = adjunction_graph(&glue).unwrap();
        let glued = spec.glued();
        let expected = to_topgraph(&glued.graph).unwrap().with_mode(LhMode::Strict);
        assert!(isomorphic(&res.glued, &expected).is_some(), "{spec:?}");
        let rep = check_regular_adjunction(&res);
        let d = spec.regularity();
        assert_eq!(rep.g_in_f.regular(), d.g_in_f, "{spec:?}");
        assert_eq!(rep.m.all(), d.m_regular, "{spec:?}");
        assert_eq!(rep.e_in_glued.regular(), d.e_in_glued, "{spec:?}");
        assert_eq!(rep.p.all(), d.p_regular, "{spec:?}");
        let sing = res.glued.classify().sing.clone();
        let p_sing: Vec<usize> = members(glued.graph.classify().singular).collect();
        assert_eq!(sing.as_points().map(|p| p.len()), Some(p_sing.len()), "{spec:?}");
    }
}
