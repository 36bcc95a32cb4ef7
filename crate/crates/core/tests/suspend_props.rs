use pltg::glue::{check_main_theorem, union_graph, Verdict};
use pltg::morphism::{check_factor_map, FactorMap, SubgraphWitness};
use pltg::plcore::{Attach, Point, SemiSet};
use pltg::suspend::{
    compare_suspension, double_suspend_factor, double_suspend_graph, isomorphic, quantum_ball_graph,
    quantum_names, quantum_sphere_gluing, quantum_sphere_graph, sphere_zero_in_ball_one,
};
use pltg::testkit::suites;

fn endpoint_union() -> pltg::glue::AdjunctionResult {
    let m = sphere_zero_in_ball_one();
    let side = SubgraphWitness::new(&m.dst, &m.src, m.m0.clone(), m.m1.clone()).unwrap();
    union_graph(&side, &side).unwrap()
}

#[test]
fn suspension_commutes_with_the_endpoint_gluing() {
    let res = endpoint_union();
    let c = compare_suspension(&res.spec).unwrap();
    let iso = c.iso.expect("isomorphism");
    assert!(iso.verify(&c.glued_of_suspensions, &c.suspension_of_glued));
    let v = c.glued_of_suspensions.v();
    assert_eq!((v.node_count(), v.arc_count()), (3, 2));
    let circle: Vec<_> = v.arcs().iter().map(|a| a.ends).collect();
    assert!(circle.iter().all(|e| matches!(e, [Attach::Closed(a), Attach::Closed(b)] if a != b)));
    assert!(isomorphic(&c.glued_of_suspensions, &quantum_sphere_graph(3).unwrap()).is_none());
}

#[test]
fn suspension_commutes_with_random_discrete_gluings() {
    let out = suites::suspension_compatibility(0x54, 100);
    assert!(out.passed(100), "{}", out.summary());
}

#[test]
fn quantum_pipeline_is_positive_at_every_level() {
    for n in 0..=3 {
        let res = quantum_sphere_gluing(n).unwrap();
        let (names, corners) = quantum_names(n);
        let cert = check_main_theorem(&res, &names, Some(corners.clone()));
        assert_eq!(cert.verdict, Verdict::Positive, "level {n}: {cert:?}");
        assert_eq!(cert.corners, Some(corners));
        let ball = quantum_ball_graph(2 * n + 1).unwrap();
        assert!(isomorphic(&res.spec.e, &ball).is_some());
        let s = quantum_sphere_graph(2 * n).unwrap();
        assert!(isomorphic(&res.spec.g.sub, &s).is_some());
    }
}

#[test]
fn level_one_names_the_three_sphere_square() {
    let res = quantum_sphere_gluing(1).unwrap();
    let (names, corners) = quantum_names(1);
    let cert = check_main_theorem(&res, &names, Some(corners));
    let c = cert.corners.unwrap();
    assert_eq!(c.union, "C(S^3_q)");
    assert_eq!((c.e.as_str(), c.f.as_str()), ("C(B^3_q)", "C(B^3_q)"));
    assert_eq!(c.intersection, "C(S^2_q)");
    let g = &res.spec.g.sub;
    let reg = &g.classify().reg;
    assert_eq!(reg, &SemiSet::from_points(g.v(), &[Point::Node(0)]));
}

#[test]
fn suspension_shape_and_regularity() {
    for g in [quantum_ball_graph(1).unwrap(), quantum_sphere_graph(1).unwrap(), quantum_sphere_graph(0).unwrap()] {
        let s = double_suspend_graph(&g).unwrap();
        assert_eq!(s.v().node_count(), g.v().node_count() + 1);
        assert_eq!(s.v().arc_count(), g.v().arc_count());
        assert_eq!(s.ed().node_count(), g.ed().node_count() + g.v().node_count() + 1);
        assert_eq!(s.ed().arc_count(), g.ed().arc_count() + g.v().arc_count());
        assert!(s.classify().reg.has_node(0));
        let id = double_suspend_factor(&FactorMap::identity(&g)).unwrap();
        assert_eq!(id.m0, pltg::plcore::CellMap::identity(s.v()));
        assert_eq!(id.m1, pltg::plcore::CellMap::identity(s.ed()));
    }
    let incl = double_suspend_factor(&sphere_zero_in_ball_one()).unwrap();
    assert!(check_factor_map(&incl).all());
}
