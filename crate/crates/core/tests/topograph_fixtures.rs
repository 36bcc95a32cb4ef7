use pltg::discrete::{to_topgraph, DiscreteGraph, Mult};
use pltg::morphism::{subgraph_pair, SubgraphWitness};
use pltg::plcore::{Attach, CellMap, Complex, Interval, LhMode, Piece, Point, SemiSet};
use pltg::rational::{one, q, zero};
use pltg::suspend::{double_suspend_factor, isomorphic, quantum_ball_graph, sphere_zero_in_ball_one};
use pltg::testkit::fixtures::{counterexample_embeddings, counterexample_f};
use pltg::topograph::{AdmissiblePair, TopGraph};

fn arc_set(g: &TopGraph, lo: (i64, i64), hi: (i64, i64), closed: (bool, bool)) -> SemiSet {
    let mut s = SemiSet::empty(g.v());
    let chart = &g.v().arc(0).chart;
    let iv = Interval {
        lo: chart.to_param(&q(lo.0, lo.1)),
        hi: chart.to_param(&q(hi.0, hi.1)),
        lo_closed: closed.0,
        hi_closed: closed.1,
    };
    s.insert_interval(0, &iv);
    s
}

#[test]
fn counterexample_source_image_and_closure() {
    let f = counterexample_f();
    let img = f.source_image();
    let expected = arc_set(&f, (0, 1), (1, 2), (false, false)).union(&arc_set(&f, (1, 1), (1, 1), (true, true)));
    assert_eq!(img, expected);
    let mut cl = arc_set(&f, (0, 1), (1, 2), (true, true)).union(&arc_set(&f, (1, 1), (1, 1), (true, true)));
    cl.insert_point(&Point::Node(0));
    assert_eq!(img.closure(), cl);
    assert!(!img.is_preopen());
    assert!(!img.is_compact());
    let one_pt = SemiSet::from_points(f.v(), &[Point::Interior(0, q(1, 2))]);
    assert!(f.r().preimage(&one_pt).is_empty());
}

#[test]
fn counterexample_subgraph_pair_is_the_point_twice() {
    let (_, in_f) = counterexample_embeddings();
    let f = counterexample_f();
    let pair = subgraph_pair(&in_f).unwrap();
    let one_pt = SemiSet::from_points(f.v(), &[Point::Interior(0, q(1, 2))]);
    assert_eq!(pair, AdmissiblePair { y: one_pt.clone(), z: one_pt.clone() });
    assert!(f.is_admissible(&pair));
    let rho = f.build_e_rho(&pair).unwrap();
    assert_eq!(rho.v().node_count(), 1);
    assert!(rho.ed().is_empty());
}

#[test]
fn ball_three_classes() {
    let b3 = quantum_ball_graph(3).unwrap();
    let c = b3.classify();
    let v = SemiSet::from_points(b3.v(), &[Point::Node(0)]);
    assert_eq!(c.reg, v);
    assert_eq!(c.sing, v.complement());
    assert!(c.inf.is_empty());
    assert!(b3.is_row_finite());
    let zero_pt = SemiSet::from_points(b3.v(), &[Point::Interior(0, q(1, 2))]);
    assert!(!b3.is_positively_invariant(&zero_pt));
    assert!(b3.restrict_to_invariant(&v.complement()).is_err());
}

#[test]
fn suspended_endpoint_pair() {
    let incl = double_suspend_factor(&sphere_zero_in_ball_one()).unwrap();
    let w = SubgraphWitness::new(&incl.dst, &incl.src, incl.m0.clone(), incl.m1.clone()).unwrap();
    let pair = subgraph_pair(&w).unwrap();
    let ambient = &incl.dst;
    let ends: Vec<Point> = (1..ambient.v().node_count()).map(Point::Node).collect();
    let mut y = ends.clone();
    y.push(Point::Node(0));
    assert_eq!(pair.y, SemiSet::from_points(ambient.v(), &y));
    assert_eq!(pair.z, SemiSet::from_points(ambient.v(), &ends));
    assert!(ambient.is_admissible(&pair));
}

#[test]
fn maximal_pair_is_admissible_and_rebuilds_the_graph() {
    let b3 = quantum_ball_graph(3).unwrap();
    let whole = AdmissiblePair { y: SemiSet::whole(b3.v()), z: b3.classify().sing.clone() };
    assert!(b3.is_admissible(&whole));
    let rho = b3.build_e_rho(&whole).unwrap();
    assert!(isomorphic(&rho, &b3).is_some());
}

/// A vertex `v` with a loop, an arc `A` from `v` to `u`, and an open edge arc over the interior of `A`
/// emitted from `v`; `v` is an infinite emitter yet regular inside `{v}`.
fn looped_emitter() -> TopGraph {
    let mut v = Complex::new();
    let vv = v.add_node("v");
    let u = v.add_node("u");
    v.add_arc("A", Attach::Closed(vv), Attach::Closed(u));
    let v = v.into_host();
    let mut e = Complex::new();
    e.add_node("l");
    e.add_arc("B", Attach::Open, Attach::Open);
    let e = e.into_host();
    let s = CellMap::new(&e, &v, vec![Point::Node(0)], vec![vec![Piece::constant(zero(), one(), Point::Node(0))]]).unwrap();
    let r = CellMap::new(&e, &v, vec![Point::Node(0)], vec![vec![Piece::identity(0)]]).unwrap();
    TopGraph::new(s, r, LhMode::OntoImage).unwrap()
}

#[test]
fn e_rho_duplicates_a_regular_part_of_the_singular_set() {
    let g = looped_emitter();
    let v = SemiSet::from_points(g.v(), &[Point::Node(0)]);
    assert!(g.classify().inf.has_node(0));
    let pair = AdmissiblePair { y: v.clone(), z: v.clone() };
    assert!(g.is_admissible(&pair));
    assert!(g.restricted_sing(&v).unwrap().is_empty());
    let rho = g.build_e_rho(&pair).unwrap();
    let mut d = DiscreteGraph::new(2);
    d.set_mult(0, 0, Mult::ONE);
    d.set_mult(0, 1, Mult::ONE);
    let expected = to_topgraph(&d).unwrap().with_mode(LhMode::OntoImage);
    assert!(isomorphic(&rho, &expected).is_some(), "{rho:?}");
    let c = rho.classify();
    assert_eq!(c.sink.as_points().map(|p| p.len()), Some(1));
}

#[test]
fn inadmissible_pairs_are_rejected() {
    let f = counterexample_f();
    let open = arc_set(&f, (0, 1), (1, 2), (false, false));
    let bad = AdmissiblePair { y: open, z: SemiSet::empty(f.v()) };
    assert!(f.check_admissible_pair(&bad).contains(&"Y not closed".to_string()));
    assert!(f.build_e_rho(&bad).is_err());
    let b3 = quantum_ball_graph(3).unwrap();
    let v = SemiSet::from_points(b3.v(), &[Point::Node(0)]);
    let regular_z = AdmissiblePair { y: SemiSet::whole(b3.v()), z: v };
    assert!(!b3.is_admissible(&regular_z));
}

#[test]
fn discrete_admissible_pairs_are_all_admissible() {
    let mut d = DiscreteGraph::new(3);
    d.set_mult(0, 0, Mult::ONE);
    d.set_mult(0, 1, Mult::Fin(2));
    d.set_mult(2, 1, Mult::ONE);
    let g = to_topgraph(&d).unwrap();
    let pairs = g.enumerate_admissible_pairs().unwrap();
    assert!(pairs.iter().all(|p| g.is_admissible(p)));
    assert!(pairs.contains(&AdmissiblePair { y: SemiSet::whole(g.v()), z: g.classify().sing.clone() }));
    for (i, a) in pairs.iter().enumerate() {
        for b in &pairs[i + 1..] {
            assert!(!(b.y.is_subset(&a.y) && b.z.is_subset(&a.z)), "order is not a linear extension");
        }
    }
    assert!(counterexample_f().enumerate_admissible_pairs().is_err());
}
