use pltg::morphism::{check_dynamical_factor, check_f2, check_factor_map, is_regular_closed_subgraph, FactorMap};
use pltg::plcore::{CellMap, Complex, Point};
use pltg::testkit::fixtures::counterexample_embeddings;
use pltg::testkit::gen::{self, PairKind};
use pltg::testkit::suites;
use pltg::topograph::TopGraph;

#[test]
fn counterexample_subgraph_is_regular_in_both_graphs() {
    let (in_e, in_f) = counterexample_embeddings();
    for w in [&in_e, &in_f] {
        let rep = is_regular_closed_subgraph(w);
        assert!(rep.regular(), "{:?}", rep.witnesses);
        assert!(rep.inclusion_is_regular_factor);
    }
}

#[test]
fn regular_subgraphs_are_those_with_regular_inclusions() {
    let out = suites::subgraph_equivalence(0x32, 600);
    assert!(out.passed(600), "{}", out.summary());
}

#[test]
fn images_of_regular_factor_maps_are_regular() {
    let out = suites::image_regularity(0x33, 500);
    assert!(out.passed(500), "{}", out.summary());
}

#[test]
fn row_finiteness_passes_to_regular_subgraphs() {
    let out = suites::row_finite_subgraphs(0x34, 500);
    assert!(out.passed(500), "{}", out.summary());
}

#[test]
fn regular_factor_maps_of_row_finite_graphs_keep_regular_vertices() {
    let out = suites::row_finite_regular_images(0x35, 500);
    assert!(out.passed(500), "{}", out.summary());
}

#[test]
fn stratified_f2_matches_sampled_fibers() {
    let out = suites::f2_oracle(0xf2, 200);
    assert!(out.passed(200), "{}", out.summary());
}

#[test]
fn dynamical_verdicts_agree_for_injective_maps() {
    let mut rng = gen::rng(0x51);
    let mut injective = 0;
    let mut disagreements = 0;
    for _ in 0..600 {
        let pair = gen::random_dynamical_pair(&mut rng);
        let v = check_dynamical_factor(&pair.x.graph(), &pair.y.graph(), &pair.phi).unwrap();
        if v.injective {
            injective += 1;
            assert!(v.agree, "{:?}: {v:?}", pair.kind);
        } else if !v.agree {
            disagreements += 1;
            assert!(v.factor_map && !v.clauses, "{:?}: {v:?}", pair.kind);
            assert!(v.proper && v.equivariant, "{:?}: {v:?}", pair.kind);
        }
        if matches!(pair.kind, PairKind::Power | PairKind::Inclusion) {
            assert!(v.clauses && v.factor_map, "{:?}: {v:?}", pair.kind);
        }
        if pair.kind == PairKind::OpenInclusion {
            assert!(!v.proper && !v.factor_map);
        }
    }
    assert!(injective >= 200 && disagreements > 0);
}

fn two_points() -> TopGraph {
    let mut c = Complex::new();
    c.add_node("a");
    c.add_node("b");
    let x = c.into_host();
    let id = CellMap::identity(&x);
    TopGraph::from_dynamical_system(&x, &id, &id).unwrap()
}

#[test]
fn collapsing_two_fixed_points_is_a_regular_factor_map() {
    let x = two_points();
    let mut c = Complex::new();
    c.add_node("p");
    let y_host = c.into_host();
    let id = CellMap::identity(&y_host);
    let y = TopGraph::from_dynamical_system(&y_host, &id, &id).unwrap();
    let phi = CellMap::constant(x.v(), y.v(), Point::Node(0)).unwrap();
    let v = check_dynamical_factor(&x, &y, &phi).unwrap();
    assert!(v.proper && v.equivariant && !v.injective);
    assert!(!v.clauses);
    let f = FactorMap::new(&x, &y, phi.clone(), phi.rehost(x.ed(), y.ed())).unwrap();
    assert!(check_f2(&f).is_ok());
    assert!(check_factor_map(&f).all());
    assert!(v.factor_map && !v.agree);
}
