//! Hand-transcribed graphs shared by the tests.

use crate::glue::{union_graph, AdjunctionResult};
use crate::morphism::SubgraphWitness;
use crate::plcore::{Attach, CellMap, Chart, Complex, LhMode, Piece, Point};
use crate::rational::{int, one, q, zero};
use crate::topograph::TopGraph;

/// `V = [0,2]`, `Ed = (0,1) ⊔ {2}`, `s(x) = x/2`, `s(2) = 1`, `r` the inclusion.
pub fn counterexample_f() -> TopGraph {
    let mut v = Complex::new();
    let a = v.add_node("0");
    let b = v.add_node("2");
    v.add_arc_with_chart("A", Attach::Closed(a), Attach::Closed(b), Chart::new(int(0), int(2)));
    let v = v.into_host();
    let mut e = Complex::new();
    e.add_node("q");
    e.add_arc_with_chart("B", Attach::Open, Attach::Open, Chart::new(int(0), int(1)));
    let e = e.into_host();
    let s = CellMap::new(
        &e,
        &v,
        vec![Point::Interior(0, q(1, 2))],
        vec![vec![Piece::affine(zero(), one(), 0, q(1, 4), zero())]],
    )
    .expect("s");
    let r = CellMap::new(&e, &v, vec![Point::Node(1)], vec![vec![Piece::affine(zero(), one(), 0, q(1, 2), zero())]])
        .expect("r");
    TopGraph::new(s, r, LhMode::OntoImage).expect("valid in onto-image mode")
}

/// Two vertices `1` and `3`, no edges.
pub fn counterexample_e() -> TopGraph {
    let mut v = Complex::new();
    v.add_node("1");
    v.add_node("3");
    TopGraph::edgeless(&v.into_host())
}

/// The single vertex `1`.
pub fn counterexample_g() -> TopGraph {
    let mut v = Complex::new();
    v.add_node("1");
    TopGraph::edgeless(&v.into_host())
}

/// `G = {1}` inside `E` and inside `F`.
pub fn counterexample_embeddings() -> (SubgraphWitness, SubgraphWitness) {
    let (e, f, g) = (counterexample_e(), counterexample_f(), counterexample_g());
    let in_e = SubgraphWitness::new(
        &e,
        &g,
        CellMap::new(g.v(), e.v(), vec![Point::Node(0)], vec![]).expect("1 in E"),
        CellMap::from_empty(g.ed(), e.ed()),
    )
    .expect("G in E");
    let in_f = SubgraphWitness::new(
        &f,
        &g,
        CellMap::new(g.v(), f.v(), vec![Point::Interior(0, q(1, 2))], vec![]).expect("1 in F"),
        CellMap::from_empty(g.ed(), f.ed()),
    )
    .expect("G in F");
    (in_e, in_f)
}

pub fn counterexample_union() -> AdjunctionResult {
    let (in_e, in_f) = counterexample_embeddings();
    union_graph(&in_e, &in_f).expect("union")
}
