//! Adjunction graphs `E ∪_m F` and the regularity battery.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::glue::adjunction::{adjunction_along, Adjunction};
use crate::morphism::{
    check_f1, check_factor_map, is_regular_closed_subgraph, FactorMap, FactorReport, RegularityReport,
    SubgraphWitness,
};
use crate::plcore::{same_host, LhMode, SemiSet};
use crate::topograph::TopGraph;

/// Gluing data: `F` is attached to `E` along the closed subgraph `G ⊆ F` via `m: G → E`.
#[derive(Clone, Debug)]
pub struct GlueSpec {
    pub e: TopGraph,
    pub f: TopGraph,
    pub g: SubgraphWitness,
    pub m: FactorMap,
}

impl GlueSpec {
    /// Checks that `G` is closed in `F` with `r_F⁻¹(G⁰) ⊆ G¹` and that `m` is proper with (F1).
    pub fn new(e: &TopGraph, g: SubgraphWitness, m: FactorMap) -> Result<GlueSpec> {
        if !same_host(m.src.v(), g.sub.v()) || !same_host(m.src.ed(), g.sub.ed()) {
            return Err(Error::HostMismatch("m must be defined on the subgraph G".into()));
        }
        if !same_host(m.dst.v(), e.v()) || !same_host(m.dst.ed(), e.ed()) {
            return Err(Error::HostMismatch("m must land in E".into()));
        }
        if !(g.e0.is_closed_embedding() && g.e1.is_closed_embedding()) {
            return Err(Error::Precondition("G is not a closed subgraph of F".into()));
        }
        let f = g.ambient.clone();
        let missing = f.r().preimage(&g.vertex_image()).difference(&g.edge_image());
        if !missing.is_empty() {
            return Err(Error::Precondition(format!("edges {missing} of F end in G but are not in G")));
        }
        if !m.m0.is_proper() || !m.m1.is_proper() {
            return Err(Error::NotProper("attaching map is not proper".into()));
        }
        if let Err(v) = check_f1(&m) {
            return Err(Error::Precondition(format!("attaching map fails (F1): {v}")));
        }
        let m = FactorMap::unchecked(&g.sub, e, m.m0, m.m1)?;
        Ok(GlueSpec { e: e.clone(), f, g, m })
    }
}

/// The glued graph with its structure maps.
#[derive(Clone, Debug)]
pub struct AdjunctionResult {
    pub spec: GlueSpec,
    pub glued: TopGraph,
    /// `E` as a closed subgraph of the glued graph.
    pub embed_e: SubgraphWitness,
    /// The quotient map `F → E ∪_m F`.
    pub p: FactorMap,
    pub vertices: Adjunction,
    pub edges: Adjunction,
}

fn combined_mode(a: LhMode, b: LhMode) -> LhMode {
    if a == LhMode::Strict && b == LhMode::Strict {
        LhMode::Strict
    } else {
        LhMode::OntoImage
    }
}

pub fn adjunction_graph(spec: &GlueSpec) -> Result<AdjunctionResult> {
    let (e, f) = (&spec.e, &spec.f);
    let vertices = adjunction_along(e.v(), f.v(), &spec.g.e0, &spec.m.m0)?;
    let edges = adjunction_along(e.ed(), f.ed(), &spec.g.e1, &spec.m.m1)?;
    let s = edges.map_out(&vertices.embed.compose(e.s())?, &vertices.p.compose(f.s())?)?;
    let r = edges.map_out(&vertices.embed.compose(e.r())?, &vertices.p.compose(f.r())?)?;
    let glued = TopGraph::new(s, r, combined_mode(e.lh_mode(), f.lh_mode()))?;
    let embed_e = SubgraphWitness::unchecked(&glued, e, vertices.embed.clone(), edges.embed.clone())?;
    let p = FactorMap::unchecked(f, &glued, vertices.p.clone(), edges.p.clone())?;
    Ok(AdjunctionResult { spec: spec.clone(), glued, embed_e, p, vertices, edges })
}

/// `E ∪ F` for two graphs sharing the subgraph `E ∩ F`, given by its two embeddings.
pub fn union_graph(in_e: &SubgraphWitness, in_f: &SubgraphWitness) -> Result<AdjunctionResult> {
    if !same_host(in_e.sub.v(), in_f.sub.v()) || !same_host(in_e.sub.ed(), in_f.sub.ed()) {
        return Err(Error::HostMismatch("the two embeddings must share the intersection graph".into()));
    }
    let m = FactorMap::unchecked(&in_f.sub, &in_e.ambient, in_e.e0.clone(), in_e.e1.clone())?;
    if !m.is_injective() {
        return Err(Error::Precondition("a union needs an injective attaching map".into()));
    }
    adjunction_graph(&GlueSpec::new(&in_e.ambient, in_f.clone(), m)?)
}

impl AdjunctionResult {
    /// `m` as a subgraph witness, when it is a closed embedding.
    pub fn intersection_in_e(&self) -> Option<SubgraphWitness> {
        let m = &self.spec.m;
        if m.m0.is_closed_embedding() && m.m1.is_closed_embedding() {
            SubgraphWitness::unchecked(&self.spec.e, &m.src, m.m0.clone(), m.m1.clone()).ok()
        } else {
            None
        }
    }

    /// `F` inside the glued graph, when `p` is a closed embedding.
    pub fn f_in_glued(&self) -> Option<SubgraphWitness> {
        if self.p.m0.is_closed_embedding() && self.p.m1.is_closed_embedding() {
            SubgraphWitness::unchecked(&self.glued, &self.spec.f, self.p.m0.clone(), self.p.m1.clone()).ok()
        } else {
            None
        }
    }

    pub fn is_union(&self) -> bool {
        self.spec.m.is_injective()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularAdjunctionReport {
    pub g_in_f: RegularityReport,
    pub e_in_glued: RegularityReport,
    pub m: FactorReport,
    pub p: FactorReport,
    /// All four conditions of a regular adjunction.
    pub regular: bool,
    /// `p0`, `p1` proper and (F1) for `p`; holds for every adjunction graph.
    pub p_proper_f1: bool,
    /// `m` satisfies (F2), the hypothesis under which `p` inherits (F2).
    pub f2_inheritance_applies: bool,
    /// `r_∪⁻¹(E⁰) ⊆ E¹`.
    pub glued_range_preimage: bool,
    /// `G⁰` negatively invariant in `F` and `m` satisfies (F3).
    pub f3_equivalence_applies: bool,
    pub e_negatively_invariant: bool,
    /// The two sides of the (F3) equivalence agree whenever it applies.
    pub f3_equivalence_consistent: bool,
}

pub fn check_regular_adjunction(res: &AdjunctionResult) -> RegularAdjunctionReport {
    let g_in_f = is_regular_closed_subgraph(&res.spec.g);
    let e_in_glued = is_regular_closed_subgraph(&res.embed_e);
    let m = check_factor_map(&res.spec.m);
    let p = check_factor_map(&res.p);
    let regular = g_in_f.regular() && e_in_glued.regular() && m.all() && p.all();
    let p_proper_f1 = p.proper0 && p.proper1 && p.f1;
    let e0 = res.embed_e.vertex_image();
    let glued_range_preimage = res.glued.r().preimage(&e0).is_subset(&res.embed_e.edge_image());
    let f3_equivalence_applies = g_in_f.negatively_invariant && m.f3;
    let e_negatively_invariant = res.glued.is_negatively_invariant(&e0);
    let f3_equivalence_consistent = !f3_equivalence_applies || e_negatively_invariant == p.f3;
    RegularAdjunctionReport {
        f2_inheritance_applies: m.f2,
        g_in_f,
        e_in_glued,
        m,
        p,
        regular,
        p_proper_f1,
        glued_range_preimage,
        f3_equivalence_applies,
        e_negatively_invariant,
        f3_equivalence_consistent,
    }
}

/// `G_sink ∩ (cl F_sink ∖ F_sink) ∩ F_fin`, as a subset of `F⁰`; the condition holds iff it is empty.
pub fn check_boundcond(spec: &GlueSpec) -> Result<(bool, SemiSet)> {
    let g = is_regular_closed_subgraph(&spec.g);
    if !g.regular() {
        return Err(Error::Precondition(format!(
            "G is not a regular closed subgraph of F: {}",
            g.witnesses.join("; ")
        )));
    }
    let m = check_factor_map(&spec.m);
    if !m.all() {
        return Err(Error::Precondition(format!(
            "m is not a regular factor map: {}",
            m.witnesses.join("; ")
        )));
    }
    let fc = spec.f.classify();
    let g_sink = spec.g.e0.image(&spec.g.sub.classify().sink);
    let witness = g_sink.intersection(&fc.sink.boundary_points()).intersection(&fc.fin);
    Ok((witness.is_empty(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::{CellMap, Complex, Point};

    fn points(names: &[&str]) -> crate::plcore::Host {
        let mut c = Complex::new();
        for n in names {
            c.add_node(*n);
        }
        c.into_host()
    }

    #[test]
    fn gluing_two_edgeless_graphs_at_a_point() {
        let e = TopGraph::edgeless(&points(&["a", "b"]));
        let f = TopGraph::edgeless(&points(&["c", "d"]));
        let g = TopGraph::edgeless(&points(&["x"]));
        let in_e = SubgraphWitness::new(
            &e,
            &g,
            CellMap::new(g.v(), e.v(), vec![Point::Node(1)], vec![]).unwrap(),
            CellMap::from_empty(g.ed(), e.ed()),
        )
        .unwrap();
        let in_f = SubgraphWitness::new(
            &f,
            &g,
            CellMap::new(g.v(), f.v(), vec![Point::Node(0)], vec![]).unwrap(),
            CellMap::from_empty(g.ed(), f.ed()),
        )
        .unwrap();
        let res = union_graph(&in_e, &in_f).unwrap();
        assert_eq!(res.glued.v().node_count(), 3);
        let rep = check_regular_adjunction(&res);
        assert!(rep.regular);
        assert!(rep.f3_equivalence_consistent);
        let (ok, w) = check_boundcond(&res.spec).unwrap();
        assert!(ok && w.is_empty());
    }
}
