//! Factor maps between topological graphs and regular closed subgraphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plcore::{
    point_name, same_host, sub_complex, CellMap, Loc, Point, SemiSet, Violation,
};
use crate::rational::{midpoint, one, zero, Q};
use crate::topograph::{AdmissiblePair, TopGraph};

/// A pair `(m0, m1)` of proper maps from `src` to `dst`.
#[derive(Clone, Debug)]
pub struct FactorMap {
    pub src: TopGraph,
    pub dst: TopGraph,
    pub m0: CellMap,
    pub m1: CellMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub proper0: bool,
    pub proper1: bool,
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
    pub witnesses: Vec<String>,
}

impl FactorReport {
    /// Whether the pair is a regular factor map.
    pub fn all(&self) -> bool {
        self.proper0 && self.proper1 && self.f1 && self.f2 && self.f3
    }
}

impl FactorMap {
    /// Requires both components to be proper.
    pub fn new(src: &TopGraph, dst: &TopGraph, m0: CellMap, m1: CellMap) -> Result<FactorMap> {
        let f = FactorMap::unchecked(src, dst, m0, m1)?;
        for (name, m) in [("m0", &f.m0), ("m1", &f.m1)] {
            if let Err((end, p)) = m.check_proper() {
                return Err(Error::NotProper(format!(
                    "{name} sends an open end of {} to {}",
                    m.src().arc(end.arc).name,
                    point_name(m.dst(), &p)
                )));
            }
        }
        Ok(f)
    }

    /// Only checks that the components connect the right spaces.
    pub fn unchecked(src: &TopGraph, dst: &TopGraph, m0: CellMap, m1: CellMap) -> Result<FactorMap> {
        if !same_host(m0.src(), src.v()) || !same_host(m0.dst(), dst.v()) {
            return Err(Error::HostMismatch("m0 must map src.V to dst.V".into()));
        }
        if !same_host(m1.src(), src.ed()) || !same_host(m1.dst(), dst.ed()) {
            return Err(Error::HostMismatch("m1 must map src.Ed to dst.Ed".into()));
        }
        let m0 = m0.rehost(src.v(), dst.v());
        let m1 = m1.rehost(src.ed(), dst.ed());
        Ok(FactorMap { src: src.clone(), dst: dst.clone(), m0, m1 })
    }

    pub fn identity(g: &TopGraph) -> FactorMap {
        FactorMap {
            src: g.clone(),
            dst: g.clone(),
            m0: CellMap::identity(g.v()),
            m1: CellMap::identity(g.ed()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FactorMap) -> Result<FactorMap> {
        FactorMap::unchecked(&other.src, &self.dst, self.m0.compose(&other.m0)?, self.m1.compose(&other.m1)?)
    }

    pub fn is_injective(&self) -> bool {
        self.m0.is_injective() && self.m1.is_injective()
    }
}

fn commutes(lhs: &CellMap, rhs: &CellMap, what: &str) -> std::result::Result<(), Violation> {
    if lhs == rhs {
        return Ok(());
    }
    match lhs.first_difference(rhs) {
        Some(p) => {
            let name = point_name(lhs.src(), &p);
            Err(Violation::at(p, format!("{what} fails at edge {name}")))
        }
        None => Err(Violation::general(format!("{what} fails"))),
    }
}

/// `r∘m1 = m0∘r` and `s∘m1 = m0∘s`.
pub fn check_f1(f: &FactorMap) -> std::result::Result<(), Violation> {
    let r_lhs = f.dst.r().compose(&f.m1).map_err(|e| Violation::general(e.to_string()))?;
    let r_rhs = f.m0.compose(f.src.r()).map_err(|e| Violation::general(e.to_string()))?;
    commutes(&r_lhs, &r_rhs, "r∘m1 = m0∘r")?;
    let s_lhs = f.dst.s().compose(&f.m1).map_err(|e| Violation::general(e.to_string()))?;
    let s_rhs = f.m0.compose(f.src.s()).map_err(|e| Violation::general(e.to_string()))?;
    commutes(&s_lhs, &s_rhs, "s∘m1 = m0∘s")
}

fn push_point(p: Point, cuts: &mut BTreeMap<usize, BTreeSet<Q>>, nodes: &mut BTreeSet<usize>) {
    match p {
        Point::Node(n) => {
            nodes.insert(n);
        }
        Point::Interior(a, t) => {
            cuts.entry(a).or_default().insert(t);
        }
    }
}

/// Points of `src.V` where the fiber data of `r_src`, `r_dst`, `m0` or `m1` can change.
pub fn f2_sample_points(f: &FactorMap) -> Vec<Point> {
    let (src, dst) = (&f.src, &f.dst);
    let mut cuts: BTreeMap<usize, BTreeSet<Q>> = BTreeMap::new();
    let mut nodes = BTreeSet::new();
    for a in 0..src.v().arc_count() {
        cuts.entry(a).or_default().extend(f.m0.breakpoints(a));
    }
    let r = src.r();
    for n in 0..src.ed().node_count() {
        push_point(r.node_image(n).clone(), &mut cuts, &mut nodes);
    }
    for a in 0..src.ed().arc_count() {
        for t in r.breakpoints(a).into_iter().chain(f.m1.breakpoints(a)) {
            push_point(r.apply(&Point::Interior(a, t)), &mut cuts, &mut nodes);
        }
    }
    for (arc, side) in src.ed().open_ends() {
        if let Loc::At(p) = r.limit(crate::plcore::End { arc, side }) {
            push_point(p, &mut cuts, &mut nodes);
        }
    }
    let mut critical_dst: Vec<Point> = (0..dst.v().node_count()).map(Point::Node).collect();
    let rd = dst.r();
    for n in 0..dst.ed().node_count() {
        critical_dst.push(rd.node_image(n).clone());
    }
    for a in 0..dst.ed().arc_count() {
        for t in rd.breakpoints(a) {
            critical_dst.push(rd.apply(&Point::Interior(a, t)));
        }
    }
    for (arc, side) in dst.ed().open_ends() {
        if let Loc::At(p) = rd.limit(crate::plcore::End { arc, side }) {
            critical_dst.push(p);
        }
    }
    for p in critical_dst {
        if let Some(pre) = f.m0.point_preimage(&p) {
            for q in pre {
                push_point(q, &mut cuts, &mut nodes);
            }
        }
    }
    let mut samples: Vec<Point> = (0..src.v().node_count()).map(Point::Node).collect();
    for a in 0..src.v().arc_count() {
        let mut ts: Vec<Q> = vec![zero()];
        ts.extend(cuts.get(&a).into_iter().flatten().cloned());
        ts.push(one());
        for w in ts.windows(2) {
            samples.push(Point::Interior(a, midpoint(&w[0], &w[1])));
            if w[1] != one() {
                samples.push(Point::Interior(a, w[1].clone()));
            }
        }
    }
    samples
}

/// Whether `m1` maps `r_src⁻¹(v)` bijectively onto `r_dst⁻¹(m0(v))`.
pub fn fiber_bijective_at(f: &FactorMap, v: &Point) -> std::result::Result<(), Violation> {
    let name = point_name(f.src.v(), v);
    let src_fiber = f
        .src
        .r()
        .point_preimage(v)
        .ok_or_else(|| Violation::at(v.clone(), format!("infinite range fiber over {name}")))?;
    let target = f.m0.apply(v);
    let mut dst_fiber = f
        .dst
        .r()
        .point_preimage(&target)
        .ok_or_else(|| Violation::at(v.clone(), format!("infinite range fiber over the image of {name}")))?;
    let mut images: Vec<Point> = src_fiber.iter().map(|e| f.m1.apply(e)).collect();
    images.sort();
    dst_fiber.sort();
    let distinct = {
        let mut d = images.clone();
        d.dedup();
        d.len() == images.len()
    };
    if !distinct {
        return Err(Violation::at(v.clone(), format!("two edges ending at {name} have the same image")));
    }
    if images != dst_fiber {
        return Err(Violation::at(
            v.clone(),
            format!(
                "{} edges end at {name} but {} edges end at its image {}",
                src_fiber.len(),
                dst_fiber.len(),
                point_name(f.dst.v(), &target)
            ),
        ));
    }
    Ok(())
}

/// Unique lifting of range fibers, decided on a finite stratification of `src.V`.
pub fn check_f2(f: &FactorMap) -> std::result::Result<(), Violation> {
    if let Err(v) = check_f1(f) {
        return Err(Violation { point: v.point, reason: format!("F1 unverified: {}", v.reason) });
    }
    for v in f2_sample_points(f) {
        fiber_bijective_at(f, &v)?;
    }
    Ok(())
}

/// `m0(sing_src) ⊆ sing_dst`.
pub fn check_f3(f: &FactorMap) -> std::result::Result<(), Violation> {
    let bad = f.m0.image(&f.src.classify().sing).difference(&f.dst.classify().sing);
    match bad.sample_point() {
        None => Ok(()),
        Some(p) => Err(Violation::at(p, format!("singular vertices map to regular vertices {bad}"))),
    }
}

pub fn check_factor_map(f: &FactorMap) -> FactorReport {
    let mut witnesses = Vec::new();
    let proper0 = f.m0.is_proper();
    let proper1 = f.m1.is_proper();
    if !proper0 {
        witnesses.push("m0 is not proper".to_string());
    }
    if !proper1 {
        witnesses.push("m1 is not proper".to_string());
    }
    let mut flag = |r: std::result::Result<(), Violation>, id: &str| match r {
        Ok(()) => true,
        Err(v) => {
            witnesses.push(format!("{id}: {v}"));
            false
        }
    };
    let f1 = flag(check_f1(f), "F1");
    let f2 = flag(check_f2(f), "F2");
    let f3 = flag(check_f3(f), "F3");
    FactorReport { proper0, proper1, f1, f2, f3, witnesses }
}

/// A closed subgraph given by embeddings into an ambient graph.
#[derive(Clone, Debug)]
pub struct SubgraphWitness {
    pub ambient: TopGraph,
    pub sub: TopGraph,
    pub e0: CellMap,
    pub e1: CellMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub closed: bool,
    pub negatively_invariant: bool,
    pub full_range_preimage: bool,
    /// The inclusion pair passes every factor-map condition.
    pub inclusion_is_regular_factor: bool,
    pub witnesses: Vec<String>,
}

impl RegularityReport {
    pub fn regular(&self) -> bool {
        self.closed && self.negatively_invariant && self.full_range_preimage
    }
}

impl SubgraphWitness {
    /// Requires closed embeddings commuting with `s` and `r`.
    pub fn new(ambient: &TopGraph, sub: &TopGraph, e0: CellMap, e1: CellMap) -> Result<SubgraphWitness> {
        let w = SubgraphWitness::unchecked(ambient, sub, e0, e1)?;
        for (name, e) in [("e0", &w.e0), ("e1", &w.e1)] {
            if !e.is_closed_embedding() {
                return Err(Error::Precondition(format!("{name} is not a closed embedding")));
            }
        }
        if let Err(v) = check_f1(&w.inclusion()) {
            return Err(Error::Precondition(format!("embeddings do not commute with s and r: {v}")));
        }
        Ok(w)
    }

    pub fn unchecked(ambient: &TopGraph, sub: &TopGraph, e0: CellMap, e1: CellMap) -> Result<SubgraphWitness> {
        let f = FactorMap::unchecked(sub, ambient, e0, e1)?;
        Ok(SubgraphWitness { ambient: ambient.clone(), sub: sub.clone(), e0: f.m0, e1: f.m1 })
    }

    /// The subgraph spanned by a closed set `y` with `r⁻¹(y)` as edges; `s` must map those edges into `y`.
    pub fn from_vertex_set(ambient: &TopGraph, y: &SemiSet) -> Result<SubgraphWitness> {
        let res = ambient.restriction_unchecked(y)?;
        SubgraphWitness::new(ambient, &res.graph, res.incl_v, res.incl_ed)
    }

    /// The subgraph on closed sets `v ⊆ V`, `ed ⊆ Ed` with `s(ed), r(ed) ⊆ v`.
    pub fn from_sets(ambient: &TopGraph, v: &SemiSet, ed: &SemiSet) -> Result<SubgraphWitness> {
        if !v.is_closed() || !ed.is_closed() {
            return Err(Error::Precondition("subgraph sets must be closed".into()));
        }
        let vs = sub_complex(v);
        let es = sub_complex(ed);
        let s = vs.corestrict(&ambient.s().compose(&es.incl)?)?;
        let r = vs.corestrict(&ambient.r().compose(&es.incl)?)?;
        let sub = TopGraph::unchecked(s, r, ambient.lh_mode())?;
        SubgraphWitness::new(ambient, &sub, vs.incl, es.incl)
    }

    pub fn inclusion(&self) -> FactorMap {
        FactorMap {
            src: self.sub.clone(),
            dst: self.ambient.clone(),
            m0: self.e0.clone(),
            m1: self.e1.clone(),
        }
    }

    pub fn vertex_image(&self) -> SemiSet {
        self.e0.image_whole()
    }

    pub fn edge_image(&self) -> SemiSet {
        self.e1.image_whole()
    }
}

pub fn is_regular_closed_subgraph(w: &SubgraphWitness) -> RegularityReport {
    let mut witnesses = Vec::new();
    let closed = w.e0.is_closed_embedding() && w.e1.is_closed_embedding();
    if !closed {
        witnesses.push("embeddings are not closed embeddings".to_string());
    }
    let g0 = w.vertex_image();
    let negatively_invariant = w.ambient.is_negatively_invariant(&g0);
    if !negatively_invariant {
        let gap = g0
            .intersection(&w.ambient.classify().reg)
            .difference(&w.ambient.s().image(&w.ambient.r().preimage(&g0)));
        witnesses.push(format!("regular vertices {gap} of the subgraph receive no edges from it"));
    }
    let missing = w.ambient.r().preimage(&g0).difference(&w.edge_image());
    let full_range_preimage = missing.is_empty();
    if !full_range_preimage {
        witnesses.push(format!("edges {missing} end in the subgraph but are not in it"));
    }
    let inclusion_is_regular_factor = check_factor_map(&w.inclusion()).all();
    RegularityReport { closed, negatively_invariant, full_range_preimage, inclusion_is_regular_factor, witnesses }
}

/// The admissible pair `(G⁰, G⁰_sing)` of a regular closed subgraph, as sets in the ambient graph.
pub fn subgraph_pair(w: &SubgraphWitness) -> Result<AdmissiblePair> {
    let report = is_regular_closed_subgraph(w);
    if !report.regular() {
        return Err(Error::Precondition(format!("not a regular closed subgraph: {}", report.witnesses.join("; "))));
    }
    Ok(AdmissiblePair { y: w.vertex_image(), z: w.e0.image(&w.sub.classify().sing) })
}

/// The image `m(src)` as a closed subgraph of `dst`.
pub fn image_subgraph(f: &FactorMap) -> Result<SubgraphWitness> {
    let report = check_factor_map(f);
    if !report.all() {
        return Err(Error::Precondition(format!(
            "not a regular factor map: {}",
            report.witnesses.join("; ")
        )));
    }
    SubgraphWitness::from_sets(&f.dst, &f.m0.image_whole(), &f.m1.image_whole())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicalVerdict {
    pub proper: bool,
    pub injective: bool,
    pub equivariant: bool,
    /// Conjunction of the three clauses.
    pub clauses: bool,
    /// Verdict of the factor-map conditions on `(φ, φ)`.
    pub factor_map: bool,
    pub agree: bool,
}

/// Compares the three-clause characterization with the factor-map conditions on `(φ, φ)`.
pub fn check_dynamical_factor(x: &TopGraph, y: &TopGraph, phi: &CellMap) -> Result<DynamicalVerdict> {
    let proper = phi.is_proper();
    let injective = phi.is_injective();
    let equivariant = phi.compose(x.s())? == y.s().compose(phi)?;
    let clauses = proper && injective && equivariant;
    let f = FactorMap::unchecked(x, y, phi.clone(), phi.rehost(x.ed(), y.ed()))?;
    let factor_map = check_factor_map(&f).all();
    Ok(DynamicalVerdict { proper, injective, equivariant, clauses, factor_map, agree: clauses == factor_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::{Attach, Chart, Complex, Piece};
    use crate::rational::{int, q};

    fn seg(lo: i64, hi: i64) -> crate::plcore::Host {
        let mut c = Complex::new();
        let a = c.add_node(lo.to_string());
        let b = c.add_node(hi.to_string());
        c.add_arc_with_chart("A", Attach::Closed(a), Attach::Closed(b), Chart::new(int(lo), int(hi)));
        c.into_host()
    }

    fn identity_system(x: &crate::plcore::Host) -> TopGraph {
        let id = CellMap::identity(x);
        TopGraph::from_dynamical_system(x, &id, &id).unwrap()
    }

    #[test]
    fn identity_is_regular_factor_map() {
        let g = identity_system(&seg(0, 1));
        assert!(check_factor_map(&FactorMap::identity(&g)).all());
    }

    #[test]
    fn dynamical_inclusion_is_factor() {
        let x = seg(0, 1);
        let y = seg(0, 2);
        let phi = CellMap::new(
            &x,
            &y,
            vec![Point::Node(0), Point::Interior(0, q(1, 2))],
            vec![vec![Piece::affine(zero(), one(), 0, q(1, 2), zero())]],
        )
        .unwrap();
        let v = check_dynamical_factor(&identity_system(&x), &identity_system(&y), &phi).unwrap();
        assert!(v.clauses && v.factor_map && v.agree);
    }

    #[test]
    fn open_inclusion_is_not_proper() {
        let mut c = Complex::new();
        c.add_arc("B", Attach::Open, Attach::Open);
        let x = c.into_host();
        let y = seg(0, 1);
        let phi = CellMap::new(&x, &y, vec![], vec![vec![Piece::identity(0)]]).unwrap();
        let v = check_dynamical_factor(&identity_system(&x), &identity_system(&y), &phi).unwrap();
        assert!(!v.proper && !v.clauses && !v.factor_map);
        let gx = identity_system(&x);
        let gy = identity_system(&y);
        assert!(FactorMap::new(&gx, &gy, phi.clone(), phi.clone()).is_err());
    }

    #[test]
    fn f1_witness_on_perturbed_edge_map() {
        let x = seg(0, 1);
        let g = identity_system(&x);
        let bent = CellMap::new(
            &x,
            &x,
            vec![Point::Node(0), Point::Node(1)],
            vec![vec![
                Piece::affine(zero(), q(1, 2), 0, q(1, 2), zero()),
                Piece::affine(q(1, 2), one(), 0, q(3, 2), q(-1, 2)),
            ]],
        )
        .unwrap();
        let f = FactorMap::new(&g, &g, CellMap::identity(&x), bent).unwrap();
        let err = check_f1(&f).unwrap_err();
        assert!(matches!(err.point, Some(Point::Interior(0, _))));
        assert!(!check_factor_map(&f).f2);
    }

    #[test]
    fn whole_graph_is_regular_subgraph_of_itself() {
        let g = identity_system(&seg(0, 1));
        let w = SubgraphWitness::new(&g, &g, CellMap::identity(g.v()), CellMap::identity(g.ed())).unwrap();
        let rep = is_regular_closed_subgraph(&w);
        assert!(rep.regular());
        assert!(rep.inclusion_is_regular_factor);
        let img = image_subgraph(&FactorMap::identity(&g)).unwrap();
        assert!(is_regular_closed_subgraph(&img).regular());
    }
}
