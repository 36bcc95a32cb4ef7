//! Quantum double suspension of graphs and factor maps, quantum balls and spheres,
//! and cell-preserving graph isomorphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::glue::{adjunction_graph, union_graph, AdjunctionResult, Corners, GlueSpec, GraphNames};
use crate::morphism::{check_factor_map, FactorMap, SubgraphWitness};
use crate::plcore::{
    Action, ArcId, Attach, CellMap, Chart, Complex, Host, NodeId, Piece, Point,
};
use crate::rational::{int, one, zero};
use crate::topograph::TopGraph;

pub(crate) fn shift_point(p: &Point, nodes: usize, arcs: usize) -> Point {
    match p {
        Point::Node(n) => Point::Node(n + nodes),
        Point::Interior(a, t) => Point::Interior(a + arcs, t.clone()),
    }
}

pub(crate) fn shift_pieces(pieces: &[Piece], nodes: usize, arcs: usize) -> Vec<Piece> {
    pieces
        .iter()
        .map(|p| {
            let action = match &p.action {
                Action::Const(q) => Action::Const(shift_point(q, nodes, arcs)),
                Action::Affine { arc, a, b } => Action::Affine { arc: arc + arcs, a: a.clone(), b: b.clone() },
            };
            Piece { lo: p.lo.clone(), hi: p.hi.clone(), action }
        })
        .collect()
}

fn fresh(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Cell layout of `Σ²E`: `V = {w} ⊔ E⁰`, `Ed = {x} ⊔ E⁰ ⊔ E¹`.
struct Layout {
    v: Host,
    ed: Host,
}

fn layout(e: &TopGraph) -> Layout {
    let (ev, ee) = (e.v(), e.ed());
    let mut v = Complex::new();
    v.add_node(fresh("w", ev.node_names()));
    for n in ev.node_names() {
        v.add_node(n.clone());
    }
    for arc in ev.arcs() {
        let shift = |a: Attach| match a {
            Attach::Closed(n) => Attach::Closed(n + 1),
            Attach::Open => Attach::Open,
        };
        v.add_arc_with_chart(arc.name.clone(), shift(arc.ends[0]), shift(arc.ends[1]), arc.chart.clone());
    }
    let mut ed = Complex::new();
    let mut taken: Vec<String> = ev.node_names().to_vec();
    taken.extend(ee.node_names().iter().cloned());
    ed.add_node(fresh("x", &taken));
    let cn = 1;
    for n in ev.node_names() {
        ed.add_node(n.clone());
    }
    for arc in ev.arcs() {
        let shift = |a: Attach| match a {
            Attach::Closed(n) => Attach::Closed(n + cn),
            Attach::Open => Attach::Open,
        };
        ed.add_arc_with_chart(arc.name.clone(), shift(arc.ends[0]), shift(arc.ends[1]), arc.chart.clone());
    }
    let on = 1 + ev.node_count();
    for n in ee.node_names() {
        ed.add_node(n.clone());
    }
    for arc in ee.arcs() {
        let shift = |a: Attach| match a {
            Attach::Closed(n) => Attach::Closed(n + on),
            Attach::Open => Attach::Open,
        };
        ed.add_arc_with_chart(arc.name.clone(), shift(arc.ends[0]), shift(arc.ends[1]), arc.chart.clone());
    }
    ed.make_names_unique();
    Layout { v: v.into_host(), ed: ed.into_host() }
}

/// `Σ²E` for a graph with compact, nonempty vertex space.
pub fn double_suspend_graph(e: &TopGraph) -> Result<TopGraph> {
    if !e.v().is_compact() {
        return Err(Error::Precondition("the vertex space is not compact".into()));
    }
    if e.v().is_empty() {
        return Err(Error::Precondition("the vertex space is empty".into()));
    }
    let l = layout(e);
    let (ev, ee) = (e.v(), e.ed());
    let w = Point::Node(0);
    let mut s_nodes = vec![w.clone(); 1 + ev.node_count()];
    let mut r_nodes = vec![w.clone()];
    r_nodes.extend((0..ev.node_count()).map(|n| Point::Node(n + 1)));
    let mut s_arcs: Vec<Vec<Piece>> = (0..ev.arc_count()).map(|_| vec![Piece::constant(zero(), one(), w.clone())]).collect();
    let mut r_arcs: Vec<Vec<Piece>> = (0..ev.arc_count()).map(|a| vec![Piece::identity(a)]).collect();
    for n in 0..ee.node_count() {
        s_nodes.push(shift_point(e.s().node_image(n), 1, 0));
        r_nodes.push(shift_point(e.r().node_image(n), 1, 0));
    }
    for a in 0..ee.arc_count() {
        s_arcs.push(shift_pieces(e.s().pieces(a), 1, 0));
        r_arcs.push(shift_pieces(e.r().pieces(a), 1, 0));
    }
    let s = CellMap::new(&l.ed, &l.v, s_nodes, s_arcs)?;
    let r = CellMap::new(&l.ed, &l.v, r_nodes, r_arcs)?;
    TopGraph::new(s, r, e.lh_mode())
}

/// `Σ²m: Σ²G → Σ²E` for a regular factor map `m: G → E`.
pub fn double_suspend_factor(m: &FactorMap) -> Result<FactorMap> {
    let report = check_factor_map(m);
    if !report.all() {
        return Err(Error::Precondition(format!("not a regular factor map: {}", report.witnesses.join("; "))));
    }
    let sg = double_suspend_graph(&m.src)?;
    let se = double_suspend_graph(&m.dst)?;
    let (gv, ge) = (m.src.v(), m.src.ed());
    let ev_nodes = m.dst.v().node_count();
    let ev_arcs = m.dst.v().arc_count();
    let mut n0 = vec![Point::Node(0)];
    n0.extend(m.m0.node_images().iter().map(|p| shift_point(p, 1, 0)));
    let a0: Vec<Vec<Piece>> = (0..gv.arc_count()).map(|a| shift_pieces(m.m0.pieces(a), 1, 0)).collect();
    let m0 = CellMap::new(sg.v(), se.v(), n0, a0.clone())?;
    let mut n1 = vec![Point::Node(0)];
    n1.extend(m.m0.node_images().iter().map(|p| shift_point(p, 1, 0)));
    n1.extend(m.m1.node_images().iter().map(|p| shift_point(p, 1 + ev_nodes, ev_arcs)));
    let mut a1 = a0;
    a1.extend((0..ge.arc_count()).map(|a| shift_pieces(m.m1.pieces(a), 1 + ev_nodes, ev_arcs)));
    let m1 = CellMap::new(sg.ed(), se.ed(), n1, a1)?;
    FactorMap::new(&sg, &se, m0, m1)
}

/// The suspended gluing data: `Σ²G ⊆ Σ²F` attached to `Σ²E` along `Σ²m`.
pub fn double_suspend_spec(spec: &GlueSpec) -> Result<GlueSpec> {
    let incl = double_suspend_factor(&spec.g.inclusion())?;
    let g = SubgraphWitness::new(&incl.dst, &incl.src, incl.m0, incl.m1)?;
    let e = double_suspend_graph(&spec.e)?;
    GlueSpec::new(&e, g, double_suspend_factor(&spec.m)?)
}

/// Both sides of `Σ²E ∪_{Σ²m} Σ²F ≅ Σ²(E ∪_m F)` and an isomorphism between them, if one exists.
pub struct SuspensionComparison {
    pub glued_of_suspensions: TopGraph,
    pub suspension_of_glued: TopGraph,
    pub iso: Option<GraphIso>,
}

pub fn compare_suspension(spec: &GlueSpec) -> Result<SuspensionComparison> {
    let glued_of_suspensions = adjunction_graph(&double_suspend_spec(spec)?)?.glued;
    let suspension_of_glued = double_suspend_graph(&adjunction_graph(spec)?.glued)?;
    let iso = isomorphic(&glued_of_suspensions, &suspension_of_glued);
    Ok(SuspensionComparison { glued_of_suspensions, suspension_of_glued, iso })
}

pub fn iterate_suspension(g: &TopGraph, times: usize) -> Result<TopGraph> {
    let mut g = g.clone();
    for _ in 0..times {
        g = double_suspend_graph(&g)?;
    }
    Ok(g)
}

/// `[-1,1]` with no edges.
pub fn ball_one() -> TopGraph {
    let mut c = Complex::new();
    let a = c.add_node("-1");
    let b = c.add_node("1");
    c.add_arc_with_chart("I", Attach::Closed(a), Attach::Closed(b), Chart::new(int(-1), int(1)));
    TopGraph::edgeless(&c.into_host())
}

/// The two points `{-1, 1}` with no edges.
pub fn sphere_zero() -> TopGraph {
    let mut c = Complex::new();
    c.add_node("-1");
    c.add_node("1");
    TopGraph::edgeless(&c.into_host())
}

/// A circle as one loop through one node, with no edges.
pub fn sphere_one() -> TopGraph {
    let mut c = Complex::new();
    let n = c.add_node("o");
    c.add_arc("L", Attach::Closed(n), Attach::Closed(n));
    TopGraph::edgeless(&c.into_host())
}

/// The endpoint inclusion `S⁰ → B¹` as a factor map.
pub fn sphere_zero_in_ball_one() -> FactorMap {
    let (s0, b1) = (sphere_zero(), ball_one());
    let m0 = CellMap::new(s0.v(), b1.v(), vec![Point::Node(0), Point::Node(1)], vec![]).expect("endpoint inclusion");
    let m1 = CellMap::from_empty(s0.ed(), b1.ed());
    FactorMap::new(&s0, &b1, m0, m1).expect("endpoint inclusion is proper")
}

pub fn quantum_ball_graph(dim: usize) -> Result<TopGraph> {
    if dim % 2 == 0 {
        return Err(Error::Precondition("only odd-dimensional balls are topological graphs here".into()));
    }
    iterate_suspension(&ball_one(), dim / 2)
}

pub fn quantum_sphere_graph(dim: usize) -> Result<TopGraph> {
    if dim % 2 == 0 {
        iterate_suspension(&sphere_zero(), dim / 2)
    } else {
        iterate_suspension(&sphere_one(), dim / 2)
    }
}

/// `B^{2n+1}_q ∪ B^{2n+1}_q` over `S^{2n}_q`: the endpoint inclusion `S⁰ → B¹` suspended `n` times,
/// used on both sides.
pub fn quantum_sphere_gluing(n: usize) -> Result<AdjunctionResult> {
    let mut m = sphere_zero_in_ball_one();
    for _ in 0..n {
        m = double_suspend_factor(&m)?;
    }
    let side = SubgraphWitness::new(&m.dst, &m.src, m.m0.clone(), m.m1.clone())?;
    union_graph(&side, &side)
}

/// Graph and corner names for [`quantum_sphere_gluing`].
pub fn quantum_names(n: usize) -> (GraphNames, Corners) {
    let (ball, sphere, equator) = (2 * n + 1, 2 * n + 1, 2 * n);
    let names = GraphNames {
        e: format!("B^{ball}_q"),
        f: format!("B^{ball}_q"),
        g: format!("S^{equator}_q"),
        union: format!("S^{sphere}_q"),
    };
    let corners = Corners {
        union: format!("C(S^{sphere}_q)"),
        e: format!("C(B^{ball}_q)"),
        f: format!("C(B^{ball}_q)"),
        intersection: format!("C(S^{equator}_q)"),
    };
    (names, corners)
}

/// A cell-preserving isomorphism between two graphs.
#[derive(Clone, Debug)]
pub struct GraphIso {
    pub v_nodes: Vec<NodeId>,
    /// Target arc and whether the parameter is reversed.
    pub v_arcs: Vec<(ArcId, bool)>,
    pub ed_nodes: Vec<NodeId>,
    pub ed_arcs: Vec<(ArcId, bool)>,
    pub phi0: CellMap,
    pub phi1: CellMap,
}

fn cell_map(src: &Host, dst: &Host, nodes: &[NodeId], arcs: &[(ArcId, bool)]) -> Option<CellMap> {
    let nodes = nodes.iter().map(|n| Point::Node(*n)).collect();
    let arcs = arcs
        .iter()
        .map(|(a, flip)| {
            if *flip {
                vec![Piece::affine(zero(), one(), *a, -one(), one())]
            } else {
                vec![Piece::identity(*a)]
            }
        })
        .collect();
    CellMap::new(src, dst, nodes, arcs).ok()
}

fn arc_fits(a: &crate::plcore::ArcCell, b: &crate::plcore::ArcCell, nodes: &[Option<NodeId>], flip: bool) -> bool {
    let (b0, b1) = if flip { (b.ends[1], b.ends[0]) } else { (b.ends[0], b.ends[1]) };
    let ok = |x: Attach, y: Attach| match (x, y) {
        (Attach::Open, Attach::Open) => true,
        (Attach::Closed(n), Attach::Closed(m)) => nodes[n].map_or(true, |k| k == m),
        _ => false,
    };
    ok(a.ends[0], b0) && ok(a.ends[1], b1)
}

/// Assigns arcs of `a` to arcs of `b` consistently with (and extending) the node assignment.
fn match_arcs(
    a: &Host,
    b: &Host,
    nodes: &mut Vec<Option<NodeId>>,
    used_nodes: &mut Vec<bool>,
    arcs: &mut Vec<(ArcId, bool)>,
    used: &mut Vec<bool>,
    allowed: &dyn Fn(ArcId, ArcId, bool) -> bool,
    done: &mut dyn FnMut(&[Option<NodeId>], &[(ArcId, bool)]) -> bool,
) -> bool {
    let i = arcs.len();
    if i == a.arc_count() {
        return done(nodes, arcs);
    }
    let arc = a.arc(i);
    for j in 0..b.arc_count() {
        if used[j] {
            continue;
        }
        for flip in [false, true] {
            if !arc_fits(arc, b.arc(j), nodes, flip) || !allowed(i, j, flip) {
                continue;
            }
            let target = b.arc(j);
            let (b0, b1) = if flip { (target.ends[1], target.ends[0]) } else { (target.ends[0], target.ends[1]) };
            let mut assigned = Vec::new();
            let mut ok = true;
            for (x, y) in [(arc.ends[0], b0), (arc.ends[1], b1)] {
                if let (Attach::Closed(n), Attach::Closed(m)) = (x, y) {
                    match nodes[n] {
                        Some(k) if k == m => {}
                        Some(_) => ok = false,
                        None if used_nodes[m] => ok = false,
                        None => {
                            nodes[n] = Some(m);
                            used_nodes[m] = true;
                            assigned.push(n);
                        }
                    }
                }
            }
            if ok {
                used[j] = true;
                arcs.push((j, flip));
                if match_arcs(a, b, nodes, used_nodes, arcs, used, allowed, done) {
                    return true;
                }
                arcs.pop();
                used[j] = false;
            }
            for n in assigned {
                used_nodes[nodes[n].unwrap()] = false;
                nodes[n] = None;
            }
        }
    }
    false
}

/// Node invariants: complex degree, loop count, and counts of edge nodes with `s`/`r` there.
fn node_invariants(g: &TopGraph) -> Vec<(usize, usize, usize, usize, usize)> {
    let v = g.v();
    let mut inv: Vec<(usize, usize, usize, usize, usize)> = (0..v.node_count())
        .map(|n| (v.degree(n), v.arcs().iter().filter(|a| a.is_loop() && a.ends[0] == Attach::Closed(n)).count(), 0, 0, 0))
        .collect();
    for e in 0..g.ed().node_count() {
        let (s, r) = (g.s().node_image(e), g.r().node_image(e));
        if let Point::Node(n) = s {
            inv[*n].2 += 1;
        }
        if let Point::Node(n) = r {
            inv[*n].3 += 1;
        }
        if s == r {
            if let Point::Node(n) = s {
                inv[*n].4 += 1;
            }
        }
    }
    inv
}

fn node_pair_counts(g: &TopGraph) -> BTreeMap<(NodeId, NodeId), usize> {
    let mut out = BTreeMap::new();
    for e in 0..g.ed().node_count() {
        if let (Point::Node(s), Point::Node(r)) = (g.s().node_image(e), g.r().node_image(e)) {
            *out.entry((*s, *r)).or_insert(0) += 1;
        }
    }
    out
}

/// Pieces of `m` on arc `a`, reparametrized by `t ↦ 1 - t` when flipped.
fn oriented_pieces(m: &CellMap, a: ArcId, flip: bool) -> Vec<Piece> {
    if !flip {
        return m.pieces(a).to_vec();
    }
    m.pieces(a)
        .iter()
        .rev()
        .map(|p| {
            let action = match &p.action {
                Action::Const(q) => Action::Const(q.clone()),
                Action::Affine { arc, a, b } => Action::Affine { arc: *arc, a: -a.clone(), b: a + b },
            };
            Piece { lo: one() - &p.hi, hi: one() - &p.lo, action }
        })
        .collect()
}

struct Search<'a> {
    a: &'a TopGraph,
    b: &'a TopGraph,
    inv_a: Vec<(usize, usize, usize, usize, usize)>,
    inv_b: Vec<(usize, usize, usize, usize, usize)>,
    pairs_a: BTreeMap<(NodeId, NodeId), usize>,
    pairs_b: BTreeMap<(NodeId, NodeId), usize>,
}

impl Search<'_> {
    fn pairs_consistent(&self, nodes: &[Option<NodeId>], u: NodeId) -> bool {
        let k = nodes[u].unwrap();
        for (v, img) in nodes.iter().enumerate() {
            let Some(m) = img else { continue };
            for ((x, y), (p, q)) in [((u, v), (k, *m)), ((v, u), (*m, k))] {
                let ca = self.pairs_a.get(&(x, y)).copied().unwrap_or(0);
                let cb = self.pairs_b.get(&(p, q)).copied().unwrap_or(0);
                if ca != cb {
                    return false;
                }
            }
        }
        true
    }

    fn assign_nodes(&self, nodes: &mut Vec<Option<NodeId>>, used: &mut Vec<bool>, i: usize, out: &mut Option<GraphIso>) -> bool {
        if i == nodes.len() {
            return self.vertex_arcs(nodes, used, out);
        }
        for k in 0..used.len() {
            if used[k] || self.inv_a[i] != self.inv_b[k] {
                continue;
            }
            nodes[i] = Some(k);
            used[k] = true;
            if self.pairs_consistent(nodes, i) && self.assign_nodes(nodes, used, i + 1, out) {
                return true;
            }
            used[k] = false;
            nodes[i] = None;
        }
        false
    }

    fn vertex_arcs(&self, nodes: &mut Vec<Option<NodeId>>, used_nodes: &mut Vec<bool>, out: &mut Option<GraphIso>) -> bool {
        let (av, bv) = (self.a.v(), self.b.v());
        let mut arcs = Vec::new();
        let mut used = vec![false; bv.arc_count()];
        let allow = |_: ArcId, _: ArcId, _: bool| true;
        let mut done = |n: &[Option<NodeId>], arcs: &[(ArcId, bool)]| {
            let n: Vec<NodeId> = n.iter().map(|x| x.unwrap()).collect();
            match cell_map(av, bv, &n, arcs) {
                Some(phi0) => self.edges(&n, arcs, &phi0, out),
                None => false,
            }
        };
        match_arcs(av, bv, nodes, used_nodes, &mut arcs, &mut used, &allow, &mut done)
    }

    fn edges(&self, vn: &[NodeId], va: &[(ArcId, bool)], phi0: &CellMap, out: &mut Option<GraphIso>) -> bool {
        let (ae, be) = (self.a.ed(), self.b.ed());
        let (Ok(sa), Ok(ra)) = (phi0.compose(self.a.s()), phi0.compose(self.a.r())) else { return false };
        let n = ae.node_count();
        let mut nodes: Vec<Option<NodeId>> = vec![None; n];
        let mut used_nodes = vec![false; be.node_count()];
        let fits_node = |i: NodeId, k: NodeId| {
            sa.node_image(i) == self.b.s().node_image(k) && ra.node_image(i) == self.b.r().node_image(k)
        };
        let fits_arc = |i: ArcId, j: ArcId, flip: bool| {
            sa.pieces(i) == oriented_pieces(self.b.s(), j, flip).as_slice()
                && ra.pieces(i) == oriented_pieces(self.b.r(), j, flip).as_slice()
        };
        let mut arcs = Vec::new();
        let mut used = vec![false; be.arc_count()];
        let mut done = |nodes: &[Option<NodeId>], arcs: &[(ArcId, bool)]| {
            let mut nodes = nodes.to_vec();
            let mut used_nodes = used_nodes_of(&nodes, be.node_count());
            let mut found = None;
            let ok = assign_free_nodes(&mut nodes, &mut used_nodes, 0, &fits_node, &mut |nodes| {
                let en: Vec<NodeId> = nodes.iter().map(|x| x.unwrap()).collect();
                let Some(phi1) = cell_map(ae, be, &en, arcs) else { return false };
                let good = self.b.s().compose(&phi1).ok().as_ref() == Some(&sa)
                    && self.b.r().compose(&phi1).ok().as_ref() == Some(&ra);
                if good {
                    found = Some((en, phi1));
                }
                good
            });
            if let (true, Some((en, phi1))) = (ok, found) {
                *out = Some(GraphIso {
                    v_nodes: vn.to_vec(),
                    v_arcs: va.to_vec(),
                    ed_nodes: en,
                    ed_arcs: arcs.to_vec(),
                    phi0: phi0.clone(),
                    phi1,
                });
                true
            } else {
                false
            }
        };
        match_arcs(ae, be, &mut nodes, &mut used_nodes, &mut arcs, &mut used, &fits_arc, &mut done)
    }
}

fn used_nodes_of(nodes: &[Option<NodeId>], count: usize) -> Vec<bool> {
    let mut used = vec![false; count];
    for k in nodes.iter().flatten() {
        used[*k] = true;
    }
    used
}

fn assign_free_nodes(
    nodes: &mut Vec<Option<NodeId>>,
    used: &mut Vec<bool>,
    i: usize,
    fits: &dyn Fn(NodeId, NodeId) -> bool,
    done: &mut dyn FnMut(&[Option<NodeId>]) -> bool,
) -> bool {
    if i == nodes.len() {
        return done(nodes);
    }
    if let Some(k) = nodes[i] {
        return fits(i, k) && assign_free_nodes(nodes, used, i + 1, fits, done);
    }
    for k in 0..used.len() {
        if used[k] || !fits(i, k) {
            continue;
        }
        nodes[i] = Some(k);
        used[k] = true;
        if assign_free_nodes(nodes, used, i + 1, fits, done) {
            return true;
        }
        used[k] = false;
        nodes[i] = None;
    }
    false
}

/// Searches for a cell-preserving isomorphism `a → b`.
pub fn isomorphic(a: &TopGraph, b: &TopGraph) -> Option<GraphIso> {
    let (av, bv, ae, be) = (a.v(), b.v(), a.ed(), b.ed());
    if av.node_count() != bv.node_count()
        || av.arc_count() != bv.arc_count()
        || ae.node_count() != be.node_count()
        || ae.arc_count() != be.arc_count()
    {
        return None;
    }
    let search = Search {
        a,
        b,
        inv_a: node_invariants(a),
        inv_b: node_invariants(b),
        pairs_a: node_pair_counts(a),
        pairs_b: node_pair_counts(b),
    };
    let mut sorted_a = search.inv_a.clone();
    let mut sorted_b = search.inv_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let mut nodes = vec![None; av.node_count()];
    let mut used = vec![false; bv.node_count()];
    let mut out = None;
    search.assign_nodes(&mut nodes, &mut used, 0, &mut out);
    out
}

impl GraphIso {
    /// Re-verifies the isomorphism conditions.
    pub fn verify(&self, a: &TopGraph, b: &TopGraph) -> bool {
        let bij = |m: &CellMap| m.is_injective() && m.image_whole() == crate::plcore::SemiSet::whole(m.dst());
        bij(&self.phi0)
            && bij(&self.phi1)
            && b.s().compose(&self.phi1).ok() == self.phi0.compose(a.s()).ok()
            && b.r().compose(&self.phi1).ok() == self.phi0.compose(a.r()).ok()
    }
}

/// Whether two graphs agree exactly, cell for cell.
pub fn same_cells(a: &TopGraph, b: &TopGraph) -> bool {
    a.v() == b.v() && a.ed() == b.ed() && a.s() == b.s() && a.r() == b.r()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::SemiSet;

    #[test]
    fn ball_three_has_the_expected_cells() {
        let b3 = quantum_ball_graph(3).unwrap();
        assert_eq!(b3.v().node_count(), 3);
        assert_eq!(b3.v().arc_count(), 1);
        assert_eq!(b3.ed().node_count(), 3);
        assert_eq!(b3.ed().arc_count(), 1);
        assert!(b3.is_valid());
        let c = b3.classify();
        assert_eq!(c.reg, SemiSet::from_points(b3.v(), &[Point::Node(0)]));
        assert!(c.inf.is_empty());
    }

    #[test]
    fn sphere_one_and_three() {
        let s1 = quantum_sphere_graph(1).unwrap();
        assert_eq!(s1.v().arc_count(), 1);
        assert!(s1.ed().is_empty());
        let s3 = quantum_sphere_graph(3).unwrap();
        assert!(same_cells(&s3, &double_suspend_graph(&s1).unwrap()));
        assert!(isomorphic(&s3, &s3).unwrap().verify(&s3, &s3));
        let b3 = quantum_ball_graph(3).unwrap();
        assert!(isomorphic(&b3, &s3).is_none());
        assert!(quantum_ball_graph(2).is_err());
    }

    #[test]
    fn suspended_endpoint_inclusion_is_regular() {
        let m = sphere_zero_in_ball_one();
        let sm = double_suspend_factor(&m).unwrap();
        assert!(check_factor_map(&sm).all());
        let id = FactorMap::identity(&ball_one());
        let sid = double_suspend_factor(&id).unwrap();
        assert_eq!(sid.m0, CellMap::identity(sid.src.v()));
        assert_eq!(sid.m1, CellMap::identity(sid.src.ed()));
    }

    #[test]
    fn empty_vertex_space_is_rejected() {
        assert!(double_suspend_graph(&TopGraph::edgeless(&Complex::empty())).is_err());
    }
}
