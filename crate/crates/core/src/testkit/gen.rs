use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discrete::{edge_cells, full_set, members, to_topgraph, DiscreteGraph, DiscreteSpec, Mult, VertexSet};
use crate::error::{Error, Result};
use crate::glue::GlueSpec;
use crate::morphism::{FactorMap, SubgraphWitness};
use crate::plcore::{Attach, CellMap, Complex, Host, LhMode, Piece, Point, SemiSet};
use crate::plcore::Interval;
use crate::rational::{int, one, q, zero, Q};
use crate::suspend::{shift_pieces, shift_point};
use crate::topograph::TopGraph;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Denominator of every generated parameter.
pub const GRID: i64 = 8;

fn grid_value(rng: &mut Rng, lo: i64, hi: i64) -> Q {
    q(rng.gen_range(lo..=hi), GRID)
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_nodes: usize,
    pub max_arcs: usize,
    pub open_ends: bool,
}

impl Shape {
    pub const SMALL: Shape = Shape { max_nodes: 3, max_arcs: 2, open_ends: true };
    pub const COMPACT: Shape = Shape { max_nodes: 3, max_arcs: 2, open_ends: false };
}

pub fn random_complex(rng: &mut Rng, shape: Shape) -> Host {
    let mut c = Complex::new();
    let nodes = rng.gen_range(0..=shape.max_nodes);
    for i in 0..nodes {
        c.add_node(format!("n{i}"));
    }
    let arcs = rng.gen_range(0..=shape.max_arcs);
    for i in 0..arcs {
        let end = |rng: &mut Rng| {
            if nodes > 0 && (!shape.open_ends || rng.gen_bool(0.75)) {
                Some(Attach::Closed(rng.gen_range(0..nodes)))
            } else if shape.open_ends {
                Some(Attach::Open)
            } else {
                None
            }
        };
        if let (Some(a), Some(b)) = (end(rng), end(rng)) {
            c.add_arc(format!("a{i}"), a, b);
        }
    }
    c.into_host()
}

/// A random union of nodes and grid-aligned intervals.
pub fn random_semiset(rng: &mut Rng, host: &Host) -> SemiSet {
    let mut set = SemiSet::empty(host);
    for n in 0..host.node_count() {
        if rng.gen_bool(0.5) {
            set.insert_point(&Point::Node(n));
        }
    }
    for a in 0..host.arc_count() {
        for _ in 0..rng.gen_range(0..=2) {
            let x = rng.gen_range(0..=GRID);
            let y = rng.gen_range(0..=GRID);
            let (lo, hi) = (q(x.min(y), GRID), q(x.max(y), GRID));
            let iv = if lo == hi {
                if lo == zero() || lo == one() {
                    continue;
                }
                Interval::point(lo)
            } else {
                Interval { lo, hi, lo_closed: rng.gen_bool(0.5), hi_closed: rng.gen_bool(0.5) }
            };
            set.insert_interval(a, &iv);
        }
    }
    set
}

/// A random point, preferring nodes.
pub fn random_point(rng: &mut Rng, host: &Host) -> Option<Point> {
    let (n, a) = (host.node_count(), host.arc_count());
    if n == 0 && a == 0 {
        return None;
    }
    if n > 0 && (a == 0 || rng.gen_bool(0.6)) {
        Some(Point::Node(rng.gen_range(0..n)))
    } else {
        Some(Point::Interior(rng.gen_range(0..a), grid_value(rng, 1, GRID - 1)))
    }
}

/// Parameters on arc `j` at which it passes through `p`.
fn params_at(host: &Host, j: usize, p: &Point) -> Vec<Q> {
    match p {
        Point::Node(n) => {
            let arc = host.arc(j);
            let mut out = Vec::new();
            if arc.ends[0] == Attach::Closed(*n) {
                out.push(zero());
            }
            if arc.ends[1] == Attach::Closed(*n) {
                out.push(one());
            }
            out
        }
        Point::Interior(k, t) if *k == j => vec![t.clone()],
        Point::Interior(..) => Vec::new(),
    }
}

fn any_params() -> Vec<Q> {
    (0..=GRID).map(|k| q(k, GRID)).collect()
}

/// One affine piece on `[lo,hi]` from `from` to `to` (free where `None`) along some arc.
fn affine_piece(rng: &mut Rng, dst: &Host, lo: &Q, hi: &Q, from: Option<&Point>, to: Option<&Point>) -> Option<Piece> {
    let mut arcs: Vec<usize> = (0..dst.arc_count()).collect();
    arcs.shuffle(rng);
    for j in arcs {
        let c0 = from.map_or_else(any_params, |p| params_at(dst, j, p));
        let c1 = to.map_or_else(any_params, |p| params_at(dst, j, p));
        let pairs: Vec<(Q, Q)> =
            c0.iter().flat_map(|a| c1.iter().map(move |b| (a.clone(), b.clone()))).filter(|(a, b)| a != b).collect();
        if let Some((u0, u1)) = pairs.choose(rng) {
            let slope = (u1 - u0) / (hi - lo);
            let offset = u0 - &slope * lo;
            return Some(Piece::affine(lo.clone(), hi.clone(), j, slope, offset));
        }
    }
    None
}

fn arc_path(rng: &mut Rng, src: &Host, dst: &Host, a: usize, nodes: &[Point]) -> Option<Vec<Piece>> {
    let ends: Vec<Option<Point>> = src.arc(a).ends.iter().map(|e| e.node().map(|n| nodes[n].clone())).collect();
    let (p0, p1) = (ends[0].as_ref(), ends[1].as_ref());
    let mut options = [0, 1, 2];
    options.shuffle(rng);
    for opt in options {
        match opt {
            0 => {
                let c = match (p0, p1) {
                    (Some(x), Some(y)) if x != y => continue,
                    (Some(x), _) | (_, Some(x)) => x.clone(),
                    (None, None) => random_point(rng, dst)?,
                };
                return Some(vec![Piece::constant(zero(), one(), c)]);
            }
            1 => {
                if let Some(p) = affine_piece(rng, dst, &zero(), &one(), p0, p1) {
                    return Some(vec![p]);
                }
            }
            _ => {
                let mid = random_point(rng, dst)?;
                let h = q(1, 2);
                let first = if p0 == Some(&mid) {
                    Some(Piece::constant(zero(), h.clone(), mid.clone()))
                } else {
                    affine_piece(rng, dst, &zero(), &h, p0, Some(&mid))
                };
                let second = if p1 == Some(&mid) {
                    Some(Piece::constant(h.clone(), one(), mid.clone()))
                } else {
                    affine_piece(rng, dst, &h, &one(), Some(&mid), p1)
                };
                if let (Some(x), Some(y)) = (first, second) {
                    return Some(vec![x, y]);
                }
            }
        }
    }
    None
}

/// A random continuous cellwise-affine map, or `None` if none was found quickly.
pub fn random_map(rng: &mut Rng, src: &Host, dst: &Host) -> Option<CellMap> {
    if src.is_empty() {
        return Some(CellMap::from_empty(src, dst));
    }
    for _ in 0..30 {
        let nodes: Option<Vec<Point>> = (0..src.node_count()).map(|_| random_point(rng, dst)).collect();
        let nodes = nodes?;
        let arcs: Option<Vec<Vec<Piece>>> = (0..src.arc_count()).map(|a| arc_path(rng, src, dst, a, &nodes)).collect();
        if let Some(arcs) = arcs {
            if let Ok(m) = CellMap::new(src, dst, nodes, arcs) {
                return Some(m);
            }
        }
    }
    None
}

/// Raw map data, assembled into a `CellMap` once the source complex is known.
#[derive(Clone, Debug, Default)]
pub struct MapData {
    pub nodes: Vec<Point>,
    pub arcs: Vec<Vec<Piece>>,
}

impl MapData {
    pub fn of(m: &CellMap) -> MapData {
        MapData { nodes: m.node_images().to_vec(), arcs: m.all_pieces().to_vec() }
    }

    pub fn shifted(&self, nodes: usize, arcs: usize) -> MapData {
        MapData {
            nodes: self.nodes.iter().map(|p| shift_point(p, nodes, arcs)).collect(),
            arcs: self.arcs.iter().map(|ps| shift_pieces(ps, nodes, arcs)).collect(),
        }
    }

    pub fn extend(&mut self, other: MapData) {
        self.nodes.extend(other.nodes);
        self.arcs.extend(other.arcs);
    }

    pub fn build(self, src: &Host, dst: &Host) -> Result<CellMap> {
        CellMap::new(src, dst, self.nodes, self.arcs)
    }
}

/// Edge cells over `v` together with a range map that is a local homeomorphism onto its image.
pub fn random_sheets(rng: &mut Rng, v: &Host, count: usize) -> (Complex, MapData) {
    let mut ed = Complex::new();
    let mut r = MapData::default();
    let isolated: Vec<usize> = (0..v.node_count()).filter(|n| v.degree(*n) == 0).collect();
    let lone_loops: Vec<usize> =
        (0..v.arc_count()).filter(|j| v.arc(*j).is_loop() && v.degree(v.arc(*j).ends[0].node().unwrap()) == 2).collect();
    let leaf_ends: Vec<(usize, usize)> = (0..v.arc_count())
        .flat_map(|j| (0..2).map(move |side| (j, side)))
        .filter(|(j, side)| {
            let arc = v.arc(*j);
            match arc.ends[*side] {
                Attach::Closed(n) => v.degree(n) == 1,
                Attach::Open => false,
            }
        })
        .collect();
    for _ in 0..count {
        let kind = rng.gen_range(0..6);
        match kind {
            0 if !isolated.is_empty() => {
                let n = *isolated.choose(rng).unwrap();
                ed.add_node(format!("e{}", ed.node_count()));
                r.nodes.push(Point::Node(n));
            }
            1 if !lone_loops.is_empty() => {
                let j = *lone_loops.choose(rng).unwrap();
                let n = v.arc(j).ends[0].node().unwrap();
                let base = ed.node_count();
                ed.add_node(format!("e{base}"));
                ed.add_node(format!("e{}", base + 1));
                ed.add_arc(format!("c{}", ed.arc_count()), Attach::Closed(base), Attach::Closed(base + 1));
                ed.add_arc(format!("c{}", ed.arc_count()), Attach::Closed(base + 1), Attach::Closed(base));
                r.nodes.extend([Point::Node(n), Point::Node(n)]);
                r.arcs.push(vec![Piece::identity(j)]);
                r.arcs.push(vec![Piece::identity(j)]);
            }
            2 if !leaf_ends.is_empty() => {
                let (j, side) = *leaf_ends.choose(rng).unwrap();
                let n = v.arc(j).ends[side].node().unwrap();
                let t = grid_value(rng, 1, GRID - 1);
                let u = ed.node_count();
                ed.add_node(format!("e{u}"));
                r.nodes.push(Point::Node(n));
                if side == 0 {
                    ed.add_arc(format!("c{}", ed.arc_count()), Attach::Closed(u), Attach::Open);
                    r.arcs.push(vec![Piece::affine(zero(), one(), j, t, zero())]);
                } else {
                    ed.add_arc(format!("c{}", ed.arc_count()), Attach::Open, Attach::Closed(u));
                    r.arcs.push(vec![Piece::affine(zero(), one(), j, one() - &t, t)]);
                }
            }
            3 if v.arc_count() > 0 => {
                let j = rng.gen_range(0..v.arc_count());
                let k = rng.gen_range(1..GRID);
                let (c, t0, d) = (q(rng.gen_range(0..k), GRID), q(k, GRID), q(rng.gen_range(k + 1..=GRID), GRID));
                let u = ed.node_count();
                ed.add_node(format!("e{u}"));
                r.nodes.push(Point::Interior(j, t0.clone()));
                ed.add_arc(format!("c{}", ed.arc_count()), Attach::Open, Attach::Closed(u));
                r.arcs.push(vec![Piece::affine(zero(), one(), j, &t0 - &c, c)]);
                ed.add_arc(format!("c{}", ed.arc_count()), Attach::Closed(u), Attach::Open);
                r.arcs.push(vec![Piece::affine(zero(), one(), j, &d - &t0, t0)]);
            }
            4 if v.arc_count() > 0 => {
                let j = rng.gen_range(0..v.arc_count());
                let x = rng.gen_range(0..GRID);
                let y = rng.gen_range(x + 1..=GRID);
                let (c, d) = (q(x, GRID), q(y, GRID));
                ed.add_arc(format!("c{}", ed.arc_count()), Attach::Open, Attach::Open);
                if rng.gen_bool(0.5) {
                    r.arcs.push(vec![Piece::affine(zero(), one(), j, &d - &c, c)]);
                } else {
                    r.arcs.push(vec![Piece::affine(zero(), one(), j, &c - &d, d)]);
                }
            }
            5 => {
                ed = ed.disjoint_union(v).0;
                r.nodes.extend((0..v.node_count()).map(Point::Node));
                r.arcs.extend((0..v.arc_count()).map(|j| vec![Piece::identity(j)]));
            }
            _ => {}
        }
    }
    (ed, r)
}

/// A random graph whose range map is a strict local homeomorphism.
pub fn random_graph(rng: &mut Rng, shape: Shape) -> TopGraph {
    loop {
        let v = random_complex(rng, shape);
        let count = rng.gen_range(0..=3);
        let (ed, r) = random_sheets(rng, &v, count);
        if !shape.open_ends && !ed.open_ends().is_empty() {
            continue;
        }
        let ed = ed.into_host();
        let Some(s) = random_map(rng, &ed, &v) else { continue };
        let r = r.build(&ed, &v).expect("sheet data is a valid map");
        return TopGraph::new(s, r, LhMode::Strict).expect("sheets give a local homeomorphism");
    }
}

/// A random graph with finite multiplicities on at most `max` vertices.
pub fn random_discrete(rng: &mut Rng, max: usize, max_mult: u64, omega: bool) -> DiscreteGraph {
    let n = rng.gen_range(0..=max);
    let mut g = DiscreteGraph::new(n);
    for s in 0..n {
        for r in 0..n {
            let m = if omega && rng.gen_bool(0.15) {
                Mult::Omega
            } else if rng.gen_bool(0.5) {
                Mult::ZERO
            } else {
                Mult::Fin(rng.gen_range(1..=max_mult))
            };
            g.set_mult(s, r, m);
        }
    }
    g
}

pub fn random_discrete_topgraph(rng: &mut Rng, max: usize) -> TopGraph {
    to_topgraph(&random_discrete(rng, max, 2, false)).expect("finite multiplicities")
}

/// Inclusion of cells `0..src` into a host listing them first.
pub fn prefix_inclusion(src: &Host, dst: &Host) -> Result<CellMap> {
    let nodes = (0..src.node_count()).map(Point::Node).collect();
    let arcs = (0..src.arc_count()).map(|a| vec![Piece::identity(a)]).collect();
    CellMap::new(src, dst, nodes, arcs)
}

/// A graph containing `base` as a closed subgraph that receives every edge ending in it.
///
/// New vertices and edges form a random graph `H`; extra edges end in `H` and start anywhere.
pub fn extend(rng: &mut Rng, base: &TopGraph, shape: Shape) -> (TopGraph, SubgraphWitness) {
    loop {
        let h = random_graph(rng, shape);
        let (v, vn, va) = base.v().disjoint_union(h.v());
        let v = v.into_host();
        let count = rng.gen_range(0..=3);
        let (sheets, rx) = random_sheets(rng, h.v(), count);
        let sheets = sheets.into_host();
        let (ed, _, _) = base.ed().disjoint_union(h.ed());
        let (ed, _, _) = ed.disjoint_union(&sheets);
        let ed = ed.into_host();
        let Some(sx) = random_map(rng, &sheets, &v) else { continue };
        let mut s = MapData::of(base.s());
        s.extend(MapData::of(h.s()).shifted(vn, va));
        s.extend(MapData::of(&sx));
        let mut r = MapData::of(base.r());
        r.extend(MapData::of(h.r()).shifted(vn, va));
        r.extend(rx.shifted(vn, va));
        let s = s.build(&ed, &v).expect("assembled source map");
        let r = r.build(&ed, &v).expect("assembled range map");
        let g = TopGraph::new(s, r, base.lh_mode()).expect("extension keeps r a local homeomorphism");
        let e0 = prefix_inclusion(base.v(), g.v()).expect("vertex inclusion");
        let e1 = prefix_inclusion(base.ed(), g.ed()).expect("edge inclusion");
        let w = SubgraphWitness::new(&g, base, e0, e1).expect("base is a closed subgraph");
        return (g, w);
    }
}

/// A random closed subgraph: a closed vertex set and a closed set of edges inside
/// `r⁻¹(Y) ∩ s⁻¹(Y)`; often not regular.
pub fn random_subgraph(rng: &mut Rng, ambient: &TopGraph) -> Option<SubgraphWitness> {
    let y = random_semiset(rng, ambient.v()).closure();
    let inside = ambient.r().preimage(&y).intersection(&ambient.s().preimage(&y));
    let ed = if rng.gen_bool(0.5) { inside.clone() } else { random_semiset(rng, ambient.ed()).closure().intersection(&inside) };
    SubgraphWitness::from_sets(ambient, &y, &ed).ok()
}

/// The fold `K ⊔ K → K` as a factor map.
pub fn fold(k: &TopGraph) -> Result<(TopGraph, FactorMap)> {
    let (kk, _) = k.disjoint_union(k)?;
    let twice = |m: &CellMap| {
        let mut d = MapData::of(m);
        d.extend(MapData::of(m));
        d
    };
    let id_v = CellMap::identity(k.v());
    let id_e = CellMap::identity(k.ed());
    let m0 = twice(&id_v).build(kk.v(), k.v())?;
    let m1 = twice(&id_e).build(kk.ed(), k.ed())?;
    let f = FactorMap::unchecked(&kk, k, m0, m1)?;
    Ok((kk, f))
}

/// Union specs (`m` an inclusion) and folding specs (`m` two-to-one), built from extensions of a
/// common core graph.
pub fn random_glue_spec(rng: &mut Rng, shape: Shape, union: bool) -> GlueSpec {
    loop {
        let k = random_graph(rng, shape);
        let (e, in_e) = extend(rng, &k, shape);
        let spec = if union {
            let (_, in_f) = extend(rng, &k, shape);
            GlueSpec::new(&e, in_f, in_e.inclusion())
        } else {
            let Ok((kk, folding)) = fold(&k) else { continue };
            let (_, in_f) = extend(rng, &kk, shape);
            let Ok(m) = in_e.inclusion().compose(&folding) else { continue };
            GlueSpec::new(&e, in_f, m)
        };
        if let Ok(spec) = spec {
            return spec;
        }
    }
}

/// Topological form of a discrete spec; edges of `G` are matched to edges of `E` in order,
/// which realizes (F2) whenever the multiplicities allow it.
pub fn discrete_glue_spec(spec: &DiscreteSpec) -> Result<GlueSpec> {
    let e = to_topgraph(&spec.e)?;
    let f = to_topgraph(&spec.f)?;
    let g0 = SemiSet::from_points(f.v(), &members(spec.g0).map(Point::Node).collect::<Vec<_>>());
    let w = SubgraphWitness::from_vertex_set(&f, &g0)?;
    let f_cells = edge_cells(&spec.f);
    let e_cells = edge_cells(&spec.e);
    let g_nodes: Vec<usize> = w.e0.node_images().iter().map(|p| node_of(p)).collect();
    let m0 = CellMap::new(w.sub.v(), e.v(), g_nodes.iter().map(|u| Point::Node(spec.m0[*u])).collect(), vec![])?;
    let mut used: std::collections::HashMap<(usize, usize), u64> = Default::default();
    let mut m1_nodes = Vec::new();
    for p in w.e1.node_images() {
        let (s, r, _) = f_cells[node_of(p)];
        let (y, x) = (spec.m0[s], spec.m0[r]);
        let k = used.entry((r, y)).or_insert(0);
        let count = match spec.e.mult(y, x) {
            Mult::Fin(c) if c > 0 => c,
            _ => return Err(Error::Precondition("m0 does not extend to edges".into())),
        };
        if *k >= count {
            return Err(Error::Precondition("m0 does not satisfy (F2)".into()));
        }
        let copy = *k;
        *k += 1;
        let idx = e_cells.iter().position(|c| *c == (y, x, copy)).expect("edge cell");
        m1_nodes.push(Point::Node(idx));
    }
    let m1 = CellMap::new(w.sub.ed(), e.ed(), m1_nodes, vec![])?;
    let m = FactorMap::new(&w.sub, &e, m0, m1)?;
    GlueSpec::new(&e, w, m)
}

fn node_of(p: &Point) -> usize {
    match p {
        Point::Node(n) => *n,
        Point::Interior(..) => panic!("discrete graphs have no arcs"),
    }
}

/// A random discrete spec with finite multiplicities satisfying the standing hypotheses.
///
/// With `f2` set, edges of `E` into `m0(G⁰)` are chosen so that `m` satisfies (F2);
/// with `injective` set, `m0` is injective on `G⁰`.
pub fn random_discrete_spec(rng: &mut Rng, max: usize, f2: bool, injective: bool) -> DiscreteSpec {
    loop {
        let f = random_discrete(rng, max, 2, false);
        let nf = f.vertex_count();
        let mut g0: VertexSet = (0..nf).filter(|_| rng.gen_bool(0.5)).fold(0, |a, v| a | 1 << v);
        loop {
            let outside = full_set(nf) & !g0;
            let feeders = members(outside).filter(|u| members(g0).any(|v| !f.mult(*u, v).is_zero()));
            let more = feeders.fold(0, |a, u| a | 1 << u);
            if more == 0 {
                break;
            }
            g0 |= more;
        }
        let mut e = random_discrete(rng, max, 2, false);
        let ne = e.vertex_count();
        if ne == 0 && nf > 0 {
            continue;
        }
        let mut m0: Vec<usize> = (0..nf).map(|_| rng.gen_range(0..ne)).collect();
        if injective {
            if (g0.count_ones() as usize) > ne {
                continue;
            }
            let mut targets: Vec<usize> = (0..ne).collect();
            targets.shuffle(rng);
            for (u, y) in members(g0).zip(targets) {
                m0[u] = y;
            }
        }
        if f2 && !force_f2(&mut e, &f, g0, &m0) {
            continue;
        }
        for u in members(g0) {
            for v in members(g0) {
                if !f.mult(u, v).is_zero() && e.mult(m0[u], m0[v]).is_zero() {
                    e.set_mult(m0[u], m0[v], Mult::ONE);
                }
            }
        }
        if let Ok(spec) = DiscreteSpec::new(e, f, g0, m0) {
            return spec;
        }
    }
}

/// Sets `E[y][m0 v] = Σ_{m0 u = y} F[u][v]` for `v ∈ G⁰`; false on conflicting requirements.
fn force_f2(e: &mut DiscreteGraph, f: &DiscreteGraph, g0: VertexSet, m0: &[usize]) -> bool {
    let mut required: std::collections::BTreeMap<(usize, usize), Mult> = Default::default();
    for v in members(g0) {
        for y in 0..e.vertex_count() {
            let total = members(g0).filter(|u| m0[*u] == y).fold(Mult::ZERO, |acc, u| acc.add(f.mult(u, v)));
            if *required.entry((y, m0[v])).or_insert(total) != total {
                return false;
            }
        }
    }
    for ((y, x), m) in required {
        e.set_mult(y, x, m);
    }
    true
}

/// A random spec with `G` regular in `F`, `m` regular and `G⁰` nonempty.
pub fn random_regular_discrete_spec(rng: &mut Rng, max: usize, injective: bool) -> DiscreteSpec {
    loop {
        let spec = random_discrete_spec(rng, max, true, injective);
        if spec.g0 == 0 {
            continue;
        }
        let reg = spec.regularity();
        if reg.g_in_f && reg.m_regular {
            return spec;
        }
    }
}

/// The cells of one component of a dynamical system and its self-homeomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Component {
    Point,
    Interval,
    Open,
    Circle(usize),
}

/// A finite-cell dynamical system `(X, σ)` with `σ⁻¹`.
#[derive(Clone, Debug)]
pub struct Dynamical {
    pub x: Host,
    pub sigma: CellMap,
    pub sigma_inv: CellMap,
}

impl Dynamical {
    pub fn graph(&self) -> TopGraph {
        TopGraph::from_dynamical_system(&self.x, &self.sigma, &self.sigma_inv).expect("σ is a homeomorphism")
    }
}

fn add_component(c: &mut Complex, kind: Component) -> (usize, usize) {
    let (n0, a0) = (c.node_count(), c.arc_count());
    match kind {
        Component::Point => {
            c.add_node(format!("p{n0}"));
        }
        Component::Interval => {
            let a = c.add_node(format!("p{n0}"));
            let b = c.add_node(format!("p{}", n0 + 1));
            c.add_arc(format!("i{a0}"), Attach::Closed(a), Attach::Closed(b));
        }
        Component::Open => {
            c.add_arc(format!("i{a0}"), Attach::Open, Attach::Open);
        }
        Component::Circle(k) => {
            for i in 0..k {
                c.add_node(format!("p{}", n0 + i));
            }
            for i in 0..k {
                c.add_arc(format!("i{}", a0 + i), Attach::Closed(n0 + i), Attach::Closed(n0 + (i + 1) % k));
            }
        }
    }
    (n0, a0)
}

/// Self-map data of one component placed at offsets `from` onto a copy at offsets `to`.
fn component_map(rng: &mut Rng, kind: Component, from: (usize, usize), to: (usize, usize)) -> (MapData, MapData) {
    let (fnode, farc) = from;
    let (tn, ta) = to;
    let mut m = MapData::default();
    let mut inv = MapData::default();
    match kind {
        Component::Point => {
            m.nodes.push(Point::Node(tn));
            inv.nodes.push(Point::Node(fnode));
        }
        Component::Interval | Component::Open => {
            let choice = rng.gen_range(0..3);
            let closed = kind == Component::Interval;
            let (fwd, back): (Vec<Piece>, Vec<Piece>) = match choice {
                0 => (vec![Piece::identity(ta)], vec![Piece::identity(farc)]),
                1 => (
                    vec![Piece::affine(zero(), one(), ta, -one(), one())],
                    vec![Piece::affine(zero(), one(), farc, -one(), one())],
                ),
                _ => {
                    let c = if rng.gen_bool(0.5) { q(1, 4) } else { q(3, 4) };
                    let h = q(1, 2);
                    (
                        vec![
                            Piece::affine(zero(), h.clone(), ta, &c * int(2), zero()),
                            Piece::affine(h.clone(), one(), ta, (one() - &c) * int(2), &c * int(2) - one()),
                        ],
                        vec![
                            Piece::affine(zero(), c.clone(), farc, &h / &c, zero()),
                            Piece::affine(c.clone(), one(), farc, &h / (one() - &c), one() - &h / (one() - &c)),
                        ],
                    )
                }
            };
            if closed {
                if choice == 1 {
                    m.nodes.extend([Point::Node(tn + 1), Point::Node(tn)]);
                    inv.nodes.extend([Point::Node(fnode + 1), Point::Node(fnode)]);
                } else {
                    m.nodes.extend([Point::Node(tn), Point::Node(tn + 1)]);
                    inv.nodes.extend([Point::Node(fnode), Point::Node(fnode + 1)]);
                }
            }
            m.arcs.push(fwd);
            inv.arcs.push(back);
        }
        Component::Circle(k) => {
            let shift = rng.gen_range(0..k);
            let reflect = rng.gen_bool(0.4);
            let node_img = |i: usize| if reflect { (k + shift - i) % k } else { (i + shift) % k };
            let mut inv_nodes = vec![0; k];
            for i in 0..k {
                m.nodes.push(Point::Node(tn + node_img(i)));
                inv_nodes[node_img(i)] = i;
            }
            inv.nodes.extend(inv_nodes.iter().map(|i| Point::Node(fnode + i)));
            let mut inv_arcs = vec![Vec::new(); k];
            for i in 0..k {
                if reflect {
                    // arc i runs from node i to i+1; its image runs from node_img(i) back to node_img(i)-1
                    let j = (k + shift - i - 1) % k;
                    m.arcs.push(vec![Piece::affine(zero(), one(), ta + j, -one(), one())]);
                    inv_arcs[j] = vec![Piece::affine(zero(), one(), farc + i, -one(), one())];
                } else {
                    let j = (i + shift) % k;
                    m.arcs.push(vec![Piece::identity(ta + j)]);
                    inv_arcs[j] = vec![Piece::identity(farc + i)];
                }
            }
            inv.arcs.extend(inv_arcs);
        }
    }
    (m, inv)
}

fn random_kind(rng: &mut Rng, compact: bool) -> Component {
    match rng.gen_range(0..if compact { 3 } else { 4 }) {
        0 => Component::Point,
        1 => Component::Interval,
        2 => Component::Circle(rng.gen_range(1..=3)),
        _ => Component::Open,
    }
}

/// Builds a system from component kinds; components listed in `swap` pairs are exchanged.
fn build_system(rng: &mut Rng, kinds: &[Component], swaps: &[(usize, usize)]) -> Dynamical {
    let mut c = Complex::new();
    let offsets: Vec<(usize, usize)> = kinds.iter().map(|k| add_component(&mut c, *k)).collect();
    let x = c.into_host();
    let mut target: Vec<usize> = (0..kinds.len()).collect();
    for (a, b) in swaps {
        target.swap(*a, *b);
    }
    let mut fwd = vec![MapData::default(); kinds.len()];
    let mut back = vec![MapData::default(); kinds.len()];
    for (i, kind) in kinds.iter().enumerate() {
        let t = target[i];
        let (m, inv) = component_map(rng, *kind, offsets[i], offsets[t]);
        fwd[i] = m;
        back[t] = inv;
    }
    let mut sigma = MapData::default();
    let mut sigma_inv = MapData::default();
    for (m, inv) in fwd.into_iter().zip(back) {
        sigma.extend(m);
        sigma_inv.extend(inv);
    }
    let sigma = sigma.build(&x, &x).expect("σ data");
    let sigma_inv = sigma_inv.build(&x, &x).expect("σ⁻¹ data");
    Dynamical { x, sigma, sigma_inv }
}

pub fn random_dynamical(rng: &mut Rng, compact: bool) -> Dynamical {
    let count = rng.gen_range(1..=3);
    let kinds: Vec<Component> = (0..count).map(|_| random_kind(rng, compact)).collect();
    let mut swaps = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            if kinds[i] == kinds[j] && !swaps.iter().any(|(a, b)| [*a, *b].contains(&i) || [*a, *b].contains(&j)) && rng.gen_bool(0.5) {
                swaps.push((i, j));
            }
        }
    }
    build_system(rng, &kinds, &swaps)
}

/// How a random pair of dynamical systems was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Power,
    Inclusion,
    Fold,
    Arbitrary,
    OpenInclusion,
    Collapse,
}

/// `(X, σ_X)`, `(Y, σ_Y)` and a continuous `φ: X → Y`.
pub struct DynamicalPair {
    pub kind: PairKind,
    pub x: Dynamical,
    pub y: Dynamical,
    pub phi: CellMap,
}

pub fn random_dynamical_pair(rng: &mut Rng) -> DynamicalPair {
    loop {
        let kind = match rng.gen_range(0..6) {
            0 => PairKind::Power,
            1 => PairKind::Inclusion,
            2 => PairKind::Fold,
            3 => PairKind::Arbitrary,
            4 => PairKind::OpenInclusion,
            _ => PairKind::Collapse,
        };
        let pair = match kind {
            PairKind::Power => {
                let x = random_dynamical(rng, false);
                let phi = if rng.gen_bool(0.5) { x.sigma.clone() } else { CellMap::identity(&x.x) };
                DynamicalPair { kind, y: x.clone(), x, phi }
            }
            PairKind::Inclusion => {
                let count = rng.gen_range(1..=2);
                let kinds: Vec<Component> = (0..count + 1).map(|_| random_kind(rng, false)).collect();
                let y = build_system(rng, &kinds, &[]);
                // X is the first `count` components with σ_Y restricted.
                let mut c = Complex::new();
                for k in &kinds[..count] {
                    add_component(&mut c, *k);
                }
                let xh = c.into_host();
                let restrict = |m: &CellMap| -> Option<CellMap> {
                    let nodes = m.node_images()[..xh.node_count()].to_vec();
                    let arcs = m.all_pieces()[..xh.arc_count()].to_vec();
                    CellMap::new(&xh, &xh, nodes, arcs).ok()
                };
                let (Some(sx), Some(sxi)) = (restrict(&y.sigma), restrict(&y.sigma_inv)) else { continue };
                let phi = prefix_inclusion(&xh, &y.x).expect("prefix inclusion");
                DynamicalPair { kind, x: Dynamical { x: xh, sigma: sx, sigma_inv: sxi }, y, phi }
            }
            PairKind::Fold => {
                let kinds: Vec<Component> = vec![random_kind(rng, false)];
                let y = build_system(rng, &kinds, &[]);
                let twice = |m: &CellMap, host: &Host| -> Option<CellMap> {
                    let mut d = MapData::of(m);
                    d.extend(MapData::of(m).shifted(y.x.node_count(), y.x.arc_count()));
                    d.build(host, host).ok()
                };
                let (xc, _, _) = y.x.disjoint_union(&y.x);
                let xh = xc.into_host();
                let (Some(sx), Some(sxi)) = (twice(&y.sigma, &xh), twice(&y.sigma_inv, &xh)) else { continue };
                let mut d = MapData::of(&CellMap::identity(&y.x));
                d.extend(MapData::of(&CellMap::identity(&y.x)));
                let phi = d.build(&xh, &y.x).expect("fold");
                DynamicalPair { kind, x: Dynamical { x: xh, sigma: sx, sigma_inv: sxi }, y, phi }
            }
            PairKind::Arbitrary => {
                let x = random_dynamical(rng, false);
                let y = random_dynamical(rng, false);
                let Some(phi) = random_map(rng, &x.x, &y.x) else { continue };
                DynamicalPair { kind, x, y, phi }
            }
            PairKind::OpenInclusion => {
                let x = build_system(rng, &[Component::Open], &[]);
                let y = build_system(rng, &[Component::Interval], &[]);
                let x = Dynamical { sigma: CellMap::identity(&x.x), sigma_inv: CellMap::identity(&x.x), x: x.x };
                let y = Dynamical { sigma: CellMap::identity(&y.x), sigma_inv: CellMap::identity(&y.x), x: y.x };
                let phi = CellMap::new(&x.x, &y.x, vec![], vec![vec![Piece::identity(0)]]).expect("open inclusion");
                DynamicalPair { kind, x, y, phi }
            }
            PairKind::Collapse => {
                let x = random_dynamical(rng, true);
                let y = build_system(rng, &[Component::Point], &[]);
                let phi = CellMap::constant(&x.x, &y.x, Point::Node(0)).expect("constant map");
                DynamicalPair { kind, x, y, phi }
            }
        };
        return pair;
    }
}

/// Samples `[0,1]` at `1/64` steps, keeping the open interval `(0,1)`.
pub fn fine_params() -> Vec<Q> {
    (1..64).map(|k| q(k, 64)).collect()
}
