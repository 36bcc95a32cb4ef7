//! Turns parsed declarations into library objects.

use std::collections::HashMap;

use pltg::discrete::{to_topgraph, DiscreteGraph, DiscreteSpec, Mult};
use pltg::glue::{adjunction_graph, AdjunctionResult, Corners, GlueSpec, GraphNames};
use pltg::morphism::{FactorMap, SubgraphWitness};
use pltg::plcore::{same_host, Attach, CellMap, Chart, Complex, Host, Interval, LhMode, Piece, Point, SemiSet};
use pltg::rational::{fmt_q, is_between_open, one, zero};
use pltg::suspend::{double_suspend_factor, double_suspend_spec, iterate_suspension, quantum_ball_graph, quantum_sphere_graph};
use pltg::topograph::TopGraph;
use pltg::Q;

use crate::tgf::*;

/// A glue section with its result and the labels used in certificates.
#[derive(Clone, Debug)]
pub struct Glued {
    pub result: AdjunctionResult,
    pub names: GraphNames,
    pub corners: Option<Corners>,
}

#[derive(Clone, Debug)]
pub struct DiscreteGlued {
    pub spec: DiscreteSpec,
    pub names: GraphNames,
}

/// Every object that could be built, and an error for each one that could not.
#[derive(Default)]
pub struct Built {
    pub spaces: HashMap<String, Host>,
    pub maps: HashMap<String, CellMap>,
    pub graphs: HashMap<String, TopGraph>,
    pub subgraphs: HashMap<String, SubgraphWitness>,
    pub factors: HashMap<String, FactorMap>,
    pub glues: HashMap<String, Glued>,
    pub discrete: HashMap<String, DiscreteGraph>,
    pub discrete_glues: HashMap<String, DiscreteGlued>,
    pub errors: Vec<(String, String)>,
}

type R<T> = Result<T, String>;

fn err(e: pltg::Error) -> String {
    e.to_string()
}

impl Built {
    pub fn error_of(&self, name: &str) -> Option<&str> {
        self.errors.iter().find(|(n, _)| n == name).map(|(_, e)| e.as_str())
    }

    fn need<'a, T>(&self, table: &'a HashMap<String, T>, name: &str) -> R<&'a T> {
        table.get(name).ok_or_else(|| format!("depends on `{name}`, which failed to build"))
    }

    fn graph_mode(g: TopGraph, mode: Option<Mode>) -> TopGraph {
        match mode {
            Some(Mode::Strict) => g.with_mode(LhMode::Strict),
            Some(Mode::Image) => g.with_mode(LhMode::OntoImage),
            None => g,
        }
    }

    fn build_item(&mut self, name: &str, item: &Item) -> R<()> {
        match item {
            Item::Space(s) => {
                let host = space(s)?;
                self.spaces.insert(name.to_string(), host);
            }
            Item::Map(m) => {
                let src = self.need(&self.spaces, &m.src)?.clone();
                let dst = self.need(&self.spaces, &m.dst)?.clone();
                let map = cell_map(&src, &dst, m)?;
                self.maps.insert(name.to_string(), map);
            }
            Item::Graph(g) => {
                let graph = match &g.body {
                    GraphBody::Explicit { vertices, edges, s, r } => {
                        let (v, e) = (self.need(&self.spaces, vertices)?, self.need(&self.spaces, edges)?);
                        let (s, r) = (self.need(&self.maps, s)?, self.need(&self.maps, r)?);
                        for (what, m) in [("s", s), ("r", r)] {
                            if !same_host(m.src(), e) || !same_host(m.dst(), v) {
                                return Err(format!("{what} must map the edge space to the vertex space"));
                            }
                        }
                        let mode = match g.mode {
                            Some(Mode::Image) => LhMode::OntoImage,
                            _ => LhMode::Strict,
                        };
                        TopGraph::new(s.clone(), r.clone(), mode).map_err(err)?
                    }
                    GraphBody::Suspend { of, times } => {
                        let base = self.need(&self.graphs, of)?;
                        Self::graph_mode(iterate_suspension(base, *times).map_err(err)?, g.mode)
                    }
                    GraphBody::Discrete { of } => {
                        Self::graph_mode(to_topgraph(self.need(&self.discrete, of)?).map_err(err)?, g.mode)
                    }
                    GraphBody::Glued { of } => Self::graph_mode(self.need(&self.glues, of)?.result.glued.clone(), g.mode),
                    GraphBody::Quantum { kind, dim } => {
                        let base = match kind {
                            QuantumKind::Ball => quantum_ball_graph(*dim),
                            QuantumKind::Sphere => quantum_sphere_graph(*dim),
                        };
                        Self::graph_mode(base.map_err(err)?, g.mode)
                    }
                };
                self.graphs.insert(name.to_string(), graph);
            }
            Item::Subgraph(s) => {
                let ambient = self.need(&self.graphs, &s.of)?;
                let w = match &s.body {
                    SubgraphBody::Embedded { graph, e0, e1 } => {
                        let sub = self.need(&self.graphs, graph)?;
                        let (e0, e1) = (self.need(&self.maps, e0)?, self.need(&self.maps, e1)?);
                        SubgraphWitness::new(ambient, sub, e0.clone(), e1.clone()).map_err(err)?
                    }
                    SubgraphBody::Sets { vertices, edges } => {
                        let v = semiset(ambient.v(), vertices)?;
                        match edges {
                            None => SubgraphWitness::from_vertex_set(ambient, &v).map_err(err)?,
                            Some(e) => SubgraphWitness::from_sets(ambient, &v, &semiset(ambient.ed(), e)?).map_err(err)?,
                        }
                    }
                };
                self.subgraphs.insert(name.to_string(), w);
            }
            Item::Factor(f) => {
                let fm = match f {
                    FactorDecl::Maps { src, dst, m0, m1 } => {
                        let (src, dst) = (self.need(&self.graphs, src)?, self.need(&self.graphs, dst)?);
                        let (m0, m1) = (self.need(&self.maps, m0)?, self.need(&self.maps, m1)?);
                        FactorMap::unchecked(src, dst, m0.clone(), m1.clone()).map_err(err)?
                    }
                    FactorDecl::Inclusion { of } => self.need(&self.subgraphs, of)?.inclusion(),
                    FactorDecl::Suspend { of, times } => {
                        let mut m = self.need(&self.factors, of)?.clone();
                        for _ in 0..*times {
                            m = double_suspend_factor(&m).map_err(err)?;
                        }
                        m
                    }
                };
                self.factors.insert(name.to_string(), fm);
            }
            Item::Glue(g) => {
                let e = self.need(&self.graphs, &g.e)?;
                let w = self.need(&self.subgraphs, &g.g)?;
                if let Some(f) = &g.f {
                    if self.need(&self.graphs, f)? != &w.ambient {
                        return Err(format!("`{}` is not a subgraph of `{f}`", g.g));
                    }
                }
                let m = match &g.m {
                    AttachDecl::Factor(m) => self.need(&self.factors, m)?.clone(),
                    AttachDecl::Maps { m0, m1 } => {
                        let (m0, m1) = (self.need(&self.maps, m0)?, self.need(&self.maps, m1)?);
                        FactorMap::unchecked(&w.sub, e, m0.clone(), m1.clone()).map_err(err)?
                    }
                };
                let mut spec = GlueSpec::new(e, w.clone(), m).map_err(err)?;
                for _ in 0..g.suspend {
                    spec = double_suspend_spec(&spec).map_err(err)?;
                }
                let result = adjunction_graph(&spec).map_err(err)?;
                let names = match &g.names {
                    Some(n) => GraphNames { e: n.e.clone(), f: n.f.clone(), g: n.g.clone(), union: n.union.clone() },
                    None => GraphNames {
                        e: g.e.clone(),
                        f: g.f.clone().unwrap_or_else(|| "F".into()),
                        g: g.g.clone(),
                        union: name.to_string(),
                    },
                };
                let corners = g.corners.as_ref().map(|c| Corners {
                    union: c.union.clone(),
                    e: c.e.clone(),
                    f: c.f.clone(),
                    intersection: c.intersection.clone(),
                });
                self.glues.insert(name.to_string(), Glued { result, names, corners });
            }
            Item::Discrete(d) => {
                if d.vertices.len() > 64 {
                    return Err("discrete graphs have at most 64 vertices".into());
                }
                let mut g = DiscreteGraph::with_names(d.vertices.clone());
                let idx = |v: &str| d.vertices.iter().position(|x| x == v).unwrap();
                for (s, r, m) in &d.edges {
                    let m = match m {
                        MultDecl::Fin(k) => Mult::Fin(*k),
                        MultDecl::Omega => Mult::Omega,
                    };
                    g.add_edges(idx(s), idx(r), m);
                }
                self.discrete.insert(name.to_string(), g);
            }
            Item::DiscreteGlue(d) => {
                let e = self.need(&self.discrete, &d.e)?.clone();
                let f = self.need(&self.discrete, &d.f)?.clone();
                let mut g0 = 0u64;
                let mut m0 = vec![0; f.vertex_count()];
                for u in &d.g {
                    g0 |= 1 << f.vertex(u).unwrap();
                }
                for (u, v) in &d.m0 {
                    let ui = f.vertex(u).unwrap();
                    if g0 >> ui & 1 == 0 {
                        return Err(format!("m0 is given on `{u}`, which is not in G"));
                    }
                    m0[ui] = e.vertex(v).unwrap();
                }
                let spec = DiscreteSpec::new(e, f, g0, m0).map_err(err)?;
                let names = match &d.names {
                    Some(n) => GraphNames { e: n.e.clone(), f: n.f.clone(), g: n.g.clone(), union: n.union.clone() },
                    None => GraphNames { e: d.e.clone(), f: d.f.clone(), g: "G".into(), union: name.to_string() },
                };
                self.discrete_glues.insert(name.to_string(), DiscreteGlued { spec, names });
            }
        }
        Ok(())
    }
}

/// Builds every declaration in order; failures are recorded and later dependents fail too.
pub fn build(ws: &Workspace) -> Built {
    let mut b = Built::default();
    for (name, item) in &ws.items {
        if let Err(e) = b.build_item(name, item) {
            b.errors.push((name.clone(), e));
        }
    }
    b
}

fn space(s: &SpaceDecl) -> R<Host> {
    let mut c = Complex::new();
    for n in &s.nodes {
        c.add_node(n.clone());
    }
    for a in &s.arcs {
        let end = |e: &EndDecl| match e {
            EndDecl::Node(n) => Attach::Closed(s.nodes.iter().position(|x| x == n).unwrap()),
            EndDecl::Open => Attach::Open,
        };
        let chart = a.chart.clone().map_or_else(Chart::default, |(lo, hi)| Chart::new(lo, hi));
        c.add_arc_with_chart(a.name.clone(), end(&a.ends[0]), end(&a.ends[1]), chart);
    }
    let problems = c.validate();
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    Ok(c.into_host())
}

fn arc_id(host: &Host, a: &str) -> R<usize> {
    host.arc_by_name(a).ok_or_else(|| format!("unknown arc `{a}`"))
}

fn node_id(host: &Host, n: &str) -> R<usize> {
    host.node_by_name(n).ok_or_else(|| format!("unknown node `{n}`"))
}

fn interior(host: &Host, a: &str, v: &Q) -> R<Point> {
    let arc = arc_id(host, a)?;
    let t = host.arc(arc).chart.to_param(v);
    if !is_between_open(&t) {
        return Err(format!("value {} is not inside arc `{a}`", fmt_q(v)));
    }
    Ok(Point::Interior(arc, t))
}

fn point(host: &Host, p: &PointDecl) -> R<Point> {
    match p {
        PointDecl::Node(n) => Ok(Point::Node(node_id(host, n)?)),
        PointDecl::Interior(a, v) => interior(host, a, v),
    }
}

fn cell_map(src: &Host, dst: &Host, m: &MapDecl) -> R<CellMap> {
    let mut nodes = vec![None; src.node_count()];
    for (n, p) in &m.nodes {
        nodes[node_id(src, n)?] = Some(point(dst, p)?);
    }
    let nodes: Vec<Point> = nodes.into_iter().map(|p| p.expect("every node is mapped")).collect();
    let mut arcs: Vec<Vec<Piece>> = vec![Vec::new(); src.arc_count()];
    for p in &m.pieces {
        let a = arc_id(src, &p.arc)?;
        let cs = &src.arc(a).chart;
        let (lo, hi) = match &p.range {
            Some((lo, hi)) => (cs.to_param(lo), cs.to_param(hi)),
            None => (zero(), one()),
        };
        let action = match &p.action {
            ActionDecl::Const(pt) => pltg::plcore::Action::Const(point(dst, pt)?),
            ActionDecl::Affine { arc, a: va, b: vb } => {
                let j = arc_id(dst, arc)?;
                let cd = &dst.arc(j).chart;
                let a_t = va * cs.width() / cd.width();
                let b_t = (va * &cs.lo + vb - &cd.lo) / cd.width();
                pltg::plcore::Action::Affine { arc: j, a: a_t, b: b_t }
            }
        };
        arcs[a].push(Piece { lo, hi, action });
    }
    CellMap::new(src, dst, nodes, arcs).map_err(err)
}

fn semiset(host: &Host, items: &[SetItem]) -> R<SemiSet> {
    let mut s = SemiSet::empty(host);
    for item in items {
        match item {
            SetItem::Node(n) => s.insert_point(&Point::Node(node_id(host, n)?)),
            SetItem::Interior(a, v) => s.insert_point(&interior(host, a, v)?),
            SetItem::Arc(a) => s.insert_interval(arc_id(host, a)?, &Interval::open(zero(), one())),
            SetItem::Segment(a, lo, hi) => {
                let arc = arc_id(host, a)?;
                let chart = &host.arc(arc).chart;
                let (mut t0, mut t1) = (chart.to_param(lo), chart.to_param(hi));
                if t0 > t1 {
                    std::mem::swap(&mut t0, &mut t1);
                }
                if t0 < zero() || t1 > one() {
                    return Err(format!("segment of `{a}` leaves the arc"));
                }
                s.insert_interval(arc, &Interval::closed(t0, t1));
            }
        }
    }
    Ok(s)
}
