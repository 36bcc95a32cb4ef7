//! Writes computed graphs back out as text-format declarations.

use pltg::plcore::{Action, Attach, CellMap, Complex, Host, LhMode, Point};
use pltg::rational::{one, zero};
use pltg::topograph::TopGraph;

use crate::tgf::*;

/// A copy of `host` whose cell names are unique, so they can be referenced by name.
fn uniquely_named(host: &Host) -> Host {
    let mut c = Complex::new();
    for n in host.node_names() {
        c.add_node(n.clone());
    }
    for a in host.arcs() {
        c.add_arc_with_chart(a.name.clone(), a.ends[0], a.ends[1], a.chart.clone());
    }
    c.make_names_unique();
    c.into_host()
}

fn space_decl(host: &Host) -> SpaceDecl {
    let nodes = host.node_names().to_vec();
    let arcs = host
        .arcs()
        .iter()
        .map(|a| {
            let end = |e: Attach| match e {
                Attach::Closed(n) => EndDecl::Node(nodes[n].clone()),
                Attach::Open => EndDecl::Open,
            };
            let chart = (a.chart.lo != zero() || a.chart.hi != one()).then(|| (a.chart.lo.clone(), a.chart.hi.clone()));
            ArcDecl { name: a.name.clone(), ends: [end(a.ends[0]), end(a.ends[1])], chart }
        })
        .collect();
    SpaceDecl { nodes, arcs }
}

fn point_decl(host: &Host, p: &Point) -> PointDecl {
    match p {
        Point::Node(n) => PointDecl::Node(host.node_name(*n).to_string()),
        Point::Interior(a, t) => {
            let arc = host.arc(*a);
            PointDecl::Interior(arc.name.clone(), arc.chart.to_value(t))
        }
    }
}

/// `m` with its hosts renamed, in chart values.
fn map_decl(m: &CellMap, src: &Host, dst: &Host, src_name: &str, dst_name: &str) -> MapDecl {
    let nodes = m
        .node_images()
        .iter()
        .enumerate()
        .map(|(n, p)| (src.node_name(n).to_string(), point_decl(dst, p)))
        .collect();
    let mut pieces = Vec::new();
    for (a, ps) in m.all_pieces().iter().enumerate() {
        let cs = &src.arc(a).chart;
        let whole = ps.len() == 1;
        for p in ps {
            let range = (!whole).then(|| (cs.to_value(&p.lo), cs.to_value(&p.hi)));
            let action = match &p.action {
                Action::Const(pt) => ActionDecl::Const(point_decl(dst, pt)),
                Action::Affine { arc, a: at, b: bt } => {
                    let cd = &dst.arc(*arc).chart;
                    let a_v = at * cd.width() / cs.width();
                    let b_v = &cd.lo + cd.width() * bt - &a_v * &cs.lo;
                    ActionDecl::Affine { arc: dst.arc(*arc).name.clone(), a: a_v, b: b_v }
                }
            };
            pieces.push(PieceDecl { arc: src.arc(a).name.clone(), range, action });
        }
    }
    MapDecl { src: src_name.to_string(), dst: dst_name.to_string(), nodes, pieces }
}

/// Declarations `NAME.V`, `NAME.E`, `NAME.s`, `NAME.r` and the graph `NAME`.
pub fn export_graph(ws: &mut Workspace, name: &str, g: &TopGraph) {
    let (v, e) = (uniquely_named(g.v()), uniquely_named(g.ed()));
    let (vn, en, sn, rn) = (format!("{name}.V"), format!("{name}.E"), format!("{name}.s"), format!("{name}.r"));
    ws.items.insert(vn.clone(), Item::Space(space_decl(&v)));
    ws.items.insert(en.clone(), Item::Space(space_decl(&e)));
    ws.items.insert(sn.clone(), Item::Map(map_decl(g.s(), &e, &v, &en, &vn)));
    ws.items.insert(rn.clone(), Item::Map(map_decl(g.r(), &e, &v, &en, &vn)));
    let mode = match g.lh_mode() {
        LhMode::Strict => None,
        LhMode::OntoImage => Some(Mode::Image),
    };
    ws.items.insert(
        name.to_string(),
        Item::Graph(GraphDecl { body: GraphBody::Explicit { vertices: vn, edges: en, s: sn, r: rn }, mode }),
    );
}
