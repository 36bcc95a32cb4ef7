use std::fmt::Write;

use pltg::rational::fmt_q;

use super::lex::PUNCT;
use super::*;

/// Words that would be read as keywords where a name is also allowed.
const AMBIGUOUS: [&str; 4] = ["open", "const", "omega", "ω"];

/// A name as a token: bare when it lexes back to itself, quoted otherwise.
pub fn quote(name: &str) -> String {
    let bare = !name.is_empty()
        && !AMBIGUOUS.contains(&name)
        && name != "--"
        && name != "->"
        && name.chars().all(|c| !c.is_whitespace() && !PUNCT.contains(&c) && c != '#' && c != '"');
    if bare {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn point(p: &PointDecl) -> String {
    match p {
        PointDecl::Node(n) => format!("node {}", quote(n)),
        PointDecl::Interior(a, v) => format!("interior {} {}", quote(a), fmt_q(v)),
    }
}

fn set_items(items: &[SetItem]) -> String {
    let parts: Vec<String> = items
        .iter()
        .map(|i| match i {
            SetItem::Node(n) => format!("node {}", quote(n)),
            SetItem::Interior(a, v) => format!("interior {} {}", quote(a), fmt_q(v)),
            SetItem::Arc(a) => format!("arc {}", quote(a)),
            SetItem::Segment(a, lo, hi) => format!("segment {} {} {}", quote(a), fmt_q(lo), fmt_q(hi)),
        })
        .collect();
    parts.join(", ")
}

fn names_line(out: &mut String, n: &NamesDecl) {
    let _ = writeln!(
        out,
        "names E = {} F = {} G = {} union = {}",
        quote(&n.e),
        quote(&n.f),
        quote(&n.g),
        quote(&n.union)
    );
}

/// The canonical text of a workspace.
pub fn print(ws: &Workspace) -> String {
    let mut out = String::new();
    for (i, (name, item)) in ws.items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let name = quote(name);
        match item {
            Item::Space(s) => {
                let _ = writeln!(out, "[space {name}]");
                for n in &s.nodes {
                    let _ = writeln!(out, "node {}", quote(n));
                }
                for a in &s.arcs {
                    let end = |e: &EndDecl| match e {
                        EndDecl::Node(n) => quote(n),
                        EndDecl::Open => "open".to_string(),
                    };
                    let _ = write!(out, "arc {} = {} -- {}", quote(&a.name), end(&a.ends[0]), end(&a.ends[1]));
                    if let Some((lo, hi)) = &a.chart {
                        let _ = write!(out, " chart {} {}", fmt_q(lo), fmt_q(hi));
                    }
                    out.push('\n');
                }
            }
            Item::Map(m) => {
                let _ = writeln!(out, "[map {name} : {} -> {}]", quote(&m.src), quote(&m.dst));
                for (n, p) in &m.nodes {
                    let _ = writeln!(out, "node {} -> {}", quote(n), point(p));
                }
                for p in &m.pieces {
                    let _ = write!(out, "arc {}", quote(&p.arc));
                    if let Some((lo, hi)) = &p.range {
                        let _ = write!(out, " on {} {}", fmt_q(lo), fmt_q(hi));
                    }
                    let _ = match &p.action {
                        ActionDecl::Affine { arc, a, b } => {
                            writeln!(out, " -> {} affine {} {}", quote(arc), fmt_q(a), fmt_q(b))
                        }
                        ActionDecl::Const(pt) => writeln!(out, " -> const {}", point(pt)),
                    };
                }
            }
            Item::Graph(g) => {
                let _ = writeln!(out, "[graph {name}]");
                let _ = match &g.body {
                    GraphBody::Explicit { vertices, edges, s, r } => writeln!(
                        out,
                        "vertices {}\nedges {}\ns {}\nr {}",
                        quote(vertices),
                        quote(edges),
                        quote(s),
                        quote(r)
                    ),
                    GraphBody::Suspend { of, times } => writeln!(out, "suspend {} {times}", quote(of)),
                    GraphBody::Discrete { of } => writeln!(out, "discrete {}", quote(of)),
                    GraphBody::Glued { of } => writeln!(out, "glued {}", quote(of)),
                    GraphBody::Quantum { kind, dim } => {
                        let k = match kind {
                            QuantumKind::Ball => "ball",
                            QuantumKind::Sphere => "sphere",
                        };
                        writeln!(out, "quantum {k} {dim}")
                    }
                };
                match g.mode {
                    Some(Mode::Strict) => out.push_str("lhmode strict\n"),
                    Some(Mode::Image) => out.push_str("lhmode image\n"),
                    None => {}
                }
            }
            Item::Subgraph(s) => {
                let _ = writeln!(out, "[subgraph {name} of {}]", quote(&s.of));
                match &s.body {
                    SubgraphBody::Embedded { graph, e0, e1 } => {
                        let _ = writeln!(out, "graph {}\ne0 {}\ne1 {}", quote(graph), quote(e0), quote(e1));
                    }
                    SubgraphBody::Sets { vertices, edges } => {
                        let _ = writeln!(out, "vertices {}", set_items(vertices));
                        if let Some(e) = edges {
                            let _ = writeln!(out, "edges {}", set_items(e));
                        }
                    }
                }
            }
            Item::Factor(f) => {
                let _ = match f {
                    FactorDecl::Maps { src, dst, m0, m1 } => writeln!(
                        out,
                        "[factor {name} : {} -> {}]\nm0 {}\nm1 {}",
                        quote(src),
                        quote(dst),
                        quote(m0),
                        quote(m1)
                    ),
                    FactorDecl::Inclusion { of } => writeln!(out, "[factor {name}]\ninclusion {}", quote(of)),
                    FactorDecl::Suspend { of, times } => writeln!(out, "[factor {name}]\nsuspend {} {times}", quote(of)),
                };
            }
            Item::Glue(g) => {
                let _ = writeln!(out, "[glue {name}]\nE = {}", quote(&g.e));
                if let Some(f) = &g.f {
                    let _ = writeln!(out, "F = {}", quote(f));
                }
                let _ = writeln!(out, "G = {}", quote(&g.g));
                let _ = match &g.m {
                    AttachDecl::Factor(m) => writeln!(out, "m = {}", quote(m)),
                    AttachDecl::Maps { m0, m1 } => writeln!(out, "m0 = {}\nm1 = {}", quote(m0), quote(m1)),
                };
                if g.suspend > 0 {
                    let _ = writeln!(out, "suspend = {}", g.suspend);
                }
                if let Some(n) = &g.names {
                    names_line(&mut out, n);
                }
                if let Some(c) = &g.corners {
                    let _ = writeln!(
                        out,
                        "corners union = {} e = {} f = {} intersection = {}",
                        quote(&c.union),
                        quote(&c.e),
                        quote(&c.f),
                        quote(&c.intersection)
                    );
                }
            }
            Item::Discrete(d) => {
                let _ = writeln!(out, "[discrete {name}]");
                let verts: Vec<String> = d.vertices.iter().map(|v| quote(v)).collect();
                let _ = writeln!(out, "vertices {}", verts.join(" "));
                for (s, r, m) in &d.edges {
                    let _ = match m {
                        MultDecl::Fin(1) => writeln!(out, "edge {} -> {}", quote(s), quote(r)),
                        MultDecl::Fin(k) => writeln!(out, "edge {} -> {} {k}", quote(s), quote(r)),
                        MultDecl::Omega => writeln!(out, "edge {} -> {} omega", quote(s), quote(r)),
                    };
                }
            }
            Item::DiscreteGlue(d) => {
                let _ = writeln!(out, "[discrete-glue {name}]\nE = {}\nF = {}", quote(&d.e), quote(&d.f));
                let g: Vec<String> = d.g.iter().map(|v| quote(v)).collect();
                let _ = writeln!(out, "G = {}", g.join(" "));
                let m0: Vec<String> = d.m0.iter().map(|(u, v)| format!("{}:{}", quote(u), quote(v))).collect();
                let _ = writeln!(out, "m0 = {}", m0.join(" "));
                if let Some(n) = &d.names {
                    names_line(&mut out, n);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn awkward_names_are_quoted() {
        assert_eq!(quote("v0->v1#1"), "\"v0->v1#1\"");
        assert_eq!(quote("open"), "\"open\"");
        assert_eq!(quote("S^2_q"), "S^2_q");
        assert_eq!(quote("-1"), "-1");
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
