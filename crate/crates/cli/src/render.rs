//! A rough SVG sketch of a topological graph.
//!
//! The vertex space is drawn along the bottom and the edge space along the top.
//! Loops are circles, other arcs are segments or bows, and each edge node and
//! edge arc midpoint gets a dashed `s` arrow and a solid `r` arrow.

use std::fmt::Write;

use num_traits::ToPrimitive;
use pltg::plcore::{Attach, CellMap, Host, Point};
use pltg::rational::half;
use pltg::topograph::TopGraph;

const SPACING: f64 = 90.0;
const LOOP_R: f64 = 18.0;

struct Layout {
    nodes: Vec<(f64, f64)>,
    /// Per arc: the curve as start, control and end points, or a loop centre.
    arcs: Vec<Shape>,
}

enum Shape {
    Bow([(f64, f64); 3]),
    /// Centre, radius and the angle at which the loop meets its node.
    Loop((f64, f64), f64, f64),
}

fn layout(host: &Host, y: f64, up: bool) -> Layout {
    let dir = if up { -1.0 } else { 1.0 };
    let nodes: Vec<(f64, f64)> = (0..host.node_count()).map(|i| (60.0 + SPACING * i as f64, y)).collect();
    let mut free_x = 60.0 + SPACING * host.node_count() as f64;
    let mut arcs = Vec::new();
    let mut loops_at = vec![0usize; host.node_count()];
    let mut bows = std::collections::HashMap::new();
    for a in host.arcs() {
        let shape = match a.ends {
            [Attach::Closed(p), Attach::Closed(q)] if p == q => {
                loops_at[p] += 1;
                let r = LOOP_R * loops_at[p] as f64;
                let base = if up { std::f64::consts::FRAC_PI_2 } else { -std::f64::consts::FRAC_PI_2 };
                Shape::Loop((nodes[p].0, nodes[p].1 + dir * r), r, base)
            }
            [Attach::Closed(p), Attach::Closed(q)] => {
                let k = bows.entry((p.min(q), p.max(q))).or_insert(0usize);
                let bend = 30.0 * *k as f64 * if *k % 2 == 0 { 1.0 } else { -1.0 };
                *k += 1;
                let (s, e) = (nodes[p], nodes[q]);
                Shape::Bow([s, ((s.0 + e.0) / 2.0, (s.1 + e.1) / 2.0 + dir * bend), e])
            }
            [Attach::Closed(p), Attach::Open] => {
                let s = nodes[p];
                Shape::Bow([s, (s.0 + 20.0, s.1 + dir * 25.0), (s.0 + 40.0, s.1 + dir * 50.0)])
            }
            [Attach::Open, Attach::Closed(q)] => {
                let e = nodes[q];
                Shape::Bow([(e.0 - 40.0, e.1 + dir * 50.0), (e.0 - 20.0, e.1 + dir * 25.0), e])
            }
            [Attach::Open, Attach::Open] => {
                let s = (free_x, y);
                free_x += SPACING;
                Shape::Bow([s, (s.0 + 30.0, y), (s.0 + 60.0, y)])
            }
        };
        arcs.push(shape);
    }
    Layout { nodes, arcs }
}

fn at(l: &Layout, p: &Point) -> (f64, f64) {
    match p {
        Point::Node(n) => l.nodes[*n],
        Point::Interior(a, t) => {
            let t = t.to_f64().unwrap_or(0.5);
            match &l.arcs[*a] {
                Shape::Bow([p0, c, p1]) => {
                    let u = 1.0 - t;
                    (
                        u * u * p0.0 + 2.0 * u * t * c.0 + t * t * p1.0,
                        u * u * p0.1 + 2.0 * u * t * c.1 + t * t * p1.1,
                    )
                }
                Shape::Loop((cx, cy), r, base) => {
                    let ang = base + t * std::f64::consts::TAU;
                    (cx + r * ang.cos(), cy + r * ang.sin())
                }
            }
        }
    }
}

fn draw_space(out: &mut String, host: &Host, l: &Layout, colour: &str) {
    for (a, shape) in l.arcs.iter().enumerate() {
        let name = &host.arc(a).name;
        match shape {
            Shape::Bow([p0, c, p1]) => {
                let _ = writeln!(
                    out,
                    r#"<path d="M {:.1} {:.1} Q {:.1} {:.1} {:.1} {:.1}" stroke="{colour}" fill="none"/>"#,
                    p0.0, p0.1, c.0, c.1, p1.0, p1.1
                );
                let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="10">{}</text>"#, c.0, c.1 - 4.0, esc(name));
            }
            Shape::Loop((cx, cy), r, _) => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="{r:.1}" stroke="{colour}" fill="none"/>"#
                );
                let _ = writeln!(out, r#"<text x="{:.1}" y="{cy:.1}" font-size="10">{}</text>"#, cx + r + 3.0, esc(name));
            }
        }
    }
    for (n, (x, y)) in l.nodes.iter().enumerate() {
        let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="{colour}"/>"#);
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="10">{}</text>"#, x + 4.0, y + 12.0, esc(host.node_name(n)));
    }
}

fn arrow(out: &mut String, from: (f64, f64), to: (f64, f64), label: &str, dashed: bool) {
    let dash = if dashed { r#" stroke-dasharray="4 3""# } else { "" };
    let _ = writeln!(
        out,
        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="grey"{dash} marker-end="url(#head)"/>"#,
        from.0, from.1, to.0, to.1
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="9" fill="grey">{label}</text>"#,
        (from.0 + to.0) / 2.0 + 3.0,
        (from.1 + to.1) / 2.0
    );
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Sample points of the edge space: every node and every arc midpoint.
fn edge_samples(ed: &Host) -> Vec<Point> {
    let mut pts: Vec<Point> = (0..ed.node_count()).map(Point::Node).collect();
    pts.extend((0..ed.arc_count()).map(|a| Point::Interior(a, half())));
    pts
}

pub fn render_graph(g: &TopGraph, title: &str) -> String {
    let lv = layout(g.v(), 260.0, false);
    let le = layout(g.ed(), 80.0, true);
    let width = 120.0
        + SPACING
            * (g.v().node_count() + g.v().arc_count()).max(g.ed().node_count() + g.ed().arc_count()).max(2) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="340" viewBox="0 0 {width:.0} 340">"#
    );
    out.push_str(
        r#"<defs><marker id="head" markerWidth="8" markerHeight="6" refX="8" refY="3" orient="auto"><path d="M0,0 L8,3 L0,6 z" fill="grey"/></marker></defs>
"#,
    );
    let _ = writeln!(out, r#"<text x="10" y="20" font-size="12">{}</text>"#, esc(title));
    let _ = writeln!(out, r#"<text x="10" y="60" font-size="10">edges</text>"#);
    let _ = writeln!(out, r#"<text x="10" y="300" font-size="10">vertices</text>"#);
    draw_space(&mut out, g.ed(), &le, "black");
    draw_space(&mut out, g.v(), &lv, "navy");
    let maps: [(&CellMap, &str, bool); 2] = [(g.s(), "s", true), (g.r(), "r", false)];
    for p in edge_samples(g.ed()) {
        let from = at(&le, &p);
        for (m, label, dashed) in maps {
            arrow(&mut out, from, at(&lv, &m.apply(&p)), label, dashed);
        }
    }
    out.push_str("</svg>\n");
    out
}
