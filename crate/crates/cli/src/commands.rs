//! The command surface shared by the binary and its tests.

use std::fmt::Write;

use pltg::glue::{check_boundcond, check_main_theorem, check_regular_adjunction};
use pltg::morphism::{check_factor_map, is_regular_closed_subgraph, RegularityReport};
use pltg::discrete::check_th24;
use pltg::suspend::{isomorphic, iterate_suspension, quantum_ball_graph, quantum_sphere_graph};
use pltg::topograph::TopGraph;

use crate::build::Built;
use crate::export::export_graph;
use crate::render::render_graph;
use crate::tgf::{print, QuantumKind, Workspace};

/// How a command ended; the discriminant is the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Positive = 0,
    Negative = 1,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Positive
        } else {
            Outcome::Negative
        }
    }
}

pub enum Command {
    Fmt,
    Validate,
    Classify(String),
    RowFinite(String),
    CheckSubgraph(String),
    CheckFactor(String),
    Glue { name: String, label: Option<String> },
    CheckRegular(String),
    CheckBoundcond(String),
    CheckTheorem(String),
    Suspend { graph: String, times: usize },
    Quantum { kind: QuantumKind, dim: usize },
    DiscreteCheck(String),
    Iso(String, String),
    Render(String),
}

type R<T> = Result<T, String>;

fn lookup<'a, T>(b: &Built, table: &'a std::collections::HashMap<String, T>, ws: &Workspace, name: &str, kind: &str) -> R<&'a T> {
    if let Some(x) = table.get(name) {
        return Ok(x);
    }
    match (ws.get(name), b.error_of(name)) {
        (_, Some(e)) => Err(format!("`{name}` failed to build: {e}")),
        (Some(item), None) => Err(format!("`{name}` is a {}, expected a {kind}", item.kind().keyword())),
        (None, None) => Err(format!("unknown name `{name}`")),
    }
}

fn regularity_lines(out: &mut String, label: &str, r: &RegularityReport) {
    let _ = writeln!(
        out,
        "{label}: regular={} closed={} negatively_invariant={} full_range_preimage={}",
        r.regular(),
        r.closed,
        r.negatively_invariant,
        r.full_range_preimage
    );
    for w in &r.witnesses {
        let _ = writeln!(out, "  {w}");
    }
}

fn graph_text(name: &str, g: &TopGraph) -> String {
    let mut ws = Workspace::default();
    export_graph(&mut ws, name, g);
    print(&ws)
}

/// Runs one command; `Err` means the command could not be carried out.
pub fn run(cmd: &Command, ws: &Workspace, b: &Built, out: &mut String) -> R<Outcome> {
    let graph = |name: &str| lookup(b, &b.graphs, ws, name, "graph");
    let glue = |name: &str| lookup(b, &b.glues, ws, name, "glue");
    match cmd {
        Command::Fmt => {
            out.push_str(&print(ws));
            Ok(Outcome::Positive)
        }
        Command::Validate => {
            for (name, e) in &b.errors {
                let _ = writeln!(out, "{name}: {e}");
            }
            if b.errors.is_empty() {
                let _ = writeln!(out, "ok: {} declarations", ws.items.len());
            }
            Ok(Outcome::from_bool(b.errors.is_empty()))
        }
        Command::Classify(name) => {
            let c = graph(name)?.classify();
            for (label, set) in [("fin", &c.fin), ("inf", &c.inf), ("sink", &c.sink), ("reg", &c.reg), ("sing", &c.sing)] {
                let _ = writeln!(out, "{label:<5} {set}");
            }
            Ok(Outcome::Positive)
        }
        Command::RowFinite(name) => {
            let ok = graph(name)?.is_row_finite();
            let _ = writeln!(out, "row-finite: {ok}");
            Ok(Outcome::from_bool(ok))
        }
        Command::CheckSubgraph(name) => {
            let w = lookup(b, &b.subgraphs, ws, name, "subgraph")?;
            let r = is_regular_closed_subgraph(w);
            regularity_lines(out, name, &r);
            Ok(Outcome::from_bool(r.regular()))
        }
        Command::CheckFactor(name) => {
            let f = lookup(b, &b.factors, ws, name, "factor")?;
            let r = check_factor_map(f);
            let _ = writeln!(
                out,
                "{name}: regular={} proper0={} proper1={} F1={} F2={} F3={}",
                r.all(),
                r.proper0,
                r.proper1,
                r.f1,
                r.f2,
                r.f3
            );
            for w in &r.witnesses {
                let _ = writeln!(out, "  {w}");
            }
            Ok(Outcome::from_bool(r.all()))
        }
        Command::Glue { name, label } => {
            let g = glue(name)?;
            out.push_str(&graph_text(label.as_deref().unwrap_or(name), &g.result.glued));
            Ok(Outcome::Positive)
        }
        Command::CheckRegular(name) => {
            let rep = check_regular_adjunction(&glue(name)?.result);
            regularity_lines(out, "G in F", &rep.g_in_f);
            regularity_lines(out, "E in union", &rep.e_in_glued);
            for (label, f) in [("m", &rep.m), ("p", &rep.p)] {
                let _ = writeln!(out, "{label}: regular factor map={}", f.all());
                for w in &f.witnesses {
                    let _ = writeln!(out, "  {w}");
                }
            }
            let _ = writeln!(out, "regular adjunction: {}", rep.regular);
            Ok(Outcome::from_bool(rep.regular))
        }
        Command::CheckBoundcond(name) => {
            let (ok, witness) = check_boundcond(&glue(name)?.result.spec).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "boundcond: {ok}\nwitness: {witness}");
            Ok(Outcome::from_bool(ok))
        }
        Command::CheckTheorem(name) => {
            let g = glue(name)?;
            let cert = check_main_theorem(&g.result, &g.names, g.corners.clone());
            out.push_str(&serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())?);
            out.push('\n');
            Ok(Outcome::from_bool(cert.is_positive()))
        }
        Command::Suspend { graph: name, times } => {
            let g = iterate_suspension(graph(name)?, *times).map_err(|e| e.to_string())?;
            out.push_str(&graph_text(&format!("{name}_s{times}"), &g));
            Ok(Outcome::Positive)
        }
        Command::Quantum { kind, dim } => {
            let (g, label) = match kind {
                QuantumKind::Ball => (quantum_ball_graph(*dim), format!("B{dim}")),
                QuantumKind::Sphere => (quantum_sphere_graph(*dim), format!("S{dim}")),
            };
            out.push_str(&graph_text(&label, &g.map_err(|e| e.to_string())?));
            Ok(Outcome::Positive)
        }
        Command::DiscreteCheck(name) => {
            let d = lookup(b, &b.discrete_glues, ws, name, "discrete-glue")?;
            let report = d.spec.report();
            let cert = check_th24(&d.spec, &d.names);
            let doc = serde_json::json!({ "report": report, "certificate": cert });
            out.push_str(&serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?);
            out.push('\n');
            Ok(Outcome::from_bool(cert.is_positive()))
        }
        Command::Iso(a, c) => {
            let (ga, gc) = (graph(a)?, graph(c)?);
            match isomorphic(ga, gc) {
                Some(iso) => {
                    let _ = writeln!(out, "isomorphic");
                    for (label, src, dst, nodes, arcs) in [
                        ("vertices", ga.v(), gc.v(), &iso.v_nodes, &iso.v_arcs),
                        ("edges", ga.ed(), gc.ed(), &iso.ed_nodes, &iso.ed_arcs),
                    ] {
                        let _ = writeln!(out, "{label}:");
                        for (n, m) in nodes.iter().enumerate() {
                            let _ = writeln!(out, "  node {} -> {}", src.node_name(n), dst.node_name(*m));
                        }
                        for (i, (j, flip)) in arcs.iter().enumerate() {
                            let rev = if *flip { " reversed" } else { "" };
                            let _ = writeln!(out, "  arc {} -> {}{rev}", src.arc(i).name, dst.arc(*j).name);
                        }
                    }
                    Ok(Outcome::Positive)
                }
                None => {
                    let _ = writeln!(out, "not isomorphic");
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::Render(name) => {
            let g = match b.glues.get(name) {
                Some(g) => &g.result.glued,
                None => graph(name)?,
            };
            out.push_str(&render_graph(g, name));
            Ok(Outcome::Positive)
        }
    }
}
