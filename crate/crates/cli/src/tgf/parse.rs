use pltg::rational::parse_q;
use pltg::Q;

use super::lex::{lex_line, Token, PUNCT};
use super::*;

type Res<T> = Result<T, ParseError>;

/// Cursor over the tokens of one line.
struct Line<'a> {
    toks: &'a [Token],
    pos: usize,
    lineno: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.lineno, col, message: message.into() }
    }

    /// Column for a complaint about a missing token: the last token read.
    fn missing(&self, what: &str) -> ParseError {
        let col = self.toks.get(self.pos.saturating_sub(1)).map_or(1, |t| t.col);
        match self.toks.get(self.pos.wrapping_sub(1)) {
            Some(t) => self.err(col, format!("expected {what} after `{}`", t.text)),
            None => self.err(col, format!("expected {what}")),
        }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek_is(&self, word: &str) -> bool {
        self.peek().is_some_and(|t| t.is(word))
    }

    fn next(&mut self, what: &str) -> Res<&'a Token> {
        let t = self.toks.get(self.pos).ok_or_else(|| self.missing(what))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Res<()> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.is(kw) {
            Ok(())
        } else {
            Err(self.err(t.col, format!("expected `{kw}`, found `{}`", t.text)))
        }
    }

    fn name(&mut self, what: &str) -> Res<(String, usize)> {
        let t = self.next(what)?;
        let reserved = !t.quoted && (t.text.len() == 1 && PUNCT.contains(&t.text.chars().next().unwrap()));
        if reserved || (!t.quoted && (t.text == "--" || t.text == "->")) {
            return Err(self.err(t.col, format!("expected {what}, found `{}`", t.text)));
        }
        Ok((t.text.clone(), t.col))
    }

    fn rational(&mut self) -> Res<Q> {
        let t = self.next("a rational number")?;
        if t.quoted {
            return Err(self.err(t.col, "malformed rational"));
        }
        parse_q(&t.text).ok_or_else(|| self.err(t.col, format!("malformed rational `{}`", t.text)))
    }

    fn count(&mut self, what: &str) -> Res<usize> {
        let t = self.next(what)?;
        t.text.parse().map_err(|_| self.err(t.col, format!("expected {what}, found `{}`", t.text)))
    }

    fn skip_eq(&mut self) {
        if self.peek_is("=") {
            self.pos += 1;
        }
    }

    fn done(&self) -> Res<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(t.col, format!("unexpected `{}`", t.text))),
        }
    }
}

enum Body {
    Space(SpaceDecl),
    Map(MapDecl),
    Graph { explicit: [Option<String>; 4], derived: Option<GraphBody>, mode: Option<Mode> },
    Subgraph { of: String, embedded: [Option<String>; 3], vertices: Option<Vec<SetItem>>, edges: Option<Vec<SetItem>> },
    Factor { header: Option<(String, String)>, maps: [Option<String>; 2], other: Option<FactorDecl> },
    Glue { e: Option<String>, f: Option<String>, g: Option<String>, m: Option<String>, maps: [Option<String>; 2], suspend: usize, names: Option<NamesDecl>, corners: Option<CornersDecl> },
    Discrete(DiscreteDecl),
    DiscreteGlue { e: Option<String>, f: Option<String>, g: Option<Vec<String>>, m0: Option<Vec<(String, String)>>, names: Option<NamesDecl> },
}

struct Section {
    name: String,
    line: usize,
    col: usize,
    body: Body,
}

struct Parser {
    ws: Workspace,
    errors: Vec<ParseError>,
    section: Option<Section>,
}

/// Parses a whole file; all positioned errors are reported together.
pub fn parse(text: &str) -> Result<Workspace, Vec<ParseError>> {
    let mut p = Parser { ws: Workspace::default(), errors: Vec::new(), section: None };
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = match lex_line(raw, lineno) {
            Ok(t) => t,
            Err(e) => {
                p.errors.push(e);
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        let mut line = Line { toks: &toks, pos: 0, lineno };
        let res = if toks[0].is("[") { p.header(&mut line) } else { p.body_line(&mut line) };
        if let Err(e) = res {
            p.errors.push(e);
        }
    }
    p.close();
    if p.errors.is_empty() {
        Ok(p.ws)
    } else {
        Err(p.errors)
    }
}

fn space_has_node(s: &SpaceDecl, n: &str) -> bool {
    s.nodes.iter().any(|x| x == n)
}

fn space_has_arc(s: &SpaceDecl, a: &str) -> bool {
    s.arcs.iter().any(|x| x.name == a)
}

impl Parser {
    fn lookup(&self, line: &Line, name: &str, col: usize, kind: Kind) -> Res<&Item> {
        match self.ws.get(name) {
            None => Err(line.err(col, format!("unknown name `{name}`"))),
            Some(item) if item.kind() == kind => Ok(item),
            Some(item) => Err(line.err(
                col,
                format!("`{name}` is a {}, expected a {}", item.kind().keyword(), kind.keyword()),
            )),
        }
    }

    fn reference(&self, line: &mut Line, kind: Kind) -> Res<String> {
        let (name, col) = line.name(&format!("a {} name", kind.keyword()))?;
        self.lookup(line, &name, col, kind)?;
        Ok(name)
    }

    fn space(&self, name: &str) -> &SpaceDecl {
        match self.ws.get(name) {
            Some(Item::Space(s)) => s,
            _ => unreachable!("space references are checked when read"),
        }
    }

    fn header(&mut self, line: &mut Line) -> Res<()> {
        self.close();
        line.keyword("[")?;
        let kw = line.next("a section kind")?;
        let (name, col) = line.name("a section name")?;
        let body = match kw.text.as_str() {
            "space" if !kw.quoted => Body::Space(SpaceDecl::default()),
            "map" if !kw.quoted => {
                line.keyword(":")?;
                let src = self.reference(line, Kind::Space)?;
                line.keyword("->")?;
                let dst = self.reference(line, Kind::Space)?;
                Body::Map(MapDecl { src, dst, nodes: Vec::new(), pieces: Vec::new() })
            }
            "graph" if !kw.quoted => Body::Graph { explicit: Default::default(), derived: None, mode: None },
            "subgraph" if !kw.quoted => {
                line.keyword("of")?;
                let of = self.reference(line, Kind::Graph)?;
                Body::Subgraph { of, embedded: Default::default(), vertices: None, edges: None }
            }
            "factor" if !kw.quoted => {
                let header = if line.peek_is(":") {
                    line.keyword(":")?;
                    let src = self.reference(line, Kind::Graph)?;
                    line.keyword("->")?;
                    Some((src, self.reference(line, Kind::Graph)?))
                } else {
                    None
                };
                Body::Factor { header, maps: Default::default(), other: None }
            }
            "glue" if !kw.quoted => Body::Glue {
                e: None,
                f: None,
                g: None,
                m: None,
                maps: Default::default(),
                suspend: 0,
                names: None,
                corners: None,
            },
            "discrete" if !kw.quoted => Body::Discrete(DiscreteDecl::default()),
            "discrete-glue" if !kw.quoted => Body::DiscreteGlue { e: None, f: None, g: None, m0: None, names: None },
            other => return Err(line.err(kw.col, format!("unknown section kind `{other}`"))),
        };
        line.keyword("]")?;
        line.done()?;
        if self.ws.items.contains_key(&name) {
            return Err(line.err(col, format!("duplicate name `{name}`")));
        }
        self.section = Some(Section { name, line: line.lineno, col, body });
        Ok(())
    }

    fn body_line(&mut self, line: &mut Line) -> Res<()> {
        let Some(mut section) = self.section.take() else {
            return Err(line.err(line.toks[0].col, "line outside of any section"));
        };
        let res = self.section_line(&mut section.body, line);
        self.section = Some(section);
        res?;
        line.done()
    }

    fn section_line(&self, body: &mut Body, line: &mut Line) -> Res<()> {
        let key = line.next("a keyword")?;
        let unknown = || line.err(key.col, format!("unknown keyword `{}`", key.text));
        if key.quoted {
            return Err(unknown());
        }
        match body {
            Body::Space(s) => self.space_line(s, key, line),
            Body::Map(m) => self.map_line(m, key, line),
            Body::Graph { explicit, derived, mode } => {
                let slot = match key.text.as_str() {
                    "vertices" => Some((0, Kind::Space)),
                    "edges" => Some((1, Kind::Space)),
                    "s" => Some((2, Kind::Map)),
                    "r" => Some((3, Kind::Map)),
                    _ => None,
                };
                if let Some((i, kind)) = slot {
                    line.skip_eq();
                    set_once(&mut explicit[i], self.reference(line, kind)?, line, key)?;
                    return Ok(());
                }
                let body = match key.text.as_str() {
                    "lhmode" => {
                        let t = line.next("`strict` or `image`")?;
                        let m = match t.text.as_str() {
                            "strict" => Mode::Strict,
                            "image" => Mode::Image,
                            _ => return Err(line.err(t.col, "expected `strict` or `image`")),
                        };
                        return set_once(mode, m, line, key);
                    }
                    "suspend" => {
                        let of = self.reference(line, Kind::Graph)?;
                        let times = if line.peek().is_some() { line.count("a repeat count")? } else { 1 };
                        GraphBody::Suspend { of, times }
                    }
                    "discrete" => GraphBody::Discrete { of: self.reference(line, Kind::Discrete)? },
                    "glued" => GraphBody::Glued { of: self.reference(line, Kind::Glue)? },
                    "quantum" => {
                        let t = line.next("`ball` or `sphere`")?;
                        let kind = match t.text.as_str() {
                            "ball" => QuantumKind::Ball,
                            "sphere" => QuantumKind::Sphere,
                            _ => return Err(line.err(t.col, "expected `ball` or `sphere`")),
                        };
                        GraphBody::Quantum { kind, dim: line.count("a dimension")? }
                    }
                    _ => return Err(unknown()),
                };
                set_once(derived, body, line, key)
            }
            Body::Subgraph { embedded, vertices, edges, .. } => match key.text.as_str() {
                "graph" | "e0" | "e1" => {
                    let (i, kind) = match key.text.as_str() {
                        "graph" => (0, Kind::Graph),
                        "e0" => (1, Kind::Map),
                        _ => (2, Kind::Map),
                    };
                    line.skip_eq();
                    set_once(&mut embedded[i], self.reference(line, kind)?, line, key)
                }
                "vertices" => set_once(vertices, set_items(line)?, line, key),
                "edges" => set_once(edges, set_items(line)?, line, key),
                _ => Err(unknown()),
            },
            Body::Factor { maps, other, .. } => match key.text.as_str() {
                "m0" | "m1" => {
                    line.skip_eq();
                    let i = usize::from(key.text == "m1");
                    set_once(&mut maps[i], self.reference(line, Kind::Map)?, line, key)
                }
                "inclusion" => set_once(other, FactorDecl::Inclusion { of: self.reference(line, Kind::Subgraph)? }, line, key),
                "suspend" => {
                    let of = self.reference(line, Kind::Factor)?;
                    let times = if line.peek().is_some() { line.count("a repeat count")? } else { 1 };
                    set_once(other, FactorDecl::Suspend { of, times }, line, key)
                }
                _ => Err(unknown()),
            },
            Body::Glue { e, f, g, m, maps, suspend, names, corners } => {
                match key.text.as_str() {
                    "E" | "F" => {
                        line.skip_eq();
                        let slot = if key.text == "E" { e } else { f };
                        set_once(slot, self.reference(line, Kind::Graph)?, line, key)
                    }
                    "G" => {
                        line.skip_eq();
                        set_once(g, self.reference(line, Kind::Subgraph)?, line, key)
                    }
                    "m" => {
                        line.skip_eq();
                        set_once(m, self.reference(line, Kind::Factor)?, line, key)
                    }
                    "m0" | "m1" => {
                        line.skip_eq();
                        let i = usize::from(key.text == "m1");
                        set_once(&mut maps[i], self.reference(line, Kind::Map)?, line, key)
                    }
                    "suspend" => {
                        line.skip_eq();
                        *suspend = line.count("a repeat count")?;
                        Ok(())
                    }
                    "names" => {
                        let [e, f, g, u] = key_values(line, ["E", "F", "G", "union"])?;
                        set_once(names, NamesDecl { e, f, g, union: u }, line, key)
                    }
                    "corners" => {
                        let [u, e, f, i] = key_values(line, ["union", "e", "f", "intersection"])?;
                        set_once(corners, CornersDecl { union: u, e, f, intersection: i }, line, key)
                    }
                    _ => Err(unknown()),
                }
            }
            Body::Discrete(d) => match key.text.as_str() {
                "vertices" => {
                    while line.peek().is_some() {
                        let (n, col) = line.name("a vertex name")?;
                        if d.vertices.contains(&n) {
                            return Err(line.err(col, format!("duplicate vertex `{n}`")));
                        }
                        d.vertices.push(n);
                    }
                    Ok(())
                }
                "edge" => {
                    let s = vertex_of(&d.vertices, line)?;
                    line.keyword("->")?;
                    let r = vertex_of(&d.vertices, line)?;
                    let mult = match line.peek() {
                        None => MultDecl::Fin(1),
                        Some(t) if t.is("omega") || t.is("ω") => {
                            line.pos += 1;
                            MultDecl::Omega
                        }
                        Some(_) => MultDecl::Fin(line.count("a multiplicity")? as u64),
                    };
                    d.edges.push((s, r, mult));
                    Ok(())
                }
                _ => Err(unknown()),
            },
            Body::DiscreteGlue { e, f, g, m0, names } => match key.text.as_str() {
                "E" | "F" => {
                    line.skip_eq();
                    let slot = if key.text == "E" { e } else { f };
                    set_once(slot, self.reference(line, Kind::Discrete)?, line, key)
                }
                "G" => {
                    line.skip_eq();
                    let Some(fname) = f.as_ref() else {
                        return Err(line.err(key.col, "`F` must precede `G`"));
                    };
                    let verts = self.discrete_vertices(fname);
                    let mut out = Vec::new();
                    while line.peek().is_some() {
                        out.push(vertex_of(&verts, line)?);
                    }
                    set_once(g, out, line, key)
                }
                "m0" => {
                    line.skip_eq();
                    let (Some(ename), Some(fname)) = (e.as_ref(), f.as_ref()) else {
                        return Err(line.err(key.col, "`E` and `F` must precede `m0`"));
                    };
                    let (ev, fv) = (self.discrete_vertices(ename), self.discrete_vertices(fname));
                    let mut out = Vec::new();
                    while line.peek().is_some() {
                        let u = vertex_of(&fv, line)?;
                        line.keyword(":")?;
                        out.push((u, vertex_of(&ev, line)?));
                    }
                    set_once(m0, out, line, key)
                }
                "names" => {
                    let [e, f, g, u] = key_values(line, ["E", "F", "G", "union"])?;
                    set_once(names, NamesDecl { e, f, g, union: u }, line, key)
                }
                _ => Err(unknown()),
            },
        }
    }

    fn discrete_vertices(&self, name: &str) -> Vec<String> {
        match self.ws.get(name) {
            Some(Item::Discrete(d)) => d.vertices.clone(),
            _ => Vec::new(),
        }
    }

    fn space_line(&self, s: &mut SpaceDecl, key: &Token, line: &mut Line) -> Res<()> {
        match key.text.as_str() {
            "node" => {
                let (n, col) = line.name("a node name")?;
                if space_has_node(s, &n) || space_has_arc(s, &n) {
                    return Err(line.err(col, format!("duplicate cell name `{n}`")));
                }
                s.nodes.push(n);
                Ok(())
            }
            "arc" => {
                let (a, col) = line.name("an arc name")?;
                if space_has_node(s, &a) || space_has_arc(s, &a) {
                    return Err(line.err(col, format!("duplicate cell name `{a}`")));
                }
                line.keyword("=")?;
                let start = end_decl(s, line)?;
                line.keyword("--")?;
                let end = end_decl(s, line)?;
                let chart = if line.peek_is("chart") {
                    line.pos += 1;
                    Some(chart(line)?)
                } else {
                    None
                };
                s.arcs.push(ArcDecl { name: a, ends: [start, end], chart });
                Ok(())
            }
            "chart" => {
                let Some(last) = s.arcs.last_mut() else {
                    return Err(line.err(key.col, "`chart` must follow an arc"));
                };
                if last.chart.is_some() {
                    return Err(line.err(key.col, format!("arc `{}` already has a chart", last.name)));
                }
                last.chart = Some(chart(line)?);
                Ok(())
            }
            other => Err(line.err(key.col, format!("unknown keyword `{other}`"))),
        }
    }

    fn map_line(&self, m: &mut MapDecl, key: &Token, line: &mut Line) -> Res<()> {
        let (src, dst) = (self.space(&m.src), self.space(&m.dst));
        match key.text.as_str() {
            "node" => {
                let (n, col) = line.name("a node name")?;
                if !space_has_node(src, &n) {
                    return Err(line.err(col, format!("`{n}` is not a node of `{}`", m.src)));
                }
                if m.nodes.iter().any(|(x, _)| *x == n) {
                    return Err(line.err(col, format!("node `{n}` is mapped twice")));
                }
                line.keyword("->")?;
                m.nodes.push((n, point_decl(dst, &m.dst, line)?));
                Ok(())
            }
            "arc" => {
                let (a, col) = line.name("an arc name")?;
                if !space_has_arc(src, &a) {
                    return Err(line.err(col, format!("`{a}` is not an arc of `{}`", m.src)));
                }
                let range = if line.peek_is("on") {
                    line.pos += 1;
                    Some((line.rational()?, line.rational()?))
                } else {
                    None
                };
                line.keyword("->")?;
                let action = if line.peek_is("const") {
                    line.pos += 1;
                    ActionDecl::Const(point_decl(dst, &m.dst, line)?)
                } else {
                    let (t, col) = line.name("a target arc")?;
                    if !space_has_arc(dst, &t) {
                        return Err(line.err(col, format!("`{t}` is not an arc of `{}`", m.dst)));
                    }
                    line.keyword("affine")?;
                    ActionDecl::Affine { arc: t, a: line.rational()?, b: line.rational()? }
                };
                m.pieces.push(PieceDecl { arc: a, range, action });
                Ok(())
            }
            other => Err(line.err(key.col, format!("unknown keyword `{other}`"))),
        }
    }

    fn close(&mut self) {
        let Some(section) = self.section.take() else { return };
        let missing = |what: &str| ParseError {
            line: section.line,
            col: section.col,
            message: format!("section `{}` is missing {what}", section.name),
        };
        let item = match section.body {
            Body::Space(s) => Ok(Item::Space(s)),
            Body::Map(m) => {
                let src = self.space(&m.src);
                if let Some(n) = src.nodes.iter().find(|n| !m.nodes.iter().any(|(x, _)| x == *n)) {
                    Err(missing(&format!("an image for node `{n}`")))
                } else if let Some(a) = src.arcs.iter().find(|a| !m.pieces.iter().any(|p| p.arc == a.name)) {
                    Err(missing(&format!("pieces for arc `{}`", a.name)))
                } else {
                    Ok(Item::Map(m))
                }
            }
            Body::Graph { explicit, derived, mode } => match (explicit, derived) {
                ([None, None, None, None], Some(body)) => Ok(Item::Graph(GraphDecl { body, mode })),
                ([Some(vertices), Some(edges), Some(s), Some(r)], None) => {
                    Ok(Item::Graph(GraphDecl { body: GraphBody::Explicit { vertices, edges, s, r }, mode }))
                }
                (_, Some(_)) => Err(missing("a single definition (explicit and derived lines are mixed)")),
                _ => Err(missing("one of the lines `vertices`, `edges`, `s`, `r`")),
            },
            Body::Subgraph { of, embedded, vertices, edges } => match (embedded, vertices) {
                ([Some(graph), Some(e0), Some(e1)], None) if edges.is_none() => {
                    Ok(Item::Subgraph(SubgraphDecl { of, body: SubgraphBody::Embedded { graph, e0, e1 } }))
                }
                ([None, None, None], Some(vertices)) => {
                    Ok(Item::Subgraph(SubgraphDecl { of, body: SubgraphBody::Sets { vertices, edges } }))
                }
                _ => Err(missing("either `graph`, `e0`, `e1` or a `vertices` line")),
            },
            Body::Factor { header, maps, other } => match (header, maps, other) {
                (Some((src, dst)), [Some(m0), Some(m1)], None) => Ok(Item::Factor(FactorDecl::Maps { src, dst, m0, m1 })),
                (None, [None, None], Some(f)) => Ok(Item::Factor(f)),
                _ => Err(missing("`: SRC -> DST` with `m0`, `m1`, or an `inclusion`/`suspend` line")),
            },
            Body::Glue { e, f, g, m, maps, suspend, names, corners } => {
                let attach = match (m, maps) {
                    (Some(m), [None, None]) => Some(AttachDecl::Factor(m)),
                    (None, [Some(m0), Some(m1)]) => Some(AttachDecl::Maps { m0, m1 }),
                    _ => None,
                };
                match (e, g, attach) {
                    (Some(e), Some(g), Some(m)) => Ok(Item::Glue(GlueDecl { e, f, g, m, suspend, names, corners })),
                    _ => Err(missing("`E`, `G` and either `m` or `m0`, `m1`")),
                }
            }
            Body::Discrete(d) => Ok(Item::Discrete(d)),
            Body::DiscreteGlue { e, f, g, m0, names } => match (e, f, g, m0) {
                (Some(e), Some(f), Some(g), Some(m0)) => {
                    match g.iter().find(|u| !m0.iter().any(|(x, _)| x == *u)) {
                        Some(u) => Err(missing(&format!("an `m0` image for `{u}`"))),
                        None => Ok(Item::DiscreteGlue(DiscreteGlueDecl { e, f, g, m0, names })),
                    }
                }
                _ => Err(missing("`E`, `F`, `G` and `m0`")),
            },
        };
        match item {
            Ok(item) => {
                self.ws.items.insert(section.name, item);
            }
            Err(e) => self.errors.push(e),
        }
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: &Line, key: &Token) -> Res<()> {
    if slot.is_some() {
        return Err(line.err(key.col, format!("`{}` given twice", key.text)));
    }
    *slot = Some(value);
    Ok(())
}

fn end_decl(s: &SpaceDecl, line: &mut Line) -> Res<EndDecl> {
    let t = line.next("an arc end (a node name or `open`)")?;
    if t.is("open") {
        return Ok(EndDecl::Open);
    }
    line.pos -= 1;
    let (n, col) = line.name("an arc end (a node name or `open`)")?;
    if !space_has_node(s, &n) {
        return Err(line.err(col, format!("unknown node `{n}`")));
    }
    Ok(EndDecl::Node(n))
}

fn chart(line: &mut Line) -> Res<(Q, Q)> {
    let col = line.peek().map_or(1, |t| t.col);
    let (lo, hi) = (line.rational()?, line.rational()?);
    if lo == hi {
        return Err(line.err(col, "degenerate chart"));
    }
    Ok((lo, hi))
}

fn point_decl(dst: &SpaceDecl, dst_name: &str, line: &mut Line) -> Res<PointDecl> {
    let t = line.next("`node` or `interior`")?;
    if t.is("node") {
        let (n, col) = line.name("a node name")?;
        if !space_has_node(dst, &n) {
            return Err(line.err(col, format!("`{n}` is not a node of `{dst_name}`")));
        }
        Ok(PointDecl::Node(n))
    } else if t.is("interior") {
        let (a, col) = line.name("an arc name")?;
        if !space_has_arc(dst, &a) {
            return Err(line.err(col, format!("`{a}` is not an arc of `{dst_name}`")));
        }
        Ok(PointDecl::Interior(a, line.rational()?))
    } else {
        Err(line.err(t.col, format!("expected `node` or `interior`, found `{}`", t.text)))
    }
}

/// A comma-separated list of set items; cell names are resolved when the set is built.
fn set_items(line: &mut Line) -> Res<Vec<SetItem>> {
    let mut out = Vec::new();
    loop {
        let t = line.next("`node`, `interior`, `arc` or `segment`")?;
        let item = match t.text.as_str() {
            "node" if !t.quoted => SetItem::Node(line.name("a node name")?.0),
            "interior" if !t.quoted => SetItem::Interior(line.name("an arc name")?.0, line.rational()?),
            "arc" if !t.quoted => SetItem::Arc(line.name("an arc name")?.0),
            "segment" if !t.quoted => SetItem::Segment(line.name("an arc name")?.0, line.rational()?, line.rational()?),
            other => return Err(line.err(t.col, format!("expected a set item, found `{other}`"))),
        };
        out.push(item);
        if !line.peek_is(",") {
            return Ok(out);
        }
        line.pos += 1;
    }
}

fn key_values<const N: usize>(line: &mut Line, keys: [&str; N]) -> Res<[String; N]> {
    let mut out: [Option<String>; N] = std::array::from_fn(|_| None);
    for (i, k) in keys.iter().enumerate() {
        line.keyword(k)?;
        line.keyword("=")?;
        out[i] = Some(line.name("a label")?.0);
    }
    Ok(out.map(|x| x.unwrap()))
}

fn vertex_of(verts: &[String], line: &mut Line) -> Res<String> {
    let (n, col) = line.name("a vertex name")?;
    if !verts.contains(&n) {
        return Err(line.err(col, format!("unknown vertex `{n}`")));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_is_an_empty_workspace() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn missing_arc_end_points_at_the_dash() {
        let errs = parse("[space X]\nnode p\narc A = p --\n").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!((errs[0].line, errs[0].col), (3, 11));
    }

    #[test]
    fn dangling_names_and_bad_rationals_are_positioned() {
        let errs = parse("[graph G]\nvertices V\n").unwrap_err();
        assert_eq!((errs[0].line, errs[0].col), (2, 10));
        assert!(errs[0].message.contains("unknown name"));
        let errs = parse("[space X]\nnode p\narc A = p -- open chart 0 1/0\n").unwrap_err();
        assert_eq!((errs[0].line, errs[0].col), (3, 27));
        assert!(errs[0].message.contains("malformed rational"));
    }

    #[test]
    fn incomplete_sections_are_reported_at_the_header() {
        let errs = parse("[space V]\nnode a\n[map f : V -> V]\n").unwrap_err();
        assert_eq!((errs[0].line, errs[0].col), (3, 6));
    }
}
