//! Directed graphs with edge multiplicities in `ℕ ∪ {ω}`, breaking vertices and the
//! breaking-vertex form of the pullback theorem for adjunctions of directed graphs.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::glue::certificate::{Certificate, Corners, GraphNames, Hypothesis};
use crate::plcore::{CellMap, Complex, LhMode, Point};
use crate::topograph::TopGraph;

/// A set of vertices as a bitmask; at most 64 vertices.
pub type VertexSet = u64;

/// Number of parallel edges between an ordered pair of vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mult {
    Fin(u64),
    Omega,
}

impl Mult {
    pub const ZERO: Mult = Mult::Fin(0);
    pub const ONE: Mult = Mult::Fin(1);

    pub fn is_zero(self) -> bool {
        self == Mult::ZERO
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Mult::Fin(_))
    }

    pub fn add(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Fin(a), Mult::Fin(b)) => Mult::Fin(a.saturating_add(b)),
            _ => Mult::Omega,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Fin(k) => write!(f, "{k}"),
            Mult::Omega => write!(f, "omega"),
        }
    }
}

pub fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            i
        })
    })
}

pub fn full_set(n: usize) -> VertexSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite directed multigraph stored as an adjacency matrix of multiplicities.
///
/// Vertices without explicit names are called `v0, v1, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscreteGraph {
    n: usize,
    names: Option<Vec<String>>,
    adj: Vec<Mult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteClasses {
    pub sinks: VertexSet,
    pub infinite_emitters: VertexSet,
    pub regular: VertexSet,
    pub singular: VertexSet,
}

impl DiscreteGraph {
    pub fn new(n: usize) -> DiscreteGraph {
        assert!(n <= 64, "at most 64 vertices");
        DiscreteGraph { n, names: None, adj: vec![Mult::ZERO; n * n] }
    }

    pub fn with_names(names: Vec<String>) -> DiscreteGraph {
        let n = names.len();
        assert!(n <= 64, "at most 64 vertices");
        DiscreteGraph { n, names: Some(names), adj: vec![Mult::ZERO; n * n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_names(&self) -> bool {
        self.names.is_some()
    }

    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => format!("v{v}"),
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.n).map(|v| self.name(v)).collect()
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        (0..self.n).find(|v| self.name(*v) == name)
    }

    pub fn mult(&self, s: usize, r: usize) -> Mult {
        self.adj[s * self.vertex_count() + r]
    }

    pub fn set_mult(&mut self, s: usize, r: usize, m: Mult) {
        let n = self.vertex_count();
        self.adj[s * n + r] = m;
    }

    /// Adds `m` edges `s → r`.
    pub fn add_edges(&mut self, s: usize, r: usize, m: Mult) {
        let cur = self.mult(s, r);
        self.set_mult(s, r, cur.add(m));
    }

    /// `|s⁻¹(v) ∩ r⁻¹(targets)|`.
    pub fn out_into(&self, v: usize, targets: VertexSet) -> Mult {
        members(targets).fold(Mult::ZERO, |acc, r| acc.add(self.mult(v, r)))
    }

    pub fn out_degree(&self, v: usize) -> Mult {
        self.out_into(v, full_set(self.vertex_count()))
    }

    pub fn in_from(&self, v: usize, sources: VertexSet) -> Mult {
        members(sources).fold(Mult::ZERO, |acc, s| acc.add(self.mult(s, v)))
    }

    pub fn edges(&self) -> Vec<(usize, usize, Mult)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for s in 0..n {
            for r in 0..n {
                let m = self.mult(s, r);
                if !m.is_zero() {
                    out.push((s, r, m));
                }
            }
        }
        out
    }

    pub fn classify(&self) -> DiscreteClasses {
        let mut c = DiscreteClasses { sinks: 0, infinite_emitters: 0, regular: 0, singular: 0 };
        for v in 0..self.vertex_count() {
            match self.out_degree(v) {
                Mult::Fin(0) => c.sinks |= 1 << v,
                Mult::Omega => c.infinite_emitters |= 1 << v,
                Mult::Fin(_) => c.regular |= 1 << v,
            }
        }
        c.singular = c.sinks | c.infinite_emitters;
        c
    }

    /// The subgraph on `h` with every edge between its vertices.
    pub fn induced(&self, h: VertexSet) -> DiscreteGraph {
        let idx: Vec<usize> = members(h).filter(|v| *v < self.vertex_count()).collect();
        let mut g = match &self.names {
            Some(names) => DiscreteGraph::with_names(idx.iter().map(|v| names[*v].clone()).collect()),
            None => DiscreteGraph::new(idx.len()),
        };
        for (i, s) in idx.iter().enumerate() {
            for (j, r) in idx.iter().enumerate() {
                g.set_mult(i, j, self.mult(*s, *r));
            }
        }
        g
    }

    /// Whether `h` spans a regular closed subgraph: every edge ending in `h` starts in `h`,
    /// and every regular vertex of `h` emits an edge into `h`.
    pub fn is_regular_subgraph(&self, h: VertexSet) -> bool {
        let n = self.vertex_count();
        let outside = full_set(n) & !h;
        let reg = self.classify().regular;
        members(h).all(|v| {
            self.in_from(v, outside).is_zero() && (reg >> v & 1 == 0 || !self.out_into(v, h).is_zero())
        })
    }
}

/// (F2) for a vertex map `h` on `domain ⊆ src`, where the edges of the domain are those between
/// its vertices: for `v` in the domain and every `y`, the domain edges into `v` from `h⁻¹(y)` number
/// `dst[y][h(v)]`.
fn f2_by_counting(src: &DiscreteGraph, domain: VertexSet, dst: &DiscreteGraph, h: &[usize]) -> bool {
    let mut fibres = vec![0u64; dst.vertex_count()];
    for u in members(domain) {
        fibres[h[u]] |= 1 << u;
    }
    members(domain).all(|v| fibres.iter().enumerate().all(|(y, fibre)| src.in_from(v, *fibre) == dst.mult(y, h[v])))
}

/// `B_H`: vertices outside `h` that emit infinitely many edges, finitely many but some of them leaving `h`.
pub fn breaking_vertices(g: &DiscreteGraph, h: VertexSet) -> VertexSet {
    let n = g.vertex_count();
    let outside = full_set(n) & !h;
    let mut b = 0;
    for v in members(outside) {
        if g.out_degree(v) != Mult::Omega {
            continue;
        }
        if let Mult::Fin(k) = g.out_into(v, outside) {
            if k > 0 {
                b |= 1 << v;
            }
        }
    }
    b
}

/// Gluing data: `F` attached to `E` along the subgraph of `F` spanned by `g0` (with every
/// edge ending in `g0`), via the vertex map `m0` defined on `g0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSpec {
    pub e: DiscreteGraph,
    pub f: DiscreteGraph,
    pub g0: VertexSet,
    /// `m0[u]` for `u ∈ g0`; ignored elsewhere.
    pub m0: Vec<usize>,
}

/// The glued graph with `E`'s vertices first, then those of `F ∖ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteGlued {
    pub graph: DiscreteGraph,
    pub p0: Vec<usize>,
    pub e_vertices: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteRegularity {
    pub g_in_f: bool,
    pub m_regular: bool,
    pub e_in_glued: bool,
    pub p_regular: bool,
}

impl DiscreteRegularity {
    pub fn all(&self) -> bool {
        self.g_in_f && self.m_regular && self.e_in_glued && self.p_regular
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub d2: bool,
    pub sing_reg: bool,
    pub agree: bool,
}

impl DiscreteSpec {
    pub fn new(e: DiscreteGraph, f: DiscreteGraph, g0: VertexSet, m0: Vec<usize>) -> Result<DiscreteSpec> {
        let spec = DiscreteSpec { e, f, g0, m0 };
        spec.validate()?;
        Ok(spec)
    }

    /// Standing hypotheses: `G` is a subgraph containing every edge of `F` that ends in it, and
    /// `m0` extends to a proper edge map satisfying (F1).
    pub fn validate(&self) -> Result<()> {
        let (e, f, g0, m0) = (&self.e, &self.f, self.g0, &self.m0);
        if g0 & !full_set(f.vertex_count()) != 0 {
            return Err(Error::Invalid("G⁰ is not a set of vertices of F".into()));
        }
        if m0.len() != f.vertex_count() {
            return Err(Error::Invalid("m0 must have one entry per vertex of F".into()));
        }
        if members(g0).any(|u| m0[u] >= e.vertex_count()) {
            return Err(Error::Invalid("m0 sends a vertex outside E".into()));
        }
        let outside = full_set(f.vertex_count()) & !g0;
        if members(g0).any(|v| !f.in_from(v, outside).is_zero()) {
            return Err(Error::Precondition("an edge of F ending in G starts outside G".into()));
        }
        for u in members(g0) {
            for v in members(g0) {
                let gm = f.mult(u, v);
                let em = e.mult(m0[u], m0[v]);
                if !gm.is_zero() && em.is_zero() {
                    return Err(Error::Precondition("m0 does not extend to edges (F1)".into()));
                }
                if gm == Mult::Omega && em != Mult::Omega {
                    return Err(Error::NotProper("infinitely many edges collapse onto finitely many".into()));
                }
            }
        }
        Ok(())
    }

    pub fn g(&self) -> DiscreteGraph {
        self.f.induced(self.g0)
    }

    /// `m0(G⁰)` as a subset of `E⁰`.
    pub fn image(&self) -> VertexSet {
        members(self.g0).fold(0, |acc, u| acc | 1 << self.m0[u])
    }

    pub fn glued(&self) -> DiscreteGlued {
        let (ne, nf) = (self.e.vertex_count(), self.f.vertex_count());
        let rest = full_set(nf) & !self.g0;
        let mut p0 = vec![0; nf];
        for u in members(self.g0) {
            p0[u] = self.m0[u];
        }
        for (k, v) in members(rest).enumerate() {
            p0[v] = ne + k;
        }
        let nu = ne + rest.count_ones() as usize;
        let mut u = if self.e.has_names() || self.f.has_names() {
            let mut names = self.e.names();
            for v in members(rest) {
                let mut name = self.f.name(v);
                while names.contains(&name) {
                    name.push('\'');
                }
                names.push(name);
            }
            DiscreteGraph::with_names(names)
        } else {
            DiscreteGraph::new(nu)
        };
        for s in 0..ne {
            for r in 0..ne {
                u.set_mult(s, r, self.e.mult(s, r));
            }
        }
        for s in 0..nf {
            for r in members(rest) {
                let m = self.f.mult(s, r);
                if !m.is_zero() {
                    u.add_edges(p0[s], p0[r], m);
                }
            }
        }
        DiscreteGlued { graph: u, p0, e_vertices: full_set(ne) }
    }

    /// (F2) for `m` counted per range vertex, and (F3).
    pub fn m_is_regular(&self) -> bool {
        if !f2_by_counting(&self.f, self.g0, &self.e, &self.m0) {
            return false;
        }
        let sing_e = self.e.classify().singular;
        members(self.g0).all(|u| {
            let emits = !self.f.out_into(u, self.g0).is_zero() && self.f.out_into(u, self.g0).is_finite();
            emits || sing_e >> self.m0[u] & 1 == 1
        })
    }

    pub fn regularity(&self) -> DiscreteRegularity {
        self.regularity_in(&self.glued())
    }

    fn regularity_in(&self, glued: &DiscreteGlued) -> DiscreteRegularity {
        let u = &glued.graph;
        let sing_f = self.f.classify().singular;
        let sing_u = u.classify().singular;
        let p_regular = members(sing_f).all(|v| sing_u >> glued.p0[v] & 1 == 1)
            && f2_by_counting(&self.f, full_set(self.f.vertex_count()), u, &glued.p0);
        DiscreteRegularity {
            g_in_f: self.f.is_regular_subgraph(self.g0),
            m_regular: self.m_is_regular(),
            e_in_glued: u.is_regular_subgraph(glued.e_vertices),
            p_regular,
        }
    }

    pub fn is_regular_adjunction(&self) -> bool {
        self.regularity().all()
    }

    /// `B_{F⁰∖G⁰}` in `F`.
    pub fn breaking_in_f(&self) -> VertexSet {
        breaking_vertices(&self.f, full_set(self.f.vertex_count()) & !self.g0)
    }

    /// (D1): `m0` is injective on `B_{F⁰∖G⁰}`.
    pub fn d1(&self) -> bool {
        let mut seen: VertexSet = 0;
        for v in members(self.breaking_in_f()) {
            let img = 1 << self.m0[v];
            if seen & img != 0 {
                return false;
            }
            seen |= img;
        }
        true
    }

    /// (D2): `p0(B_{F⁰∖G⁰}) ⊆ B_{U⁰∖E⁰}`.
    pub fn d2(&self) -> bool {
        self.d2_in(&self.glued())
    }

    fn d2_in(&self, glued: &DiscreteGlued) -> bool {
        let u = &glued.graph;
        let target = breaking_vertices(u, full_set(u.vertex_count()) & !glued.e_vertices);
        members(self.breaking_in_f()).all(|v| target >> glued.p0[v] & 1 == 1)
    }

    /// `E_sing ∩ m(G)_reg ⊆ p(F)_reg`, each class taken in the image subgraph itself.
    pub fn sing_reg_condition(&self) -> bool {
        self.sing_reg_in(&self.glued())
    }

    fn sing_reg_in(&self, glued: &DiscreteGlued) -> bool {
        let u = &glued.graph;
        let img = self.image();
        let pf = (0..self.f.vertex_count()).fold(0u64, |a, v| a | 1 << glued.p0[v]);
        let e_sing = self.e.classify().singular;
        // Under (F2) the edges of m(G) are all edges of E between image vertices, and those of
        // p(F) all edges of the glued graph between vertices of p(F).
        members(img & e_sing).all(|a| {
            let in_mg = self.e.out_into(a, img);
            let in_pf = u.out_into(a, pf);
            let regular = |m: Mult| m.is_finite() && !m.is_zero();
            !regular(in_mg) || regular(in_pf)
        })
    }

    pub fn check_equivalence(&self) -> EquivalenceReport {
        let glued = self.glued();
        let d2 = self.d2_in(&glued);
        let sing_reg = self.sing_reg_in(&glued);
        EquivalenceReport { d2, sing_reg, agree: d2 == sing_reg }
    }

    /// Regularity, (D1), (D2) and the equivalence in one pass.
    pub fn report(&self) -> DiscreteReport {
        let glued = self.glued();
        let regularity = self.regularity_in(&glued);
        let d2 = self.d2_in(&glued);
        let sing_reg = self.sing_reg_in(&glued);
        DiscreteReport {
            regularity,
            d1: self.d1(),
            equivalence: EquivalenceReport { d2, sing_reg, agree: d2 == sing_reg },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteReport {
    pub regularity: DiscreteRegularity,
    pub d1: bool,
    pub equivalence: EquivalenceReport,
}

/// Certificate for the breaking-vertex pullback theorem.
pub fn check_th24(spec: &DiscreteSpec, names: &GraphNames) -> Certificate {
    let reg = spec.regularity();
    let hypotheses = vec![
        Hypothesis {
            id: "regular-adjunction".into(),
            verdict: reg.all(),
            witness: (!reg.all()).then(|| format!("{reg:?}")),
        },
        Hypothesis { id: "D1".into(), verdict: spec.d1(), witness: None },
        Hypothesis { id: "D2".into(), verdict: spec.d2(), witness: None },
    ];
    let eq = spec.check_equivalence();
    let observations = vec![
        Hypothesis { id: "sing-reg-condition".into(), verdict: eq.sing_reg, witness: None },
        Hypothesis { id: "equivalence-agrees".into(), verdict: eq.agree, witness: None },
    ];
    let corners = Corners {
        union: format!("C*({}∪_m{})", names.e, names.f),
        e: format!("C*({})", names.e),
        f: format!("C*({})", names.f),
        intersection: format!("C*({})", names.g),
    };
    Certificate::assemble("th24-discrete", names.clone(), hypotheses, observations, corners, Vec::new())
}

/// The edge nodes of `to_topgraph(g)` in order, as `(source, range, copy)`.
pub fn edge_cells(g: &DiscreteGraph) -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for (s, r, m) in g.edges() {
        if let Mult::Fin(k) = m {
            out.extend((0..k).map(|i| (s, r, i)));
        }
    }
    out
}

/// The graph as a topological graph on finite discrete spaces; `ω` has no such model.
pub fn to_topgraph(g: &DiscreteGraph) -> Result<TopGraph> {
    let mut v = Complex::new();
    for n in g.names() {
        v.add_node(n);
    }
    let mut ed = Complex::new();
    let mut s_nodes = Vec::new();
    let mut r_nodes = Vec::new();
    for (s, r, m) in g.edges() {
        let Mult::Fin(k) = m else {
            return Err(Error::Precondition("ω edges have no finite topological model".into()));
        };
        for i in 0..k {
            ed.add_node(format!("{}->{}#{}", g.name(s), g.name(r), i + 1));
            s_nodes.push(Point::Node(s));
            r_nodes.push(Point::Node(r));
        }
    }
    let (v, ed) = (v.into_host(), ed.into_host());
    let s = CellMap::new(&ed, &v, s_nodes, vec![])?;
    let r = CellMap::new(&ed, &v, r_nodes, vec![])?;
    TopGraph::new(s, r, LhMode::Strict)
}

/// The vertex set of a topological graph over a discrete space, as a bitmask.
pub fn node_mask(set: &crate::plcore::SemiSet) -> VertexSet {
    (0..set.host().node_count().min(64)).filter(|n| set.has_node(*n)).fold(0, |a, n| a | 1 << n)
}

/// Relabels vertices by `perm` (new index of old vertex `i` is `perm[i]`).
pub fn relabel(g: &DiscreteGraph, perm: &[usize]) -> DiscreteGraph {
    let n = g.vertex_count();
    let mut h = if g.has_names() {
        let mut names = vec![String::new(); n];
        for (i, p) in perm.iter().enumerate() {
            names[*p] = g.name(i);
        }
        DiscreteGraph::with_names(names)
    } else {
        DiscreteGraph::new(n)
    };
    for (s, r, m) in g.edges() {
        h.set_mult(perm[s], perm[r], m);
    }
    h
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

const CHOICES: [Mult; 3] = [Mult::ZERO, Mult::ONE, Mult::Omega];

/// Largest graph size handled by the enumerators.
pub const ENUM_MAX: usize = 4;

/// The adjacency matrix under `perm` packed two bits per entry; finite multiplicities above
/// one share a code, which is harmless since enumerated graphs never carry them.
fn key(g: &DiscreteGraph, perm: &[usize]) -> u64 {
    let n = g.vertex_count();
    let mut k = 0u64;
    for s in 0..n {
        for r in 0..n {
            let c = match g.mult(s, r) {
                Mult::Fin(0) => 0,
                Mult::Fin(_) => 1,
                Mult::Omega => 2,
            };
            k |= c << (2 * (perm[s] * n + perm[r]));
        }
    }
    k
}

fn is_canonical(g: &DiscreteGraph, perms: &[Vec<usize>]) -> bool {
    let own = key(g, &perms[0]);
    perms[1..].iter().all(|p| key(g, p) >= own)
}

/// Visits every assignment of `{0, 1, ω}` to the given cells of `g`, restoring them afterwards.
fn for_each_fill(g: &mut DiscreteGraph, cells: &[(usize, usize)], visit: &mut dyn FnMut(&DiscreteGraph)) {
    let total = 3usize.pow(cells.len() as u32);
    for idx in 0..total {
        let mut x = idx;
        for (s, r) in cells {
            g.set_mult(*s, *r, CHOICES[x % 3]);
            x /= 3;
        }
        visit(g);
    }
    for (s, r) in cells {
        g.set_mult(*s, *r, Mult::ZERO);
    }
}

/// All graphs on `n` vertices with multiplicities in `{0, 1, ω}`, one per relabeling class.
pub fn graphs_up_to_relabeling(n: usize) -> Vec<DiscreteGraph> {
    assert!(n <= ENUM_MAX);
    let perms = permutations(n);
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |r| (s, r))).collect();
    let mut out = Vec::new();
    for_each_fill(&mut DiscreteGraph::new(n), &cells, &mut |g| {
        if is_canonical(g, &perms) {
            out.push(g.clone());
        }
    });
    out
}

/// Every graph on at most `max` vertices with multiplicities in `{0, 1}`.
pub fn for_each_simple_graph(max: usize, mut visit: impl FnMut(&DiscreteGraph)) {
    assert!(max <= ENUM_MAX);
    for n in 0..=max {
        let cells = n * n;
        for bits in 0..1u64 << cells {
            let mut g = DiscreteGraph::new(n);
            for c in 0..cells {
                if bits >> c & 1 == 1 {
                    g.adj[c] = Mult::ONE;
                }
            }
            visit(&g);
        }
    }
}

/// Enumerates gluing specs with at most `max` vertices per graph and multiplicities in
/// `{0, 1, ω}` per ordered pair, up to relabeling of `F` and of `E`.
///
/// `F` runs over relabeling classes; `G⁰` over subsets of `F⁰` such that every edge ending in
/// `G⁰` starts there; `m0` over maps numbering its image first. Edges of `E` ending in the
/// image are forced by (F2), and the remaining ones run freely up to relabeling of the vertices
/// outside the image. Specs whose forced multiplicities leave `{0, 1, ω}` would violate (F2)
/// for every choice of `E` in the universe and are skipped, as are specs failing the standing
/// hypotheses. Returns the number of specs visited.
pub fn for_each_spec(max: usize, mut visit: impl FnMut(&DiscreteSpec)) -> usize {
    assert!(max <= ENUM_MAX);
    let mut count = 0;
    for nf in 0..=max {
        for f in graphs_up_to_relabeling(nf) {
            for g0 in 0..(1u64 << nf) {
                let outside = full_set(nf) & !g0;
                if members(g0).any(|v| !f.in_from(v, outside).is_zero()) {
                    continue;
                }
                let gv: Vec<usize> = members(g0).collect();
                for_each_rgs(gv.len(), max, &mut |rgs, k| {
                    let lowest = if gv.is_empty() { 0 } else { k };
                    for ne in lowest..=max {
                        count += enumerate_e(&f, g0, &gv, rgs, k, ne, &mut visit);
                    }
                });
            }
        }
    }
    count
}

/// Restricted-growth strings of length `len` with values below `max`; `k` is the number of blocks.
fn for_each_rgs(len: usize, max: usize, visit: &mut dyn FnMut(&[usize], usize)) {
    fn rec(cur: &mut Vec<usize>, len: usize, max: usize, k: usize, visit: &mut dyn FnMut(&[usize], usize)) {
        if cur.len() == len {
            visit(cur, k);
            return;
        }
        for x in 0..=k.min(max.saturating_sub(1)) {
            cur.push(x);
            rec(cur, len, max, k.max(x + 1), visit);
            cur.pop();
        }
    }
    if len > 0 && max == 0 {
        return;
    }
    rec(&mut Vec::new(), len, max, 0, visit);
}

fn enumerate_e(
    f: &DiscreteGraph,
    g0: VertexSet,
    gv: &[usize],
    rgs: &[usize],
    k: usize,
    ne: usize,
    visit: &mut impl FnMut(&DiscreteSpec),
) -> usize {
    let nf = f.vertex_count();
    let mut m0 = vec![0; nf];
    for (i, u) in gv.iter().enumerate() {
        m0[*u] = rgs[i];
    }
    let mut fibres = vec![0u64; ne];
    for (i, u) in gv.iter().enumerate() {
        fibres[rgs[i]] |= 1 << u;
    }
    let mut e = DiscreteGraph::new(ne);
    let mut forced_set = vec![false; ne * ne];
    for v in gv {
        let target = m0[*v];
        for (y, fibre) in fibres.iter().enumerate() {
            let forced = f.in_from(*v, *fibre);
            if !CHOICES.contains(&forced) {
                return 0;
            }
            if forced_set[y * ne + target] && e.mult(y, target) != forced {
                return 0;
            }
            forced_set[y * ne + target] = true;
            e.set_mult(y, target, forced);
        }
    }
    let free: Vec<(usize, usize)> = (0..ne).flat_map(|s| (k..ne).map(move |r| (s, r))).collect();
    let perms: Vec<Vec<usize>> = permutations(ne - k)
        .into_iter()
        .map(|p| (0..k).chain(p.into_iter().map(|x| x + k)).collect())
        .collect();
    let mut spec = DiscreteSpec { e, f: f.clone(), g0, m0 };
    let mut count = 0;
    let total = 3usize.pow(free.len() as u32);
    for idx in 0..total {
        let mut x = idx;
        for (s, r) in &free {
            spec.e.set_mult(*s, *r, CHOICES[x % 3]);
            x /= 3;
        }
        if perms.len() > 1 && !is_canonical(&spec.e, &perms) {
            continue;
        }
        if spec.validate().is_ok() {
            count += 1;
            visit(&spec);
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, Mult)]) -> DiscreteGraph {
        let mut g = DiscreteGraph::new(n);
        for (s, r, m) in edges {
            g.add_edges(*s, *r, *m);
        }
        g
    }

    #[test]
    fn classification() {
        let g = graph(3, &[(0, 1, Mult::Omega), (1, 2, Mult::ONE)]);
        let c = g.classify();
        assert_eq!(c.infinite_emitters, 0b001);
        assert_eq!(c.regular, 0b010);
        assert_eq!(c.sinks, 0b100);
        assert_eq!(c.singular, 0b101);
    }

    #[test]
    fn breaking_vertex_example() {
        let g = graph(3, &[(0, 1, Mult::Omega), (0, 2, Mult::ONE)]);
        assert_eq!(breaking_vertices(&g, 0b010), 0b001);
        assert_eq!(breaking_vertices(&g, 0b111), 0);
        let h = graph(2, &[(0, 1, Mult::Fin(3))]);
        assert_eq!(breaking_vertices(&h, 0b10), 0);
    }

    #[test]
    fn to_topgraph_rejects_omega() {
        assert!(to_topgraph(&graph(1, &[(0, 0, Mult::Omega)])).is_err());
        let loop1 = to_topgraph(&graph(1, &[(0, 0, Mult::ONE)])).unwrap();
        assert_eq!(node_mask(&loop1.classify().reg), 1);
    }

    #[test]
    fn graph_classes_are_counted_correctly() {
        assert_eq!(graphs_up_to_relabeling(0).len(), 1);
        assert_eq!(graphs_up_to_relabeling(1).len(), 3);
        // 81 labeled graphs on two vertices; 9 are symmetric under the swap.
        assert_eq!(graphs_up_to_relabeling(2).len(), (81 + 9) / 2);
        assert_eq!(graphs_up_to_relabeling(3).len(), 3411);
    }

    #[test]
    fn gluing_along_a_loop() {
        let e = graph(1, &[(0, 0, Mult::ONE)]);
        let f = graph(2, &[(0, 0, Mult::ONE), (0, 1, Mult::ONE)]);
        assert!(DiscreteSpec::new(e.clone(), graph(2, &[(1, 0, Mult::ONE)]), 0b01, vec![0, 0]).is_err());
        let spec = DiscreteSpec::new(e, f, 0b01, vec![0, 0]).unwrap();
        let glued = spec.glued();
        assert_eq!(glued.graph.vertex_count(), 2);
        assert_eq!(glued.graph.mult(0, 1), Mult::ONE);
        assert_eq!(glued.graph.mult(0, 0), Mult::ONE);
        assert!(spec.is_regular_adjunction());
        assert!(spec.check_equivalence().agree);
    }
}
