//! The line-oriented text format for spaces, maps, graphs and gluing data.
//!
//! Sections open with a bracketed header and run until the next header.
//! Every name must be declared before it is referenced, so printing a
//! workspace in declaration order always yields a parseable file.

mod lex;
mod parse;
mod print;

use std::fmt;

use indexmap::IndexMap;
use pltg::Q;

pub use parse::parse;
pub use print::{print, quote};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

/// Named declarations in file order; names are unique across all kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    pub items: IndexMap<String, Item>,
}

impl Workspace {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Appends the items of `other`; fails on the first clashing name.
    pub fn merge(&mut self, other: Workspace) -> Result<(), String> {
        for (name, item) in other.items {
            if self.items.contains_key(&name) {
                return Err(format!("duplicate name {name}"));
            }
            self.items.insert(name, item);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Space(SpaceDecl),
    Map(MapDecl),
    Graph(GraphDecl),
    Subgraph(SubgraphDecl),
    Factor(FactorDecl),
    Glue(GlueDecl),
    Discrete(DiscreteDecl),
    DiscreteGlue(DiscreteGlueDecl),
}

impl Item {
    pub fn kind(&self) -> Kind {
        match self {
            Item::Space(_) => Kind::Space,
            Item::Map(_) => Kind::Map,
            Item::Graph(_) => Kind::Graph,
            Item::Subgraph(_) => Kind::Subgraph,
            Item::Factor(_) => Kind::Factor,
            Item::Glue(_) => Kind::Glue,
            Item::Discrete(_) => Kind::Discrete,
            Item::DiscreteGlue(_) => Kind::DiscreteGlue,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Space,
    Map,
    Graph,
    Subgraph,
    Factor,
    Glue,
    Discrete,
    DiscreteGlue,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Space => "space",
            Kind::Map => "map",
            Kind::Graph => "graph",
            Kind::Subgraph => "subgraph",
            Kind::Factor => "factor",
            Kind::Glue => "glue",
            Kind::Discrete => "discrete",
            Kind::DiscreteGlue => "discrete-glue",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndDecl {
    Node(String),
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDecl {
    pub name: String,
    pub ends: [EndDecl; 2],
    pub chart: Option<(Q, Q)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpaceDecl {
    pub nodes: Vec<String>,
    pub arcs: Vec<ArcDecl>,
}

/// A point given by a node name or by an arc and a chart value strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointDecl {
    Node(String),
    Interior(String, Q),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionDecl {
    /// `x ↦ a*x + b` in chart values.
    Affine { arc: String, a: Q, b: Q },
    Const(PointDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceDecl {
    pub arc: String,
    /// Chart values; absent for a single piece covering the arc.
    pub range: Option<(Q, Q)>,
    pub action: ActionDecl,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub src: String,
    pub dst: String,
    pub nodes: Vec<(String, PointDecl)>,
    pub pieces: Vec<PieceDecl>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Image,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantumKind {
    Ball,
    Sphere,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphBody {
    Explicit { vertices: String, edges: String, s: String, r: String },
    Suspend { of: String, times: usize },
    Discrete { of: String },
    Quantum { kind: QuantumKind, dim: usize },
    Glued { of: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDecl {
    pub body: GraphBody,
    pub mode: Option<Mode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetItem {
    Node(String),
    Interior(String, Q),
    /// The open arc.
    Arc(String),
    /// A closed segment in chart values.
    Segment(String, Q, Q),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgraphBody {
    Embedded { graph: String, e0: String, e1: String },
    Sets { vertices: Vec<SetItem>, edges: Option<Vec<SetItem>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphDecl {
    pub of: String,
    pub body: SubgraphBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorDecl {
    Maps { src: String, dst: String, m0: String, m1: String },
    Inclusion { of: String },
    Suspend { of: String, times: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttachDecl {
    Factor(String),
    Maps { m0: String, m1: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamesDecl {
    pub e: String,
    pub f: String,
    pub g: String,
    pub union: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornersDecl {
    pub union: String,
    pub e: String,
    pub f: String,
    pub intersection: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueDecl {
    pub e: String,
    pub f: Option<String>,
    pub g: String,
    pub m: AttachDecl,
    pub suspend: usize,
    pub names: Option<NamesDecl>,
    pub corners: Option<CornersDecl>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultDecl {
    Fin(u64),
    Omega,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscreteDecl {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, MultDecl)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteGlueDecl {
    pub e: String,
    pub f: String,
    pub g: Vec<String>,
    pub m0: Vec<(String, String)>,
    pub names: Option<NamesDecl>,
}
