use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, one, zero, Q};

/// Shared handle to an immutable complex.
pub type Host = Arc<Complex>;

pub type NodeId = usize;
pub type ArcId = usize;

/// How an arc end is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Attach {
    Closed(NodeId),
    Open,
}

impl Attach {
    pub fn node(self) -> Option<NodeId> {
        match self {
            Attach::Closed(n) => Some(n),
            Attach::Open => None,
        }
    }

    pub fn is_open(self) -> bool {
        matches!(self, Attach::Open)
    }
}

/// Which end of an arc: parameter 0 or parameter 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Start,
    End,
}

impl Side {
    pub fn param(self) -> Q {
        match self {
            Side::Start => zero(),
            Side::End => one(),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Start => 0,
            Side::End => 1,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Start => Side::End,
            Side::End => Side::Start,
        }
    }

    pub const BOTH: [Side; 2] = [Side::Start, Side::End];
}

/// Affine chart from the parameter interval `[0,1]` to user values `[lo,hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    pub lo: Q,
    pub hi: Q,
}

impl Default for Chart {
    fn default() -> Self {
        Chart { lo: zero(), hi: one() }
    }
}

impl Chart {
    pub fn new(lo: Q, hi: Q) -> Self {
        Chart { lo, hi }
    }

    pub fn to_value(&self, t: &Q) -> Q {
        &self.lo + (&self.hi - &self.lo) * t
    }

    pub fn to_param(&self, v: &Q) -> Q {
        (v - &self.lo) / (&self.hi - &self.lo)
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    /// Chart of the sub-arc `[a,b]` of the parameter interval.
    pub fn restrict(&self, a: &Q, b: &Q) -> Chart {
        Chart { lo: self.to_value(a), hi: self.to_value(b) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcCell {
    pub name: String,
    pub ends: [Attach; 2],
    pub chart: Chart,
}

impl ArcCell {
    pub fn end(&self, side: Side) -> Attach {
        self.ends[side.index()]
    }

    pub fn is_loop(&self) -> bool {
        matches!(self.ends, [Attach::Closed(a), Attach::Closed(b)] if a == b)
    }
}

/// A finite one-dimensional cell complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    nodes: Vec<String>,
    arcs: Vec<ArcCell>,
}

/// A direction leaving a point: along `arc`, from parameter `base`, increasing or decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub arc: ArcId,
    pub base: Q,
    pub increasing: bool,
}

impl Complex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn empty() -> Host {
        Arc::new(Self::default())
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> NodeId {
        self.nodes.push(name.into());
        self.nodes.len() - 1
    }

    pub fn add_arc(&mut self, name: impl Into<String>, start: Attach, end: Attach) -> ArcId {
        self.add_arc_with_chart(name, start, end, Chart::default())
    }

    pub fn add_arc_with_chart(
        &mut self,
        name: impl Into<String>,
        start: Attach,
        end: Attach,
        chart: Chart,
    ) -> ArcId {
        self.arcs.push(ArcCell { name: name.into(), ends: [start, end], chart });
        self.arcs.len() - 1
    }

    pub fn into_host(self) -> Host {
        Arc::new(self)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.arcs.is_empty()
    }

    pub fn node_name(&self, n: NodeId) -> &str {
        &self.nodes[n]
    }

    pub fn node_names(&self) -> &[String] {
        &self.nodes
    }

    pub fn arc(&self, a: ArcId) -> &ArcCell {
        &self.arcs[a]
    }

    pub fn arcs(&self) -> &[ArcCell] {
        &self.arcs
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn arc_by_name(&self, name: &str) -> Option<ArcId> {
        self.arcs.iter().position(|a| a.name == name)
    }

    pub fn set_chart(&mut self, a: ArcId, chart: Chart) {
        self.arcs[a].chart = chart;
    }

    /// Arc ends attached to node `n`, as outgoing directions.
    pub fn node_star(&self, n: NodeId) -> Vec<Direction> {
        let mut star = Vec::new();
        for (i, arc) in self.arcs.iter().enumerate() {
            for side in Side::BOTH {
                if arc.end(side) == Attach::Closed(n) {
                    star.push(Direction {
                        arc: i,
                        base: side.param(),
                        increasing: side == Side::Start,
                    });
                }
            }
        }
        star
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.node_star(n).len()
    }

    pub fn open_ends(&self) -> Vec<(ArcId, Side)> {
        let mut ends = Vec::new();
        for (i, arc) in self.arcs.iter().enumerate() {
            for side in Side::BOTH {
                if arc.end(side).is_open() {
                    ends.push((i, side));
                }
            }
        }
        ends
    }

    /// True when no arc has an Open end.
    pub fn is_compact(&self) -> bool {
        self.open_ends().is_empty()
    }

    /// Lists every violated structural invariant; empty iff valid.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let mut seen = HashSet::new();
        for name in &self.nodes {
            if !seen.insert(name.as_str()) {
                report.push(format!("duplicate node id {name}"));
            }
        }
        let mut seen_arcs = HashSet::new();
        for arc in &self.arcs {
            if !seen_arcs.insert(arc.name.as_str()) {
                report.push(format!("duplicate arc id {}", arc.name));
            }
            if seen.contains(arc.name.as_str()) {
                report.push(format!("arc id {} collides with a node id", arc.name));
            }
            for side in Side::BOTH {
                if let Attach::Closed(n) = arc.end(side) {
                    if n >= self.nodes.len() {
                        report.push(format!("dangling attachment on arc {}", arc.name));
                    }
                }
            }
            if arc.chart.lo == arc.chart.hi {
                report.push(format!("degenerate chart on arc {}", arc.name));
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Disjoint union; cells of `other` follow those of `self`. Returns the offsets of `other`.
    pub fn disjoint_union(&self, other: &Complex) -> (Complex, usize, usize) {
        let mut out = self.clone();
        let node_offset = out.nodes.len();
        let arc_offset = out.arcs.len();
        out.nodes.extend(other.nodes.iter().cloned());
        for arc in &other.arcs {
            let shift = |a: Attach| match a {
                Attach::Closed(n) => Attach::Closed(n + node_offset),
                Attach::Open => Attach::Open,
            };
            out.arcs.push(ArcCell {
                name: arc.name.clone(),
                ends: [shift(arc.ends[0]), shift(arc.ends[1])],
                chart: arc.chart.clone(),
            });
        }
        out.make_names_unique();
        (out, node_offset, arc_offset)
    }

    /// Renames clashing cells by appending primes; earlier cells keep their names.
    pub fn make_names_unique(&mut self) {
        let mut seen: HashSet<String> = HashSet::new();
        for name in self.nodes.iter_mut().chain(self.arcs.iter_mut().map(|a| &mut a.name)) {
            while seen.contains(name.as_str()) {
                name.push('\'');
            }
            seen.insert(name.clone());
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.nodes {
            writeln!(f, "node {n}")?;
        }
        for arc in &self.arcs {
            let end = |a: Attach| match a {
                Attach::Closed(n) => self.nodes[n].clone(),
                Attach::Open => "open".to_string(),
            };
            writeln!(
                f,
                "arc {} = {} -- {} chart {} {}",
                arc.name,
                end(arc.ends[0]),
                end(arc.ends[1]),
                fmt_q(&arc.chart.lo),
                fmt_q(&arc.chart.hi)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_is_valid() {
        let mut c = Complex::new();
        let p = c.add_node("p");
        c.add_arc("A", Attach::Closed(p), Attach::Closed(p));
        assert!(c.is_valid());
        assert!(c.arc(0).is_loop());
        assert_eq!(c.degree(p), 2);
    }

    #[test]
    fn dangling_attachment_reported() {
        let mut c = Complex::new();
        c.add_arc("A", Attach::Closed(3), Attach::Open);
        let report = c.validate();
        assert_eq!(report.len(), 1);
        assert!(report[0].contains("dangling attachment"));
    }

    #[test]
    fn open_arc_with_isolated_node_is_valid() {
        let mut c = Complex::new();
        c.add_node("q");
        c.add_arc("B", Attach::Open, Attach::Open);
        assert!(c.is_valid());
        assert!(!c.is_compact());
        assert_eq!(c.open_ends().len(), 2);
    }

    #[test]
    fn duplicate_names_reported() {
        let mut c = Complex::new();
        c.add_node("a");
        c.add_node("a");
        assert!(!c.is_valid());
        c.make_names_unique();
        assert!(c.is_valid());
    }
}
