use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::plcore::complex::{ArcId, Attach, Host, NodeId, Side};
use crate::plcore::interval::{Interval, IntervalSet};
use crate::rational::{fmt_q, is_between_open, one, zero, Q};

/// A point of a complex; points on Closed ends are always in `Node` form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Node(NodeId),
    Interior(ArcId, Q),
}

/// An Open arc end, i.e. a missing limit point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub arc: ArcId,
    pub side: Side,
}

/// Where a parameter of an arc lands: an actual point or an Open end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Loc {
    At(Point),
    Missing(End),
}

impl Loc {
    pub fn point(&self) -> Option<&Point> {
        match self {
            Loc::At(p) => Some(p),
            Loc::Missing(_) => None,
        }
    }
}

/// The location of parameter `t ∈ [0,1]` on `arc`.
pub fn locate(host: &Host, arc: ArcId, t: &Q) -> Loc {
    if is_between_open(t) {
        return Loc::At(Point::Interior(arc, t.clone()));
    }
    let side = if t == &zero() {
        Side::Start
    } else {
        debug_assert!(t == &one(), "parameter outside [0,1]");
        Side::End
    };
    match host.arc(arc).end(side) {
        Attach::Closed(n) => Loc::At(Point::Node(n)),
        Attach::Open => Loc::Missing(End { arc, side }),
    }
}

pub fn same_host(a: &Host, b: &Host) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A semilinear subset of a complex in canonical form.
#[derive(Clone, Debug)]
pub struct SemiSet {
    host: Host,
    nodes: Vec<bool>,
    arcs: Vec<IntervalSet>,
}

impl PartialEq for SemiSet {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.arcs == other.arcs && same_host(&self.host, &other.host)
    }
}

impl Eq for SemiSet {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
    Complement,
}

impl SemiSet {
    pub fn empty(host: &Host) -> Self {
        SemiSet {
            host: host.clone(),
            nodes: vec![false; host.node_count()],
            arcs: vec![IntervalSet::empty(); host.arc_count()],
        }
    }

    pub fn whole(host: &Host) -> Self {
        SemiSet {
            host: host.clone(),
            nodes: vec![true; host.node_count()],
            arcs: vec![IntervalSet::full(); host.arc_count()],
        }
    }

    pub fn from_parts(host: &Host, nodes: Vec<bool>, arcs: Vec<IntervalSet>) -> Self {
        assert_eq!(nodes.len(), host.node_count());
        assert_eq!(arcs.len(), host.arc_count());
        SemiSet { host: host.clone(), nodes, arcs }
    }

    pub fn from_points<'a>(host: &Host, pts: impl IntoIterator<Item = &'a Point>) -> Self {
        let mut s = Self::empty(host);
        for p in pts {
            s.insert_point(p);
        }
        s
    }

    pub fn insert_point(&mut self, p: &Point) {
        match p {
            Point::Node(n) => self.nodes[*n] = true,
            Point::Interior(a, t) => {
                self.arcs[*a] = self.arcs[*a].union(&IntervalSet::point(t.clone()));
            }
        }
    }

    /// Adds the parameter interval `iv` of `arc`, including endpoint nodes when the
    /// interval is closed at 0 or 1 and that end is attached.
    pub fn insert_interval(&mut self, arc: ArcId, iv: &Interval) {
        self.arcs[arc] = self.arcs[arc].union(&IntervalSet::from_interval(iv));
        for (t, closed) in [(&iv.lo, iv.lo_closed), (&iv.hi, iv.hi_closed)] {
            if closed && !is_between_open(t) && (t == &zero() || t == &one()) {
                if let Loc::At(Point::Node(n)) = locate(&self.host, arc, t) {
                    self.nodes[n] = true;
                }
            }
        }
    }

    pub fn host(&self) -> &Host {
        &self.host
    }

    pub fn node_flags(&self) -> &[bool] {
        &self.nodes
    }

    pub fn has_node(&self, n: NodeId) -> bool {
        self.nodes[n]
    }

    pub fn arc_set(&self, a: ArcId) -> &IntervalSet {
        &self.arcs[a]
    }

    pub fn arc_sets(&self) -> &[IntervalSet] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        !self.nodes.iter().any(|b| *b) && self.arcs.iter().all(|a| a.is_empty())
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Node(n) => self.nodes[*n],
            Point::Interior(a, t) => self.arcs[*a].contains(t),
        }
    }

    fn check_host(&self, other: &SemiSet) -> Result<()> {
        if same_host(&self.host, &other.host) {
            Ok(())
        } else {
            Err(Error::HostMismatch("set operands live on different complexes".into()))
        }
    }

    fn zip(&self, other: &SemiSet, op: impl Fn(bool, bool) -> bool + Copy) -> SemiSet {
        SemiSet {
            host: self.host.clone(),
            nodes: self.nodes.iter().zip(&other.nodes).map(|(a, b)| op(*a, *b)).collect(),
            arcs: self.arcs.iter().zip(&other.arcs).map(|(a, b)| a.combine(b, op)).collect(),
        }
    }

    pub fn try_union(&self, other: &SemiSet) -> Result<SemiSet> {
        self.check_host(other)?;
        Ok(self.zip(other, |a, b| a || b))
    }

    pub fn try_intersection(&self, other: &SemiSet) -> Result<SemiSet> {
        self.check_host(other)?;
        Ok(self.zip(other, |a, b| a && b))
    }

    pub fn try_difference(&self, other: &SemiSet) -> Result<SemiSet> {
        self.check_host(other)?;
        Ok(self.zip(other, |a, b| a && !b))
    }

    /// Panicking variants for operands known to share a host.
    pub fn union(&self, other: &SemiSet) -> SemiSet {
        self.try_union(other).expect("host mismatch")
    }

    pub fn intersection(&self, other: &SemiSet) -> SemiSet {
        self.try_intersection(other).expect("host mismatch")
    }

    pub fn difference(&self, other: &SemiSet) -> SemiSet {
        self.try_difference(other).expect("host mismatch")
    }

    pub fn complement(&self) -> SemiSet {
        SemiSet {
            host: self.host.clone(),
            nodes: self.nodes.iter().map(|b| !b).collect(),
            arcs: self.arcs.iter().map(|a| a.complement()).collect(),
        }
    }

    pub fn apply(&self, op: SetOp, other: Option<&SemiSet>) -> Result<SemiSet> {
        match (op, other) {
            (SetOp::Complement, _) => Ok(self.complement()),
            (SetOp::Union, Some(b)) => self.try_union(b),
            (SetOp::Intersection, Some(b)) => self.try_intersection(b),
            (SetOp::Difference, Some(b)) => self.try_difference(b),
            (_, None) => Err(Error::Invalid("binary set operation needs two operands".into())),
        }
    }

    pub fn is_subset(&self, other: &SemiSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Topological closure in the host complex.
    pub fn closure(&self) -> SemiSet {
        let mut nodes = self.nodes.clone();
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (i, set) in self.arcs.iter().enumerate() {
            let arc = self.host.arc(i);
            if set.touches_start() {
                if let Attach::Closed(n) = arc.end(Side::Start) {
                    nodes[n] = true;
                }
            }
            if set.touches_end() {
                if let Attach::Closed(n) = arc.end(Side::End) {
                    nodes[n] = true;
                }
            }
            arcs.push(set.closure());
        }
        SemiSet { host: self.host.clone(), nodes, arcs }
    }

    pub fn interior(&self) -> SemiSet {
        self.complement().closure().complement()
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_open(&self) -> bool {
        self.interior() == *self
    }

    /// Closed and bounded away from every Open end.
    pub fn is_compact(&self) -> bool {
        if !self.is_closed() {
            return false;
        }
        self.host.open_ends().into_iter().all(|(a, side)| match side {
            Side::Start => !self.arcs[a].touches_start(),
            Side::End => !self.arcs[a].touches_end(),
        })
    }

    /// `a ⊆ int(cl(a))`.
    pub fn is_preopen(&self) -> bool {
        self.is_subset(&self.closure().interior())
    }

    /// `cl(a) ∖ a`.
    pub fn boundary_points(&self) -> SemiSet {
        self.closure().difference(self)
    }

    /// The finitely many points of a set with no interval components, or `None`.
    pub fn as_points(&self) -> Option<Vec<Point>> {
        let mut pts: Vec<Point> =
            (0..self.nodes.len()).filter(|n| self.nodes[*n]).map(Point::Node).collect();
        for (a, set) in self.arcs.iter().enumerate() {
            for iv in set.intervals() {
                if iv.lo != iv.hi {
                    return None;
                }
                pts.push(Point::Interior(a, iv.lo));
            }
        }
        Some(pts)
    }

    /// Cut parameters of each arc, as interior points.
    pub fn cut_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for (a, set) in self.arcs.iter().enumerate() {
            for c in set.cuts() {
                out.push(Point::Interior(a, c.clone()));
            }
        }
        out
    }

    /// Re-host onto an equal complex (used after structural rebuilds).
    pub fn rehost(&self, host: &Host) -> SemiSet {
        assert!(same_host(&self.host, host));
        SemiSet { host: host.clone(), nodes: self.nodes.clone(), arcs: self.arcs.clone() }
    }

    /// Readable rendering in chart values, e.g. `{0} ∪ A[1/2,2]`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let nodes: Vec<&str> = (0..self.nodes.len())
            .filter(|n| self.nodes[*n])
            .map(|n| self.host.node_name(n))
            .collect();
        if !nodes.is_empty() {
            parts.push(format!("{{{}}}", nodes.join(",")));
        }
        for (a, set) in self.arcs.iter().enumerate() {
            let arc = self.host.arc(a);
            for iv in set.intervals() {
                let (mut lo, mut hi) = (arc.chart.to_value(&iv.lo), arc.chart.to_value(&iv.hi));
                let (mut lc, mut hc) = (iv.lo_closed, iv.hi_closed);
                if lo > hi {
                    std::mem::swap(&mut lo, &mut hi);
                    std::mem::swap(&mut lc, &mut hc);
                }
                if lo == hi {
                    parts.push(format!("{}{{{}}}", arc.name, fmt_q(&lo)));
                } else {
                    parts.push(format!(
                        "{}{}{},{}{}",
                        arc.name,
                        if lc { '[' } else { '(' },
                        fmt_q(&lo),
                        fmt_q(&hi),
                        if hc { ']' } else { ')' }
                    ));
                }
            }
        }
        if parts.is_empty() {
            "∅".to_string()
        } else {
            parts.join(" ∪ ")
        }
    }

    /// One sample point per canonical stratum, plus every node.
    pub fn stratum_samples(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = (0..self.nodes.len()).map(Point::Node).collect();
        for (a, set) in self.arcs.iter().enumerate() {
            for t in set.witness_points() {
                pts.push(Point::Interior(a, t));
            }
        }
        pts
    }

    /// Some point of the set, if it is nonempty.
    pub fn sample_point(&self) -> Option<Point> {
        self.stratum_samples().into_iter().find(|p| self.contains(p))
    }
}

impl fmt::Display for SemiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

pub fn point_name(host: &Host, p: &Point) -> String {
    match p {
        Point::Node(n) => host.node_name(*n).to_string(),
        Point::Interior(a, t) => {
            let arc = host.arc(*a);
            format!("{}@{}", arc.name, fmt_q(&arc.chart.to_value(t)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::complex::{Chart, Complex};
    use crate::rational::{int, q};

    /// `[0,2]` as one arc with chart values.
    fn segment() -> Host {
        let mut c = Complex::new();
        let a = c.add_node("a");
        let b = c.add_node("b");
        c.add_arc_with_chart("A", Attach::Closed(a), Attach::Closed(b), Chart::new(int(0), int(2)));
        c.into_host()
    }

    fn val(host: &Host, lo: Q, hi: Q, lc: bool, hc: bool) -> SemiSet {
        let chart = &host.arc(0).chart;
        let mut s = SemiSet::empty(host);
        s.insert_interval(
            0,
            &Interval { lo: chart.to_param(&lo), hi: chart.to_param(&hi), lo_closed: lc, hi_closed: hc },
        );
        s
    }

    #[test]
    fn closure_of_sink_set() {
        let h = segment();
        let sink = val(&h, q(1, 2), int(1), false, false).union(&val(&h, int(1), int(2), false, true));
        assert_eq!(sink.closure(), val(&h, q(1, 2), int(2), true, true));
    }

    #[test]
    fn closure_of_source_image_and_preopen() {
        let h = segment();
        let s_img = val(&h, int(0), q(1, 2), false, false).union(&val(&h, int(1), int(1), true, true));
        let expected = val(&h, int(0), q(1, 2), true, true).union(&val(&h, int(1), int(1), true, true));
        assert_eq!(s_img.closure(), expected);
        assert!(!s_img.is_preopen());
        assert!(!val(&h, int(0), int(1), true, true).is_preopen());
        assert!(val(&h, int(0), int(1), false, false).is_preopen());
    }

    #[test]
    fn intersection_in_value_coordinates() {
        let h = segment();
        let sink = val(&h, q(1, 2), int(1), false, false).union(&val(&h, int(1), int(2), false, true));
        let unit = val(&h, int(0), int(1), true, true);
        assert_eq!(sink.intersection(&unit), val(&h, q(1, 2), int(1), false, false));
    }

    #[test]
    fn compactness_near_open_end() {
        let mut c = Complex::new();
        let p = c.add_node("p");
        c.add_arc("A", Attach::Open, Attach::Closed(p));
        let h = c.into_host();
        let mut s = SemiSet::empty(&h);
        s.insert_interval(0, &Interval { lo: zero(), hi: q(1, 2), lo_closed: false, hi_closed: true });
        assert!(s.is_closed());
        assert!(!s.is_compact());
        assert!(SemiSet::whole(&h).is_closed());
        assert!(!SemiSet::whole(&h).is_compact());
        let mut k = SemiSet::empty(&h);
        k.insert_interval(0, &Interval::closed(q(1, 2), one()));
        assert!(k.is_compact());
    }

    #[test]
    fn boolean_identities() {
        let h = segment();
        let a = val(&h, q(1, 3), int(1), true, false);
        assert_eq!(a.union(&a.complement()), SemiSet::whole(&h));
        assert!(SemiSet::empty(&h).closure().is_empty());
        assert_eq!(a.interior(), a.complement().closure().complement());
    }

    #[test]
    fn host_mismatch_is_an_error() {
        let h = segment();
        let other = Complex::empty();
        assert!(SemiSet::empty(&h).try_union(&SemiSet::empty(&other)).is_err());
    }
}
