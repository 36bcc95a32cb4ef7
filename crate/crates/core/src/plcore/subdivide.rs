//! Subdivision of complexes, sub-complexes of semilinear sets, and corestriction of maps.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::plcore::cellmap::{Action, CellMap, Piece};
use crate::plcore::complex::{ArcId, Attach, Complex, Host, NodeId};
use crate::plcore::semiset::{same_host, Point, SemiSet};
use crate::rational::{is_between_open, one, zero, Q};

/// A refinement of a complex together with the two inverse homeomorphisms.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: Host,
    /// Original → refined.
    pub forward: CellMap,
    /// Refined → original.
    pub backward: CellMap,
    /// For every original arc, the refined arcs covering it in order, with their parameter ranges.
    pub parts: Vec<Vec<(Q, Q, ArcId)>>,
}

/// Subdivides at the given interior points; a repeated cut is an error.
pub fn subdivide(host: &Host, cuts: &[Point]) -> Result<Subdivision> {
    let mut per_arc: BTreeMap<ArcId, BTreeSet<Q>> = BTreeMap::new();
    for p in cuts {
        match p {
            Point::Interior(a, t) if *a < host.arc_count() && is_between_open(t) => {
                if !per_arc.entry(*a).or_default().insert(t.clone()) {
                    return Err(Error::Invalid(format!(
                        "duplicate cut on arc {}",
                        host.arc(*a).name
                    )));
                }
            }
            _ => return Err(Error::Invalid("cuts must be interior points".into())),
        }
    }
    Ok(refine_params(host, &per_arc))
}

/// Subdivides at every interior point among `cuts`, ignoring nodes and repeats.
pub fn refine(host: &Host, cuts: &[Point]) -> Subdivision {
    let mut per_arc: BTreeMap<ArcId, BTreeSet<Q>> = BTreeMap::new();
    for p in cuts {
        if let Point::Interior(a, t) = p {
            per_arc.entry(*a).or_default().insert(t.clone());
        }
    }
    refine_params(host, &per_arc)
}

pub fn refine_params(host: &Host, per_arc: &BTreeMap<ArcId, BTreeSet<Q>>) -> Subdivision {
    let mut c = Complex::new();
    for n in host.node_names() {
        c.add_node(n.clone());
    }
    let mut parts = Vec::with_capacity(host.arc_count());
    let mut backward_nodes: Vec<Point> = (0..host.node_count()).map(Point::Node).collect();
    for (i, arc) in host.arcs().iter().enumerate() {
        let cuts: Vec<Q> = per_arc.get(&i).map(|s| s.iter().cloned().collect()).unwrap_or_default();
        if cuts.is_empty() {
            let id = c.add_arc_with_chart(arc.name.clone(), arc.ends[0], arc.ends[1], arc.chart.clone());
            parts.push(vec![(zero(), one(), id)]);
            continue;
        }
        let mut bounds = vec![zero()];
        bounds.extend(cuts.iter().cloned());
        bounds.push(one());
        let mut cut_nodes = Vec::new();
        for (k, t) in cuts.iter().enumerate() {
            cut_nodes.push(c.add_node(format!("{}_{}", arc.name, k + 1)));
            backward_nodes.push(Point::Interior(i, t.clone()));
        }
        let mut my_parts = Vec::new();
        for k in 0..bounds.len() - 1 {
            let start = if k == 0 { arc.ends[0] } else { Attach::Closed(cut_nodes[k - 1]) };
            let end = if k == bounds.len() - 2 { arc.ends[1] } else { Attach::Closed(cut_nodes[k]) };
            let id = c.add_arc_with_chart(
                format!("{}.{}", arc.name, k + 1),
                start,
                end,
                arc.chart.restrict(&bounds[k], &bounds[k + 1]),
            );
            my_parts.push((bounds[k].clone(), bounds[k + 1].clone(), id));
        }
        parts.push(my_parts);
    }
    c.make_names_unique();
    let refined = c.into_host();

    let forward_nodes = (0..host.node_count()).map(Point::Node).collect();
    let forward_arcs = parts
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|(lo, hi, id)| {
                    let w = hi - lo;
                    Piece::affine(lo.clone(), hi.clone(), *id, one() / &w, -(lo / &w))
                })
                .collect()
        })
        .collect();
    let forward = CellMap::new(host, &refined, forward_nodes, forward_arcs).expect("subdivision forward map");

    let mut backward_arcs = vec![Vec::new(); refined.arc_count()];
    for (i, ps) in parts.iter().enumerate() {
        for (lo, hi, id) in ps {
            backward_arcs[*id] = vec![Piece::affine(zero(), one(), i, hi - lo, lo.clone())];
        }
    }
    let backward =
        CellMap::new(&refined, host, backward_nodes, backward_arcs).expect("subdivision backward map");
    Subdivision { complex: refined, forward, backward, parts }
}

impl Subdivision {
    pub fn transport_set(&self, set: &SemiSet) -> SemiSet {
        self.forward.image(set)
    }

    pub fn transport_back(&self, set: &SemiSet) -> SemiSet {
        self.backward.image(set)
    }
}

/// Transports `f: X → Y` to refinements of both sides.
pub fn transport_map(f: &CellMap, sx: &Subdivision, sy: &Subdivision) -> Result<CellMap> {
    sy.forward.compose(&f.compose(&sx.backward)?)
}

/// A semilinear subset realized as a complex of its own.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub complex: Host,
    /// Inclusion into the original host.
    pub incl: CellMap,
    pub refined: Subdivision,
    /// Sub-complex cell → refined cell.
    pub node_map: Vec<NodeId>,
    pub arc_map: Vec<ArcId>,
    /// Refined cell → sub-complex cell, when present.
    pub node_inv: Vec<Option<NodeId>>,
    pub arc_inv: Vec<Option<ArcId>>,
}

/// The subspace `set` as a complex: cut at the set's endpoints and keep the cells inside it.
pub fn sub_complex(set: &SemiSet) -> Subspace {
    let host = set.host();
    let refined = refine(host, &set.cut_points());
    let t = refined.transport_set(set);
    let rc = refined.complex.clone();
    let mut c = Complex::new();
    let mut node_map = Vec::new();
    let mut node_inv = vec![None; rc.node_count()];
    for n in 0..rc.node_count() {
        if t.has_node(n) {
            node_inv[n] = Some(c.add_node(rc.node_name(n).to_string()));
            node_map.push(n);
        }
    }
    let mut arc_map = Vec::new();
    let mut arc_inv = vec![None; rc.arc_count()];
    for a in 0..rc.arc_count() {
        let s = t.arc_set(a);
        debug_assert!(s.is_empty() || s.is_full(), "refined set must be cellular");
        if s.is_full() {
            let arc = rc.arc(a);
            let end = |at: Attach| match at {
                Attach::Closed(n) => node_inv[n].map(Attach::Closed).unwrap_or(Attach::Open),
                Attach::Open => Attach::Open,
            };
            arc_inv[a] = Some(c.add_arc_with_chart(
                arc.name.clone(),
                end(arc.ends[0]),
                end(arc.ends[1]),
                arc.chart.clone(),
            ));
            arc_map.push(a);
        }
    }
    let sub = c.into_host();
    let into_refined = CellMap::new(
        &sub,
        &rc,
        node_map.iter().map(|n| Point::Node(*n)).collect(),
        arc_map.iter().map(|a| vec![Piece::identity(*a)]).collect(),
    )
    .expect("cellular inclusion");
    let incl = refined.backward.compose(&into_refined).expect("inclusion into host");
    Subspace { complex: sub, incl, refined, node_map, arc_map, node_inv, arc_inv }
}

impl Subspace {
    fn lift_point(&self, p: &Point) -> Option<Point> {
        match p {
            Point::Node(n) => self.node_inv[*n].map(Point::Node),
            Point::Interior(a, t) => self.arc_inv[*a].map(|k| Point::Interior(k, t.clone())),
        }
    }

    /// Lifts `f: X → host` with image inside the subspace to `X → subspace`.
    pub fn corestrict(&self, f: &CellMap) -> Result<CellMap> {
        if !same_host(f.dst(), self.refined.forward.src()) {
            return Err(Error::HostMismatch("corestrict: map does not land in the host".into()));
        }
        let g = self.refined.forward.compose(f)?;
        let outside = || Error::Precondition("map leaves the subspace".into());
        let nodes = g
            .node_images()
            .iter()
            .map(|p| self.lift_point(p).ok_or_else(outside))
            .collect::<Result<Vec<_>>>()?;
        let mut arcs = Vec::new();
        for pieces in g.all_pieces() {
            let mut out = Vec::new();
            for piece in pieces {
                let action = match &piece.action {
                    Action::Const(p) => Action::Const(self.lift_point(p).ok_or_else(outside)?),
                    Action::Affine { arc, a, b } => Action::Affine {
                        arc: self.arc_inv[*arc].ok_or_else(outside)?,
                        a: a.clone(),
                        b: b.clone(),
                    },
                };
                out.push(Piece { lo: piece.lo.clone(), hi: piece.hi.clone(), action });
            }
            arcs.push(out);
        }
        CellMap::new(f.src(), &self.complex, nodes, arcs)
    }

    /// Image of a host set restricted to the subspace, as a set on the sub-complex.
    pub fn lift_set(&self, set: &SemiSet) -> SemiSet {
        self.incl.preimage(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::complex::Chart;
    use crate::plcore::interval::Interval;
    use crate::rational::{int, q};

    fn segment() -> Host {
        let mut c = Complex::new();
        let a = c.add_node("a");
        let b = c.add_node("b");
        c.add_arc_with_chart("A", Attach::Closed(a), Attach::Closed(b), Chart::new(int(0), int(2)));
        c.into_host()
    }

    #[test]
    fn subdivide_at_value_one() {
        let h = segment();
        let s = subdivide(&h, &[Point::Interior(0, q(1, 2))]).unwrap();
        assert_eq!(s.complex.arc_count(), 2);
        assert_eq!(s.complex.node_count(), 3);
        assert_eq!(s.complex.arc(0).ends[1], s.complex.arc(1).ends[0]);
        assert_eq!(s.complex.arc(1).chart, Chart::new(int(1), int(2)));
        assert!(subdivide(&h, &[Point::Interior(0, q(1, 2)), Point::Interior(0, q(1, 2))]).is_err());
    }

    #[test]
    fn transport_of_half_open_set() {
        let h = segment();
        let s = subdivide(&h, &[Point::Interior(0, q(1, 2))]).unwrap();
        let mut a = SemiSet::empty(&h);
        a.insert_interval(0, &Interval { lo: q(1, 4), hi: one(), lo_closed: false, hi_closed: true });
        let t = s.transport_set(&a);
        assert!(t.has_node(2));
        assert!(t.has_node(1));
        assert_eq!(t.arc_set(0).intervals(), vec![Interval::open(q(1, 2), one())]);
        assert!(t.arc_set(1).is_full());
        assert_eq!(s.transport_back(&t), a);
    }

    #[test]
    fn no_cuts_is_identity() {
        let h = segment();
        let s = subdivide(&h, &[]).unwrap();
        assert_eq!(*s.complex, *h);
        assert_eq!(s.forward, CellMap::identity(&h));
    }

    #[test]
    fn sub_complex_and_corestrict() {
        let h = segment();
        let mut a = SemiSet::empty(&h);
        a.insert_interval(0, &Interval::closed(zero(), q(1, 2)));
        let sub = sub_complex(&a);
        assert_eq!(sub.complex.node_count(), 2);
        assert_eq!(sub.complex.arc_count(), 1);
        assert_eq!(sub.incl.image_whole(), a);
        let lifted = sub.corestrict(&sub.incl).unwrap();
        assert_eq!(lifted, CellMap::identity(&sub.complex));
    }
}
