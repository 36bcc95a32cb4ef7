//! Adjunction spaces `X ∪_f Y` of finite complexes.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::plcore::{
    refine_params, same_host, sub_complex, Action, ArcId, Attach, CellMap, Complex, Host, NodeId,
    Piece, Point, SemiSet, Subdivision,
};
use crate::rational::{one, zero, Q};

/// Where a cell of the adjunction space comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// A cell of the refined `X`.
    X(usize),
    /// A cell of the refined `Y` outside `A`.
    Y(usize),
}

/// The space `X ∪_f Y` for a closed embedding `e: A → Y` and a proper `f: A → X`.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub complex: Host,
    /// `X → X ∪_f Y`, a closed embedding.
    pub embed: CellMap,
    /// `Y → X ∪_f Y`, an open embedding off `A`.
    pub p: CellMap,
    pub x_sub: Subdivision,
    pub y_sub: Subdivision,
    pub node_origin: Vec<Origin>,
    pub arc_origin: Vec<Origin>,
    e: CellMap,
    f: CellMap,
}

fn collect_cut(p: Point, cuts: &mut BTreeMap<ArcId, BTreeSet<Q>>) {
    if let Point::Interior(a, t) = p {
        cuts.entry(a).or_default().insert(t);
    }
}

/// Glues `y` onto `x` along `e(A)` via `f`.
pub fn adjunction_along(x: &Host, y: &Host, e: &CellMap, f: &CellMap) -> Result<Adjunction> {
    if !same_host(e.src(), f.src()) || !same_host(e.dst(), y) || !same_host(f.dst(), x) {
        return Err(Error::HostMismatch("adjunction: e must map A into Y and f must map A into X".into()));
    }
    if let Err(v) = e.check_injective() {
        return Err(Error::Precondition(format!("attaching locus is not embedded: {v}")));
    }
    if let Err((end, p)) = e.check_proper() {
        return Err(Error::Precondition(format!(
            "attaching locus is not closed: arc {} limits to {}",
            e.src().arc(end.arc).name,
            crate::plcore::point_name(y, &p)
        )));
    }
    if let Err((end, p)) = f.check_proper() {
        return Err(Error::NotProper(format!(
            "attaching map sends an open end of {} to {}",
            f.src().arc(end.arc).name,
            crate::plcore::point_name(x, &p)
        )));
    }
    let a = f.src().clone();

    let mut x_cuts = BTreeMap::new();
    for n in 0..a.node_count() {
        collect_cut(f.node_image(n).clone(), &mut x_cuts);
    }
    for arc in 0..a.arc_count() {
        for t in f.breakpoints(arc).into_iter().chain(e.breakpoints(arc)) {
            collect_cut(f.apply(&Point::Interior(arc, t)), &mut x_cuts);
        }
        for piece in f.pieces(arc) {
            if let Action::Const(p) = &piece.action {
                collect_cut(p.clone(), &mut x_cuts);
            }
        }
    }
    let x_sub = refine_params(x, &x_cuts);
    let f1 = x_sub.forward.compose(f)?;

    let mut a_cuts: BTreeMap<ArcId, BTreeSet<Q>> = BTreeMap::new();
    for arc in 0..a.arc_count() {
        let set = a_cuts.entry(arc).or_default();
        set.extend(f1.breakpoints(arc));
        set.extend(e.breakpoints(arc));
    }
    let a_sub = refine_params(&a, &a_cuts);
    let f2 = f1.compose(&a_sub.backward)?;
    let e2 = e.compose(&a_sub.backward)?;
    let a2 = a_sub.complex.clone();

    let mut y_cuts = BTreeMap::new();
    for n in 0..a2.node_count() {
        collect_cut(e2.node_image(n).clone(), &mut y_cuts);
    }
    let y_sub = refine_params(y, &y_cuts);
    let e3 = y_sub.forward.compose(&e2)?;
    let y2 = y_sub.complex.clone();
    let x2 = x_sub.complex.clone();

    let mut node_in_a: Vec<Option<NodeId>> = vec![None; y2.node_count()];
    for n in 0..a2.node_count() {
        match e3.node_image(n) {
            Point::Node(k) => node_in_a[*k] = Some(n),
            _ => return Err(Error::Invalid("attaching locus did not cellularize".into())),
        }
    }
    let mut arc_in_a: Vec<Option<(ArcId, bool)>> = vec![None; y2.arc_count()];
    for arc in 0..a2.arc_count() {
        match e3.pieces(arc) {
            [Piece { action: Action::Affine { arc: j, a: slope, .. }, .. }] if slope.abs() == one() => {
                arc_in_a[*j] = Some((arc, slope.is_negative()));
            }
            _ => return Err(Error::Invalid("attaching locus did not cellularize".into())),
        }
    }

    let x_node = |n: NodeId| -> Result<NodeId> {
        match f2.node_image(n) {
            Point::Node(k) => Ok(*k),
            _ => Err(Error::Invalid("attaching map did not cellularize".into())),
        }
    };

    let mut c = Complex::new();
    let mut node_origin = Vec::new();
    let mut arc_origin = Vec::new();
    for n in 0..x2.node_count() {
        c.add_node(x2.node_name(n).to_string());
        node_origin.push(Origin::X(n));
    }
    let mut copy_node: Vec<Option<NodeId>> = vec![None; y2.node_count()];
    for n in 0..y2.node_count() {
        if node_in_a[n].is_none() {
            copy_node[n] = Some(c.add_node(y2.node_name(n).to_string()));
            node_origin.push(Origin::Y(n));
        }
    }
    for arc in x2.arcs() {
        c.add_arc_with_chart(arc.name.clone(), arc.ends[0], arc.ends[1], arc.chart.clone());
    }
    arc_origin.extend((0..x2.arc_count()).map(Origin::X));
    let mut copy_arc: Vec<Option<ArcId>> = vec![None; y2.arc_count()];
    for (j, arc) in y2.arcs().iter().enumerate() {
        if arc_in_a[j].is_some() {
            continue;
        }
        let mut ends = [Attach::Open; 2];
        for (k, end) in arc.ends.iter().enumerate() {
            ends[k] = match end {
                Attach::Open => Attach::Open,
                Attach::Closed(n) => match node_in_a[*n] {
                    Some(an) => Attach::Closed(x_node(an)?),
                    None => Attach::Closed(copy_node[*n].unwrap()),
                },
            };
        }
        copy_arc[j] = Some(c.add_arc_with_chart(arc.name.clone(), ends[0], ends[1], arc.chart.clone()));
        arc_origin.push(Origin::Y(j));
    }
    c.make_names_unique();
    let glued = c.into_host();

    let incl = CellMap::new(
        &x2,
        &glued,
        (0..x2.node_count()).map(Point::Node).collect(),
        (0..x2.arc_count()).map(|a| vec![Piece::identity(a)]).collect(),
    )?;
    let embed = incl.compose(&x_sub.forward)?;

    let mut p_nodes = Vec::with_capacity(y2.node_count());
    for n in 0..y2.node_count() {
        p_nodes.push(match node_in_a[n] {
            Some(an) => Point::Node(x_node(an)?),
            None => Point::Node(copy_node[n].unwrap()),
        });
    }
    let mut p_arcs = Vec::with_capacity(y2.arc_count());
    for j in 0..y2.arc_count() {
        let piece = match arc_in_a[j] {
            None => Piece::identity(copy_arc[j].unwrap()),
            Some((k, flip)) => {
                let src = &f2.pieces(k)[0];
                let action = match (&src.action, flip) {
                    (Action::Affine { arc, a, b }, true) => {
                        Action::Affine { arc: *arc, a: -a.clone(), b: a + b }
                    }
                    (action, _) => action.clone(),
                };
                Piece { lo: zero(), hi: one(), action }
            }
        };
        p_arcs.push(vec![piece]);
    }
    let p_ref = CellMap::new(&y2, &glued, p_nodes, p_arcs)?;
    let p = p_ref.compose(&y_sub.forward)?;

    Ok(Adjunction {
        complex: glued,
        embed,
        p,
        x_sub,
        y_sub,
        node_origin,
        arc_origin,
        e: e.clone(),
        f: f.clone(),
    })
}

/// Glues `y` onto `x` along the closed set `a ⊆ y` via `f: a → x`, where `a` is realized by [`sub_complex`].
pub fn adjunction_space(x: &Host, y: &Host, a: &SemiSet, f: &CellMap) -> Result<Adjunction> {
    if !same_host(a.host(), y) {
        return Err(Error::HostMismatch("attaching set is not a subset of Y".into()));
    }
    if !a.is_closed() {
        return Err(Error::Precondition("attaching set is not closed".into()));
    }
    let sub = sub_complex(a);
    if !same_host(f.src(), &sub.complex) {
        return Err(Error::HostMismatch("attaching map is not defined on the attaching set".into()));
    }
    let f = f.rehost(&sub.complex, f.dst());
    adjunction_along(x, y, &sub.incl, &f)
}

impl Adjunction {
    /// The glued map `X ∪_f Y → Z` out of maps agreeing on `A`.
    pub fn map_out(&self, on_x: &CellMap, on_y: &CellMap) -> Result<CellMap> {
        if !same_host(on_x.dst(), on_y.dst()) {
            return Err(Error::HostMismatch("map_out: targets differ".into()));
        }
        let lhs = on_y.compose(&self.e)?;
        let rhs = on_x.compose(&self.f)?;
        if lhs != rhs {
            return Err(Error::Precondition("maps do not agree on the attaching locus".into()));
        }
        let cx = on_x.compose(&self.x_sub.backward)?;
        let cy = on_y.compose(&self.y_sub.backward)?;
        let nodes = self
            .node_origin
            .iter()
            .map(|o| match o {
                Origin::X(n) => cx.node_image(*n).clone(),
                Origin::Y(n) => cy.node_image(*n).clone(),
            })
            .collect();
        let arcs = self
            .arc_origin
            .iter()
            .map(|o| match o {
                Origin::X(a) => cx.pieces(*a).to_vec(),
                Origin::Y(a) => cy.pieces(*a).to_vec(),
            })
            .collect();
        CellMap::new(&self.complex, on_x.dst(), nodes, arcs)
    }

    pub fn attaching_embedding(&self) -> &CellMap {
        &self.e
    }

    pub fn attaching_map(&self) -> &CellMap {
        &self.f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::{Chart, Interval};
    use crate::rational::{int, q};

    fn segment(lo: i64, hi: i64) -> Host {
        let mut c = Complex::new();
        let a = c.add_node(lo.to_string());
        let b = c.add_node(hi.to_string());
        c.add_arc_with_chart("A", Attach::Closed(a), Attach::Closed(b), Chart::new(int(lo), int(hi)));
        c.into_host()
    }

    fn endpoints(y: &Host) -> SemiSet {
        SemiSet::from_points(y, &[Point::Node(0), Point::Node(1)])
    }

    #[test]
    fn two_segments_glued_at_endpoints_form_a_circle() {
        let x = segment(-1, 1);
        let y = segment(-1, 1);
        let a = endpoints(&y);
        let sub = sub_complex(&a);
        let f = CellMap::new(&sub.complex, &x, vec![Point::Node(0), Point::Node(1)], vec![]).unwrap();
        let adj = adjunction_space(&x, &y, &a, &f).unwrap();
        assert_eq!(adj.complex.node_count(), 2);
        assert_eq!(adj.complex.arc_count(), 2);
        assert!(adj.complex.is_compact());
        assert!(adj.complex.is_valid());
        assert!(adj.embed.is_closed_embedding());
        for n in 0..2 {
            assert_eq!(adj.complex.degree(n), 2);
        }
    }

    #[test]
    fn empty_locus_is_disjoint_union() {
        let x = segment(0, 1);
        let y = segment(2, 3);
        let a = SemiSet::empty(&y);
        let sub = sub_complex(&a);
        let f = CellMap::from_empty(&sub.complex, &x);
        let adj = adjunction_space(&x, &y, &a, &f).unwrap();
        assert_eq!(adj.complex.node_count(), 4);
        assert_eq!(adj.complex.arc_count(), 2);
        assert!(adj.p.is_injective());
    }

    #[test]
    fn collapsing_a_subsegment_to_a_node() {
        let mut xc = Complex::new();
        xc.add_node("pt");
        let x = xc.into_host();
        let y = segment(0, 3);
        let mut a = SemiSet::empty(&y);
        a.insert_interval(0, &Interval::closed(q(1, 3), q(2, 3)));
        let sub = sub_complex(&a);
        let f = CellMap::constant(&sub.complex, &x, Point::Node(0)).unwrap();
        let adj = adjunction_space(&x, &y, &a, &f).unwrap();
        assert_eq!(adj.complex.node_count(), 3);
        assert_eq!(adj.complex.arc_count(), 2);
        assert_eq!(adj.complex.degree(0), 2);
        assert_eq!(adj.p.image_whole(), SemiSet::whole(&adj.complex));
    }

    #[test]
    fn open_set_is_rejected() {
        let x = segment(0, 1);
        let y = segment(0, 1);
        let mut a = SemiSet::empty(&y);
        a.insert_interval(0, &Interval::open(zero(), q(1, 2)));
        let sub = sub_complex(&a);
        let f = CellMap::new(&sub.complex, &x, vec![], vec![vec![Piece::affine(zero(), one(), 0, q(1, 2), zero())]]);
        assert!(f.is_err() || adjunction_space(&x, &y, &a, &f.unwrap()).is_err());
    }

    #[test]
    fn map_out_of_a_circle() {
        let x = segment(-1, 1);
        let y = segment(-1, 1);
        let a = endpoints(&y);
        let sub = sub_complex(&a);
        let f = CellMap::new(&sub.complex, &x, vec![Point::Node(0), Point::Node(1)], vec![]).unwrap();
        let adj = adjunction_space(&x, &y, &a, &f).unwrap();
        let fold = adj.map_out(&CellMap::identity(&x), &CellMap::identity(&y).rehost(&y, &x)).unwrap();
        assert_eq!(fold.compose(&adj.embed).unwrap(), CellMap::identity(&x));
        let mut pt = Complex::new();
        pt.add_node("*");
        let pt = pt.into_host();
        let c = CellMap::constant(&x, &pt, Point::Node(0)).unwrap();
        let bad = CellMap::new(&y, &pt, vec![Point::Node(0), Point::Node(0)], vec![vec![Piece::constant(zero(), one(), Point::Node(0))]]).unwrap();
        assert!(adj.map_out(&c, &bad).is_ok());
    }
}
