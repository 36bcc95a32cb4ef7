use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::plcore::complex::{ArcId, Attach, Direction, Host, NodeId, Side};
use crate::plcore::semiset::{locate, point_name, same_host, End, Loc, Point, SemiSet};
use crate::rational::{fmt_q, is_between_open, midpoint, one, q, zero, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// `t ↦ a*t + b` on the target arc, `a != 0`.
    Affine { arc: ArcId, a: Q, b: Q },
    Const(Point),
}

/// The restriction of a map to the parameter range `[lo,hi]` of one source arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub lo: Q,
    pub hi: Q,
    pub action: Action,
}

impl Piece {
    pub fn affine(lo: Q, hi: Q, arc: ArcId, a: Q, b: Q) -> Piece {
        Piece { lo, hi, action: Action::Affine { arc, a, b } }
    }

    pub fn constant(lo: Q, hi: Q, p: Point) -> Piece {
        Piece { lo, hi, action: Action::Const(p) }
    }

    /// The whole arc mapped identically onto `arc`.
    pub fn identity(arc: ArcId) -> Piece {
        Piece::affine(zero(), one(), arc, one(), zero())
    }
}

/// Why a decision procedure answered "no".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub point: Option<Point>,
    pub reason: String,
}

impl Violation {
    pub fn at(point: Point, reason: impl Into<String>) -> Self {
        Violation { point: Some(point), reason: reason.into() }
    }

    pub fn general(reason: impl Into<String>) -> Self {
        Violation { point: None, reason: reason.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum LhMode {
    #[default]
    Strict,
    OntoImage,
}

/// A continuous map that is affine on finitely many pieces of every arc.
#[derive(Clone, Debug)]
pub struct CellMap {
    src: Host,
    dst: Host,
    nodes: Vec<Point>,
    arcs: Vec<Vec<Piece>>,
}

impl PartialEq for CellMap {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.arcs == other.arcs
            && same_host(&self.src, &other.src)
            && same_host(&self.dst, &other.dst)
    }
}

impl Eq for CellMap {}

fn eval_action(dst: &Host, action: &Action, t: &Q) -> Loc {
    match action {
        Action::Const(p) => Loc::At(p.clone()),
        Action::Affine { arc, a, b } => locate(dst, *arc, &(a * t + b)),
    }
}

fn check_point(host: &Host, p: &Point) -> Result<()> {
    match p {
        Point::Node(n) if *n < host.node_count() => Ok(()),
        Point::Interior(a, t) if *a < host.arc_count() && is_between_open(t) => Ok(()),
        _ => Err(Error::InvalidMap(format!("point {p:?} is not a point of the target"))),
    }
}

impl CellMap {
    /// Builds a map from node images and per-arc pieces; validates and canonicalizes.
    pub fn new(src: &Host, dst: &Host, nodes: Vec<Point>, arcs: Vec<Vec<Piece>>) -> Result<CellMap> {
        if nodes.len() != src.node_count() || arcs.len() != src.arc_count() {
            return Err(Error::InvalidMap("map does not cover every source cell".into()));
        }
        for p in &nodes {
            check_point(dst, p)?;
        }
        let mut canon = Vec::with_capacity(arcs.len());
        for (i, pieces) in arcs.into_iter().enumerate() {
            canon.push(Self::canonical_pieces(src, dst, i, pieces, &nodes)?);
        }
        Ok(CellMap { src: src.clone(), dst: dst.clone(), nodes, arcs: canon })
    }

    fn canonical_pieces(
        src: &Host,
        dst: &Host,
        arc: ArcId,
        pieces: Vec<Piece>,
        nodes: &[Point],
    ) -> Result<Vec<Piece>> {
        let name = &src.arc(arc).name;
        if pieces.is_empty() {
            return Err(Error::InvalidMap(format!("arc {name} has no pieces")));
        }
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        let mut expected = zero();
        for mut piece in pieces {
            if piece.lo != expected || piece.lo >= piece.hi {
                return Err(Error::InvalidMap(format!("pieces of arc {name} do not tile [0,1]")));
            }
            expected = piece.hi.clone();
            match &piece.action {
                Action::Const(p) => check_point(dst, p)?,
                Action::Affine { arc: j, a, b } => {
                    if *j >= dst.arc_count() {
                        return Err(Error::InvalidMap(format!("arc {name} maps to a missing arc")));
                    }
                    for t in [&piece.lo, &piece.hi] {
                        let v = a * t + b;
                        if v < zero() || v > one() {
                            return Err(Error::InvalidMap(format!(
                                "arc {name} leaves the target arc at parameter {}",
                                fmt_q(t)
                            )));
                        }
                    }
                    if a.is_zero() {
                        match locate(dst, *j, b) {
                            Loc::At(p) => piece.action = Action::Const(p),
                            Loc::Missing(_) => {
                                return Err(Error::InvalidMap(format!(
                                    "arc {name} is constant at a missing end"
                                )))
                            }
                        }
                    }
                }
            }
            if let Some(prev) = out.last_mut() {
                let left = eval_action(dst, &prev.action, &piece.lo);
                let right = eval_action(dst, &piece.action, &piece.lo);
                if left != right || left.point().is_none() {
                    return Err(Error::InvalidMap(format!(
                        "arc {name} is discontinuous at parameter {}",
                        fmt_q(&piece.lo)
                    )));
                }
                if prev.action == piece.action {
                    prev.hi = piece.hi;
                    continue;
                }
            }
            out.push(piece);
        }
        if expected != one() {
            return Err(Error::InvalidMap(format!("pieces of arc {name} do not tile [0,1]")));
        }
        for side in Side::BOTH {
            if let Attach::Closed(n) = src.arc(arc).end(side) {
                let piece = if side == Side::Start { &out[0] } else { out.last().unwrap() };
                let v = eval_action(dst, &piece.action, &side.param());
                if v != Loc::At(nodes[n].clone()) {
                    return Err(Error::InvalidMap(format!(
                        "arc {name} disagrees with the image of node {} at its end",
                        src.node_name(n)
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn identity(host: &Host) -> CellMap {
        CellMap {
            src: host.clone(),
            dst: host.clone(),
            nodes: (0..host.node_count()).map(Point::Node).collect(),
            arcs: (0..host.arc_count()).map(|a| vec![Piece::identity(a)]).collect(),
        }
    }

    pub fn constant(src: &Host, dst: &Host, p: Point) -> Result<CellMap> {
        let nodes = vec![p.clone(); src.node_count()];
        let arcs = (0..src.arc_count())
            .map(|_| vec![Piece::constant(zero(), one(), p.clone())])
            .collect();
        CellMap::new(src, dst, nodes, arcs)
    }

    /// The unique map out of an empty complex.
    pub fn from_empty(src: &Host, dst: &Host) -> CellMap {
        assert!(src.is_empty());
        CellMap { src: src.clone(), dst: dst.clone(), nodes: Vec::new(), arcs: Vec::new() }
    }

    pub fn src(&self) -> &Host {
        &self.src
    }

    pub fn dst(&self) -> &Host {
        &self.dst
    }

    pub fn node_image(&self, n: NodeId) -> &Point {
        &self.nodes[n]
    }

    pub fn node_images(&self) -> &[Point] {
        &self.nodes
    }

    pub fn pieces(&self, a: ArcId) -> &[Piece] {
        &self.arcs[a]
    }

    pub fn all_pieces(&self) -> &[Vec<Piece>] {
        &self.arcs
    }

    /// Replaces the hosts with equal complexes.
    pub fn rehost(&self, src: &Host, dst: &Host) -> CellMap {
        assert!(same_host(&self.src, src) && same_host(&self.dst, dst));
        CellMap { src: src.clone(), dst: dst.clone(), nodes: self.nodes.clone(), arcs: self.arcs.clone() }
    }

    /// Interior parameters where two pieces meet.
    pub fn breakpoints(&self, a: ArcId) -> Vec<Q> {
        self.arcs[a].iter().skip(1).map(|p| p.lo.clone()).collect()
    }

    fn piece_at(&self, a: ArcId, t: &Q) -> &Piece {
        let pieces = &self.arcs[a];
        let i = pieces.partition_point(|p| &p.hi < t);
        &pieces[i.min(pieces.len() - 1)]
    }

    /// Value at parameter `t ∈ [0,1]` of arc `a`, possibly a missing end.
    pub fn eval(&self, a: ArcId, t: &Q) -> Loc {
        eval_action(&self.dst, &self.piece_at(a, t).action, t)
    }

    pub fn apply(&self, p: &Point) -> Point {
        match p {
            Point::Node(n) => self.nodes[*n].clone(),
            Point::Interior(a, t) => match self.eval(*a, t) {
                Loc::At(p) => p,
                Loc::Missing(_) => unreachable!("validated maps send points to points"),
            },
        }
    }

    /// Limit of the map at an Open source end.
    pub fn limit(&self, end: End) -> Loc {
        self.eval(end.arc, &end.side.param())
    }

    pub fn image(&self, set: &SemiSet) -> SemiSet {
        assert!(same_host(set.host(), &self.src), "image: set is not on the source");
        let mut out = SemiSet::empty(&self.dst);
        let mut arc_sets = out.arc_sets().to_vec();
        let mut extra_points = Vec::new();
        for n in 0..self.src.node_count() {
            if set.has_node(n) {
                extra_points.push(self.nodes[n].clone());
            }
        }
        for (a, pieces) in self.arcs.iter().enumerate() {
            let s = set.arc_set(a);
            if s.is_empty() {
                continue;
            }
            for piece in pieces {
                for t in [&piece.lo, &piece.hi] {
                    if is_between_open(t) && s.contains(t) {
                        if let Loc::At(p) = eval_action(&self.dst, &piece.action, t) {
                            extra_points.push(p);
                        }
                    }
                }
                match &piece.action {
                    Action::Const(p) => {
                        if s.intersects_open(&piece.lo, &piece.hi) {
                            extra_points.push(p.clone());
                        }
                    }
                    Action::Affine { arc, a: slope, b } => {
                        let pushed = s.push_affine(&piece.lo, &piece.hi, slope, b);
                        arc_sets[*arc] = arc_sets[*arc].union(&pushed);
                    }
                }
            }
        }
        out = SemiSet::from_parts(&self.dst, out.node_flags().to_vec(), arc_sets);
        for p in &extra_points {
            out.insert_point(p);
        }
        out
    }

    pub fn image_whole(&self) -> SemiSet {
        self.image(&SemiSet::whole(&self.src))
    }

    pub fn preimage(&self, set: &SemiSet) -> SemiSet {
        assert!(same_host(set.host(), &self.dst), "preimage: set is not on the target");
        let nodes = self.nodes.iter().map(|p| set.contains(p)).collect();
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for pieces in &self.arcs {
            let mut acc = crate::plcore::interval::IntervalSet::empty();
            for piece in pieces {
                let part = match &piece.action {
                    Action::Const(p) => {
                        if set.contains(p) {
                            crate::plcore::interval::IntervalSet::from_interval(
                                &crate::plcore::interval::Interval::open(piece.lo.clone(), piece.hi.clone()),
                            )
                        } else {
                            crate::plcore::interval::IntervalSet::empty()
                        }
                    }
                    Action::Affine { arc, a, b } => set.arc_set(*arc).pull_affine(&piece.lo, &piece.hi, a, b),
                };
                acc = acc.union(&part);
                if is_between_open(&piece.hi) {
                    if let Loc::At(p) = eval_action(&self.dst, &piece.action, &piece.hi) {
                        if set.contains(&p) {
                            acc = acc.union(&crate::plcore::interval::IntervalSet::point(piece.hi.clone()));
                        }
                    }
                }
            }
            arcs.push(acc);
        }
        SemiSet::from_parts(&self.src, nodes, arcs)
    }

    /// `g ∘ f` where `self = f`.
    pub fn then(&self, g: &CellMap) -> Result<CellMap> {
        g.compose(self)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &CellMap) -> Result<CellMap> {
        if !same_host(f.dst(), &self.src) {
            return Err(Error::HostMismatch("compose: f.dst differs from g.src".into()));
        }
        let nodes = f.nodes.iter().map(|p| self.apply(p)).collect();
        let mut arcs = Vec::with_capacity(f.arcs.len());
        for pieces in &f.arcs {
            let mut out = Vec::new();
            for piece in pieces {
                match &piece.action {
                    Action::Const(p) => {
                        out.push(Piece::constant(piece.lo.clone(), piece.hi.clone(), self.apply(p)))
                    }
                    Action::Affine { arc, a, b } => {
                        let mut cuts: BTreeSet<Q> = BTreeSet::new();
                        cuts.insert(piece.lo.clone());
                        cuts.insert(piece.hi.clone());
                        for c in self.breakpoints(*arc) {
                            let t = (&c - b) / a;
                            if t > piece.lo && t < piece.hi {
                                cuts.insert(t);
                            }
                        }
                        let cuts: Vec<Q> = cuts.into_iter().collect();
                        for w in cuts.windows(2) {
                            let y = a * midpoint(&w[0], &w[1]) + b;
                            let g = self.piece_at(*arc, &y);
                            let action = match &g.action {
                                Action::Const(p) => Action::Const(p.clone()),
                                Action::Affine { arc: k, a: a2, b: b2 } => {
                                    Action::Affine { arc: *k, a: a2 * a, b: a2 * b + b2 }
                                }
                            };
                            out.push(Piece { lo: w[0].clone(), hi: w[1].clone(), action });
                        }
                    }
                }
            }
            arcs.push(out);
        }
        CellMap::new(&f.src, &self.dst, nodes, arcs)
    }

    pub fn equal_maps(&self, other: &CellMap) -> bool {
        self == other
    }

    /// A source point where the two maps differ, if any.
    pub fn first_difference(&self, other: &CellMap) -> Option<Point> {
        for n in 0..self.nodes.len().min(other.nodes.len()) {
            if self.nodes[n] != other.nodes[n] {
                return Some(Point::Node(n));
            }
        }
        for a in 0..self.arcs.len().min(other.arcs.len()) {
            let mut cuts: BTreeSet<Q> = BTreeSet::new();
            cuts.insert(zero());
            cuts.insert(one());
            cuts.extend(self.breakpoints(a));
            cuts.extend(other.breakpoints(a));
            let cuts: Vec<Q> = cuts.into_iter().collect();
            for w in cuts.windows(2) {
                let d = &w[1] - &w[0];
                let samples = [&w[0] + &d * q(1, 3), &w[0] + &d * q(2, 3)];
                for t in samples.iter().chain(std::iter::once(&w[1])) {
                    if is_between_open(t) && self.eval(a, t) != other.eval(a, t) {
                        return Some(Point::Interior(a, t.clone()));
                    }
                }
            }
        }
        None
    }

    /// Every Open source end must limit to an Open target end.
    pub fn check_proper(&self) -> std::result::Result<(), (End, Point)> {
        for (arc, side) in self.src.open_ends() {
            let end = End { arc, side };
            if let Loc::At(p) = self.limit(end) {
                return Err((end, p));
            }
        }
        Ok(())
    }

    pub fn is_proper(&self) -> bool {
        self.check_proper().is_ok()
    }

    /// Outgoing direction at parameter `t` of source arc `a`, moving up or down.
    fn push_direction(&self, a: ArcId, t: &Q, increasing: bool) -> Option<Direction> {
        let pieces = &self.arcs[a];
        let piece = if increasing {
            pieces.iter().find(|p| &p.lo <= t && t < &p.hi)?
        } else {
            pieces.iter().find(|p| &p.lo < t && t <= &p.hi)?
        };
        match &piece.action {
            Action::Const(_) => None,
            Action::Affine { arc, a: slope, b } => Some(Direction {
                arc: *arc,
                base: slope * t + b,
                increasing: slope.is_positive() == increasing,
            }),
        }
    }

    fn star_of(&self, p: &Point) -> Vec<Direction> {
        match p {
            Point::Node(n) => self.dst.node_star(*n),
            Point::Interior(a, t) => vec![
                Direction { arc: *a, base: t.clone(), increasing: true },
                Direction { arc: *a, base: t.clone(), increasing: false },
            ],
        }
    }

    fn check_star(&self, at: Point, dirs: Vec<Option<Direction>>, image: &Point, mode: LhMode) -> std::result::Result<(), Violation> {
        let name = point_name(&self.src, &at);
        let mut seen = Vec::with_capacity(dirs.len());
        for d in dirs {
            let d = d.ok_or_else(|| Violation::at(at.clone(), format!("map is constant near {name}")))?;
            if seen.contains(&d) {
                return Err(Violation::at(at.clone(), format!("map folds at {name}")));
            }
            seen.push(d);
        }
        if mode == LhMode::Strict {
            let mut star = self.star_of(image);
            star.sort();
            seen.sort();
            if star != seen {
                return Err(Violation::at(
                    at.clone(),
                    format!(
                        "star at {name} ({} directions) does not match the star at its image {} ({} directions)",
                        seen.len(),
                        point_name(&self.dst, image),
                        star.len()
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Local homeomorphism test by comparing stars of directions.
    pub fn check_local_homeo(&self, mode: LhMode) -> std::result::Result<(), Violation> {
        for (a, pieces) in self.arcs.iter().enumerate() {
            for piece in pieces {
                if let Action::Const(_) = piece.action {
                    let t = midpoint(&piece.lo, &piece.hi);
                    return Err(Violation::at(
                        Point::Interior(a, t),
                        format!("arc {} has a constant piece", self.src.arc(a).name),
                    ));
                }
            }
            for t in self.breakpoints(a) {
                let at = Point::Interior(a, t.clone());
                let dirs = vec![self.push_direction(a, &t, true), self.push_direction(a, &t, false)];
                let image = self.apply(&at);
                self.check_star(at, dirs, &image, mode)?;
            }
        }
        for n in 0..self.src.node_count() {
            let star = self.src.node_star(n);
            if star.is_empty() && mode == LhMode::OntoImage {
                continue;
            }
            let dirs = star.iter().map(|d| self.push_direction(d.arc, &d.base, d.increasing)).collect();
            self.check_star(Point::Node(n), dirs, &self.nodes[n].clone(), mode)?;
        }
        Ok(())
    }

    pub fn is_local_homeo(&self, mode: LhMode) -> bool {
        self.check_local_homeo(mode).is_ok()
    }

    /// Injectivity, decided on nodes, breakpoints and open pieces.
    pub fn check_injective(&self) -> std::result::Result<(), Violation> {
        let mut points: HashMap<Point, Point> = HashMap::new();
        let mut spans: Vec<(ArcId, Q, Q, Point)> = Vec::new();
        let add_point = |img: Point, src: Point, points: &mut HashMap<Point, Point>| {
            if let Some(prev) = points.insert(img.clone(), src.clone()) {
                return Err(Violation::at(
                    src.clone(),
                    format!(
                        "{} and {} have the same image",
                        point_name(&self.src, &prev),
                        point_name(&self.src, &src)
                    ),
                ));
            }
            Ok(())
        };
        for n in 0..self.nodes.len() {
            add_point(self.nodes[n].clone(), Point::Node(n), &mut points)?;
        }
        for (a, pieces) in self.arcs.iter().enumerate() {
            for t in self.breakpoints(a) {
                let at = Point::Interior(a, t);
                add_point(self.apply(&at), at, &mut points)?;
            }
            for piece in pieces {
                let mid = Point::Interior(a, midpoint(&piece.lo, &piece.hi));
                match &piece.action {
                    Action::Const(_) => {
                        return Err(Violation::at(mid, format!("arc {} has a constant piece", self.src.arc(a).name)))
                    }
                    Action::Affine { arc, a: slope, b } => {
                        let (x, y) = (slope * &piece.lo + b, slope * &piece.hi + b);
                        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                        spans.push((*arc, lo, hi, mid));
                    }
                }
            }
        }
        for (img, src) in &points {
            if let Point::Interior(arc, t) = img {
                if let Some(span) = spans.iter().find(|s| s.0 == *arc && &s.1 < t && t < &s.2) {
                    return Err(Violation::at(
                        src.clone(),
                        format!(
                            "{} and {} have the same image",
                            point_name(&self.src, src),
                            point_name(&self.src, &span.3)
                        ),
                    ));
                }
            }
        }
        for i in 0..spans.len() {
            for j in i + 1..spans.len() {
                let (s, t) = (&spans[i], &spans[j]);
                if s.0 == t.0 && s.1.clone().max(t.1.clone()) < s.2.clone().min(t.2.clone()) {
                    return Err(Violation::at(s.3.clone(), "two pieces overlap in the image"));
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.check_injective().is_ok()
    }

    /// Closed embedding: injective and proper.
    pub fn is_closed_embedding(&self) -> bool {
        self.is_injective() && self.is_proper()
    }

    /// All source points mapping to `p`; `None` when the fiber is infinite.
    pub fn point_preimage(&self, p: &Point) -> Option<Vec<Point>> {
        let mut out: Vec<Point> =
            (0..self.nodes.len()).filter(|n| &self.nodes[*n] == p).map(Point::Node).collect();
        for (a, pieces) in self.arcs.iter().enumerate() {
            for (k, piece) in pieces.iter().enumerate() {
                if k > 0 {
                    if let Loc::At(img) = eval_action(&self.dst, &piece.action, &piece.lo) {
                        if &img == p {
                            out.push(Point::Interior(a, piece.lo.clone()));
                        }
                    }
                }
                match &piece.action {
                    Action::Const(c) => {
                        if c == p {
                            return None;
                        }
                    }
                    Action::Affine { arc, a: slope, b } => {
                        if let Point::Interior(j, v) = p {
                            if j == arc {
                                let t = (v - b) / slope;
                                if t > piece.lo && t < piece.hi {
                                    out.push(Point::Interior(a, t));
                                }
                            }
                        }
                    }
                }
            }
        }
        Some(out)
    }

    /// Restriction to a sub-complex given by its inclusion: `self ∘ incl`.
    pub fn restrict(&self, incl: &CellMap) -> Result<CellMap> {
        self.compose(incl)
    }

    /// Pretty description of the pieces, in chart values.
    pub fn describe(&self) -> String {
        let mut lines = Vec::new();
        for n in 0..self.nodes.len() {
            lines.push(format!(
                "{} -> {}",
                self.src.node_name(n),
                point_name(&self.dst, &self.nodes[n])
            ));
        }
        for (a, pieces) in self.arcs.iter().enumerate() {
            let arc = self.src.arc(a);
            for piece in pieces {
                let what = match &piece.action {
                    Action::Const(p) => format!("const {}", point_name(&self.dst, p)),
                    Action::Affine { arc: j, a, b } => {
                        format!("{} affine {} {}", self.dst.arc(*j).name, fmt_q(a), fmt_q(b))
                    }
                };
                lines.push(format!(
                    "{} [{}, {}] -> {}",
                    arc.name,
                    fmt_q(&arc.chart.to_value(&piece.lo)),
                    fmt_q(&arc.chart.to_value(&piece.hi)),
                    what
                ));
            }
        }
        lines.join("\n")
    }
}

impl crate::plcore::interval::IntervalSet {
    /// Whether the set meets the open interval `(lo,hi)`.
    pub fn intersects_open(&self, lo: &Q, hi: &Q) -> bool {
        !self
            .intersection(&Self::from_interval(&crate::plcore::interval::Interval::open(lo.clone(), hi.clone())))
            .is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::complex::{Chart, Complex};
    use crate::plcore::interval::Interval;
    use crate::rational::int;

    fn unit() -> Host {
        let mut c = Complex::new();
        let a = c.add_node("0");
        let b = c.add_node("1");
        c.add_arc("I", Attach::Closed(a), Attach::Closed(b));
        c.into_host()
    }

    fn halving(h: &Host) -> CellMap {
        CellMap::new(
            h,
            h,
            vec![Point::Node(0), Point::Interior(0, q(1, 2))],
            vec![vec![Piece::affine(zero(), one(), 0, q(1, 2), zero())]],
        )
        .unwrap()
    }

    #[test]
    fn composition_of_affine_maps() {
        let h = unit();
        let f = halving(&h);
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.pieces(0), &[Piece::affine(zero(), one(), 0, q(1, 4), zero())]);
        assert_eq!(CellMap::identity(&h).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&CellMap::identity(&h)).unwrap(), f);
    }

    #[test]
    fn zero_slope_is_normalized_and_pieces_merge() {
        let h = unit();
        let m = CellMap::new(
            &h,
            &h,
            vec![Point::Interior(0, q(1, 2)), Point::Interior(0, q(1, 2))],
            vec![vec![
                Piece::affine(zero(), q(1, 2), 0, zero(), q(1, 2)),
                Piece::constant(q(1, 2), one(), Point::Interior(0, q(1, 2))),
            ]],
        )
        .unwrap();
        assert_eq!(m.pieces(0).len(), 1);
        assert!(!m.is_local_homeo(LhMode::Strict));
        assert!(!m.is_local_homeo(LhMode::OntoImage));
    }

    #[test]
    fn discontinuity_rejected() {
        let h = unit();
        let r = CellMap::new(
            &h,
            &h,
            vec![Point::Node(0), Point::Node(1)],
            vec![vec![
                Piece::affine(zero(), q(1, 2), 0, one(), zero()),
                Piece::affine(q(1, 2), one(), 0, one(), q(1, 4)),
            ]],
        );
        assert!(r.is_err());
    }

    #[test]
    fn image_and_preimage() {
        let h = unit();
        let f = halving(&h);
        let mut a = SemiSet::empty(&h);
        a.insert_interval(0, &Interval::closed(q(1, 2), one()));
        let img = f.image(&a);
        let mut expected = SemiSet::empty(&h);
        expected.insert_interval(0, &Interval::closed(q(1, 4), q(1, 2)));
        assert_eq!(img, expected);
        assert_eq!(f.preimage(&img), a);
        assert!(f.image(&SemiSet::empty(&h)).is_empty());
    }

    #[test]
    fn open_arc_inclusion_is_not_proper() {
        let mut c = Complex::new();
        c.add_arc("B", Attach::Open, Attach::Open);
        let open = c.into_host();
        let mut d = Complex::new();
        let a = d.add_node("0");
        let b = d.add_node("2");
        d.add_arc_with_chart("A", Attach::Closed(a), Attach::Closed(b), Chart::new(int(0), int(2)));
        let seg = d.into_host();
        let incl =
            CellMap::new(&open, &seg, vec![], vec![vec![Piece::affine(zero(), one(), 0, q(1, 2), zero())]]).unwrap();
        let (end, p) = incl.check_proper().unwrap_err();
        assert_eq!(end.side, Side::Start);
        assert_eq!(p, Point::Node(0));
        assert!(CellMap::identity(&open).is_proper());
        assert!(CellMap::identity(&seg).is_proper());
    }

    #[test]
    fn injectivity_detects_folds() {
        let h = unit();
        let fold = CellMap::new(
            &h,
            &h,
            vec![Point::Node(0), Point::Node(0)],
            vec![vec![
                Piece::affine(zero(), q(1, 2), 0, int(2), zero()),
                Piece::affine(q(1, 2), one(), 0, int(-2), int(2)),
            ]],
        )
        .unwrap();
        assert!(!fold.is_injective());
        assert!(halving(&h).is_injective());
        assert_eq!(fold.point_preimage(&Point::Interior(0, q(1, 2))).unwrap().len(), 2);
        assert!(!fold.is_local_homeo(LhMode::OntoImage));
    }

    #[test]
    fn first_difference_finds_reflection() {
        let h = unit();
        let id = CellMap::identity(&h);
        let flip = CellMap::new(
            &h,
            &h,
            vec![Point::Node(1), Point::Node(0)],
            vec![vec![Piece::affine(zero(), one(), 0, int(-1), one())]],
        )
        .unwrap();
        assert!(id.first_difference(&flip).is_some());
        assert!(id.first_difference(&id).is_none());
    }
}
