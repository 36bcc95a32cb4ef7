//! Topological graphs over finite complexes: vertex classes, invariance, admissible pairs.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::glue::adjunction::adjunction_along;
use crate::plcore::{same_host, sub_complex, CellMap, Complex, End, Host, LhMode, Loc, Point, SemiSet};

/// A quadruple `(V, Ed, s, r)` with `r` a local homeomorphism.
#[derive(Clone, Debug)]
pub struct TopGraph {
    v: Host,
    ed: Host,
    s: CellMap,
    r: CellMap,
    lh_mode: LhMode,
    classes: OnceLock<VertexClasses>,
}

impl PartialEq for TopGraph {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.r == other.r && self.lh_mode == other.lh_mode
    }
}

/// The vertex stratification.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexClasses {
    pub fin: SemiSet,
    pub inf: SemiSet,
    pub sink: SemiSet,
    pub reg: SemiSet,
    pub sing: SemiSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissiblePair {
    pub y: SemiSet,
    pub z: SemiSet,
}

/// A graph restricted to a closed invariant vertex set, with both inclusions.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub graph: TopGraph,
    pub incl_v: CellMap,
    pub incl_ed: CellMap,
}

impl TopGraph {
    /// Checked constructor: `s` and `r` must share hosts and `r` must pass the local-homeomorphism test.
    pub fn new(s: CellMap, r: CellMap, lh_mode: LhMode) -> Result<TopGraph> {
        let g = TopGraph::unchecked(s, r, lh_mode)?;
        let report = g.validate();
        if report.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidGraph(report.join("; ")))
        }
    }

    /// Builds without the local-homeomorphism test, so invalid graphs can be reported on.
    pub fn unchecked(s: CellMap, r: CellMap, lh_mode: LhMode) -> Result<TopGraph> {
        if !same_host(s.src(), r.src()) || !same_host(s.dst(), r.dst()) {
            return Err(Error::HostMismatch("s and r must share edge and vertex spaces".into()));
        }
        let v = s.dst().clone();
        let ed = s.src().clone();
        let r = r.rehost(&ed, &v);
        Ok(TopGraph { v, ed, s, r, lh_mode, classes: OnceLock::new() })
    }

    /// Graph with the given vertex space and no edges.
    pub fn edgeless(v: &Host) -> TopGraph {
        let ed = Complex::empty();
        let s = CellMap::from_empty(&ed, v);
        TopGraph { v: v.clone(), ed, r: s.clone(), s, lh_mode: LhMode::Strict, classes: OnceLock::new() }
    }

    pub fn v(&self) -> &Host {
        &self.v
    }

    pub fn ed(&self) -> &Host {
        &self.ed
    }

    pub fn s(&self) -> &CellMap {
        &self.s
    }

    pub fn r(&self) -> &CellMap {
        &self.r
    }

    pub fn lh_mode(&self) -> LhMode {
        self.lh_mode
    }

    pub fn with_mode(&self, mode: LhMode) -> TopGraph {
        TopGraph { lh_mode: mode, classes: OnceLock::new(), ..self.clone() }
    }

    /// Empty iff `r` is a local homeomorphism in the graph's mode and the complexes are valid.
    pub fn validate(&self) -> Vec<String> {
        let mut report: Vec<String> = Vec::new();
        report.extend(self.v.validate().into_iter().map(|m| format!("vertex space: {m}")));
        report.extend(self.ed.validate().into_iter().map(|m| format!("edge space: {m}")));
        if let Err(v) = self.r.check_local_homeo(self.lh_mode) {
            report.push(format!("r is not a local homeomorphism: {v}"));
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn classify(&self) -> &VertexClasses {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> VertexClasses {
        let mut inf = SemiSet::empty(&self.v);
        for (arc, side) in self.ed.open_ends() {
            if let Loc::At(p) = self.s.limit(End { arc, side }) {
                inf.insert_point(&p);
            }
        }
        let sink = self.s.image_whole().closure().complement();
        let fin = inf.complement();
        let reg = fin.difference(&sink.closure());
        let sing = reg.complement();
        VertexClasses { fin, inf, sink, reg, sing }
    }

    pub fn source_image(&self) -> SemiSet {
        self.s.image_whole()
    }

    /// `s(Ed) = reg`.
    pub fn is_row_finite(&self) -> bool {
        self.source_image() == self.classify().reg
    }

    pub fn is_positively_invariant(&self, y: &SemiSet) -> bool {
        self.s.image(&self.r.preimage(y)).is_subset(y)
    }

    pub fn is_negatively_invariant(&self, y: &SemiSet) -> bool {
        y.intersection(&self.classify().reg).is_subset(&self.s.image(&self.r.preimage(y)))
    }

    pub fn is_invariant(&self, y: &SemiSet) -> bool {
        self.is_positively_invariant(y) && self.is_negatively_invariant(y)
    }

    /// The subgraph `(r⁻¹(Y), Y)` for a closed invariant `Y`, with its inclusions.
    pub fn restriction(&self, y: &SemiSet) -> Result<Restriction> {
        if !y.is_closed() {
            return Err(Error::Precondition("Y is not closed".into()));
        }
        if !self.is_invariant(y) {
            return Err(Error::Precondition("Y is not invariant".into()));
        }
        self.restriction_unchecked(y)
    }

    /// As [`TopGraph::restriction`] but only requiring `Y` closed and positively invariant.
    pub fn restriction_unchecked(&self, y: &SemiSet) -> Result<Restriction> {
        if !y.is_closed() {
            return Err(Error::Precondition("Y is not closed".into()));
        }
        let vs = sub_complex(y);
        let es = sub_complex(&self.r.preimage(y));
        let s = vs.corestrict(&self.s.compose(&es.incl)?)?;
        let r = vs.corestrict(&self.r.compose(&es.incl)?)?;
        let graph = TopGraph::unchecked(s, r, self.lh_mode)?;
        Ok(Restriction { graph, incl_v: vs.incl, incl_ed: es.incl })
    }

    pub fn restrict_to_invariant(&self, y: &SemiSet) -> Result<TopGraph> {
        Ok(self.restriction(y)?.graph)
    }

    /// `Y_sing` computed in the restricted graph, as a subset of `V`.
    pub fn restricted_sing(&self, y: &SemiSet) -> Result<SemiSet> {
        let res = self.restriction(y)?;
        Ok(res.incl_v.image(&res.graph.classify().sing))
    }

    pub fn check_admissible_pair(&self, p: &AdmissiblePair) -> Vec<String> {
        let mut violations = Vec::new();
        if !same_host(p.y.host(), &self.v) || !same_host(p.z.host(), &self.v) {
            return vec!["sets are not on the vertex space".into()];
        }
        let y_closed = p.y.is_closed();
        if !y_closed {
            violations.push("Y not closed".to_string());
        }
        if !p.z.is_closed() {
            violations.push("Z not closed".to_string());
        }
        let pos = self.is_positively_invariant(&p.y);
        let neg = self.is_negatively_invariant(&p.y);
        if !pos {
            violations.push("Y not positively invariant".to_string());
        }
        if !neg {
            violations.push("Y not negatively invariant".to_string());
        }
        if y_closed && pos && neg {
            match self.restricted_sing(&p.y) {
                Ok(ys) => {
                    if !ys.is_subset(&p.z) {
                        violations.push(format!("Y_sing = {} is not inside Z", ys));
                    }
                }
                Err(e) => violations.push(e.to_string()),
            }
        }
        let upper = self.classify().sing.intersection(&p.y);
        if !p.z.is_subset(&upper) {
            violations.push(format!("Z is not inside E_sing ∩ Y = {}", upper));
        }
        violations
    }

    pub fn is_admissible(&self, p: &AdmissiblePair) -> bool {
        self.check_admissible_pair(p).is_empty()
    }

    /// All admissible pairs of a graph whose spaces have no arcs, sorted by
    /// `(|Y|, Y, |Z|, Z)`, a linear extension of componentwise inclusion.
    pub fn enumerate_admissible_pairs(&self) -> Result<Vec<AdmissiblePair>> {
        if self.v.arc_count() > 0 || self.ed.arc_count() > 0 {
            return Err(Error::Precondition("admissible pairs are only enumerated for discrete graphs".into()));
        }
        let n = self.v.node_count();
        if n > 20 {
            return Err(Error::Precondition("too many vertices to enumerate".into()));
        }
        let as_set = |mask: u64| {
            let pts: Vec<Point> = (0..n).filter(|i| mask >> i & 1 == 1).map(Point::Node).collect();
            SemiSet::from_points(&self.v, &pts)
        };
        let to_mask = |s: &SemiSet| {
            (0..n).filter(|i| s.has_node(*i)).fold(0u64, |m, i| m | 1 << i)
        };
        let sing = to_mask(&self.classify().sing);
        let mut pairs = Vec::new();
        for y in 0..(1u64 << n) {
            let ys = as_set(y);
            if !self.is_invariant(&ys) {
                continue;
            }
            let lower = to_mask(&self.restricted_sing(&ys)?);
            let upper = sing & y;
            if lower & !upper != 0 {
                continue;
            }
            let free = upper & !lower;
            let mut sub = free;
            loop {
                pairs.push((y, lower | sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        pairs.sort_by_key(|(y, z)| (y.count_ones(), *y, z.count_ones(), *z));
        Ok(pairs.into_iter().map(|(y, z)| AdmissiblePair { y: as_set(y), z: as_set(z) }).collect())
    }

    /// The graph `E_ρ`: the restriction to `Y` with a copy of `cl(W)`, `W = Z ∩ Y_reg`, glued along `∂W`.
    pub fn build_e_rho(&self, p: &AdmissiblePair) -> Result<TopGraph> {
        let violations = self.check_admissible_pair(p);
        if !violations.is_empty() {
            return Err(Error::Precondition(format!("inadmissible pair: {}", violations.join("; "))));
        }
        let res = self.restriction(&p.y)?;
        let y = &res.graph;
        let z_in_y = res.incl_v.preimage(&p.z);
        let w = z_in_y.intersection(&y.classify().reg);
        let w_cl = w.closure();
        let dw = w_cl.difference(&w);

        let cl0 = sub_complex(&w_cl);
        let d0 = sub_complex(&cl0.lift_set(&dw));
        let f0 = cl0.incl.compose(&d0.incl)?;
        let vert = adjunction_along(y.v(), &cl0.complex, &d0.incl, &f0)?;

        let cl1 = sub_complex(&y.r().preimage(&w_cl));
        let d1 = sub_complex(&cl1.lift_set(&y.r().preimage(&dw)));
        let f1 = cl1.incl.compose(&d1.incl)?;
        let edge = adjunction_along(y.ed(), &cl1.complex, &d1.incl, &f1)?;

        let s_on_y = vert.embed.compose(y.s())?;
        let s_on_copy = s_on_y.compose(&cl1.incl)?;
        let s = edge.map_out(&s_on_y, &s_on_copy)?;
        let r_on_y = vert.embed.compose(y.r())?;
        let r_copy = cl0.corestrict(&y.r().compose(&cl1.incl)?)?;
        let r_on_copy = vert.p.compose(&r_copy)?;
        let r = edge.map_out(&r_on_y, &r_on_copy)?;
        TopGraph::new(s, r, self.lh_mode)
    }

    /// The graph `(X, X, σ, id)` of a homeomorphism with inverse `σ_inv`.
    pub fn from_dynamical_system(x: &Host, sigma: &CellMap, sigma_inv: &CellMap) -> Result<TopGraph> {
        for m in [sigma, sigma_inv] {
            if !same_host(m.src(), x) || !same_host(m.dst(), x) {
                return Err(Error::HostMismatch("σ must be a self-map of X".into()));
            }
        }
        let id = CellMap::identity(x);
        if sigma.compose(sigma_inv)? != id || sigma_inv.compose(sigma)? != id {
            return Err(Error::Precondition("σ_inv is not an inverse of σ".into()));
        }
        TopGraph::new(sigma.clone(), id, LhMode::Strict)
    }

    /// Disjoint union; returns the graph and the two vertex and edge injections.
    pub fn disjoint_union(&self, other: &TopGraph) -> Result<(TopGraph, [CellMap; 4])> {
        let (v, vn, va) = self.v.disjoint_union(&other.v);
        let (ed, en, ea) = self.ed.disjoint_union(&other.ed);
        let (v, ed) = (v.into_host(), ed.into_host());
        let inj = |src: &Host, dst: &Host, node_off: usize, arc_off: usize| {
            let nodes = (0..src.node_count()).map(|n| Point::Node(n + node_off)).collect();
            let arcs = (0..src.arc_count())
                .map(|a| vec![crate::plcore::Piece::identity(a + arc_off)])
                .collect();
            CellMap::new(src, dst, nodes, arcs)
        };
        let iv1 = inj(&self.v, &v, 0, 0)?;
        let iv2 = inj(&other.v, &v, vn, va)?;
        let ie1 = inj(&self.ed, &ed, 0, 0)?;
        let ie2 = inj(&other.ed, &ed, en, ea)?;
        let join = |f: &CellMap, g: &CellMap| -> Result<CellMap> {
            let a = iv1.compose(f)?;
            let b = iv2.compose(g)?;
            let mut nodes = a.node_images().to_vec();
            nodes.extend(b.node_images().iter().cloned());
            let mut arcs = a.all_pieces().to_vec();
            arcs.extend(b.all_pieces().iter().cloned());
            CellMap::new(&ed, &v, nodes, arcs)
        };
        let s = join(&self.s, &other.s)?;
        let r = join(&self.r, &other.r)?;
        let mode = if self.lh_mode == LhMode::Strict && other.lh_mode == LhMode::Strict {
            LhMode::Strict
        } else {
            LhMode::OntoImage
        };
        Ok((TopGraph::unchecked(s, r, mode)?, [iv1, iv2, ie1, ie2]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcore::Interval;
    use crate::rational::q;
    use crate::testkit::fixtures::counterexample_f;

    fn values(g: &TopGraph, parts: &[(i64, i64, i64, i64, bool, bool)]) -> SemiSet {
        let chart = &g.v().arc(0).chart;
        let mut s = SemiSet::empty(g.v());
        for &(a, b, c, d, lc, hc) in parts {
            let lo = chart.to_param(&q(a, b));
            let hi = chart.to_param(&q(c, d));
            s.insert_interval(0, &Interval { lo, hi, lo_closed: lc, hi_closed: hc });
        }
        s
    }

    #[test]
    fn counterexample_classes() {
        let f = counterexample_f();
        let c = f.classify();
        assert_eq!(c.sink, values(&f, &[(1, 2, 1, 1, false, false), (1, 1, 2, 1, false, true)]));
        assert_eq!(c.inf, values(&f, &[(0, 1, 0, 1, true, true), (1, 2, 1, 2, true, true)]));
        assert_eq!(c.reg, values(&f, &[(0, 1, 1, 2, false, false)]));
        assert_eq!(c.sing, values(&f, &[(0, 1, 0, 1, true, true), (1, 2, 2, 1, true, true)]));
        assert!(!f.is_row_finite());
        assert!(!f.source_image().is_preopen());
    }

    #[test]
    fn counterexample_needs_onto_image_mode() {
        let f = counterexample_f();
        assert!(!f.with_mode(LhMode::Strict).is_valid());
        assert!(f.is_valid());
    }

    #[test]
    fn edgeless_graph_is_all_sinks() {
        let mut v = Complex::new();
        v.add_node("v");
        let g = TopGraph::edgeless(&v.into_host());
        assert_eq!(g.classify().sink, SemiSet::whole(g.v()));
        assert!(g.classify().reg.is_empty());
        assert!(TopGraph::edgeless(&Complex::empty()).is_row_finite());
    }

    #[test]
    fn point_one_is_invariant_in_counterexample() {
        let f = counterexample_f();
        let one_pt = SemiSet::from_points(f.v(), &[Point::Interior(0, q(1, 2))]);
        assert!(f.is_positively_invariant(&one_pt));
        assert!(f.is_negatively_invariant(&one_pt));
        let g = f.restrict_to_invariant(&one_pt).unwrap();
        assert_eq!(g.v().node_count(), 1);
        assert!(g.ed().is_empty());
        let pair = AdmissiblePair { y: one_pt.clone(), z: one_pt.clone() };
        assert!(f.is_admissible(&pair));
        let whole = AdmissiblePair { y: SemiSet::whole(f.v()), z: f.classify().sing.clone() };
        assert!(f.is_admissible(&whole));
        let bad = AdmissiblePair {
            y: values(&f, &[(0, 1, 1, 2, false, false)]),
            z: SemiSet::empty(f.v()),
        };
        assert!(f.check_admissible_pair(&bad).contains(&"Y not closed".to_string()));
    }
}
