//! Randomized property suites; each returns the number of instances checked and every failure.

use rand::Rng as _;

use crate::error::Result;
use crate::glue::{adjunction_graph, check_boundcond, check_regular_adjunction, union_graph, AdjunctionResult, GlueSpec};
use crate::morphism::{
    check_dynamical_factor, check_f1, check_f2, check_factor_map, image_subgraph, is_regular_closed_subgraph,
    FactorMap, SubgraphWitness,
};
use crate::plcore::SemiSet;
use crate::suspend::compare_suspension;
use crate::topograph::TopGraph;

use super::gen::{self, Rng, Shape};
use super::oracle;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(name: &'static str) -> Outcome {
        Outcome { name, instances: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self, min_instances: usize) -> bool {
        self.failures.is_empty() && self.instances >= min_instances
    }

    pub fn summary(&self) -> String {
        let first = self.failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default();
        format!("{}: {} instances, {} failures{first}", self.name, self.instances, self.failures.len())
    }
}

/// Stops generating once every outcome has `target` instances or after `cap` attempts.
fn saturated(outcomes: &[&Outcome], target: usize) -> bool {
    outcomes.iter().all(|o| o.instances >= target)
}

fn cap(target: usize) -> usize {
    target * 40
}

/// A random graph: PL with open ends, compact PL, or discrete.
pub fn any_graph(rng: &mut Rng) -> TopGraph {
    match rng.gen_range(0..3) {
        0 => gen::random_graph(rng, Shape::SMALL),
        1 => gen::random_graph(rng, Shape::COMPACT),
        _ => gen::random_discrete_topgraph(rng, 4),
    }
}

/// A random closed subgraph, regular or not.
pub fn any_subgraph(rng: &mut Rng) -> SubgraphWitness {
    loop {
        match rng.gen_range(0..3) {
            0 => {
                let base = any_graph(rng);
                let shape = if rng.gen_bool(0.5) { Shape::SMALL } else { Shape::COMPACT };
                return gen::extend(rng, &base, shape).1;
            }
            1 => {
                let g = any_graph(rng);
                if let Some(w) = gen::random_subgraph(rng, &g) {
                    return w;
                }
            }
            _ => {
                let g = any_graph(rng);
                let y = gen::random_semiset(rng, g.v()).closure();
                if let Ok(w) = SubgraphWitness::from_vertex_set(&g, &y) {
                    return w;
                }
            }
        }
    }
}

/// A random gluing spec: PL unions, PL folds, or discrete.
pub fn any_glue_spec(rng: &mut Rng) -> GlueSpec {
    loop {
        let spec = match rng.gen_range(0..4) {
            0 => gen::random_glue_spec(rng, Shape::SMALL, true),
            1 => gen::random_glue_spec(rng, Shape::COMPACT, true),
            2 => gen::random_glue_spec(rng, Shape::SMALL, false),
            _ => {
                let f2 = rng.gen_bool(0.7);
                match gen::discrete_glue_spec(&gen::random_discrete_spec(rng, 3, f2, false)) {
                    Ok(spec) => spec,
                    Err(_) => continue,
                }
            }
        };
        return spec;
    }
}

/// A factor-map candidate satisfying (F1): attaching maps, quotient maps and subgraph inclusions.
pub fn any_factor_candidate(rng: &mut Rng) -> FactorMap {
    loop {
        match rng.gen_range(0..3) {
            0 => return any_glue_spec(rng).m,
            1 => {
                if let Ok(res) = adjunction_graph(&any_glue_spec(rng)) {
                    return res.p;
                }
            }
            _ => return any_subgraph(rng).inclusion(),
        }
    }
}

/// Regular closed subgraphs are exactly those whose inclusion is a regular factor map.
pub fn subgraph_equivalence(seed: u64, target: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("regular subgraph iff regular inclusion");
    let mut regular = 0;
    while out.instances < target || (regular < target / 4 && out.instances < cap(target)) {
        let w = any_subgraph(&mut rng);
        let rep = is_regular_closed_subgraph(&w);
        regular += usize::from(rep.regular());
        out.check(rep.regular() == rep.inclusion_is_regular_factor, || {
            format!("regular = {} but inclusion regular = {}: {:?}", rep.regular(), rep.inclusion_is_regular_factor, rep.witnesses)
        });
    }
    out
}

/// The image of a regular factor map is a regular closed subgraph of its codomain.
pub fn image_regularity(seed: u64, target: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("image of a regular factor map is regular");
    let mut attempts = 0;
    while out.instances < target && attempts < cap(target) {
        attempts += 1;
        let f = any_factor_candidate(&mut rng);
        if !check_factor_map(&f).all() {
            continue;
        }
        match image_subgraph(&f) {
            Ok(w) => {
                let rep = is_regular_closed_subgraph(&w);
                out.check(rep.regular(), || format!("image is not regular: {:?}", rep.witnesses));
            }
            Err(e) => out.check(false, || format!("image is not a closed subgraph: {e}")),
        }
    }
    out
}

/// Regular closed subgraphs of row-finite graphs are row-finite.
pub fn row_finite_subgraphs(seed: u64, target: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("regular subgraphs of row-finite graphs are row-finite");
    let mut attempts = 0;
    while out.instances < target && attempts < cap(target) {
        attempts += 1;
        let w = any_subgraph(&mut rng);
        if !w.ambient.is_row_finite() || !is_regular_closed_subgraph(&w).regular() {
            continue;
        }
        out.check(w.sub.is_row_finite(), || "subgraph is not row-finite".into());
    }
    out
}

/// Regular factor maps between row-finite graphs send regular vertices to regular vertices.
pub fn row_finite_regular_images(seed: u64, target: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("regular factor maps of row-finite graphs preserve regular vertices");
    let mut attempts = 0;
    while out.instances < target && attempts < cap(target) {
        attempts += 1;
        let f = any_factor_candidate(&mut rng);
        if !f.src.is_row_finite() || !f.dst.is_row_finite() || !check_factor_map(&f).all() {
            continue;
        }
        let img = f.m0.image(&f.src.classify().reg);
        out.check(img.is_subset(&f.dst.classify().reg), || format!("{img} is not regular in the codomain"));
    }
    out
}

/// Outcomes of the gluing properties, in a fixed order.
pub struct GlueOutcomes {
    pub p_proper_f1: Outcome,
    pub f2_inheritance: Outcome,
    pub f3_equivalence: Outcome,
    pub union_regularity: Outcome,
    pub sufficiency: Outcome,
}

impl GlueOutcomes {
    pub fn all(&self) -> [&Outcome; 5] {
        [&self.p_proper_f1, &self.f2_inheritance, &self.f3_equivalence, &self.union_regularity, &self.sufficiency]
    }
}

fn union_spec(rng: &mut Rng) -> Result<AdjunctionResult> {
    if rng.gen_bool(0.5) {
        let shape = if rng.gen_bool(0.5) { Shape::SMALL } else { Shape::COMPACT };
        let k = gen::random_graph(rng, shape);
        let (_, in_e) = gen::extend(rng, &k, shape);
        let (_, in_f) = gen::extend(rng, &k, shape);
        union_graph(&in_e, &in_f)
    } else {
        let spec = gen::random_regular_discrete_spec(rng, 3, true);
        adjunction_graph(&gen::discrete_glue_spec(&spec)?)
    }
}

pub fn glue_properties(seed: u64, target: usize) -> GlueOutcomes {
    let mut rng = gen::rng(seed);
    let mut o = GlueOutcomes {
        p_proper_f1: Outcome::new("quotient map is proper with (F1)"),
        f2_inheritance: Outcome::new("(F2) passes from m to p"),
        f3_equivalence: Outcome::new("E negatively invariant iff p satisfies (F3)"),
        union_regularity: Outcome::new("both sides of a regular union are regular"),
        sufficiency: Outcome::new("boundary condition gives a regular adjunction"),
    };
    let mut attempts = 0;
    while !saturated(&o.all(), target) && attempts < cap(target) {
        attempts += 1;
        let union = rng.gen_bool(0.3);
        let res = if union { union_spec(&mut rng) } else { adjunction_graph(&any_glue_spec(&mut rng)) };
        let Ok(res) = res else { continue };
        let rep = check_regular_adjunction(&res);
        o.p_proper_f1.check(rep.p_proper_f1, || format!("p fails: {:?}", rep.p.witnesses));
        if rep.f2_inheritance_applies {
            o.f2_inheritance.check(rep.p.f2 && rep.glued_range_preimage, || {
                format!("p.f2 = {}, range preimage = {}: {:?}", rep.p.f2, rep.glued_range_preimage, rep.p.witnesses)
            });
        }
        if rep.f3_equivalence_applies {
            o.f3_equivalence.check(rep.f3_equivalence_consistent, || {
                format!("E negatively invariant = {}, p.f3 = {}", rep.e_negatively_invariant, rep.p.f3)
            });
        }
        if res.is_union() && rep.regular {
            let f_side = res.f_in_glued().map(|w| is_regular_closed_subgraph(&w).regular());
            let e_side = rep.e_in_glued.regular();
            o.union_regularity.check(e_side && f_side == Some(true), || format!("E regular = {e_side}, F regular = {f_side:?}"));
        }
        if rep.g_in_f.regular() && rep.m.all() {
            if let Ok((true, _)) = check_boundcond(&res.spec) {
                o.sufficiency.check(rep.regular, || format!("not regular: {:?} {:?}", rep.e_in_glued.witnesses, rep.p.witnesses));
            }
        }
    }
    o
}

/// A preopen source image forces `(cl(sink) ∖ sink) ∩ fin = ∅`.
pub fn preopen_implication(seed: u64, target: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("preopen source image keeps the sink boundary infinite");
    let mut attempts = 0;
    while out.instances < target && attempts < cap(target) {
        attempts += 1;
        let g = any_graph(&mut rng);
        if !g.source_image().is_preopen() {
            continue;
        }
        let c = g.classify();
        let bad = c.sink.closure().difference(&c.sink).intersection(&c.fin);
        out.check(bad.is_empty(), || format!("{bad} is a finite boundary point of the sinks"));
    }
    out
}

/// For dynamical systems, `(φ, φ)` is a regular factor map iff `φ` is proper, injective and equivariant.
pub fn dynamical_iff(seed: u64, target: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("dynamical factor maps");
    while out.instances < target {
        let pair = gen::random_dynamical_pair(&mut rng);
        let (x, y) = (pair.x.graph(), pair.y.graph());
        match check_dynamical_factor(&x, &y, &pair.phi) {
            Ok(v) => out.check(v.agree, || format!("{:?}: clauses = {}, factor map = {}", pair.kind, v.clauses, v.factor_map)),
            Err(e) => out.check(false, || format!("{:?}: {e}", pair.kind)),
        }
    }
    out
}

/// Suspending then gluing agrees with gluing then suspending.
pub fn suspension_compatibility(seed: u64, target: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("suspension commutes with gluing");
    while out.instances < target {
        let injective = rng.gen_bool(0.5);
        let spec = gen::random_regular_discrete_spec(&mut rng, 3, injective);
        let Ok(glue) = gen::discrete_glue_spec(&spec) else { continue };
        if glue.e.v().is_empty() {
            continue;
        }
        match compare_suspension(&glue) {
            Ok(c) => out.check(c.iso.is_some(), || format!("no isomorphism for {spec:?}")),
            Err(e) => out.check(false, || format!("{e} for {spec:?}")),
        }
    }
    out
}

/// Closure, interior and compactness against grid sampling.
pub fn semiset_oracles(seed: u64, count: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("closure, interior and compactness oracles");
    while out.instances < count {
        let host = gen::random_complex(&mut rng, Shape::SMALL);
        let set: SemiSet = gen::random_semiset(&mut rng, &host);
        let bad = oracle::semiset_disagreements(&set);
        out.check(bad.is_empty(), || bad.join("; "));
    }
    out
}

/// Properness against extrapolated limits at Open ends.
pub fn properness_oracle(seed: u64, count: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("properness oracle");
    let mut attempts = 0;
    while out.instances < count && attempts < cap(count) {
        attempts += 1;
        let src = gen::random_complex(&mut rng, Shape::SMALL);
        let dst = gen::random_complex(&mut rng, Shape::SMALL);
        let Some(m) = gen::random_map(&mut rng, &src, &dst) else { continue };
        let Some(expected) = oracle::proper(&m) else { continue };
        out.check(m.is_proper() == expected, || format!("is_proper = {} for {}", m.is_proper(), m.describe()));
    }
    out
}

/// The stratified (F2) decision against fiber checks at up to 1000 sampled vertices.
pub fn f2_oracle(seed: u64, count: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = Outcome::new("stratified (F2) against sampled fibers");
    let mut failing = 0;
    while out.instances < count || (failing < count / 5 && out.instances < cap(count)) {
        let f = any_factor_candidate(&mut rng);
        if check_f1(&f).is_err() {
            continue;
        }
        let exact = check_f2(&f).is_ok();
        failing += usize::from(!exact);
        let sampled = oracle::f2_by_samples(&mut rng, &f, 1000);
        out.check(exact == sampled, || format!("stratified = {exact}, sampled = {sampled}"));
    }
    out
}
