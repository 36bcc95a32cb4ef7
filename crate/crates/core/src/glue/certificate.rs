//! Machine-readable pullback certificates for unions of topological graphs.

use serde::Serialize;

use crate::glue::graph::{check_regular_adjunction, AdjunctionResult};
use crate::morphism::is_regular_closed_subgraph;
use crate::plcore::SemiSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Positive,
    Negative,
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub id: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Hypothesis {
    fn new(id: &str, verdict: bool, witness: Option<String>) -> Hypothesis {
        Hypothesis { id: id.to_string(), verdict, witness: if verdict { None } else { witness } }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphNames {
    #[serde(rename = "E")]
    pub e: String,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    pub union: String,
}

impl Default for GraphNames {
    fn default() -> Self {
        GraphNames { e: "E".into(), f: "F".into(), g: "E∩F".into(), union: "E∪F".into() }
    }
}

/// Names of the algebras at the corners of the pullback square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corners {
    pub union: String,
    pub e: String,
    pub f: String,
    pub intersection: String,
}

impl Corners {
    pub fn from_graphs(names: &GraphNames) -> Corners {
        Corners {
            union: format!("C*({})", names.union),
            e: format!("C*({})", names.e),
            f: format!("C*({})", names.f),
            intersection: format!("C*({})", names.g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: String,
    pub verdict: Verdict,
    pub graphs: GraphNames,
    pub hypotheses: Vec<Hypothesis>,
    /// Evaluated for the record; they do not affect the verdict.
    pub observations: Vec<Hypothesis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corners: Option<Corners>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::Positive
    }

    /// Assembles a certificate; the conclusion is present iff every hypothesis holds.
    pub fn assemble(
        kind: &str,
        graphs: GraphNames,
        hypotheses: Vec<Hypothesis>,
        observations: Vec<Hypothesis>,
        corners: Corners,
        notes: Vec<String>,
    ) -> Certificate {
        let ok = hypotheses.iter().all(|h| h.verdict);
        let conclusion = ok.then(|| {
            format!(
                "T-equivariant isomorphism onto the pullback: {} ≅ {} ⊕_{} {}",
                corners.union, corners.e, corners.intersection, corners.f
            )
        });
        Certificate {
            kind: kind.to_string(),
            verdict: if ok { Verdict::Positive } else { Verdict::Negative },
            graphs,
            hypotheses,
            observations,
            corners: ok.then_some(corners),
            conclusion,
            notes,
        }
    }
}

fn witness(set: &SemiSet) -> Option<String> {
    (!set.is_empty()).then(|| set.describe())
}

/// The pullback checker for a union `E ∪ F`.
pub fn check_main_theorem(res: &AdjunctionResult, names: &GraphNames, corners: Option<Corners>) -> Certificate {
    let corners = corners.unwrap_or_else(|| Corners::from_graphs(names));
    let Some(in_e) = res.intersection_in_e() else {
        return Certificate {
            kind: "mainthm".into(),
            verdict: Verdict::OutOfScope,
            graphs: names.clone(),
            hypotheses: vec![Hypothesis::new(
                "attaching-map-injective",
                false,
                Some("the attaching map is not a closed embedding, so this is not a union".into()),
            )],
            observations: Vec::new(),
            corners: None,
            conclusion: None,
            notes: vec!["the pullback statement is only available for unions".into()],
        };
    };
    let in_f = &res.spec.g;
    let g = &in_f.sub;
    let e = &res.spec.e;
    let f = &res.spec.f;

    let re = is_regular_closed_subgraph(&in_e);
    let rf = is_regular_closed_subgraph(in_f);
    let union_regular = re.regular() && rf.regular();
    let mut union_witness = Vec::new();
    if !re.regular() {
        union_witness.push(format!("in {}: {}", names.e, re.witnesses.join("; ")));
    }
    if !rf.regular() {
        union_witness.push(format!("in {}: {}", names.f, rf.witnesses.join("; ")));
    }

    let (ec, fc, gc) = (e.classify(), f.classify(), g.classify());
    let f_reg_back = in_f.e0.preimage(&fc.reg);
    let failing = |e_part: &SemiSet| in_e.e0.preimage(e_part).intersection(&gc.reg).difference(&f_reg_back);
    let main = failing(&ec.sing);
    let e_boundary_sinks = ec.sink.boundary_points();
    let literal = failing(&e_boundary_sinks.intersection(&ec.inf));
    let reduced = failing(&ec.inf.union(&e_boundary_sinks));

    let hypotheses = vec![
        Hypothesis::new("union-regular", union_regular, Some(union_witness.join(" | "))),
        Hypothesis::new("maincond", main.is_empty(), witness(&in_e.e0.image(&main))),
    ];
    let battery = check_regular_adjunction(res);
    let observations = vec![
        Hypothesis::new(
            "adjunction-regular",
            battery.regular,
            Some("one of the four regularity conditions fails".into()),
        ),
        Hypothesis::new("sink-boundary-literal", literal.is_empty(), witness(&in_e.e0.image(&literal))),
        Hypothesis::new("maincond-reduced", reduced.is_empty(), witness(&in_e.e0.image(&reduced))),
        Hypothesis::new(
            "maincond-reduced-agrees",
            reduced == main,
            Some("the reduced form disagrees with the main condition".into()),
        ),
        Hypothesis::new(
            "intersection-regular-vertices-empty",
            gc.reg.is_empty(),
            witness(&in_e.e0.image(&gc.reg)),
        ),
    ];
    let mut notes = Vec::new();
    if main.is_empty() && gc.reg.is_empty() {
        notes.push(format!("maincond holds vacuously: {} has no regular vertices", names.g));
    } else if main.is_empty() && literal.is_empty() {
        notes.push("maincond holds; the literal sink-boundary form also holds".into());
    }
    Certificate::assemble("mainthm", names.clone(), hypotheses, observations, corners, notes)
}
