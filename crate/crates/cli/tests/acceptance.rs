//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use pltg::discrete::{breaking_vertices, for_each_simple_graph, for_each_spec, full_set, node_mask, to_topgraph};
use pltg::glue::{check_boundcond, check_main_theorem, check_regular_adjunction, AdjunctionResult, GraphNames, Verdict};
use pltg::morphism::{is_regular_closed_subgraph, SubgraphWitness};
use pltg::plcore::{Attach, CellMap, Chart, Complex, Piece, Point, SemiSet};
use pltg::rational::int;
use pltg::suspend::{
    compare_suspension, double_suspend_graph, isomorphic, quantum_ball_graph, quantum_names, quantum_sphere_gluing,
    quantum_sphere_graph, sphere_zero, sphere_zero_in_ball_one,
};
use pltg::testkit::fixtures::{counterexample_embeddings, counterexample_f, counterexample_union};
use pltg::testkit::{gen, suites};
use pltg::topograph::TopGraph;
use pltg_cli::build::build;
use pltg_cli::tgf;

const BATTERY_LIMIT: Duration = Duration::from_secs(1);
const QUANTUM_LIMIT: Duration = Duration::from_secs(5);
const PER_SPEC_LIMIT: Duration = Duration::from_secs(1);
const EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(60);
const SUITE_INSTANCES: usize = 500;
const ORACLE_SETS: usize = 1000;
const F2_CANDIDATES: usize = 200;
const RANDOM_SPECS: usize = 100;

struct Check {
    failures: Vec<String>,
}

impl Check {
    fn new() -> Check {
        Check { failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn report(self, n: usize, detail: String) -> bool {
        let ok = self.failures.is_empty();
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} ({detail})");
        for f in &self.failures {
            println!("    {f}");
        }
        ok
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture")
}

fn battery(c: &mut Check, res: &AdjunctionResult, label: &str) {
    let f = &res.spec.f;
    c.expect(is_regular_closed_subgraph(&res.spec.g).regular(), format!("{label}: G not regular in F"));
    match check_boundcond(&res.spec) {
        Ok((holds, witness)) => {
            let one = f.v().arc(0).chart.to_param(&int(1));
            let expected = SemiSet::from_points(f.v(), &[Point::Interior(0, one)]);
            c.expect(!holds, format!("{label}: boundary condition holds"));
            c.expect(witness == expected, format!("{label}: witness {witness}, expected {{1}}"));
        }
        Err(e) => c.expect(false, format!("{label}: {e}")),
    }
    c.expect(!f.source_image().is_preopen(), format!("{label}: source image is preopen"));
    c.expect(!f.is_row_finite(), format!("{label}: F is row-finite"));
    c.expect(check_regular_adjunction(res).regular, format!("{label}: union not regular"));
    c.expect(res.spec.g.sub.classify().reg.is_empty(), format!("{label}: intersection has regular vertices"));
    let cert = check_main_theorem(res, &GraphNames::default(), None);
    c.expect(cert.verdict == Verdict::Positive, format!("{label}: verdict {:?}", cert.verdict));
}

fn criterion_1() -> bool {
    let mut c = Check::new();
    let start = Instant::now();
    let res = counterexample_union();
    battery(&mut c, &res, "fixture");
    let (_, in_f) = counterexample_embeddings();
    c.expect(in_f.ambient == counterexample_f(), "embedding ambient differs from F");
    let elapsed = start.elapsed();
    c.expect(elapsed < BATTERY_LIMIT, format!("took {elapsed:?}"));
    match tgf::parse(&read_fixture("counterexample.tgf")) {
        Ok(ws) => {
            let built = build(&ws);
            c.expect(built.errors.is_empty(), format!("build errors {:?}", built.errors));
            match built.glues.get("U") {
                Some(g) => {
                    battery(&mut c, &g.result, "counterexample.tgf");
                    c.expect(isomorphic(&g.result.glued, &res.glued).is_some(), "parsed union differs from fixture");
                }
                None => c.expect(false, "counterexample.tgf has no glue U"),
            }
        }
        Err(e) => c.expect(false, format!("counterexample.tgf: {e:?}")),
    }
    c.report(1, format!("counterexample battery in {elapsed:?}"))
}

/// `[-1,1] ⊔ {v}` with edges `[-1,1] ⊔ {e}`, `s ≡ v`, `r(x) = x`, `r(e) = v`.
fn ball_three_by_hand() -> TopGraph {
    let chart = || Chart::new(int(-1), int(1));
    let mut v = Complex::new();
    let vv = v.add_node("v");
    let lo = v.add_node("-1");
    let hi = v.add_node("1");
    v.add_arc_with_chart("I", Attach::Closed(lo), Attach::Closed(hi), chart());
    let v = v.into_host();
    let mut e = Complex::new();
    e.add_node("e");
    let a = e.add_node("-1");
    let b = e.add_node("1");
    e.add_arc_with_chart("I", Attach::Closed(a), Attach::Closed(b), chart());
    let e = e.into_host();
    let s = CellMap::constant(&e, &v, Point::Node(vv)).unwrap();
    let r_nodes = vec![Point::Node(vv), Point::Node(lo), Point::Node(hi)];
    let r = CellMap::new(&e, &v, r_nodes, vec![vec![Piece::identity(0)]]).unwrap();
    TopGraph::new(s, r, quantum_ball_graph(3).unwrap().lh_mode()).unwrap()
}

fn criterion_2() -> bool {
    let mut c = Check::new();
    let start = Instant::now();
    for n in 0..=3 {
        let res = match quantum_sphere_gluing(n) {
            Ok(r) => r,
            Err(e) => {
                c.expect(false, format!("level {n}: {e}"));
                continue;
            }
        };
        let (names, corners) = quantum_names(n);
        let cert = check_main_theorem(&res, &names, Some(corners));
        c.expect(cert.verdict == Verdict::Positive, format!("level {n}: verdict {:?}", cert.verdict));
        let ball = quantum_ball_graph(2 * n + 1).unwrap();
        c.expect(isomorphic(&res.spec.e, &ball).is_some(), format!("level {n}: E is not the ball"));
        let sphere = quantum_sphere_graph(2 * n).unwrap();
        c.expect(isomorphic(&res.spec.g.sub, &sphere).is_some(), format!("level {n}: G is not the even sphere"));
    }
    let b3 = quantum_ball_graph(3).unwrap();
    let hand = ball_three_by_hand();
    c.expect((b3.v().node_count(), b3.v().arc_count()) == (3, 1), "ball vertex space is not [-1,1] ⊔ {v}");
    c.expect((b3.ed().node_count(), b3.ed().arc_count()) == (3, 1), "ball edge space is not [-1,1] ⊔ {e}");
    match isomorphic(&b3, &hand) {
        Some(iso) => {
            c.expect(iso.verify(&b3, &hand), "ball isomorphism does not verify");
            c.expect(iso.v_nodes[0] == 0, "suspension vertex is not v");
        }
        None => c.expect(false, "ball does not match the hand-built graph"),
    }
    let res = quantum_sphere_gluing(1).unwrap();
    let (names, corners) = quantum_names(1);
    let cert = check_main_theorem(&res, &names, Some(corners));
    match cert.corners {
        Some(k) => {
            c.expect(k.union == "C(S^3_q)", format!("union corner {}", k.union));
            c.expect(k.e == "C(B^3_q)" && k.f == "C(B^3_q)", format!("side corners {} {}", k.e, k.f));
            c.expect(k.intersection == "C(S^2_q)", format!("intersection corner {}", k.intersection));
        }
        None => c.expect(false, "level 1 certificate has no corners"),
    }
    let s2 = double_suspend_graph(&sphere_zero()).unwrap();
    c.expect(isomorphic(&res.spec.g.sub, &s2).is_some(), "intersection is not the suspended S^0");
    let elapsed = start.elapsed();
    c.expect(elapsed < QUANTUM_LIMIT, format!("took {elapsed:?}"));
    c.report(2, format!("levels 0..=3 in {elapsed:?}"))
}

fn criterion_3() -> bool {
    let mut c = Check::new();
    let m = sphere_zero_in_ball_one();
    let side = SubgraphWitness::new(&m.dst, &m.src, m.m0.clone(), m.m1.clone()).unwrap();
    let res = pltg::glue::union_graph(&side, &side).unwrap();
    match compare_suspension(&res.spec) {
        Ok(cmp) => match cmp.iso {
            Some(iso) => c.expect(iso.verify(&cmp.glued_of_suspensions, &cmp.suspension_of_glued), "B1/S0 iso fails"),
            None => c.expect(false, "B1/S0: no isomorphism"),
        },
        Err(e) => c.expect(false, format!("B1/S0: {e}")),
    }
    let mut rng = gen::rng(0x54);
    let (mut done, mut slowest, mut k) = (0, Duration::ZERO, 0usize);
    while done < RANDOM_SPECS {
        k += 1;
        let spec = gen::random_regular_discrete_spec(&mut rng, 3, k % 2 == 0);
        let Ok(glue) = gen::discrete_glue_spec(&spec) else { continue };
        if glue.e.v().is_empty() {
            continue;
        }
        done += 1;
        let t = Instant::now();
        let found = compare_suspension(&glue).map(|cmp| {
            cmp.iso.as_ref().is_some_and(|iso| iso.verify(&cmp.glued_of_suspensions, &cmp.suspension_of_glued))
        });
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        c.expect(matches!(found, Ok(true)), format!("no isomorphism for {spec:?}: {found:?}"));
        c.expect(dt < PER_SPEC_LIMIT, format!("{spec:?} took {dt:?}"));
    }
    c.report(3, format!("fixture and {done} random discrete specs, slowest {slowest:?}"))
}

fn criterion_4() -> bool {
    let mut c = Check::new();
    let g = suites::glue_properties(0x36, SUITE_INSTANCES);
    let mut outcomes = vec![
        suites::subgraph_equivalence(0x32, SUITE_INSTANCES),
        suites::image_regularity(0x33, SUITE_INSTANCES),
        suites::row_finite_subgraphs(0x34, SUITE_INSTANCES),
        suites::row_finite_regular_images(0x35, SUITE_INSTANCES),
    ];
    outcomes.extend(g.all().into_iter().cloned());
    outcomes.push(suites::preopen_implication(0x317, SUITE_INSTANCES));
    outcomes.push(suites::dynamical_iff(0x51, SUITE_INSTANCES));
    for o in &outcomes {
        c.expect(o.passed(SUITE_INSTANCES), o.summary());
    }
    let fewest = outcomes.iter().map(|o| o.instances).min().unwrap_or(0);
    c.report(4, format!("{} suites, at least {fewest} instances each", outcomes.len()))
}

fn criterion_5() -> bool {
    let mut c = Check::new();
    let outcomes = [
        (suites::semiset_oracles(0x64, ORACLE_SETS), ORACLE_SETS),
        (suites::properness_oracle(0x65, ORACLE_SETS), ORACLE_SETS),
        (suites::f2_oracle(0xf2, F2_CANDIDATES), F2_CANDIDATES),
    ];
    for (o, min) in &outcomes {
        c.expect(o.passed(*min), o.summary());
    }
    let counts: Vec<String> = outcomes.iter().map(|(o, _)| o.instances.to_string()).collect();
    c.report(5, format!("grid step 1/{}, instances {}", pltg::testkit::oracle::STEP, counts.join("/")))
}

fn criterion_6() -> bool {
    let mut c = Check::new();
    let start = Instant::now();
    let (mut regular, mut disagree, mut first) = (0usize, 0usize, None);
    let total = for_each_spec(3, |spec| {
        if !spec.is_regular_adjunction() {
            return;
        }
        regular += 1;
        if !spec.check_equivalence().agree {
            disagree += 1;
            first.get_or_insert_with(|| format!("{spec:?}"));
        }
        let u = spec.glued();
        let nu = u.graph.vertex_count();
        let b = breaking_vertices(&u.graph, full_set(nu) & !u.e_vertices);
        if b != u.graph.classify().infinite_emitters & spec.e.classify().regular {
            c.expect(false, format!("breaking-vertex identity fails for {spec:?}"));
        }
    });
    c.expect(disagree == 0, format!("equivalence fails on {disagree} of {regular} regular specs, first {first:?}"));
    let mut graphs = 0;
    for_each_simple_graph(4, |d| {
        graphs += 1;
        let dc = d.classify();
        let tg = to_topgraph(d).unwrap();
        let t = tg.classify();
        let same = node_mask(&t.sink) == dc.sinks
            && node_mask(&t.inf) == dc.infinite_emitters
            && node_mask(&t.reg) == dc.regular
            && node_mask(&t.sing) == dc.singular;
        if !same {
            c.expect(false, format!("classes differ for {d:?}"));
        }
    });
    let elapsed = start.elapsed();
    c.expect(elapsed < EXHAUSTIVE_LIMIT, format!("took {elapsed:?}"));
    c.report(6, format!("{total} specs, {regular} regular, {graphs} graphs, {elapsed:?}"))
}

fn pltg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pltg")).args(args).output().expect("run pltg");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_7() -> bool {
    let mut c = Check::new();
    let names = ["counterexample.tgf", "quantum.tgf", "discrete.tgf"];
    for name in names {
        let text = read_fixture(name);
        match tgf::parse(&text) {
            Ok(ws) => {
                let printed = tgf::print(&ws);
                match tgf::parse(&printed) {
                    Ok(again) => {
                        c.expect(again == ws, format!("{name}: round trip changes the workspace"));
                        c.expect(tgf::print(&again) == printed, format!("{name}: printing is not stable"));
                    }
                    Err(e) => c.expect(false, format!("{name}: printed form does not parse: {e:?}")),
                }
            }
            Err(e) => c.expect(false, format!("{name}: {e:?}")),
        }
    }
    let ce = fixture("counterexample.tgf");
    let ce = ce.to_str().unwrap();
    let qf = fixture("quantum.tgf");
    let qf = qf.to_str().unwrap();
    let first = pltg(&["-f", ce, "check-theorem", "U"]);
    let second = pltg(&["-f", ce, "check-theorem", "U"]);
    c.expect(first.0 == 0 && first == second, "counterexample certificate is not byte-stable");
    let q1 = pltg(&["-f", qf, "check-theorem", "S3"]);
    let q2 = pltg(&["-f", qf, "check-theorem", "S3"]);
    c.expect(q1.0 == 0 && q1 == q2, "quantum certificate is not byte-stable");
    c.expect(serde_json::from_str::<serde_json::Value>(&first.1).is_ok(), "certificate is not JSON");
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "[space X]\narc A = p --\n").unwrap();
    let bad = bad.path().to_str().unwrap().to_string();
    let cases: [(&[&str], i32); 5] = [
        (&["-f", ce, "check-regular", "U"], 0),
        (&["-f", ce, "rowfinite", "F"], 1),
        (&["-f", ce, "check-boundcond", "U"], 1),
        (&["-f", ce, "classify", "nothing"], 2),
        (&["-f", &bad, "validate"], 2),
    ];
    for (args, code) in cases {
        let got = pltg(args).0;
        c.expect(got == code, format!("{args:?}: exit {got}, expected {code}"));
    }
    c.report(7, format!("{} fixtures round-trip, certificates stable, exit codes 0/1/2", names.len()))
}

fn main() {
    let results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7()];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
