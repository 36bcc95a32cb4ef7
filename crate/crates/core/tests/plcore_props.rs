use proptest::prelude::*;

use pltg::plcore::{refine, transport_map, CellMap, Point, SemiSet};
use pltg::testkit::gen::{self, Shape};
use pltg::testkit::{oracle, suites};

#[test]
fn closure_interior_and_compactness_match_grid_sampling() {
    let out = suites::semiset_oracles(0x5e7, 1000);
    assert!(out.passed(1000), "{}", out.summary());
}

#[test]
fn properness_matches_extrapolated_limits() {
    let out = suites::properness_oracle(0x9a0, 1000);
    assert!(out.passed(1000), "{}", out.summary());
}

#[test]
fn grid_oracle_sees_open_end_sets() {
    let mut c = pltg::plcore::Complex::new();
    c.add_arc("a", pltg::plcore::Attach::Open, pltg::plcore::Attach::Open);
    let host = c.into_host();
    let whole = SemiSet::whole(&host);
    assert!(!oracle::compact(&whole));
    assert!(!whole.is_compact());
    assert!(oracle::semiset_disagreements(&whole).is_empty());
}

fn two_sets(seed: u64) -> (SemiSet, SemiSet) {
    let mut rng = gen::rng(seed);
    let host = gen::random_complex(&mut rng, Shape::SMALL);
    (gen::random_semiset(&mut rng, &host), gen::random_semiset(&mut rng, &host))
}

fn random_map(seed: u64) -> Option<CellMap> {
    let mut rng = gen::rng(seed);
    let src = gen::random_complex(&mut rng, Shape::SMALL);
    let dst = gen::random_complex(&mut rng, Shape::SMALL);
    gen::random_map(&mut rng, &src, &dst)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn de_morgan(seed in any::<u64>()) {
        let (a, b) = two_sets(seed);
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
        prop_assert_eq!(a.intersection(&b).complement(), a.complement().union(&b.complement()));
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
        prop_assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn closure_and_interior_are_monotone_and_idempotent(seed in any::<u64>()) {
        let (a, b) = two_sets(seed);
        let cl = a.closure();
        prop_assert!(a.interior().is_subset(&a) && a.is_subset(&cl));
        prop_assert_eq!(cl.closure(), cl.clone());
        prop_assert_eq!(a.interior().interior(), a.interior());
        prop_assert!(cl.is_closed() && a.interior().is_open());
        prop_assert_eq!(a.union(&b).closure(), cl.union(&b.closure()));
        prop_assert!(!a.is_compact() || a.is_closed());
        prop_assert!(!a.is_open() || a.is_preopen());
    }

    #[test]
    fn image_and_preimage_laws(seed in any::<u64>()) {
        let Some(m) = random_map(seed) else { return Ok(()) };
        let mut rng = gen::rng(seed ^ 1);
        let a = gen::random_semiset(&mut rng, m.src());
        let b = gen::random_semiset(&mut rng, m.dst());
        let c = gen::random_semiset(&mut rng, m.dst());
        prop_assert!(m.image(&m.preimage(&b)).is_subset(&b));
        prop_assert!(a.is_subset(&m.preimage(&m.image(&a))));
        prop_assert_eq!(m.preimage(&b.union(&c)), m.preimage(&b).union(&m.preimage(&c)));
        prop_assert_eq!(m.preimage(&b.intersection(&c)), m.preimage(&b).intersection(&m.preimage(&c)));
        prop_assert_eq!(m.preimage(&b.complement()), m.preimage(&b).complement());
        prop_assert!(m.preimage(&b.closure()).is_closed());
        for p in oracle::grid(m.src()) {
            prop_assert!(m.image(&SemiSet::from_points(m.src(), &[p.clone()])).contains(&m.apply(&p)));
        }
    }

    #[test]
    fn composition_agrees_pointwise(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let x = gen::random_complex(&mut rng, Shape::SMALL);
        let y = gen::random_complex(&mut rng, Shape::SMALL);
        let z = gen::random_complex(&mut rng, Shape::SMALL);
        let (Some(f), Some(g)) = (gen::random_map(&mut rng, &x, &y), gen::random_map(&mut rng, &y, &z)) else {
            return Ok(());
        };
        let gf = g.compose(&f).unwrap();
        for p in oracle::grid(&x) {
            prop_assert_eq!(gf.apply(&p), g.apply(&f.apply(&p)));
        }
        prop_assert_eq!(CellMap::identity(&y).compose(&f).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&CellMap::identity(&x)).unwrap(), f);
    }

    #[test]
    fn subdivision_transport_round_trips(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let host = gen::random_complex(&mut rng, Shape::SMALL);
        let set = gen::random_semiset(&mut rng, &host);
        let cuts: Vec<Point> = set.cut_points();
        let sub = refine(&host, &cuts);
        let moved = sub.transport_set(&set);
        prop_assert_eq!(sub.transport_back(&moved), set.clone());
        prop_assert_eq!(moved.is_closed(), set.is_closed());
        prop_assert_eq!(moved.is_compact(), set.is_compact());
        prop_assert!(sub.forward.compose(&sub.backward).unwrap().equal_maps(&CellMap::identity(&sub.complex)));
        if let Some(m) = gen::random_map(&mut rng, &host, &host) {
            let t = transport_map(&m, &sub, &sub).unwrap();
            for p in oracle::grid(&host) {
                prop_assert_eq!(sub.backward.apply(&t.apply(&sub.forward.apply(&p))), m.apply(&p));
            }
        }
    }
}
