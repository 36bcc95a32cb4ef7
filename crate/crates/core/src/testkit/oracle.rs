//! Independent sampling oracles for the exact decision procedures.

use rand::Rng as _;

use crate::morphism::{fiber_bijective_at, FactorMap};
use crate::plcore::{Attach, CellMap, Host, Point, SemiSet, Side};
use crate::rational::{one, q, zero, Q};

use super::gen::Rng;

/// Sampling step.
pub const STEP: i64 = 64;

/// Nodes and every interior `k/64` on every arc.
pub fn grid(host: &Host) -> Vec<Point> {
    let mut out: Vec<Point> = (0..host.node_count()).map(Point::Node).collect();
    for a in 0..host.arc_count() {
        out.extend((1..STEP).map(|k| Point::Interior(a, q(k, STEP))));
    }
    out
}

/// Points at distance `1/128` from `p` in every direction.
pub fn neighbours(host: &Host, p: &Point) -> Vec<Point> {
    let d = q(1, 2 * STEP);
    match p {
        Point::Interior(a, t) => vec![Point::Interior(*a, t - &d), Point::Interior(*a, t + &d)],
        Point::Node(n) => {
            let mut out = Vec::new();
            for (a, arc) in host.arcs().iter().enumerate() {
                if arc.ends[0] == Attach::Closed(*n) {
                    out.push(Point::Interior(a, d.clone()));
                }
                if arc.ends[1] == Attach::Closed(*n) {
                    out.push(Point::Interior(a, one() - &d));
                }
            }
            out
        }
    }
}

pub fn closure_at(set: &SemiSet, p: &Point) -> bool {
    set.contains(p) || neighbours(set.host(), p).iter().any(|x| set.contains(x))
}

pub fn interior_at(set: &SemiSet, p: &Point) -> bool {
    set.contains(p) && neighbours(set.host(), p).iter().all(|x| set.contains(x))
}

/// Closed on the grid and staying away from every Open end.
pub fn compact(set: &SemiSet) -> bool {
    let host = set.host();
    let closed = grid(host).iter().all(|p| !closure_at(set, p) || set.contains(p));
    let d = q(1, 2 * STEP);
    let near_open = host.open_ends().into_iter().any(|(a, side)| {
        let t = match side {
            Side::Start => d.clone(),
            Side::End => one() - &d,
        };
        set.contains(&Point::Interior(a, t))
    });
    closed && !near_open
}

/// Differences between the exact closure, interior and compactness of `set` and the oracles.
pub fn semiset_disagreements(set: &SemiSet) -> Vec<String> {
    let mut out = Vec::new();
    let (cl, int) = (set.closure(), set.interior());
    for p in grid(set.host()) {
        if cl.contains(&p) != closure_at(set, &p) {
            out.push(format!("closure of {set} at {p:?}"));
        }
        if int.contains(&p) != interior_at(set, &p) {
            out.push(format!("interior of {set} at {p:?}"));
        }
    }
    if set.is_compact() != compact(set) {
        out.push(format!("compactness of {set}"));
    }
    out
}

/// Extrapolated limit of `m` at an Open end: `Some(true)` if it escapes through an Open end of
/// the target, `Some(false)` if it converges to a point, `None` if the samples do not decide.
fn escapes(m: &CellMap, a: usize, side: Side) -> Option<bool> {
    let at = |k: i64| {
        let t = q(k, STEP);
        let t = if side == Side::Start { t } else { one() - t };
        m.apply(&Point::Interior(a, t))
    };
    let (p1, p2) = (at(1), at(2));
    if p1 == p2 {
        return Some(false);
    }
    let (Point::Interior(j1, t1), Point::Interior(j2, t2)) = (&p1, &p2) else { return None };
    if j1 != j2 {
        return None;
    }
    let limit: Q = t1 * q(2, 1) - t2;
    let ends = m.dst().arc(*j1).ends;
    Some(if limit == zero() {
        ends[0] == Attach::Open
    } else if limit == one() {
        ends[1] == Attach::Open
    } else {
        false
    })
}

/// Properness by extrapolating samples towards every Open end of the source.
pub fn proper(m: &CellMap) -> Option<bool> {
    let mut all = true;
    for (a, side) in m.src().open_ends() {
        all &= escapes(m, a, side)?;
    }
    Some(all)
}

/// Up to `count` points of `host`: the grid first, then random rationals.
pub fn fiber_samples(rng: &mut Rng, host: &Host, count: usize) -> Vec<Point> {
    let mut out = grid(host);
    out.truncate(count);
    while out.len() < count && host.arc_count() > 0 {
        let den = rng.gen_range(3..=200);
        let num = rng.gen_range(1..den);
        out.push(Point::Interior(rng.gen_range(0..host.arc_count()), q(num, den)));
    }
    out
}

/// (F2) checked fiber by fiber on samples of the source vertex space.
pub fn f2_by_samples(rng: &mut Rng, f: &FactorMap, count: usize) -> bool {
    fiber_samples(rng, f.src.v(), count).iter().all(|v| fiber_bijective_at(f, v).is_ok())
}
