//! Finite unions of intervals inside the open parameter interval `(0,1)`.
//!
//! A set is stored as strictly increasing cut points `c_1 < … < c_k` in `(0,1)`,
//! the membership of each cut point, and the membership of each of the `k+1`
//! open gaps between consecutive cuts (the first gap starts at 0, the last
//! ends at 1). The form is canonical when no cut is redundant, i.e. when every
//! cut differs in membership from at least one neighbouring gap.

use std::fmt;

use crate::rational::{fmt_q, is_between_open, midpoint, one, zero, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    cuts: Vec<Q>,
    at: Vec<bool>,
    gaps: Vec<bool>,
}

/// One maximal component of an [`IntervalSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn open(lo: Q, hi: Q) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn closed(lo: Q, hi: Q) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn point(t: Q) -> Self {
        Interval { lo: t.clone(), hi: t, lo_closed: true, hi_closed: true }
    }

    pub fn contains(&self, t: &Q) -> bool {
        (t > &self.lo || (self.lo_closed && t == &self.lo))
            && (t < &self.hi || (self.hi_closed && t == &self.hi))
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", fmt_q(&self.lo));
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            fmt_q(&self.lo),
            fmt_q(&self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { cuts: Vec::new(), at: Vec::new(), gaps: vec![false] }
    }

    /// The whole open interval `(0,1)`.
    pub fn full() -> Self {
        IntervalSet { cuts: Vec::new(), at: Vec::new(), gaps: vec![true] }
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty() && !self.gaps[0]
    }

    pub fn is_full(&self) -> bool {
        self.cuts.is_empty() && self.gaps[0]
    }

    pub fn cuts(&self) -> &[Q] {
        &self.cuts
    }

    /// Membership of the gap adjacent to parameter 0 (`first`) or 1.
    pub fn touches_start(&self) -> bool {
        self.gaps[0]
    }

    pub fn touches_end(&self) -> bool {
        *self.gaps.last().expect("at least one gap")
    }

    /// The interval intersected with `(0,1)`.
    pub fn from_interval(iv: &Interval) -> Self {
        let mut lo = iv.lo.clone();
        let mut hi = iv.hi.clone();
        let mut lc = iv.lo_closed;
        let mut hc = iv.hi_closed;
        if lo <= zero() {
            lo = zero();
            lc = false;
        }
        if hi >= one() {
            hi = one();
            hc = false;
        }
        let clipped = Interval { lo: lo.clone(), hi: hi.clone(), lo_closed: lc, hi_closed: hc };
        if clipped.is_empty() {
            return Self::empty();
        }
        if lo == hi {
            return IntervalSet { cuts: vec![lo], at: vec![true], gaps: vec![false, false] };
        }
        let mut cuts = Vec::new();
        let mut at = Vec::new();
        let mut gaps = vec![lo == zero()];
        if lo > zero() {
            cuts.push(lo);
            at.push(lc);
            gaps.push(true);
        }
        if hi < one() {
            cuts.push(hi);
            at.push(hc);
            gaps.push(false);
        }
        let mut s = IntervalSet { cuts, at, gaps };
        s.normalize();
        s
    }

    pub fn from_intervals<'a>(ivs: impl IntoIterator<Item = &'a Interval>) -> Self {
        ivs.into_iter()
            .fold(Self::empty(), |acc, iv| acc.union(&Self::from_interval(iv)))
    }

    pub fn point(t: Q) -> Self {
        Self::from_interval(&Interval::point(t))
    }

    pub fn contains(&self, t: &Q) -> bool {
        match self.cuts.binary_search(t) {
            Ok(i) => self.at[i],
            Err(i) => self.gaps[i],
        }
    }

    fn normalize(&mut self) {
        let mut cuts = Vec::with_capacity(self.cuts.len());
        let mut at = Vec::with_capacity(self.at.len());
        let mut gaps = vec![self.gaps[0]];
        for i in 0..self.cuts.len() {
            let left = *gaps.last().unwrap();
            let right = self.gaps[i + 1];
            if left == self.at[i] && right == self.at[i] {
                continue;
            }
            cuts.push(self.cuts[i].clone());
            at.push(self.at[i]);
            gaps.push(right);
        }
        self.cuts = cuts;
        self.at = at;
        self.gaps = gaps;
    }

    /// Pointwise combination of two sets under a Boolean operator.
    pub fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let mut cuts: Vec<Q> = Vec::with_capacity(self.cuts.len() + other.cuts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cuts.len() || j < other.cuts.len() {
            let next = match (self.cuts.get(i), other.cuts.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                    a.clone()
                }
                (Some(a), Some(b)) if a < b => {
                    i += 1;
                    a.clone()
                }
                (Some(_), Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (Some(a), None) => {
                    i += 1;
                    a.clone()
                }
                (None, Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (None, None) => unreachable!(),
            };
            cuts.push(next);
        }
        let at = cuts.iter().map(|c| op(self.contains(c), other.contains(c))).collect();
        let mut gaps = Vec::with_capacity(cuts.len() + 1);
        for k in 0..=cuts.len() {
            let lo = if k == 0 { zero() } else { cuts[k - 1].clone() };
            let hi = if k == cuts.len() { one() } else { cuts[k].clone() };
            let m = midpoint(&lo, &hi);
            gaps.push(op(self.contains(&m), other.contains(&m)));
        }
        let mut s = IntervalSet { cuts, at, gaps };
        s.normalize();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        IntervalSet {
            cuts: self.cuts.clone(),
            at: self.at.iter().map(|b| !b).collect(),
            gaps: self.gaps.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Closure inside `(0,1)`; the endpoints 0 and 1 are the caller's concern.
    pub fn closure(&self) -> Self {
        let at = (0..self.cuts.len())
            .map(|i| self.at[i] || self.gaps[i] || self.gaps[i + 1])
            .collect();
        let mut s = IntervalSet { cuts: self.cuts.clone(), at, gaps: self.gaps.clone() };
        s.normalize();
        s
    }

    /// Interior inside `(0,1)`.
    pub fn interior(&self) -> Self {
        let at = (0..self.cuts.len())
            .map(|i| self.at[i] && self.gaps[i] && self.gaps[i + 1])
            .collect();
        let mut s = IntervalSet { cuts: self.cuts.clone(), at, gaps: self.gaps.clone() };
        s.normalize();
        s
    }

    /// Maximal components in increasing order.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut current: Option<Interval> = None;
        if self.gaps[0] {
            current = Some(Interval {
                lo: zero(),
                hi: zero(),
                lo_closed: false,
                hi_closed: false,
            });
        }
        for i in 0..self.cuts.len() {
            let c = &self.cuts[i];
            let right = self.gaps[i + 1];
            match current.take() {
                Some(mut iv) => {
                    if self.at[i] && right {
                        current = Some(iv);
                    } else {
                        iv.hi = c.clone();
                        iv.hi_closed = self.at[i];
                        out.push(iv);
                        if right {
                            current = Some(Interval {
                                lo: c.clone(),
                                hi: c.clone(),
                                lo_closed: false,
                                hi_closed: false,
                            });
                        }
                    }
                }
                None => {
                    if right {
                        current = Some(Interval {
                            lo: c.clone(),
                            hi: c.clone(),
                            lo_closed: self.at[i],
                            hi_closed: false,
                        });
                    } else if self.at[i] {
                        out.push(Interval::point(c.clone()));
                    }
                }
            }
        }
        if let Some(mut iv) = current {
            iv.hi = one();
            iv.hi_closed = false;
            out.push(iv);
        }
        out
    }

    /// `{ a*t + b : t ∈ self ∩ (lo,hi) }`, assuming the open piece maps into `(0,1)`.
    pub fn push_affine(&self, lo: &Q, hi: &Q, a: &Q, b: &Q) -> Self {
        let window = self.intersection(&Self::from_interval(&Interval::open(lo.clone(), hi.clone())));
        let f = |t: &Q| a * t + b;
        let mapped: Vec<Interval> = window
            .intervals()
            .into_iter()
            .map(|iv| {
                let (x, y) = (f(&iv.lo), f(&iv.hi));
                if x <= y {
                    Interval { lo: x, hi: y, lo_closed: iv.lo_closed, hi_closed: iv.hi_closed }
                } else {
                    Interval { lo: y, hi: x, lo_closed: iv.hi_closed, hi_closed: iv.lo_closed }
                }
            })
            .collect();
        Self::from_intervals(&mapped)
    }

    /// `{ t ∈ (lo,hi) : a*t + b ∈ self }` for `a != 0`, assuming the open piece maps into `(0,1)`.
    pub fn pull_affine(&self, lo: &Q, hi: &Q, a: &Q, b: &Q) -> Self {
        let g = |v: &Q| (v - b) / a;
        let pulled: Vec<Interval> = self
            .intervals()
            .into_iter()
            .map(|iv| {
                let (x, y) = (g(&iv.lo), g(&iv.hi));
                if x <= y {
                    Interval { lo: x, hi: y, lo_closed: iv.lo_closed, hi_closed: iv.hi_closed }
                } else {
                    Interval { lo: y, hi: x, lo_closed: iv.hi_closed, hi_closed: iv.lo_closed }
                }
            })
            .collect();
        Self::from_intervals(&pulled)
            .intersection(&Self::from_interval(&Interval::open(lo.clone(), hi.clone())))
    }

    /// A point of every gap and every cut: enough samples to distinguish canonical sets.
    pub fn witness_points(&self) -> Vec<Q> {
        let mut pts = Vec::new();
        for k in 0..=self.cuts.len() {
            let lo = if k == 0 { zero() } else { self.cuts[k - 1].clone() };
            let hi = if k == self.cuts.len() { one() } else { self.cuts[k].clone() };
            pts.push(midpoint(&lo, &hi));
            if k < self.cuts.len() {
                pts.push(self.cuts[k].clone());
            }
        }
        pts.retain(is_between_open);
        pts
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals().iter().map(|i| i.to_string()).collect();
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", parts.join(" ∪ "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn iv(lo: Q, hi: Q, lc: bool, hc: bool) -> Interval {
        Interval { lo, hi, lo_closed: lc, hi_closed: hc }
    }

    #[test]
    fn canonical_merge_of_touching_intervals() {
        let a = IntervalSet::from_interval(&iv(q(1, 4), q(1, 2), true, true));
        let b = IntervalSet::from_interval(&iv(q(1, 2), q(3, 4), false, false));
        let u = a.union(&b);
        assert_eq!(u.intervals(), vec![iv(q(1, 4), q(3, 4), true, false)]);
        let open_a = IntervalSet::from_interval(&Interval::open(q(1, 4), q(1, 2)));
        let split = open_a.union(&b);
        assert_eq!(split.intervals().len(), 2);
    }

    #[test]
    fn complement_round_trip() {
        let a = IntervalSet::from_intervals(&[
            iv(q(1, 8), q(1, 4), false, true),
            Interval::point(q(1, 2)),
        ]);
        assert_eq!(a.complement().complement(), a);
        assert!(a.union(&a.complement()).is_full());
        assert!(a.intersection(&a.complement()).is_empty());
    }

    #[test]
    fn closure_and_interior() {
        let a = IntervalSet::from_intervals(&[
            Interval::open(q(1, 4), q(1, 2)),
            Interval::open(q(1, 2), q(3, 4)),
            Interval::point(q(7, 8)),
        ]);
        let cl = a.closure();
        assert_eq!(
            cl.intervals(),
            vec![Interval::closed(q(1, 4), q(3, 4)), Interval::point(q(7, 8))]
        );
        assert_eq!(
            a.interior().intervals(),
            vec![Interval::open(q(1, 4), q(1, 2)), Interval::open(q(1, 2), q(3, 4))]
        );
    }

    #[test]
    fn clipping_to_open_unit_interval() {
        let a = IntervalSet::from_interval(&Interval::closed(zero(), one()));
        assert!(a.is_full());
        assert!(IntervalSet::point(zero()).is_empty());
    }

    #[test]
    fn affine_push_and_pull() {
        let a = IntervalSet::from_interval(&iv(q(1, 4), q(1, 2), true, false));
        let pushed = a.push_affine(&zero(), &one(), &q(-1, 1), &one());
        assert_eq!(pushed.intervals(), vec![iv(q(1, 2), q(3, 4), false, true)]);
        let pulled = pushed.pull_affine(&zero(), &one(), &q(-1, 1), &one());
        assert_eq!(pulled, a);
        let half = a.push_affine(&zero(), &one(), &q(1, 2), &zero());
        assert_eq!(half.intervals(), vec![iv(q(1, 8), q(1, 4), true, false)]);
    }
}
