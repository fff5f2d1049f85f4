use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Wall;
use crate::error::{Error, Hyperplane, Result};
use crate::limits::Limits;
use crate::lincore::{format_rational, wall_hits, Linearization, MarkedSubset, Rational};

/// Hyperplanes crossed at one parameter value of a segment scan.
#[derive(Clone, Debug)]
pub struct CrossingEvent {
    /// Position along the segment, in `(0, 1)`.
    pub t: Rational,
    pub point: Linearization,
    /// Canonical subsets, or cardinality classes when the segment is symmetric.
    pub hyperplanes: Vec<Hyperplane>,
}

impl CrossingEvent {
    pub fn gamma(&self) -> &Rational {
        self.point.gamma()
    }

    /// One canonical wall per hyperplane; a class is represented by `I_m`.
    pub fn walls(&self) -> Vec<Wall> {
        let (d, n) = (self.point.d(), self.point.n());
        self.hyperplanes
            .iter()
            .map(|h| Wall::from_hyperplane(h, d, n).expect("scan emits valid hyperplanes"))
            .collect()
    }
}

#[derive(Serialize)]
struct EventRecord {
    t: String,
    gamma: String,
    walls: Vec<(Vec<usize>, u32)>,
    class: bool,
}

impl Serialize for CrossingEvent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EventRecord {
            t: format_rational(&self.t),
            gamma: format_rational(self.gamma()),
            walls: self.walls().iter().map(|w| (w.subset().to_vec(), w.k())).collect(),
            class: matches!(self.hyperplanes.first(), Some(Hyperplane::SizeClass { .. })),
        }
        .serialize(s)
    }
}

/// Every hyperplane crossing of the segment `(1-t) L0 + t L1`, `0 < t < 1`,
/// sorted by `t`. Simultaneous crossings share one event.
pub fn segment_scan(from: &Linearization, to: &Linearization, limits: &Limits) -> Result<Vec<CrossingEvent>> {
    for end in [from, to] {
        let hits = wall_hits(end, limits)?;
        if !hits.is_empty() {
            return Err(Error::OnWall { hyperplanes: hits });
        }
    }
    let mut events = segment_scan_raw(from, to, limits)?;
    events.retain(|e| e.t < Rational::from_integer(1.into()));
    Ok(events)
}

/// As [`segment_scan`] without the endpoint checks; reports `t` in `(0, 1]`
/// and skips hyperplanes containing the whole segment.
pub(crate) fn segment_scan_raw(
    from: &Linearization,
    to: &Linearization,
    limits: &Limits,
) -> Result<Vec<CrossingEvent>> {
    if from.d() != to.d() || from.n() != to.n() {
        return Err(Error::invalid("segment endpoints have different (d, n)"));
    }
    if !from.is_interior() || !to.is_interior() {
        return Err(Error::NotInterior);
    }
    let symmetric = from.is_symmetric() && to.is_symmetric();
    if !symmetric {
        limits.check_subsets(from.n())?;
    }
    let scaled = Scaled::new(from, to);
    let raw = match scaled.small() {
        Some(s) => s.roots(symmetric),
        None => scaled.roots(symmetric),
    };
    let mut raw: Vec<(Rational, Hyperplane)> = raw;
    raw.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| hyper_key(&a.1).cmp(&hyper_key(&b.1))));
    let mut events: Vec<CrossingEvent> = Vec::new();
    for (t, h) in raw {
        match events.last_mut() {
            Some(e) if e.t == t => e.hyperplanes.push(h),
            _ => events.push(CrossingEvent { point: from.interpolate(to, &t)?, t, hyperplanes: vec![h] }),
        }
    }
    Ok(events)
}

fn hyper_key(h: &Hyperplane) -> (u64, u32) {
    match *h {
        Hyperplane::Subset { subset, k } => (subset.bits(), k),
        Hyperplane::SizeClass { size, k } => (size as u64, k),
    }
}

/// Both endpoints over one common denominator.
struct Scaled<T> {
    d: u32,
    denom: T,
    g0: T,
    g1: T,
    w0: Vec<T>,
    w1: Vec<T>,
}

impl Scaled<BigInt> {
    fn new(a: &Linearization, b: &Linearization) -> Self {
        let mut denom = a.gamma().denom().lcm(b.gamma().denom());
        for w in a.weights().iter().chain(b.weights()) {
            denom = denom.lcm(w.denom());
        }
        let s = |r: &Rational| r.numer() * (&denom / r.denom());
        Scaled {
            d: a.d(),
            g0: s(a.gamma()),
            g1: s(b.gamma()),
            w0: a.weights().iter().map(s).collect(),
            w1: b.weights().iter().map(s).collect(),
            denom: denom.clone(),
        }
    }

    fn small(&self) -> Option<Scaled<i128>> {
        // sums over at most 64 marks times k <= d must stay far from overflow
        let limit = 100 - (self.d.max(1) as u64).ilog2() as u64;
        let fits = |x: &BigInt| x.bits() <= limit;
        if !(fits(&self.denom) && fits(&self.g0) && fits(&self.g1)) {
            return None;
        }
        if !self.w0.iter().chain(&self.w1).all(fits) {
            return None;
        }
        let c = |x: &BigInt| x.to_i128().expect("fits");
        Some(Scaled {
            d: self.d,
            denom: c(&self.denom),
            g0: c(&self.g0),
            g1: c(&self.g1),
            w0: self.w0.iter().map(c).collect(),
            w1: self.w1.iter().map(c).collect(),
        })
    }
}

trait Int: Clone + Ord + Signed + Zero + Into<BigInt> + From<i64> {}
impl Int for i128 {}
impl Int for BigInt {}

impl<T: Int> Scaled<T> {
    /// Root in `(0, 1]` of `a + b t`, if any.
    fn root(a: T, b: T) -> Option<Rational> {
        if b.is_zero() || a.is_zero() || a.is_positive() == b.is_positive() || a.abs() > b.abs() {
            return None;
        }
        Some(Rational::new(-(a.into()), b.into()))
    }

    fn roots_for(&self, s0: &T, s1: &T) -> impl Iterator<Item = (u32, Rational)> + '_ {
        let a_base = s0.clone() - self.denom.clone();
        let b_base = s1.clone() - s0.clone();
        let one_minus_g0 = self.denom.clone() - self.g0.clone();
        let dg = self.g1.clone() - self.g0.clone();
        (0..self.d).filter_map(move |k| {
            let kt = T::from(k as i64);
            let a = a_base.clone() - kt.clone() * one_minus_g0.clone();
            let b = b_base.clone() + kt * dg.clone();
            Self::root(a, b).map(|t| (k, t))
        })
    }

    fn roots(&self, symmetric: bool) -> Vec<(Rational, Hyperplane)> {
        let n = self.w0.len();
        let d = self.d;
        let mut out = Vec::new();
        if symmetric {
            for m in 1..n {
                let mt = T::from(m as i64);
                let s0 = mt.clone() * self.w0[0].clone();
                let s1 = mt * self.w1[0].clone();
                for (k, t) in self.roots_for(&s0, &s1) {
                    if m < n - m || (m == n - m && k <= d - 1 - k) {
                        out.push((t, Hyperplane::SizeClass { size: m, k }));
                    }
                }
            }
            return out;
        }
        let half = 1usize << (n - 1);
        let mut s0: Vec<T> = Vec::with_capacity(half);
        let mut s1: Vec<T> = Vec::with_capacity(half);
        s0.push(self.w0[0].clone());
        s1.push(self.w1[0].clone());
        for r in 1..half {
            let low = r.trailing_zeros() as usize + 1;
            let prev = r & (r - 1);
            s0.push(s0[prev].clone() + self.w0[low].clone());
            s1.push(s1[prev].clone() + self.w1[low].clone());
        }
        for r in 0..half {
            if r == half - 1 {
                continue;
            }
            let subset = MarkedSubset((r as u64) << 1 | 1);
            for (k, t) in self.roots_for(&s0[r], &s1[r]) {
                out.push((t, Hyperplane::Subset { subset, k }));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincore::rat;

    #[test]
    fn empty_segment() {
        let l = Linearization::symmetric(9, 9, rat(3, 10)).unwrap();
        assert!(segment_scan(&l, &l, &Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn flip_segment_has_one_event() {
        let a = Linearization::symmetric(5, 19, rat(4, 9) - rat(1, 100)).unwrap();
        let b = Linearization::symmetric(5, 19, rat(4, 9) + rat(1, 100)).unwrap();
        let ev = segment_scan(&a, &b, &Limits::default()).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].gamma(), &rat(4, 9));
        assert_eq!(ev[0].hyperplanes, vec![Hyperplane::SizeClass { size: 7, k: 1 }]);
    }

    #[test]
    fn nonsymmetric_scan_matches_symmetric_classes() {
        // a symmetric segment scanned subset by subset gives every member of
        // each class at the same t
        let a = Linearization::symmetric(4, 6, rat(1, 5)).unwrap();
        let b = Linearization::symmetric(4, 6, rat(9, 10)).unwrap();
        let lim = Limits::default();
        let classes = segment_scan(&a, &b, &lim).unwrap();
        let scaled = Scaled::new(&a, &b);
        let raw = scaled.roots(false);
        for e in &classes {
            let at_t = raw.iter().filter(|(t, _)| *t == e.t).count();
            let expect: usize = e
                .hyperplanes
                .iter()
                .map(|h| match *h {
                    Hyperplane::SizeClass { size, k } => {
                        // canonical subsets of the class and of its complement class
                        let choose = |m: usize| (0..(1u64 << 5)).filter(|r| (r.count_ones() + 1) as usize == m).count();
                        if size == 6 - size && k == 4 - 1 - k {
                            choose(size)
                        } else {
                            choose(size) + choose(6 - size)
                        }
                    }
                    _ => unreachable!(),
                })
                .sum();
            assert_eq!(at_t, expect, "t = {}", e.t);
        }
    }
}
