//! GIT walls `phi(I, .) = k` of the open region, chamber signatures and
//! segment scans.

mod chamber;
mod scan;

pub use chamber::{same_chamber, signature, ChamberSignature};
pub use scan::{segment_scan, CrossingEvent};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Hyperplane, Result};
use crate::limits::Limits;
use crate::lincore::{phi, rat, wall_hits, Linearization, MarkedSubset, Rational};

/// The hyperplane `phi(I, .) = k`, presented by a particular `(I, k)`.
///
/// `(I, k)` and `(I^c, d-1-k)` are the same hyperplane. The presentation
/// still matters for orientation: the `+` side is where `phi(I) > k`.
/// [`Wall::canonical`] picks the presentation whose subset contains mark 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Wall {
    subset: MarkedSubset,
    k: u32,
    d: u32,
    n: usize,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.subset, self.k)
    }
}

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

impl Wall {
    pub fn new(subset: MarkedSubset, k: u32, d: u32, n: usize) -> Result<Self> {
        if d == 0 || n == 0 || n > 64 {
            return Err(Error::invalid(format!("bad (d, n) = ({d}, {n})")));
        }
        if !subset.is_proper(n) || !subset.is_subset_of(MarkedSubset::full(n)) {
            return Err(Error::invalid(format!("wall subset {subset} must be a nonempty proper subset of 1..{n}")));
        }
        if k >= d {
            return Err(Error::invalid(format!("wall index k = {k} must lie in 0..={}", d - 1)));
        }
        Ok(Wall { subset, k, d, n })
    }

    /// The wall through `(I, k)` in its canonical presentation.
    pub fn canonical_of(subset: MarkedSubset, k: u32, d: u32, n: usize) -> Result<Self> {
        Ok(Self::new(subset, k, d, n)?.canonical())
    }

    /// Representative `(I_size, k)` of a cardinality class.
    pub fn from_hyperplane(h: &Hyperplane, d: u32, n: usize) -> Result<Self> {
        match *h {
            Hyperplane::Subset { subset, k } => Self::new(subset, k, d, n),
            Hyperplane::SizeClass { size, k } => Self::new(MarkedSubset::first(size), k, d, n),
        }
    }

    pub fn subset(&self) -> MarkedSubset {
        self.subset
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.subset.len()
    }

    /// The same hyperplane presented as `(I^c, d-1-k)`.
    pub fn complement(&self) -> Wall {
        Wall { subset: self.subset.complement(self.n), k: self.d - 1 - self.k, d: self.d, n: self.n }
    }

    pub fn canonical(&self) -> Wall {
        if self.subset.is_canonical() {
            *self
        } else {
            self.complement()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.subset.is_canonical()
    }

    pub fn same_hyperplane(&self, other: &Wall) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn hyperplane(&self) -> Hyperplane {
        let c = self.canonical();
        Hyperplane::Subset { subset: c.subset, k: c.k }
    }

    /// `phi(I, L) - k`; positive on the `+` side.
    pub fn offset(&self, lin: &Linearization) -> Result<Rational> {
        self.check_dims(lin)?;
        Ok(phi(self.subset, lin)? - int(self.k as i64))
    }

    pub fn side(&self, lin: &Linearization) -> Result<Ordering> {
        Ok(self.offset(lin)?.cmp(&Rational::zero()))
    }

    pub fn contains(&self, lin: &Linearization) -> Result<bool> {
        Ok(self.side(lin)? == Ordering::Equal)
    }

    fn check_dims(&self, lin: &Linearization) -> Result<()> {
        if lin.d() != self.d || lin.n() != self.n {
            return Err(Error::invalid(format!(
                "wall is for (d, n) = ({}, {}) but the linearization has ({}, {})",
                self.d,
                self.n,
                lin.d(),
                lin.n()
            )));
        }
        Ok(())
    }

    /// Open interval of `gamma` over which the hyperplane meets the open
    /// region, or `None` when it misses it.
    pub fn gamma_interval(&self) -> Option<(Rational, Rational)> {
        gamma_interval(self.d, self.n, self.size(), self.k)
    }

    pub fn is_feasible(&self) -> bool {
        self.gamma_interval().is_some()
    }

    /// A point of the open region on this wall: `gamma` at the middle of the
    /// feasible interval, `c_I = 1 + k(1 - gamma)` spread evenly over `I` and
    /// the remaining weight spread evenly over `I^c`.
    pub fn witness(&self) -> Option<Linearization> {
        let (lo, hi) = self.gamma_interval()?;
        let gamma = (lo + hi) / int(2);
        Some(self.point_at(gamma))
    }

    /// The evenly split point of the wall at a given `gamma`. Not checked for
    /// interiority.
    fn point_at(&self, gamma: Rational) -> Linearization {
        let one = Rational::one();
        let d = self.d as i64;
        let m = self.size();
        let c_i = &one + int(self.k as i64) * (&one - &gamma);
        let rest = int(d + 1) - int(d - 1) * &gamma - &c_i;
        let in_i = c_i / int(m as i64);
        let out_i = rest / int((self.n - m) as i64);
        let weights = (1..=self.n)
            .map(|i| if self.subset.contains(i) { in_i.clone() } else { out_i.clone() })
            .collect();
        Linearization::new(self.d, gamma, weights).expect("wall point lies on the cross-section")
    }

    /// A point on this wall and on no other hyperplane `phi(J, .) = k'`.
    pub fn generic_witness(&self, limits: &Limits) -> Result<Linearization> {
        let base = self
            .witness()
            .ok_or_else(|| Error::invalid(format!("wall {self} does not meet the open region")))?;
        self.generic_witness_near(&base, limits)
    }

    /// Perturbs `base` (a point of this wall) inside the wall until it lies on
    /// no other hyperplane. The perturbation moves weight within `I` and
    /// within `I^c` only, so `gamma` and `c_I` are unchanged.
    pub fn generic_witness_near(&self, base: &Linearization, limits: &Limits) -> Result<Linearization> {
        if !self.contains(base)? {
            return Err(Error::NotOnWall(self.hyperplane()));
        }
        if !base.is_interior() {
            return Err(Error::NotInterior);
        }
        limits.check_subsets(self.n)?;
        if self.is_alone(base, limits)? {
            return Ok(base.clone());
        }
        let margin = base
            .weights()
            .iter()
            .map(|c| c.clone().min(Rational::one() - c))
            .min()
            .expect("at least one mark");
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED ^ self.subset.bits());
        const SPREAD: i64 = 1_000_000_000_000;
        let mut scale = Rational::one();
        while &scale * int(4 * SPREAD) >= margin {
            scale = scale / int(10);
        }
        // most draws work the first time; later tries shrink the step in case
        // a coarse one happens to land on a hyperplane
        for attempt in 0..64 {
            let step = &scale / int(1 << (attempt / 8));
            let mut delta: Vec<Rational> = vec![Rational::zero(); self.n];
            for part in [self.subset, self.subset.complement(self.n)] {
                let marks = part.to_vec();
                if marks.len() < 2 {
                    continue;
                }
                let mut sum = 0i64;
                for &m in &marks[1..] {
                    let r = rng.gen_range(-SPREAD..=SPREAD);
                    sum += r;
                    delta[m - 1] = int(r) * &step;
                }
                delta[marks[0] - 1] = int(-sum) * &step;
            }
            let weights = base.weights().iter().zip(&delta).map(|(c, e)| c + e).collect();
            let cand = Linearization::new(self.d, base.gamma().clone(), weights)?;
            if cand.is_interior() && self.is_alone(&cand, limits)? {
                return Ok(cand);
            }
        }
        Err(Error::invalid(format!("could not isolate wall {self} near the given point")))
    }

    /// True iff this is the only hyperplane through `lin`, checked subset by
    /// subset.
    pub fn is_alone(&self, lin: &Linearization, limits: &Limits) -> Result<bool> {
        let hits = subset_hits(lin, limits)?;
        Ok(hits.len() == 1 && hits[0] == self.hyperplane())
    }

    /// A nearby point on the `+` (`Greater`) or `-` (`Less`) side, strictly
    /// closer to the wall than any other hyperplane. Moves weight between `I`
    /// and `I^c` at fixed `gamma`.
    pub fn nudge(&self, lin: &Linearization, side: Ordering, limits: &Limits) -> Result<Linearization> {
        if side == Ordering::Equal {
            return Err(Error::invalid("nudge needs a side"));
        }
        if !self.contains(lin)? {
            return Err(Error::NotOnWall(self.hyperplane()));
        }
        let m = self.size() as i64;
        let rest = (self.n - self.size()) as i64;
        let margin = lin
            .weights()
            .iter()
            .map(|c| c.clone().min(Rational::one() - c))
            .min()
            .expect("at least one mark");
        let sign = if side == Ordering::Greater { int(1) } else { int(-1) };
        let t_max = margin * &sign / int(2);
        let target = Linearization::new(
            self.d,
            lin.gamma().clone(),
            (1..=self.n)
                .map(|i| {
                    let c = lin.weight(i);
                    if self.subset.contains(i) {
                        c + &t_max / int(m)
                    } else {
                        c - &t_max / int(rest)
                    }
                })
                .collect(),
        )?;
        let events = segment_scan_raw(lin, &target, limits)?;
        let t = match events.iter().find(|e| e.t > Rational::zero()) {
            Some(e) => e.t.clone() / int(2),
            None => Rational::one(),
        };
        lin.interpolate(&target, &t)
    }
}

pub(crate) fn subset_hits(lin: &Linearization, limits: &Limits) -> Result<Vec<Hyperplane>> {
    if lin.is_symmetric() {
        // expand the class list into explicit canonical subsets
        let classes = wall_hits(lin, limits)?;
        if classes.is_empty() {
            return Ok(vec![]);
        }
        limits.check_subsets(lin.n())?;
        let n = lin.n();
        let mut out = Vec::new();
        for rest in 0..(1u64 << (n - 1)) {
            let s = MarkedSubset(rest << 1 | 1);
            if s.len() == n {
                continue;
            }
            for h in &classes {
                if let Hyperplane::SizeClass { size, k } = *h {
                    if s.len() == size {
                        out.push(Hyperplane::Subset { subset: s, k });
                    } else if s.len() == n - size && size != n - size {
                        out.push(Hyperplane::Subset { subset: s, k: lin.d() - 1 - k });
                    } else if s.len() == n - size {
                        out.push(Hyperplane::Subset { subset: s, k });
                    }
                }
            }
        }
        out.sort_by_key(|h| match h {
            Hyperplane::Subset { subset, k } => (subset.bits(), *k),
            Hyperplane::SizeClass { size, k } => (*size as u64, *k),
        });
        out.dedup();
        return Ok(out);
    }
    wall_hits(lin, limits)
}

pub(crate) use scan::segment_scan_raw;

/// Open `gamma` interval where `phi(I) = k` meets the open region, for
/// `|I| = m`.
pub fn gamma_interval(d: u32, n: usize, m: usize, k: u32) -> Option<(Rational, Rational)> {
    if m == 0 || m >= n || k >= d {
        return None;
    }
    let (d, n, m, k) = (d as i64, n as i64, m as i64, k as i64);
    let mut lo = Rational::zero();
    // c_I = 1 + k(1 - gamma) < m
    if k > 0 {
        lo = lo.max(rat(1 + k - m, k));
    } else if m < 2 {
        return None;
    }
    // c_{I^c} = (d - k) - (d - 1 - k) gamma < n - m
    if d - 1 - k > 0 {
        lo = lo.max(rat(d - k - n + m, d - 1 - k));
    } else if n - m < 2 {
        return None;
    }
    let hi = Rational::one();
    (lo < hi).then_some((lo, hi))
}

/// All walls of the open region for `(d, n)`, canonically presented, sorted
/// by subset and then `k`.
pub fn enumerate_walls(d: u32, n: usize, limits: &Limits) -> Result<Vec<Wall>> {
    check_dn(d, n)?;
    limits.check_subsets(n)?;
    let feasible: Vec<Vec<u32>> =
        (0..=n).map(|m| (0..d).filter(|&k| gamma_interval(d, n, m, k).is_some()).collect()).collect();
    let mut out = Vec::new();
    for rest in 0..(1u64 << (n - 1)) {
        let subset = MarkedSubset(rest << 1 | 1);
        let m = subset.len();
        if m == n {
            continue;
        }
        for &k in &feasible[m] {
            out.push(Wall { subset, k, d, n });
        }
    }
    out.sort();
    Ok(out)
}

/// Feasible cardinality classes `(m, k)`, one per complementary pair.
pub fn enumerate_wall_classes(d: u32, n: usize) -> Result<Vec<(usize, u32)>> {
    check_dn(d, n)?;
    let mut out = Vec::new();
    for m in 1..n {
        for k in 0..d {
            let keep = m < n - m || (m == n - m && k <= d - 1 - k);
            if keep && gamma_interval(d, n, m, k).is_some() {
                out.push((m, k));
            }
        }
    }
    Ok(out)
}

/// Where the class `(m, k)` meets the symmetric line
/// `c_i = (d + 1 - (d-1) gamma) / n` inside the open region.
pub fn symmetric_crossing(d: u32, n: usize, m: usize, k: u32) -> Option<Rational> {
    let (di, ni, mi, ki) = (d as i64, n as i64, m as i64, k as i64);
    let den = ni * ki - mi * (di - 1);
    if den == 0 {
        return None;
    }
    let gamma = rat(ni * (ki + 1) - mi * (di + 1), den);
    let lin = Linearization::symmetric(d, n, gamma.clone()).ok()?;
    lin.is_interior().then_some(gamma)
}

fn check_dn(d: u32, n: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if !(4..=64).contains(&n) {
        return Err(Error::invalid(format!("n must be in 4..=64, got {n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_n4_has_the_three_pair_walls() {
        let walls = enumerate_walls(1, 4, &Limits::default()).unwrap();
        let subsets: Vec<Vec<usize>> = walls.iter().map(|w| w.subset().to_vec()).collect();
        assert_eq!(subsets, vec![vec![1, 2], vec![1, 3], vec![1, 4]]);
        assert!(walls.iter().all(|w| w.k() == 0));
    }

    #[test]
    fn complement_identification() {
        let w = Wall::new(MarkedSubset::range(8, 19), 3, 5, 19).unwrap();
        let c = w.canonical();
        assert_eq!(c.subset(), MarkedSubset::first(7));
        assert_eq!(c.k(), 1);
        assert!(w.same_hyperplane(&c));
        assert_eq!(c.complement().complement(), c);
    }

    #[test]
    fn symmetric_slice_crossings_of_nine_nine() {
        let cases = [(2, 0, rat(11, 16)), (3, 0, rat(7, 8)), (4, 0, rat(31, 32)), (3, 2, rat(1, 2)), (2, 1, rat(2, 7))];
        for (m, k, g) in cases {
            assert_eq!(symmetric_crossing(9, 9, m, k), Some(g), "({m}, {k})");
        }
        assert_eq!(symmetric_crossing(9, 9, 4, 1), Some(rat(22, 23)));
        assert_eq!(symmetric_crossing(9, 9, 4, 2), Some(rat(13, 14)));
    }

    #[test]
    fn witnesses_lie_on_their_walls() {
        let lim = Limits::default();
        for w in enumerate_walls(3, 6, &lim).unwrap() {
            let p = w.witness().unwrap();
            assert!(p.is_interior(), "{w}");
            assert!(w.contains(&p).unwrap(), "{w}");
            let g = w.generic_witness(&lim).unwrap();
            assert!(w.is_alone(&g, &lim).unwrap(), "{w}");
        }
    }

    #[test]
    fn flip_wall_isolated_near_symmetric_point() {
        let lim = Limits::default();
        let w = Wall::new(MarkedSubset::first(7), 1, 5, 19).unwrap();
        let base = Linearization::symmetric(5, 19, rat(4, 9)).unwrap();
        let g = w.generic_witness_near(&base, &lim).unwrap();
        assert_eq!(g.gamma(), &rat(4, 9));
        assert!(w.is_alone(&g, &lim).unwrap());
        let plus = w.nudge(&g, Ordering::Greater, &lim).unwrap();
        assert_eq!(w.side(&plus).unwrap(), Ordering::Greater);
        assert!(crate::lincore::is_generic(&plus, &lim).unwrap());
    }
}
