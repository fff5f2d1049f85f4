//! `phi(I) = (c_I - 1) / (1 - gamma)` and its clamped ceiling `sigma(I)`.
//!
//! [`WeightTable`] clears denominators once so that subset sums and ceilings
//! are integer operations. It uses `i128` whenever the common denominator is
//! small enough and falls back to big integers otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::linearization::Linearization;
use super::rational::Rational;
use super::subset::MarkedSubset;
use crate::error::{Error, Hyperplane, Result};
use crate::limits::Limits;

/// Where `c_I` falls relative to the piecewise definition of `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiClass {
    /// `c_I < 1`, so `sigma = 0`.
    Light,
    /// `c_I > c - 1`, so `sigma = d`.
    Heavy,
    /// `1 <= c_I <= c - 1`: `sigma = ceil(phi)`; `integral` means `phi` is an
    /// integer in `[0, d-1]`, i.e. the point lies on the wall `(I, ceil)`.
    Mid { ceil: u32, integral: bool },
}

impl PhiClass {
    pub fn sigma(self, d: u32) -> u32 {
        match self {
            PhiClass::Light => 0,
            PhiClass::Heavy => d,
            PhiClass::Mid { ceil, .. } => ceil,
        }
    }

    /// `Some(k)` when `phi` is the integer `k` in `[0, d-1]`.
    pub fn wall(self) -> Option<u32> {
        match self {
            PhiClass::Mid { ceil, integral: true } => Some(ceil),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
enum Scaled {
    Small { denom: i128, one_minus_gamma: i128, w: Vec<i128>, total: i128 },
    Big { denom: BigInt, one_minus_gamma: BigInt, w: Vec<BigInt>, total: BigInt },
}

/// Precomputed integer form of an interior linearization.
#[derive(Clone, Debug)]
pub struct WeightTable {
    d: u32,
    n: usize,
    symmetric: bool,
    scaled: Scaled,
}

fn ceil_div_i128(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

impl WeightTable {
    /// Requires an interior linearization.
    pub fn new(lin: &Linearization) -> Result<Self> {
        if !lin.is_interior() {
            return Err(Error::NotInterior);
        }
        let mut denom = lin.gamma().denom().clone();
        for w in lin.weights() {
            denom = denom.lcm(w.denom());
        }
        let scale = |r: &Rational| -> BigInt { r.numer() * (&denom / r.denom()) };
        let w: Vec<BigInt> = lin.weights().iter().map(scale).collect();
        let gamma = scale(lin.gamma());
        let total: BigInt = w.iter().sum();
        let one_minus_gamma = &denom - &gamma;
        let small = denom.bits() + 8 < 120 && total.bits() + 8 < 120;
        let scaled = if small {
            Scaled::Small {
                denom: denom.to_i128().unwrap(),
                one_minus_gamma: one_minus_gamma.to_i128().unwrap(),
                w: w.iter().map(|x| x.to_i128().unwrap()).collect(),
                total: total.to_i128().unwrap(),
            }
        } else {
            Scaled::Big { denom, one_minus_gamma, w, total }
        };
        Ok(WeightTable { d: lin.d(), n: lin.n(), symmetric: lin.is_symmetric(), scaled })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    fn classify_small(d: u32, denom: i128, omg: i128, total: i128, a: i128) -> PhiClass {
        if a < denom {
            PhiClass::Light
        } else if a > total - denom {
            PhiClass::Heavy
        } else {
            let num = a - denom;
            let c = ceil_div_i128(num, omg);
            let integral = num.rem_euclid(omg) == 0;
            debug_assert!(c >= 0 && c <= d as i128);
            PhiClass::Mid { ceil: c as u32, integral }
        }
    }

    fn classify_big(d: u32, denom: &BigInt, omg: &BigInt, total: &BigInt, a: &BigInt) -> PhiClass {
        if a < denom {
            PhiClass::Light
        } else if *a > total - denom {
            PhiClass::Heavy
        } else {
            let num = a - denom;
            let (q, r) = num.div_rem(omg);
            let ceil = if r.is_zero() { q.clone() } else { q + 1 };
            let c = ceil.to_u32().expect("ceiling is within [0, d]");
            debug_assert!(c <= d);
            PhiClass::Mid { ceil: c, integral: r.is_zero() }
        }
    }

    /// Classification of `phi(I)`.
    pub fn class(&self, subset: MarkedSubset) -> PhiClass {
        match &self.scaled {
            Scaled::Small { denom, one_minus_gamma, w, total } => {
                let mut a = 0i128;
                let mut bits = subset.bits();
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    a += w[i];
                    bits &= bits - 1;
                }
                Self::classify_small(self.d, *denom, *one_minus_gamma, *total, a)
            }
            Scaled::Big { denom, one_minus_gamma, w, total } => {
                let a: BigInt = subset.marks().map(|m| &w[m - 1]).sum();
                Self::classify_big(self.d, denom, one_minus_gamma, total, &a)
            }
        }
    }

    /// Classification of `phi` for any `size`-subset. Only meaningful for
    /// symmetric linearizations.
    pub fn class_by_size(&self, size: usize) -> PhiClass {
        assert!(self.symmetric, "size classes need symmetric weights");
        match &self.scaled {
            Scaled::Small { denom, one_minus_gamma, w, total } => {
                Self::classify_small(self.d, *denom, *one_minus_gamma, *total, w[0] * size as i128)
            }
            Scaled::Big { denom, one_minus_gamma, w, total } => {
                Self::classify_big(self.d, denom, one_minus_gamma, total, &(&w[0] * BigInt::from(size)))
            }
        }
    }

    pub fn sigma(&self, subset: MarkedSubset) -> u32 {
        self.class(subset).sigma(self.d)
    }

    pub fn sigma_by_size(&self, size: usize) -> u32 {
        self.class_by_size(size).sigma(self.d)
    }

    /// `Some(k)` when the point lies on the hyperplane `phi(I) = k`.
    pub fn wall_of(&self, subset: MarkedSubset) -> Option<u32> {
        self.class(subset).wall()
    }
}

/// `phi(I) = (c_I - 1) / (1 - gamma)`.
pub fn phi(subset: MarkedSubset, lin: &Linearization) -> Result<Rational> {
    let one = Rational::one();
    if *lin.gamma() == one {
        return Err(Error::GammaOne);
    }
    Ok((lin.subset_weight(subset) - &one) / (one - lin.gamma()))
}

/// `sigma(I)` on the interior region: 0 if `c_I < 1`, `d` if `c_I > c - 1`,
/// otherwise `ceil(phi(I))`.
pub fn sigma(subset: MarkedSubset, lin: &Linearization) -> Result<u32> {
    if !lin.is_interior() {
        return Err(Error::NotInterior);
    }
    let c_i = lin.subset_weight(subset);
    let one = Rational::one();
    if c_i < one {
        return Ok(0);
    }
    if c_i > lin.total_weight() - &one {
        return Ok(lin.d());
    }
    let p = phi(subset, lin)?;
    Ok(p.ceil().to_integer().to_u32().expect("sigma lies in [0, d]"))
}

/// Every hyperplane `phi(I, .) = k`, `k in [0, d-1]`, through `lin`.
///
/// Subsets are reported in canonical form only, since `(I, k)` and
/// `(I^c, d-1-k)` are the same hyperplane. Symmetric points report
/// cardinality classes.
pub fn wall_hits(lin: &Linearization, limits: &Limits) -> Result<Vec<Hyperplane>> {
    let table = WeightTable::new(lin)?;
    let n = lin.n();
    let mut hits = Vec::new();
    if table.is_symmetric() {
        for size in 1..n {
            if let Some(k) = table.class_by_size(size).wall() {
                // keep one representative of each complementary pair of classes
                if size < n - size || (size == n - size && k <= lin.d() - 1 - k) {
                    hits.push(Hyperplane::SizeClass { size, k });
                }
            }
        }
        return Ok(hits);
    }
    limits.check_subsets(n)?;
    for rest in 0..(1u64 << (n - 1)) {
        let subset = MarkedSubset(rest << 1 | 1);
        if subset.len() == n {
            continue;
        }
        if let Some(k) = table.wall_of(subset) {
            hits.push(Hyperplane::Subset { subset, k });
        }
    }
    Ok(hits)
}

/// True iff `phi(I)` is never an integer in `[0, d-1]` for nonempty proper `I`.
pub fn is_generic(lin: &Linearization, limits: &Limits) -> Result<bool> {
    Ok(wall_hits(lin, limits)?.is_empty())
}

pub(crate) fn require_generic(lin: &Linearization, limits: &Limits) -> Result<()> {
    let hits = wall_hits(lin, limits)?;
    if hits.is_empty() {
        Ok(())
    } else {
        Err(Error::OnWall { hyperplanes: hits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincore::rat;

    fn flip(gamma: Rational) -> Linearization {
        Linearization::symmetric(5, 19, gamma).unwrap()
    }

    #[test]
    fn phi_vanishes_at_unit_weight() {
        let l = Linearization::symmetric(9, 9, rat(1, 2)).unwrap();
        assert_eq!(phi(MarkedSubset::EMPTY, &l).unwrap(), rat(-2, 1));
        let l = Linearization::new(2, rat(1, 2), vec![rat(1, 2), rat(1, 2), rat(3, 4), rat(3, 4)]).unwrap();
        assert_eq!(phi(MarkedSubset::from_marks([1, 2]), &l).unwrap(), rat(0, 1));
    }

    #[test]
    fn phi_on_flip_wall_is_one() {
        let l = flip(rat(4, 9));
        for k in 1..19 {
            let expect = rat(2 * k as i64 - 9, 5);
            assert_eq!(phi(MarkedSubset::first(k), &l).unwrap(), expect, "k = {k}");
        }
    }

    #[test]
    fn phi_at_vgit_wall_eleven_sixteenths() {
        let l = Linearization::symmetric(9, 9, rat(11, 16)).unwrap();
        assert_eq!(phi(MarkedSubset::first(2), &l).unwrap(), rat(0, 1));
    }

    #[test]
    fn phi_errors_at_gamma_one() {
        let l = Linearization::symmetric(3, 4, rat(1, 1)).unwrap();
        assert!(matches!(phi(MarkedSubset::first(2), &l), Err(Error::GammaOne)));
    }

    #[test]
    fn sigma_extremes() {
        let l = flip(rat(4009, 9000));
        assert_eq!(sigma(MarkedSubset::EMPTY, &l).unwrap(), 0);
        assert_eq!(sigma(MarkedSubset::full(19), &l).unwrap(), 5);
    }

    #[test]
    fn phi_seven_just_past_the_wall() {
        let l = flip(rat(4, 9) + rat(1, 1000));
        assert_eq!(phi(MarkedSubset::first(7), &l).unwrap(), rat(94748, 94829));
    }

    #[test]
    fn table_agrees_with_direct_sigma() {
        let l = Linearization::new(
            3,
            rat(1, 3),
            vec![rat(1, 2), rat(2, 3), rat(3, 4), rat(7, 12), rat(5, 12), rat(5, 12)],
        )
        .unwrap();
        let t = WeightTable::new(&l).unwrap();
        for bits in 0..64u64 {
            let s = MarkedSubset(bits);
            assert_eq!(t.sigma(s), sigma(s, &l).unwrap(), "{s}");
        }
    }

    #[test]
    fn genericity_examples() {
        let lim = Limits::default();
        assert!(!is_generic(&flip(rat(4, 9)), &lim).unwrap());
        assert!(is_generic(&flip(rat(4, 9) + rat(1, 1000)), &lim).unwrap());
        let l = Linearization::symmetric(9, 9, rat(2, 5)).unwrap();
        assert!(is_generic(&l, &lim).unwrap());
    }

    #[test]
    fn flip_wall_hits_are_the_seven_class() {
        let hits = wall_hits(&flip(rat(4, 9)), &Limits::default()).unwrap();
        assert_eq!(hits, vec![Hyperplane::SizeClass { size: 7, k: 1 }]);
    }
}
