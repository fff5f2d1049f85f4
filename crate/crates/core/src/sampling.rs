//! Random rational points of the open region, for searches and property
//! tests.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::{is_generic, Linearization, Rational};

const DENOM: i64 = 1009;
const TRIES: usize = 1000;

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Total weight `d + 1 - (d-1) gamma`.
fn total(d: u32, gamma: &Rational) -> Rational {
    int(d as i64 + 1) - int(d as i64 - 1) * gamma
}

/// A uniform-ish point of `(lo, hi)` with denominator dividing `DENOM` times
/// that of the ends.
fn between(rng: &mut impl Rng, lo: &Rational, hi: &Rational) -> Rational {
    let p = rng.gen_range(1..DENOM);
    lo + (hi - lo) * Rational::new(p.into(), DENOM.into())
}

/// Positive weights summing to `sum`, each below `cap`, or `None` when the
/// draw overshoots.
fn split(rng: &mut impl Rng, n: usize, sum: &Rational, cap: &Rational) -> Option<Vec<Rational>> {
    if *sum <= Rational::zero() {
        return None;
    }
    let u: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
    let s: i64 = u.iter().sum();
    let out: Vec<Rational> = u.iter().map(|&x| sum * Rational::new(x.into(), s.into())).collect();
    out.iter().all(|c| c < cap).then_some(out)
}

/// Weights in `(0, 1)` with the given sum: drawn directly when the sum is at
/// most `n/2`, as `1 - small` otherwise.
fn weights(rng: &mut impl Rng, n: usize, sum: &Rational) -> Option<Vec<Rational>> {
    let one = Rational::one();
    if sum * int(2) <= int(n as i64) {
        split(rng, n, sum, &one)
    } else {
        let rest = int(n as i64) - sum;
        split(rng, n, &rest, &one).map(|v| v.into_iter().map(|x| &one - x).collect())
    }
}

/// Smallest `gamma` keeping the total weight below `n`.
fn gamma_floor(d: u32, n: usize) -> Rational {
    if d <= 1 {
        return Rational::zero();
    }
    let lo = Rational::new(BigInt::from(d as i64 + 1 - n as i64), BigInt::from(d as i64 - 1));
    lo.max(Rational::zero())
}

/// A random interior linearization, not necessarily generic.
pub fn random_interior(d: u32, n: usize, rng: &mut impl Rng) -> Result<Linearization> {
    let lo = gamma_floor(d, n);
    for _ in 0..TRIES {
        let gamma = between(rng, &lo, &Rational::one());
        if let Some(c) = weights(rng, n, &total(d, &gamma)) {
            return Linearization::new(d, gamma, c);
        }
    }
    Err(Error::invalid(format!("no interior point found for (d, n) = ({d}, {n})")))
}

/// A random generic linearization.
pub fn random_generic(d: u32, n: usize, rng: &mut impl Rng, limits: &Limits) -> Result<Linearization> {
    for _ in 0..TRIES {
        let l = random_interior(d, n, rng)?;
        if is_generic(&l, limits)? {
            return Ok(l);
        }
    }
    Err(Error::invalid(format!("no generic point found for (d, n) = ({d}, {n})")))
}

/// A random generic point with `gamma > max(1/2, 1 - c_i)`.
pub fn random_hassett(d: u32, n: usize, rng: &mut impl Rng, limits: &Limits) -> Result<Linearization> {
    let half = Rational::new(1.into(), 2.into());
    let lo = gamma_floor(d, n).max(half);
    for _ in 0..TRIES {
        let gamma = between(rng, &lo, &Rational::one());
        let base = Rational::one() - &gamma;
        let extra = total(d, &gamma) - &base * int(n as i64);
        let Some(e) = split(rng, n, &extra, &gamma) else { continue };
        let l = Linearization::new(d, gamma, e.into_iter().map(|x| &base + x).collect())?;
        if is_generic(&l, limits)? {
            return Ok(l);
        }
    }
    Err(Error::invalid(format!("no Hassett-regime point found for (d, n) = ({d}, {n})")))
}

/// True iff `gamma > max(1/2, 1 - c_i)` for every mark.
pub fn in_hassett_regime(lin: &Linearization) -> bool {
    let one = Rational::one();
    let g = lin.gamma();
    g * int(2) > one && lin.weights().iter().all(|c| g > &(&one - c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_interior_and_generic() {
        let lim = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (d, n) in [(1, 4), (2, 5), (3, 6), (5, 9), (9, 9)] {
            for _ in 0..20 {
                let l = random_generic(d, n, &mut rng, &lim).unwrap();
                assert!(l.is_interior());
                assert!(is_generic(&l, &lim).unwrap());
            }
        }
    }

    #[test]
    fn hassett_samples_satisfy_the_bound() {
        let lim = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (d, n) in [(3, 5), (4, 6), (5, 7)] {
            for _ in 0..20 {
                let l = random_hassett(d, n, &mut rng, &lim).unwrap();
                assert!(l.is_interior() && in_hassett_regime(&l));
            }
        }
    }
}
