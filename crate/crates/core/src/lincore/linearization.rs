use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, in_open_unit, parse_rational, Rational};
use super::subset::MarkedSubset;
use crate::error::{Error, Result};

/// A point `(gamma, c_1, ..., c_n)` of the cross-section
/// `(d-1) gamma + sum c_i = d + 1` for fixed `(d, n)`.
///
/// Boundary points (some coordinate equal to 0 or 1) are representable;
/// [`Linearization::is_interior`] tells them apart from points of the open
/// region where most operations are defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Linearization {
    d: u32,
    gamma: Rational,
    weights: Vec<Rational>,
}

/// On-disk form: `d`, `n`, `gamma = "p/q"`, `weights = ["p/q", ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearizationRecord {
    pub d: u32,
    pub n: usize,
    pub gamma: String,
    pub weights: Vec<String>,
}

fn cross_section_residual(d: u32, gamma: &Rational, weights: &[Rational]) -> Rational {
    let lhs: Rational =
        Rational::from_integer(BigInt::from(d) - 1) * gamma + weights.iter().sum::<Rational>();
    lhs - Rational::from_integer(BigInt::from(d) + 1)
}

impl Linearization {
    /// Validates the cross-section identity exactly.
    pub fn new(d: u32, gamma: Rational, weights: Vec<Rational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("degree d must be at least 1"));
        }
        if weights.is_empty() || weights.len() > 64 {
            return Err(Error::invalid(format!(
                "number of marks must be in 1..=64, got {}",
                weights.len()
            )));
        }
        let residual = cross_section_residual(d, &gamma, &weights);
        if !residual.is_zero() {
            return Err(Error::CrossSection { residual });
        }
        Ok(Linearization { d, gamma, weights })
    }

    /// The symmetric point `c_i = (d + 1 - (d-1) gamma) / n` on the cross-section.
    pub fn symmetric(d: u32, n: usize, gamma: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        let total = Rational::from_integer(BigInt::from(d) + 1)
            - Rational::from_integer(BigInt::from(d) - 1) * &gamma;
        let c = total / Rational::from_integer(BigInt::from(n));
        Self::new(d, gamma, vec![c; n])
    }

    /// Solves the cross-section identity for `gamma`; needs `d >= 2`.
    pub fn from_weights(d: u32, weights: Vec<Rational>) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid("gamma is not determined by the weights when d = 1"));
        }
        let gamma = (Rational::from_integer(BigInt::from(d) + 1) - weights.iter().sum::<Rational>())
            / Rational::from_integer(BigInt::from(d) - 1);
        Self::new(d, gamma, weights)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `c_i` for a 1-based mark.
    pub fn weight(&self, mark: usize) -> &Rational {
        &self.weights[mark - 1]
    }

    /// `c = sum c_i`.
    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// `c_I`.
    pub fn subset_weight(&self, subset: MarkedSubset) -> Rational {
        subset.marks().map(|m| &self.weights[m - 1]).sum()
    }

    /// `0 < gamma < 1` and `0 < c_i < 1` for every mark.
    pub fn is_interior(&self) -> bool {
        in_open_unit(&self.gamma) && self.weights.iter().all(in_open_unit)
    }

    /// All coordinates in `[0, 1]`.
    pub fn in_closed_box(&self) -> bool {
        let one = Rational::one();
        let ok = |r: &Rational| !r.is_negative() && *r <= one;
        ok(&self.gamma) && self.weights.iter().all(ok)
    }

    /// The common weight, when all `c_i` are equal.
    pub fn symmetric_weight(&self) -> Option<&Rational> {
        let first = &self.weights[0];
        self.weights.iter().all(|w| w == first).then_some(first)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric_weight().is_some()
    }

    /// `(1 - t) self + t other`; stays on the cross-section because it is affine.
    pub fn interpolate(&self, other: &Linearization, t: &Rational) -> Result<Linearization> {
        if self.d != other.d || self.n() != other.n() {
            return Err(Error::invalid("interpolating linearizations of different (d, n)"));
        }
        let s = Rational::one() - t;
        let gamma = &s * &self.gamma + t * &other.gamma;
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| &s * a + t * b)
            .collect();
        Ok(Linearization { d: self.d, gamma, weights })
    }

    pub fn to_record(&self) -> LinearizationRecord {
        LinearizationRecord {
            d: self.d,
            n: self.n(),
            gamma: format_rational(&self.gamma),
            weights: self.weights.iter().map(format_rational).collect(),
        }
    }

    pub fn from_record(rec: &LinearizationRecord) -> Result<Self> {
        if rec.weights.len() != rec.n {
            return Err(Error::invalid(format!(
                "n = {} but {} weights were given",
                rec.n,
                rec.weights.len()
            )));
        }
        let gamma = parse_rational(&rec.gamma)?;
        let weights = rec.weights.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>>>()?;
        Self::new(rec.d, gamma, weights)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let rec: LinearizationRecord =
            toml::from_str(text).map_err(|e| Error::invalid(format!("linearization file: {e}")))?;
        Self::from_record(&rec)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.to_record()).expect("linearization record serializes")
    }
}
