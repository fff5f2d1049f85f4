use std::fmt;

use serde::Serialize;

use crate::error::{Error, Hyperplane, Result};
use crate::lincore::{Linearization, MarkedSubset, WeightTable};

/// Four nonempty blocks covering the marks; the F-curve of the stratum
/// whose spine carries four tails.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FCurvePartition {
    parts: [MarkedSubset; 4],
    n: usize,
}

impl FCurvePartition {
    pub fn new(parts: [MarkedSubset; 4], n: usize) -> Result<Self> {
        let mut union = MarkedSubset::EMPTY;
        for p in parts {
            if p.is_empty() {
                return Err(Error::invalid("F-curve blocks must be nonempty"));
            }
            if !union.is_disjoint(p) {
                return Err(Error::invalid("F-curve blocks must be disjoint"));
            }
            union = union.union(p);
        }
        if union != MarkedSubset::full(n) {
            return Err(Error::invalid(format!("F-curve blocks must cover 1..{n}")));
        }
        let mut parts = parts;
        parts.sort_by_key(|p| p.min_mark());
        Ok(FCurvePartition { parts, n })
    }

    /// Blocks of consecutive marks with the given sizes.
    pub fn from_sizes(sizes: [usize; 4]) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        let mut at = 1;
        let mut parts = [MarkedSubset::EMPTY; 4];
        for (p, &s) in parts.iter_mut().zip(&sizes) {
            *p = MarkedSubset::range(at, at + s - 1);
            at += s;
        }
        Self::new(parts, n)
    }

    pub fn parts(&self) -> &[MarkedSubset; 4] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl fmt::Display for FCurvePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.len().to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Sum of `sigma` over the four blocks. The spine has degree `d` minus this,
/// so the F-curve is contracted exactly when the sum is `d`.
pub fn fcurve_sigma_sum(p: &FCurvePartition, lin: &Linearization) -> Result<u32> {
    if p.n() != lin.n() {
        return Err(Error::invalid("partition and linearization have different n"));
    }
    let table = WeightTable::new(lin)?;
    let mut hits = Vec::new();
    let mut sum = 0;
    for &part in p.parts() {
        let class = table.class(part);
        if let Some(k) = class.wall() {
            hits.push(Hyperplane::Subset { subset: part, k });
        }
        sum += class.sigma(lin.d());
    }
    if !hits.is_empty() {
        return Err(Error::OnWall { hyperplanes: hits });
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincore::rat;

    #[test]
    fn flip_fcurves() {
        let plus = Linearization::symmetric(5, 19, rat(4, 9) + rat(1, 1000)).unwrap();
        let minus = Linearization::symmetric(5, 19, rat(4, 9) - rat(1, 1000)).unwrap();
        let a = FCurvePartition::from_sizes([12, 5, 1, 1]).unwrap();
        let b = FCurvePartition::from_sizes([10, 7, 1, 1]).unwrap();
        assert_eq!(fcurve_sigma_sum(&a, &plus).unwrap(), 5);
        assert_eq!(fcurve_sigma_sum(&b, &plus).unwrap(), 4);
        assert_eq!(fcurve_sigma_sum(&a, &minus).unwrap(), 4);
        assert_eq!(fcurve_sigma_sum(&b, &minus).unwrap(), 5);
    }

    #[test]
    fn rejects_bad_covers() {
        let p = [MarkedSubset::first(2), MarkedSubset::from_marks([3]), MarkedSubset::from_marks([4]), MarkedSubset::EMPTY];
        assert!(FCurvePartition::new(p, 4).is_err());
    }
}
