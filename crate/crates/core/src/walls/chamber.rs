use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::{wall_hits, Linearization, MarkedSubset, WeightTable};

/// The values `sigma(I)` at a generic linearization, which pin down its
/// chamber.
///
/// Only canonical subsets (those containing mark 1) are stored;
/// `sigma(I^c) = d - sigma(I)` gives the rest. Symmetric points store one
/// value per cardinality.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "layout", rename_all = "snake_case")]
pub enum ChamberSignature {
    /// `by_size[m]` is `sigma` of any `m`-subset, for `m` in `0..=n`.
    Symmetric { d: u32, n: usize, by_size: Vec<u32> },
    /// `canonical[r]` is `sigma({1} + (r << 1))`.
    Full { d: u32, n: usize, canonical: Vec<u8> },
}

impl ChamberSignature {
    pub fn d(&self) -> u32 {
        match self {
            ChamberSignature::Symmetric { d, .. } | ChamberSignature::Full { d, .. } => *d,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ChamberSignature::Symmetric { n, .. } | ChamberSignature::Full { n, .. } => *n,
        }
    }

    pub fn get(&self, subset: MarkedSubset) -> u32 {
        match self {
            ChamberSignature::Symmetric { by_size, .. } => by_size[subset.len()],
            ChamberSignature::Full { d, n, canonical } => {
                if subset.is_empty() {
                    return 0;
                }
                let c = subset.canonical(*n);
                if c == MarkedSubset::full(*n) {
                    return *d;
                }
                let v = canonical[(c.bits() >> 1) as usize] as u32;
                if subset.is_canonical() {
                    v
                } else {
                    d - v
                }
            }
        }
    }

    /// `sigma` by cardinality, when the signature is symmetric.
    pub fn by_size(&self) -> Option<&[u32]> {
        match self {
            ChamberSignature::Symmetric { by_size, .. } => Some(by_size),
            ChamberSignature::Full { .. } => None,
        }
    }

    /// `sigma` on every canonical subset in the `Full` layout, whatever the
    /// storage. Equal keys mean equal chambers.
    pub fn key(&self, limits: &Limits) -> Result<Vec<u8>> {
        match self {
            ChamberSignature::Full { canonical, .. } => Ok(canonical.clone()),
            ChamberSignature::Symmetric { n, by_size, .. } => {
                limits.check_subsets(*n)?;
                Ok((0..(1u64 << (n - 1))).map(|r| by_size[MarkedSubset(r << 1 | 1).len()] as u8).collect())
            }
        }
    }

    /// Equality as maps on subsets, whatever the storage.
    pub fn same_as(&self, other: &ChamberSignature, limits: &Limits) -> Result<bool> {
        if self.d() != other.d() || self.n() != other.n() {
            return Err(Error::invalid("signatures for different (d, n)"));
        }
        match (self, other) {
            (ChamberSignature::Symmetric { by_size: a, .. }, ChamberSignature::Symmetric { by_size: b, .. }) => {
                Ok(a == b)
            }
            _ => Ok(self.key(limits)? == other.key(limits)?),
        }
    }
}

/// Signature of a generic linearization.
pub fn signature(lin: &Linearization, limits: &Limits) -> Result<ChamberSignature> {
    let hits = wall_hits(lin, limits)?;
    if !hits.is_empty() {
        return Err(Error::OnWall { hyperplanes: hits });
    }
    let table = WeightTable::new(lin)?;
    let (d, n) = (lin.d(), lin.n());
    if table.is_symmetric() {
        let by_size = (0..=n).map(|m| table.sigma_by_size(m)).collect();
        return Ok(ChamberSignature::Symmetric { d, n, by_size });
    }
    let canonical = (0..(1u64 << (n - 1)))
        .map(|r| {
            let s = MarkedSubset(r << 1 | 1);
            if s.len() == n {
                d as u8
            } else {
                table.sigma(s) as u8
            }
        })
        .collect();
    Ok(ChamberSignature::Full { d, n, canonical })
}

/// True iff both generic points have the same signature.
pub fn same_chamber(a: &Linearization, b: &Linearization, limits: &Limits) -> Result<bool> {
    if a.d() != b.d() || a.n() != b.n() {
        return Err(Error::invalid("linearizations for different (d, n)"));
    }
    signature(a, limits)?.same_as(&signature(b, limits)?, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincore::rat;

    #[test]
    fn flip_table_on_the_plus_side() {
        let l = Linearization::symmetric(5, 19, rat(4009, 9000)).unwrap();
        let sig = signature(&l, &Limits::default()).unwrap();
        let expect = |k: usize| match k {
            0..=4 => 0,
            5..=7 => 1,
            8..=9 => 2,
            10..=11 => 3,
            12..=14 => 4,
            _ => 5,
        };
        for k in 1..19 {
            assert_eq!(sig.get(MarkedSubset::first(k)), expect(k), "k = {k}");
        }
    }

    #[test]
    fn nine_nine_chambers() {
        let lim = Limits::default();
        let at = |g| Linearization::symmetric(9, 9, g).unwrap();
        assert!(same_chamber(&at(rat(3, 10)), &at(rat(9, 20)), &lim).unwrap());
        assert!(!same_chamber(&at(rat(3, 10)), &at(rat(3, 5)), &lim).unwrap());
    }

    #[test]
    fn full_and_symmetric_storage_agree() {
        let lim = Limits::default();
        let s = Linearization::symmetric(4, 6, rat(2, 5)).unwrap();
        let sym = signature(&s, &lim).unwrap();
        let full = ChamberSignature::Full { d: 4, n: 6, canonical: sym.key(&lim).unwrap() };
        assert!(sym.same_as(&full, &lim).unwrap());
        for bits in 1..63u64 {
            assert_eq!(sym.get(MarkedSubset(bits)), full.get(MarkedSubset(bits)));
        }
    }
}
