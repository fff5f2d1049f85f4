//! What happens to the quotient when a wall is crossed, and the maps at the
//! boundary of the region.
//!
//! "Contracts no curves" is the strongest claim made here. Whether the
//! regular directions are morphisms with regular inverses is left open.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curves::check_alone;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::{format_rational, require_generic, Linearization, LinearizationRecord, MarkedSubset, Rational, WeightTable};
use crate::partitions::{find_partition, find_partition_by_size};
use crate::walls::Wall;

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingLabel {
    DivisorialForward,
    DivisorialBackward,
    Flip,
    /// Only the forward side contracts curves.
    RegularBackward,
    /// Only the backward side contracts curves.
    RegularForward,
    BijectiveBothWays,
}

/// Crossing from the `+` side of a wall to its `-` side. "Forward" is the
/// map from the `+` quotient to the wall quotient.
#[derive(Clone, Debug, Serialize)]
pub struct CrossingReport {
    pub wall: Wall,
    pub forward_contracts_curve: bool,
    pub backward_contracts_curve: bool,
    pub forward_divisorial: bool,
    pub backward_divisorial: bool,
    pub label: CrossingLabel,
    /// Partition of `I` into at least 3 blocks with `sigma`-sum `k`.
    pub forward_witness: Option<Vec<MarkedSubset>>,
    /// Partition of `I^c` into at least 3 blocks with `sigma`-sum `d-1-k`.
    pub backward_witness: Option<Vec<MarkedSubset>>,
}

impl CrossingReport {
    /// The same crossing read from the other presentation of the wall.
    pub fn mirrored(&self) -> CrossingReport {
        let (f, b) = (self.backward_contracts_curve, self.forward_contracts_curve);
        let (fd, bd) = (self.backward_divisorial, self.forward_divisorial);
        CrossingReport {
            wall: self.wall.complement(),
            forward_contracts_curve: f,
            backward_contracts_curve: b,
            forward_divisorial: fd,
            backward_divisorial: bd,
            label: label(fd, bd, f, b),
            forward_witness: self.backward_witness.clone(),
            backward_witness: self.forward_witness.clone(),
        }
    }
}

fn label(fd: bool, bd: bool, f: bool, b: bool) -> CrossingLabel {
    match (fd, bd, f, b) {
        (true, ..) => CrossingLabel::DivisorialForward,
        (_, true, ..) => CrossingLabel::DivisorialBackward,
        (_, _, true, true) => CrossingLabel::Flip,
        (_, _, true, false) => CrossingLabel::RegularBackward,
        (_, _, false, true) => CrossingLabel::RegularForward,
        _ => CrossingLabel::BijectiveBothWays,
    }
}

/// A partition of `set` into at least 3 blocks with `sigma`-sum `target`,
/// `sigma` taken at `table`. The blocks must not lie on walls.
fn sigma_partition(set: MarkedSubset, target: u32, table: &WeightTable, limits: &Limits) -> Result<Option<Vec<MarkedSubset>>> {
    if table.is_symmetric() {
        return Ok(find_partition_by_size(set, 3, target, |m| table.sigma_by_size(m)));
    }
    find_partition(set, 3, target, limits, |b| table.sigma(b))
}

/// Classifies the crossing of `wall` at `lin`, which must lie on that wall
/// and no other.
pub fn classify_crossing(wall: &Wall, lin: &Linearization, limits: &Limits) -> Result<CrossingReport> {
    check_alone(wall, lin, limits)?;
    let table = WeightTable::new(lin)?;
    let (d, n, k, size) = (wall.d(), wall.n(), wall.k(), wall.size());
    let i = wall.subset();
    let forward_witness = sigma_partition(i, k, &table, limits)?;
    let backward_witness = sigma_partition(i.complement(n), d - 1 - k, &table, limits)?;
    let fd = k == 0 && (3..=n - 2).contains(&size);
    let bd = k == d - 1 && (2..=n.saturating_sub(3)).contains(&size);
    let (f, b) = (forward_witness.is_some(), backward_witness.is_some());
    Ok(CrossingReport {
        wall: *wall,
        forward_contracts_curve: f,
        backward_contracts_curve: b,
        forward_divisorial: fd,
        backward_divisorial: bd,
        label: label(fd, bd, f, b),
        forward_witness,
        backward_witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub mark: usize,
    /// No curve is contracted by the projection.
    pub bijective: bool,
    /// Partition of the other marks into at least 3 blocks with
    /// `sigma`-sum `d-1`.
    pub witness: Option<Vec<MarkedSubset>>,
    /// `(d-1, gamma, c_i - (1 - gamma), other c_j)`.
    #[serde(serialize_with = "ser_lin")]
    pub target: Linearization,
}

fn ser_lin<S: serde::Serializer>(l: &Linearization, s: S) -> std::result::Result<S::Ok, S::Error> {
    l.to_record().serialize(s)
}

/// Projection from mark `i` at a generic `lin`, defined when `c_i > 1 -
/// gamma` and `d >= 2`.
pub fn projection_bijective(lin: &Linearization, i: usize, limits: &Limits) -> Result<ProjectionReport> {
    let (d, n) = (lin.d(), lin.n());
    if !(1..=n).contains(&i) {
        return Err(Error::invalid(format!("mark {i} is not in 1..{n}")));
    }
    let undefined = |reason: String| Error::ProjectionUndefined { mark: i, reason };
    if d < 2 {
        return Err(undefined("the target would have degree 0".into()));
    }
    let floor = Rational::one() - lin.gamma();
    if lin.weight(i) <= &floor {
        return Err(undefined(format!(
            "c_{i} = {} is not above 1 - gamma = {}",
            format_rational(lin.weight(i)),
            format_rational(&floor)
        )));
    }
    require_generic(lin, limits)?;
    let table = WeightTable::new(lin)?;
    let rest = MarkedSubset::full(n).difference(MarkedSubset::from_marks([i]));
    let witness = sigma_partition(rest, d - 1, &table, limits)?;
    let mut w = lin.weights().to_vec();
    w[i - 1] = &w[i - 1] - &floor;
    let target = Linearization::new(d - 1, lin.gamma().clone(), w)?;
    Ok(ProjectionReport { mark: i, bijective: witness.is_none(), witness, target })
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingData {
    pub subset: MarkedSubset,
    pub sigma: u32,
    #[serde(serialize_with = "ser_rat")]
    pub b: Rational,
    /// `(sigma, gamma, c_I, b_I)`: the marks of `I` in order, then the
    /// attaching point.
    #[serde(serialize_with = "ser_lin")]
    pub tail: Linearization,
    /// `sigma = d`: the `I^c` side is collapsed and only this factor glues in.
    pub one_factor: bool,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// The tail linearization carried by the `I` side of the gluing map.
pub fn gluing_data(subset: MarkedSubset, lin: &Linearization, limits: &Limits) -> Result<GluingData> {
    let n = lin.n();
    if !subset.is_proper(n) || !subset.is_subset_of(MarkedSubset::full(n)) {
        return Err(Error::invalid(format!("{subset} is not a nonempty proper subset of 1..{n}")));
    }
    require_generic(lin, limits)?;
    let sigma = WeightTable::new(lin)?.sigma(subset);
    if sigma == 0 {
        return Err(Error::NoTailFactor(subset));
    }
    let g = lin.gamma();
    let c_i = lin.subset_weight(subset);
    let b = (Rational::one() - g) * int(sigma as i64) - (&c_i - Rational::one()) + g;
    let mut w: Vec<Rational> = subset.marks().map(|m| lin.weight(m).clone()).collect();
    w.push(b.clone());
    let tail = Linearization::new(sigma, g.clone(), w)?;
    Ok(GluingData { subset, sigma, b, tail, one_factor: sigma == lin.d() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExteriorWall {
    /// `c_mark = 1`: crossing onto it is projection from the mark.
    ProjectionWall { mark: usize, target: LinearizationRecord },
    /// `gamma = 1`: the quotient is `(P^1)^n // SL(2)` with weights `c`.
    SlTwoQuotient { weights: Vec<String> },
    /// `c_mark = 0`: the mark is forgotten.
    ForgetfulWall { mark: usize },
    /// `gamma = 0`: configurations of points in `P^d`.
    PointConfigQuotient { weights: Vec<String> },
}

/// Names the boundary stratum of a point of the closed region. When several
/// coordinates sit on the boundary, `gamma = 1` wins, then `gamma = 0`, then
/// the first `c_i = 1`, then the first `c_i = 0`.
pub fn classify_exterior(lin: &Linearization) -> Result<ExteriorWall> {
    if !lin.in_closed_box() {
        return Err(Error::invalid("point lies outside the closed region"));
    }
    if lin.is_interior() {
        return Err(Error::InteriorPoint);
    }
    let one = Rational::one();
    let weights = || lin.weights().iter().map(format_rational).collect();
    if lin.gamma() == &one {
        return Ok(ExteriorWall::SlTwoQuotient { weights: weights() });
    }
    if lin.gamma().is_zero() {
        return Ok(ExteriorWall::PointConfigQuotient { weights: weights() });
    }
    if let Some(i) = lin.weights().iter().position(|c| c == &one) {
        let mark = i + 1;
        if lin.d() < 2 {
            return Err(Error::ProjectionUndefined { mark, reason: "the target would have degree 0".into() });
        }
        let mut w = lin.weights().to_vec();
        w[i] = lin.gamma().clone();
        let target = Linearization::new(lin.d() - 1, lin.gamma().clone(), w)?;
        return Ok(ExteriorWall::ProjectionWall { mark, target: target.to_record() });
    }
    let i = lin.weights().iter().position(|c| c.is_zero()).expect("a boundary coordinate");
    Ok(ExteriorWall::ForgetfulWall { mark: i + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincore::rat;
    use crate::partitions::SetPartitions;
    use crate::trees::{fcurve_sigma_sum, FCurvePartition};
    use crate::walls::enumerate_walls;
    use std::cmp::Ordering;

    fn flip_wall() -> (Wall, Linearization) {
        let lim = Limits::default();
        let w = Wall::new(MarkedSubset::range(13, 19), 1, 5, 19).unwrap();
        let l = w.generic_witness_near(&Linearization::symmetric(5, 19, rat(4, 9)).unwrap(), &lim).unwrap();
        (w, l)
    }

    #[test]
    fn flip_at_five_nineteen() {
        let (w, l) = flip_wall();
        let r = classify_crossing(&w, &l, &Limits::default()).unwrap();
        assert!(r.forward_contracts_curve && r.backward_contracts_curve);
        assert!(!r.forward_divisorial && !r.backward_divisorial);
        assert_eq!(r.label, CrossingLabel::Flip);
        let table = WeightTable::new(&l).unwrap();
        let fw = r.forward_witness.as_ref().unwrap();
        assert!(fw.len() >= 3);
        assert_eq!(fw.iter().map(|&b| table.sigma(b)).sum::<u32>(), 1);
        let bw = r.backward_witness.as_ref().unwrap();
        assert_eq!(bw.iter().map(|&b| table.sigma(b)).sum::<u32>(), 3);
    }

    #[test]
    fn mirrored_presentation_swaps_directions() {
        let (w, l) = flip_wall();
        let lim = Limits::default();
        let a = classify_crossing(&w, &l, &lim).unwrap();
        let b = classify_crossing(&w.complement(), &l, &lim).unwrap();
        let m = a.mirrored();
        assert_eq!(b.forward_contracts_curve, m.forward_contracts_curve);
        assert_eq!(b.backward_contracts_curve, m.backward_contracts_curve);
        assert_eq!(b.label, m.label);
    }

    #[test]
    fn symmetric_point_is_refused() {
        let w = Wall::new(MarkedSubset::range(13, 19), 1, 5, 19).unwrap();
        let l = Linearization::symmetric(5, 19, rat(4, 9)).unwrap();
        assert!(matches!(classify_crossing(&w, &l, &Limits::default()), Err(Error::OnWall { .. })));
    }

    // brute force over all set partitions
    fn brute(set: MarkedSubset, target: u32, table: &WeightTable) -> bool {
        SetPartitions::new(set).any(|p| p.len() >= 3 && p.iter().map(|&b| table.sigma(b)).sum::<u32>() == target)
    }

    #[test]
    fn every_wall_of_three_six() {
        let lim = Limits::default();
        for w in enumerate_walls(3, 6, &lim).unwrap() {
            let l = w.generic_witness(&lim).unwrap();
            let r = classify_crossing(&w, &l, &lim).unwrap();
            let table = WeightTable::new(&l).unwrap();
            assert_eq!(r.forward_contracts_curve, brute(w.subset(), w.k(), &table), "{w}");
            assert_eq!(r.backward_contracts_curve, brute(w.subset().complement(6), 2 - w.k(), &table), "{w}");
            assert_eq!(r.forward_divisorial, w.k() == 0 && (3..=4).contains(&w.size()));
            if r.label == CrossingLabel::Flip {
                assert!(w.k() != 0 && w.k() != 2);
            }
            if w.k() == 0 && w.size() == 2 {
                assert!(!r.forward_contracts_curve);
            }
        }
    }

    #[test]
    fn contracted_fcurve_across_the_flip_wall() {
        let (w, l) = flip_wall();
        let lim = Limits::default();
        let r = classify_crossing(&w, &l, &lim).unwrap();
        let blocks = r.forward_witness.unwrap();
        assert_eq!(blocks.len(), 3);
        let ic = w.subset().complement(19);
        let p = FCurvePartition::new([blocks[0], blocks[1], blocks[2], ic], 19).unwrap();
        let plus = w.nudge(&l, Ordering::Greater, &lim).unwrap();
        let minus = w.nudge(&l, Ordering::Less, &lim).unwrap();
        assert_eq!(fcurve_sigma_sum(&p, &minus).unwrap(), 5);
        assert!(fcurve_sigma_sum(&p, &plus).unwrap() < 5);
    }

    #[test]
    fn projection_needs_a_heavy_mark() {
        let lim = Limits::default();
        let l = Linearization::new(2, rat(3, 11), vec![rat(1, 2), rat(5, 11), rat(7, 23), rat(15, 22), rat(199, 253)])
            .unwrap();
        assert!(matches!(projection_bijective(&l, 1, &lim), Err(Error::ProjectionUndefined { .. })));
        let r = projection_bijective(&l, 5, &lim).unwrap();
        assert_eq!(r.target.d(), 1);
        assert_eq!(r.target.weight(5), &(rat(199, 253) - rat(8, 11)));
        let table = WeightTable::new(&l).unwrap();
        assert_eq!(r.bijective, !brute(MarkedSubset::first(4), 1, &table));
    }

    #[test]
    fn gluing_tail_for_seven_marks() {
        let lim = Limits::default();
        let l = Linearization::symmetric(5, 19, rat(4, 9) + rat(1, 1000)).unwrap();
        let g = gluing_data(MarkedSubset::first(7), &l, &lim).unwrap();
        assert_eq!(g.sigma, 1);
        assert_eq!(g.b, rat(19063, 42750));
        assert!(g.b > Rational::zero() && g.b < Rational::one());
        assert_eq!(g.tail.n(), 8);
        assert!(!g.one_factor);
        assert!(matches!(gluing_data(MarkedSubset::first(2), &l, &lim), Err(Error::NoTailFactor(_))));
        let whole = gluing_data(MarkedSubset::first(16), &l, &lim).unwrap();
        assert!(whole.one_factor && whole.sigma == 5);
    }

    #[test]
    fn exterior_cases() {
        let s = classify_exterior(&Linearization::new(3, rat(1, 1), vec![rat(1, 2); 4]).unwrap()).unwrap();
        assert!(matches!(s, ExteriorWall::SlTwoQuotient { .. }));
        let p = classify_exterior(&Linearization::new(2, rat(0, 1), vec![rat(3, 4); 4]).unwrap()).unwrap();
        assert!(matches!(p, ExteriorWall::PointConfigQuotient { .. }));
        let l = Linearization::new(3, rat(1, 2), vec![rat(1, 1), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
        match classify_exterior(&l).unwrap() {
            ExteriorWall::ProjectionWall { mark, target } => {
                assert_eq!(mark, 1);
                let t = Linearization::from_record(&target).unwrap();
                assert_eq!((t.d(), t.weight(1)), (2, &rat(1, 2)));
            }
            other => panic!("unexpected {other:?}"),
        }
        let f = Linearization::new(2, rat(1, 2), vec![rat(0, 1), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 1)]).unwrap();
        assert!(matches!(classify_exterior(&f).unwrap(), ExteriorWall::ProjectionWall { mark: 5, .. }));
        let f = Linearization::new(2, rat(1, 2), vec![rat(0, 1), rat(1, 2), rat(3, 4), rat(3, 4), rat(1, 2)]).unwrap();
        assert_eq!(classify_exterior(&f).unwrap(), ExteriorWall::ForgetfulWall { mark: 1 });
        let inside = Linearization::symmetric(3, 6, rat(3, 10)).unwrap();
        assert!(matches!(classify_exterior(&inside), Err(Error::InteriorPoint)));
    }
}
