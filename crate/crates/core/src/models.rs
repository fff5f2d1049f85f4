//! Known compactifications among the chambers: Hassett spaces, `M_{0,n}`
//! bar, Boggi's space, and the triple-point style models.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::assignments::git_assignment;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::{format_rational, is_generic, require_generic, Linearization, MarkedSubset, Rational, WeightTable};
use crate::sampling::in_hassett_regime;
use crate::trees::DualTree;
use crate::walls::{segment_scan, CrossingEvent};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelId {
    /// Hassett's weighted space with these weights.
    Hassett { weights: Vec<String> },
    MbarN,
    Boggi,
    /// No colliding marks and no marks at singular points, but `gamma <=
    /// 1/2` allows points of multiplicity at least 3.
    TripleStyle,
    Unidentified { summary: String },
}

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// `sigma(I) = |I|` for every `2 <= |I| <= n - 2`, with `d = n`.
pub fn is_boggi(lin: &Linearization, limits: &Limits) -> Result<bool> {
    let (d, n) = (lin.d(), lin.n());
    if d as usize != n {
        return Ok(false);
    }
    let table = WeightTable::new(lin)?;
    if table.is_symmetric() {
        return Ok((2..=n - 2).all(|m| table.sigma_by_size(m) == m as u32));
    }
    limits.check_subsets(n)?;
    Ok((1..(1u64 << n) - 1).map(MarkedSubset).filter(|s| (2..=n - 2).contains(&s.len())).all(|s| table.sigma(s) == s.len() as u32))
}

fn pairs_heavy(lin: &Linearization) -> bool {
    let one = Rational::one();
    let w = lin.weights();
    (0..w.len()).all(|i| (i + 1..w.len()).all(|j| &w[i] + &w[j] > one))
}

/// Names the model of the chamber of a generic `lin`.
pub fn identify(lin: &Linearization, limits: &Limits) -> Result<ModelId> {
    require_generic(lin, limits)?;
    if is_boggi(lin, limits)? {
        return Ok(ModelId::Boggi);
    }
    let one = Rational::one();
    if in_hassett_regime(lin) {
        if pairs_heavy(lin) {
            return Ok(ModelId::MbarN);
        }
        return Ok(ModelId::Hassett { weights: lin.weights().iter().map(format_rational).collect() });
    }
    let g = lin.gamma();
    if lin.weights().iter().all(|c| g > &(&one - c)) && pairs_heavy(lin) {
        return Ok(ModelId::TripleStyle);
    }
    let summary = if lin.n() <= limits.trees {
        let z = git_assignment(lin, limits)?;
        let trees = DualTree::all(lin.n(), limits)?;
        let mut hit = 0;
        for t in &trees {
            if z.assigned(t)?.iter().any(|&x| x) {
                hit += 1;
            }
        }
        format!("contracts components on {hit} of {} DM trees", trees.len())
    } else {
        format!("n = {} exceeds the tree cap {}", lin.n(), limits.trees)
    };
    Ok(ModelId::Unidentified { summary })
}

#[derive(Clone, Debug, Serialize)]
pub struct HassettEmbedding {
    pub d: u32,
    #[serde(serialize_with = "ser_lin")]
    pub lin: Linearization,
    /// True when the weights had to be moved off a wall.
    pub perturbed: bool,
}

fn ser_lin<S: serde::Serializer>(l: &Linearization, s: S) -> std::result::Result<S::Ok, S::Error> {
    l.to_record().serialize(s)
}

/// The least `d` for which `gamma = (d + 1 - sum c) / (d - 1)` puts `c` in the
/// Hassett regime, with a generic point for it.
pub fn hassett_embedding_degree(weights: &[Rational], limits: &Limits) -> Result<HassettEmbedding> {
    let one = Rational::one();
    if weights.iter().any(|c| *c <= Rational::zero() || *c >= one) {
        return Err(Error::invalid("Hassett weights must lie in (0, 1)"));
    }
    let sum: Rational = weights.iter().sum();
    if sum <= int(2) {
        return Err(Error::invalid(format!("weights sum to {}, which is not above 2", format_rational(&sum))));
    }
    let half = Rational::new(1.into(), 2.into());
    let need = weights.iter().map(|c| &one - c).max().expect("weights").max(half);
    let mut d: u32 = 2;
    loop {
        let gamma = (int(d as i64 + 1) - &sum) / int(d as i64 - 1);
        if gamma > need {
            let lin = Linearization::new(d, gamma, weights.to_vec())?;
            if is_generic(&lin, limits)? {
                return Ok(HassettEmbedding { d, lin, perturbed: false });
            }
            let moved = perturb_in_chamber(&lin, limits)?;
            return Ok(HassettEmbedding { d, lin: moved, perturbed: true });
        }
        d += 1;
    }
}

/// A generic point near `lin` with the same `gamma` and the same sign of
/// `c_I - 1` for every `I` with `c_I != 1`.
fn perturb_in_chamber(lin: &Linearization, limits: &Limits) -> Result<Linearization> {
    let n = lin.n();
    limits.check_subsets(n)?;
    let one = Rational::one();
    let mut gap = lin.weights().iter().map(|c| c.clone().min(&one - c)).min().expect("weights");
    for bits in 1..(1u64 << n) {
        let off = lin.subset_weight(MarkedSubset(bits)) - &one;
        if !off.is_zero() {
            gap = gap.min(if off < Rational::zero() { -off } else { off });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA55E7);
    const SPREAD: i64 = 1_000_000_000;
    for attempt in 0..64 {
        let step = &gap / int(4 * SPREAD * n as i64) / int(1 << (attempt / 8));
        let mut delta: Vec<i64> = (1..n).map(|_| rng.gen_range(-SPREAD..=SPREAD)).collect();
        delta.insert(0, -delta.iter().sum::<i64>());
        let w = lin.weights().iter().zip(&delta).map(|(c, &e)| c + int(e) * &step).collect();
        let cand = Linearization::new(lin.d(), lin.gamma().clone(), w)?;
        if cand.is_interior() && is_generic(&cand, limits)? {
            return Ok(cand);
        }
    }
    Err(Error::invalid("could not move the Hassett point off its wall"))
}

/// `d = n`, `c_i = 1 - eps`, `gamma = (1 + d eps) / (d - 1)` with
/// `eps = 1/(10n)`.
pub fn boggi_params(n: usize) -> Result<Linearization> {
    if n < 4 {
        return Err(Error::invalid("Boggi's space needs n >= 4"));
    }
    let eps = Rational::new(1.into(), BigInt::from(10 * n));
    let d = n as u32;
    let gamma = (Rational::one() + int(d as i64) * &eps) / int(d as i64 - 1);
    Linearization::new(d, gamma, vec![Rational::one() - eps; n])
}

/// Which Hassett space: the light subsets (`c_I < 1`, `|I| >= 2`), or for
/// symmetric weights the largest light size.
#[derive(Clone, Debug, PartialEq, Eq)]
enum HassettClass {
    BySize(usize),
    Light(Vec<u64>),
}

fn hassett_class(lin: &Linearization, limits: &Limits) -> Result<HassettClass> {
    let one = Rational::one();
    let n = lin.n();
    if let Some(c) = lin.symmetric_weight() {
        return Ok(HassettClass::BySize((1..=n).take_while(|&m| c * int(m as i64) < one).count()));
    }
    limits.check_subsets(n)?;
    Ok(HassettClass::Light(
        (1..1u64 << n).filter(|&b| b.count_ones() >= 2 && lin.subset_weight(MarkedSubset(b)) < one).collect(),
    ))
}

/// A crossing of a scanned segment with the models on either side.
#[derive(Clone, Debug, Serialize)]
pub struct ModelCrossing {
    pub event: CrossingEvent,
    pub before: ModelId,
    pub after: ModelId,
    /// False when only stability changes and the model stays the same, as
    /// for walls inside one Hassett region.
    pub changes_model: bool,
}

/// [`segment_scan`], with the model identified at the midpoint of every
/// region between crossings.
pub fn annotate_scan(from: &Linearization, to: &Linearization, limits: &Limits) -> Result<Vec<ModelCrossing>> {
    let events = segment_scan(from, to, limits)?;
    let mut cuts = vec![Rational::zero()];
    cuts.extend(events.iter().map(|e| e.t.clone()));
    cuts.push(Rational::one());
    let mut regions = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let mid = from.interpolate(to, &((&w[0] + &w[1]) / int(2)))?;
        let model = identify(&mid, limits)?;
        let class = match model {
            ModelId::Hassett { .. } => Some(hassett_class(&mid, limits)?),
            _ => None,
        };
        regions.push((model, class));
    }
    Ok(events
        .into_iter()
        .enumerate()
        .map(|(j, event)| {
            let (a, ca) = &regions[j];
            let (b, cb) = &regions[j + 1];
            let same = match (a, b) {
                (ModelId::Hassett { .. }, ModelId::Hassett { .. }) => ca == cb,
                _ => a == b,
            };
            ModelCrossing { event, before: a.clone(), after: b.clone(), changes_model: !same }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::z_assignment;
    use crate::lincore::rat;

    #[test]
    fn boggi_point_for_nine() {
        let l = boggi_params(9).unwrap();
        assert_eq!(l.gamma(), &rat(11, 80));
        for k in 2..=7 {
            assert_eq!(crate::lincore::sigma(MarkedSubset::first(k), &l).unwrap(), k as u32);
        }
        assert_eq!(identify(&l, &Limits::default()).unwrap(), ModelId::Boggi);
    }

    #[test]
    fn boggi_contracts_exactly_unmarked() {
        let lim = Limits::default();
        let l = boggi_params(5).unwrap();
        for t in DualTree::all(5, &lim).unwrap() {
            let want: Vec<usize> = (0..t.num_vertices()).filter(|&v| t.legs_at(v).is_empty()).collect();
            assert_eq!(z_assignment(&t, &l).unwrap(), want, "{t}");
        }
    }

    #[test]
    fn nine_nine_regions() {
        let lim = Limits::default();
        let at = |g| identify(&Linearization::symmetric(9, 9, g).unwrap(), &lim).unwrap();
        assert_eq!(at(rat(2, 5)), ModelId::TripleStyle);
        assert_eq!(at(rat(3, 5)), ModelId::MbarN);
        assert!(matches!(at(rat(3, 4)), ModelId::Hassett { .. }));
        assert_eq!(at(rat(1, 5)), ModelId::Boggi);
    }

    #[test]
    fn mbar_for_d_n_minus_two() {
        let l = Linearization::from_weights(5, vec![rat(51, 100); 7]).unwrap();
        assert!(l.gamma() > &rat(1, 2));
        assert_eq!(identify(&l, &Limits::default()).unwrap(), ModelId::MbarN);
    }

    #[test]
    fn nine_nine_chain_labels() {
        let lim = Limits::default();
        let sym = |g| Linearization::symmetric(9, 9, g).unwrap();
        let marks = annotate_scan(&sym(rat(27, 100)), &sym(rat(999, 1000)), &lim).unwrap();
        let labeled: Vec<Rational> = marks.iter().filter(|m| m.changes_model).map(|m| m.event.gamma().clone()).collect();
        assert_eq!(labeled, vec![rat(2, 7), rat(1, 2), rat(11, 16), rat(7, 8), rat(31, 32)]);
        for g in [rat(13, 14), rat(22, 23)] {
            assert!(marks.iter().any(|m| m.event.gamma() == &g && !m.changes_model), "{g}");
        }
    }

    #[test]
    fn embedding_degrees() {
        let lim = Limits::default();
        assert_eq!(hassett_embedding_degree(&vec![rat(51, 100); 8], &lim).unwrap().d, 6);
        assert_eq!(hassett_embedding_degree(&vec![rat(26, 100); 16], &lim).unwrap().d, 10);
        assert!(hassett_embedding_degree(&[rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)], &lim).is_err());
    }
}
