use std::cmp::Ordering;

use serde::Serialize;

use super::contract::{contract_with_degrees, degree_assignment_with, on_wall, resolve_unchecked};
use super::{is_git_stable, CurveType, Node};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::{Linearization, MarkedSubset, WeightTable};
use crate::trees::DualTree;
use crate::walls::{subset_hits, Wall};

/// An `(I, k)`-bridge: a degree-1 component `D` meeting the rest in two
/// points, between a side marked by `I` of degree `k` and a side marked by
/// `I^c` of degree `d - k - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct IkBridge {
    pub wall: Wall,
    pub bridge: usize,
    pub i_side: Vec<usize>,
    pub ic_side: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallStability {
    Stable,
    /// Strictly semistable with a closed orbit: an `(I, k)`-bridge.
    BridgeClosedOrbit,
    StrictlySemistable,
    Unstable,
}

pub(crate) fn check_alone(wall: &Wall, lin: &Linearization, limits: &Limits) -> Result<()> {
    if lin.d() != wall.d() || lin.n() != wall.n() {
        return Err(Error::invalid("wall and linearization have different (d, n)"));
    }
    if !wall.contains(lin)? {
        return Err(Error::NotOnWall(wall.hyperplane()));
    }
    let hits = subset_hits(lin, limits)?;
    if hits.len() != 1 {
        return Err(Error::OnWall { hyperplanes: hits });
    }
    Ok(())
}

/// Image of `tree` at a point lying on `wall` only. A tree with an edge
/// splitting `I | I^c` acquires the bridge on that edge.
pub fn wall_contract(tree: &DualTree, wall: &Wall, lin: &Linearization, limits: &Limits) -> Result<CurveType> {
    check_alone(wall, lin, limits)?;
    if tree.n() != wall.n() {
        return Err(Error::invalid("tree and wall have different numbers of marks"));
    }
    let table = WeightTable::new(lin)?;
    let (d, n, k) = (wall.d(), wall.n(), wall.k());
    let i = wall.subset();
    let ic = i.complement(n);
    let cut = tree
        .edges()
        .iter()
        .map(|&(a, b)| if tree.side_marks(a, b) == i { (a, b) } else { (b, a) })
        .find(|&(a, b)| tree.side_marks(a, b) == i);
    let (work, bridge, on_i_side) = match cut {
        None => (tree.clone(), None, vec![false; tree.num_vertices()]),
        Some((a, b)) => {
            let dv = tree.num_vertices();
            let mut edges: Vec<(usize, usize)> =
                tree.edges().iter().copied().filter(|&(x, y)| (x, y) != (a, b) && (y, x) != (a, b)).collect();
            edges.push((a, dv));
            edges.push((dv, b));
            let mut side = vec![false; dv + 1];
            for v in tree.component_of(a, Some(b)) {
                side[v] = true;
            }
            let t = DualTree::new_unchecked(dv + 1, edges, tree.leg_vertices().to_vec())?;
            (t, Some(dv), side)
        }
    };
    // sigma just below the wall on the I side, just above on the I^c side
    let minus = |b: MarkedSubset| if b == i { k } else { d - k };
    let plus = |b: MarkedSubset| if b == i { k + 1 } else { d - k - 1 };
    let deg = degree_assignment_with(&work, d, |v, b| {
        if b == i || b == ic {
            return Ok(match bridge {
                Some(dv) if v == dv => {
                    if b == i {
                        minus(b)
                    } else {
                        plus(b)
                    }
                }
                _ if on_i_side[v] => minus(b),
                _ => plus(b),
            });
        }
        match table.class(b).wall() {
            Some(w) => Err(on_wall(b, w, d, n)),
            None => Ok(table.class(b).sigma(d)),
        }
    })?;
    Ok(contract_with_degrees(&work, &deg))
}

/// The bridge structure of `curve` for `wall`, if it has one.
pub fn find_bridge(curve: &CurveType, wall: &Wall) -> Option<IkBridge> {
    if curve.n() != wall.n() || curve.d() != wall.d() {
        return None;
    }
    let n = wall.n();
    let i = wall.subset();
    let dr = curve.drawing();
    let tree = resolve_unchecked(curve);
    for c in 0..curve.num_components() {
        if curve.degrees()[c] != 1 || !tree.legs_at(c).is_empty() {
            continue;
        }
        let nbrs = tree.neighbors(c);
        if nbrs.len() != 2 || nbrs.iter().any(|&w| matches!(dr.nodes[w], Node::Smooth(_))) {
            continue;
        }
        let first = tree.side_marks(nbrs[0], c);
        let (i_root, ic_root) = if first == i {
            (nbrs[0], nbrs[1])
        } else if first == i.complement(n) {
            (nbrs[1], nbrs[0])
        } else {
            continue;
        };
        let comps = |root: usize| -> Vec<usize> {
            let mut v: Vec<usize> = tree
                .component_of(root, Some(c))
                .into_iter()
                .filter_map(|w| match dr.nodes[w] {
                    Node::Component(x) => Some(x),
                    _ => None,
                })
                .collect();
            v.sort_unstable();
            v
        };
        let (i_side, ic_side) = (comps(i_root), comps(ic_root));
        let deg = |s: &[usize]| s.iter().map(|&x| curve.degrees()[x]).sum::<u32>();
        if deg(&i_side) == wall.k() && deg(&ic_side) == wall.d() - wall.k() - 1 {
            return Some(IkBridge { wall: *wall, bridge: c, i_side, ic_side });
        }
    }
    None
}

/// Stability of `curve` at a point on `wall` and no other hyperplane.
pub fn wall_stability(curve: &CurveType, wall: &Wall, lin: &Linearization, limits: &Limits) -> Result<WallStability> {
    check_alone(wall, lin, limits)?;
    if curve.n() != wall.n() || curve.d() != wall.d() {
        return Err(Error::invalid("curve and wall have different (d, n)"));
    }
    if let Some(b) = find_bridge(curve, wall) {
        // the DM tree underneath: drop D and join its two neighbors
        let tree = resolve_unchecked(curve);
        let nbrs = tree.neighbors(b.bridge);
        let renum = |v: usize| if v > b.bridge { v - 1 } else { v };
        let mut edges: Vec<(usize, usize)> = tree
            .edges()
            .iter()
            .filter(|&&(x, y)| x != b.bridge && y != b.bridge)
            .map(|&(x, y)| (renum(x), renum(y)))
            .collect();
        edges.push((renum(nbrs[0]), renum(nbrs[1])));
        let legs = tree.leg_vertices().iter().map(|&v| renum(v)).collect();
        let Ok(under) = DualTree::new(tree.num_vertices() - 1, edges, legs) else {
            return Ok(WallStability::Unstable);
        };
        let image = wall_contract(&under, wall, lin, limits)?;
        return Ok(if image.is_isomorphic(curve) { WallStability::BridgeClosedOrbit } else { WallStability::Unstable });
    }
    let plus = is_git_stable(curve, &wall.nudge(lin, Ordering::Greater, limits)?, limits)?.stable;
    let minus = is_git_stable(curve, &wall.nudge(lin, Ordering::Less, limits)?, limits)?.stable;
    let tree = resolve_unchecked(curve);
    let has_tail = tree.has_split(wall.subset());
    Ok(match (has_tail, plus, minus) {
        (false, true, true) => WallStability::Stable,
        (true, true, _) | (true, _, true) => WallStability::StrictlySemistable,
        _ => WallStability::Unstable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{z_contract, SmoothPoint};
    use crate::lincore::rat;

    fn flip_wall() -> (Wall, Linearization) {
        let lim = Limits::default();
        let w = Wall::new(MarkedSubset::range(13, 19), 1, 5, 19).unwrap();
        let base = Linearization::symmetric(5, 19, rat(4, 9)).unwrap();
        let l = w.generic_witness_near(&base, &lim).unwrap();
        (w, l)
    }

    #[test]
    fn caterpillar_at_the_wall() {
        let lim = Limits::default();
        let (w, l) = flip_wall();
        let t = DualTree::caterpillar(&[10, 2, 2, 5]).unwrap();
        let c = wall_contract(&t, &w, &l, &lim).unwrap();
        assert_eq!(c.num_components(), 3);
        let mut interior: Vec<usize> = (0..3).map(|x| c.interior_marks(x).len()).collect();
        interior.sort_unstable();
        assert_eq!(interior, vec![0, 5, 10]);
        assert_eq!(c.singular().len(), 2);
        assert!(c.singular().iter().all(|s| s.branches.len() == 2 && s.marks.len() == 2));
        let b = find_bridge(&c, &w).unwrap();
        assert_eq!(c.degrees()[b.bridge], 1);
        assert_eq!(wall_stability(&c, &w, &l, &lim).unwrap(), WallStability::BridgeClosedOrbit);
    }

    #[test]
    fn tail_curve_is_strictly_semistable() {
        let lim = Limits::default();
        let (w, l) = flip_wall();
        // I_7 tail of degree 1 against degree 4: the minus-side image
        let t = DualTree::caterpillar(&[12, 7]).unwrap();
        let minus = w.nudge(&l, Ordering::Less, &lim).unwrap();
        let c = z_contract(&t, &minus).unwrap();
        assert_eq!(c.degrees(), &[4, 1]);
        assert_eq!(wall_stability(&c, &w, &l, &lim).unwrap(), WallStability::StrictlySemistable);
    }

    #[test]
    fn curve_without_tail_is_stable() {
        let lim = Limits::default();
        let (w, l) = flip_wall();
        let t = DualTree::caterpillar(&[10, 4, 5]).unwrap();
        let plus = w.nudge(&l, Ordering::Greater, &lim).unwrap();
        let c = z_contract(&t, &plus).unwrap();
        assert_eq!(wall_stability(&c, &w, &l, &lim).unwrap(), WallStability::Stable);
    }

    #[test]
    fn refuses_points_on_several_walls() {
        let lim = Limits::default();
        let w = Wall::new(MarkedSubset::range(13, 19), 1, 5, 19).unwrap();
        let base = Linearization::symmetric(5, 19, rat(4, 9)).unwrap();
        let c = CurveType::new(
            19,
            vec![5],
            vec![],
            (1..=19).map(|m| SmoothPoint { component: 0, marks: MarkedSubset::from_marks([m]) }).collect(),
        )
        .unwrap();
        assert!(matches!(wall_stability(&c, &w, &base, &lim), Err(Error::OnWall { .. })));
    }
}
