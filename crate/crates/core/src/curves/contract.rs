use std::collections::VecDeque;

use super::{CurveType, SingularPoint, SmoothPoint};
use crate::error::{Error, Hyperplane, Result};
use crate::lincore::{Linearization, MarkedSubset, WeightTable};
use crate::trees::DualTree;

/// `deg(v) = d - sum sigma(A)` over the leg sets `A` of the components of
/// `T - v`. Errors if any of those `phi(A)` is an integer.
pub fn degree_assignment(tree: &DualTree, lin: &Linearization) -> Result<Vec<u32>> {
    degree_assignment_table(tree, &WeightTable::new(lin)?)
}

/// [`degree_assignment`] against a prebuilt table.
pub fn degree_assignment_table(tree: &DualTree, table: &WeightTable) -> Result<Vec<u32>> {
    if tree.n() != table.n() {
        return Err(Error::invalid(format!("tree has {} legs but the linearization has {} marks", tree.n(), table.n())));
    }
    let (d, n) = (table.d(), table.n());
    degree_assignment_with(tree, d, |_, b| match table.class(b).wall() {
        Some(k) => Err(on_wall(b, k, d, n)),
        None => Ok(table.class(b).sigma(d)),
    })
}

pub(crate) fn on_wall(subset: MarkedSubset, k: u32, d: u32, n: usize) -> Error {
    let h = if subset.is_canonical() {
        Hyperplane::Subset { subset, k }
    } else {
        Hyperplane::Subset { subset: subset.complement(n), k: d - 1 - k }
    };
    Error::OnWall { hyperplanes: vec![h] }
}

/// Degrees from an arbitrary `sigma(vertex, branch)`.
pub(crate) fn degree_assignment_with(
    tree: &DualTree,
    d: u32,
    mut sigma: impl FnMut(usize, MarkedSubset) -> Result<u32>,
) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(tree.num_vertices());
    for v in 0..tree.num_vertices() {
        let mut s = 0i64;
        for b in tree.branches(v) {
            s += sigma(v, b)? as i64;
        }
        let deg = d as i64 - s;
        assert!(deg >= 0, "negative degree {deg} at vertex {v} of {tree}");
        out.push(deg as u32);
    }
    let total: u32 = out.iter().sum();
    assert_eq!(total, d, "degrees {out:?} of {tree} do not sum to d");
    Ok(out)
}

/// Vertices contracted by `Z_{gamma,c}`: those of degree 0.
pub fn z_assignment(tree: &DualTree, lin: &Linearization) -> Result<Vec<usize>> {
    let deg = degree_assignment(tree, lin)?;
    Ok((0..deg.len()).filter(|&v| deg[v] == 0).collect())
}

/// Image of `tree` in the quotient at a generic `lin`.
pub fn z_contract(tree: &DualTree, lin: &Linearization) -> Result<CurveType> {
    let deg = degree_assignment(tree, lin)?;
    Ok(contract_with_degrees(tree, &deg))
}

/// Collapses each maximal connected set of degree-0 vertices to a point whose
/// multiplicity is the number of edges leaving it. Works on trees with
/// valence-2 vertices too.
pub(crate) fn contract_with_degrees(tree: &DualTree, deg: &[u32]) -> CurveType {
    let count = tree.num_vertices();
    assert!(deg.iter().any(|&x| x > 0), "every vertex of {tree} is assigned");
    let mut comp_of = vec![usize::MAX; count];
    let mut degrees = Vec::new();
    for v in 0..count {
        if deg[v] > 0 {
            comp_of[v] = degrees.len();
            degrees.push(deg[v]);
        }
    }
    let mut singular = Vec::new();
    let mut smooth = Vec::new();
    for &(a, b) in tree.edges() {
        if deg[a] > 0 && deg[b] > 0 {
            singular.push(SingularPoint { branches: vec![comp_of[a], comp_of[b]], marks: MarkedSubset::EMPTY });
        }
    }
    for v in 0..count {
        if deg[v] > 0 {
            for m in tree.legs_at(v).marks() {
                smooth.push(SmoothPoint { component: comp_of[v], marks: MarkedSubset::from_marks([m]) });
            }
        }
    }
    let mut done = vec![false; count];
    for start in 0..count {
        if deg[start] > 0 || done[start] {
            continue;
        }
        let mut marks = MarkedSubset::EMPTY;
        let mut branches = Vec::new();
        let mut queue = VecDeque::from([start]);
        done[start] = true;
        while let Some(v) = queue.pop_front() {
            marks = marks.union(tree.legs_at(v));
            for w in tree.neighbors(v) {
                if deg[w] > 0 {
                    branches.push(comp_of[w]);
                } else if !done[w] {
                    done[w] = true;
                    queue.push_back(w);
                }
            }
        }
        branches.sort_unstable();
        if branches.len() == 1 {
            smooth.push(SmoothPoint { component: branches[0], marks });
        } else {
            singular.push(SingularPoint { branches, marks });
        }
    }
    CurveType::new(tree.n(), degrees, singular, smooth).expect("contraction of a tree is a valid curve type")
}

/// The DM-stable tree obtained by blowing up each singular point and each
/// collision of marks. Components come first, as vertices `0..`.
pub fn resolve(curve: &CurveType) -> Result<DualTree> {
    let dr = curve.drawing();
    DualTree::new(dr.nodes.len(), dr.edges, dr.legs)
        .map_err(|e| Error::invalid(format!("resolution of the curve is not DM-stable: {e}")))
}

/// Like [`resolve`] but keeps valence-2 components, for bridges.
pub(crate) fn resolve_unchecked(curve: &CurveType) -> DualTree {
    let dr = curve.drawing();
    DualTree::new_unchecked(dr.nodes.len(), dr.edges, dr.legs).expect("drawing of a curve type is a tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::lincore::rat;

    fn flip_plus() -> Linearization {
        Linearization::symmetric(5, 19, rat(4, 9) + rat(1, 1000)).unwrap()
    }

    #[test]
    fn single_vertex_gets_everything() {
        let t = DualTree::single(6).unwrap();
        let l = Linearization::symmetric(3, 6, rat(3, 10)).unwrap();
        assert_eq!(degree_assignment(&t, &l).unwrap(), vec![3]);
    }

    #[test]
    fn triple_point_star() {
        let l = Linearization::symmetric(9, 9, rat(2, 5)).unwrap();
        let t = DualTree::star(&[3, 3, 3]).unwrap();
        assert_eq!(degree_assignment(&t, &l).unwrap(), vec![0, 3, 3, 3]);
        let c = z_contract(&t, &l).unwrap();
        assert_eq!(c.degrees(), &[3, 3, 3]);
        assert_eq!(c.singular().len(), 1);
        assert_eq!(c.singular()[0].branches.len(), 3);
        assert!(c.singular()[0].marks.is_empty());
        let back = resolve(&c).unwrap();
        assert!(back.is_isomorphic(&t));
    }

    #[test]
    fn caterpillar_off_the_wall() {
        // direct sigma: 10 -> 3, 9 -> 2, 7 -> 2, 12 -> 3, 5 -> 1, 14 -> 4
        let t = DualTree::caterpillar(&[10, 2, 2, 5]).unwrap();
        assert_eq!(degree_assignment(&t, &flip_plus()).unwrap(), vec![3, 1, 0, 1]);
        assert_eq!(z_assignment(&t, &flip_plus()).unwrap(), vec![2]);
    }

    #[test]
    fn ten_four_five_keeps_its_middle() {
        let t = DualTree::caterpillar(&[10, 4, 5]).unwrap();
        let minus = Linearization::symmetric(5, 19, rat(4, 9) - rat(1, 1000)).unwrap();
        for l in [flip_plus(), minus] {
            assert!(z_assignment(&t, &l).unwrap().is_empty());
        }
    }

    #[test]
    fn on_wall_is_reported() {
        let t = DualTree::caterpillar(&[10, 2, 2, 5]).unwrap();
        let l = Linearization::symmetric(5, 19, rat(4, 9)).unwrap();
        assert!(matches!(degree_assignment(&t, &l), Err(Error::OnWall { .. })));
    }

    #[test]
    fn round_trip_on_all_trees() {
        let lim = Limits::default();
        let l = Linearization::new(2, rat(3, 11), vec![rat(1, 2), rat(5, 11), rat(7, 23), rat(15, 22), rat(199, 253)])
            .unwrap();
        for t in DualTree::all(5, &lim).unwrap() {
            let c = z_contract(&t, &l).unwrap();
            assert_eq!(c.d(), 2);
            let again = z_contract(&resolve(&c).unwrap(), &l).unwrap();
            assert!(again.is_isomorphic(&c), "{t}: {c} vs {again}");
        }
    }
}
