//! Stable genus-0 dual trees with labeled legs, their one-edge
//! specializations, and F-curve partitions.

mod fcurve;
mod io;

pub(crate) use io::parse_mark_table;

pub use fcurve::{fcurve_sigma_sum, FCurvePartition};

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::MarkedSubset;

/// A Deligne-Mumford stable dual graph: a tree whose vertices all have
/// valence (edges plus legs) at least 3, with legs labeled `1..=n`.
///
/// Vertex numbering is not meaningful; compare trees with
/// [`DualTree::key`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualTree {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    /// `legs[i]` is the vertex carrying mark `i + 1`.
    legs: Vec<usize>,
}

/// Isomorphism class of a [`DualTree`] (fixing legs): its sorted canonical
/// edge splits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeKey(pub Vec<u64>);

/// A one-edge specialization: `vertex` of the source tree became the two
/// ends of the new edge.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub tree: DualTree,
    pub vertex: usize,
    pub split_into: (usize, usize),
}

impl Specialization {
    /// Vertices of the specialized tree corresponding to source vertex `v`.
    pub fn image(&self, v: usize) -> Vec<usize> {
        if v == self.vertex {
            vec![self.split_into.0, self.split_into.1]
        } else {
            vec![v]
        }
    }
}

impl DualTree {
    /// Validates tree shape and DM stability.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, legs: Vec<usize>) -> Result<Self> {
        let t = Self::new_unchecked(vertices, edges, legs)?;
        if let Some(v) = (0..t.vertices).find(|&v| t.valence(v) < 3) {
            return Err(Error::invalid(format!(
                "vertex {v} has valence {} (< 3); the tree is not DM-stable",
                t.valence(v)
            )));
        }
        Ok(t)
    }

    /// Checks tree shape and legs but not valence.
    pub(crate) fn new_unchecked(vertices: usize, edges: Vec<(usize, usize)>, legs: Vec<usize>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::invalid("a tree needs at least one vertex"));
        }
        if legs.is_empty() || legs.len() > 64 {
            return Err(Error::invalid(format!("number of legs must be in 1..=64, got {}", legs.len())));
        }
        if let Some((i, v)) = legs.iter().enumerate().find(|(_, &v)| v >= vertices) {
            return Err(Error::invalid(format!("mark {} sits on missing vertex {v}", i + 1)));
        }
        if edges.len() + 1 != vertices {
            return Err(Error::invalid(format!(
                "{} vertices need {} edges for a tree, got {}",
                vertices,
                vertices - 1,
                edges.len()
            )));
        }
        let mut seen = HashSet::new();
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return Err(Error::invalid(format!("edge ({a}, {b}) uses a missing vertex")));
            }
            if a == b {
                return Err(Error::invalid(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::invalid(format!("repeated edge ({a}, {b})")));
            }
        }
        let t = DualTree { vertices, edges, legs };
        if t.component_of(0, None).len() != vertices {
            return Err(Error::invalid("graph is not connected"));
        }
        Ok(t)
    }

    /// One vertex carrying all `n` legs.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(1, vec![], vec![0; n])
    }

    /// A chain of vertices carrying `sizes[i]` consecutive legs each.
    pub fn caterpillar(sizes: &[usize]) -> Result<Self> {
        let mut legs = Vec::new();
        for (v, &s) in sizes.iter().enumerate() {
            legs.extend(std::iter::repeat(v).take(s));
        }
        let edges = (1..sizes.len()).map(|v| (v - 1, v)).collect();
        Self::new(sizes.len(), edges, legs)
    }

    /// An unmarked center (vertex 0) joined to one vertex per entry of `sizes`,
    /// each carrying that many consecutive legs.
    pub fn star(sizes: &[usize]) -> Result<Self> {
        let mut legs = Vec::new();
        for (i, &s) in sizes.iter().enumerate() {
            legs.extend(std::iter::repeat(i + 1).take(s));
        }
        let edges = (1..=sizes.len()).map(|v| (0, v)).collect();
        Self::new(sizes.len() + 1, edges, legs)
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertex carrying each mark, indexed by `mark - 1`.
    pub fn leg_vertices(&self) -> &[usize] {
        &self.legs
    }

    pub fn legs_at(&self, v: usize) -> MarkedSubset {
        MarkedSubset::from_marks(self.legs.iter().enumerate().filter(|(_, &w)| w == v).map(|(i, _)| i + 1))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.neighbors(v).len() + self.legs_at(v).len()
    }

    /// Vertices reachable from `start` without passing through `blocked`.
    pub(crate) fn component_of(&self, start: usize, blocked: Option<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.vertices];
        seen[start] = true;
        if let Some(b) = blocked {
            seen[b] = true;
        }
        let mut out = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Legs on the side of `from` after cutting the edge `{from, cut}`.
    pub fn side_marks(&self, from: usize, cut: usize) -> MarkedSubset {
        self.component_of(from, Some(cut)).into_iter().fold(MarkedSubset::EMPTY, |acc, v| acc.union(self.legs_at(v)))
    }

    /// For each edge `(a, b)`, the legs on the `a` side and on the `b` side.
    pub fn edge_subsets(&self) -> Vec<(MarkedSubset, MarkedSubset)> {
        let n = self.n();
        self.edges
            .iter()
            .map(|&(a, b)| {
                let s = self.side_marks(a, b);
                (s, s.complement(n))
            })
            .collect()
    }

    /// Leg sets of the components of the tree minus `v`, one per neighbor.
    pub fn branches(&self, v: usize) -> Vec<MarkedSubset> {
        self.neighbors(v).into_iter().map(|w| self.side_marks(w, v)).collect()
    }

    /// Canonical form: sorted edge splits, each given by the side containing
    /// mark 1.
    pub fn key(&self) -> TreeKey {
        let n = self.n();
        let mut splits: Vec<u64> = self.edge_subsets().into_iter().map(|(a, _)| a.canonical(n).bits()).collect();
        splits.sort_unstable();
        TreeKey(splits)
    }

    pub fn is_isomorphic(&self, other: &DualTree) -> bool {
        self.n() == other.n() && self.key() == other.key()
    }

    /// Identifies a vertex up to isomorphism: its sorted branch leg sets.
    pub fn vertex_key(&self, v: usize) -> Vec<u64> {
        let mut k: Vec<u64> = self.branches(v).into_iter().map(|b| b.bits()).collect();
        k.sort_unstable();
        k
    }

    /// The vertex of `self` corresponding to vertex `v` of an isomorphic tree.
    pub fn matching_vertex(&self, other: &DualTree, v: usize) -> Option<usize> {
        let key = other.vertex_key(v);
        (0..self.vertices).find(|&w| self.vertex_key(w) == key)
    }

    /// Every way to split one vertex into two joined by a new edge, keeping
    /// valence at least 3 on both sides.
    pub fn specializations(&self) -> Vec<Specialization> {
        let mut out = Vec::new();
        for v in 0..self.vertices {
            let nbrs = self.neighbors(v);
            let legs = self.legs_at(v).to_vec();
            // items: neighbors first, then legs
            let r = nbrs.len() + legs.len();
            if r < 4 {
                continue;
            }
            // item 0 always stays on v; the new vertex takes `moved`
            for moved in 1u64..(1 << r) {
                if moved & 1 == 1 {
                    continue;
                }
                let k = moved.count_ones() as usize;
                if k < 2 || r - k < 2 {
                    continue;
                }
                let new_v = self.vertices;
                let mut edges: Vec<(usize, usize)> = Vec::with_capacity(self.edges.len() + 1);
                for &(a, b) in &self.edges {
                    let other = if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    };
                    match other {
                        Some(w) => {
                            let idx = nbrs.iter().position(|&x| x == w).expect("neighbor");
                            let end = if moved >> idx & 1 == 1 { new_v } else { v };
                            edges.push((end.min(w), end.max(w)));
                        }
                        None => edges.push((a, b)),
                    }
                }
                edges.push((v, new_v));
                let mut leg_map = self.legs.clone();
                for (j, &mark) in legs.iter().enumerate() {
                    if moved >> (nbrs.len() + j) & 1 == 1 {
                        leg_map[mark - 1] = new_v;
                    }
                }
                let tree = DualTree { vertices: self.vertices + 1, edges, legs: leg_map };
                debug_assert!(tree.clone().validated().is_ok());
                out.push(Specialization { tree, vertex: v, split_into: (v, new_v) });
            }
        }
        out
    }

    fn validated(self) -> Result<Self> {
        Self::new(self.vertices, self.edges, self.legs)
    }

    /// Every DM tree on `n` legs up to isomorphism, generated from the
    /// one-vertex tree by repeated specialization. Sorted by edge count, then
    /// key.
    pub fn all(n: usize, limits: &Limits) -> Result<Vec<DualTree>> {
        if n < 3 {
            return Err(Error::invalid("stable trees need at least 3 legs"));
        }
        limits.check_trees(n)?;
        let start = DualTree::single(n)?;
        let mut seen: HashSet<TreeKey> = HashSet::from([start.key()]);
        let mut out = vec![start.clone()];
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for t in &frontier {
                for s in t.specializations() {
                    if seen.insert(s.tree.key()) {
                        next.push(s.tree);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by_cached_key(|t| (t.edges.len(), t.key()));
        Ok(out)
    }

    /// Same tree with vertices renumbered in a canonical order.
    pub fn normalized(&self) -> DualTree {
        let mut order: Vec<usize> = (0..self.vertices).collect();
        order.sort_by_cached_key(|&v| self.vertex_key(v));
        let mut rank = vec![0; self.vertices];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (rank[a].min(rank[b]), rank[a].max(rank[b])))
            .collect();
        edges.sort_unstable();
        DualTree { vertices: self.vertices, edges, legs: self.legs.iter().map(|&v| rank[v]).collect() }
    }

    /// Splits as a set, for quick subset queries.
    pub fn split_set(&self) -> BTreeSet<u64> {
        self.key().0.into_iter().collect()
    }

    /// True iff some edge separates exactly `subset` from its complement.
    pub fn has_split(&self, subset: MarkedSubset) -> bool {
        let n = self.n();
        self.split_set().contains(&subset.canonical(n).bits())
    }
}

impl fmt::Display for DualTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.vertices).map(|v| format!("v{v}{}", self.legs_at(v))).collect();
        let edges: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "[{}; {}]", parts.join(" "), edges.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_edge_split() {
        let t = DualTree::caterpillar(&[2, 3]).unwrap();
        let s = t.edge_subsets();
        assert_eq!(s, vec![(MarkedSubset::from_marks([1, 2]), MarkedSubset::from_marks([3, 4, 5]))]);
    }

    #[test]
    fn caterpillar_splits() {
        let t = DualTree::caterpillar(&[10, 2, 2, 5]).unwrap();
        let sizes: Vec<usize> = t.edge_subsets().iter().map(|(a, _)| a.len()).collect();
        assert_eq!(sizes, vec![10, 12, 14]);
    }

    #[test]
    fn star_splits() {
        let t = DualTree::star(&[3, 3, 3]).unwrap();
        for (a, b) in t.edge_subsets() {
            assert_eq!((a.len(), b.len()), (6, 3));
        }
    }

    #[test]
    fn rejects_unstable_and_cyclic() {
        assert!(DualTree::caterpillar(&[2, 0, 2]).is_err());
        assert!(DualTree::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![0; 6]).is_err());
        assert!(DualTree::new(2, vec![], vec![0, 0, 0, 1, 1, 1]).is_err());
    }

    #[test]
    fn specialization_counts() {
        assert_eq!(DualTree::single(4).unwrap().specializations().len(), 3);
        assert_eq!(DualTree::single(5).unwrap().specializations().len(), 10);
        let t = DualTree::caterpillar(&[3, 3]).unwrap();
        let specs = t.specializations();
        assert_eq!(specs.len(), 6);
        for v in 0..2 {
            assert_eq!(specs.iter().filter(|s| s.vertex == v).count(), 3);
        }
    }

    #[test]
    fn tree_counts() {
        let lim = Limits::default();
        let counts: Vec<usize> = (4..=7).map(|n| DualTree::all(n, &lim).unwrap().len()).collect();
        assert_eq!(counts, vec![4, 26, 236, 2752]);
    }

    #[test]
    fn key_ignores_vertex_names() {
        let a = DualTree::new(2, vec![(0, 1)], vec![0, 0, 1, 1, 1]).unwrap();
        let b = DualTree::new(2, vec![(1, 0)], vec![1, 1, 0, 0, 0]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert_eq!(a.normalized(), b.normalized());
        assert_eq!(b.matching_vertex(&a, 0), Some(1));
    }
}
