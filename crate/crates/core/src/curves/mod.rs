//! Combinatorial types of GIT-(semi)stable curves: degree assignment,
//! Z-contraction, resolution back to a dual tree, and stability checks on
//! and off walls.

mod contract;
mod io;
mod stability;
mod wall;

pub use contract::{degree_assignment, degree_assignment_table, resolve, z_assignment, z_contract};
pub use stability::{is_git_stable, Diagnostic, StabilityReport};
pub use wall::{find_bridge, wall_contract, wall_stability, IkBridge, WallStability};
pub(crate) use wall::check_alone;

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lincore::MarkedSubset;

/// A singular point of multiplicity `branches.len()`, possibly carrying
/// marks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub branches: Vec<usize>,
    pub marks: MarkedSubset,
}

/// A smooth point of one component where the given marks sit together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothPoint {
    pub component: usize,
    pub marks: MarkedSubset,
}

/// Combinatorial type of a genus-0 curve of total degree `d` with `n` marks:
/// components with positive degrees, multinodal singular points, and the
/// locations of the marks.
///
/// Component numbering is not meaningful; compare with [`CurveType::key`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveType {
    n: usize,
    degrees: Vec<u32>,
    singular: Vec<SingularPoint>,
    smooth: Vec<SmoothPoint>,
}

/// Canonical form of a [`CurveType`] up to marked isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveKey(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Component(usize),
    Singular(usize),
    Smooth(usize),
}

/// The curve drawn as a tree: components, then one vertex per singular point
/// that is marked or has multiplicity at least 3, then one per smooth point
/// with at least two marks. Unmarked nodes are plain edges.
pub(crate) struct Drawing {
    pub nodes: Vec<Node>,
    pub edges: Vec<(usize, usize)>,
    pub legs: Vec<usize>,
}

impl CurveType {
    pub fn new(n: usize, degrees: Vec<u32>, singular: Vec<SingularPoint>, smooth: Vec<SmoothPoint>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::invalid(format!("number of marks must be in 1..=64, got {n}")));
        }
        if degrees.is_empty() {
            return Err(Error::invalid("a curve needs at least one component"));
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::invalid(format!("component {i} has degree 0")));
        }
        let comps = degrees.len();
        let mut seen = MarkedSubset::EMPTY;
        let mut claim = |marks: MarkedSubset, what: String| -> Result<()> {
            if !marks.is_subset_of(MarkedSubset::full(n)) {
                return Err(Error::invalid(format!("{what} uses marks outside 1..{n}")));
            }
            if !seen.is_disjoint(marks) {
                return Err(Error::invalid(format!("{what} repeats a mark of {}", seen.intersection(marks))));
            }
            seen = seen.union(marks);
            Ok(())
        };
        for (i, s) in singular.iter().enumerate() {
            if s.branches.len() < 2 {
                return Err(Error::invalid(format!("singular point {i} has fewer than 2 branches")));
            }
            let mut b = s.branches.clone();
            b.sort_unstable();
            b.dedup();
            if b.len() != s.branches.len() {
                return Err(Error::invalid(format!("singular point {i} meets a component twice")));
            }
            if let Some(&c) = b.iter().find(|&&c| c >= comps) {
                return Err(Error::invalid(format!("singular point {i} meets missing component {c}")));
            }
            claim(s.marks, format!("singular point {i}"))?;
        }
        for (i, p) in smooth.iter().enumerate() {
            if p.marks.is_empty() {
                return Err(Error::invalid(format!("smooth point {i} carries no marks")));
            }
            if p.component >= comps {
                return Err(Error::invalid(format!("smooth point {i} is on missing component {}", p.component)));
            }
            claim(p.marks, format!("smooth point {i}"))?;
        }
        if seen != MarkedSubset::full(n) {
            return Err(Error::invalid(format!(
                "marks {} have no location",
                MarkedSubset::full(n).difference(seen)
            )));
        }
        let excess: usize = singular.iter().map(|s| s.branches.len() - 1).sum();
        if comps != excess + 1 {
            return Err(Error::invalid(format!(
                "{comps} components and singular points of total excess {excess} do not form a rational tree"
            )));
        }
        let c = CurveType { n, degrees, singular, smooth };
        if !c.is_connected() {
            return Err(Error::invalid("curve is not connected"));
        }
        Ok(c)
    }

    /// A smooth curve of degree `d` with `n` distinct marks.
    pub fn smooth_curve(d: u32, n: usize) -> Result<Self> {
        let smooth = (1..=n).map(|m| SmoothPoint { component: 0, marks: MarkedSubset::from_marks([m]) }).collect();
        CurveType::new(n, vec![d], vec![], smooth)
    }

    fn is_connected(&self) -> bool {
        let comps = self.degrees.len();
        let mut seen = vec![false; comps];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for s in &self.singular {
                if s.branches.contains(&c) {
                    for &b in &s.branches {
                        if !seen[b] {
                            seen[b] = true;
                            queue.push_back(b);
                        }
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total degree.
    pub fn d(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn num_components(&self) -> usize {
        self.degrees.len()
    }

    pub fn singular(&self) -> &[SingularPoint] {
        &self.singular
    }

    pub fn smooth(&self) -> &[SmoothPoint] {
        &self.smooth
    }

    /// Marks at smooth points of component `c`.
    pub fn interior_marks(&self, c: usize) -> MarkedSubset {
        self.smooth.iter().filter(|p| p.component == c).fold(MarkedSubset::EMPTY, |a, p| a.union(p.marks))
    }

    /// True iff every singular point is an ordinary node.
    pub fn is_nodal(&self) -> bool {
        self.singular.iter().all(|s| s.branches.len() == 2)
    }

    /// True iff some mark sits at a singular point.
    pub fn has_marks_at_singularities(&self) -> bool {
        self.singular.iter().any(|s| !s.marks.is_empty())
    }

    pub(crate) fn drawing(&self) -> Drawing {
        let mut nodes: Vec<Node> = (0..self.degrees.len()).map(Node::Component).collect();
        let mut edges = Vec::new();
        let mut legs = vec![usize::MAX; self.n];
        for (i, s) in self.singular.iter().enumerate() {
            if s.branches.len() == 2 && s.marks.is_empty() {
                edges.push((s.branches[0], s.branches[1]));
                continue;
            }
            let v = nodes.len();
            nodes.push(Node::Singular(i));
            for &b in &s.branches {
                edges.push((b, v));
            }
            for m in s.marks.marks() {
                legs[m - 1] = v;
            }
        }
        for (i, p) in self.smooth.iter().enumerate() {
            let v = if p.marks.len() == 1 {
                p.component
            } else {
                let v = nodes.len();
                nodes.push(Node::Smooth(i));
                edges.push((p.component, v));
                v
            };
            for m in p.marks.marks() {
                legs[m - 1] = v;
            }
        }
        Drawing { nodes, edges, legs }
    }

    /// Canonical form: the drawing rooted at the vertex carrying mark 1,
    /// encoded with sorted children.
    pub fn key(&self) -> CurveKey {
        let dr = self.drawing();
        let count = dr.nodes.len();
        let mut adj = vec![Vec::new(); count];
        for &(a, b) in &dr.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut legs_at = vec![Vec::new(); count];
        for (i, &v) in dr.legs.iter().enumerate() {
            legs_at[v].push(i + 1);
        }
        let label = |v: usize| match dr.nodes[v] {
            Node::Component(c) => format!("C{}", self.degrees[c]),
            Node::Singular(_) => "S".to_string(),
            Node::Smooth(_) => "P".to_string(),
        };
        fn encode(
            v: usize,
            parent: usize,
            adj: &[Vec<usize>],
            legs_at: &[Vec<usize>],
            label: &dyn Fn(usize) -> String,
        ) -> String {
            let mut kids: Vec<String> =
                adj[v].iter().filter(|&&w| w != parent).map(|&w| encode(w, v, adj, legs_at, label)).collect();
            kids.sort();
            let legs: Vec<String> = legs_at[v].iter().map(|m| m.to_string()).collect();
            format!("{}[{}]({})", label(v), legs.join(","), kids.join(""))
        }
        CurveKey(encode(dr.legs[0], usize::MAX, &adj, &legs_at, &label))
    }

    /// Marked isomorphism.
    pub fn is_isomorphic(&self, other: &CurveType) -> bool {
        self.n == other.n && self.key() == other.key()
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(c, deg)| format!("E{c}(deg {deg}, marks {})", self.interior_marks(c)))
            .collect();
        write!(f, "{}", comps.join(" "))?;
        for s in &self.singular {
            let b: Vec<String> = s.branches.iter().map(|c| format!("E{c}")).collect();
            write!(f, "; m={} at {}", s.branches.len(), b.join("-"))?;
            if !s.marks.is_empty() {
                write!(f, " marks {}", s.marks)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(a: usize, b: usize) -> SingularPoint {
        SingularPoint { branches: vec![a, b], marks: MarkedSubset::EMPTY }
    }

    fn pt(c: usize, marks: &[usize]) -> SmoothPoint {
        SmoothPoint { component: c, marks: MarkedSubset::from_marks(marks.iter().copied()) }
    }

    #[test]
    fn validation() {
        assert!(CurveType::smooth_curve(3, 5).is_ok());
        // two components need exactly one node
        assert!(CurveType::new(2, vec![1, 1], vec![], vec![pt(0, &[1]), pt(1, &[2])]).is_err());
        assert!(CurveType::new(2, vec![1, 1], vec![node(0, 1)], vec![pt(0, &[1])]).is_err());
        assert!(CurveType::new(2, vec![1, 0], vec![node(0, 1)], vec![pt(0, &[1]), pt(1, &[2])]).is_err());
        let ok = CurveType::new(2, vec![1, 2], vec![node(0, 1)], vec![pt(0, &[1]), pt(1, &[2])]).unwrap();
        assert_eq!(ok.d(), 3);
    }

    #[test]
    fn key_ignores_numbering() {
        let a = CurveType::new(3, vec![1, 2], vec![node(0, 1)], vec![pt(0, &[1, 2]), pt(1, &[3])]).unwrap();
        let b = CurveType::new(3, vec![2, 1], vec![node(1, 0)], vec![pt(0, &[3]), pt(1, &[2, 1])]).unwrap();
        let c = CurveType::new(3, vec![1, 2], vec![node(0, 1)], vec![pt(0, &[1]), pt(0, &[2]), pt(1, &[3])]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn bridge_chains_are_told_apart() {
        let chain = |degs: Vec<u32>| {
            CurveType::new(2, degs, vec![node(0, 1), node(1, 2), node(2, 3)], vec![pt(0, &[1]), pt(3, &[2])])
                .unwrap()
        };
        assert!(!chain(vec![1, 1, 2, 1]).is_isomorphic(&chain(vec![1, 2, 1, 1])));
    }
}
