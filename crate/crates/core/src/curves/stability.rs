use num_traits::One;
use serde::Serialize;

use super::contract::{contract_with_degrees, degree_assignment_table, resolve};
use super::{CurveType, Node};
use crate::error::Result;
use crate::lincore::{format_rational, Linearization, MarkedSubset, Rational, WeightTable};
use crate::trees::DualTree;

/// A necessary condition for GIT-stability that the curve violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// Marks colliding at a smooth point weigh more than 1.
    SmoothWeight { marks: MarkedSubset, weight: String },
    /// Marks at a multiplicity-`m` point weigh at least `1 - (m-1) gamma`.
    SingularWeight { point: usize, multiplicity: usize, weight: String, bound: String },
    /// `gamma >= 1/(m-1)` rules out a point of multiplicity `m`.
    Multiplicity { point: usize, multiplicity: usize },
    /// A tail whose degree differs from `sigma` of its marks.
    TailDegree { marks: MarkedSubset, degree: u32, sigma: u32 },
    /// Blowing up the singular points does not give a DM-stable tree.
    NotDmStable { reason: String },
    /// The resolved tree contracts to a different curve.
    ContractsElsewhere { image: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub diagnostics: Vec<Diagnostic>,
}

/// Stable iff contracting the resolution at `lin` gives the curve back.
/// Reports every failed necessary condition along the way.
pub fn is_git_stable(curve: &CurveType, lin: &Linearization, limits: &crate::Limits) -> Result<StabilityReport> {
    if curve.n() != lin.n() || curve.d() != lin.d() {
        return Err(crate::Error::invalid(format!(
            "curve has (d, n) = ({}, {}) but the linearization has ({}, {})",
            curve.d(),
            curve.n(),
            lin.d(),
            lin.n()
        )));
    }
    crate::lincore::require_generic(lin, limits)?;
    let table = WeightTable::new(lin)?;
    let mut diagnostics = necessary_conditions(curve, lin, &table);
    let stable = match resolve(curve) {
        Err(e) => {
            diagnostics.push(Diagnostic::NotDmStable { reason: e.to_string() });
            false
        }
        Ok(tree) => {
            let deg = degree_assignment_table(&tree, &table)?;
            let image = contract_with_degrees(&tree, &deg);
            let same = image.is_isomorphic(curve);
            if !same {
                diagnostics.push(Diagnostic::ContractsElsewhere { image: image.to_string() });
            }
            same
        }
    };
    Ok(StabilityReport { stable: stable && diagnostics.is_empty(), diagnostics })
}

fn necessary_conditions(curve: &CurveType, lin: &Linearization, table: &WeightTable) -> Vec<Diagnostic> {
    let one = Rational::one();
    let gamma = lin.gamma();
    let mut out = Vec::new();
    for p in curve.smooth() {
        let w = lin.subset_weight(p.marks);
        if w > one {
            out.push(Diagnostic::SmoothWeight { marks: p.marks, weight: format_rational(&w) });
        }
    }
    for (i, s) in curve.singular().iter().enumerate() {
        let m = s.branches.len();
        let excess = Rational::from_integer((m as i64 - 1).into());
        if m >= 3 && gamma * &excess >= one {
            out.push(Diagnostic::Multiplicity { point: i, multiplicity: m });
        }
        let bound = &one - gamma * &excess;
        let w = lin.subset_weight(s.marks);
        if w >= bound {
            out.push(Diagnostic::SingularWeight {
                point: i,
                multiplicity: m,
                weight: format_rational(&w),
                bound: format_rational(&bound),
            });
        }
    }
    // tails: the component side of each edge of the drawing
    let dr = curve.drawing();
    let Ok(tree) = DualTree::new_unchecked(dr.nodes.len(), dr.edges.clone(), dr.legs.clone()) else {
        return out;
    };
    let d = curve.d();
    for &(a, b) in tree.edges() {
        let (from, cut) = match (dr.nodes[a], dr.nodes[b]) {
            (Node::Component(_), _) => (a, b),
            _ => (b, a),
        };
        let side = tree.component_of(from, Some(cut));
        let marks = side.iter().fold(MarkedSubset::EMPTY, |acc, &v| acc.union(tree.legs_at(v)));
        let degree: u32 = side
            .iter()
            .filter_map(|&v| match dr.nodes[v] {
                Node::Component(c) => Some(curve.degrees()[c]),
                _ => None,
            })
            .sum();
        let sigma = table.class(marks).sigma(d);
        if degree != sigma {
            out.push(Diagnostic::TailDegree { marks, degree, sigma });
        }
    }
    out
}
