use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use super::DualTree;
use crate::error::Result;
use crate::fileio::{at, from_toml};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTree {
    vertices: Spanned<usize>,
    #[serde(default)]
    edges: Vec<Spanned<Vec<Spanned<usize>>>>,
    legs: Spanned<BTreeMap<Spanned<String>, Spanned<usize>>>,
}

#[derive(Serialize)]
struct OutTree {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    legs: BTreeMap<String, usize>,
}

pub(crate) fn parse_edges(
    source: &str,
    text: &str,
    raw: &[Spanned<Vec<Spanned<usize>>>],
    vertices: usize,
) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for e in raw {
        let pair = e.get_ref();
        if pair.len() != 2 {
            return Err(at(source, text, e.span(), "an edge is a pair [a, b] of vertex indices"));
        }
        for v in pair {
            if *v.get_ref() >= vertices {
                return Err(at(source, text, v.span(), format!("vertex {} does not exist", v.get_ref())));
            }
        }
        edges.push((*pair[0].get_ref(), *pair[1].get_ref()));
    }
    Ok(edges)
}

/// Parses a table `mark = vertex`; marks must be exactly `1..=n`.
pub(crate) fn parse_mark_table(
    source: &str,
    text: &str,
    raw: &Spanned<BTreeMap<Spanned<String>, Spanned<usize>>>,
    targets: usize,
    what: &str,
) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (k, v) in raw.get_ref() {
        let mark: usize = k
            .get_ref()
            .parse()
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| at(source, text, k.span(), format!("{:?} is not a mark number", k.get_ref())))?;
        if *v.get_ref() >= targets {
            return Err(at(source, text, v.span(), format!("{what} {} does not exist", v.get_ref())));
        }
        out.push((mark, *v.get_ref()));
    }
    Ok(out)
}

impl DualTree {
    /// Reads the tree format:
    ///
    /// ```toml
    /// vertices = 2
    /// edges = [[0, 1]]
    /// [legs]
    /// 1 = 0
    /// 2 = 0
    /// 3 = 1
    /// 4 = 1
    /// ```
    pub fn from_toml_str(source: &str, text: &str) -> Result<Self> {
        let raw: RawTree = toml::from_str(text).map_err(|e| from_toml(source, text, e))?;
        let vertices = *raw.vertices.get_ref();
        let edges = parse_edges(source, text, &raw.edges, vertices)?;
        let pairs = parse_mark_table(source, text, &raw.legs, vertices, "vertex")?;
        let n = pairs.len();
        let mut legs = vec![usize::MAX; n];
        for (mark, v) in pairs {
            if mark > n {
                return Err(at(source, text, raw.legs.span(), format!("marks must be exactly 1..{n}; found {mark}")));
            }
            legs[mark - 1] = v;
        }
        DualTree::new(vertices, edges, legs).map_err(|e| at(source, text, raw.vertices.span(), e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        let out = OutTree {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            legs: self.legs.iter().enumerate().map(|(i, &v)| ((i + 1).to_string(), v)).collect(),
        };
        toml::to_string(&out).expect("tree serializes")
    }
}
