use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use super::{CurveType, SingularPoint, SmoothPoint};
use crate::error::Result;
use crate::fileio::{at, from_toml};
use crate::lincore::MarkedSubset;
use crate::trees::parse_mark_table;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    component: Vec<Spanned<RawComponent>>,
    #[serde(default)]
    singular: Vec<Spanned<RawSingular>>,
    #[serde(default)]
    collision: Vec<Spanned<RawCollision>>,
    #[serde(default)]
    marks: Option<Spanned<BTreeMap<Spanned<String>, Spanned<usize>>>>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    degree: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSingular {
    branches: Vec<Spanned<usize>>,
    #[serde(default)]
    marks: Vec<Spanned<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCollision {
    component: Spanned<usize>,
    marks: Vec<Spanned<usize>>,
}

#[derive(Serialize)]
struct OutSingular {
    branches: Vec<usize>,
    marks: Vec<usize>,
}

#[derive(Serialize)]
struct OutCollision {
    component: usize,
    marks: Vec<usize>,
}

#[derive(Serialize)]
struct OutCurve {
    component: Vec<RawComponent>,
    singular: Vec<OutSingular>,
    collision: Vec<OutCollision>,
    marks: BTreeMap<String, usize>,
}

impl CurveType {
    /// Reads the curve format. Single marks go in `[marks]` as
    /// `mark = component`; colliding marks and marks at singular points are
    /// listed with their point.
    ///
    /// ```toml
    /// [[component]]
    /// degree = 2
    /// [[component]]
    /// degree = 1
    /// [[singular]]
    /// branches = [0, 1]
    /// marks = [5]
    /// [[collision]]
    /// component = 1
    /// marks = [3, 4]
    /// [marks]
    /// 1 = 0
    /// 2 = 0
    /// ```
    pub fn from_toml_str(source: &str, text: &str) -> Result<Self> {
        let raw: RawCurve = toml::from_str(text).map_err(|e| from_toml(source, text, e))?;
        let comps = raw.component.len();
        let degrees: Vec<u32> = raw.component.iter().map(|c| c.get_ref().degree).collect();
        let mut max_mark = 0;
        let mut mark_set = |list: &[Spanned<usize>]| -> Result<MarkedSubset> {
            let mut s = MarkedSubset::EMPTY;
            for m in list {
                let v = *m.get_ref();
                if !(1..=64).contains(&v) {
                    return Err(at(source, text, m.span(), format!("{v} is not a mark number")));
                }
                max_mark = max_mark.max(v);
                s = s.union(MarkedSubset::from_marks([v]));
            }
            Ok(s)
        };
        let mut singular = Vec::new();
        for s in &raw.singular {
            let r = s.get_ref();
            for b in &r.branches {
                if *b.get_ref() >= comps {
                    return Err(at(source, text, b.span(), format!("component {} does not exist", b.get_ref())));
                }
            }
            let marks = mark_set(&r.marks)?;
            singular.push(SingularPoint { branches: r.branches.iter().map(|b| *b.get_ref()).collect(), marks });
        }
        let mut smooth = Vec::new();
        for p in &raw.collision {
            let r = p.get_ref();
            if *r.component.get_ref() >= comps {
                return Err(at(source, text, r.component.span(), format!("component {} does not exist", r.component.get_ref())));
            }
            let marks = mark_set(&r.marks)?;
            smooth.push(SmoothPoint { component: *r.component.get_ref(), marks });
        }
        if let Some(table) = &raw.marks {
            for (mark, c) in parse_mark_table(source, text, table, comps, "component")? {
                if mark > 64 {
                    return Err(at(source, text, table.span(), format!("mark {mark} is out of range")));
                }
                max_mark = max_mark.max(mark);
                smooth.push(SmoothPoint { component: c, marks: MarkedSubset::from_marks([mark]) });
            }
        }
        let span = raw.component.first().map_or(0..0, |c| c.span());
        CurveType::new(max_mark, degrees, singular, smooth).map_err(|e| at(source, text, span, e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        let mut marks = BTreeMap::new();
        let mut collision = Vec::new();
        for p in &self.smooth {
            if p.marks.len() == 1 {
                marks.insert(p.marks.to_vec()[0].to_string(), p.component);
            } else {
                collision.push(OutCollision { component: p.component, marks: p.marks.to_vec() });
            }
        }
        let out = OutCurve {
            component: self.degrees.iter().map(|&degree| RawComponent { degree }).collect(),
            singular: self
                .singular
                .iter()
                .map(|s| OutSingular { branches: s.branches.clone(), marks: s.marks.to_vec() })
                .collect(),
            collision,
            marks,
        };
        toml::to_string(&out).expect("curve serializes")
    }
}
