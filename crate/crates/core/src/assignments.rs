//! Extremal assignments: rules choosing vertices of every DM tree, the
//! axiom checker, the assignment induced by a linearization, and a search
//! for a linearization inducing a given assignment.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::curves::degree_assignment_table;
use crate::error::{Error, Result};
use crate::fileio::{at, from_toml};
use crate::limits::Limits;
use crate::lincore::{require_generic, Linearization, MarkedSubset, WeightTable};
use crate::models::boggi_params;
use crate::sampling::{random_generic, random_hassett};
use crate::trees::{DualTree, TreeKey};
use crate::walls::{enumerate_walls, signature};

/// How an assignment picks vertices.
#[derive(Clone, Debug)]
pub enum Rule {
    Empty,
    /// Vertices carrying no legs.
    Unmarked,
    /// Vertices inside a tail whose legs all lie in one of the sets.
    TailsWithin(Vec<MarkedSubset>),
    /// `Z_{gamma,c}`: vertices of degree 0.
    Git(Box<WeightTable>),
    /// Listed (tree, vertex) pairs; a vertex is named by its branch leg sets.
    Explicit(HashSet<(TreeKey, Vec<u64>)>),
}

/// A choice of vertices on every DM tree with `n` legs.
#[derive(Clone, Debug)]
pub struct ExtremalAssignment {
    n: usize,
    rule: Rule,
}

impl ExtremalAssignment {
    pub fn new(n: usize, rule: Rule) -> Result<Self> {
        if !(3..=64).contains(&n) {
            return Err(Error::invalid(format!("n must be in 3..=64, got {n}")));
        }
        if let Rule::TailsWithin(sets) = &rule {
            if sets.iter().any(|s| !s.is_subset_of(MarkedSubset::full(n))) {
                return Err(Error::invalid("a set uses marks beyond n"));
            }
        }
        if let Rule::Git(t) = &rule {
            if t.n() != n {
                return Err(Error::invalid("linearization has the wrong number of marks"));
            }
        }
        Ok(ExtremalAssignment { n, rule })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Rule::Empty)
    }

    pub fn unmarked(n: usize) -> Result<Self> {
        Self::new(n, Rule::Unmarked)
    }

    /// Tails marked entirely by one of `sets`.
    pub fn tails_within(n: usize, sets: Vec<MarkedSubset>) -> Result<Self> {
        Self::new(n, Rule::TailsWithin(sets))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// True iff vertex `v` of `tree` is assigned.
    pub fn assigns(&self, tree: &DualTree, v: usize) -> Result<bool> {
        Ok(self.assigned(tree)?[v])
    }

    /// The assigned flag of every vertex.
    pub fn assigned(&self, tree: &DualTree) -> Result<Vec<bool>> {
        if tree.n() != self.n {
            return Err(Error::invalid(format!("tree has {} legs, assignment expects {}", tree.n(), self.n)));
        }
        let count = tree.num_vertices();
        Ok(match &self.rule {
            Rule::Empty => vec![false; count],
            Rule::Unmarked => (0..count).map(|v| tree.legs_at(v).is_empty()).collect(),
            Rule::TailsWithin(sets) => {
                let full = MarkedSubset::full(self.n);
                (0..count)
                    .map(|v| {
                        tree.branches(v).into_iter().any(|b| {
                            let tail = full.difference(b);
                            sets.iter().any(|s| tail.is_subset_of(*s))
                        })
                    })
                    .collect()
            }
            Rule::Git(table) => degree_assignment_table(tree, table)?.into_iter().map(|x| x == 0).collect(),
            Rule::Explicit(set) => {
                let key = tree.key();
                (0..count).map(|v| set.contains(&(key.clone(), tree.vertex_key(v)))).collect()
            }
        })
    }

    /// Reads the rule format: `n = N`, `rule = "empty" | "unmarked" |
    /// "tails-within" | "explicit"`, `sets = [[1, 2], [3, 4]]` for
    /// `tails-within`, and for `explicit` one `[[assigned]]` table per vertex
    /// with `splits` (the tree's edge splits) and `branches` (the vertex's
    /// branch leg sets).
    pub fn from_toml_str(source: &str, text: &str) -> Result<Self> {
        let raw: RawRule = toml::from_str(text).map_err(|e| from_toml(source, text, e))?;
        let n = *raw.n.get_ref();
        let subset = |list: &[usize], span: std::ops::Range<usize>| -> Result<MarkedSubset> {
            if list.iter().any(|&m| m == 0 || m > n) {
                return Err(at(source, text, span, format!("marks must lie in 1..={n}")));
            }
            Ok(MarkedSubset::from_marks(list.iter().copied()))
        };
        let rule = match raw.rule.get_ref().as_str() {
            "empty" => Rule::Empty,
            "unmarked" => Rule::Unmarked,
            "tails-within" => {
                let mut sets = Vec::new();
                for s in &raw.sets {
                    sets.push(subset(s.get_ref(), s.span())?);
                }
                Rule::TailsWithin(sets)
            }
            "explicit" => {
                let mut set = HashSet::new();
                for a in &raw.assigned {
                    let r = a.get_ref();
                    let mut splits = Vec::new();
                    for s in &r.splits {
                        splits.push(subset(s, a.span())?.canonical(n).bits());
                    }
                    splits.sort_unstable();
                    let mut branches = Vec::new();
                    for b in &r.branches {
                        branches.push(subset(b, a.span())?.bits());
                    }
                    branches.sort_unstable();
                    set.insert((TreeKey(splits), branches));
                }
                Rule::Explicit(set)
            }
            other => return Err(at(source, text, raw.rule.span(), format!("unknown rule {other:?}"))),
        };
        Self::new(n, rule).map_err(|e| at(source, text, raw.n.span(), e.to_string()))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    n: Spanned<usize>,
    rule: Spanned<String>,
    #[serde(default)]
    sets: Vec<Spanned<Vec<usize>>>,
    #[serde(default)]
    assigned: Vec<Spanned<RawVertex>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    splits: Vec<Vec<usize>>,
    branches: Vec<Vec<usize>>,
}

/// `Z_{gamma,c}` at a generic point.
pub fn git_assignment(lin: &Linearization, limits: &Limits) -> Result<ExtremalAssignment> {
    require_generic(lin, limits)?;
    ExtremalAssignment::new(lin.n(), Rule::Git(Box::new(WeightTable::new(lin)?)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Every vertex of the tree is assigned.
    Properness,
    /// `v` is assigned but some vertex over it in the specialization is not.
    ClosureForward,
    /// Every vertex over `v` is assigned but `v` is not.
    ClosureBackward,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub axiom: Axiom,
    pub tree: String,
    pub vertex: Option<usize>,
    pub specialized: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalReport {
    pub extremal: bool,
    pub trees: usize,
    pub specializations: usize,
    pub counterexample: Option<Counterexample>,
}

/// Checks properness and both directions of specialization closure over all
/// DM trees on `n` legs. Stops at the first counterexample.
pub fn check_extremal(z: &ExtremalAssignment, limits: &Limits) -> Result<ExtremalReport> {
    let trees = DualTree::all(z.n, limits)?;
    let mut specs = 0;
    let fail = |axiom, t: &DualTree, vertex, spec: Option<&DualTree>, specs| ExtremalReport {
        extremal: false,
        trees: 0,
        specializations: specs,
        counterexample: Some(Counterexample {
            axiom,
            tree: t.to_string(),
            vertex,
            specialized: spec.map(|s| s.to_string()),
        }),
    };
    for (i, t) in trees.iter().enumerate() {
        let a = z.assigned(t)?;
        if a.iter().all(|&x| x) {
            return Ok(ExtremalReport { trees: i + 1, ..fail(Axiom::Properness, t, None, None, specs) });
        }
        for s in t.specializations() {
            specs += 1;
            let b = z.assigned(&s.tree)?;
            for v in 0..t.num_vertices() {
                let over = s.image(v).into_iter().all(|w| b[w]);
                if a[v] && !over {
                    return Ok(ExtremalReport {
                        trees: i + 1,
                        ..fail(Axiom::ClosureForward, t, Some(v), Some(&s.tree), specs)
                    });
                }
                if !a[v] && over {
                    return Ok(ExtremalReport {
                        trees: i + 1,
                        ..fail(Axiom::ClosureBackward, t, Some(v), Some(&s.tree), specs)
                    });
                }
            }
        }
    }
    Ok(ExtremalReport { extremal: true, trees: trees.len(), specializations: specs, counterexample: None })
}

/// A proof that no linearization induces an assignment: two disjoint pairs
/// that must each weigh less than 1, while every mixed pair must weigh more.
/// Summing gives `2 (c_P + c_Q) > 4` against `c_P + c_Q < 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCertificate {
    pub light: [MarkedSubset; 2],
    pub heavy: [MarkedSubset; 4],
}

/// What a two-vertex tree says about one pair `A`: its `A`-vertex is assigned
/// iff `sigma(A) = 0` iff `c_A < 1`.
fn pair_is_light(z: &ExtremalAssignment, pair: MarkedSubset) -> Result<bool> {
    let n = z.n;
    let mut legs = vec![1; n];
    for m in pair.marks() {
        legs[m - 1] = 0;
    }
    let t = DualTree::new(2, vec![(0, 1)], legs)?;
    Ok(z.assigned(&t)?[0])
}

/// Looks for a [`PairCertificate`].
pub fn pair_certificate(z: &ExtremalAssignment) -> Result<Option<PairCertificate>> {
    let n = z.n;
    if n < 5 {
        return Ok(None);
    }
    let pair = |a: usize, b: usize| MarkedSubset::from_marks([a, b]);
    let mut light = BTreeMap::new();
    for a in 1..=n {
        for b in a + 1..=n {
            light.insert((a, b), pair_is_light(z, pair(a, b))?);
        }
    }
    let is_light = |a: usize, b: usize| light[&(a.min(b), a.max(b))];
    for a in 1..=n {
        for b in a + 1..=n {
            if !is_light(a, b) {
                continue;
            }
            for x in 1..=n {
                for y in x + 1..=n {
                    if [x, y].iter().any(|m| *m == a || *m == b) || !is_light(x, y) {
                        continue;
                    }
                    let cross = [(a, x), (a, y), (b, x), (b, y)];
                    if cross.iter().all(|&(p, q)| !is_light(p, q)) {
                        return Ok(Some(PairCertificate {
                            light: [pair(a, b), pair(x, y)],
                            heavy: cross.map(|(p, q)| pair(p, q)),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Random generic samples drawn per round.
    pub samples: usize,
    /// Stop after this many rounds in a row find no new chamber.
    pub patience: usize,
    pub seed: u64,
    /// Try the pair certificate before searching.
    pub certificate: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { samples: 200, patience: 3, seed: 0x5EED, certificate: true }
    }
}

#[derive(Clone, Debug)]
pub struct Realizability {
    pub witness: Option<Linearization>,
    pub certificate: Option<PairCertificate>,
    /// Distinct chambers compared against the assignment.
    pub chambers: usize,
}

/// Searches the chambers of `U_{d,n}` for one whose `Z_{gamma,c}` equals `z`
/// on every DM tree. Candidate points come from known models, from both
/// sides of every wall, and from random sampling until no new chamber turns
/// up.
pub fn realizability_search(
    z: &ExtremalAssignment,
    d: u32,
    limits: &Limits,
    opts: &SearchOptions,
) -> Result<Realizability> {
    let n = z.n;
    let trees = DualTree::all(n, limits)?;
    if opts.certificate {
        if let Some(c) = pair_certificate(z)? {
            return Ok(Realizability { witness: None, certificate: Some(c), chambers: 0 });
        }
    }
    let target: Vec<Vec<bool>> = trees.iter().map(|t| z.assigned(t)).collect::<Result<_>>()?;
    // two-vertex trees first: they reject most chambers at once
    let mut order: Vec<usize> = (0..trees.len()).collect();
    order.sort_by_key(|&i| trees[i].num_vertices());
    let mut chambers = Chambers { trees: &trees, target: &target, order: &order, seen: HashSet::new(), limits };
    let mut seeds = Vec::new();
    if d as usize == n {
        seeds.push(boggi_params(n)?);
    }
    for w in enumerate_walls(d, n, limits)? {
        if let Ok(g) = w.generic_witness(limits) {
            for side in [std::cmp::Ordering::Less, std::cmp::Ordering::Greater] {
                if let Ok(p) = w.nudge(&g, side, limits) {
                    seeds.push(p);
                }
            }
        }
    }
    for p in &seeds {
        if chambers.try_point(p)? == Some(true) {
            return Ok(Realizability { witness: Some(p.clone()), certificate: None, chambers: chambers.seen.len() });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut quiet = 0;
    while quiet < opts.patience {
        let before = chambers.seen.len();
        for k in 0..opts.samples {
            let p = if k % 4 == 0 {
                random_hassett(d, n, &mut rng, limits).or_else(|_| random_generic(d, n, &mut rng, limits))?
            } else {
                random_generic(d, n, &mut rng, limits)?
            };
            if chambers.try_point(&p)? == Some(true) {
                return Ok(Realizability { witness: Some(p), certificate: None, chambers: chambers.seen.len() });
            }
        }
        quiet = if chambers.seen.len() == before { quiet + 1 } else { 0 };
    }
    Ok(Realizability { witness: None, certificate: None, chambers: chambers.seen.len() })
}

struct Chambers<'a> {
    trees: &'a [DualTree],
    target: &'a [Vec<bool>],
    order: &'a [usize],
    seen: HashSet<Vec<u8>>,
    limits: &'a Limits,
}

impl Chambers<'_> {
    /// `None` for a chamber already seen or a point on a wall, otherwise
    /// whether the chamber induces the target assignment.
    fn try_point(&mut self, l: &Linearization) -> Result<Option<bool>> {
        let sig = match signature(l, self.limits) {
            Ok(s) => s,
            Err(Error::OnWall { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        if !self.seen.insert(sig.key(self.limits)?) {
            return Ok(None);
        }
        let table = WeightTable::new(l)?;
        for &i in self.order {
            let deg = degree_assignment_table(&self.trees[i], &table)?;
            if deg.iter().zip(&self.target[i]).any(|(&x, &want)| (x == 0) != want) {
                return Ok(Some(false));
            }
        }
        Ok(Some(true))
    }
}

/// Sets of vertices assigned on each tree, keyed by tree, for display.
pub fn summarize(z: &ExtremalAssignment, limits: &Limits) -> Result<BTreeMap<String, BTreeSet<usize>>> {
    let mut out = BTreeMap::new();
    for t in DualTree::all(z.n, limits)? {
        let t = t.normalized();
        let a = z.assigned(&t)?;
        out.insert(t.to_string(), (0..a.len()).filter(|&v| a[v]).collect());
    }
    Ok(out)
}
