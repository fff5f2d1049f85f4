//! The `vgit` command line. Every subcommand prints a table by default, or
//! one JSON record per line with `--json`.

mod presets;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::assignments::{check_extremal, realizability_search, ExtremalAssignment, SearchOptions};
use crate::curves::{is_git_stable, wall_stability, z_assignment, z_contract, degree_assignment, CurveType};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::{format_rational, parse_rational, Linearization, MarkedSubset, Rational, WeightTable};
use crate::models::{annotate_scan, boggi_params, hassett_embedding_degree, identify};
use crate::trees::DualTree;
use crate::wallcross::classify_crossing;
use crate::walls::{enumerate_wall_classes, enumerate_walls, segment_scan, signature, symmetric_crossing, ChamberSignature, Wall};

/// Version of the JSON record layout described in `data/records.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "vgit", version, about = "Exact wall-and-chamber computations for U_{d,n} // SL(d+1)")]
struct Cli {
    /// Print JSON records, one per line, instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// sigma of a subset, a cardinality, or the whole table by size.
    Sigma {
        #[command(flatten)]
        lin: LinArgs,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, value_parser = parse_subset)]
        subset: Option<MarkedSubset>,
    },
    /// All walls meeting the open region.
    Walls {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
        /// One line per cardinality class, with its crossing of the
        /// symmetric line.
        #[arg(long)]
        symmetric: bool,
    },
    /// Walls crossed by a segment.
    Scan {
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        to: Option<PathBuf>,
        /// Scan the symmetric line between two gammas instead of files.
        #[arg(long, requires_all = ["d", "n", "gamma_from", "gamma_to"])]
        symmetric: bool,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_rat)]
        gamma_from: Option<Rational>,
        #[arg(long, value_parser = parse_rat)]
        gamma_to: Option<Rational>,
        /// Identify the model between crossings and flag those that do not
        /// change it.
        #[arg(long)]
        models: bool,
    },
    /// Chamber signature of a generic point.
    Signature {
        #[command(flatten)]
        lin: LinArgs,
    },
    /// Divisorial / flip / regular classification of a wall crossing.
    ClassifyWall {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_subset)]
        subset: MarkedSubset,
        #[arg(long)]
        k: u32,
        /// A point on the wall and on no other; found automatically if absent.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Image of a DM tree in the quotient.
    Contract {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        lin: PathBuf,
    },
    /// GIT stability of a curve, or its status on a wall.
    Stable {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        lin: PathBuf,
        /// Judge at a point of the wall `(subset, k)`.
        #[arg(long, value_parser = parse_subset, requires = "k")]
        subset: Option<MarkedSubset>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Properness and specialization closure of an assignment.
    CheckExtremal {
        #[arg(long)]
        assignment: PathBuf,
    },
    /// Looks for a linearization inducing an assignment.
    Realize {
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        patience: usize,
        /// Skip the pair certificate and search directly.
        #[arg(long)]
        no_certificate: bool,
    },
    /// Names the model of a chamber.
    Identify {
        #[command(flatten)]
        lin: LinArgs,
    },
    /// Least d embedding a Hassett space.
    HassettDegree {
        /// File with `weights = ["p/q", ...]`.
        #[arg(long)]
        weights: PathBuf,
    },
    /// Parameters of the Boggi chamber.
    Boggi {
        #[arg(long)]
        n: usize,
    },
    /// Worked examples: flip-5-19, vgit-9-9, hassett-9-9, mbar-6, boggi-9,
    /// triple-9-9, mod-not-git.
    Preset {
        name: String,
        /// Check the output against the known values.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_parser = parse_rat, default_value = "1/1000")]
        epsilon: Rational,
    },
}

/// A linearization from a file, from `--symmetric --gamma`, or from
/// `--weights`.
#[derive(Args, Debug)]
struct LinArgs {
    #[arg(long, conflicts_with_all = ["d", "n", "gamma", "weights"])]
    lin: Option<PathBuf>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_rat)]
    gamma: Option<Rational>,
    #[arg(long, requires = "gamma")]
    symmetric: bool,
    /// Comma-separated weights; gamma follows from the cross-section.
    #[arg(long, value_delimiter = ',', value_parser = parse_rat, conflicts_with = "symmetric")]
    weights: Option<Vec<Rational>>,
}

impl LinArgs {
    fn load(&self) -> Result<Linearization> {
        if let Some(p) = &self.lin {
            return Linearization::from_toml_str(&read(p)?);
        }
        let d = self.d.ok_or_else(|| Error::invalid("--d is required without --lin"))?;
        if let Some(w) = &self.weights {
            let lin = Linearization::from_weights(d, w.clone())?;
            if let Some(g) = &self.gamma {
                if g != lin.gamma() {
                    return Err(Error::invalid(format!(
                        "--gamma {} disagrees with the cross-section value {}",
                        format_rational(g),
                        format_rational(lin.gamma())
                    )));
                }
            }
            return Ok(lin);
        }
        if !self.symmetric {
            return Err(Error::invalid("give --lin FILE, --weights, or --symmetric with --gamma"));
        }
        let n = self.n.ok_or_else(|| Error::invalid("--n is required with --symmetric"))?;
        let g = self.gamma.clone().ok_or_else(|| Error::invalid("--gamma is required with --symmetric"))?;
        Linearization::symmetric(d, n, g)
    }
}

fn parse_rat(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// `1,2,5` or ranges like `13-19`.
fn parse_subset(s: &str) -> std::result::Result<MarkedSubset, String> {
    let mut out = MarkedSubset::EMPTY;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = match part.split_once('-') {
            Some((a, b)) => (a, b),
            None => (part, part),
        };
        let a: usize = a.trim().parse().map_err(|_| format!("bad mark {a:?}"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad mark {b:?}"))?;
        if a == 0 || b > 64 || a > b {
            return Err(format!("bad mark range {part:?}"));
        }
        out = out.union(MarkedSubset::range(a, b));
    }
    if out.is_empty() {
        return Err("empty subset".into());
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn source(path: &Path) -> String {
    path.display().to_string()
}

/// Table lines or JSON records.
pub(crate) struct Out<'a> {
    w: &'a mut dyn Write,
    json: bool,
}

impl Out<'_> {
    /// Emits `value` as a record of the given kind. Ignored in table mode.
    pub(crate) fn record(&mut self, kind: &str, value: impl Serialize) -> Result<()> {
        if !self.json {
            return Ok(());
        }
        let mut map = Map::new();
        match serde_json::to_value(value).map_err(|e| Error::invalid(e.to_string()))? {
            Value::Object(fields) => map.extend(fields),
            other => {
                map.insert("value".into(), other);
            }
        }
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
        map.insert("kind".into(), kind.into());
        writeln!(self.w, "{}", Value::Object(map))?;
        Ok(())
    }

    /// A table line. Ignored in JSON mode.
    pub(crate) fn line(&mut self, text: impl AsRef<str>) -> Result<()> {
        if !self.json {
            writeln!(self.w, "{}", text.as_ref())?;
        }
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 on success, 1 on I/O failure, 2 on invalid input, 3
/// when an enumeration cap is hit, 4 when a generic point was needed and a
/// wall was found.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let mut o = Out { w: out, json: cli.json };
    match dispatch(cli.command, &mut o, &limits) {
        Ok(()) => 0,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct SigmaRecord {
    subset: Option<MarkedSubset>,
    size: Option<usize>,
    sigma: u32,
    /// `k` when `phi` is the integer `k`, i.e. the point is on a wall for
    /// this subset.
    on_wall: Option<u32>,
}

#[derive(Serialize)]
struct WallRecord {
    subset: Vec<usize>,
    k: u32,
    gamma_interval: Option<(String, String)>,
    witness_gamma: Option<String>,
}

#[derive(Serialize)]
struct ClassRecord {
    size: usize,
    k: u32,
    symmetric_gamma: Option<String>,
}

fn dispatch(cmd: Command, o: &mut Out, limits: &Limits) -> Result<()> {
    match cmd {
        Command::Sigma { lin, size, subset } => sigma_cmd(&lin.load()?, size, subset, o),
        Command::Walls { d, n, symmetric } => walls_cmd(d, n, symmetric, o, limits),
        Command::Scan { from, to, symmetric, d, n, gamma_from, gamma_to, models } => {
            let (a, b) = if symmetric {
                let (d, n) = (d.expect("required"), n.expect("required"));
                (
                    Linearization::symmetric(d, n, gamma_from.expect("required"))?,
                    Linearization::symmetric(d, n, gamma_to.expect("required"))?,
                )
            } else {
                let (Some(f), Some(t)) = (from, to) else {
                    return Err(Error::invalid("scan needs --from and --to, or --symmetric"));
                };
                (Linearization::from_toml_str(&read(&f)?)?, Linearization::from_toml_str(&read(&t)?)?)
            };
            scan_cmd(&a, &b, models, o, limits)
        }
        Command::Signature { lin } => {
            let sig = signature(&lin.load()?, limits)?;
            match &sig {
                ChamberSignature::Symmetric { by_size, .. } => {
                    o.line("size  sigma")?;
                    for (m, s) in by_size.iter().enumerate() {
                        o.line(format!("{m:>4}  {s:>5}"))?;
                    }
                }
                ChamberSignature::Full { canonical, .. } => {
                    o.line(format!("{} canonical subsets", canonical.len()))?;
                    o.line(canonical.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))?;
                }
            }
            o.record("signature", &sig)
        }
        Command::ClassifyWall { d, n, subset, k, witness } => {
            let wall = Wall::new(subset, k, d, n)?;
            let lin = match witness {
                Some(p) => Linearization::from_toml_str(&read(&p)?)?,
                None => wall.generic_witness(limits)?,
            };
            classify_wall_cmd(&wall, &lin, o, limits)
        }
        Command::Contract { tree, lin } => {
            let t = DualTree::from_toml_str(&source(&tree), &read(&tree)?)?;
            let l = Linearization::from_toml_str(&read(&lin)?)?;
            let degrees = degree_assignment(&t, &l)?;
            let assigned = z_assignment(&t, &l)?;
            let curve = z_contract(&t, &l)?;
            o.line(format!("degrees {degrees:?}, assigned vertices {assigned:?}"))?;
            o.line(curve.to_toml_string())?;
            #[derive(Serialize)]
            struct Rec<'a> {
                degrees: Vec<u32>,
                assigned: Vec<usize>,
                curve: &'a CurveType,
            }
            o.record("contraction", Rec { degrees, assigned, curve: &curve })
        }
        Command::Stable { curve, lin, subset, k } => {
            let c = CurveType::from_toml_str(&source(&curve), &read(&curve)?)?;
            let l = Linearization::from_toml_str(&read(&lin)?)?;
            match (subset, k) {
                (Some(s), Some(k)) => {
                    let wall = Wall::new(s, k, l.d(), l.n())?;
                    let st = wall_stability(&c, &wall, &l, limits)?;
                    o.line(format!("at wall {wall}: {}", serde_json::to_value(st).expect("enum")))?;
                    #[derive(Serialize)]
                    struct Rec {
                        wall: Wall,
                        status: crate::curves::WallStability,
                    }
                    o.record("wall_stability", Rec { wall, status: st })
                }
                _ => {
                    let r = is_git_stable(&c, &l, limits)?;
                    o.line(if r.stable { "stable" } else { "not stable" })?;
                    for dgn in &r.diagnostics {
                        o.line(format!("  {}", serde_json::to_string(dgn).expect("diagnostic")))?;
                    }
                    o.record("stability", &r)
                }
            }
        }
        Command::CheckExtremal { assignment } => {
            let z = ExtremalAssignment::from_toml_str(&source(&assignment), &read(&assignment)?)?;
            let r = check_extremal(&z, limits)?;
            o.line(format!(
                "{}: {} trees, {} specializations checked",
                if r.extremal { "extremal" } else { "not extremal" },
                r.trees,
                r.specializations
            ))?;
            if let Some(c) = &r.counterexample {
                o.line(format!("  {:?} fails at tree {} vertex {:?}", c.axiom, c.tree, c.vertex))?;
                if let Some(s) = &c.specialized {
                    o.line(format!("  specialized to {s}"))?;
                }
            }
            o.record("extremal", &r)
        }
        Command::Realize { assignment, d, seed, samples, patience, no_certificate } => {
            let z = ExtremalAssignment::from_toml_str(&source(&assignment), &read(&assignment)?)?;
            let opts = SearchOptions { samples, patience, seed, certificate: !no_certificate };
            let r = realizability_search(&z, d, limits, &opts)?;
            match (&r.witness, &r.certificate) {
                (Some(l), _) => o.line(format!("realized at gamma = {}, c = {}", format_rational(l.gamma()), fmt_weights(l)))?,
                (None, Some(c)) => o.line(format!(
                    "not realizable: {} and {} must be light while {} are heavy",
                    c.light[0],
                    c.light[1],
                    c.heavy.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")
                ))?,
                (None, None) => o.line(format!("no realizing chamber among {} searched", r.chambers))?,
            }
            #[derive(Serialize)]
            struct Rec<'a> {
                d: u32,
                witness: Option<crate::lincore::LinearizationRecord>,
                certificate: &'a Option<crate::assignments::PairCertificate>,
                chambers: usize,
            }
            o.record(
                "realizability",
                Rec { d, witness: r.witness.as_ref().map(|l| l.to_record()), certificate: &r.certificate, chambers: r.chambers },
            )
        }
        Command::Identify { lin } => {
            let m = identify(&lin.load()?, limits)?;
            o.line(serde_json::to_string(&m).expect("model"))?;
            o.record("model", &m)
        }
        Command::HassettDegree { weights } => {
            #[derive(serde::Deserialize)]
            #[serde(deny_unknown_fields)]
            struct W {
                weights: Vec<String>,
            }
            let text = read(&weights)?;
            let w: W = toml::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", weights.display())))?;
            let w = w.weights.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            let e = hassett_embedding_degree(&w, limits)?;
            o.line(format!("d = {}, gamma = {}{}", e.d, format_rational(e.lin.gamma()), if e.perturbed { " (weights moved off a wall)" } else { "" }))?;
            o.record("hassett_degree", &e)
        }
        Command::Boggi { n } => {
            let l = boggi_params(n)?;
            o.line(format!("d = {n}, gamma = {}, c_i = {}", format_rational(l.gamma()), format_rational(l.weight(1))))?;
            o.record("boggi", l.to_record())
        }
        Command::Preset { name, verify, epsilon } => presets::run(&name, verify, &epsilon, o, limits),
    }
}

fn fmt_weights(l: &Linearization) -> String {
    format!("[{}]", l.weights().iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn sigma_cmd(lin: &Linearization, size: Option<usize>, subset: Option<MarkedSubset>, o: &mut Out) -> Result<()> {
    if !lin.is_interior() {
        return Err(Error::NotInterior);
    }
    let table = WeightTable::new(lin)?;
    let n = lin.n();
    let emit = |o: &mut Out, subset: Option<MarkedSubset>, size: Option<usize>, class: crate::lincore::PhiClass| {
        let rec = SigmaRecord { subset, size, sigma: class.sigma(lin.d()), on_wall: class.wall() };
        o.record("sigma", rec)
    };
    if let Some(s) = subset {
        if !s.is_subset_of(MarkedSubset::full(n)) {
            return Err(Error::invalid(format!("{s} is not a subset of 1..{n}")));
        }
        let c = table.class(s);
        o.line(c.sigma(lin.d()).to_string())?;
        return emit(o, Some(s), None, c);
    }
    let sizes: Vec<usize> = match size {
        Some(m) if m <= n => vec![m],
        Some(m) => return Err(Error::invalid(format!("size {m} exceeds n = {n}"))),
        None if table.is_symmetric() => (1..n).collect(),
        None => return Err(Error::invalid("weights are not symmetric; give --subset")),
    };
    if !table.is_symmetric() {
        return Err(Error::invalid("--size needs symmetric weights; give --subset"));
    }
    if sizes.len() == 1 {
        let c = table.class_by_size(sizes[0]);
        o.line(c.sigma(lin.d()).to_string())?;
        return emit(o, None, Some(sizes[0]), c);
    }
    o.line("size  sigma")?;
    for m in sizes {
        let c = table.class_by_size(m);
        let note = c.wall().map_or(String::new(), |k| format!("  (on wall k = {k})"));
        o.line(format!("{m:>4}  {:>5}{note}", c.sigma(lin.d())))?;
        emit(o, None, Some(m), c)?;
    }
    Ok(())
}

fn walls_cmd(d: u32, n: usize, symmetric: bool, o: &mut Out, limits: &Limits) -> Result<()> {
    if symmetric {
        let mut rows: Vec<ClassRecord> = enumerate_wall_classes(d, n)?
            .into_iter()
            .map(|(size, k)| ClassRecord { size, k, symmetric_gamma: symmetric_crossing(d, n, size, k).map(|g| format_rational(&g)) })
            .collect();
        rows.sort_by(|a, b| {
            let key = |r: &ClassRecord| r.symmetric_gamma.as_deref().map(|g| parse_rational(g).expect("formatted"));
            let (ka, kb) = (key(a), key(b));
            (ka.is_none(), ka).cmp(&(kb.is_none(), kb)).then((a.size, a.k).cmp(&(b.size, b.k)))
        });
        o.line("size  k  symmetric gamma")?;
        for r in &rows {
            o.line(format!("{:>4}  {}  {}", r.size, r.k, r.symmetric_gamma.as_deref().unwrap_or("-")))?;
            o.record("wall_class", r)?;
        }
        return Ok(());
    }
    let walls = enumerate_walls(d, n, limits)?;
    o.line(format!("{} walls", walls.len()))?;
    for w in walls {
        let rec = WallRecord {
            subset: w.subset().to_vec(),
            k: w.k(),
            gamma_interval: w.gamma_interval().map(|(a, b)| (format_rational(&a), format_rational(&b))),
            witness_gamma: w.witness().map(|l| format_rational(l.gamma())),
        };
        o.line(format!("{w}  gamma in ({}, {})", rec.gamma_interval.as_ref().map_or("-", |g| &g.0), rec.gamma_interval.as_ref().map_or("-", |g| &g.1)))?;
        o.record("wall", rec)?;
    }
    Ok(())
}

fn scan_cmd(a: &Linearization, b: &Linearization, models: bool, o: &mut Out, limits: &Limits) -> Result<()> {
    if models {
        let marks = annotate_scan(a, b, limits)?;
        o.line("gamma  walls  model change")?;
        for m in &marks {
            let walls: Vec<String> = m.event.walls().iter().map(|w| w.to_string()).collect();
            let change = if m.changes_model {
                format!("{} -> {}", model_name(&m.before), model_name(&m.after))
            } else {
                format!("none, inside {}", model_name(&m.before))
            };
            o.line(format!("{}  {}  {change}", format_rational(m.event.gamma()), walls.join(" ")))?;
            o.record("model_crossing", m)?;
        }
        return Ok(());
    }
    let events = segment_scan(a, b, limits)?;
    o.line(format!("{} crossings", events.len()))?;
    for e in &events {
        let walls: Vec<String> = e.walls().iter().map(|w| w.to_string()).collect();
        o.line(format!("t = {}  gamma = {}  {}", format_rational(&e.t), format_rational(e.gamma()), walls.join(" ")))?;
        o.record("crossing", e)?;
    }
    Ok(())
}

pub(crate) fn model_name(m: &crate::models::ModelId) -> String {
    use crate::models::ModelId;
    match m {
        ModelId::Hassett { weights } => format!("Hassett(c_1 = {})", weights.first().map_or("", |w| w.as_str())),
        ModelId::MbarN => "Mbar_0,n".into(),
        ModelId::Boggi => "Boggi".into(),
        ModelId::TripleStyle => "triple-point".into(),
        ModelId::Unidentified { summary } => format!("unidentified ({summary})"),
    }
}

fn classify_wall_cmd(wall: &Wall, lin: &Linearization, o: &mut Out, limits: &Limits) -> Result<()> {
    let r = classify_crossing(wall, lin, limits)?;
    let show = |w: &Option<Vec<MarkedSubset>>| match w {
        Some(blocks) => blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" + "),
        None => "none".into(),
    };
    o.line(format!("wall {}  at gamma = {}", r.wall, format_rational(lin.gamma())))?;
    o.line(format!("label: {}", serde_json::to_value(r.label).expect("label").as_str().unwrap_or("")))?;
    o.line(format!("forward contracts a curve: {}  witness {}", r.forward_contracts_curve, show(&r.forward_witness)))?;
    o.line(format!("backward contracts a curve: {}  witness {}", r.backward_contracts_curve, show(&r.backward_witness)))?;
    o.line(format!("divisorial: forward {}, backward {}", r.forward_divisorial, r.backward_divisorial))?;
    o.record("crossing_report", &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["vgit"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sigma_of_twelve() {
        let (code, out, _) = run_str(&["sigma", "--d", "5", "--n", "19", "--symmetric", "--gamma", "4009/9000", "--size", "12"]);
        assert_eq!((code, out.trim()), (0, "4"));
    }

    #[test]
    fn subset_syntax() {
        assert_eq!(parse_subset("13-19").unwrap(), MarkedSubset::range(13, 19));
        assert_eq!(parse_subset("1, 3").unwrap(), MarkedSubset::from_marks([1, 3]));
        assert!(parse_subset("0").is_err() && parse_subset("").is_err());
    }

    #[test]
    fn json_records_carry_the_version() {
        let (code, out, _) = run_str(&["--json", "sigma", "--d", "5", "--n", "19", "--symmetric", "--gamma", "4009/9000", "--size", "7"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["sigma"], 1);
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = run_str(&["identify", "--d", "5", "--n", "19", "--symmetric", "--gamma", "4/9"]);
        assert_eq!(code, 4);
        assert!(err.contains("(I_7, 1)"), "{err}");
        assert_eq!(run_str(&["sigma", "--d", "5", "--n", "19", "--symmetric", "--gamma", "0.4"]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
        assert_eq!(run_str(&["identify", "--lin", "/nonexistent/l.toml"]).0, 1);
    }
}
