use serde::Serialize;

use super::{model_name, Out};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lincore::{format_rational, rat, Linearization, MarkedSubset, Rational, WeightTable};
use crate::assignments::{check_extremal, pair_certificate, realizability_search, ExtremalAssignment, SearchOptions};
use crate::curves::{is_git_stable, CurveType};
use crate::models::{annotate_scan, boggi_params, identify, ModelId};
use crate::trees::{fcurve_sigma_sum, FCurvePartition};
use crate::wallcross::{classify_crossing, CrossingLabel};
use crate::walls::{segment_scan, Wall};

pub const NAMES: [&str; 7] = ["flip-5-19", "vgit-9-9", "hassett-9-9", "mbar-6", "boggi-9", "triple-9-9", "mod-not-git"];

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
}

struct Checks {
    all: Vec<Check>,
}

impl Checks {
    fn add(&mut self, o: &mut Out, name: impl Into<String>, pass: bool) -> Result<()> {
        let c = Check { name: name.into(), pass };
        o.line(format!("[{}] {}", if pass { "pass" } else { "FAIL" }, c.name))?;
        o.record("check", &c)?;
        self.all.push(c);
        Ok(())
    }
}

pub(super) fn run(name: &str, verify: bool, eps: &Rational, o: &mut Out, limits: &Limits) -> Result<()> {
    let mut checks = Checks { all: Vec::new() };
    match name {
        "flip-5-19" => flip(eps, verify, &mut checks, o, limits)?,
        "vgit-9-9" => chain(verify, &mut checks, o, limits)?,
        "hassett-9-9" => hassett(verify, &mut checks, o, limits)?,
        "mbar-6" => mbar(verify, &mut checks, o, limits)?,
        "boggi-9" => boggi(verify, &mut checks, o, limits)?,
        "triple-9-9" => triple(verify, &mut checks, o, limits)?,
        "mod-not-git" => not_git(verify, &mut checks, o, limits)?,
        _ => return Err(Error::invalid(format!("unknown preset {name:?}; known: {}", NAMES.join(", ")))),
    }
    let failed: Vec<&str> = checks.all.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(Error::invalid(format!("preset {name}: {} check(s) failed: {}", failed.len(), failed.join("; "))));
    }
    Ok(())
}

/// `sigma(I_m)` at `gamma = 4/9 + eps` for small `eps`.
fn known_sigma(m: usize) -> u32 {
    match m {
        0..=4 => 0,
        5..=7 => 1,
        8..=9 => 2,
        10..=11 => 3,
        12..=14 => 4,
        _ => 5,
    }
}

fn fcurve(sizes: [usize; 4], lin: &Linearization) -> Result<u32> {
    fcurve_sigma_sum(&FCurvePartition::from_sizes(sizes)?, lin)
}

fn flip(eps: &Rational, verify: bool, checks: &mut Checks, o: &mut Out, limits: &Limits) -> Result<()> {
    let centre = rat(4, 9);
    let below = Linearization::symmetric(5, 19, &centre - eps)?;
    let above = Linearization::symmetric(5, 19, &centre + eps)?;
    let (tb, ta) = (WeightTable::new(&below)?, WeightTable::new(&above)?);
    o.line(format!("d = 5, n = 19, symmetric; gamma = 4/9 -/+ {}", format_rational(eps)))?;
    o.line("size  sigma(4/9-eps)  sigma(4/9+eps)")?;
    #[derive(Serialize)]
    struct Row {
        size: usize,
        sigma_below: u32,
        sigma_above: u32,
    }
    let mut rows = Vec::new();
    for m in 1..=18 {
        let r = Row { size: m, sigma_below: tb.sigma_by_size(m), sigma_above: ta.sigma_by_size(m) };
        o.line(format!("{:>4}  {:>14}  {:>14}", m, r.sigma_below, r.sigma_above))?;
        o.record("sigma_row", &r)?;
        rows.push(r);
    }

    let wall = Wall::new(MarkedSubset::range(13, 19), 1, 5, 19)?;
    let at = wall.generic_witness_near(&Linearization::symmetric(5, 19, centre)?, limits)?;
    let report = classify_crossing(&wall, &at, limits)?;
    let sizes = |w: &Option<Vec<MarkedSubset>>| {
        let mut s: Vec<usize> = w.iter().flatten().map(|b| b.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    };
    let show = |s: &[usize]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+");
    let (fw, bw) = (sizes(&report.forward_witness), sizes(&report.backward_witness));
    o.line(format!("wall (I_7, 1) = {wall}"))?;
    o.line(format!(
        "label {}  forward witness {}  backward witness {}",
        serde_json::to_value(report.label).expect("label").as_str().unwrap_or(""),
        show(&fw),
        show(&bw)
    ))?;
    o.record("crossing_report", &report)?;

    let f = [
        ([10, 7, 1, 1], fcurve([10, 7, 1, 1], &below)?, fcurve([10, 7, 1, 1], &above)?),
        ([12, 5, 1, 1], fcurve([12, 5, 1, 1], &below)?, fcurve([12, 5, 1, 1], &above)?),
    ];
    for (p, b, a) in &f {
        o.line(format!("F-curve {p:?}: sigma-sum {b} below, {a} above (contracted at 5)"))?;
        #[derive(Serialize)]
        struct Rec<'a> {
            sizes: &'a [usize; 4],
            sum_below: u32,
            sum_above: u32,
        }
        o.record("fcurve", Rec { sizes: p, sum_below: *b, sum_above: *a })?;
    }

    if verify {
        let table_ok = rows.iter().all(|r| {
            let want_above = known_sigma(r.size);
            let want_below = match r.size {
                7 => 2,
                12 => 3,
                m => known_sigma(m),
            };
            r.sigma_above == want_above && r.sigma_below == want_below
        });
        checks.add(o, "sigma table matches, with I_7: 2 -> 1 and I_12: 3 -> 4 as gamma rises", table_ok)?;
        checks.add(o, "label is Flip", report.label == CrossingLabel::Flip)?;
        checks.add(o, "neither side divisorial", !report.forward_divisorial && !report.backward_divisorial)?;
        checks.add(o, "I_7 splits as 5+1+1 with sigma-sum 1", fw == [5, 1, 1])?;
        checks.add(o, "I_12 splits as 10+1+1 with sigma-sum 3", bw == [10, 1, 1])?;
        checks.add(o, "(10,7,1,1) contracted only below 4/9", f[0].1 == 5 && f[0].2 < 5)?;
        checks.add(o, "(12,5,1,1) survives only below 4/9", f[1].1 < 5 && f[1].2 == 5)?;
    }
    Ok(())
}

fn chain(verify: bool, checks: &mut Checks, o: &mut Out, limits: &Limits) -> Result<()> {
    let sym = |g: Rational| Linearization::symmetric(9, 9, g);
    let marks = annotate_scan(&sym(rat(27, 100))?, &sym(rat(999, 1000))?, limits)?;
    o.line("d = n = 9, symmetric; gamma from 27/100 to 999/1000")?;
    o.line("gamma  walls  model")?;
    for m in &marks {
        let walls: Vec<String> = m.event.hyperplanes.iter().map(|h| h.to_string()).collect();
        let note = if m.changes_model {
            format!("{} -> {}", model_name(&m.before), model_name(&m.after))
        } else {
            format!("stability only, inside {}", model_name(&m.before))
        };
        o.line(format!("{:>7}  {}  {note}", format_rational(m.event.gamma()), walls.join(" ")))?;
        o.record("model_crossing", m)?;
    }
    if verify {
        let labeled: Vec<Rational> = marks.iter().filter(|m| m.changes_model).map(|m| m.event.gamma().clone()).collect();
        let want = vec![rat(2, 7), rat(1, 2), rat(11, 16), rat(7, 8), rat(31, 32)];
        checks.add(o, "model changes exactly at 2/7, 1/2, 11/16, 7/8, 31/32", labeled == want)?;
        let inside = [rat(13, 14), rat(22, 23)]
            .iter()
            .all(|g| marks.iter().any(|m| m.event.gamma() == g && !m.changes_model));
        checks.add(o, "13/14 and 22/23 flagged as inside one region", inside)?;
        let none = segment_scan(&sym(rat(29, 100))?, &sym(rat(3, 10))?, limits)?;
        checks.add(o, "no crossing between 29/100 and 3/10", none.is_empty())?;
        let one = segment_scan(&sym(rat(27, 100))?, &sym(rat(3, 10))?, limits)?;
        let gammas: Vec<&Rational> = one.iter().map(|e| e.gamma()).collect();
        checks.add(o, "2/7 is the only crossing between 27/100 and 3/10", gammas == [&rat(2, 7)])?;
        let sides = |g: Rational| crate::models::identify(&sym(g)?, limits);
        checks.add(o, "Boggi below 2/7, Hassett above 31/32", {
            matches!(sides(rat(28, 100))?, crate::models::ModelId::Boggi)
                && matches!(sides(rat(99, 100))?, crate::models::ModelId::Hassett { .. })
        })?;
    }
    Ok(())
}

fn show_model(lin: &Linearization, o: &mut Out, limits: &Limits) -> Result<ModelId> {
    let m = identify(lin, limits)?;
    o.line(format!(
        "d = {}, n = {}, gamma = {}, c = [{}]",
        lin.d(),
        lin.n(),
        format_rational(lin.gamma()),
        lin.weights().iter().map(format_rational).collect::<Vec<_>>().join(", ")
    ))?;
    o.line(format!("model: {}", model_name(&m)))?;
    o.record("model", &m)?;
    Ok(m)
}

fn hassett(verify: bool, checks: &mut Checks, o: &mut Out, limits: &Limits) -> Result<()> {
    let lin = Linearization::symmetric(9, 9, rat(3, 4))?;
    let m = show_model(&lin, o, limits)?;
    if verify {
        let c = lin.weights()[0].clone();
        checks.add(o, "Hassett model", matches!(m, ModelId::Hassett { .. }))?;
        checks.add(o, "c = 4/9: pairs may collide, triples may not", c == rat(4, 9))?;
    }
    Ok(())
}

fn mbar(verify: bool, checks: &mut Checks, o: &mut Out, limits: &Limits) -> Result<()> {
    let c = rat(1, 2) + rat(1, 100);
    let lin = Linearization::from_weights(4, vec![c; 6])?;
    let m = show_model(&lin, o, limits)?;
    if verify {
        checks.add(o, "d = n - 2 already gives Mbar_{0,n}", m == ModelId::MbarN)?;
    }
    Ok(())
}

fn boggi(verify: bool, checks: &mut Checks, o: &mut Out, limits: &Limits) -> Result<()> {
    let lin = boggi_params(9)?;
    let m = show_model(&lin, o, limits)?;
    let table = WeightTable::new(&lin)?;
    o.line(format!("sigma by size: {:?}", (1..=8).map(|k| table.sigma_by_size(k)).collect::<Vec<_>>()))?;
    if verify {
        checks.add(o, "Boggi model", m == ModelId::Boggi)?;
        checks.add(o, "sigma(I) = |I| for 2 <= |I| <= 7", (2..=7).all(|k| table.sigma_by_size(k) == k as u32))?;
    }
    Ok(())
}

const TRIPLE: &str = "[[component]]\ndegree = 3\n[[component]]\ndegree = 3\n[[component]]\ndegree = 3\n\
    [[singular]]\nbranches = [0, 1, 2]\n\
    [marks]\n1 = 0\n2 = 0\n3 = 0\n4 = 1\n5 = 1\n6 = 1\n7 = 2\n8 = 2\n9 = 2\n";

fn triple(verify: bool, checks: &mut Checks, o: &mut Out, limits: &Limits) -> Result<()> {
    let lin = Linearization::symmetric(9, 9, rat(2, 5))?;
    let m = show_model(&lin, o, limits)?;
    let curve = CurveType::from_toml_str("triple", TRIPLE)?;
    let here = is_git_stable(&curve, &lin, limits)?;
    let hassett = is_git_stable(&curve, &Linearization::symmetric(9, 9, rat(3, 4))?, limits)?;
    o.line(format!("three cubics through a triple point: stable at 2/5: {}, at 3/4: {}", here.stable, hassett.stable))?;
    o.record("stability", &here)?;
    if verify {
        checks.add(o, "triple-point model between 2/7 and 1/2", m == ModelId::TripleStyle)?;
        checks.add(o, "the triple-point curve is stable at 2/5 and not at 3/4", here.stable && !hassett.stable)?;
    }
    Ok(())
}

fn not_git(verify: bool, checks: &mut Checks, o: &mut Out, limits: &Limits) -> Result<()> {
    let sets = vec![MarkedSubset::from_marks([1, 2]), MarkedSubset::from_marks([3, 4]), MarkedSubset::from_marks([5])];
    let z = ExtremalAssignment::tails_within(5, sets)?;
    o.line("n = 5; tails marked only by {1,2} or only by {3,4} are contracted")?;
    let report = check_extremal(&z, limits)?;
    o.line(format!("extremal: {} ({} trees, {} specializations)", report.extremal, report.trees, report.specializations))?;
    o.record("extremal", &report)?;
    let cert = pair_certificate(&z)?;
    if let Some(c) = &cert {
        o.line(format!("light pairs {} and {}; heavy {}, {}, {}, {}", c.light[0], c.light[1], c.heavy[0], c.heavy[1], c.heavy[2], c.heavy[3]))?;
    }
    let mut realized = false;
    for d in 1..=6 {
        let r = realizability_search(&z, d, limits, &SearchOptions::default())?;
        realized |= r.witness.is_some();
    }
    o.line(format!("realized for some d <= 6: {realized}"))?;
    if verify {
        checks.add(o, "the assignment is extremal", report.extremal)?;
        checks.add(o, "the pair weights contradict each other", cert.is_some())?;
        checks.add(o, "no linearization with d <= 6 realizes it", !realized)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_presets_verify() {
        for name in NAMES {
            let mut buf = Vec::new();
            let mut o = Out { w: &mut buf, json: false };
            run(name, true, &rat(1, 1000), &mut o, &Limits::default()).unwrap();
            let text = String::from_utf8(buf).unwrap();
            assert!(!text.contains("FAIL"), "{text}");
        }
    }
}
