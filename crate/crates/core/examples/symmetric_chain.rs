//! The chain of models along the symmetric line for d = n = 9: Boggi, the
//! triple-point model, Mbar_{0,9}, then Hassett spaces.

use vgit::models::{annotate_scan, ModelId};
use vgit::{rat, Limits, Linearization};

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    let from = Linearization::symmetric(9, 9, rat(27, 100))?;
    let to = Linearization::symmetric(9, 9, rat(999, 1000))?;
    for m in annotate_scan(&from, &to, &lim)? {
        let walls: Vec<String> = m.event.hyperplanes.iter().map(|h| h.to_string()).collect();
        let tag = if m.changes_model { "model changes" } else { "same model" };
        println!("{:>6}  {:<18} {tag}: {} -> {}", m.event.gamma().to_string(), walls.join(" "), name(&m.before), name(&m.after));
    }
    Ok(())
}

fn name(m: &ModelId) -> String {
    match m {
        ModelId::Hassett { weights } => format!("Hassett, c_i = {}", weights[0]),
        other => format!("{other:?}"),
    }
}
