//! Reading the sample files in `data/` and writing them back.

use vgit::assignments::ExtremalAssignment;
use vgit::curves::CurveType;
use vgit::trees::DualTree;
use vgit::Linearization;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let read = |f: &str| std::fs::read_to_string(format!("{dir}/{f}"));
    let l = Linearization::from_toml_str(&read("flip_plus.toml")?)?;
    println!("linearization:\n{}", l.to_toml_string());
    let t = DualTree::from_toml_str("caterpillar.toml", &read("caterpillar.toml")?)?;
    println!("tree {t}:\n{}", t.to_toml_string());
    let c = CurveType::from_toml_str("triple.toml", &read("triple.toml")?)?;
    println!("curve {c}:\n{}", c.to_toml_string());
    let z = ExtremalAssignment::from_toml_str("pairs.toml", &read("pairs.toml")?)?;
    println!("assignment on {} marks: {:?}", z.n(), z.rule());
    if let Err(e) = DualTree::from_toml_str("broken.toml", "vertices = 2\nedges = [[0, 5]]\n") {
        println!("errors point at lines: {e}");
    }
    Ok(())
}
