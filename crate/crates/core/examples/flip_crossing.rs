//! Classifies every wall crossing for d = 3, n = 6, then the flip of the
//! d = 5, n = 19 example.

use std::collections::BTreeMap;

use vgit::wallcross::classify_crossing;
use vgit::walls::{enumerate_walls, Wall};
use vgit::{rat, Limits, Linearization, MarkedSubset};

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    let mut counts = BTreeMap::new();
    for w in enumerate_walls(3, 6, &lim)? {
        let r = classify_crossing(&w, &w.generic_witness(&lim)?, &lim)?;
        *counts.entry(format!("{:?}", r.label)).or_insert(0) += 1;
    }
    println!("d = 3, n = 6: {counts:?}");

    let wall = Wall::new(MarkedSubset::range(13, 19), 1, 5, 19)?;
    let at = wall.generic_witness_near(&Linearization::symmetric(5, 19, rat(4, 9))?, &lim)?;
    let r = classify_crossing(&wall, &at, &lim)?;
    println!("{wall}: {:?}", r.label);
    let show = |w: &Option<Vec<MarkedSubset>>| match w {
        Some(blocks) => blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" + "),
        None => "none".to_string(),
    };
    println!("  I splits as {}", show(&r.forward_witness));
    println!("  I^c splits as {}", show(&r.backward_witness));
    Ok(())
}
