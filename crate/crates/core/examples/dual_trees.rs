//! DM-stable trees, their one-edge specializations, and F-curves.

use vgit::trees::{fcurve_sigma_sum, DualTree, FCurvePartition};
use vgit::{rat, Limits, Linearization};

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    for n in 4..=7 {
        println!("n = {n}: {} trees", DualTree::all(n, &lim)?.len());
    }
    let t = DualTree::caterpillar(&[3, 3])?;
    println!("{t} specializes to:");
    for s in t.specializations() {
        println!("  {}", s.tree);
    }
    let l = Linearization::symmetric(5, 19, rat(4, 9) + rat(1, 1000))?;
    for sizes in [[10, 7, 1, 1], [12, 5, 1, 1]] {
        let p = FCurvePartition::from_sizes(sizes)?;
        let s = fcurve_sigma_sum(&p, &l)?;
        println!("F-curve {sizes:?}: sigma-sum {s}{}", if s == 5 { ", contracted" } else { "" });
    }
    Ok(())
}
