//! sigma by cardinality on both sides of gamma = 4/9 for d = 5, n = 19.
//!
//! ```text
//! cargo run --example sigma_table
//! ```

use vgit::lincore::{phi, WeightTable};
use vgit::{rat, Linearization, MarkedSubset};

fn main() -> vgit::Result<()> {
    let eps = rat(1, 1000);
    let below = Linearization::symmetric(5, 19, rat(4, 9) - &eps)?;
    let above = Linearization::symmetric(5, 19, rat(4, 9) + &eps)?;
    let (b, a) = (WeightTable::new(&below)?, WeightTable::new(&above)?);
    println!("size  below  above  phi at 4/9");
    let centre = Linearization::symmetric(5, 19, rat(4, 9))?;
    for m in 1..19 {
        let p = phi(MarkedSubset::first(m), &centre)?;
        println!("{m:>4}  {:>5}  {:>5}  {p}", b.sigma_by_size(m), a.sigma_by_size(m));
    }
    Ok(())
}
