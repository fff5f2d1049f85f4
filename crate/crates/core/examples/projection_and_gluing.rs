//! Projection from a heavy mark and the tail linearization of the gluing
//! map.

use vgit::wallcross::{gluing_data, projection_bijective};
use vgit::{rat, Limits, Linearization, MarkedSubset};

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    let l = Linearization::new(2, rat(3, 11), vec![rat(1, 2), rat(5, 11), rat(7, 23), rat(15, 22), rat(199, 253)])?;
    for i in 1..=5 {
        match projection_bijective(&l, i, &lim) {
            Ok(r) => println!("pi_{i}: bijective = {}, target {:?}", r.bijective, r.target.to_record()),
            Err(e) => println!("pi_{i}: {e}"),
        }
    }
    let l = Linearization::symmetric(5, 19, rat(4, 9) + rat(1, 1000))?;
    for m in [3, 7, 12, 16] {
        match gluing_data(MarkedSubset::first(m), &l, &lim) {
            Ok(g) => println!("I_{m}: sigma {}, b = {}, one factor: {}", g.sigma, g.b, g.one_factor),
            Err(e) => println!("I_{m}: {e}"),
        }
    }
    Ok(())
}
