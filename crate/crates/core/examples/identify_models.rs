//! Known models among the chambers: Boggi, Mbar_{0,n}, Hassett, and the
//! least degree carrying a given Hassett space.

use vgit::models::{boggi_params, hassett_embedding_degree, identify};
use vgit::{rat, Limits, Linearization};

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    for g in [rat(1, 5), rat(2, 5), rat(3, 5), rat(3, 4)] {
        let l = Linearization::symmetric(9, 9, g.clone())?;
        println!("d = n = 9, gamma = {g}: {:?}", identify(&l, &lim)?);
    }
    let b = boggi_params(9)?;
    println!("Boggi point for n = 9: gamma = {}, c_i = {}", b.gamma(), b.weight(1));
    for (n, c) in [(8, rat(51, 100)), (16, rat(26, 100))] {
        let e = hassett_embedding_degree(&vec![c.clone(); n], &lim)?;
        println!("Hassett weights {c} x {n}: d = {}, gamma = {}", e.d, e.lin.gamma());
    }
    Ok(())
}
