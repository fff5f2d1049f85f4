//! Every wall of the open region for d = 3, n = 6, with a point on each
//! wall that lies on no other.

use vgit::walls::enumerate_walls;
use vgit::Limits;

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    let walls = enumerate_walls(3, 6, &lim)?;
    println!("{} walls", walls.len());
    for w in &walls {
        let (lo, hi) = w.gamma_interval().expect("enumerated walls are feasible");
        let p = w.generic_witness(&lim)?;
        println!("{w:<22} gamma in ({lo}, {hi})  witness gamma {}", p.gamma());
    }
    Ok(())
}
