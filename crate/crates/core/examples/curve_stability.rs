//! GIT stability of a curve off a wall, and its status at a wall.

use vgit::curves::{is_git_stable, wall_contract, wall_stability, z_contract, CurveType};
use vgit::trees::DualTree;
use vgit::walls::Wall;
use vgit::{rat, Limits, Linearization, MarkedSubset};

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    let l = Linearization::symmetric(9, 9, rat(2, 5))?;
    let triple = z_contract(&DualTree::star(&[3, 3, 3])?, &l)?;
    println!("triple point {triple}: {:?}", is_git_stable(&triple, &l, &lim)?);
    let smooth = CurveType::smooth_curve(9, 9)?;
    println!("smooth curve: {:?}", is_git_stable(&smooth, &l, &lim)?.stable);

    let wall = Wall::new(MarkedSubset::range(13, 19), 1, 5, 19)?;
    let at = wall.generic_witness_near(&Linearization::symmetric(5, 19, rat(4, 9))?, &lim)?;
    let t = DualTree::caterpillar(&[10, 2, 2, 5])?;
    let c = wall_contract(&t, &wall, &at, &lim)?;
    println!("at the wall the caterpillar becomes {c}");
    println!("  status {:?}", wall_stability(&c, &wall, &at, &lim)?);
    Ok(())
}
