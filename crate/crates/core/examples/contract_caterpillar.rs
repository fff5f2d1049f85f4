//! The two curves of the flip example: the 10-2-2-5 caterpillar loses its
//! third component, the 10-4-5 chain keeps all three.

use vgit::curves::{degree_assignment, z_contract};
use vgit::trees::DualTree;
use vgit::{rat, Linearization};

fn main() -> vgit::Result<()> {
    let l = Linearization::symmetric(5, 19, rat(4, 9) + rat(1, 1000))?;
    for sizes in [vec![10, 2, 2, 5], vec![10, 4, 5]] {
        let t = DualTree::caterpillar(&sizes)?;
        let c = z_contract(&t, &l)?;
        println!("{sizes:?}: degrees {:?}", degree_assignment(&t, &l)?);
        println!("  image {c}");
        for comp in 0..c.num_components() {
            println!("  component {comp}: degree {}, {} interior marks", c.degrees()[comp], c.interior_marks(comp).len());
        }
        for p in c.singular() {
            println!("  singular point on {:?} carrying {} marks", p.branches, p.marks.len());
        }
    }
    Ok(())
}
