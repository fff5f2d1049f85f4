//! The boundary of the region: gamma = 1, gamma = 0, c_i = 1, c_i = 0.

use vgit::wallcross::classify_exterior;
use vgit::{rat, Linearization};

fn main() -> vgit::Result<()> {
    let points = [
        Linearization::new(3, rat(1, 1), vec![rat(1, 2); 4])?,
        Linearization::new(2, rat(0, 1), vec![rat(3, 4); 4])?,
        Linearization::new(3, rat(1, 2), vec![rat(1, 1), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)])?,
        Linearization::new(2, rat(1, 2), vec![rat(0, 1), rat(1, 2), rat(3, 4), rat(3, 4), rat(1, 2)])?,
    ];
    for p in &points {
        println!("{:?}\n  -> {:?}", p.to_record(), classify_exterior(p)?);
    }
    Ok(())
}
