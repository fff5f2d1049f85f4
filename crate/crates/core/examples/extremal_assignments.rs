//! Extremal assignments: the GIT ones pass the axioms; the one with light
//! pairs {1,2}, {3,4} and heavy mixed pairs is extremal but not GIT.

use vgit::assignments::{check_extremal, git_assignment, pair_certificate, realizability_search, ExtremalAssignment, SearchOptions};
use vgit::{rat, Limits, Linearization, MarkedSubset};

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    let l = Linearization::new(2, rat(3, 11), vec![rat(1, 2), rat(5, 11), rat(7, 23), rat(15, 22), rat(199, 253)])?;
    let z = git_assignment(&l, &lim)?;
    println!("Z at {:?}: {:?}", l.to_record(), check_extremal(&z, &lim)?);

    let sets = vec![MarkedSubset::from_marks([1, 2]), MarkedSubset::from_marks([3, 4]), MarkedSubset::from_marks([5])];
    let z = ExtremalAssignment::tails_within(5, sets)?;
    println!("tails within I, J, K: extremal = {}", check_extremal(&z, &lim)?.extremal);
    println!("certificate: {:?}", pair_certificate(&z)?);
    for d in 1..=6 {
        let r = realizability_search(&z, d, &lim, &SearchOptions::default())?;
        println!("d = {d}: realized = {}", r.witness.is_some());
    }
    Ok(())
}
