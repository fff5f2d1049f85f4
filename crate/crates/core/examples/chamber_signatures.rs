//! Chamber signatures: two generic points are in the same chamber iff they
//! have the same sigma on every subset.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vgit::sampling::random_generic;
use vgit::walls::{same_chamber, signature, ChamberSignature};
use vgit::Limits;

fn main() -> vgit::Result<()> {
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut reps: Vec<vgit::Linearization> = Vec::new();
    for _ in 0..400 {
        let l = random_generic(2, 5, &mut rng, &lim)?;
        let mut new = true;
        for r in &reps {
            if same_chamber(r, &l, &lim)? {
                new = false;
                break;
            }
        }
        if new {
            reps.push(l);
        }
    }
    println!("{} chambers met by 400 samples of (d, n) = (2, 5)", reps.len());
    for r in reps.iter().take(5) {
        if let ChamberSignature::Full { canonical, .. } = signature(r, &lim)? {
            println!("gamma {:<12} sigma on subsets containing 1: {canonical:?}", r.gamma().to_string());
        }
    }
    Ok(())
}
