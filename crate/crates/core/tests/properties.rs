use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vgit::lincore::{format_rational, parse_rational, sigma, WeightTable};
use vgit::sampling::random_generic;
use vgit::trees::DualTree;
use vgit::wallcross::classify_crossing;
use vgit::walls::enumerate_walls;
use vgit::{Limits, Linearization, MarkedSubset, Rational};

fn generic(d: u32, n: usize, seed: u64) -> Linearization {
    random_generic(d, n, &mut ChaCha8Rng::seed_from_u64(seed), &Limits::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn complement_is_an_involution(bits in 1u64..(1 << 12), n in 12usize..20) {
        let s = MarkedSubset(bits);
        prop_assert_eq!(s.complement(n).complement(n), s);
        prop_assert!(s.canonical(n).is_canonical());
        prop_assert!(s.canonical(n) == s || s.canonical(n) == s.complement(n));
    }

    #[test]
    fn linearization_toml_round_trip(d in 1u32..8, n in 4usize..10, seed: u64) {
        let l = generic(d, n, seed);
        prop_assert_eq!(Linearization::from_toml_str(&l.to_toml_string()).unwrap(), l);
    }

    #[test]
    fn sigma_splits_d(d in 1u32..8, n in 4usize..10, seed: u64, bits: u64) {
        let l = generic(d, n, seed);
        let s = MarkedSubset(bits & ((1 << n) - 1));
        prop_assume!(s.is_proper(n));
        let t = WeightTable::new(&l).unwrap();
        prop_assert_eq!(t.sigma(s), sigma(s, &l).unwrap());
        prop_assert_eq!(t.sigma(s) + t.sigma(s.complement(n)), d);
    }

    #[test]
    fn crossing_is_complement_symmetric(seed in 0u64..1000) {
        let lim = Limits::default();
        let (d, n) = [(2, 5), (3, 6), (4, 7)][(seed % 3) as usize];
        let walls = enumerate_walls(d, n, &lim).unwrap();
        let w = walls[(seed as usize / 3) % walls.len()];
        let at = w.generic_witness(&lim).unwrap();
        let a = classify_crossing(&w, &at, &lim).unwrap();
        let b = classify_crossing(&w.complement(), &at, &lim).unwrap().mirrored();
        prop_assert_eq!(a.label, b.label);
        prop_assert_eq!(a.forward_divisorial, b.forward_divisorial);
        prop_assert_eq!(a.backward_contracts_curve, b.backward_contracts_curve);
    }

    #[test]
    fn trees_survive_toml(n in 4usize..8, pick: usize) {
        let trees = DualTree::all(n, &Limits::default()).unwrap();
        let t = &trees[pick % trees.len()];
        let back = DualTree::from_toml_str("prop", &t.to_toml_string()).unwrap();
        prop_assert!(back.is_isomorphic(t));
        prop_assert!(t.normalized().is_isomorphic(t));
    }
}
