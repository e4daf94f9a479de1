mod common;

use common::{level_stratification, random_complex, random_poset, rng};
use proptest::prelude::*;
use stratvol::complex::barycentric_subdivide;
use stratvol::strat::{parse_poset, write_poset};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn refining_components_is_idempotent(seed in any::<u64>(), dim in 1usize..=3) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, dim);
        let once = level_stratification(&mut r, &k, 3).refine_components(&k);
        let twice = once.refine_components(&k);
        prop_assert_eq!(once.len(), twice.len());
        for f in k.all_simplices() {
            prop_assert_eq!(once.name(once.stratum(f)), twice.name(twice.stratum(f)));
        }
    }

    #[test]
    fn faces_lie_below_cofaces(seed in any::<u64>(), dim in 1usize..=3) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, dim);
        let s = level_stratification(&mut r, &k, 3);
        for f in k.all_simplices().filter(|f| f.dim > 0) {
            for i in 0..=f.dim {
                prop_assert!(s.leq(s.stratum(k.face(f, i)), s.stratum(f)));
            }
        }
    }

    #[test]
    fn pull_back_keeps_order(seed in any::<u64>(), dim in 1usize..=3) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, dim);
        let s = level_stratification(&mut r, &k, 3);
        let sd = barycentric_subdivide(&k);
        let p = s.pull_back(&sd);
        prop_assert_eq!(p.len(), s.len());
        for a in s.strata() {
            for b in s.strata() {
                let (pa, pb) = (p.id_of(s.name(a)).unwrap(), p.id_of(s.name(b)).unwrap());
                prop_assert_eq!(s.leq(a, b), p.leq(pa, pb));
            }
        }
    }

    #[test]
    fn distinct_labels_never_add_chains(seed in any::<u64>(), len in 0usize..=5) {
        let p = random_poset(&mut rng(seed));
        prop_assert!(p.count_chains(len, false) >= p.count_chains(len, true));
        prop_assert_eq!(p.count_chains(len, false), num::BigUint::from(p.chains(len).len()));
    }

    #[test]
    fn single_element_chains(seed in any::<u64>()) {
        let p = random_poset(&mut rng(seed));
        prop_assert_eq!(p.count_chains(1, false), num::BigUint::from(p.len()));
        prop_assert_eq!(p.count_chains(1, true), num::BigUint::from(p.len()));
    }

    #[test]
    fn poset_text_round_trip(seed in any::<u64>()) {
        let p = random_poset(&mut rng(seed));
        prop_assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
    }
}
