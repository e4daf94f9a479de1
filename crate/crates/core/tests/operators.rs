mod common;

use common::{random_chain, random_complex, random_pure_complex, rng};
use proptest::prelude::*;
use stratvol::complex::{barycentric_subdivide, boundary, subdivide_chain, subdivision_homotopy, Chain};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>(), dim in 2usize..=3) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, dim);
        let c = random_chain(&mut r, &k, dim);
        let dd = boundary(&k, &boundary(&k, &c).unwrap()).unwrap();
        prop_assert!(dd.is_empty(), "{dd:?}");
    }

    #[test]
    fn subdivision_is_a_chain_map(seed in any::<u64>(), dim in 1usize..=3) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, dim);
        let c = random_chain(&mut r, &k, dim);
        let lhs = boundary(&k, &subdivide_chain(&k, &c)).unwrap();
        let rhs = subdivide_chain(&k, &boundary(&k, &c).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homotopy_identity(seed in any::<u64>(), dim in 1usize..=3) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, dim);
        let c = random_chain(&mut r, &k, dim);
        let t = subdivision_homotopy(&k, &c);
        let lhs = &boundary(&k, &t).unwrap() + &subdivision_homotopy(&k, &boundary(&k, &c).unwrap());
        let rhs = &subdivide_chain(&k, &c) - &c;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homotopy_on_points(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, 2);
        let c = random_chain(&mut r, &k, 0);
        prop_assert_eq!(boundary(&k, &subdivision_homotopy(&k, &c)).unwrap(), &subdivide_chain(&k, &c) - &c);
    }

    #[test]
    fn iterated_subdivision_sizes(seed in any::<u64>(), dim in 1usize..=3, rounds in 1usize..=2) {
        let mut r = rng(seed);
        let k = random_pure_complex(&mut r, dim);
        let tops = k.count(dim);
        let factorial: usize = (1..=dim + 1).product();
        let mut x = k;
        for _ in 0..rounds {
            x = barycentric_subdivide(&x).into_complex();
        }
        prop_assert_eq!(x.count(dim), tops * factorial.pow(rounds as u32));
        for t in x.simplices(dim) {
            let mut vs = x.vertices(t);
            vs.sort();
            vs.dedup();
            prop_assert_eq!(vs.len(), dim + 1);
        }
    }

    #[test]
    fn lifted_subdivision_agrees(seed in any::<u64>(), dim in 1usize..=3) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, dim);
        let tops: Vec<_> = k.simplices(dim).collect();
        let c = Chain::native(dim, tops.iter().map(|&t| (t, common::q(1))));
        let sd = barycentric_subdivide(&k);
        let lifted = sd.lift_chain(&k, &subdivide_chain(&k, &c)).unwrap();
        prop_assert_eq!(lifted.len(), tops.len() * (1..=dim + 1).product::<usize>());
        prop_assert_eq!(
            boundary(sd.complex(), &lifted).unwrap(),
            sd.lift_chain(&k, &subdivide_chain(&k, &boundary(&k, &c).unwrap())).unwrap()
        );
    }
}
