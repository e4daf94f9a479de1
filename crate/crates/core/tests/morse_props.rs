mod common;

use common::{random_flow, rng};
use num::BigUint;
use proptest::prelude::*;
use stratvol::morse::{count_trajectories, count_trajectories_recursive, parse_flow, trajectories_from, write_flow};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counting_methods_agree(seed in any::<u64>()) {
        let g = random_flow(&mut rng(seed));
        prop_assert_eq!(count_trajectories(&g), count_trajectories_recursive(&g));
    }

    #[test]
    fn total_sums_over_top_points(seed in any::<u64>()) {
        let g = random_flow(&mut rng(seed));
        let counts = count_trajectories(&g);
        let sum: BigUint = g
            .points()
            .iter()
            .filter(|p| p.index == g.dim())
            .map(|p| trajectories_from(&g, &p.name).unwrap())
            .sum();
        prop_assert_eq!(counts.total, sum);
    }

    #[test]
    fn isolated_points_change_nothing(seed in any::<u64>(), index in 0usize..=4) {
        let mut g = random_flow(&mut rng(seed));
        let before = count_trajectories(&g).total;
        prop_assume!(index < g.dim() || (index == g.dim() && g.dim() > 0));
        g.add_point("isolated", index).unwrap();
        prop_assert_eq!(count_trajectories(&g).total, before.clone());
        prop_assert_eq!(count_trajectories_recursive(&g).total, before);
    }

    #[test]
    fn flow_text_round_trip(seed in any::<u64>()) {
        let g = random_flow(&mut rng(seed));
        let back = parse_flow(&write_flow(&g)).unwrap();
        prop_assert_eq!(write_flow(&back), write_flow(&g));
    }
}
