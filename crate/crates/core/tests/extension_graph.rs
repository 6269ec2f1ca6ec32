mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use quasigroups::enumerate::{count_extensions, gamma_analysis, EnumConfig};
use quasigroups::PartialQuasigroup;

use common::{pair, quasigroup, rng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn completion_count_is_the_choice_product(n in 2usize..=3, k in 4usize..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = quasigroup(n, k, &mut r);
        let (a, b) = pair(k, &mut r);
        let g = PartialQuasigroup::restrict_to_box(&f, a, b).unwrap();
        let exact = count_extensions(&g, &EnumConfig::default()).unwrap();
        let report = gamma_analysis(&g).unwrap();
        prop_assert_eq!(&exact, &report.extension_count());
        prop_assert!(exact >= BigUint::from(1u32));
        let cap = 2f64.powf((k as f64 / 2.0).powi(n as i32 - 1)).floor() as u64;
        prop_assert!(exact <= BigUint::from(cap));
        for component in &report.components {
            prop_assert!(component.len() >= 1 << (n - 1));
        }
    }
}
