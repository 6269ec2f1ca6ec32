//! Frozen reference values.

use num_bigint::BigUint;

use quasigroups::bounds::{
    c_k, chain_bound, lower_bound_log2, q4_asymptotic_ratio, upper_bound_log2, Log2Interval,
};
use quasigroups::census4::{partition_count, q4_recurrence, PartitionShape};
use quasigroups::constructions::psi;
use quasigroups::enumerate::{count_quasigroups, EnumConfig, Mode};
use quasigroups::fixtures::{phi4, psi9, q4_values};
use quasigroups::trades::value_support;
use quasigroups::Hypercube;

fn count(n: usize, k: usize, mode: Mode) -> BigUint {
    count_quasigroups(n, k, mode, &EnumConfig::default()).unwrap()
}

#[test]
fn small_counts() {
    let all = [
        (2, 2, 2u64),
        (2, 3, 12),
        (3, 3, 24),
        (1, 4, 24),
        (2, 4, 576),
        (3, 4, 55296),
        (2, 5, 161280),
    ];
    for (n, k, expected) in all {
        assert_eq!(
            count(n, k, Mode::All),
            BigUint::from(expected),
            "Q({n},{k})"
        );
    }
    let loops = [(2, 4, 4u64), (3, 4, 64), (4, 4, 7132), (2, 5, 56)];
    for (n, k, expected) in loops {
        assert_eq!(
            count(n, k, Mode::Loops),
            BigUint::from(expected),
            "Q'({n},{k})"
        );
    }
}

#[test]
fn recurrence_matches_published_values() {
    let fx = q4_values();
    let rows = q4_recurrence(8).unwrap();
    for (row, (v, q)) in rows
        .iter()
        .zip(fx.loops_big().iter().zip(fx.quasigroups_big()))
    {
        assert_eq!(&row.v, v);
        assert_eq!(row.q, q);
    }
    assert_eq!(rows[7].q.to_string().len(), 82);
    assert_eq!(rows[7].v.to_string().len(), 75);
}

#[test]
fn partition_examples() {
    let f = |s: Vec<usize>, m: Vec<usize>| partition_count(&PartitionShape::new(s, m).unwrap());
    assert_eq!(f(vec![1, 2], vec![1, 1]), BigUint::from(3u32));
    assert_eq!(f(vec![2], vec![2]), BigUint::from(3u32));
    assert_eq!(f(vec![1, 3], vec![1, 1]), BigUint::from(4u32));
}

#[test]
fn printed_table_is_reproduced() {
    assert_eq!(psi(4, Some(&phi4())).unwrap(), psi9());
    assert_eq!(value_support(&psi9(), 0, 1).unwrap().len(), 18);
    let xor = Hypercube::from_fn(4, 2, |p| p[0] ^ p[1]).unwrap();
    let support = value_support(&xor, 0, 1).unwrap();
    assert_eq!(support.len(), 8);
    assert!(support.iter().all(|p| p[0] / 2 == p[1] / 2));
}

#[test]
fn bound_examples() {
    assert!((c_k(5).unwrap() - 7.3023).abs() < 1e-4);
    let q25 = Log2Interval::of_count(&BigUint::from(161280u32)).unwrap();
    assert!((q25.lo - 17.30).abs() < 0.01);
    assert!(q25.certainly_le(&Log2Interval::around(upper_bound_log2(2, 5).unwrap())));
    assert!(Log2Interval::exact(4.0).certainly_le(&q25));
    assert_eq!(lower_bound_log2(2, 5).unwrap(), BigUint::from(4u32));
    let step = chain_bound(2, 3, 5, &BigUint::from(161280u32)).unwrap();
    assert!((step[0].log2.lo - 58.15).abs() < 0.01);
    assert_eq!(q4_asymptotic_ratio(3).unwrap().exact, "4/3");
}
