#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasigroups::trades::{find_components, switch};
use quasigroups::Hypercube;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pair(k: usize, rng: &mut impl Rng) -> (u8, u8) {
    let mut v: Vec<u8> = (0..k as u8).collect();
    v.shuffle(rng);
    (v[0].min(v[1]), v[0].max(v[1]))
}

/// Isotope of the cyclic group, then a few random switchings.
pub fn quasigroup(n: usize, k: usize, rng: &mut impl Rng) -> Hypercube {
    let perm = |rng: &mut _| {
        let mut p: Vec<u8> = (0..k as u8).collect();
        p.shuffle(rng);
        p
    };
    let coords: Vec<Vec<u8>> = (0..n).map(|_| perm(rng)).collect();
    let out = perm(rng);
    let mut f = Hypercube::from_fn(k, n, |p| {
        let s: usize = p
            .iter()
            .zip(&coords)
            .map(|(&x, c)| c[x as usize] as usize)
            .sum();
        out[s % k]
    })
    .unwrap();
    for _ in 0..k {
        let (a, b) = pair(k, rng);
        let comps = find_components(&f, a, b).unwrap();
        f = switch(&f, comps.choose(rng).unwrap()).unwrap();
    }
    f
}

/// `(n, k, seed)` with `k^n` small enough for quick tests.
pub fn shape(
    ns: std::ops::RangeInclusive<usize>,
    ks: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (usize, usize, u64)> {
    (ns, ks, any::<u64>()).prop_filter("table too large", |(n, k, _)| k.pow(*n as u32) <= 4096)
}
