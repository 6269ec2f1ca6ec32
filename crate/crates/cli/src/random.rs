//! Seeded random quasigroups and partial quasigroups.

use rand::seq::SliceRandom;
use rand::Rng;

use quasigroups::trades::{find_components, switch};
use quasigroups::{Hypercube, PartialQuasigroup, Result};

fn permutation(k: usize, rng: &mut impl Rng) -> Vec<u8> {
    let mut p: Vec<u8> = (0..k as u8).collect();
    p.shuffle(rng);
    p
}

/// A random isotope of the cyclic group followed by `switches` random
/// component switchings.
pub fn random_quasigroup(
    n: usize,
    k: usize,
    switches: usize,
    rng: &mut impl Rng,
) -> Result<Hypercube> {
    let coords: Vec<Vec<u8>> = (0..n).map(|_| permutation(k, rng)).collect();
    let out = permutation(k, rng);
    let mut f = Hypercube::from_fn(k, n, |p| {
        let s: usize = p
            .iter()
            .zip(&coords)
            .map(|(&x, c)| c[x as usize] as usize)
            .sum();
        out[s % k]
    })?;
    for _ in 0..switches {
        let (a, b) = random_pair(k, rng);
        let comps = find_components(&f, a, b)?;
        let c = comps
            .choose(rng)
            .expect("a quasigroup has a nonempty support");
        f = switch(&f, c)?;
    }
    Ok(f)
}

/// Two distinct symbols, ascending.
pub fn random_pair(k: usize, rng: &mut impl Rng) -> (u8, u8) {
    let a = rng.gen_range(0..k as u8);
    let mut b = rng.gen_range(0..k as u8 - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

/// A random quasigroup restricted to the box that drops symbols `a, b` in
/// the last coordinate, along with the quasigroup it came from.
pub fn random_box(
    n: usize,
    k: usize,
    rng: &mut impl Rng,
) -> Result<(PartialQuasigroup, Hypercube)> {
    let f = random_quasigroup(n, k, 2 * k, rng)?;
    let (a, b) = random_pair(k, rng);
    Ok((PartialQuasigroup::restrict_to_box(&f, a, b)?, f))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn random_tables_are_quasigroups() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (n, k) in [(2, 5), (3, 4), (2, 7), (1, 3)] {
            assert!(random_quasigroup(n, k, 10, &mut rng)
                .unwrap()
                .is_quasigroup());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_quasigroup(3, 5, 8, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = random_quasigroup(3, 5, 8, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn boxes_extend_their_source() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (g, f) = random_box(2, 6, &mut rng).unwrap();
        assert!(g.is_extended_by(&f));
    }
}
