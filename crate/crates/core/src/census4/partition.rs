use num_bigint::BigUint;
use num_traits::One;

use crate::error::{usage, Result};

/// Block-size profile of a set partition: `multiplicities[i]` blocks of size
/// `sizes[i]`, sizes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionShape {
    sizes: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl PartitionShape {
    pub fn new(sizes: Vec<usize>, multiplicities: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.len() != multiplicities.len() {
            return usage("a shape needs matching, nonempty size and multiplicity lists");
        }
        if sizes[0] == 0 || sizes.windows(2).any(|w| w[0] >= w[1]) {
            return usage("block sizes must be positive and strictly increasing");
        }
        if multiplicities.contains(&0) {
            return usage("multiplicities must be positive");
        }
        Ok(PartitionShape {
            sizes,
            multiplicities,
        })
    }

    /// Shape of the multiset of block sizes `parts`.
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        let mut sorted = parts.to_vec();
        sorted.sort_unstable();
        let mut sizes = Vec::new();
        let mut mult = Vec::new();
        for s in sorted {
            if sizes.last() == Some(&s) {
                *mult.last_mut().unwrap() += 1;
            } else {
                sizes.push(s);
                mult.push(1);
            }
        }
        PartitionShape::new(sizes, mult)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Size of the partitioned set.
    pub fn ground_size(&self) -> usize {
        self.sizes
            .iter()
            .zip(&self.multiplicities)
            .map(|(j, k)| j * k)
            .sum()
    }

    pub fn blocks(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// `(size, multiplicity)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sizes
            .iter()
            .copied()
            .zip(self.multiplicities.iter().copied())
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of set partitions of `{1..n}` with the given shape:
/// `n! / (Π (j_i!)^{k_i} · Π k_i!)`.
pub fn partition_count(shape: &PartitionShape) -> BigUint {
    let mut denom = BigUint::one();
    for (j, k) in shape.iter() {
        denom *= factorial(j).pow(k as u32) * factorial(k);
    }
    factorial(shape.ground_size()) / denom
}

/// All shapes of partitions of an `n`-set into exactly `blocks` blocks, in
/// reverse lexicographic order of their size multisets.
pub fn shapes(n: usize, blocks: usize) -> Vec<PartitionShape> {
    fn go(n: usize, parts: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(n, blocks, n, &mut Vec::new(), &mut raw);
    raw.iter()
        .map(|p| PartitionShape::from_parts(p).expect("integer partition parts are positive"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(sizes: Vec<usize>, mult: Vec<usize>) -> u64 {
        partition_count(&PartitionShape::new(sizes, mult).unwrap())
            .try_into()
            .unwrap()
    }

    #[test]
    fn small_shapes() {
        assert_eq!(count(vec![1, 2], vec![1, 1]), 3);
        assert_eq!(count(vec![2], vec![2]), 3);
        assert_eq!(count(vec![1, 3], vec![1, 1]), 4);
        assert_eq!(count(vec![1, 2], vec![2, 1]), 6);
    }

    #[test]
    fn invalid_shapes() {
        assert!(PartitionShape::new(vec![2, 1], vec![1, 1]).is_err());
        assert!(PartitionShape::new(vec![0, 1], vec![1, 1]).is_err());
        assert!(PartitionShape::new(vec![1], vec![0]).is_err());
        assert!(PartitionShape::new(vec![1], vec![]).is_err());
    }

    /// Stirling numbers of the second kind from the triangle recurrence.
    fn stirling2(n: usize) -> Vec<Vec<u64>> {
        let mut s = vec![vec![0u64; n + 1]; n + 1];
        s[0][0] = 1;
        for i in 1..=n {
            for j in 1..=i {
                s[i][j] = j as u64 * s[i - 1][j] + s[i - 1][j - 1];
            }
        }
        s
    }

    #[test]
    fn shape_sums_are_stirling_and_bell() {
        let s = stirling2(10);
        for n in 1..=10 {
            let mut bell = 0u64;
            for blocks in 1..=n {
                let total: u64 = shapes(n, blocks)
                    .iter()
                    .map(|sh| {
                        assert_eq!(sh.ground_size(), n);
                        assert_eq!(sh.blocks(), blocks);
                        u64::try_from(partition_count(sh)).unwrap()
                    })
                    .sum();
                assert_eq!(total, s[n][blocks], "n={n} blocks={blocks}");
                bell += total;
            }
            let expected_bell = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975][n];
            assert_eq!(bell, expected_bell);
        }
    }
}
