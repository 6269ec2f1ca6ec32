use std::collections::HashMap;

use serde::Serialize;

use super::semilinear::check_order4_loop;
use crate::error::{usage, Error, Result};
use crate::model::Hypercube;

/// Evidence that `f(x) = outer(inner(x_M), x_rest)` where `x_rest` lists the
/// coordinates outside `M` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionWitness {
    /// The grouped coordinates `M` (0-based, ascending), `2 <= |M| < n`.
    pub inner_coords: Vec<usize>,
    /// The remaining coordinates, ascending.
    pub outer_coords: Vec<usize>,
    /// `inner(x_M) = f(x_M, 0, .., 0)`; a loop whenever `f` is.
    pub inner: Hypercube,
    /// First argument is the inner value, then `x_rest`.
    pub outer: Hypercube,
}

impl ReductionWitness {
    pub fn recompose(&self, point: &[u8]) -> u8 {
        let k = self.inner.order();
        let inner_idx = self
            .inner_coords
            .iter()
            .fold(0, |acc, &i| acc * k + point[i] as usize);
        let u = self.inner.at(inner_idx) as usize;
        let outer_idx = self
            .outer_coords
            .iter()
            .fold(u, |acc, &i| acc * k + point[i] as usize);
        self.outer.at(outer_idx)
    }

    /// True iff recomposition matches `f` on every point.
    pub fn reproduces(&self, f: &Hypercube) -> bool {
        (0..f.len()).all(|i| self.recompose(&f.point_of(i)) == f.at(i))
    }
}

/// Flat-index offsets contributed by every assignment of `coords`, in
/// lexicographic order of that assignment.
fn offsets(f: &Hypercube, coords: &[usize]) -> Vec<usize> {
    let k = f.order();
    let mut out = vec![0usize];
    for &c in coords {
        let stride = f.stride(c);
        out = out
            .iter()
            .flat_map(|&base| (0..k).map(move |x| base + x * stride))
            .collect();
    }
    out
}

/// Tries to factor `f` through the coordinates `inner_coords`.
pub fn reduction_through(f: &Hypercube, inner_coords: &[usize]) -> Option<ReductionWitness> {
    let n = f.arity();
    let k = f.order();
    let outer_coords: Vec<usize> = (0..n).filter(|i| !inner_coords.contains(i)).collect();
    let inner_off = offsets(f, inner_coords);
    let outer_off = offsets(f, &outer_coords);

    // label each distinct slice by its value at x_rest = 0
    let mut labels: HashMap<Vec<u8>, u8> = HashMap::new();
    let mut representative = vec![None; k];
    for &io in &inner_off {
        let slice: Vec<u8> = outer_off.iter().map(|&oo| f.at(io + oo)).collect();
        let label = slice[0];
        match labels.get(&slice) {
            Some(_) => {}
            None => {
                if labels.len() == k || representative[label as usize].is_some() {
                    return None;
                }
                labels.insert(slice, label);
                representative[label as usize] = Some(io);
            }
        }
    }
    if labels.len() != k {
        return None;
    }
    let inner_values = inner_off.iter().map(|&io| f.at(io)).collect();
    let mut outer_values = Vec::with_capacity(k * outer_off.len());
    for rep in &representative {
        let rep = rep.expect("k distinct labels cover all symbols");
        outer_values.extend(outer_off.iter().map(|&oo| f.at(rep + oo)));
    }
    Some(ReductionWitness {
        inner: Hypercube::new(k, inner_coords.len(), inner_values).ok()?,
        outer: Hypercube::new(k, outer_coords.len() + 1, outer_values).ok()?,
        inner_coords: inner_coords.to_vec(),
        outer_coords,
    })
}

/// Subsets of `0..n` of the given size in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// First grouping `M` (by size, then lexicographically) through which `f`
/// factors, or `None` if `f` is permutably irreducible.
pub fn find_reduction(f: &Hypercube) -> Option<ReductionWitness> {
    let n = f.arity();
    (2..n)
        .flat_map(|size| combinations(n, size))
        .find_map(|m| reduction_through(f, &m))
}

/// Shape of the canonical decomposition of a reducible loop of order 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootClass {
    Irreducible,
    /// `f = q_1(x_{I_1}) ∗ … ∗ q_t(x_{I_t})` with `∗` a binary loop; `blocks`
    /// is the finest such partition `{I_j}` (0-based coordinates).
    BinaryRoot {
        op: Hypercube,
        blocks: Vec<Vec<usize>>,
    },
    /// Reducible, with an irreducible root of arity at least 3.
    HigherRoot,
}

/// If `f(x) = f(x_M, 0) ∗ f(0, x_rest)` for a binary loop `∗`, returns `∗`.
fn binary_factor(f: &Hypercube, side: &[usize]) -> Option<Hypercube> {
    let n = f.arity();
    let k = f.order();
    let rest: Vec<usize> = (0..n).filter(|i| !side.contains(i)).collect();
    let side_off = offsets(f, side);
    let rest_off = offsets(f, &rest);
    let mut op: Vec<Option<u8>> = vec![None; k * k];
    for &so in &side_off {
        let u = f.at(so) as usize;
        for &ro in &rest_off {
            let w = f.at(ro) as usize;
            let v = f.at(so + ro);
            match op[u * k + w] {
                Some(prev) if prev != v => return None,
                Some(_) => {}
                None => op[u * k + w] = Some(v),
            }
        }
    }
    let values: Option<Vec<u8>> = op.into_iter().collect();
    let table = Hypercube::new(k, 2, values?).ok()?;
    table.is_loop().then_some(table)
}

/// Classifies the root operation of a loop of order 4 and arity at least 3.
pub fn root_classification(f: &Hypercube) -> Result<RootClass> {
    check_order4_loop(f)?;
    let n = f.arity();
    if n < 3 {
        return usage(format!("root classification needs arity >= 3, got {n}"));
    }
    // bipartitions {M, complement} with 0 ∈ M, M proper
    let mut op: Option<Hypercube> = None;
    let mut factoring: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        if mask & 1 == 0 {
            continue;
        }
        let side: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if let Some(star) = binary_factor(f, &side) {
            if let Some(prev) = &op {
                if *prev != star {
                    return Err(Error::Invariant(
                        "two different binary root operations factor the same loop".into(),
                    ));
                }
            } else {
                if !star.is_commutative()? {
                    return Err(Error::Invariant(
                        "binary root operation is not commutative".into(),
                    ));
                }
                op = Some(star);
            }
            factoring.push(mask);
        }
    }
    match op {
        Some(op) => {
            // coordinates share a block iff every factoring cut keeps them together
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for i in 0..n {
                let same = blocks.iter_mut().find(|b| {
                    let j = b[0];
                    factoring.iter().all(|m| (m >> i & 1) == (m >> j & 1))
                });
                match same {
                    Some(b) => b.push(i),
                    None => blocks.push(vec![i]),
                }
            }
            Ok(RootClass::BinaryRoot { op, blocks })
        }
        None if find_reduction(f).is_some() => Ok(RootClass::HigherRoot),
        None => Ok(RootClass::Irreducible),
    }
}

/// Name of a binary loop of order 4: `Z2xZ2`, or `Z4/a` for the cyclic loop
/// whose element of order 2 is `a`.
pub fn binary_loop_name(op: &Hypercube) -> Option<String> {
    if op.order() != 4 || op.arity() != 2 || !op.is_loop() {
        return None;
    }
    let squares_to_zero: Vec<u8> = (1..4u8).filter(|&x| op.at(x as usize * 5) == 0).collect();
    match squares_to_zero.as_slice() {
        [_, _, _] => Some("Z2xZ2".to_string()),
        [a] => Some(format!("Z4/{a}")),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5_sum3() -> Hypercube {
        Hypercube::from_fn(5, 3, |p| (p[0] + p[1] + p[2]) % 5).unwrap()
    }

    #[test]
    fn group_sum_reduces_through_first_pair() {
        let f = z5_sum3();
        let w = find_reduction(&f).unwrap();
        assert_eq!(w.inner_coords, vec![0, 1]);
        assert_eq!(w.outer_coords, vec![2]);
        assert!(w.reproduces(&f));
        assert!(w.inner.is_loop());
        assert!(w.outer.is_quasigroup());
    }

    #[test]
    fn binary_tables_never_reduce() {
        let f = Hypercube::from_fn(4, 2, |p| p[0] ^ p[1]).unwrap();
        assert!(find_reduction(&f).is_none());
    }

    #[test]
    fn combination_order() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn xor_tower_has_singleton_blocks() {
        let f = Hypercube::from_fn(4, 3, |p| p[0] ^ p[1] ^ p[2]).unwrap();
        match root_classification(&f).unwrap() {
            RootClass::BinaryRoot { op, blocks } => {
                assert_eq!(binary_loop_name(&op).as_deref(), Some("Z2xZ2"));
                assert_eq!(blocks, vec![vec![0], vec![1], vec![2]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nested_distinct_loops_keep_inner_block() {
        // f = (x1 + x2 mod 4) XOR x3
        let f = Hypercube::from_fn(4, 3, |p| ((p[0] + p[1]) % 4) ^ p[2]).unwrap();
        match root_classification(&f).unwrap() {
            RootClass::BinaryRoot { op, blocks } => {
                assert_eq!(binary_loop_name(&op).as_deref(), Some("Z2xZ2"));
                assert_eq!(blocks, vec![vec![0, 1], vec![2]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        // grouped in the middle: x1 XOR (x2 + x3 mod 4) with coordinates permuted
        let g = Hypercube::from_fn(4, 3, |p| ((p[0] + p[2]) % 4) ^ p[1]).unwrap();
        match root_classification(&g).unwrap() {
            RootClass::BinaryRoot { blocks, .. } => assert_eq!(blocks, vec![vec![0, 2], vec![1]]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn loop_names() {
        let z4 = Hypercube::from_fn(4, 2, |p| (p[0] + p[1]) % 4).unwrap();
        assert_eq!(binary_loop_name(&z4).as_deref(), Some("Z4/2"));
        assert!(binary_loop_name(&Hypercube::identity(4).unwrap()).is_none());
    }

    #[test]
    fn classification_preconditions() {
        let z4 = Hypercube::from_fn(4, 2, |p| (p[0] + p[1]) % 4).unwrap();
        assert!(matches!(root_classification(&z4), Err(Error::Usage(_))));
        assert!(root_classification(&z5_sum3()).is_err());
    }
}
