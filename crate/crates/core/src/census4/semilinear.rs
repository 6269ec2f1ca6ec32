use serde::Serialize;

use crate::error::{usage, Result};
use crate::model::Hypercube;

/// Semilinearity flags of a loop of order 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SemilinearClass {
    /// `flags[a-1]` is true iff the loop is `a`-semilinear.
    pub flags: [bool; 3],
    /// Semilinear for at least two values of `a`.
    pub linear: bool,
    /// Affine constant used in the test, `(n + 1) mod 2`.
    pub epsilon: u8,
}

impl SemilinearClass {
    pub fn is_semilinear(&self) -> bool {
        self.flags.iter().any(|&f| f)
    }
}

/// Affine constant of the semilinearity congruence for arity `n`.
///
/// At the origin a loop takes the value 0, so the indicator of `{0, a}` is 1
/// there while the coordinate sum is `n`; the constant must make
/// `ε + n ≡ 1 (mod 2)`.
pub fn semilinear_epsilon(n: usize) -> u8 {
    ((n + 1) % 2) as u8
}

pub(crate) fn check_order4_loop(f: &Hypercube) -> Result<()> {
    if f.order() != 4 {
        return usage(format!("order 4 is required, got {}", f.order()));
    }
    if !f.is_loop() {
        return usage("the table is not a loop with identity 0");
    }
    Ok(())
}

/// `a`-semilinearity without validating `f`.
pub(crate) fn a_semilinear_unchecked(f: &Hypercube, a: u8) -> bool {
    let n = f.arity();
    let eps = semilinear_epsilon(n);
    let in_pair = |v: u8| (v == 0 || v == a) as u8;
    // parity of the coordinate indicators, updated incrementally per cell
    let mut coords = vec![0u8; n];
    let mut parity = coords.iter().map(|&x| in_pair(x)).sum::<u8>() % 2;
    for (idx, &v) in f.values().iter().enumerate() {
        if idx > 0 {
            for i in (0..n).rev() {
                parity ^= in_pair(coords[i]);
                coords[i] += 1;
                if coords[i] < 4 {
                    parity ^= in_pair(coords[i]);
                    break;
                }
                coords[i] = 0;
                parity ^= in_pair(0);
            }
        }
        if in_pair(v) != (eps + parity) % 2 {
            return false;
        }
    }
    true
}

/// True iff the indicator of `f⁻¹({0, a})` equals
/// `ε + Σ_i [x_i ∈ {0, a}] (mod 2)` everywhere, with `ε = (n + 1) mod 2`.
pub fn is_a_semilinear(f: &Hypercube, a: u8) -> Result<bool> {
    check_order4_loop(f)?;
    if !(1..=3).contains(&a) {
        return usage(format!("a must be 1, 2 or 3, got {a}"));
    }
    Ok(a_semilinear_unchecked(f, a))
}

pub fn classify_semilinearity(f: &Hypercube) -> Result<SemilinearClass> {
    check_order4_loop(f)?;
    Ok(classify_unchecked(f))
}

pub(crate) fn classify_unchecked(f: &Hypercube) -> SemilinearClass {
    let flags = [1, 2, 3].map(|a| a_semilinear_unchecked(f, a));
    SemilinearClass {
        flags,
        linear: flags.iter().filter(|&&x| x).count() >= 2,
        epsilon: semilinear_epsilon(f.arity()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor(n: usize) -> Hypercube {
        Hypercube::from_fn(4, n, |p| p.iter().fold(0, |a, &x| a ^ x)).unwrap()
    }

    fn z4() -> Hypercube {
        Hypercube::from_fn(4, 2, |p| (p[0] + p[1]) % 4).unwrap()
    }

    /// Direct evaluation of the congruence, one point at a time.
    fn brute(f: &Hypercube, a: u8) -> bool {
        let eps = semilinear_epsilon(f.arity());
        (0..f.len()).all(|i| {
            let p = f.point_of(i);
            let lhs = (f.at(i) == 0 || f.at(i) == a) as u8;
            let rhs = (eps + p.iter().filter(|&&x| x == 0 || x == a).count() as u8) % 2;
            lhs == rhs
        })
    }

    #[test]
    fn xor_is_linear() {
        for n in 1..=4 {
            let c = classify_semilinearity(&xor(n)).unwrap();
            assert_eq!(c.flags, [true; 3], "n={n}");
            assert!(c.linear);
        }
    }

    #[test]
    fn cyclic_group_is_two_semilinear_only() {
        assert!(is_a_semilinear(&z4(), 2).unwrap());
        assert!(!is_a_semilinear(&z4(), 1).unwrap());
        let c = classify_semilinearity(&z4()).unwrap();
        assert_eq!(c.flags, [false, true, false]);
        assert!(!c.linear);
        // cell (1,1): 1+1 = 2 is outside {0,1}, while both coordinates are in it
        assert_eq!(z4().get(&[1, 1]).unwrap(), 2);
    }

    #[test]
    fn incremental_parity_matches_brute_force() {
        let z4_3 = Hypercube::from_fn(4, 3, |p| (p[0] + p[1] + p[2]) % 4).unwrap();
        let mixed = Hypercube::from_fn(4, 3, |p| ((p[0] ^ p[1]) + p[2]) % 4).unwrap();
        for f in [xor(3), z4_3, mixed, z4()] {
            for a in 1..=3 {
                assert_eq!(a_semilinear_unchecked(&f, a), brute(&f, a));
            }
        }
    }

    #[test]
    fn rejects_non_loops() {
        let shifted = Hypercube::from_fn(4, 2, |p| (p[0] + p[1] + 1) % 4).unwrap();
        assert!(is_a_semilinear(&shifted, 1).is_err());
        assert!(is_a_semilinear(&z4(), 0).is_err());
        let z5 = Hypercube::from_fn(5, 2, |p| (p[0] + p[1]) % 5).unwrap();
        assert!(classify_semilinearity(&z5).is_err());
    }
}
