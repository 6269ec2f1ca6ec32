use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::partition::{partition_count, shapes};
use crate::error::{usage, Result};

/// One row of the order-4 counting ledger.
///
/// Root-anchored counts (`r_a_star`, `r_star`) are per fixed binary root
/// operation; `r_a_star` additionally per fixed `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceRow {
    pub n: usize,
    /// Number of `a`-semilinear `n`-ary loops, `2^(2^n - n - 1)`.
    #[serde(with = "crate::decimal")]
    pub l_a: BigUint,
    /// Reducible `a`-semilinear loops whose root is a fixed `a`-semilinear binary loop.
    #[serde(with = "crate::decimal")]
    pub r_a_star: BigUint,
    /// Reducible `a`-semilinear loops whose root has arity at least 3.
    #[serde(with = "crate::decimal")]
    pub r_a_0: BigUint,
    /// Reducible loops whose root is a fixed binary loop.
    #[serde(with = "crate::decimal")]
    pub r_star: BigUint,
    /// Reducible loops whose root has arity at least 3.
    #[serde(with = "crate::decimal")]
    pub r_0: BigUint,
    /// Irreducible `a`-semilinear loops.
    #[serde(with = "crate::decimal")]
    pub p_a: BigUint,
    /// Irreducible loops.
    #[serde(with = "crate::decimal")]
    pub p: BigUint,
    /// All `n`-ary loops of order 4.
    #[serde(with = "crate::decimal")]
    pub v: BigUint,
    /// All `n`-ary quasigroups of order 4, `4 · 6^n · v`.
    #[serde(with = "crate::decimal")]
    pub q: BigUint,
}

impl RecurrenceRow {
    pub const CSV_HEADER: &'static str = "n,l_a,r_a_star,r_a_0,r_star,r_0,p_a,p,v,q";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.l_a,
            self.r_a_star,
            self.r_a_0,
            self.r_star,
            self.r_0,
            self.p_a,
            self.p,
            self.v,
            self.q
        )
    }
}

fn semilinear_count(n: usize) -> BigUint {
    BigUint::one() << ((1usize << n) - n - 1)
}

/// `Σ_{i=from}^{to} weight(i) · Σ_{shapes of [n] with i blocks} F · Π factor(j)^k`.
fn shape_sum(
    n: usize,
    blocks: std::ops::RangeInclusive<usize>,
    weight: impl Fn(usize) -> BigUint,
    factor: impl Fn(usize) -> BigUint,
) -> BigUint {
    let mut total = BigUint::zero();
    for i in blocks {
        let w = weight(i);
        if w.is_zero() {
            continue;
        }
        let mut inner = BigUint::zero();
        for shape in shapes(n, i) {
            let mut term = partition_count(&shape);
            for (j, k) in shape.iter() {
                term *= factor(j).pow(k as u32);
            }
            inner += term;
        }
        total += w * inner;
    }
    total
}

/// Ledger rows for `n = 1..=n_max`, ending in the numbers of loops and
/// quasigroups of order 4.
pub fn q4_recurrence(n_max: usize) -> Result<Vec<RecurrenceRow>> {
    if n_max == 0 {
        return usage("n_max must be at least 1");
    }
    let mut rows: Vec<RecurrenceRow> = Vec::with_capacity(n_max);
    let zero = BigUint::zero;
    // n = 1: the identity; n = 2: the four binary loops, each its own root.
    rows.push(RecurrenceRow {
        n: 1,
        l_a: BigUint::one(),
        r_a_star: zero(),
        r_a_0: zero(),
        r_star: zero(),
        r_0: zero(),
        p_a: zero(),
        p: zero(),
        v: BigUint::one(),
        q: BigUint::from(24u32),
    });
    if n_max >= 2 {
        rows.push(RecurrenceRow {
            n: 2,
            l_a: BigUint::from(2u32),
            r_a_star: BigUint::one(),
            r_a_0: zero(),
            r_star: BigUint::one(),
            r_0: zero(),
            p_a: zero(),
            p: zero(),
            v: BigUint::from(4u32),
            q: BigUint::from(576u32),
        });
    }
    for n in 3..=n_max {
        let row = |j: usize| &rows[j - 1];
        let l_a = semilinear_count(n);
        let r_a_star = shape_sum(
            n,
            2..=n,
            |_| BigUint::one(),
            |j| &row(j).l_a - &row(j).r_a_star,
        );
        let r_star = shape_sum(n, 2..=n, |_| BigUint::one(), |j| &row(j).v - &row(j).r_star);
        let r_a_0 = shape_sum(n, 3..=n - 1, |i| row(i).p_a.clone(), |j| row(j).l_a.clone());
        let r_0 = shape_sum(n, 3..=n - 1, |i| row(i).p.clone(), |j| row(j).v.clone());
        let p_a = &l_a - &r_a_0 - &r_a_star * 2u32;
        let p = &p_a * 3u32;
        let v = &p + &r_0 + &r_star * 4u32;
        let q = &v * 4u32 * BigUint::from(6u32).pow(n as u32);
        rows.push(RecurrenceRow {
            n,
            l_a,
            r_a_star,
            r_a_0,
            r_star,
            r_0,
            p_a,
            p,
            v,
            q,
        });
    }
    Ok(rows)
}
