//! Explicit quasigroup constructions.

use std::sync::Arc;

use crate::error::{usage, Error, Result};
use crate::model::{cell_count, ComposedQuasigroup, Hypercube, Node, MAX_ORDER};

/// An idempotent binary quasigroup of order `m >= 3`.
///
/// Odd `m`: `x·y = c(x + y) mod m` with `c = (m+1)/2`, so `x·x = x`. Even `m`:
/// prolongation of the odd table of order `m-1` along the transversal
/// `{(x, x+1)}`; those cells take the new symbol `m-1`, their old values move
/// to the new row and column, and the new corner is `m-1`.
pub fn idempotent_quasigroup(m: usize) -> Result<Hypercube> {
    if m < 3 {
        return usage(format!(
            "no idempotent quasigroup of order {m} is available (need m >= 3)"
        ));
    }
    if m > MAX_ORDER {
        return usage(format!("order {m} exceeds {MAX_ORDER}"));
    }
    if m % 2 == 1 {
        let c = m.div_ceil(2);
        return Hypercube::from_fn(m, 2, |p| ((c * (p[0] as usize + p[1] as usize)) % m) as u8);
    }
    let base = m - 1;
    let odd = idempotent_quasigroup(base)?;
    let new = base as u8;
    let mut values = vec![0u8; m * m];
    for x in 0..base {
        for y in 0..base {
            values[x * m + y] = odd.at(x * base + y);
        }
    }
    for x in 0..base {
        let y = (x + 1) % base;
        let old = odd.at(x * base + y);
        values[x * m + y] = new;
        values[x * m + base] = old;
        values[base * m + y] = old;
    }
    values[base * m + base] = new;
    Hypercube::new(m, 2, values)
}

/// The binary quasigroup of order `2m + 1` built from an idempotent quasigroup
/// `φ` of order `m`. Symbols `2a` and `2a+1` form the `a`-th pair and `2m` is
/// the extra symbol:
///
/// * `ψ(2a+δ, 2b+σ) = 2φ(a,b) + (δ+σ mod 2)` for `a ≠ b`;
/// * `ψ(2a+δ, 2a+δ) = 2a+1-δ`;
/// * `ψ(2a+δ, 2a+1-δ) = 2m`;
/// * `ψ(2m, x) = ψ(x, 2m) = x`.
///
/// Without `phi` the table from [`idempotent_quasigroup`] is used.
pub fn psi(m: usize, phi: Option<&Hypercube>) -> Result<Hypercube> {
    if m < 3 {
        return usage(format!("psi needs m >= 3, got {m}"));
    }
    let default;
    let phi = match phi {
        Some(p) => p,
        None => {
            default = idempotent_quasigroup(m)?;
            &default
        }
    };
    if phi.arity() != 2 || phi.order() != m {
        return usage(format!("phi must be a binary table of order {m}"));
    }
    if !phi.is_quasigroup() || !phi.is_idempotent()? {
        return usage("phi must be an idempotent quasigroup");
    }
    let k = 2 * m + 1;
    if k > MAX_ORDER {
        return usage(format!("order {k} exceeds {MAX_ORDER}"));
    }
    let last = (k - 1) as u8;
    Hypercube::from_fn(k, 2, |p| {
        let (x, y) = (p[0], p[1]);
        if x == last {
            return y;
        }
        if y == last {
            return x;
        }
        let (a, delta) = (x / 2, x % 2);
        let (b, sigma) = (y / 2, y % 2);
        if a != b {
            2 * phi.at(a as usize * m + b as usize) + (delta + sigma) % 2
        } else if delta == sigma {
            2 * a + 1 - delta
        } else {
            last
        }
    })
}

/// The `n`-ary composition tower of `ψ` (order `2m + 1`):
/// `Ψ² = ψ`, `Ψ^{2j+1}(x, y) = ψ(Ψ^{2j}(x), y)`,
/// `Ψ^{2j+2}(x, y, z) = ψ(Ψ^{2j}(x), ψ(y, z))`.
pub fn big_psi(n: usize, m: usize) -> Result<ComposedQuasigroup> {
    big_psi_from(n, Arc::new(psi(m, None)?))
}

/// [`big_psi`] over an explicitly given `ψ`.
pub fn big_psi_from(n: usize, psi: Arc<Hypercube>) -> Result<ComposedQuasigroup> {
    if n < 2 {
        return usage(format!("the tower starts at arity 2, got {n}"));
    }
    let mut tree = Node::op(psi.clone(), Node::var(0), Node::var(1));
    let mut arity = 2;
    while arity + 2 <= n {
        let pair = Node::op(psi.clone(), Node::var(arity), Node::var(arity + 1));
        tree = Node::op(psi.clone(), tree, pair);
        arity += 2;
    }
    if arity < n {
        tree = Node::op(psi.clone(), tree, Node::var(arity));
    }
    ComposedQuasigroup::new(tree)
}

/// Symbol `s` encodes the pair `(s mod 2, s div 2)`.
fn encode(parity: usize, half: usize) -> u8 {
    (2 * half + parity) as u8
}

/// `f(x) = encode(Σ δ_i mod 2, Σ u_i mod k/2)` where `x_i = 2u_i + δ_i`.
///
/// For every `u ∈ {0..k/2}^n` the box `{2u_1, 2u_1+1} × … × {2u_n, 2u_n+1}`
/// is a minimal component, giving `(k/2)^n` disjoint components of size `2^n`.
pub fn interleaved_group(n: usize, k: usize, cap: usize) -> Result<Hypercube> {
    if k % 2 == 1 || k < 4 {
        return usage(format!(
            "interleaved group needs an even order >= 4, got {k}"
        ));
    }
    if n == 0 {
        return usage("arity must be at least 1");
    }
    match cell_count(k, n) {
        Some(c) if c <= cap => {}
        _ => {
            return Err(Error::Resource {
                what: "materialized cells",
                needed: (k as u128).saturating_pow(n as u32),
                cap: cap as u128,
            })
        }
    }
    let half = k / 2;
    Hypercube::from_fn(k, n, |p| {
        let parity = p.iter().map(|&x| (x % 2) as usize).sum::<usize>() % 2;
        let sum = p.iter().map(|&x| (x / 2) as usize).sum::<usize>() % half;
        encode(parity, sum)
    })
}
