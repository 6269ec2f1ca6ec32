//! Components, switching and disjoint component families.
//!
//! An `{a,b}`-component of a quasigroup `f` is a set of cells on which `f`
//! takes exactly the values `a` and `b` and which, for every member and every
//! axis, also contains the other `{a,b}`-cell of that member's line. Swapping
//! `a` and `b` on a component (switching) yields another quasigroup. Within
//! the support `f⁻¹({a,b})` every line holds exactly two cells; linking them
//! splits the support into minimal components.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::constructions::big_psi;
use crate::error::{usage, Error, Result};
use crate::model::{ComposedQuasigroup, Hypercube, Point};
use crate::unionfind::UnionFind;

/// Largest candidate pool the exact family search accepts.
pub const EXACT_FAMILY_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    /// The two values, ascending.
    pub pair: [u8; 2],
    /// Member points, lexicographically sorted.
    pub points: Vec<Point>,
}

impl Component {
    pub fn new(a: u8, b: u8, mut points: Vec<Point>) -> Self {
        points.sort();
        Component {
            pair: [a.min(b), a.max(b)],
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Flat indices of the members in `f`'s layout.
    pub fn cells(&self, f: &Hypercube) -> Result<Vec<usize>> {
        self.points.iter().map(|p| f.index_of(p)).collect()
    }

    /// True iff every member is a corner of a box `{2u_1,2u_1+1} × …`, i.e. the
    /// component is exactly such a box.
    pub fn is_pair_box(&self) -> bool {
        let Some(first) = self.points.first() else {
            return false;
        };
        let n = first.len();
        if self.points.len() != 1 << n {
            return false;
        }
        let halves: Vec<u8> = first.iter().map(|x| x / 2).collect();
        self.points
            .iter()
            .all(|p| p.iter().zip(&halves).all(|(x, h)| x / 2 == *h))
    }

    /// True iff the component is a product of two-element sets, one per axis.
    pub fn is_box(&self) -> bool {
        let Some(first) = self.points.first() else {
            return false;
        };
        let n = first.len();
        if self.points.len() != 1 << n {
            return false;
        }
        let mut axes: Vec<Vec<u8>> = vec![Vec::new(); n];
        for p in &self.points {
            for (axis, &x) in p.iter().enumerate() {
                if !axes[axis].contains(&x) {
                    axes[axis].push(x);
                }
            }
        }
        axes.iter().all(|vals| vals.len() == 2)
    }
}

fn check_pair(f: &Hypercube, a: u8, b: u8) -> Result<()> {
    if a == b {
        return usage(format!(
            "value pair needs two distinct symbols, got {a} twice"
        ));
    }
    if a as usize >= f.order() || b as usize >= f.order() {
        return usage(format!(
            "value pair {{{a}, {b}}} out of range for order {}",
            f.order()
        ));
    }
    Ok(())
}

/// Cells where `f` takes the value `a` or `b`, ascending.
pub fn value_support_cells(f: &Hypercube, a: u8, b: u8) -> Result<Vec<usize>> {
    check_pair(f, a, b)?;
    Ok(f.values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == a || v == b)
        .map(|(i, _)| i)
        .collect())
}

/// Points where `f` takes the value `a` or `b`, lexicographically ordered.
pub fn value_support(f: &Hypercube, a: u8, b: u8) -> Result<Vec<Point>> {
    Ok(value_support_cells(f, a, b)?
        .into_iter()
        .map(|i| f.point_of(i))
        .collect())
}

/// The other cell on the line through `cell` along `axis` whose value lies in
/// `{a, b}`.
fn partner(f: &Hypercube, cell: usize, axis: usize, a: u8, b: u8) -> Option<usize> {
    f.line(cell, axis)
        .find(|&c| c != cell && (f.at(c) == a || f.at(c) == b))
}

/// Minimal `{a,b}`-components of `f`, ordered by smallest member.
pub fn find_components(f: &Hypercube, a: u8, b: u8) -> Result<Vec<Component>> {
    let support = value_support_cells(f, a, b)?;
    if !f.is_quasigroup() {
        return usage("components are only defined for quasigroups");
    }
    let mut uf = UnionFind::new(f.len());
    for &cell in &support {
        for axis in 0..f.arity() {
            let other = partner(f, cell, axis, a, b).expect("quasigroup lines hold both values");
            uf.union(cell, other);
        }
    }
    Ok(uf
        .classes(support)
        .into_iter()
        .map(|class| Component::new(a, b, class.into_iter().map(|c| f.point_of(c)).collect()))
        .collect())
}

/// [`find_components`] on a composition, materialized under `cap`.
pub fn find_components_composed(
    c: &ComposedQuasigroup,
    a: u8,
    b: u8,
    cap: usize,
) -> Result<Vec<Component>> {
    find_components(&c.materialize(cap)?, a, b)
}

/// Checks that `points` is an `{a,b}`-component of `f`: `f` maps the set onto
/// `{a, b}` and the set has Property (A).
pub fn is_component(f: &Hypercube, pair: [u8; 2], points: &[Point]) -> Result<bool> {
    let [a, b] = pair;
    check_pair(f, a, b)?;
    let cells: HashSet<usize> = points
        .iter()
        .map(|p| f.index_of(p))
        .collect::<Result<_>>()?;
    if cells.is_empty() {
        return Ok(false);
    }
    let values: HashSet<u8> = cells.iter().map(|&c| f.at(c)).collect();
    if values != HashSet::from([a, b]) {
        return Ok(false);
    }
    Ok(cells.iter().all(|&cell| {
        (0..f.arity()).all(|axis| f.line(cell, axis).any(|c| c != cell && cells.contains(&c)))
    }))
}

/// Exchanges `a` and `b` on the component. The component is re-verified
/// against `f` first.
pub fn switch(f: &Hypercube, c: &Component) -> Result<Hypercube> {
    if !is_component(f, c.pair, &c.points)? {
        return usage(format!(
            "the given {:?}-set is not a component of this table",
            c.pair
        ));
    }
    let [a, b] = c.pair;
    let mut values = f.values().to_vec();
    for cell in c.cells(f)? {
        values[cell] = if values[cell] == a { b } else { a };
    }
    f.with_values(values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Minimal components for the pairs `{2i, 2i+1}`; disjoint across `i`.
    PairPartition,
    /// Largest-first greedy packing over the components of every pair.
    Greedy,
    /// Maximum packing by branch and bound; small candidate pools only.
    Exact,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pair_partition" | "pair-partition" => Ok(Strategy::PairPartition),
            "greedy" => Ok(Strategy::Greedy),
            "exact" => Ok(Strategy::Exact),
            other => usage(format!("unknown strategy {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub strategy: Strategy,
    pub components: Vec<Component>,
}

impl FamilyReport {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Component::len).collect()
    }
}

fn all_components(f: &Hypercube) -> Result<Vec<Component>> {
    let k = f.order() as u8;
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            out.extend(find_components(f, a, b)?);
        }
    }
    Ok(out)
}

/// A family of pairwise disjoint components of `f`.
pub fn disjoint_family(f: &Hypercube, strategy: Strategy) -> Result<FamilyReport> {
    let components = match strategy {
        Strategy::PairPartition => {
            let mut out = Vec::new();
            for i in 0..(f.order() / 2) as u8 {
                out.extend(find_components(f, 2 * i, 2 * i + 1)?);
            }
            out
        }
        Strategy::Greedy => {
            let mut pool = all_components(f)?;
            pool.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
            let mut taken = vec![false; f.len()];
            let mut out = Vec::new();
            for c in pool {
                let cells = c.cells(f)?;
                if cells.iter().all(|&i| !taken[i]) {
                    for i in cells {
                        taken[i] = true;
                    }
                    out.push(c);
                }
            }
            out
        }
        Strategy::Exact => {
            let pool = all_components(f)?;
            if pool.len() > EXACT_FAMILY_LIMIT {
                return Err(Error::Resource {
                    what: "candidate components for exact packing",
                    needed: pool.len() as u128,
                    cap: EXACT_FAMILY_LIMIT as u128,
                });
            }
            let cells: Vec<HashSet<usize>> = pool
                .iter()
                .map(|c| c.cells(f).map(|v| v.into_iter().collect()))
                .collect::<Result<_>>()?;
            let conflicts: Vec<u32> = (0..pool.len())
                .map(|i| {
                    (0..pool.len())
                        .filter(|&j| j != i && !cells[i].is_disjoint(&cells[j]))
                        .fold(0u32, |m, j| m | 1 << j)
                })
                .collect();
            let best = max_packing(&conflicts);
            pool.into_iter()
                .enumerate()
                .filter(|(i, _)| best & (1 << i) != 0)
                .map(|(_, c)| c)
                .collect()
        }
    };
    Ok(FamilyReport {
        strategy,
        components,
    })
}

/// Maximum independent set of the conflict graph, as a bitmask. Among
/// maximum sets the first one found in index order is returned.
fn max_packing(conflicts: &[u32]) -> u32 {
    fn go(i: usize, chosen: u32, blocked: u32, conflicts: &[u32], best: &mut u32) {
        let n = conflicts.len();
        if i == n {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        let remaining = (i..n).filter(|&j| blocked & (1 << j) == 0).count() as u32;
        if chosen.count_ones() + remaining <= best.count_ones() {
            return;
        }
        if blocked & (1 << i) == 0 {
            go(
                i + 1,
                chosen | 1 << i,
                blocked | conflicts[i],
                conflicts,
                best,
            );
        }
        go(i + 1, chosen, blocked, conflicts, best);
    }
    let mut best = 0;
    go(0, 0, 0, conflicts, &mut best);
    best
}

/// Switches the family members selected by `mask`. Members must be pairwise
/// disjoint components of `f`.
pub fn switch_family(f: &Hypercube, family: &[Component], mask: &[bool]) -> Result<Hypercube> {
    if mask.len() != family.len() {
        return usage(format!(
            "mask has {} entries for a family of {}",
            mask.len(),
            family.len()
        ));
    }
    let mut owner = vec![usize::MAX; f.len()];
    for (idx, c) in family.iter().enumerate() {
        if !is_component(f, c.pair, &c.points)? {
            return usage(format!("family member {idx} is not a component"));
        }
        for cell in c.cells(f)? {
            if owner[cell] != usize::MAX {
                return usage(format!("family members {} and {idx} overlap", owner[cell]));
            }
            owner[cell] = idx;
        }
    }
    let mut values = f.values().to_vec();
    for (c, _) in family.iter().zip(mask).filter(|(_, &on)| on) {
        let [a, b] = c.pair;
        for cell in c.cells(f)? {
            values[cell] = if values[cell] == a { b } else { a };
        }
    }
    f.with_values(values)
}

/// Minimal `{2i, 2i+1}`-component counts of the tower `Ψ^n` of order `2m+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaReport {
    pub n: usize,
    pub m: usize,
    pub per_pair: Vec<usize>,
    /// The minimum of `per_pair`.
    pub alpha: usize,
}

pub fn alpha_report(n: usize, m: usize, cap: usize) -> Result<AlphaReport> {
    let table = big_psi(n, m)?.materialize(cap)?;
    let per_pair = (0..m as u8)
        .map(|i| find_components(&table, 2 * i, 2 * i + 1).map(|c| c.len()))
        .collect::<Result<Vec<_>>>()?;
    let alpha = per_pair.iter().copied().min().unwrap_or(0);
    Ok(AlphaReport {
        n,
        m,
        per_pair,
        alpha,
    })
}
