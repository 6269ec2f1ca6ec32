use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{usage, Result};
use crate::model::{PartialQuasigroup, Point};
use crate::unionfind::UnionFind;

/// Structure of the extensions of a partial quasigroup on a box
/// `Σ^{n-1} × (Σ \ {a, b})`.
///
/// Every extension `f` satisfies `{f(x a), f(x b)} = G(x)` where `G(x)` is the
/// pair of symbols missing from the fibre over `x`. The graph `Γ` joins `x`
/// and `y` when they differ in one coordinate and `G(x) ∩ G(y)` is nonempty;
/// fixing `f(x a)` at one vertex forces it on the whole connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub excluded: (u8, u8),
    /// `G(x)` for every `x ∈ Σ^{n-1}` in lexicographic order, pair ascending.
    pub missing: Vec<(Point, [u8; 2])>,
    /// Vertex sets of the connected components of `Γ`.
    pub components: Vec<Vec<Point>>,
    /// For each component, how many of its two possible assignments are
    /// consistent (0, 1 or 2).
    pub choices: Vec<u8>,
}

impl GammaReport {
    /// Product of the per-component choice counts.
    pub fn extension_count(&self) -> BigUint {
        self.choices
            .iter()
            .fold(BigUint::from(1u32), |acc, &c| acc * c)
    }
}

pub fn gamma_analysis(g: &PartialQuasigroup) -> Result<GammaReport> {
    let Some((a, b)) = g.box_pair() else {
        return usage("Γ analysis needs a box domain");
    };
    let k = g.order();
    let base_arity = g.arity() - 1;
    let vertices = k.pow(base_arity as u32);
    let cells = g.to_cells();
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };

    let missing: Vec<u64> = (0..vertices)
        .map(|x| {
            let present = (0..k)
                .filter_map(|c| cells[x * k + c])
                .fold(0u64, |m, v| m | 1 << v);
            full & !present
        })
        .collect();
    debug_assert!(missing.iter().all(|m| m.count_ones() == 2));

    let neighbours = |x: usize| {
        (0..base_arity).flat_map(move |axis| {
            let stride = k.pow((base_arity - 1 - axis) as u32);
            let coord = x / stride % k;
            let base = x - coord * stride;
            (0..k)
                .filter(move |&c| c != coord)
                .map(move |c| base + c * stride)
        })
    };

    let mut uf = UnionFind::new(vertices);
    for x in 0..vertices {
        for y in neighbours(x) {
            if y > x && missing[x] & missing[y] != 0 {
                uf.union(x, y);
            }
        }
    }
    let classes = uf.classes(0..vertices);

    // Value of f(x a) per vertex while propagating one choice.
    let mut at_a: Vec<Option<u8>> = vec![None; vertices];
    let mut choices = Vec::with_capacity(classes.len());
    for class in &classes {
        let root = class[0];
        let mut consistent = 0u8;
        for pick in pair_of(missing[root]) {
            for &x in class {
                at_a[x] = None;
            }
            if propagate(root, pick, &missing, &mut at_a, &neighbours) {
                consistent += 1;
            }
        }
        choices.push(consistent);
    }

    let point = |x: usize| -> Point {
        let mut coords = vec![0u8; base_arity];
        let mut rest = x;
        for slot in coords.iter_mut().rev() {
            *slot = (rest % k) as u8;
            rest /= k;
        }
        Point(coords)
    };
    Ok(GammaReport {
        excluded: (a, b),
        missing: (0..vertices)
            .map(|x| (point(x), pair_of(missing[x])))
            .collect(),
        components: classes
            .iter()
            .map(|c| c.iter().map(|&x| point(x)).collect())
            .collect(),
        choices,
    })
}

fn pair_of(mask: u64) -> [u8; 2] {
    let lo = mask.trailing_zeros() as u8;
    let hi = (mask & (mask - 1)).trailing_zeros() as u8;
    [lo, hi]
}

/// Sets `f(root a) = pick` and forces the rest of the component. Returns
/// false if two forced values collide.
fn propagate<I: Iterator<Item = usize>>(
    root: usize,
    pick: u8,
    missing: &[u64],
    at_a: &mut [Option<u8>],
    neighbours: &impl Fn(usize) -> I,
) -> bool {
    at_a[root] = Some(pick);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let va = at_a[x].expect("queued vertices are assigned");
        let vb = (missing[x] & !(1 << va)).trailing_zeros() as u8;
        for y in neighbours(x) {
            if missing[x] & missing[y] == 0 {
                continue;
            }
            // f(y a) must avoid f(x a), and f(y b) must avoid f(x b).
            let forced = pair_of(missing[y]).into_iter().find(|&c| {
                let other = (missing[y] & !(1 << c)).trailing_zeros() as u8;
                c != va && other != vb
            });
            let Some(forced) = forced else {
                return false;
            };
            match at_a[y] {
                Some(v) if v != forced => return false,
                Some(_) => {}
                None => {
                    at_a[y] = Some(forced);
                    queue.push_back(y);
                }
            }
        }
    }
    true
}
