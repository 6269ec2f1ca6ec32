//! Exact enumeration of latin hypercubes by depth-first completion.
//!
//! Cells are filled in lexicographic order. For every axis-parallel line the
//! search keeps a bitmask of symbols already placed on it, so the candidates
//! of a cell are the complement of the union of its `n` line masks. Fixed
//! cells (identity lines for loops, the given part of a partial quasigroup)
//! are placed up front and skipped by the search.

mod gamma;

use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;

pub use gamma::{gamma_analysis, GammaReport};

use crate::error::{usage, Error, Result};
use crate::model::{cell_count, Hypercube, PartialQuasigroup, MAX_ORDER};

/// Default cap on `k^n` for full enumeration.
pub const DEFAULT_CELL_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every quasigroup.
    All,
    /// Loops with identity 0: the lines through the origin are pinned.
    Loops,
}

#[derive(Clone, Debug)]
pub struct EnumConfig {
    /// Largest `k^n` the enumerator accepts.
    pub cell_cap: usize,
    /// Worker threads for counting; 1 means sequential.
    pub workers: usize,
    /// Number of free cells assigned before the tree is split across workers.
    pub split_depth: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            cell_cap: DEFAULT_CELL_CAP,
            workers: 1,
            split_depth: 8,
        }
    }
}

/// Static description of a completion problem.
struct Search {
    order: usize,
    arity: usize,
    full: u64,
    /// Per cell, the `arity` indices into the line-mask array.
    slots: Vec<usize>,
    presets: Vec<Option<u8>>,
    /// Cells left to the search, ascending.
    free: Vec<usize>,
}

#[derive(Clone)]
struct State {
    values: Vec<u8>,
    used: Vec<u64>,
}

impl Search {
    fn new(order: usize, arity: usize, presets: Vec<Option<u8>>) -> Result<Self> {
        let total = presets.len();
        let lines = total / order;
        let mut slots = Vec::with_capacity(total * arity);
        for cell in 0..total {
            for axis in 0..arity {
                let stride = order.pow((arity - 1 - axis) as u32);
                let line = cell / (stride * order) * stride + cell % stride;
                slots.push(axis * lines + line);
            }
        }
        let free = (0..total).filter(|&c| presets[c].is_none()).collect();
        let full = if order == 64 {
            u64::MAX
        } else {
            (1u64 << order) - 1
        };
        let search = Search {
            order,
            arity,
            full,
            slots,
            presets,
            free,
        };
        search.initial_state()?;
        Ok(search)
    }

    fn initial_state(&self) -> Result<State> {
        let total = self.presets.len();
        let mut state = State {
            values: vec![0; total],
            used: vec![0; self.arity * (total / self.order)],
        };
        for (cell, v) in self.presets.iter().enumerate() {
            if let Some(v) = *v {
                if self.candidates(&state, cell) & (1 << v) == 0 {
                    return usage("fixed cells repeat a symbol on some line");
                }
                self.assign(&mut state, cell, v);
            }
        }
        Ok(state)
    }

    #[inline]
    fn candidates(&self, state: &State, cell: usize) -> u64 {
        let mut taken = 0;
        for &s in &self.slots[cell * self.arity..(cell + 1) * self.arity] {
            taken |= state.used[s];
        }
        self.full & !taken
    }

    #[inline]
    fn assign(&self, state: &mut State, cell: usize, v: u8) {
        state.values[cell] = v;
        for &s in &self.slots[cell * self.arity..(cell + 1) * self.arity] {
            state.used[s] |= 1 << v;
        }
    }

    #[inline]
    fn unassign(&self, state: &mut State, cell: usize, v: u8) {
        for &s in &self.slots[cell * self.arity..(cell + 1) * self.arity] {
            state.used[s] &= !(1 << v);
        }
    }

    /// Enumerates all consistent assignments of `free[from..to]` on top of
    /// `state`, in lexicographic order, calling `leaf` for each. `state` is
    /// restored before returning.
    fn run(
        &self,
        state: &mut State,
        from: usize,
        to: usize,
        leaf: &mut dyn FnMut(&State) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if from == to {
            return leaf(state);
        }
        let depth_count = to - from;
        let mut cand = vec![0u64; depth_count];
        let mut placed: Vec<Option<u8>> = vec![None; depth_count];
        let mut d = 0;
        cand[0] = self.candidates(state, self.free[from]);
        loop {
            let cell = self.free[from + d];
            if let Some(v) = placed[d].take() {
                self.unassign(state, cell, v);
            }
            if cand[d] == 0 {
                if d == 0 {
                    return ControlFlow::Continue(());
                }
                d -= 1;
                continue;
            }
            let v = cand[d].trailing_zeros() as u8;
            cand[d] &= cand[d] - 1;
            self.assign(state, cell, v);
            placed[d] = Some(v);
            if d + 1 == depth_count {
                if leaf(state).is_break() {
                    // unwind so the caller's state stays intact
                    for (i, p) in placed.iter().enumerate() {
                        if let Some(v) = *p {
                            self.unassign(state, self.free[from + i], v);
                        }
                    }
                    return ControlFlow::Break(());
                }
            } else {
                d += 1;
                cand[d] = self.candidates(state, self.free[from + d]);
            }
        }
    }

    fn count(&self, config: &EnumConfig) -> Result<u64> {
        let len = self.free.len();
        let mut base = self.initial_state()?;
        if config.workers <= 1 || len <= config.split_depth {
            let mut total = 0u64;
            let _ = self.run(&mut base, 0, len, &mut |_| {
                total += 1;
                ControlFlow::Continue(())
            });
            return Ok(total);
        }
        let split = config.split_depth;
        let mut prefixes: Vec<Vec<u8>> = Vec::new();
        let _ = self.run(&mut base, 0, split, &mut |s| {
            prefixes.push(self.free[..split].iter().map(|&c| s.values[c]).collect());
            ControlFlow::Continue(())
        });
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
        let total = pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut state = base.clone();
                    for (&cell, &v) in self.free.iter().zip(prefix) {
                        self.assign(&mut state, cell, v);
                    }
                    let mut sub = 0u64;
                    let _ = self.run(&mut state, split, len, &mut |_| {
                        sub += 1;
                        ControlFlow::Continue(())
                    });
                    sub
                })
                .sum()
        });
        Ok(total)
    }
}

fn check_shape(n: usize, k: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return usage("arity must be at least 1");
    }
    if k == 0 || k > MAX_ORDER {
        return usage(format!("order must be in 1..={MAX_ORDER}, got {k}"));
    }
    match cell_count(k, n) {
        Some(c) if c <= cap => Ok(()),
        _ => Err(Error::Resource {
            what: "enumeration cells",
            needed: (k as u128).saturating_pow(n as u32),
            cap: cap as u128,
        }),
    }
}

fn mode_presets(n: usize, k: usize, mode: Mode) -> Vec<Option<u8>> {
    let total = k.pow(n as u32);
    let mut presets = vec![None; total];
    if mode == Mode::Loops {
        presets[0] = Some(0);
        for axis in 0..n {
            let stride = k.pow((n - 1 - axis) as u32);
            for a in 1..k {
                presets[a * stride] = Some(a as u8);
            }
        }
    }
    presets
}

/// Number of `n`-ary quasigroups (or loops) of order `k`.
pub fn count_quasigroups(n: usize, k: usize, mode: Mode, config: &EnumConfig) -> Result<BigUint> {
    check_shape(n, k, config.cell_cap)?;
    let search = Search::new(k, n, mode_presets(n, k, mode))?;
    Ok(BigUint::from(search.count(config)?))
}

/// Visits every `n`-ary quasigroup (or loop) of order `k` in lexicographic
/// order of the flat table and returns the number visited. Always sequential.
pub fn for_each(
    n: usize,
    k: usize,
    mode: Mode,
    config: &EnumConfig,
    mut visitor: impl FnMut(&Hypercube) -> ControlFlow<()>,
) -> Result<u64> {
    check_shape(n, k, config.cell_cap)?;
    let search = Search::new(k, n, mode_presets(n, k, mode))?;
    let mut state = search.initial_state()?;
    let mut visited = 0u64;
    let flow = search.run(&mut state, 0, search.free.len(), &mut |s| {
        visited += 1;
        let table = Hypercube::new(k, n, s.values.clone()).expect("search fills every cell");
        visitor(&table)
    });
    match flow {
        ControlFlow::Continue(()) => Ok(visited),
        ControlFlow::Break(()) => Err(Error::Aborted { visited }),
    }
}

/// Number of full quasigroups agreeing with `presets` (one entry per cell of
/// `Σ^n`, `None` for free cells).
pub fn count_completions(
    n: usize,
    k: usize,
    presets: Vec<Option<u8>>,
    config: &EnumConfig,
) -> Result<BigUint> {
    check_shape(n, k, config.cell_cap)?;
    if presets.len() != k.pow(n as u32) {
        return usage("one preset entry per cell is required");
    }
    let search = Search::new(k, n, presets)?;
    Ok(BigUint::from(search.count(config)?))
}

/// Number of extensions of a partial quasigroup defined on a box
/// `Σ^{n-1} × (Σ \ {a, b})`, by backtracking over the two missing hyperplanes.
pub fn count_extensions(g: &PartialQuasigroup, config: &EnumConfig) -> Result<BigUint> {
    if g.box_pair().is_none() {
        return usage("extension counting needs a box domain");
    }
    count_completions(g.arity(), g.order(), g.to_cells(), config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cfg() -> EnumConfig {
        EnumConfig::default()
    }

    fn count(n: usize, k: usize, mode: Mode) -> u64 {
        count_quasigroups(n, k, mode, &cfg())
            .unwrap()
            .try_into()
            .unwrap()
    }

    #[test]
    fn small_known_counts() {
        assert_eq!(count(2, 2, Mode::All), 2);
        assert_eq!(count(5, 2, Mode::All), 2);
        assert_eq!(count(1, 4, Mode::All), 24);
        assert_eq!(count(2, 3, Mode::All), 12);
        assert_eq!(count(3, 3, Mode::All), 24);
        assert_eq!(count(4, 3, Mode::All), 48);
        assert_eq!(count(2, 4, Mode::All), 576);
        assert_eq!(count(2, 4, Mode::Loops), 4);
        assert_eq!(count(1, 4, Mode::Loops), 1);
        assert_eq!(count(1, 1, Mode::All), 1);
    }

    #[test]
    fn loops_and_all_agree_with_normalization() {
        // Q(n,k) = k ((k-1)!)^n Q'(n,k)
        for (n, k) in [(2, 3), (3, 3), (2, 4), (3, 4), (2, 5)] {
            let all = count(n, k, Mode::All) as u128;
            let loops = count(n, k, Mode::Loops) as u128;
            let fact: u128 = (1..k as u128).product();
            assert_eq!(all, k as u128 * fact.pow(n as u32) * loops, "n={n} k={k}");
        }
    }

    #[test]
    fn parallel_count_matches_sequential() {
        let par = EnumConfig {
            workers: 4,
            split_depth: 5,
            ..cfg()
        };
        assert_eq!(
            count_quasigroups(3, 4, Mode::All, &par).unwrap(),
            BigUint::from(55296u32)
        );
        assert_eq!(
            count_quasigroups(2, 5, Mode::Loops, &par).unwrap(),
            BigUint::from(56u32)
        );
    }

    #[test]
    fn cell_cap_is_enforced() {
        let tight = EnumConfig {
            cell_cap: 63,
            ..cfg()
        };
        assert!(matches!(
            count_quasigroups(3, 4, Mode::All, &tight),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            count_quasigroups(0, 4, Mode::All, &cfg()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn for_each_is_lexicographic_and_complete() {
        let mut seen = Vec::new();
        let visits = for_each(2, 3, Mode::All, &cfg(), |h| {
            assert!(h.is_quasigroup());
            seen.push(h.values().to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(visits, 12);
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(seen, sorted);

        let visits = for_each(3, 4, Mode::Loops, &cfg(), |h| {
            assert!(h.is_loop());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(visits, 64);
    }

    #[test]
    fn unary_loop_is_the_identity() {
        let mut tables = Vec::new();
        for_each(1, 4, Mode::Loops, &cfg(), |h| {
            tables.push(h.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(tables, vec![Hypercube::identity(4).unwrap()]);
    }

    #[test]
    fn visitor_abort_propagates() {
        let mut n = 0;
        let r = for_each(2, 4, Mode::All, &cfg(), |_| {
            n += 1;
            if n == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(matches!(r, Err(Error::Aborted { visited: 3 })));
    }

    #[test]
    fn extension_counts_on_small_boxes() {
        let z3 = Hypercube::from_fn(3, 2, |p| (p[0] + p[1]) % 3).unwrap();
        let g = PartialQuasigroup::restrict_to_box(&z3, 0, 1).unwrap();
        assert_eq!(count_extensions(&g, &cfg()).unwrap(), BigUint::from(2u32));

        let g = PartialQuasigroup::restrict_to_box(&fixtures::phi4(), 0, 1).unwrap();
        assert_eq!(count_extensions(&g, &cfg()).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn inconsistent_presets_are_rejected() {
        let mut presets = vec![None; 9];
        presets[0] = Some(1);
        presets[1] = Some(1);
        assert!(matches!(
            count_completions(2, 3, presets, &cfg()),
            Err(Error::Usage(_))
        ));
    }
}
