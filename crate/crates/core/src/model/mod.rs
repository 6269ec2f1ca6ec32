//! Value types shared by every other module: points, explicit tables, lazy
//! compositions of binary tables and partial quasigroups.
//!
//! All tables use a row-major layout with the last coordinate varying
//! fastest, so the flat index of `(x_1, .., x_n)` is `sum x_i * k^(n-i)`.

mod composed;
mod hypercube;
mod partial;

pub use composed::{ComposedQuasigroup, Node};
pub use hypercube::{Hypercube, Point, MAX_ORDER};
pub use partial::{Domain, PartialQuasigroup};

/// Default upper bound on the number of cells a table may be materialized with.
pub const DEFAULT_MATERIALIZE_CAP: usize = 1 << 24;

/// `k^n`, or `None` on overflow.
pub fn cell_count(k: usize, n: usize) -> Option<usize> {
    let mut total: usize = 1;
    for _ in 0..n {
        total = total.checked_mul(k)?;
    }
    Some(total)
}

/// Iterates over all points of `Σ^n` in lexicographic order.
pub(crate) struct Odometer {
    k: u8,
    current: Vec<u8>,
    started: bool,
    done: bool,
}

impl Odometer {
    pub(crate) fn new(k: usize, n: usize) -> Self {
        Odometer {
            k: k as u8,
            current: vec![0; n],
            started: false,
            done: k == 0,
        }
    }

    /// Returns the next point, or `None` once every point has been produced.
    pub(crate) fn next_point(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        for i in (0..self.current.len()).rev() {
            self.current[i] += 1;
            if self.current[i] < self.k {
                return Some(&self.current);
            }
            self.current[i] = 0;
        }
        self.done = true;
        None
    }
}
