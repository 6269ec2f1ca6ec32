use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::cell_count;
use crate::error::{usage, Error, Result};

/// Symbols are stored as `u8` and candidate sets as `u64` bitmasks.
pub const MAX_ORDER: usize = 64;

/// A point of `Σ^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u8>);

impl Deref for Point {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Point {
    fn from(coords: Vec<u8>) -> Self {
        Point(coords)
    }
}

impl From<&[u8]> for Point {
    fn from(coords: &[u8]) -> Self {
        Point(coords.to_vec())
    }
}

/// The explicit value table of an `n`-ary operation on `{0, .., k-1}`.
///
/// Construction only checks shape and symbol range; whether the table is a
/// latin hypercube is a separate query ([`Hypercube::is_quasigroup`]) so that
/// in-progress tables can be represented too.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypercubeRepr", into = "HypercubeRepr")]
pub struct Hypercube {
    order: usize,
    arity: usize,
    values: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct HypercubeRepr {
    k: usize,
    n: usize,
    values: Vec<u8>,
}

impl TryFrom<HypercubeRepr> for Hypercube {
    type Error = Error;

    fn try_from(repr: HypercubeRepr) -> Result<Self> {
        Hypercube::new(repr.k, repr.n, repr.values)
    }
}

impl From<Hypercube> for HypercubeRepr {
    fn from(h: Hypercube) -> Self {
        HypercubeRepr {
            k: h.order,
            n: h.arity,
            values: h.values,
        }
    }
}

impl Hypercube {
    pub fn new(order: usize, arity: usize, values: Vec<u8>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return usage(format!("order must be in 1..={MAX_ORDER}, got {order}"));
        }
        if arity == 0 {
            return usage("arity must be at least 1");
        }
        let cells = cell_count(order, arity)
            .ok_or_else(|| Error::Usage(format!("{order}^{arity} cells overflow")))?;
        if values.len() != cells {
            return usage(format!(
                "expected {cells} values for k={order}, n={arity}, got {}",
                values.len()
            ));
        }
        if let Some(bad) = values.iter().find(|&&v| v as usize >= order) {
            return usage(format!("symbol {bad} out of range for order {order}"));
        }
        Ok(Hypercube {
            order,
            arity,
            values,
        })
    }

    /// Builds a table by evaluating `f` on every point in layout order.
    pub fn from_fn(order: usize, arity: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self> {
        let cells = cell_count(order, arity)
            .ok_or_else(|| Error::Usage(format!("{order}^{arity} cells overflow")))?;
        let mut values = Vec::with_capacity(cells);
        let mut points = super::Odometer::new(order, arity);
        while let Some(p) = points.next_point() {
            values.push(f(p));
        }
        Hypercube::new(order, arity, values)
    }

    /// Builds a binary table from its rows.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return usage("rows of a binary table must all have length k");
        }
        Hypercube::new(k, 2, rows.concat())
    }

    /// The identity map on `{0, .., k-1}`.
    pub fn identity(order: usize) -> Result<Self> {
        Hypercube::new(order, 1, (0..order as u8).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Distance in the flat layout between neighbours along coordinate `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.order.pow((self.arity - 1 - axis) as u32)
    }

    pub fn index_of(&self, point: &[u8]) -> Result<usize> {
        if point.len() != self.arity {
            return usage(format!(
                "point has {} coordinates, table has arity {}",
                point.len(),
                self.arity
            ));
        }
        let mut idx = 0;
        for &x in point {
            if x as usize >= self.order {
                return usage(format!(
                    "coordinate {x} out of range for order {}",
                    self.order
                ));
            }
            idx = idx * self.order + x as usize;
        }
        Ok(idx)
    }

    pub fn point_of(&self, mut index: usize) -> Point {
        let mut coords = vec![0u8; self.arity];
        for slot in coords.iter_mut().rev() {
            *slot = (index % self.order) as u8;
            index /= self.order;
        }
        Point(coords)
    }

    pub fn get(&self, point: &[u8]) -> Result<u8> {
        Ok(self.values[self.index_of(point)?])
    }

    /// Value at a flat index.
    pub fn at(&self, index: usize) -> u8 {
        self.values[index]
    }

    /// The cells of the line through `index` along `axis`, in coordinate order.
    pub fn line(&self, index: usize, axis: usize) -> impl Iterator<Item = usize> {
        let stride = self.stride(axis);
        let base = index - (index / stride % self.order) * stride;
        (0..self.order).map(move |c| base + c * stride)
    }

    /// Same shape, new values.
    pub(crate) fn with_values(&self, values: Vec<u8>) -> Result<Self> {
        Hypercube::new(self.order, self.arity, values)
    }

    /// True iff every axis-parallel line is a permutation of the symbols.
    pub fn is_quasigroup(&self) -> bool {
        let k = self.order;
        let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        for axis in 0..self.arity {
            let stride = self.stride(axis);
            let block = stride * k;
            for start in (0..self.values.len()).step_by(block) {
                for offset in 0..stride {
                    let mut seen = 0u64;
                    for c in 0..k {
                        seen |= 1u64 << self.values[start + offset + c * stride];
                    }
                    if seen != full {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True iff the table is a quasigroup with identity element 0 in every position.
    pub fn is_loop(&self) -> bool {
        if !self.is_quasigroup() {
            return false;
        }
        (0..self.arity).all(|axis| {
            let stride = self.stride(axis);
            (0..self.order).all(|a| self.values[a * stride] as usize == a)
        })
    }

    /// True iff the binary table satisfies `f(x, x) = x`.
    pub fn is_idempotent(&self) -> Result<bool> {
        if self.arity != 2 {
            return usage(format!("idempotence needs arity 2, got {}", self.arity));
        }
        Ok((0..self.order).all(|x| self.values[x * self.order + x] as usize == x))
    }

    /// True iff the binary table satisfies `f(x, y) = f(y, x)`.
    pub fn is_commutative(&self) -> Result<bool> {
        if self.arity != 2 {
            return usage(format!("commutativity needs arity 2, got {}", self.arity));
        }
        let k = self.order;
        Ok((0..k).all(|x| (0..k).all(|y| self.values[x * k + y] == self.values[y * k + x])))
    }

    /// Rows of a binary table.
    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.values.chunks(self.order)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Debug for Hypercube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hypercube(k={}, n={}, {:?})",
            self.order, self.arity, self.values
        )
    }
}

impl fmt::Display for Hypercube {
    /// Binary tables print as a grid; other arities as a flat list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity == 2 {
            for row in self.rows() {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                writeln!(f, "{}", cells.join(" "))?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.values)
        }
    }
}
