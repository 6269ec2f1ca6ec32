use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{cell_count, Hypercube, Odometer, Point, MAX_ORDER};
use crate::error::{usage, Error, Result};

/// Where a partial quasigroup is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `Σ^{n-1} × (Σ \ {a, b})`: every point whose last coordinate is neither
    /// `a` nor `b`. Values are stored in lexicographic order of the domain.
    Box { excluded: (u8, u8) },
    /// An explicit set of points; values are stored in the same order.
    Points(Vec<Point>),
}

/// Values of an `n`-ary operation on a subset of `Σ^n` such that any two
/// domain points differing in exactly one coordinate get different values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartialRepr", into = "PartialRepr")]
pub struct PartialQuasigroup {
    order: usize,
    arity: usize,
    domain: Domain,
    values: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
enum DomainRepr {
    #[serde(rename = "box")]
    Box([u8; 2]),
    #[serde(rename = "points")]
    Points(Vec<Point>),
}

#[derive(Serialize, Deserialize)]
struct PartialRepr {
    k: usize,
    n: usize,
    domain: DomainRepr,
    values: Vec<u8>,
}

impl TryFrom<PartialRepr> for PartialQuasigroup {
    type Error = Error;

    fn try_from(repr: PartialRepr) -> Result<Self> {
        let domain = match repr.domain {
            DomainRepr::Box([a, b]) => Domain::Box { excluded: (a, b) },
            DomainRepr::Points(points) => Domain::Points(points),
        };
        PartialQuasigroup::new(repr.k, repr.n, domain, repr.values)
    }
}

impl From<PartialQuasigroup> for PartialRepr {
    fn from(g: PartialQuasigroup) -> Self {
        let domain = match g.domain {
            Domain::Box { excluded: (a, b) } => DomainRepr::Box([a, b]),
            Domain::Points(points) => DomainRepr::Points(points),
        };
        PartialRepr {
            k: g.order,
            n: g.arity,
            domain,
            values: g.values,
        }
    }
}

impl PartialQuasigroup {
    pub fn new(order: usize, arity: usize, domain: Domain, values: Vec<u8>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER || arity == 0 {
            return usage(format!("bad shape k={order}, n={arity}"));
        }
        let cells = cell_count(order, arity)
            .ok_or_else(|| Error::Usage(format!("{order}^{arity} cells overflow")))?;
        match &domain {
            Domain::Box { excluded: (a, b) } => {
                if a == b || *a as usize >= order || *b as usize >= order {
                    return usage(format!(
                        "excluded pair {{{a}, {b}}} is not two distinct symbols"
                    ));
                }
                if order < 3 {
                    return usage("box domains need k >= 3");
                }
            }
            Domain::Points(points) => {
                let mut seen = HashSet::new();
                for p in points {
                    if p.len() != arity || p.iter().any(|&x| x as usize >= order) {
                        return usage(format!(
                            "domain point {:?} does not fit k={order}, n={arity}",
                            p.0
                        ));
                    }
                    if !seen.insert(p) {
                        return usage(format!("domain point {:?} repeated", p.0));
                    }
                }
            }
        }
        let g = PartialQuasigroup {
            order,
            arity,
            domain,
            values,
        };
        let domain_len = match &g.domain {
            Domain::Box { .. } => cells / order * (order - 2),
            Domain::Points(p) => p.len(),
        };
        if g.values.len() != domain_len {
            return usage(format!(
                "domain has {domain_len} points but {} values were given",
                g.values.len()
            ));
        }
        if let Some(bad) = g.values.iter().find(|&&v| v as usize >= order) {
            return usage(format!("symbol {bad} out of range for order {order}"));
        }
        g.check_consistent()?;
        Ok(g)
    }

    /// Restricts a full table to the box domain `Σ^{n-1} × (Σ \ {a, b})`.
    pub fn restrict_to_box(f: &Hypercube, a: u8, b: u8) -> Result<Self> {
        let values = f
            .values()
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let last = (i % f.order()) as u8;
                last != a && last != b
            })
            .map(|(_, &v)| v)
            .collect();
        PartialQuasigroup::new(
            f.order(),
            f.arity(),
            Domain::Box { excluded: (a, b) },
            values,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// The excluded pair when the domain is a box.
    pub fn box_pair(&self) -> Option<(u8, u8)> {
        match self.domain {
            Domain::Box { excluded } => Some(excluded),
            Domain::Points(_) => None,
        }
    }

    /// One entry per cell of `Σ^n`: the given value, or `None` off the domain.
    pub fn to_cells(&self) -> Vec<Option<u8>> {
        let k = self.order;
        let total = k.pow(self.arity as u32);
        let mut cells = vec![None; total];
        match &self.domain {
            Domain::Box { excluded: (a, b) } => {
                let mut values = self.values.iter();
                for (i, slot) in cells.iter_mut().enumerate() {
                    let last = (i % k) as u8;
                    if last != *a && last != *b {
                        *slot = values.next().copied();
                    }
                }
            }
            Domain::Points(points) => {
                for (p, &v) in points.iter().zip(&self.values) {
                    let idx = p.iter().fold(0, |acc, &x| acc * k + x as usize);
                    cells[idx] = Some(v);
                }
            }
        }
        cells
    }

    /// Domain points with their values, in storage order.
    pub fn entries(&self) -> Vec<(Point, u8)> {
        match &self.domain {
            Domain::Points(points) => points
                .iter()
                .cloned()
                .zip(self.values.iter().copied())
                .collect(),
            Domain::Box { .. } => {
                let cells = self.to_cells();
                let mut out = Vec::with_capacity(self.values.len());
                let mut points = Odometer::new(self.order, self.arity);
                let mut i = 0;
                while let Some(p) = points.next_point() {
                    if let Some(v) = cells[i] {
                        out.push((Point::from(p), v));
                    }
                    i += 1;
                }
                out
            }
        }
    }

    /// True iff `f` agrees with this partial quasigroup on its domain.
    pub fn is_extended_by(&self, f: &Hypercube) -> bool {
        f.order() == self.order
            && f.arity() == self.arity
            && self
                .to_cells()
                .iter()
                .zip(f.values())
                .all(|(g, &v)| g.is_none_or(|g| g == v))
    }

    fn check_consistent(&self) -> Result<()> {
        let k = self.order;
        let cells = self.to_cells();
        for axis in 0..self.arity {
            let stride = k.pow((self.arity - 1 - axis) as u32);
            for start in (0..cells.len()).step_by(stride * k) {
                for offset in 0..stride {
                    let mut seen = 0u64;
                    for c in 0..k {
                        if let Some(v) = cells[start + offset + c * stride] {
                            if seen & (1 << v) != 0 {
                                return usage(format!(
                                    "value {v} repeats on a line along coordinate {axis}"
                                ));
                            }
                            seen |= 1 << v;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
