use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use super::reduction::{binary_loop_name, root_classification, RootClass};
use super::semilinear::{a_semilinear_unchecked, classify_unchecked};
use crate::enumerate::{for_each, EnumConfig, Mode};
use crate::error::{usage, Error, Result};

/// Root-class tallies restricted to the `a`-semilinear loops.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PerA {
    pub a: u8,
    #[serde(with = "crate::decimal::count")]
    pub total: u64,
    /// Keyed by the name of the binary root loop.
    #[serde(with = "crate::decimal::count_map")]
    pub binary_root: BTreeMap<String, u64>,
    #[serde(with = "crate::decimal::count")]
    pub higher_root: u64,
    #[serde(with = "crate::decimal::count")]
    pub irreducible: u64,
}

/// Tallies over all `n`-ary loops of order 4.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    #[serde(with = "crate::decimal::count")]
    pub total: u64,
    #[serde(with = "crate::decimal::count")]
    pub semilinear: u64,
    /// Index `a - 1`.
    #[serde(with = "crate::decimal::count_array")]
    pub a_semilinear: [u64; 3],
    #[serde(with = "crate::decimal::count")]
    pub linear: u64,
    #[serde(with = "crate::decimal::count")]
    pub reducible: u64,
    /// Keyed by the name of the binary root loop (`Z2xZ2`, `Z4/1`, ...).
    #[serde(with = "crate::decimal::count_map")]
    pub binary_root: BTreeMap<String, u64>,
    #[serde(with = "crate::decimal::count")]
    pub higher_root: u64,
    #[serde(with = "crate::decimal::count")]
    pub irreducible: u64,
    /// Loops that are neither reducible nor semilinear.
    #[serde(with = "crate::decimal::count")]
    pub violating: u64,
    pub per_a: Vec<PerA>,
}

impl CensusRecord {
    pub fn binary_root_total(&self) -> u64 {
        self.binary_root.values().sum()
    }
}

/// Classifies every `n`-ary loop of order 4, `n ∈ {3, 4}`, streaming them
/// from the enumerator.
pub fn census(n: usize) -> Result<CensusRecord> {
    if !(3..=4).contains(&n) {
        return usage(format!("census is available for n = 3 and n = 4, got {n}"));
    }
    let mut rec = CensusRecord {
        n,
        per_a: (1..=3)
            .map(|a| PerA {
                a,
                ..PerA::default()
            })
            .collect(),
        ..CensusRecord::default()
    };
    let mut failure: Option<Error> = None;
    let visit = for_each(n, 4, Mode::Loops, &EnumConfig::default(), |f| {
        let class = classify_unchecked(f);
        let root = match root_classification(f) {
            Ok(r) => r,
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        };
        let name = match &root {
            RootClass::BinaryRoot { op, .. } => match binary_loop_name(op) {
                Some(name) => Some(name),
                None => {
                    failure = Some(Error::Invariant(
                        "binary root is not a loop of order 4".into(),
                    ));
                    return ControlFlow::Break(());
                }
            },
            _ => None,
        };
        rec.total += 1;
        rec.semilinear += class.is_semilinear() as u64;
        rec.linear += class.linear as u64;
        for (i, &flag) in class.flags.iter().enumerate() {
            rec.a_semilinear[i] += flag as u64;
        }
        let tally =
            |binary: &mut BTreeMap<String, u64>, higher: &mut u64, irred: &mut u64| match &name {
                Some(name) => *binary.entry(name.clone()).or_default() += 1,
                None if root == RootClass::HigherRoot => *higher += 1,
                None => *irred += 1,
            };
        tally(
            &mut rec.binary_root,
            &mut rec.higher_root,
            &mut rec.irreducible,
        );
        for (i, per) in rec.per_a.iter_mut().enumerate() {
            if class.flags[i] {
                per.total += 1;
                tally(
                    &mut per.binary_root,
                    &mut per.higher_root,
                    &mut per.irreducible,
                );
            }
        }
        if root == RootClass::Irreducible && !class.is_semilinear() {
            rec.violating += 1;
        }
        ControlFlow::Continue(())
    });
    match (visit, failure) {
        (_, Some(e)) => Err(e),
        (Err(e), None) => Err(e),
        (Ok(_), None) => {
            rec.reducible = rec.binary_root_total() + rec.higher_root;
            Ok(rec)
        }
    }
}

/// Number of `a`-semilinear `n`-ary loops of order 4 for `a = 1, 2, 3`.
pub fn semilinear_counts(n: usize) -> Result<[u64; 3]> {
    if !(1..=4).contains(&n) {
        return usage(format!(
            "semilinear counts are available for n = 1..4, got {n}"
        ));
    }
    let mut counts = [0u64; 3];
    for_each(n, 4, Mode::Loops, &EnumConfig::default(), |f| {
        for a in 1..=3u8 {
            counts[a as usize - 1] += a_semilinear_unchecked(f, a) as u64;
        }
        ControlFlow::Continue(())
    })?;
    Ok(counts)
}
