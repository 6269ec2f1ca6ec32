//! Tables and values transcribed from published data, embedded at build time.
//! The same files live in the repository's `fixtures/` directory.

use num_bigint::BigUint;
use serde::Deserialize;

use crate::model::Hypercube;

pub const PHI4_JSON: &str = include_str!("../../../fixtures/phi4.json");
pub const PSI9_JSON: &str = include_str!("../../../fixtures/psi9.json");
pub const Q4_VALUES_JSON: &str = include_str!("../../../fixtures/q4_values.json");

/// The idempotent binary quasigroup of order 4 used to build the order-9 table.
pub fn phi4() -> Hypercube {
    Hypercube::from_json(PHI4_JSON).expect("embedded phi4 fixture is valid")
}

/// The printed order-9 binary quasigroup derived from [`phi4`].
pub fn psi9() -> Hypercube {
    Hypercube::from_json(PSI9_JSON).expect("embedded psi9 fixture is valid")
}

/// Published numbers of `n`-ary loops and quasigroups of order 4, `n = 1..=8`.
#[derive(Clone, Debug, Deserialize)]
pub struct Q4Values {
    pub loops: Vec<String>,
    pub quasigroups: Vec<String>,
}

impl Q4Values {
    pub fn parse(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn loops_big(&self) -> Vec<BigUint> {
        self.loops
            .iter()
            .map(|s| s.parse().expect("decimal"))
            .collect()
    }

    pub fn quasigroups_big(&self) -> Vec<BigUint> {
        self.quasigroups
            .iter()
            .map(|s| s.parse().expect("decimal"))
            .collect()
    }
}

pub fn q4_values() -> Q4Values {
    Q4Values::parse(Q4_VALUES_JSON).expect("embedded q4 fixture is valid")
}
