//! Closed-form bounds on the number of quasigroups and on trade numbers.
//!
//! Real-valued quantities are `f64`. Comparisons against exact counts go
//! through [`Log2Interval`], which widens every floating value outward so a
//! passing comparison cannot be an artifact of rounding.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::census4::q4_recurrence;
use crate::constructions::{big_psi, interleaved_group};
use crate::error::{usage, Result};
use crate::trades::{disjoint_family, Strategy};
use crate::Hypercube;

/// Binary digits carried by the `f64` bound evaluations.
pub const FLOAT_PRECISION_BITS: u32 = f64::MANTISSA_DIGITS;

/// Relative slack applied when widening floating values.
const SLACK: f64 = 1e-12;

/// A closed interval known to contain a base-2 logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Log2Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Log2Interval {
    /// Widens a computed value by the relative slack.
    pub fn around(x: f64) -> Self {
        let pad = SLACK * x.abs().max(1.0);
        Log2Interval {
            lo: x - pad,
            hi: x + pad,
        }
    }

    pub fn exact(x: f64) -> Self {
        Log2Interval { lo: x, hi: x }
    }

    /// `log2(x)` for a positive integer.
    pub fn of_count(x: &BigUint) -> Result<Self> {
        if x.is_zero() {
            return usage("log2 of zero");
        }
        let bits = x.bits();
        // keep 60 leading bits; the truncated tail moves the value by < 2^-59
        let shift = bits.saturating_sub(60);
        let top = (x >> shift).to_u64().expect("at most 60 bits") as f64;
        let mut iv = Log2Interval::around(top.log2() + shift as f64);
        if shift > 0 {
            iv.hi += 1e-15;
        }
        Ok(iv)
    }

    /// True iff every point of `self` is at most every point of `other`.
    pub fn certainly_le(&self, other: &Log2Interval) -> bool {
        self.hi <= other.lo
    }
}

/// `c_k = log2(k!)/(k-2) + k/(k-4)` for `k >= 5`.
pub fn c_k(k: usize) -> Result<f64> {
    if k < 5 {
        return usage(format!("c_k needs k >= 5, got {k}"));
    }
    let log_fact: f64 = (2..=k).map(|i| (i as f64).log2()).sum();
    Ok(log_fact / (k - 2) as f64 + k as f64 / (k - 4) as f64)
}

/// Upper bound `c_k (k-2)^n` on `log2 Q(n, k)`.
pub fn upper_bound_log2(n: usize, k: usize) -> Result<f64> {
    if n < 2 {
        return usage(format!("the upper bound needs n >= 2, got {n}"));
    }
    Ok(c_k(k)? * ((k - 2) as f64).powi(n as i32))
}

/// Exponent `((k-3)/2)^⌊(n-1)/2⌋ ((k-1)/2)^⌈(n+1)/2⌉` of the lower bound
/// `Q(n, k) >= 2^exponent`, for odd `k >= 5`.
pub fn lower_bound_log2(n: usize, k: usize) -> Result<BigUint> {
    if k < 5 || k.is_multiple_of(2) {
        return usage(format!("the lower bound needs odd k >= 5, got {k}"));
    }
    if n < 2 {
        return usage(format!("the lower bound needs n >= 2, got {n}"));
    }
    let small = BigUint::from((k - 3) / 2).pow(((n - 1) / 2) as u32);
    let large = BigUint::from((k - 1) / 2).pow(((n + 2) / 2) as u32);
    Ok(small * large)
}

/// Constructive and closed-form bounds on the trade number `Trd(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TradeBounds {
    /// Size of a disjoint component family in the witness table.
    #[serde(with = "crate::decimal")]
    pub lower: BigUint,
    /// `⌊k^n / 2^n⌋`.
    #[serde(with = "crate::decimal")]
    pub upper: BigUint,
    /// Which table the lower bound was read from.
    pub witness: String,
    /// True when the witness family comes from a construction with a proven
    /// size; false for the cyclic fallback used at `k ∈ {3, 5}`.
    pub proven: bool,
}

pub fn trade_upper(n: usize, k: usize) -> BigUint {
    BigUint::from(k).pow(n as u32) >> n
}

fn cyclic_sum(n: usize, k: usize) -> Result<Hypercube> {
    Hypercube::from_fn(k, n, |p| {
        (p.iter().map(|&x| x as usize).sum::<usize>() % k) as u8
    })
}

/// Witness table for [`trade_bounds`] and the strategy used on it.
fn trade_witness(n: usize, k: usize, cap: usize) -> Result<(Hypercube, Strategy, String, bool)> {
    if k.is_multiple_of(2) {
        Ok((
            interleaved_group(n, k, cap)?,
            Strategy::PairPartition,
            "interleaved_group".into(),
            true,
        ))
    } else if k >= 7 {
        let m = (k - 1) / 2;
        Ok((
            big_psi(n, m)?.materialize(cap)?,
            Strategy::PairPartition,
            "big_psi".into(),
            true,
        ))
    } else {
        Ok((
            cyclic_sum(n, k)?,
            Strategy::Greedy,
            "cyclic_sum".into(),
            false,
        ))
    }
}

/// Trade-number bounds for `k >= 3`; the witness table is materialized
/// subject to `cap` cells.
pub fn trade_bounds(n: usize, k: usize, cap: usize) -> Result<TradeBounds> {
    if k < 3 {
        return usage(format!("trade bounds need k >= 3, got {k}"));
    }
    if n < 1 {
        return usage("trade bounds need n >= 1");
    }
    let (table, strategy, witness, proven) = trade_witness(n, k, cap)?;
    let family = disjoint_family(&table, strategy)?;
    Ok(TradeBounds {
        lower: BigUint::from(family.components.len()),
        upper: trade_upper(n, k),
        witness,
        proven,
    })
}

/// One step of the arity recursion `Q(n+1,k) <= Q(n,k)^(k-2) 2^((k/2)^n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainStep {
    pub n: usize,
    /// Enclosure of the `log2` of the bound.
    pub log2: Log2Interval,
    /// The bound itself when it is an integer (even `k`).
    #[serde(with = "crate::decimal::option")]
    pub exact: Option<BigUint>,
}

/// Bounds on `Q(n, k)` for `n = n_from+1 ..= n_to`, starting from
/// `base = Q(n_from, k)`.
pub fn chain_bound(n_from: usize, n_to: usize, k: usize, base: &BigUint) -> Result<Vec<ChainStep>> {
    if k < 3 {
        return usage(format!("the chain bound needs k >= 3, got {k}"));
    }
    if n_from < 1 || n_to < n_from {
        return usage(format!("bad arity range {n_from}..{n_to}"));
    }
    let mut log2 = Log2Interval::of_count(base)?;
    let mut exact = k.is_multiple_of(2).then(|| base.clone());
    let mut steps = Vec::with_capacity(n_to - n_from);
    for n in n_from..n_to {
        let gain = (k as f64 / 2.0).powi(n as i32);
        let gain = Log2Interval::around(gain);
        let mul = (k - 2) as f64;
        log2 = Log2Interval {
            lo: Log2Interval::around(mul * log2.lo + gain.lo).lo,
            hi: Log2Interval::around(mul * log2.hi + gain.hi).hi,
        };
        exact = exact.map(|q| {
            let e = BigUint::from(k / 2).pow(n as u32);
            q.pow((k - 2) as u32) << e.to_u64().expect("exponent fits u64")
        });
        steps.push(ChainStep {
            n: n + 1,
            log2,
            exact: exact.clone(),
        });
    }
    Ok(steps)
}

/// `Q(n, 4) / (3^(n+1) 2^(2^n + 1))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticRatio {
    pub n: usize,
    /// Reduced fraction `p/q`.
    pub exact: String,
    pub approx: f64,
    #[serde(skip)]
    pub ratio: BigRational,
}

pub fn q4_asymptotic_ratio(n: usize) -> Result<AsymptoticRatio> {
    if n < 1 {
        return usage("the ratio needs n >= 1");
    }
    let rows = q4_recurrence(n)?;
    let q = BigInt::from(rows[n - 1].q.clone());
    let denom = BigInt::from(3u32).pow(n as u32 + 1) * (BigInt::one() << ((1usize << n) + 1));
    let ratio = BigRational::new(q, denom);
    Ok(AsymptoticRatio {
        n,
        exact: ratio.to_string(),
        approx: ratio.to_f64().unwrap_or(f64::NAN),
        ratio,
    })
}

/// Every bound available for a single `(n, k)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    pub precision_bits: u32,
    pub c_k: Option<f64>,
    pub upper_log2: Option<f64>,
    #[serde(with = "crate::decimal::option")]
    pub lower_log2_exponent: Option<BigUint>,
    #[serde(with = "crate::decimal")]
    pub trd_upper: BigUint,
    #[serde(with = "crate::decimal::option")]
    pub trd_lower: Option<BigUint>,
    pub trd_witness: Option<String>,
    pub trd_proven: bool,
}

impl BoundsReport {
    pub const CSV_HEADER: &'static str =
        "n,k,c_k,upper_log2,lower_log2_exponent,trd_upper,trd_lower,trd_witness,trd_proven";

    pub fn csv_line(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            opt(&self.c_k),
            opt(&self.upper_log2),
            opt(&self.lower_log2_exponent),
            self.trd_upper,
            opt(&self.trd_lower),
            opt(&self.trd_witness),
            self.trd_proven
        )
    }
}

/// Collects the bounds that apply to `(n, k)`; inapplicable entries are
/// `None`. A witness table larger than `cap` cells leaves `trd_lower` empty.
pub fn bounds_report(n: usize, k: usize, cap: usize) -> Result<BoundsReport> {
    if k < 3 || n < 2 {
        return usage(format!("bounds need n >= 2 and k >= 3, got n={n} k={k}"));
    }
    let trade = match trade_bounds(n, k, cap) {
        Ok(t) => Some(t),
        Err(crate::Error::Resource { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundsReport {
        n,
        k,
        precision_bits: FLOAT_PRECISION_BITS,
        c_k: c_k(k).ok(),
        upper_log2: upper_bound_log2(n, k).ok(),
        lower_log2_exponent: lower_bound_log2(n, k).ok(),
        trd_upper: trade_upper(n, k),
        trd_lower: trade.as_ref().map(|t| t.lower.clone()),
        trd_witness: trade.as_ref().map(|t| t.witness.clone()),
        trd_proven: trade.is_some_and(|t| t.proven),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DEFAULT_MATERIALIZE_CAP;

    #[test]
    fn c5_and_upper() {
        assert!((c_k(5).unwrap() - 7.3023).abs() < 1e-4);
        assert!((upper_bound_log2(2, 5).unwrap() - 65.72).abs() < 0.01);
        assert!(upper_bound_log2(2, 4).is_err());
        assert!(upper_bound_log2(3, 5).unwrap() > upper_bound_log2(2, 5).unwrap());
    }

    #[test]
    fn lower_exponents() {
        assert_eq!(lower_bound_log2(2, 7).unwrap(), BigUint::from(9u32));
        assert_eq!(lower_bound_log2(4, 7).unwrap(), BigUint::from(54u32));
        assert_eq!(lower_bound_log2(2, 5).unwrap(), BigUint::from(4u32));
        assert!(lower_bound_log2(2, 6).is_err());
        assert!(lower_bound_log2(2, 3).is_err());
    }

    #[test]
    fn trade_bound_examples() {
        let cap = DEFAULT_MATERIALIZE_CAP;
        let t = trade_bounds(2, 4, cap).unwrap();
        assert_eq!((t.lower, t.upper), (4u32.into(), 4u32.into()));
        let t = trade_bounds(3, 6, cap).unwrap();
        assert_eq!((t.lower, t.upper), (27u32.into(), 27u32.into()));
        let t = trade_bounds(2, 7, cap).unwrap();
        assert_eq!((t.lower, t.upper), (9u32.into(), 12u32.into()));
        assert!(t.proven);
        let t = trade_bounds(2, 5, cap).unwrap();
        assert!(!t.proven);
        assert!(t.lower <= t.upper);
    }

    #[test]
    fn chain_examples() {
        let steps = chain_bound(2, 3, 4, &BigUint::from(576u32)).unwrap();
        assert_eq!(steps[0].exact, Some(BigUint::from(5308416u32)));
        let steps = chain_bound(2, 3, 5, &BigUint::from(161280u32)).unwrap();
        let expected = 3.0 * 161280f64.log2() + 6.25;
        assert!(steps[0].log2.lo <= expected && expected <= steps[0].log2.hi);
        assert!(steps[0].exact.is_none());
        let steps = chain_bound(2, 3, 3, &BigUint::from(12u32)).unwrap();
        let q33 = Log2Interval::of_count(&BigUint::from(24u32)).unwrap();
        assert!(q33.certainly_le(&steps[0].log2));
    }

    #[test]
    fn count_log2_is_tight() {
        let iv = Log2Interval::of_count(&BigUint::from(1024u32)).unwrap();
        assert!(iv.lo <= 10.0 && 10.0 <= iv.hi);
        let huge = BigUint::one() << 300usize;
        let iv = Log2Interval::of_count(&(huge + 1u32)).unwrap();
        assert!(iv.lo <= 300.0 + 1e-12 && 300.0 <= iv.hi);
        assert!(Log2Interval::of_count(&BigUint::zero()).is_err());
    }

    #[test]
    fn asymptotic_ratio() {
        let r3 = q4_asymptotic_ratio(3).unwrap();
        assert_eq!(r3.exact, "4/3");
        // 24 / (9 · 2^3)
        assert_eq!(q4_asymptotic_ratio(1).unwrap().exact, "1/3");
        assert!((q4_asymptotic_ratio(8).unwrap().approx - 1.0).abs() <= 0.01);
    }

    #[test]
    fn report_fields() {
        let r = bounds_report(2, 7, DEFAULT_MATERIALIZE_CAP).unwrap();
        assert_eq!(r.lower_log2_exponent, Some(9u32.into()));
        assert_eq!(r.trd_lower, Some(9u32.into()));
        let r = bounds_report(2, 4, DEFAULT_MATERIALIZE_CAP).unwrap();
        assert!(r.c_k.is_none() && r.lower_log2_exponent.is_none());
        assert_eq!(r.csv_line().split(',').count(), 9);
    }
}
