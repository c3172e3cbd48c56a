//! Closed-form lower and upper bounds on the k-limited packing number `L_k(G)`.
//!
//! Everything with a fractional power of a binomial coefficient is evaluated in
//! the log domain. `C(Δ, k)` leaves the range of `u64` around `Δ ≈ 68`, and
//! even below that the `1/k`-th root of a rounded float loses digits.

use std::f64::consts::E;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `C(a, b)` by Pascal's triangle, keeping a single row of length `b + 1`.
/// `C(a, b) = 0` when `b > a`.
pub fn exact_binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as usize;
    let mut row = vec![BigUint::zero(); b + 1];
    row[0] = BigUint::from(1u8);
    for i in 1..=a as usize {
        for j in (1..=b.min(i)).rev() {
            let left = row[j - 1].clone();
            row[j] += left;
        }
    }
    row.swap_remove(b)
}

/// Natural log of `C(a, b)` as a sum of `ln((a - i) / (i + 1))`.
///
/// `C(a, b) = 0` for `b > a`, which has no logarithm: callers must branch on
/// that case first.
pub fn log_binomial(a: u64, b: u64) -> Result<f64> {
    if b > a {
        return Err(Error::LogOfZero { a, b });
    }
    let b = b.min(a - b);
    Ok((0..b)
        .map(|i| ((a - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum())
}

/// Natural log of an exact big-integer value. Panics on zero.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "logarithm of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// The coefficient `k / (C(Δ+1, k+1)^{1/k} (1+k)^{1+1/k})` of the probabilistic
/// lower bound, or `None` unless `Δ ≥ k ≥ 1`.
pub fn probabilistic_lower_coefficient(delta: usize, k: usize) -> Option<f64> {
    if k == 0 || k > delta {
        return None;
    }
    let kf = k as f64;
    let ln_c = log_binomial(delta as u64 + 1, k as u64 + 1).ok()?;
    Some((kf.ln() - ln_c / kf - (1.0 + 1.0 / kf) * (1.0 + kf).ln()).exp())
}

/// Lower bound `k n / (C(Δ+1, k+1)^{1/k} (1+k)^{1+1/k})`; `None` unless `Δ ≥ k ≥ 1`.
pub fn probabilistic_lower_bound(n: usize, delta: usize, k: usize) -> Option<f64> {
    probabilistic_lower_coefficient(delta, k).map(|c| c * n as f64)
}

/// Same bound in the form `k n / ((k+1) (C(Δ, k) (Δ+1))^{1/k})`, with the
/// binomial taken exactly from Pascal's triangle.
pub fn probabilistic_lower_bound_alt(n: usize, delta: usize, k: usize) -> Option<f64> {
    if k == 0 || k > delta {
        return None;
    }
    let kf = k as f64;
    let ln_inner = ln_biguint(&exact_binomial(delta as u64, k as u64)) + (delta as f64 + 1.0).ln();
    Some(kf * n as f64 / ((kf + 1.0) * (ln_inner / kf).exp()))
}

/// Weaker lower bound `k n / (e (1+Δ)^{1+1/k})`; `None` unless `Δ ≥ k ≥ 1`.
pub fn probabilistic_lower_bound_simple(n: usize, delta: usize, k: usize) -> Option<f64> {
    if k == 0 || k > delta {
        return None;
    }
    let kf = k as f64;
    Some(kf * n as f64 / (E * (1.0 + delta as f64).powf(1.0 + 1.0 / kf)))
}

/// `k n / (k+1)`, valid for connected graphs with `δ ≥ k`.
pub fn connected_upper_bound(n: usize, delta_min: usize, k: usize, connected: bool) -> Option<f64> {
    (k >= 1 && connected && delta_min >= k).then(|| k as f64 * n as f64 / (k as f64 + 1.0))
}

/// `k n (ln(δ+1) + 1) / (δ+1)`, from the classical domination bound. Always applicable.
pub fn domination_upper_bound(n: usize, delta_min: usize, k: usize) -> f64 {
    let d1 = delta_min as f64 + 1.0;
    k as f64 * n as f64 * (d1.ln() + 1.0) / d1
}

/// Coefficient `1 - δ' / (C(δ+1, k-1)^{1/δ'} (1+δ')^{1+1/δ'})` with
/// `δ' = δ - k + 1`; `None` unless `δ ≥ k ≥ 1`.
pub fn ktuple_upper_coefficient(delta_min: usize, k: usize) -> Option<f64> {
    if k == 0 || k > delta_min {
        return None;
    }
    let dp = (delta_min - k + 1) as f64;
    let ln_b = log_binomial(delta_min as u64 + 1, k as u64 - 1).ok()?;
    let denom_ln = ln_b / dp + (1.0 + 1.0 / dp) * (1.0 + dp).ln();
    Some(1.0 - (dp.ln() - denom_ln).exp())
}

/// Upper bound through the k-tuple domination number; `None` unless `δ ≥ k ≥ 1`.
pub fn ktuple_upper_bound(n: usize, delta_min: usize, k: usize) -> Option<f64> {
    ktuple_upper_coefficient(delta_min, k).map(|c| c * n as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    /// `None` when the entry is not applicable.
    pub value: Option<f64>,
    pub applicable: bool,
    pub precondition: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub delta_max: usize,
    pub delta_min: usize,
    pub connected: bool,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn applicable(&self, kind: BoundKind) -> impl Iterator<Item = &BoundEntry> {
        self.entries
            .iter()
            .filter(move |e| e.applicable && e.kind == kind)
    }
}

pub mod names {
    pub const PROBABILISTIC_LOWER: &str = "probabilistic_lower";
    pub const PROBABILISTIC_LOWER_SIMPLE: &str = "probabilistic_lower_simple";
    pub const CONNECTED_UPPER: &str = "connected_fraction_upper";
    pub const DOMINATION_UPPER: &str = "domination_upper";
    pub const KTUPLE_FORMULA_UPPER: &str = "ktuple_formula_upper";
    pub const KTUPLE_NUMBER_UPPER: &str = "ktuple_number_upper";
    pub const TRIVIAL_EXACT: &str = "trivial_exact";
}

fn entry(name: &str, kind: BoundKind, value: Option<f64>, precondition: &str) -> BoundEntry {
    BoundEntry {
        name: name.to_string(),
        kind,
        applicable: value.is_some(),
        value,
        precondition: precondition.to_string(),
    }
}

/// Evaluates every bound for `(g, k)`.
pub fn bound_report(g: &Graph, k: usize) -> Result<BoundReport> {
    bound_report_with_ktuple(g, k, None)
}

/// Like [`bound_report`], additionally recording `L_k ≤ γ_{×k}` when the
/// k-tuple domination number is known.
pub fn bound_report_with_ktuple(
    g: &Graph,
    k: usize,
    ktuple_domination: Option<usize>,
) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = g.n();
    let delta_max = g.max_degree()?;
    let delta_min = g.min_degree()?;
    let connected = g.is_connected();

    let mut entries = vec![
        entry(
            names::PROBABILISTIC_LOWER,
            BoundKind::Lower,
            probabilistic_lower_bound(n, delta_max, k),
            "max degree >= k >= 1",
        ),
        entry(
            names::PROBABILISTIC_LOWER_SIMPLE,
            BoundKind::Lower,
            probabilistic_lower_bound_simple(n, delta_max, k),
            "max degree >= k >= 1",
        ),
        entry(
            names::CONNECTED_UPPER,
            BoundKind::Upper,
            connected_upper_bound(n, delta_min, k, connected),
            "connected and min degree >= k",
        ),
        entry(
            names::DOMINATION_UPPER,
            BoundKind::Upper,
            Some(domination_upper_bound(n, delta_min, k)),
            "none",
        ),
        entry(
            names::KTUPLE_FORMULA_UPPER,
            BoundKind::Upper,
            ktuple_upper_bound(n, delta_min, k),
            "min degree >= k",
        ),
    ];
    if let Some(gamma) = ktuple_domination {
        let defined = delta_min + 1 >= k;
        entries.push(entry(
            names::KTUPLE_NUMBER_UPPER,
            BoundKind::Upper,
            defined.then_some(gamma as f64),
            "min degree >= k - 1",
        ));
    }
    entries.push(entry(
        names::TRIVIAL_EXACT,
        BoundKind::Exact,
        (k > delta_max).then_some(n as f64),
        "k >= max degree + 1",
    ));

    Ok(BoundReport {
        n,
        m: g.m(),
        k,
        delta_max,
        delta_min,
        connected,
        entries,
    })
}
