//! Brute-force checks on the truncated deterministic model, where an integer
//! input `x` with `n` bits is received as `⌊h·x⌋` for a gain `h ∈ [1, 2)`.
//!
//! Gains are dyadic, `h = p / 2^k`, so `⌊h·x⌋ = (p·x) >> k` is exact.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest bit width the oracles enumerate.
pub const MAX_ORACLE_WIDTH: u32 = 16;

/// A dyadic rational `p / 2^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dyadic {
    p: u64,
    k: u32,
}

impl Dyadic {
    /// Gain `p / 2^k`, which must lie in `[1, 2)`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k > 32 || p < 1u64 << k || p >= 2u64 << k {
            return Err(Error::InvalidParameter(format!("{p}/2^{k} is not in [1, 2)")));
        }
        Ok(Dyadic { p, k })
    }

    /// Gain `p / denom` for a power-of-two `denom`.
    pub fn with_denominator(p: u64, denom: u64) -> Result<Self> {
        if !denom.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("denominator {denom} is not a power of two")));
        }
        Self::new(p, denom.trailing_zeros())
    }

    pub fn one() -> Self {
        Dyadic { p: 1, k: 0 }
    }

    /// `⌊h·x⌋`.
    pub fn floor_mul(&self, x: u64) -> u64 {
        ((u128::from(self.p) * u128::from(x)) >> self.k) as u64
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / (1u64 << self.k) as f64
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, 1u64 << self.k)
    }
}

/// All received values `⌊h·x⌋` for `x < 2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSignal {
    pub n: u32,
    pub h: Dyadic,
    pub values: Vec<u64>,
}

impl TruncatedSignal {
    pub fn new(n: u32, h: Dyadic) -> Result<Self> {
        check_width(n)?;
        Ok(TruncatedSignal {
            n,
            h,
            values: (0..1u64 << n).map(|x| h.floor_mul(x)).collect(),
        })
    }

    /// Number of distinct received values.
    pub fn support_size(&self) -> usize {
        distinct(self.values.clone())
    }
}

fn check_width(n: u32) -> Result<()> {
    if n == 0 || n > MAX_ORACLE_WIDTH {
        return Err(Error::InvalidParameter(format!(
            "width {n} must be in 1..={MAX_ORACLE_WIDTH}"
        )));
    }
    Ok(())
}

fn distinct(mut v: Vec<u64>) -> usize {
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// True iff `x ↦ ⌊h·x⌋` takes `2^n` distinct values on `n`-bit inputs.
pub fn lemma2_oracle(n: u32, h: Dyadic) -> Result<bool> {
    Ok(TruncatedSignal::new(n, h)?.support_size() == 1 << n)
}

/// True iff splitting an `n`-bit input into its top `m` bits and bottom
/// `n - m` bits, scaling each part by `h` separately and adding, still gives
/// `2^n` distinct values.
pub fn lemma3_oracle(n: u32, m: u32, h: Dyadic) -> Result<bool> {
    check_width(n)?;
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!("need 0 < m < n, got m = {m}, n = {n}")));
    }
    let low = n - m;
    let tops: Vec<u64> = (0..1u64 << m).map(|a| h.floor_mul(a << low)).collect();
    let bottoms: Vec<u64> = (0..1u64 << low).map(|b| h.floor_mul(b)).collect();
    let sums = tops
        .iter()
        .flat_map(|&t| bottoms.iter().map(move |&b| t + b))
        .collect();
    Ok(distinct(sums) == 1 << n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaFailure {
    /// 2 or 3.
    pub lemma: u8,
    pub n: u32,
    pub m: Option<u32>,
    pub h: Dyadic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSummary {
    pub max_n: u32,
    pub denominator: u64,
    pub checks: u32,
    pub failures: Vec<LemmaFailure>,
}

impl LemmaSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs both oracles for every `n <= max_n`, `0 < m < n` and every gain
/// `p / denominator` in `[1, 2)`.
pub fn lemma_sweep(max_n: u32, denominator: u64) -> Result<LemmaSummary> {
    check_width(max_n)?;
    let gains = (denominator..2 * denominator)
        .map(|p| Dyadic::with_denominator(p, denominator))
        .collect::<Result<Vec<_>>>()?;
    let mut cases = Vec::new();
    for &h in &gains {
        for n in 1..=max_n {
            cases.push((n, None, h));
            cases.extend((1..n).map(|m| (n, Some(m), h)));
        }
    }
    let results: Vec<(LemmaFailure, bool)> = cases
        .into_par_iter()
        .map(|(n, m, h)| {
            let ok = match m {
                None => lemma2_oracle(n, h),
                Some(m) => lemma3_oracle(n, m, h),
            }
            .expect("parameters in range");
            let lemma = if m.is_some() { 3 } else { 2 };
            (LemmaFailure { lemma, n, m, h }, ok)
        })
        .collect();
    Ok(LemmaSummary {
        max_n,
        denominator,
        checks: results.len() as u32,
        failures: results.into_iter().filter(|(_, ok)| !ok).map(|(f, _)| f).collect(),
    })
}
