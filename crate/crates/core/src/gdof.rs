//! Gaussian channels: layered power partition, per-level decoding rates,
//! achievable secrecy rates and their secure generalized degrees of freedom.
//!
//! The channel is parametrized by `SNR1` and exponents `β1`, `β2` with
//! `SNR2 = SNR1^β1` and `SNR_E = SNR1^β2`. Every rate term has the form
//! `½·x·log2 SNR1 - c` for an exponent `x`, so the achievable rates are built
//! from exponent bookkeeping in exact rationals ([`Exponents`]). Finite-SNR
//! rates multiply the exponents by `½·log2 SNR1` and subtract the per-level
//! penalties; the normalized curves keep only the exponents.
//!
//! Exponents are measured on the scale of user 1, i.e. the gains behave like
//! the bit-levels `(1, β1, β2)`. For `β1 > 1` the user with the larger SNR is
//! user 2 and the level grid is anchored on it.

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bounds::{bound_gains, Gains};
use crate::error::{Error, Result};
use crate::ldm::LdParams;
use crate::schemes::Model;

/// Closest rational with a small denominator, used to read exponents given as
/// floats. Returns `None` for non-finite input.
pub fn rational_from_f64(x: f64) -> Option<Rational64> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let tol = 1e-12 * x.abs().max(1.0);
    // continued fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > 1_000_000_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            break;
        }
        let frac = rest - a;
        if frac.abs() < 1e-300 {
            break;
        }
        rest = 1.0 / frac;
    }
    (k1 != 0).then(|| Rational64::new(h1, k1))
}

fn to_f64(x: Rational64) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Gaussian channel parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrParams {
    snr1: f64,
    beta1: Rational64,
    beta2: Rational64,
}

impl SnrParams {
    /// `snr1` is linear. The exponents are read as exact rationals (closest
    /// fraction within `1e-12`).
    pub fn new(snr1: f64, beta1: f64, beta2: f64) -> Result<Self> {
        let conv = |name: &str, b: f64| {
            rational_from_f64(b)
                .ok_or_else(|| Error::InvalidParameter(format!("{name} = {b} is not a finite number")))
        };
        Self::with_exponents(snr1, conv("beta1", beta1)?, conv("beta2", beta2)?)
    }

    pub fn with_exponents(snr1: f64, beta1: Rational64, beta2: Rational64) -> Result<Self> {
        if !snr1.is_finite() || snr1 <= 1.0 {
            return Err(Error::InvalidParameter(format!("snr1 must be finite and > 1, got {snr1}")));
        }
        if beta1 < Rational64::zero() || beta2 < Rational64::zero() {
            return Err(Error::InvalidParameter("beta1 and beta2 must be >= 0".into()));
        }
        Ok(SnrParams { snr1, beta1, beta2 })
    }

    pub fn from_db(snr1_db: f64, beta1: f64, beta2: f64) -> Result<Self> {
        Self::new(10f64.powf(snr1_db / 10.0), beta1, beta2)
    }

    /// Gaussian counterpart of a bit-level triple: `SNR1 = 2^(2 n1)`,
    /// `β1 = n2/n1`, `β2 = nE/n1`.
    pub fn from_ld(params: &LdParams) -> Result<Self> {
        if params.n1 == 0 {
            return Err(Error::InvalidParameter("n1 must be positive".into()));
        }
        let n1 = i64::from(params.n1);
        Self::with_exponents(
            2f64.powi(2 * params.n1 as i32),
            Rational64::new(i64::from(params.n2), n1),
            Rational64::new(i64::from(params.ne), n1),
        )
    }

    pub fn snr1(&self) -> f64 {
        self.snr1
    }

    pub fn beta1(&self) -> Rational64 {
        self.beta1
    }

    pub fn beta2(&self) -> Rational64 {
        self.beta2
    }

    pub fn log2_snr1(&self) -> f64 {
        self.snr1.log2()
    }

    /// `SNR1^x`, computed through the exponent to stay accurate at high SNR.
    pub fn power(&self, x: f64) -> f64 {
        (x * self.log2_snr1()).exp2()
    }

    pub fn snr2(&self) -> f64 {
        self.power(to_f64(self.beta1))
    }

    pub fn snr_e(&self) -> f64 {
        self.power(to_f64(self.beta2))
    }

    /// Power-to-noise ratio of the common part at `Y1`.
    pub fn snr_c(&self) -> f64 {
        self.snr1 - self.power(to_f64(self.beta1 - self.beta2)).max(1.0)
    }

    /// Power-to-noise ratio of the private part at `Y1`.
    pub fn snr_p(&self) -> f64 {
        self.power(to_f64(self.beta1 - self.beta2)).max(1.0) - 1.0
    }

    pub fn is_singular(&self) -> bool {
        self.beta1 == Rational64::from_integer(1)
    }

    /// The same channel with the user labels exchanged, so that the level grid
    /// is anchored on the other user: `SNR1' = SNR1^β1`, `β1' = 1/β1`,
    /// `β2' = β2/β1`.
    pub fn mirrored(&self) -> Result<Self> {
        if self.beta1.is_zero() {
            return Err(Error::InvalidParameter("cannot mirror with beta1 = 0".into()));
        }
        Self::with_exponents(self.snr2(), self.beta1.recip(), self.beta2 / self.beta1)
    }

    fn gap(&self) -> Rational64 {
        Rational64::from_integer(1) - self.beta1
    }

    fn power_r(&self, x: Rational64) -> f64 {
        self.power(to_f64(x))
    }
}

/// Received powers `θ_1..θ_L` of the top `L` layers, each `SNR1^(1-β1)` wide
/// on the log scale.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelPartition {
    pub levels: Vec<f64>,
    /// `SNR1^(1-L(1-β1))`: power left below the last layer.
    pub below: f64,
    /// Exponent `1 - L(1-β1)` of [`LevelPartition::below`].
    pub below_exponent: f64,
}

impl LevelPartition {
    pub fn total(&self) -> f64 {
        self.levels.iter().sum()
    }

    /// True once the layers reach down to the noise floor.
    pub fn reaches_noise_floor(&self) -> bool {
        self.below_exponent <= 0.0
    }
}

fn require_below_one(p: &SnrParams) -> Result<()> {
    if p.is_singular() {
        return Err(Error::singular());
    }
    if p.beta1 > Rational64::from_integer(1) {
        return Err(Error::InvalidParameter(
            "beta1 > 1: anchor the level grid on user 2 (SnrParams::mirrored)".into(),
        ));
    }
    Ok(())
}

pub fn level_partition(p: &SnrParams, count: u32) -> Result<LevelPartition> {
    require_below_one(p)?;
    if count == 0 {
        return Err(Error::InvalidParameter("level count must be positive".into()));
    }
    let one = Rational64::from_integer(1);
    let g = p.gap();
    let levels = (1..=i64::from(count))
        .map(|l| p.power_r(one - g * (l - 1)) - p.power_r(one - g * l))
        .collect();
    let below = one - g * i64::from(count);
    Ok(LevelPartition {
        levels,
        below: p.power_r(below),
        below_exponent: to_f64(below),
    })
}

/// Rate that layer `level` supports when decoded with all lower layers of
/// both users (and the noise) treated as noise.
pub fn per_level_rate(p: &SnrParams, level: u32) -> f64 {
    let one = Rational64::from_integer(1);
    let g = p.gap();
    let l = i64::from(level);
    let interference = p.power_r(one - g * l);
    let theta = p.power_r(one - g * (l - 1)) - interference;
    if theta <= 0.0 {
        return 0.0;
    }
    0.5 * (1.0 + theta / (1.0 + interference)).log2()
}

/// `½ log2 SNR1^|1-β1| - ½`, the guaranteed rate of one alignment layer.
pub fn per_level_floor(p: &SnrParams) -> f64 {
    0.5 * to_f64(p.gap().abs()) * p.log2_snr1() - 0.5
}

/// Which remainder rule applied at the bottom of the common part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemainderCase {
    /// Remainder narrower than one layer, used in full (`r^R1`).
    Partial,
    /// One full layer (`r^R2`).
    FullLayer,
    /// Nothing usable (weaker user, remainder narrower than a layer).
    Idle,
    /// Remainder minus one layer (`r^R3 = r^R1 - r^R2`).
    Excess,
    /// One full layer plus the part below the second layer (MAC-WT only).
    FullLayerPlusPartial,
}

/// Exponent bookkeeping of an achievable scheme, in units of `log SNR1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponents {
    pub model: Model,
    /// `|1 - β1|`: width of one alignment layer.
    pub layer: Rational64,
    pub common: Rational64,
    pub private: Rational64,
    /// Number of message layers in full alignment blocks.
    pub used_levels: u32,
    /// Width of the common part left below the full blocks.
    pub remainder: Rational64,
    pub case: RemainderCase,
}

impl Exponents {
    pub fn new(model: Model, beta1: Rational64, beta2: Rational64) -> Result<Self> {
        let one = Rational64::from_integer(1);
        if beta1 == one {
            return Err(Error::singular());
        }
        let g = Gains::new(one, beta1, beta2);
        let layer = g.n_delta();
        let common = g.nc();
        let (block, per_block): (i64, u32) = match model {
            Model::WiretapHelper => (2, 1),
            Model::MacWiretap => (3, 2),
        };
        let blocks = (common / (layer * block)).floor();
        let remainder = common - blocks * layer * block;
        let blocks: u32 = blocks
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidParameter("too many alignment layers".into()))?;
        let short = remainder < layer;
        let case = match model {
            Model::WiretapHelper if beta1 < one => {
                if short {
                    RemainderCase::Partial
                } else {
                    RemainderCase::FullLayer
                }
            }
            Model::WiretapHelper => {
                if short {
                    RemainderCase::Idle
                } else {
                    RemainderCase::Excess
                }
            }
            Model::MacWiretap => {
                if short {
                    RemainderCase::Partial
                } else if remainder < layer * 2 {
                    RemainderCase::FullLayer
                } else {
                    RemainderCase::FullLayerPlusPartial
                }
            }
        };
        Ok(Exponents {
            model,
            layer,
            common,
            private: g.np(),
            used_levels: per_block * blocks,
            remainder,
            case,
        })
    }

    /// Exponent carried by the remainder.
    pub fn remainder_rate(&self) -> Rational64 {
        match self.case {
            RemainderCase::Partial => self.remainder,
            RemainderCase::FullLayer => self.layer,
            RemainderCase::Idle => Rational64::zero(),
            RemainderCase::Excess => self.remainder - self.layer,
            RemainderCase::FullLayerPlusPartial => self.remainder - self.layer,
        }
    }

    /// Achievable rate divided by `½ log2 SNR1` as `SNR1 → ∞`.
    pub fn normalized_total(&self) -> Rational64 {
        self.private + self.layer * i64::from(self.used_levels) + self.remainder_rate()
    }
}

/// Achievable secrecy rate of a Gaussian model at finite SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussRateBreakdown {
    pub r_p: f64,
    pub r_c: f64,
    pub r_r: f64,
    pub total: f64,
    pub l_u: u32,
    pub case: RemainderCase,
    /// `½ log2 SNR1^R - ½` for remainder exponent `R`.
    pub r_r1: f64,
    /// `½ log2 SNR1^|1-β1| - ½`.
    pub r_r2: f64,
}

fn gauss_rate(model: Model, p: &SnrParams) -> Result<GaussRateBreakdown> {
    let e = Exponents::new(model, p.beta1, p.beta2)?;
    let half_log = 0.5 * p.log2_snr1();
    let r_r1 = to_f64(e.remainder) * half_log - 0.5;
    let r_r2 = to_f64(e.layer) * half_log - 0.5;
    let r_r = match e.case {
        RemainderCase::Partial => r_r1,
        RemainderCase::FullLayer => r_r2,
        RemainderCase::Idle => 0.0,
        RemainderCase::Excess => r_r1 - r_r2,
        RemainderCase::FullLayerPlusPartial => {
            r_r2 + (to_f64(e.remainder - e.layer * 2) * half_log - 0.5).max(0.0)
        }
    };
    let r_p = (to_f64(e.private) * half_log).max(0.0);
    let r_c = (f64::from(e.used_levels) * r_r2).max(0.0);
    let r_r = r_r.max(0.0);
    Ok(GaussRateBreakdown {
        r_p,
        r_c,
        r_r,
        total: r_p + r_c + r_r,
        l_u: e.used_levels,
        case: e.case,
        r_r1,
        r_r2,
    })
}

/// Achievable secrecy rate of the Gaussian wiretap channel with a helper.
pub fn wth_gauss_rate(p: &SnrParams) -> Result<GaussRateBreakdown> {
    gauss_rate(Model::WiretapHelper, p)
}

/// Achievable secrecy sum-rate of the Gaussian multiple access wiretap channel.
pub fn mac_gauss_rate(p: &SnrParams) -> Result<GaussRateBreakdown> {
    gauss_rate(Model::MacWiretap, p)
}

pub fn gauss_rate_for(model: Model, p: &SnrParams) -> Result<GaussRateBreakdown> {
    gauss_rate(model, p)
}

/// Normalized achievable rate (secure g.d.o.f. of the scheme).
pub fn normalized_achievable(model: Model, beta1: Rational64, beta2: Rational64) -> Result<Rational64> {
    Ok(Exponents::new(model, beta1, beta2)?.normalized_total())
}

/// Normalized upper bound: the bit-level bound at gains `(1, β1, β2)`.
pub fn normalized_bound(model: Model, beta1: Rational64, beta2: Rational64) -> Rational64 {
    bound_gains(model, &Gains::new(Rational64::from_integer(1), beta1, beta2))
}

/// One point of a normalized rate curve. Rates are `None` at the singular
/// point `β1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurvePoint {
    pub model: Model,
    pub beta1: Rational64,
    pub beta2: Rational64,
    pub achievable: Option<Rational64>,
    pub bound: Option<Rational64>,
}

impl CurvePoint {
    pub fn is_singular(&self) -> bool {
        self.achievable.is_none()
    }
}

/// Normalized achievable rate and bound over a grid of `β1`, in grid order.
pub fn normalized_curve(model: Model, beta1_grid: &[Rational64], beta2: Rational64) -> Vec<CurvePoint> {
    beta1_grid
        .par_iter()
        .map(|&beta1| {
            let achievable = normalized_achievable(model, beta1, beta2).ok();
            CurvePoint {
                model,
                beta1,
                beta2,
                achievable,
                bound: achievable.map(|_| normalized_bound(model, beta1, beta2)),
            }
        })
        .collect()
}
