//! Upper bounds on the secrecy rate of both models.
//!
//! All bounds are piecewise-linear in the gains and are evaluated in exact
//! rational arithmetic. The same expressions bound the Gaussian channels up
//! to an additive constant that does not depend on the SNR and is not known
//! numerically; [`gaussian_bound`] reports it symbolically.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::ldm::LdParams;
use crate::schemes::Model;

fn pos(x: Rational64) -> Rational64 {
    if x < Rational64::zero() {
        Rational64::zero()
    } else {
        x
    }
}

fn r(n: u32) -> Rational64 {
    Rational64::from_integer(i64::from(n))
}

/// Gains on a continuous scale. Integer gains are bit-levels; normalized
/// gains are `(1, β1, β2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gains {
    pub n1: Rational64,
    pub n2: Rational64,
    pub ne: Rational64,
}

impl Gains {
    pub fn new(n1: Rational64, n2: Rational64, ne: Rational64) -> Self {
        Gains { n1, n2, ne }
    }

    pub fn n_delta(&self) -> Rational64 {
        (self.n1 - self.n2).abs()
    }

    pub fn top(&self) -> Rational64 {
        self.n1.max(self.n2)
    }

    pub fn nc(&self) -> Rational64 {
        (self.ne + self.n_delta()).min(self.top())
    }

    pub fn np(&self) -> Rational64 {
        pos(self.top() - self.nc())
    }
}

impl From<&LdParams> for Gains {
    fn from(p: &LdParams) -> Self {
        Gains::new(r(p.n1), r(p.n2), r(p.ne))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WthBoundReport {
    pub r_ub1: Rational64,
    pub r_ub2: Rational64,
    pub r_ub3: Rational64,
    pub min_bound: Rational64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacBoundCase {
    /// The weaker transmitter is at least as strong at `Y1` as at `Y2`.
    WeakerAtLeastEve,
    /// The eavesdropper sees more levels than the weaker transmitter has at `Y1`.
    EveAboveWeaker,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MacBoundReport {
    pub bound: Rational64,
    pub case: MacBoundCase,
}

pub fn wth_bound_gains(g: &Gains) -> WthBoundReport {
    let half = Rational64::new(1, 2);
    let r_ub1 = g.np() + half * g.nc() + half * pos(g.n1 - g.n2);
    let r_ub2 = g.n1;
    let r_ub3 = g.n2 + pos(g.n1 - g.n2 - g.ne) + pos(g.ne - g.n2 - pos(g.ne - g.n1 + g.n2));
    WthBoundReport {
        r_ub1,
        r_ub2,
        r_ub3,
        min_bound: r_ub1.min(r_ub2).min(r_ub3),
    }
}

/// Upper bound for the wiretap channel with a helper.
pub fn wth_bound(params: &LdParams) -> WthBoundReport {
    wth_bound_gains(&Gains::from(params))
}

pub fn mac_bound_gains(g: &Gains) -> MacBoundReport {
    // labels are ordered so that the first transmitter is the stronger one
    let weaker = g.n1.min(g.n2);
    let body = Rational64::new(2, 3) * g.nc() + Rational64::new(1, 3) * g.n_delta();
    if weaker >= g.ne {
        MacBoundReport {
            bound: g.np() + body,
            case: MacBoundCase::WeakerAtLeastEve,
        }
    } else {
        MacBoundReport {
            bound: body,
            case: MacBoundCase::EveAboveWeaker,
        }
    }
}

/// Upper bound on the secrecy sum-rate of the multiple access wiretap channel.
pub fn mac_bound(params: &LdParams) -> MacBoundReport {
    mac_bound_gains(&Gains::from(params))
}

pub fn bound_gains(model: Model, g: &Gains) -> Rational64 {
    match model {
        Model::WiretapHelper => wth_bound_gains(g).min_bound,
        Model::MacWiretap => mac_bound_gains(g).bound,
    }
}

pub fn bound(model: Model, params: &LdParams) -> Rational64 {
    bound_gains(model, &Gains::from(params))
}

/// The unknown SNR-independent offset of the Gaussian bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapConstant {
    Unspecified,
}

/// Gaussian upper bound: `ld_value + c` with `c` unspecified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianBound {
    pub model: Model,
    pub ld_value: Rational64,
    pub constant: GapConstant,
}

pub fn gaussian_bound(params: &LdParams, model: Model) -> GaussianBound {
    GaussianBound {
        model,
        ld_value: bound(model, params),
        constant: GapConstant::Unspecified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn wth_bound_examples() {
        let b = wth_bound(&LdParams::new(4, 2, 4));
        assert_eq!((b.r_ub1, b.r_ub2, b.r_ub3, b.min_bound), (r(3), r(4), r(2), r(2)));
        let b = wth_bound(&LdParams::new(5, 3, 5));
        assert_eq!((b.r_ub1, b.r_ub2, b.r_ub3, b.min_bound), (q(7, 2), r(5), r(3), r(3)));
    }

    #[test]
    fn blind_eavesdropper() {
        for (n1, n2) in [(4, 1), (1, 4), (3, 3), (0, 2)] {
            let b = wth_bound(&LdParams::new(n1, n2, 0));
            assert_eq!(b.r_ub3, r(n1.max(n2)));
            assert!(b.min_bound <= r(n1));
        }
    }

    #[test]
    fn mac_bound_examples() {
        let b = mac_bound(&LdParams::new(6, 3, 6));
        assert_eq!((b.bound, b.case), (r(5), MacBoundCase::EveAboveWeaker));
        let b = mac_bound(&LdParams::new(6, 3, 2));
        assert_eq!((b.bound, b.case), (q(16, 3), MacBoundCase::WeakerAtLeastEve));
        let p = LdParams::new(5, 5, 2);
        assert_eq!(mac_bound(&p).bound, r(p.np()) + q(2, 3) * r(p.nc()));
    }

    #[test]
    fn gaussian_bound_reuses_ld_value() {
        let p = LdParams::new(7, 4, 3);
        let g = gaussian_bound(&p, Model::WiretapHelper);
        assert_eq!(g.ld_value, wth_bound(&p).min_bound);
        assert_eq!(g.constant, GapConstant::Unspecified);
        assert_eq!(gaussian_bound(&p, Model::MacWiretap).ld_value, mac_bound(&p).bound);
    }

    #[test]
    fn normalized_mac_bound_tends_to_two_thirds() {
        let g = |b1: Rational64| mac_bound_gains(&Gains::new(r(1), b1, r(1))).bound;
        assert_eq!(g(q(999, 1000)), q(2, 3) + q(1, 3000));
        assert_eq!(g(r(1)), q(2, 3));
    }

    #[test]
    fn normalized_wth_bound_in_the_kink_region() {
        let b = wth_bound_gains(&Gains::new(r(1), q(2, 3), r(1)));
        assert_eq!(b.r_ub1, q(2, 3));
        assert_eq!(b.r_ub3, q(2, 3));
        assert_eq!(b.min_bound, q(2, 3));
    }

    proptest! {
        #[test]
        fn mac_bound_is_label_symmetric(n1 in 0u32..30, n2 in 0u32..30, ne in 0u32..30) {
            prop_assert_eq!(
                mac_bound(&LdParams::new(n1, n2, ne)),
                mac_bound(&LdParams::new(n2, n1, ne))
            );
        }

        #[test]
        fn r_ub3_two_shapes(n1 in 0u32..40, n2 in 0u32..40, ne in 0u32..40) {
            prop_assume!(ne > n2);
            let b = wth_bound(&LdParams::new(n1, n2, ne));
            let expected = if n1 <= 2 * n2 { n2 } else { n1 - n2 };
            prop_assert_eq!(b.r_ub3, r(expected));
        }

        #[test]
        fn bounds_are_homogeneous(n1 in 0u32..20, n2 in 0u32..20, ne in 0u32..20, s in 1u32..7) {
            let p = LdParams::new(n1, n2, ne);
            let ps = LdParams::new(s * n1, s * n2, s * ne);
            prop_assert_eq!(wth_bound(&ps).min_bound, r(s) * wth_bound(&p).min_bound);
            prop_assert_eq!(mac_bound(&ps).bound, r(s) * mac_bound(&p).bound);
        }
    }
}
