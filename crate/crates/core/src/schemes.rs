//! Bit-level alignment and cooperative jamming schemes.
//!
//! Both schemes cut each transmitter's levels into `nΔ`-level slots counted
//! from the transmitter's own top level and repeat a fixed role pattern:
//!
//! | model  | transmitter               | pattern (per slot) |
//! |--------|---------------------------|--------------------|
//! | WT-H   | user (tx1)                | `M U`              |
//! | WT-H   | helper (tx2)              | `J U`              |
//! | MAC-WT | stronger at `Y1`          | `M J U`            |
//! | MAC-WT | weaker at `Y1`            | `J M U`            |
//!
//! Both transmitters are read at the eavesdropper with zero relative shift,
//! so every message slot meets a jamming slot of the other transmitter at
//! `Y2`. At `Y1` the weaker signal is shifted down by `nΔ`, so jamming lands
//! on unused or jamming slots of the other signal.
//!
//! The pattern is clipped in two ways. A message level is kept only if its
//! `Y1` image lies in the common part. A jamming level is kept only if the
//! eavesdropper receives it. Levels whose `Y1` image falls in the private
//! part carry messages for the transmitter that owns them there.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ldm::{LdParams, Receiver, Tx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Wiretap channel with a helper: only tx1 has a message.
    WiretapHelper,
    /// Two-user multiple access wiretap channel.
    MacWiretap,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::WiretapHelper, Model::MacWiretap];

    pub fn short_name(self) -> &'static str {
        match self {
            Model::WiretapHelper => "wth",
            Model::MacWiretap => "mac",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::WiretapHelper => "WT-H",
            Model::MacWiretap => "MAC-WT",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wth" | "wt-h" | "helper" => Ok(Model::WiretapHelper),
            "mac" | "mac-wt" | "macwt" => Ok(Model::MacWiretap),
            other => Err(Error::InvalidParameter(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelRole {
    Message,
    Jam,
    /// Sends a constant 0.
    Unused,
}

impl LevelRole {
    pub fn symbol(self) -> char {
        match self {
            LevelRole::Message => 'M',
            LevelRole::Jam => 'J',
            LevelRole::Unused => 'U',
        }
    }
}

/// Secrecy rate split into its private part, the full alignment blocks of the
/// common part and the partial block left at the bottom of the common part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RateBreakdown {
    pub private: u32,
    pub common: u32,
    pub remainder: u32,
    pub total: u32,
}

impl RateBreakdown {
    fn new(private: u32, common: u32, remainder: u32) -> Self {
        RateBreakdown {
            private,
            common,
            remainder,
            total: private + common + remainder,
        }
    }
}

/// Achievable secrecy rate of the wiretap channel with a helper.
pub fn wth_rate(params: &LdParams) -> Result<RateBreakdown> {
    if params.is_singular() {
        return Err(Error::singular());
    }
    let d = params.derive();
    let block = 2 * d.n_delta;
    let nq = d.nc % block;
    let q = match (nq < d.n_delta, params.n1 >= params.n2) {
        (true, true) => nq,
        (false, true) => d.n_delta,
        (true, false) => 0,
        (false, false) => nq - d.n_delta,
    };
    Ok(RateBreakdown::new(d.np, (d.nc / block) * d.n_delta, q))
}

/// Achievable secrecy sum-rate of the multiple access wiretap channel.
pub fn mac_rate(params: &LdParams) -> Result<RateBreakdown> {
    if params.is_singular() {
        return Err(Error::singular());
    }
    let d = params.derive();
    let nd = d.n_delta;
    let nq = d.nc % (3 * nd);
    let q = nq % nd;
    let rem = if nq < nd {
        q
    } else if nq < 2 * nd {
        nd
    } else {
        nd + q
    };
    Ok(RateBreakdown::new(d.np, (d.nc / (3 * nd)) * 2 * nd, rem))
}

pub fn rate(model: Model, params: &LdParams) -> Result<RateBreakdown> {
    match model {
        Model::WiretapHelper => wth_rate(params),
        Model::MacWiretap => mac_rate(params),
    }
}

/// Per-level roles of both transmitters for one parameter triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAllocation {
    pub model: Model,
    pub params: LdParams,
    roles: [Vec<LevelRole>; 2],
}

impl LevelAllocation {
    /// Allocation with every level unused.
    pub fn empty(model: Model, params: LdParams) -> Self {
        let roles = Tx::BOTH.map(|tx| vec![LevelRole::Unused; params.input_width(tx) as usize]);
        LevelAllocation {
            model,
            params,
            roles,
        }
    }

    /// Roles of `tx`, top level first. Length is `max{n_tx, nE}`.
    pub fn roles(&self, tx: Tx) -> &[LevelRole] {
        &self.roles[tx.index()]
    }

    /// Role at 1-based `level`.
    pub fn role(&self, tx: Tx, level: u32) -> LevelRole {
        self.roles[tx.index()][level as usize - 1]
    }

    pub fn set_role(&mut self, tx: Tx, level: u32, role: LevelRole) -> Result<()> {
        let slot = self.roles[tx.index()]
            .get_mut((level as usize).wrapping_sub(1))
            .ok_or_else(|| Error::InvalidParameter(format!("{tx} has no level {level}")))?;
        *slot = role;
        Ok(())
    }

    /// Copy with one level re-tagged.
    pub fn with_role(&self, tx: Tx, level: u32, role: LevelRole) -> Result<Self> {
        let mut out = self.clone();
        out.set_role(tx, level, role)?;
        Ok(out)
    }

    /// 1-based levels of `tx` carrying `role`.
    pub fn levels_with(&self, tx: Tx, role: LevelRole) -> impl Iterator<Item = u32> + '_ {
        self.roles[tx.index()]
            .iter()
            .enumerate()
            .filter(move |(_, &r)| r == role)
            .map(|(i, _)| i as u32 + 1)
    }

    pub fn count(&self, role: LevelRole) -> u32 {
        Tx::BOTH
            .iter()
            .map(|&tx| self.levels_with(tx, role).count() as u32)
            .sum()
    }

    pub fn message_count(&self) -> u32 {
        self.count(LevelRole::Message)
    }

    pub fn jam_count(&self) -> u32 {
        self.count(LevelRole::Jam)
    }

    /// Jamming levels that cover a message level of the other transmitter at
    /// the eavesdropper.
    pub fn protecting_jams(&self) -> Vec<(Tx, u32)> {
        let p = &self.params;
        Tx::BOTH
            .iter()
            .flat_map(|&tx| {
                self.levels_with(tx, LevelRole::Jam)
                    .filter(move |&k| {
                        p.landing_level(Receiver::Eavesdropper, tx, k).is_some()
                            && (k as usize) <= self.roles[tx.other().index()].len()
                            && self.role(tx.other(), k) == LevelRole::Message
                    })
                    .map(move |k| (tx, k))
            })
            .collect()
    }

    /// Compact `M/J/U` rendering of one transmitter's roles.
    pub fn pattern(&self, tx: Tx) -> String {
        self.roles(tx).iter().map(|r| r.symbol()).collect()
    }
}

impl fmt::Display for LevelAllocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: tx1 [{}] tx2 [{}]",
            self.model,
            self.params,
            self.pattern(Tx::One),
            self.pattern(Tx::Two)
        )
    }
}

fn fill(params: LdParams, model: Model, patterns: [&[LevelRole]; 2], private_owner: Tx) -> LevelAllocation {
    let nd = params.n_delta();
    let nc = params.nc();
    let mut alloc = LevelAllocation::empty(model, params);
    for tx in Tx::BOTH {
        let pattern = patterns[tx.index()];
        for k in 1..=params.input_width(tx) {
            let y1 = params.landing_level(Receiver::Legitimate, tx, k);
            let slot = ((k - 1) / nd) as usize % pattern.len();
            let role = match pattern[slot] {
                LevelRole::Message if y1.is_some_and(|y| y <= nc) => LevelRole::Message,
                LevelRole::Jam if k <= params.ne => LevelRole::Jam,
                _ => LevelRole::Unused,
            };
            let role = if tx == private_owner && y1.is_some_and(|y| y > nc) {
                LevelRole::Message
            } else {
                role
            };
            alloc.roles[tx.index()][k as usize - 1] = role;
        }
    }
    alloc
}

/// Allocation realising [`wth_rate`].
pub fn build_wth_allocation(params: &LdParams) -> Result<LevelAllocation> {
    use LevelRole::*;
    if params.is_singular() {
        return Err(Error::singular());
    }
    Ok(fill(
        *params,
        Model::WiretapHelper,
        [&[Message, Unused], &[Jam, Unused]],
        Tx::One,
    ))
}

/// Allocation realising [`mac_rate`]. The transmitter that is stronger at
/// `Y1` takes the `M J U` pattern and the private part.
pub fn build_mac_allocation(params: &LdParams) -> Result<LevelAllocation> {
    use LevelRole::*;
    if params.is_singular() {
        return Err(Error::singular());
    }
    const STRONG: &[LevelRole] = &[Message, Jam, Unused];
    const WEAK: &[LevelRole] = &[Jam, Message, Unused];
    let (patterns, owner) = if params.n1 > params.n2 {
        ([STRONG, WEAK], Tx::One)
    } else {
        ([WEAK, STRONG], Tx::Two)
    };
    Ok(fill(*params, Model::MacWiretap, patterns, owner))
}

pub fn build_allocation(model: Model, params: &LdParams) -> Result<LevelAllocation> {
    match model {
        Model::WiretapHelper => build_wth_allocation(params),
        Model::MacWiretap => build_mac_allocation(params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n1: u32, n2: u32, ne: u32) -> LdParams {
        LdParams::new(n1, n2, ne)
    }

    #[test]
    fn wth_rate_examples() {
        assert_eq!(wth_rate(&p(4, 2, 4)).unwrap(), RateBreakdown::new(0, 2, 0));
        assert_eq!(wth_rate(&p(5, 3, 5)).unwrap().total, 3);
        assert_eq!(wth_rate(&p(3, 3, 3)), Err(Error::SingularPoint { rate: 0 }));
    }

    #[test]
    fn wth_rate_weaker_user_cases() {
        // n1 < n2, nQ = 1 < nΔ = 2: remainder is lost.
        let r = wth_rate(&p(3, 5, 5)).unwrap();
        assert_eq!((r.common, r.remainder), (2, 0));
        let r = wth_rate(&p(1, 3, 5)).unwrap();
        assert_eq!((r.common, r.remainder), (0, 1));
        // n1 < n2, nQ = 5 >= nΔ = 3: keeps nQ - nΔ.
        let r = wth_rate(&p(2, 5, 5)).unwrap();
        assert_eq!((r.common, r.remainder, r.total), (0, 2, 2));
        let r = wth_rate(&p(4, 7, 4)).unwrap();
        // nΔ = 3, nc = 7, one block of 6, nQ = 1 < 3 → Q = 0
        assert_eq!((r.private, r.common, r.remainder), (0, 3, 0));
    }

    #[test]
    fn mac_rate_examples() {
        assert_eq!(mac_rate(&p(6, 3, 6)).unwrap().total, 3);
        assert_eq!(mac_rate(&p(9, 6, 9)).unwrap().total, 6);
        assert_eq!(mac_rate(&p(2, 1, 0)).unwrap(), RateBreakdown::new(1, 0, 1));
        assert_eq!(mac_rate(&p(3, 6, 6)), mac_rate(&p(6, 3, 6)));
        assert!(mac_rate(&p(2, 2, 1)).unwrap_err().is_singular());
    }

    #[test]
    fn wth_allocation_examples() {
        let a = build_wth_allocation(&p(4, 2, 4)).unwrap();
        assert_eq!(a.pattern(Tx::One), "MMUU");
        assert_eq!(a.pattern(Tx::Two), "JJUU");
        let a = build_wth_allocation(&p(5, 3, 5)).unwrap();
        assert_eq!(a.pattern(Tx::One), "MMUUM");
        assert_eq!(a.message_count(), 3);
    }

    #[test]
    fn mac_allocation_examples() {
        let a = build_mac_allocation(&p(6, 3, 6)).unwrap();
        assert_eq!(a.pattern(Tx::One), "MMMJJJ");
        assert_eq!(a.pattern(Tx::Two), "JJJUUU");
        assert_eq!((a.message_count(), a.jam_count()), (3, 6));
        let a = build_mac_allocation(&p(9, 6, 9)).unwrap();
        assert_eq!(a.message_count(), 6);
        assert_eq!(a.levels_with(Tx::Two, LevelRole::Message).count(), 3);
        // swapped labels give mirrored roles
        let b = build_mac_allocation(&p(6, 9, 9)).unwrap();
        assert_eq!(b.roles(Tx::One), a.roles(Tx::Two));
        assert_eq!(b.roles(Tx::Two), a.roles(Tx::One));
    }

    #[test]
    fn private_part_goes_to_the_owner() {
        let a = build_wth_allocation(&p(6, 3, 2)).unwrap();
        // nc = 5, np = 1: tx1's bottom level is private.
        assert_eq!(a.role(Tx::One, 6), LevelRole::Message);
        assert_eq!(a.message_count(), wth_rate(&p(6, 3, 2)).unwrap().total);
        let a = build_wth_allocation(&p(2, 5, 1)).unwrap();
        assert_eq!(a.message_count(), wth_rate(&p(2, 5, 1)).unwrap().total);
        assert!(a.levels_with(Tx::Two, LevelRole::Message).next().is_none());
    }

    #[test]
    fn singular_construction_rejected() {
        assert!(build_wth_allocation(&p(2, 2, 2)).unwrap_err().is_singular());
        assert!(build_allocation(Model::MacWiretap, &p(0, 0, 3)).unwrap_err().is_singular());
    }

    #[test]
    fn protecting_jams_pair_with_messages() {
        let a = build_mac_allocation(&p(6, 3, 6)).unwrap();
        assert_eq!(a.protecting_jams(), vec![(Tx::Two, 1), (Tx::Two, 2), (Tx::Two, 3)]);
    }

    #[test]
    fn model_parsing() {
        assert_eq!("wth".parse::<Model>().unwrap(), Model::WiretapHelper);
        assert_eq!("MAC-WT".parse::<Model>().unwrap(), Model::MacWiretap);
        assert!("bc".parse::<Model>().is_err());
    }
}
