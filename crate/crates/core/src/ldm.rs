//! Linear deterministic channel model.
//!
//! Signals are bit-words whose level 1 is the most significant bit. A channel
//! gain of `n` levels keeps the top `n` bits of the transmitted word and drops
//! everything below the noise floor. Superposition is XOR per level.
//!
//! Alignment at the two receivers (all level indices counted from 1 at the
//! top):
//!
//! * legitimate receiver `Y1` has `max{n1, n2}` levels and transmitter `i`'s
//!   level `k` lands at `max{n1, n2} - n_i + k`, for `k <= n_i`. Both received
//!   signals end at the noise floor.
//! * eavesdropper `Y2` has `nE` levels and sees both transmitters with the same
//!   gain, so level `k` of either transmitter lands at level `k`, for `k <= nE`.
//!
//! [`LdParams::landing_level`] is the only place that encodes these offsets.

use std::fmt;

use crate::error::{Error, Result};

/// Largest word width representable by [`BitWord`].
pub const MAX_WIDTH: u32 = 64;

/// One of the two transmitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tx {
    One,
    Two,
}

impl Tx {
    pub const BOTH: [Tx; 2] = [Tx::One, Tx::Two];

    pub fn index(self) -> usize {
        match self {
            Tx::One => 0,
            Tx::Two => 1,
        }
    }

    pub fn other(self) -> Tx {
        match self {
            Tx::One => Tx::Two,
            Tx::Two => Tx::One,
        }
    }
}

impl fmt::Display for Tx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tx::One => f.write_str("tx1"),
            Tx::Two => f.write_str("tx2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Receiver {
    /// `Y1`, the intended receiver.
    Legitimate,
    /// `Y2`, the eavesdropper.
    Eavesdropper,
}

/// Bit-level gains of the symmetric-eavesdropper channel.
///
/// `n1` and `n2` are the levels of transmitters 1 and 2 at `Y1`; `ne` is the
/// level count of either transmitter at `Y2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LdParams {
    pub n1: u32,
    pub n2: u32,
    pub ne: u32,
}

/// Quantities derived from an [`LdParams`] triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Derived {
    /// `|n1 - n2|`
    pub n_delta: u32,
    /// Top levels of `Y1` that share structure with the eavesdropper's view.
    pub nc: u32,
    /// Bottom levels of `Y1` the eavesdropper never sees.
    pub np: u32,
    /// `max{n1, n2, nE}`
    pub q: u32,
}

impl LdParams {
    pub const fn new(n1: u32, n2: u32, ne: u32) -> Self {
        LdParams { n1, n2, ne }
    }

    pub fn derive(&self) -> Derived {
        let n_delta = self.n_delta();
        let nc = self.nc();
        Derived {
            n_delta,
            nc,
            np: self.y1_width() - nc,
            q: self.n1.max(self.n2).max(self.ne),
        }
    }

    pub fn n_delta(&self) -> u32 {
        self.n1.abs_diff(self.n2)
    }

    pub fn nc(&self) -> u32 {
        (self.ne + self.n_delta()).min(self.y1_width())
    }

    pub fn np(&self) -> u32 {
        self.y1_width() - self.nc()
    }

    pub fn y1_width(&self) -> u32 {
        self.n1.max(self.n2)
    }

    pub fn is_singular(&self) -> bool {
        self.n1 == self.n2
    }

    /// Levels transmitter `tx` ever reaches at either receiver.
    pub fn input_width(&self, tx: Tx) -> u32 {
        self.gain(tx).max(self.ne)
    }

    pub fn gain(&self, tx: Tx) -> u32 {
        match tx {
            Tx::One => self.n1,
            Tx::Two => self.n2,
        }
    }

    /// Parameters with the transmitter labels exchanged.
    pub fn swapped(&self) -> Self {
        LdParams::new(self.n2, self.n1, self.ne)
    }

    /// Output level at which transmitter `tx`'s level `level` (from its own
    /// top, 1-based) is received, or `None` if it falls below the noise floor.
    pub fn landing_level(&self, receiver: Receiver, tx: Tx, level: u32) -> Option<u32> {
        if level == 0 {
            return None;
        }
        match receiver {
            Receiver::Legitimate => {
                let n = self.gain(tx);
                (level <= n).then(|| self.y1_width() - n + level)
            }
            Receiver::Eavesdropper => (level <= self.ne).then_some(level),
        }
    }
}

impl fmt::Display for LdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n1={}, n2={}, nE={})", self.n1, self.n2, self.ne)
    }
}

/// Fixed-width binary word with level 1 the most significant bit.
///
/// The bits are packed into a `u64`: level `k` of a width-`w` word is bit
/// `w - k` of the integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitWord {
    width: u32,
    bits: u64,
}

fn mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl BitWord {
    pub fn zeros(width: u32) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::WidthTooLarge(width));
        }
        Ok(BitWord { width, bits: 0 })
    }

    /// Word from its packed integer value; bits above `width` are rejected.
    pub fn from_bits(width: u32, bits: u64) -> Result<Self> {
        let w = Self::zeros(width)?;
        if bits & !mask(width) != 0 {
            return Err(Error::InvalidParameter(format!(
                "value {bits:#x} does not fit in {width} levels"
            )));
        }
        Ok(BitWord { bits, ..w })
    }

    /// Word from a top-to-bottom list of 0/1 levels.
    pub fn from_levels(levels: &[u8]) -> Result<Self> {
        let width = u32::try_from(levels.len()).map_err(|_| Error::WidthTooLarge(u32::MAX))?;
        let mut word = Self::zeros(width)?;
        for (i, &b) in levels.iter().enumerate() {
            match b {
                0 => {}
                1 => word.set(i as u32 + 1, true),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "level value {other} is not a bit"
                    )))
                }
            }
        }
        Ok(word)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Bit at 1-based `level`.
    ///
    /// Panics if `level` is outside `1..=width`.
    pub fn bit(&self, level: u32) -> bool {
        assert!((1..=self.width).contains(&level), "level {level} out of range");
        (self.bits >> (self.width - level)) & 1 == 1
    }

    pub fn set(&mut self, level: u32, value: bool) {
        assert!((1..=self.width).contains(&level), "level {level} out of range");
        let b = 1u64 << (self.width - level);
        if value {
            self.bits |= b;
        } else {
            self.bits &= !b;
        }
    }

    /// Top `n` levels as a width-`n` word.
    pub fn top(&self, n: u32) -> Result<BitWord> {
        if n > self.width {
            return Err(Error::WidthMismatch {
                required: n,
                actual: self.width,
            });
        }
        Ok(BitWord {
            width: n,
            bits: if n == 0 { 0 } else { self.bits >> (self.width - n) },
        })
    }

    /// Levels `from..=to` (1-based, inclusive). An empty range yields the
    /// zero-width word.
    pub fn range(&self, from: u32, to: u32) -> Result<BitWord> {
        if from > to {
            return Self::zeros(0);
        }
        if from == 0 || to > self.width {
            return Err(Error::WidthMismatch {
                required: to,
                actual: self.width,
            });
        }
        let w = to - from + 1;
        Ok(BitWord {
            width: w,
            bits: (self.bits >> (self.width - to)) & mask(w),
        })
    }

    pub fn xor(&self, other: &BitWord) -> Result<BitWord> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                required: self.width,
                actual: other.width,
            });
        }
        Ok(BitWord {
            width: self.width,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn to_levels(&self) -> Vec<u8> {
        (1..=self.width).map(|k| self.bit(k) as u8).collect()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for k in 1..=self.width {
            f.write_str(if self.bit(k) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// A receiver's output word together with where each transmitter's top
/// level lands in it (`None` when the transmitter is not received at all).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceiverView {
    pub receiver: Receiver,
    pub word: BitWord,
    pub offsets: [Option<u32>; 2],
}

impl ReceiverView {
    pub fn observe(params: &LdParams, receiver: Receiver, x1: &BitWord, x2: &BitWord) -> Result<Self> {
        let (y1, y2) = channel_outputs(params, x1, x2)?;
        let word = match receiver {
            Receiver::Legitimate => y1,
            Receiver::Eavesdropper => y2,
        };
        let offsets = Tx::BOTH.map(|tx| params.landing_level(receiver, tx, 1));
        Ok(ReceiverView {
            receiver,
            word,
            offsets,
        })
    }
}

fn check_input(params: &LdParams, tx: Tx, x: &BitWord) -> Result<()> {
    let required = params.input_width(tx);
    if x.width() < required {
        return Err(Error::WidthMismatch {
            required,
            actual: x.width(),
        });
    }
    Ok(())
}

/// Received words `(Y1, Y2)` for inputs `x1`, `x2`.
///
/// `Y1` has width `max{n1, n2}`: the top `n1` bits of `x1` and the top `n2`
/// bits of `x2`, bottom-aligned and XORed. `Y2` has width `nE`: the top `nE`
/// bits of both inputs XORed with no relative shift.
pub fn channel_outputs(params: &LdParams, x1: &BitWord, x2: &BitWord) -> Result<(BitWord, BitWord)> {
    check_input(params, Tx::One, x1)?;
    check_input(params, Tx::Two, x2)?;
    let y1 = BitWord {
        width: params.y1_width(),
        bits: x1.top(params.n1)?.bits ^ x2.top(params.n2)?.bits,
    };
    let y2 = BitWord {
        width: params.ne,
        bits: x1.top(params.ne)?.bits ^ x2.top(params.ne)?.bits,
    };
    Ok((y1, y2))
}

/// Packed-integer form of [`channel_outputs`] for enumeration loops. Inputs
/// are `input_width(tx)`-level words given as raw integers.
#[inline]
pub(crate) fn channel_outputs_raw(params: &LdParams, x1: u64, x2: u64) -> (u64, u64) {
    let w1 = params.input_width(Tx::One);
    let w2 = params.input_width(Tx::Two);
    let top = |x: u64, w: u32, n: u32| if n == 0 { 0 } else { x >> (w - n) };
    (
        top(x1, w1, params.n1) ^ top(x2, w2, params.n2),
        top(x1, w1, params.ne) ^ top(x2, w2, params.ne),
    )
}

/// Splits `Y1` into its top `nc` (common) and bottom `np` (private) levels.
pub fn split_common_private(params: &LdParams, y1: &BitWord) -> Result<(BitWord, BitWord)> {
    let width = params.y1_width();
    if y1.width() != width {
        return Err(Error::WidthMismatch {
            required: width,
            actual: y1.width(),
        });
    }
    let nc = params.nc();
    let common = y1.top(nc)?;
    let private = if nc == width {
        BitWord::zeros(0)?
    } else {
        y1.range(nc + 1, width)?
    };
    Ok((common, private))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn derive_examples() {
        let d = LdParams::new(4, 2, 4).derive();
        assert_eq!((d.n_delta, d.nc, d.np, d.q), (2, 4, 0, 4));
        let d = LdParams::new(3, 3, 3).derive();
        assert_eq!((d.n_delta, d.nc, d.np, d.q), (0, 3, 0, 3));
        let d = LdParams::new(6, 3, 2).derive();
        assert_eq!((d.n_delta, d.nc, d.np, d.q), (3, 5, 1, 6));
    }

    #[test]
    fn two_level_hand_example() {
        let p = LdParams::new(2, 1, 2);
        let x1 = BitWord::from_levels(&[1, 0]).unwrap();
        let x2 = BitWord::from_levels(&[1, 1]).unwrap();
        let (y1, y2) = channel_outputs(&p, &x1, &x2).unwrap();
        assert_eq!(y1.to_levels(), vec![1, 1]);
        assert_eq!(y2.to_levels(), vec![0, 1]);
    }

    #[test]
    fn zero_in_zero_out() {
        let p = LdParams::new(5, 3, 4);
        let z1 = BitWord::zeros(5).unwrap();
        let z2 = BitWord::zeros(4).unwrap();
        let (y1, y2) = channel_outputs(&p, &z1, &z2).unwrap();
        assert!(y1.is_zero() && y2.is_zero());
        assert_eq!((y1.width(), y2.width()), (5, 4));
    }

    #[test]
    fn weaker_top_bit_lands_below_the_shift() {
        let p = LdParams::new(4, 2, 4);
        assert_eq!(p.landing_level(Receiver::Legitimate, Tx::Two, 1), Some(3));
        let x1 = BitWord::zeros(4).unwrap();
        let x2 = BitWord::from_levels(&[1, 0, 0, 0]).unwrap();
        let (y1, _) = channel_outputs(&p, &x1, &x2).unwrap();
        assert_eq!(y1.to_levels(), vec![0, 0, 1, 0]);
    }

    #[test]
    fn narrow_input_rejected() {
        let p = LdParams::new(3, 1, 4);
        let x1 = BitWord::zeros(3).unwrap();
        let x2 = BitWord::zeros(4).unwrap();
        assert_eq!(
            channel_outputs(&p, &x1, &x2),
            Err(Error::WidthMismatch { required: 4, actual: 3 })
        );
    }

    #[test]
    fn split_examples() {
        let p = LdParams::new(6, 3, 2);
        let y1 = BitWord::from_levels(&[1, 0, 1, 1, 0, 1]).unwrap();
        let (c, pr) = split_common_private(&p, &y1).unwrap();
        assert_eq!(c.to_levels(), vec![1, 0, 1, 1, 0]);
        assert_eq!(pr.to_levels(), vec![1]);

        let p = LdParams::new(4, 2, 4);
        let y1 = BitWord::from_levels(&[1, 1, 0, 1]).unwrap();
        let (c, pr) = split_common_private(&p, &y1).unwrap();
        assert_eq!(c.width(), 4);
        assert_eq!(pr.width(), 0);

        let p = LdParams::new(3, 3, 5);
        let (c, _) = split_common_private(&p, &y1.top(3).unwrap()).unwrap();
        assert_eq!(c.width(), 3);
    }

    #[test]
    fn eavesdropper_blind_when_ne_is_zero() {
        let p = LdParams::new(3, 1, 0);
        let x1 = BitWord::from_levels(&[1, 1, 1]).unwrap();
        let x2 = BitWord::from_levels(&[1]).unwrap();
        let v = ReceiverView::observe(&p, Receiver::Eavesdropper, &x1, &x2).unwrap();
        assert_eq!(v.word.width(), 0);
        assert_eq!(v.offsets, [None, None]);
    }

    fn word(width: u32) -> impl Strategy<Value = BitWord> {
        (0..=mask(width)).prop_map(move |b| BitWord::from_bits(width, b).unwrap())
    }

    fn params_and_inputs() -> impl Strategy<Value = (LdParams, BitWord, BitWord, BitWord)> {
        (0u32..=10, 0u32..=10, 0u32..=10).prop_flat_map(|(n1, n2, ne)| {
            let p = LdParams::new(n1, n2, ne);
            let w1 = p.input_width(Tx::One);
            let w2 = p.input_width(Tx::Two);
            (Just(p), word(w1), word(w1), word(w2))
        })
    }

    proptest! {
        #[test]
        fn common_plus_private_covers_y1(n1 in 0u32..40, n2 in 0u32..40, ne in 0u32..40) {
            let d = LdParams::new(n1, n2, ne).derive();
            prop_assert_eq!(d.nc + d.np, n1.max(n2));
            prop_assert!(d.nc <= n1.max(n2));
        }

        #[test]
        fn eavesdropper_sees_levelwise_xor((p, x1, _, x2) in params_and_inputs()) {
            let (_, y2) = channel_outputs(&p, &x1, &x2).unwrap();
            for k in 1..=p.ne {
                prop_assert_eq!(y2.bit(k), x1.bit(k) ^ x2.bit(k));
            }
        }

        #[test]
        fn outputs_are_linear((p, x1, x1b, x2) in params_and_inputs()) {
            let z2 = BitWord::zeros(x2.width()).unwrap();
            let (a1, a2) = channel_outputs(&p, &x1.xor(&x1b).unwrap(), &x2).unwrap();
            let (b1, b2) = channel_outputs(&p, &x1, &x2).unwrap();
            let (c1, c2) = channel_outputs(&p, &x1b, &z2).unwrap();
            prop_assert_eq!(a1, b1.xor(&c1).unwrap());
            prop_assert_eq!(a2, b2.xor(&c2).unwrap());
        }

        #[test]
        fn bits_below_the_gain_never_matter((p, x1, noise, x2) in params_and_inputs()) {
            // Only levels below both n1 and nE are flipped.
            let keep = p.n1.max(p.ne);
            let w = x1.width();
            let low = if keep >= w { 0 } else { noise.bits() & mask(w - keep) };
            let x1b = BitWord::from_bits(w, x1.bits() ^ low).unwrap();
            prop_assert_eq!(
                channel_outputs(&p, &x1, &x2).unwrap(),
                channel_outputs(&p, &x1b, &x2).unwrap()
            );
        }

        #[test]
        fn raw_path_matches_word_path((p, x1, _, x2) in params_and_inputs()) {
            let (y1, y2) = channel_outputs(&p, &x1, &x2).unwrap();
            prop_assert_eq!(channel_outputs_raw(&p, x1.bits(), x2.bits()), (y1.bits(), y2.bits()));
        }
    }
}
