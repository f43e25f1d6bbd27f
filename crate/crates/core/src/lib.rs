//! Secrecy rates of two-transmitter wiretap channels with a symmetric
//! eavesdropper: a wiretap channel with a cooperative jamming helper (WT-H)
//! and a multiple access wiretap channel (MAC-WT).
//!
//! * [`ldm`]: the linear deterministic channel on bit-words.
//! * [`schemes`]: level allocations and their secrecy rates.
//! * [`bounds`]: upper bounds in exact rationals.
//! * [`gdof`]: Gaussian rates at finite SNR and their normalized limits.
//! * [`verify`]: exhaustive certification of allocations and oracles for the
//!   truncated model.
//!
//! ```
//! use secrecy_lab::{ldm::LdParams, schemes::{wth_rate, Model}, bounds::bound};
//!
//! let p = LdParams::new(4, 2, 4);
//! assert_eq!(wth_rate(&p).unwrap().total, 2);
//! assert_eq!(bound(Model::WiretapHelper, &p), 2.into());
//! ```

pub mod bounds;
pub mod error;
pub mod gdof;
pub mod ldm;
pub mod schemes;
pub mod verify;

pub use error::{Error, Result};

pub use num_rational::Rational64;

// The guide's code blocks run as doc-tests through these modules.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/ldm.md")]
    mod ldm {}
    #[doc = include_str!("../../../book/src/schemes.md")]
    mod schemes {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/gdof.md")]
    mod gdof {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
