use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Equal gains at the legitimate receiver (nΔ = 0, or β1 = 1). The
    /// alignment schemes have nothing to exploit and the rate is `rate`.
    #[error("singular point: no signal-scale difference between the users, secrecy rate is {rate}")]
    SingularPoint { rate: u32 },

    #[error("word width mismatch: need at least {required} levels, got {actual}")]
    WidthMismatch { required: u32, actual: u32 },

    #[error("word width {0} exceeds the 64-level limit")]
    WidthTooLarge(u32),

    #[error("enumeration needs {required} random bits but the budget is {budget}")]
    BudgetExceeded { required: u32, budget: u32 },

    #[error("joint count table is empty")]
    EmptyTable,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn singular() -> Self {
        Error::SingularPoint { rate: 0 }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Error::SingularPoint { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
