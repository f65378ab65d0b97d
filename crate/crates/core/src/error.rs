use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole: argument {0} is a non-positive integer")]
    GammaPole(f64),

    #[error("gamma overflow: argument {0} exceeds the representable range")]
    GammaOverflow(f64),

    #[error("invalid memory order alpha={alpha}: {reason}")]
    InvalidOrder { alpha: f64, reason: &'static str },

    #[error("integer order alpha={0}: the general-order map requires non-integer alpha")]
    IntegerOrder(f64),

    #[error("derivative channel m={m} out of range for N={n_bracket}")]
    ChannelOutOfRange { m: usize, n_bracket: usize },

    #[error("history length {got} does not match expected {expected}")]
    HistoryLength { got: usize, expected: usize },

    #[error("horizon {requested} exceeds the configured maximum {cap}")]
    HorizonExceeded { requested: usize, cap: usize },

    #[error("kernel table horizon {horizon} too small for lag {needed}")]
    LagOutOfRange { needed: usize, horizon: usize },

    #[error("grid input cannot furnish {required} absolutely continuous derivatives")]
    InsufficientSmoothness { required: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("divergence at period {period}: |{channel}| = {value:e} exceeds bound {bound:e}")]
    Divergence {
        period: usize,
        channel: &'static str,
        value: f64,
        bound: f64,
    },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
