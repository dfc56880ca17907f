use thiserror::Error;

use crate::swimmer::Variant;

/// Errors surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// The 3x3 group block of the grand resistance matrix failed to solve.
    /// Should not happen for valid parameters (the block is positive
    /// definite); carries the shape point and a pivot-based condition
    /// estimate for diagnosis.
    #[error("singular resistance block at shape point ({alpha1}, {alpha2}); condition estimate {condition:.3e}")]
    SingularSystem {
        alpha1: f64,
        alpha2: f64,
        condition: f64,
    },

    #[error("link index {index} out of range for {variant:?} swimmer")]
    LinkIndexOutOfRange { index: usize, variant: Variant },

    #[error("invalid swimmer parameters: k = {k}, half link length = {l}; both must be positive")]
    InvalidParams { k: f64, l: f64 },

    #[error("jet order {order} unsupported here (expected 1 or 2)")]
    InvalidJetOrder { order: usize },

    #[error("filtration depth {depth} invalid (minimum {min})")]
    InvalidDepth { depth: usize, min: usize },

    #[error("grid resolution {resolution} too small (minimum 2 per axis)")]
    InvalidResolution { resolution: usize },

    #[error("malformed gait: {0}")]
    MalformedGait(String),

    #[error("gait is not closed: shape at t = 0 and t = period differ by {gap:.3e}")]
    NonClosedGait { gap: f64 },

    #[error("gait loop self-intersects; holonomy area integral undefined")]
    SelfIntersectingLoop,

    #[error("too few integration steps: {steps} (minimum 8)")]
    TooFewSteps { steps: usize },

    #[error("operation requires the {required:?} variant, got {got:?}")]
    UnsupportedVariant { required: Variant, got: Variant },
}

pub type Result<T> = std::result::Result<T, Error>;
