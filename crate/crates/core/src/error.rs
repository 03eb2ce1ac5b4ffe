//! Error type shared across the crate.

use crate::element::LocalizationMode;
use crate::generator::Generator;
use crate::module::Window;
use crate::scalar::Scalar;

/// Everything that can go wrong in this crate.
///
/// All failures are *structural* (bad input, violated precondition, an
/// operator that genuinely is not invertible); there are no numerical-
/// tolerance failures because all arithmetic is exact.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A negative exponent appeared on a generator that is not inverted in
    /// the current localization mode.
    #[error("negative exponent {exponent} on generator {generator} is not allowed in mode {mode}")]
    IllegalNegativeExponent {
        generator: Generator,
        exponent: i64,
        mode: LocalizationMode,
    },

    /// Two elements living in different localizations were combined.
    #[error("localization mode mismatch: {left} vs {right}")]
    ModeMismatch {
        left: LocalizationMode,
        right: LocalizationMode,
    },

    /// An iterated adjoint action failed to vanish within the iteration cap.
    #[error("ad_{generator} did not annihilate the target within {cap} iterations")]
    NotNilpotent { generator: Generator, cap: u32 },

    /// An element with a negative exponent was asked to act on a module
    /// where that generator's action is not invertible by index shifting.
    #[error("negative power of {generator} cannot act on this module family")]
    NonInvertibleAction { generator: Generator },

    /// A generator fails to map one weight space bijectively onto another,
    /// so the requested inverse does not exist.
    #[error("{generator} is not bijective onto the weight space of weight {weight}")]
    SingularAction { generator: Generator, weight: Scalar },

    /// A windowed computation needs indices outside the supplied window.
    #[error("window {window} too small: {reason}")]
    WindowTooSmall { window: Window, reason: String },

    /// Module parameters outside the domain of the requested family.
    #[error("invalid module parameters: {0}")]
    InvalidModuleSpec(String),

    /// Text input that does not match the element grammar.
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
