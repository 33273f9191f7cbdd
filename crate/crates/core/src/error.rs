//! Error types shared across the library.

use thiserror::Error;

/// Errors raised by algebra construction and series operations.
///
/// Undefined products are values ([`crate::algebra::PartialProduct::Undefined`]),
/// never errors; errors signal misuse of an operation or a violated bound.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// Series built over different carriers were combined.
    #[error("series belong to different carriers (ids {left} and {right})")]
    MixedCarriers { left: u64, right: u64 },

    /// A series has the wrong length for the given carrier.
    #[error("series length {len} does not match carrier size {size}")]
    LengthMismatch { len: usize, size: usize },

    /// An operation needing a unit was applied where none exists.
    #[error("missing unit: {0}")]
    MissingUnit(String),

    /// Kleene iteration failed to stabilize within the cap.
    #[error("star did not stabilize within {cap} iterations")]
    StarDivergence { cap: usize },

    /// `wand` was requested over a non-Boolean target.
    #[error("wand requires the Boolean target quantale")]
    NonBooleanTarget,

    /// `convolve` was called on a partial target; use `convolve_partial`.
    #[error("target multiplication is partial; use convolve_partial")]
    PartialTarget,

    /// A series over a total target contained an Undefined value.
    #[error("undefined series value at element {element} over a total target")]
    UndefinedValue { element: String },

    /// `frame_check` was applied to a transformer that is not local.
    #[error("frame rule requires a local transformer")]
    NonLocalTransformer,

    /// Matrix dimensions do not agree.
    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Instance parameters failed validation.
    #[error("invalid instance specification: {0}")]
    InvalidSpec(String),

    /// A derived structure would exceed the configured memory bound.
    #[error("size bound exceeded: {what} would have {size} elements (bound {bound})")]
    SizeBound {
        what: String,
        size: usize,
        bound: usize,
    },
}
