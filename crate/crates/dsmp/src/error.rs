//! Error type shared by every module of the crate.

use thiserror::Error;

/// Maximum number of singletons a frame may hold. Atom sets are bitmasks
/// over the `2^n - 1` Venn regions of the free model, so `n = 7` (127
/// atoms) is the largest frame a `u128` mask can carry.
pub const MAX_SINGLETONS: usize = 7;

/// Maximum number of non-empty atoms accepted by element enumeration and
/// frame refinement.
pub const MAX_ENUMERATION_ATOMS: usize = 12;

#[derive(Debug, Error)]
pub enum Error {
    #[error("frame must have between 1 and {MAX_SINGLETONS} singletons, got {0}")]
    FrameSize(usize),

    #[error("duplicate singleton name `{0}`")]
    DuplicateName(String),

    #[error("invalid singleton name `{0}`: {1}")]
    InvalidName(String, &'static str),

    #[error("singleton `{0}` has no non-empty atom left under the integrity constraints")]
    DegenerateSingleton(String),

    #[error("element mask {0:#x} lies outside the atom range of this frame")]
    ElementOutOfRange(u128),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown singleton `{name}` at byte {pos}")]
    UnknownName { name: String, pos: usize },

    #[error("masses sum to {0} but must sum to 1 within 1e-9")]
    Normalization(f64),

    #[error("mass {0} is negative or not finite")]
    InvalidMass(f64),

    #[error("positive mass assigned to the empty element (from `{0}`)")]
    MassOnEmpty(String),

    #[error("this transformation is only defined on Shafer-model assignments")]
    ShaferRequired,

    #[error("refinement needs at most {MAX_SINGLETONS} non-empty atoms, the model has {0}")]
    RefineCapacity(usize),

    #[error("enumeration supports at most {MAX_ENUMERATION_ATOMS} non-empty atoms, the model has {0}")]
    EnumerationCapacity(usize),

    #[error("epsilon must be finite and non-negative, got {0}")]
    InvalidEpsilon(f64),

    #[error("the frame needs at least two singletons for this operation")]
    FrameTooSmall,

    #[error("probability outcome contains undefined entries")]
    UndefinedOutcome,

    #[error("information content needs at least two atoms")]
    SingleAtom,

    #[error("label scales differ (n={0} vs n={1})")]
    ScaleMismatch(u32, u32),

    #[error("division by the zero label L_0")]
    LabelDivisionByZero,

    #[error("fractional power of a negative label index")]
    NegativeLabelPower,

    #[error("label index {0} outside the admissible range 0..={1}")]
    LabelIndexRange(i64, i64),

    #[error("label scale needs at least two interior labels, got n={0}")]
    ScaleTooSmall(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
