use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring specification: {0}")]
    InvalidRing(String),
    #[error("negative exponent for non-invertible generator `{0}`")]
    InvalidExponent(String),
    #[error("generator `{0}` has no image under the ring homomorphism")]
    UnmappedGenerator(String),
    #[error("image of invertible generator `{0}` is not a unit")]
    NonUnitImage(String),
    #[error("ring or series context mismatch: {0}")]
    ContextMismatch(String),
    #[error("substituted series has a nonzero constant term")]
    NotTopologicallyNilpotent,
    #[error("series is not reversible: linear coefficient is not a unit")]
    NotReversible,
    #[error("exact division failed{}", .0.as_deref().map(|s| format!(": {s}")).unwrap_or_default())]
    NotDivisible(Option<String>),
    #[error("not a formal group law: {0}")]
    NotAGroupLaw(String),
    #[error("Weyl group too large: {size} elements exceeds bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("formal group ring is not regular: x_{0} has zero linear part")]
    RegularityFailure(String),
    #[error("input is not invariant under the parabolic subgroup")]
    NotInvariant,
    #[error("morphism is not between laws of additive type")]
    NotAdditiveType,
    #[error("degree of inhomogeneous input is ambiguous; supply it explicitly")]
    AmbiguousDegree,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn not_divisible(msg: impl Into<String>) -> Self {
        Error::NotDivisible(Some(msg.into()))
    }
}
