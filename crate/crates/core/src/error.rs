use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label 0 is not allowed in a carrier")]
    ZeroLabel,
    #[error("label {0} is a unit and is rejected by a strict carrier")]
    UnitLabel(i128),
    #[error("pair ({0}, {1}) does not lie in dom x cod")]
    PairOutOfCarrier(i128, i128),
    #[error("label {0} is not in the carrier")]
    LabelNotInCarrier(i128),
    #[error("subset element {0} is not in the domain")]
    SubsetOutOfDomain(i128),
    #[error("cannot compose: codomain of the inner relation differs from domain of the outer one")]
    CompositionMismatch,
    #[error("carrier of size {size} exceeds the oracle cap of {cap}")]
    OracleTooLarge { size: usize, cap: usize },
    #[error("search budget of {0} candidates exceeded")]
    SearchBudgetExceeded(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("square does not commute at component {0}")]
    CommutativityViolated(usize),
    #[error("the two factorizations factor different sinks")]
    DifferentSink,
    #[error("a sink needs at least one component")]
    EmptySink,
    #[error("unknown class `{0}`; valid kinds: all, mono, epi, iso, section, retraction, extremal_epi, bijective_function, correspondence, partial_function (join with `+`)")]
    UnknownClass(String),
}
