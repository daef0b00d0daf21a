use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial has a zero leading coefficient or is empty")]
    ZeroLeadingCoefficient,
    #[error("polynomial has no real root strictly greater than one")]
    NoRootAboveOne,
    #[error("polynomial is not square-free")]
    NonSquarefreePolynomial,
    #[error("elements belong to different number fields")]
    ContextMismatch,
    #[error("embedding has a conjugate of modulus one; no bound applies")]
    UnboundedEmbedding,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("Parry verdict is undetermined within the step budget")]
    UndeterminedInput,
    #[error("zero automaton is not finite within the exploration budget")]
    ZNotFiniteWithinBudget,
    #[error("search space too large: {0} candidates")]
    SearchSpaceTooLarge(u128),
    #[error("enumeration guard tripped after {0} nodes")]
    ExplosionGuard(u64),
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name, used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroLeadingCoefficient => "zero_leading_coefficient",
            Error::NoRootAboveOne => "no_root_above_one",
            Error::NonSquarefreePolynomial => "non_squarefree_polynomial",
            Error::ContextMismatch => "context_mismatch",
            Error::UnboundedEmbedding => "unbounded_embedding",
            Error::OutOfRange(_) => "out_of_range",
            Error::UndeterminedInput => "undetermined_input",
            Error::ZNotFiniteWithinBudget => "z_not_finite_within_budget",
            Error::SearchSpaceTooLarge(_) => "search_space_too_large",
            Error::ExplosionGuard(_) => "explosion_guard",
            Error::MalformedJson(_) => "malformed_json",
            Error::Parse(_) => "parse",
            Error::RootIsolation(_) => "root_isolation",
        }
    }
}
