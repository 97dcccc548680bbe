use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A spectrum model violates one or more of its invariants.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// The engine does not apply to the requested model or shift policy.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The partition sum does not converge for this spectrum.
    #[error("divergent partition sum: {0}")]
    Divergent(String),

    #[error("tail bound {achieved:e} still above tolerance after {terms} terms")]
    Truncation { achieved: f64, terms: u64 },

    /// A closed form hit (or came within 1e-12 of) a zero of its denominator.
    #[error("closed form singular at mubar = {mubar}: denominator = {denominator:e} (root near {root:.6})")]
    Singular {
        mubar: f64,
        denominator: f64,
        root: f64,
    },

    /// A closed form evaluated to a value with no thermodynamic meaning,
    /// e.g. a non-positive partition function.
    #[error("non-physical closed-form value at mubar = {mubar}: {what}")]
    NonPhysical { mubar: f64, what: String },
}

impl Error {
    /// True for failures of the numerics themselves (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Divergent(_)
                | Error::Truncation { .. }
                | Error::Singular { .. }
                | Error::NonPhysical { .. }
        )
    }
}
