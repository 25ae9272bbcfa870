use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the range on which an operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical tuple that no smooth surface can carry.
    #[error("invalid invariants: {0}")]
    InvalidInvariants(String),

    /// The Gram matrix has zero determinant.
    #[error("degenerate lattice: Gram determinant is zero")]
    Degenerate,

    #[error("unsupported quadric dimension {0}; only 3 and 4 are classified")]
    UnsupportedDimension(i64),

    /// A recomputed value disagreed with the value the derivation requires.
    #[error("consistency check `{claim}` failed: {detail}")]
    Consistency { claim: String, detail: String },

    #[error("integer overflow while computing {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn consistency(claim: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Consistency {
            claim: claim.into(),
            detail: detail.into(),
        }
    }
}
