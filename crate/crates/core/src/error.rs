use thiserror::Error;

/// Errors produced by the library.
///
/// `Internal` deserves a note: the construction routines re-verify, at every
/// step, facts that are theorems about finite rooted digraphs (step digraphs
/// staying large, recombined path systems staying disjoint, and so on). When
/// such a check fails it means the implementation is wrong, not the input;
/// the error names the violated property so the failure is diagnosable.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("self-loop on `{0}` is not allowed")]
    SelfLoop(String),

    #[error("edge `{tail}` -> `{root}` points into the root")]
    EdgeIntoRoot { tail: String, root: String },

    #[error("digraphs are over different vertex sets")]
    VertexFamilyMismatch,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} exceeds the configured bound ({actual} > {limit})")]
    BoundExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("internal invariant violated [{property}]: {detail}")]
    Internal {
        property: &'static str,
        detail: String,
    },

    #[error("certificate verification failed: {0}")]
    CertificateInvalid(String),

    #[error("malformed document: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn internal(property: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal {
            property,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        Error::InvalidInput(detail.into())
    }
}
