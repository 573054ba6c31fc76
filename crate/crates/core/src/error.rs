use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}:{line}: expected {expected} vector components, found {found}")]
    InconsistentDimension {
        path: PathBuf,
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("vector dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("zero-norm vector{}", .0.as_ref().map(|t| format!(" for {t:?}")).unwrap_or_default())]
    ZeroNorm(Option<String>),

    #[error("token {0:?} has no vector in the embedding table")]
    MissingVector(String),

    #[error("empty antonym pair list")]
    EmptyPairList,

    #[error("duplicate frame id {0:?}")]
    DuplicateFrame(String),

    #[error("unknown frame {0:?}")]
    UnknownFrame(String),

    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("empty corpus view")]
    EmptyView,

    #[error("no document carries group {0:?}")]
    UnknownGroup(String),

    #[error("no topic word resolves in the embedding table")]
    NoTopicWords,

    #[error("bootstrap sample count must be at least 1")]
    NoBootstrapSamples,

    #[error("perplexity provider failed on {sentence:?}: {message}")]
    Provider { sentence: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
