use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown synset `{0}`")]
    UnknownSynset(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed taxonomy: {0}")]
    Structure(String),

    #[error("synset `{from}` references missing synset `{to}`")]
    Integrity { from: String, to: String },

    #[error("model cannot be used: {0}")]
    UnusableModel(String),

    #[error("invalid combination: {0}")]
    InvalidCombination(String),

    #[error("out of vocabulary: `{0}`")]
    OutOfVocabulary(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("{}: {source}", path.display())]
    File {
        path: std::path::PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
