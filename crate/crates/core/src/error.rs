use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A requested accuracy could not be certified; `achieved` is the best bound reached.
    #[error("accuracy not certified: achieved {achieved:e}, requested {requested:e}")]
    Accuracy { achieved: f64, requested: f64 },

    #[error("covariance not positive definite at order {order} (variance iterate {variance:e})")]
    NotPositiveDefinite { order: usize, variance: f64 },

    #[error(
        "precision loss at order {order}: variance iterate {variance:e} fell below floor {floor:e}"
    )]
    PrecisionLoss {
        order: usize,
        variance: f64,
        floor: f64,
    },

    #[error("circulant embedding has eigenvalue {min_eigenvalue:e} below tolerance")]
    NegativeEmbedding { min_eigenvalue: f64 },

    #[error("sequence tail is identically zero; decay exponent undefined")]
    ZeroTail,

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code: 1 for invalid configuration or input, 2 for numeric
    /// certification failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Accuracy { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::PrecisionLoss { .. }
            | Error::NegativeEmbedding { .. }
            | Error::ZeroTail
            | Error::Pole(_) => 2,
            _ => 1,
        }
    }
}
