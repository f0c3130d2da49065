use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected m = {expected}, found m = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension m = {0} (supported: 1..=4)")]
    UnsupportedDimension(usize),

    #[error("para-vector has zero norm and is not invertible")]
    ZeroParaVector,

    #[error("unsupported Bessel order k = {twice_k}/2")]
    UnsupportedOrder { twice_k: i32 },

    #[error("zero frequency: the direction xi/|xi| is undefined")]
    ZeroFrequency,

    #[error("strip condition violated: {0}")]
    StripViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("multiplier overflow: e^(|x0| |xi|) exceeds f64 range (|x0| = {x0}, max |xi| on grid = {max_xi})")]
    MultiplierOverflow { x0: f64, max_xi: f64 },

    #[error("spectrum not supported in B(0, {radius}): relative mass outside the ball = {outside_mass:e}")]
    SupportViolation { radius: f64, outside_mass: f64 },

    #[error("inadmissible atom: {0}")]
    InadmissibleAtom(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
