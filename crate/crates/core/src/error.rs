use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex set does not fit the carrier graph: {0}")]
    InvalidSet(String),
    #[error("size cap exceeded: {requested} vertices requested, limit is {limit}")]
    SizeCap { requested: usize, limit: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("flat enumeration exceeded the cap of {0}")]
    FlatCountExceeded(usize),
    #[error("search node budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
