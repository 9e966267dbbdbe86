use thiserror::Error;

use crate::realizer::CertificationError;
use crate::reversal::AlternatingCycle;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("id {id} out of range (size {size})")]
    InvalidId { id: usize, size: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("relations contain a cycle through element {0}")]
    CyclicRelation(usize),

    #[error("{what}: input size {got} exceeds limit {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("pair ({0}, {1}) is not incomparable")]
    NotIncomparable(usize, usize),

    #[error("pairs are not reversible: alternating cycle {0}")]
    NotReversible(AlternatingCycle),

    #[error("not a linear extension: {0}")]
    NotLinearExtension(String),

    #[error("vertex {0} has no color")]
    Uncolored(usize),

    #[error("edge {{{0}, {1}}} joins two vertices that are not in ancestor relation")]
    EliminationViolation(usize, usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("certification failed: {0}")]
    Certification(#[from] CertificationError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn check_id(id: usize, size: usize) -> Result<()> {
        if id < size {
            Ok(())
        } else {
            Err(Error::InvalidId { id, size })
        }
    }
}
