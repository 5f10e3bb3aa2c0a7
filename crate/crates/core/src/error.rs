use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid atom name {0:?}")]
    InvalidAtomName(String),
    #[error("atom {0:?} declared twice")]
    DuplicateAtomName(String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("atom index {index} out of range for {n_atoms} atoms")]
    AtomOutOfRange { index: usize, n_atoms: usize },
    #[error("atom {0} appears twice in a clause body")]
    DuplicateBodyAtom(usize),
    #[error("head atom {0} also appears in the body")]
    HeadInBody(usize),
    #[error("clause has no literals")]
    EmptyClause,
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{what}: {n} atoms exceeds the limit of {limit}")]
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("connection key must have 1 to 3 indices, got {0}")]
    KeyArity(usize),
    #[error("connection key {0:?} repeats an index (diagonal entries are always zero)")]
    DiagonalWrite(alloc::vec::Vec<usize>),
    #[error("clause has {literals} literals; at most 3 are supported")]
    UnsupportedOrder { literals: usize },
    #[error("clause has no head")]
    NotDefinite,
    #[error("event table has no records")]
    NoRecords,
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}
