use std::fmt;

/// Which bound of a pair failed to exist when building a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Meet => f.write_str("greatest lower bound"),
            Bound::Join => f.write_str("least upper bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a digraph on {count} vertices")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("{what} needs at most {limit} vertices, got {requested}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("resource guard: {what} is limited to {limit}, requested {requested}")]
    ResourceGuard {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("not a partial order: {0}")]
    NotAPoset(String),

    #[error("not a preorder: the digraph must be reflexive and transitive")]
    NotAPreorder,

    #[error("not a lattice: elements {a} and {b} have no {bound}")]
    NotALattice { a: usize, b: usize, bound: Bound },

    #[error("lattice is not distributive")]
    NotDistributive,

    #[error("the digraph has no proper terminal set")]
    EmptyLattice,

    #[error("the digraph has no non-empty independent set")]
    NoIndependentSets,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("removing the interval family leaves no elements")]
    EmptySublattice,

    #[error("not a sublattice: {0}")]
    NotASublattice(String),

    #[error("the sublattice is not tight; use the condensation-based correspondence instead")]
    NotTight,

    #[error("invalid chain decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid chain cover: {0}")]
    InvalidCover(String),

    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),

    #[error("independent-set order is not antisymmetric: sets {0} and {1} are mutually related")]
    NotAntisymmetric(usize, usize),

    #[error("digraph does not contain the base graph: {0}")]
    MissingBaseArcs(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
