use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ζ ↦ ζ^{k} is not an automorphism of Q(ζ_{conductor})")]
    InvalidAutomorphism { k: i64, conductor: u32 },

    #[error("group closure exceeded {limit} elements")]
    GroupTooLarge { limit: usize },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("{p} is not a prime divisor of the group order {order}")]
    InvalidPrime { p: u64, order: usize },

    #[error("characters belong to different groups")]
    InvalidPair,

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("inconsistent character: {0}")]
    InconsistentCharacter(String),

    #[error("character table computation failed: {0}")]
    TableFailure(String),

    #[error("generator images do not define a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
