use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("word is not a member of the subgroup")]
    NotAMember,

    #[error("generators do not form a free basis (folded rank {rank}, {len} generators)")]
    NotABasis { rank: usize, len: usize },

    #[error("domain subgroup has infinite index")]
    InfiniteIndexDomain,

    #[error("image subgroup has infinite index")]
    InfiniteIndexImage,

    #[error("map is not injective (image rank {image_rank} < domain rank {domain_rank})")]
    NotInjective {
        domain_rank: usize,
        image_rank: usize,
    },

    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("word is not in the domain")]
    NotInDomain,

    #[error("subgroup is not contained in the domain")]
    NotASubgroupOfDomain,

    #[error("level {level} exceeds the maximum level {max}")]
    LevelTooLarge { level: usize, max: usize },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("group order {0} is too large")]
    OrderTooLarge(usize),

    #[error("generator correspondence does not extend to an isomorphism: {0}")]
    NotIsomorphic(String),

    #[error("not subgroups of a materialized level: {0}")]
    NotSubgroups(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
