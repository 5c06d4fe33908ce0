use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the group, G-set, frame, bundle and transport operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} of size {size} exceeds the enumeration bound {limit}")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("map is not a group homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("groups do not match: {0}")]
    GroupMismatch(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("the G-set is not free")]
    NotFree,
    #[error("points {0} and {1} lie in different orbits")]
    NoQuotient(usize, usize),
    #[error("tuple is not a basis of the G-set")]
    NotBasis,
    #[error("tuple is not a frame of this frame space")]
    NotInFrameSpace,
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("induced orbit map is not a bijection")]
    OrbitObstruction,
    #[error("map is not an automorphism of the G-set: {0}")]
    NotGSetAutomorphism(String),
    #[error("automorphism does not preserve orbits")]
    NotInAutQ,
    #[error("bijection is not a group automorphism")]
    NotGroupAutomorphism,
    #[error("bundle mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("loop letter {letter} out of range for {loops} loops")]
    LetterOutOfRange { letter: i64, loops: usize },
    #[error("symmetric group degree {0} is below 3")]
    TooSmall(usize),
    #[error("action of the symmetric group is not faithful")]
    NotFaithful,
    #[error("point stabilizer of {0} has no unique fixed point")]
    NoFixedPoint(usize),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("preimage sizes are not uniform")]
    NonUniformFibers,
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
}
