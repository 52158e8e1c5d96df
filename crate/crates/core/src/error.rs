use thiserror::Error;

/// Every failure the library can report.
///
/// Variants marked as internal contradictions can only fire when invalid data
/// slipped past a validation step or the arithmetic itself is broken; they are
/// self-tests, not expected outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exact arithmetic
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus must have degree at least 1")]
    DegreeTooSmall,
    #[error("modulus is not squarefree")]
    NotSquarefree,
    #[error("modulus is not irreducible over the base field")]
    NotIrreducible,
    #[error("characteristic mismatch: {0}")]
    CharacteristicMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    // Galois groups
    #[error("operation requires a finite base field")]
    NotFiniteBase,
    #[error("image is not a root of the modulus")]
    NotARoot,
    #[error("map `{0}` is not invertible")]
    NotInvertible(String),
    #[error("automorphism list does not close to a group of order at most the degree")]
    GroupClosureFailed,
    #[error("twisted group algebra map has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("group of order {order} is not the full automorphism group of a degree-{degree} extension")]
    NotGalois { order: usize, degree: usize },
    #[error("unknown group element `{0}`")]
    UnknownElement(String),

    // semilinear actions
    #[error("cocycle condition fails for ({sigma}, {tau})")]
    CocycleViolation { sigma: String, tau: String },
    #[error("identity element does not act trivially")]
    IdentityNotTrivial,
    #[error("matrix for `{0}` is singular")]
    SingularMatrix(String),
    #[error("subspace is not stable under `{sigma}` (witness {witness})")]
    NotStable { sigma: String, witness: String },

    // polynomials
    #[error("Groebner basis computation exceeded its budget of {0} reduction steps")]
    BudgetExceeded(u64),
    #[error("enumeration of {0} candidates exceeds the configured budget")]
    EnumerationBudgetExceeded(u128),

    // affine descent
    #[error("`{sigma}` does not preserve the relations (generator {generator})")]
    NotWellDefined { sigma: String, generator: String },
    #[error("cocycle condition fails for ({sigma}, {tau}) on variable {variable}")]
    DatumCocycleViolation {
        sigma: String,
        tau: String,
        variable: String,
    },
    #[error("splitting isomorphism check failed: {0}")]
    SplittingCheckFailed(String),
    #[error("morphism is not equivariant under `{sigma}` on variable {variable}")]
    NotEquivariant { sigma: String, variable: String },
    #[error("transported morphism has coefficients outside the base field")]
    TransportNotRational,
    #[error("condition (a) fails for embeddings ({rho}, {sigma}, {tau})")]
    ConditionAViolated { rho: usize, sigma: usize, tau: usize },
    #[error("condition (b) fails for embeddings ({sigma}, {tau}) and automorphism {omega}")]
    ConditionBViolated {
        sigma: usize,
        tau: usize,
        omega: String,
    },

    // Weil restriction
    #[error("extension is not separable: {0}")]
    NotSeparable(String),
    #[error("universal property mismatch at {0}")]
    MismatchFound(String),
    #[error("point count mismatch: {left} != {right}")]
    CountMismatch { left: u128, right: u128 },

    // faithfully flat descent
    #[error("target algebra is zero")]
    ZeroTarget,
    #[error("supplied basis is not linearly independent over the source")]
    BasisNotIndependent,
    #[error("supplied basis does not span the target over the source")]
    BasisNotSpanning,
    #[error("tensor power of dimension {dim} exceeds the cap of {cap}")]
    DimensionCapExceeded { dim: u128, cap: u128 },
    #[error("complex is not exact in degree {0}")]
    NotExact(usize),
    #[error("map is not faithfully flat")]
    NotFaithfullyFlat,
    #[error("descent datum is not linear over the double tensor product")]
    NotBilinearCompatible,
    #[error("descent datum fails the cocycle identity at basis element {0}")]
    CocycleFailed(usize),
    #[error("module reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<crate::poly::ParseError> for Error {
    fn from(e: crate::poly::ParseError) -> Self {
        Error::Parse {
            offset: e.offset,
            message: e.message,
        }
    }
}
