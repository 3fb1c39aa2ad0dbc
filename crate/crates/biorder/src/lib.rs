//! Computational machinery for building a finitely presented bi-orderable group
//! out of a right-orderable quotient: free-group word arithmetic, truncated
//! Magnus expansions with a Lyndon commutator basis, order combinators realised
//! as sign functions, a generic HNN engine with Britton reduction, and the
//! specific tower G0 -> G1 -> T0 together with its rewriting and independence
//! machinery.
//!
//! Everything is exact: integer lattices, interval arithmetic over square roots
//! of primes, and arbitrary-precision series coefficients. Batch evaluation
//! helpers run data-parallel under the default `parallel` feature and fall back
//! to sequential iteration without it.

pub mod batch;
pub mod construction;
pub mod hnn;
pub mod intmat;
pub mod magnus;
pub mod orders;
pub mod presentation;
pub mod sampling;
pub mod words;

/// Errors shared across the crate. Each variant corresponds to one failure
/// class; the CLI maps them onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed exponent in token `{0}`")]
    MalformedExponent(String),
    #[error("alphabet mismatch: `{0}` vs `{1}`")]
    AlphabetMismatch(String, String),
    #[error("generating set is not Nielsen-reduced")]
    BasisNotReduced,
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("degree cap {requested} exceeds the configured limit {limit}")]
    CapTooLarge { requested: usize, limit: usize },
    #[error("series has a nonzero term below degree {0}")]
    NotInLayer(usize),
    #[error("membership oracle returned unknown")]
    OracleUnknown,
    #[error("weight not determined within degree cap {0}")]
    Indeterminate(usize),
    #[error("truncated images differ only below the guaranteed-accuracy threshold")]
    TruncationInsufficient,
    #[error("word has nontrivial image outside the stable-letter kernel")]
    NotInT0,
    #[error("the identity has no witness conjugator")]
    EmptyWord,
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("presentation: {0}")]
    Presentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Three-valued answer of a membership oracle. `Unknown` never guesses:
/// operations that need a decision abort with [`Error::OracleUnknown`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tri::Yes => write!(f, "yes"),
            Tri::No => write!(f, "no"),
            Tri::Unknown => write!(f, "unknown"),
        }
    }
}
