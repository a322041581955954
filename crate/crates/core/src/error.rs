use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A ladder needs at least two columns.
    #[error("ladder must have at least 2 columns, got {0}")]
    LadderTooSmall(usize),

    #[error("site {site} out of range for {n} sites")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("site {0} listed more than once")]
    DuplicateSite(usize),

    #[error("a singlet needs two distinct sites, got ({0}, {0})")]
    SameSite(usize),

    #[error("dimer covering is not a perfect matching of {n} sites: {reason}")]
    InvalidCovering { n: usize, reason: String },

    #[error("lattice admits no dimer covering")]
    NoCoverings,

    #[error("superposition of coverings vanishes")]
    VanishingState,

    #[error("state vector length {len} is not 2^{n}")]
    StateLength { len: usize, n: usize },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("too many sites: {n} (limit {limit})")]
    TooManySites { n: usize, limit: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("density matrix trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("expected a two-qubit density matrix, got dimension {0}")]
    NotTwoQubit(usize),

    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("Werner parameter {0} outside [-1/3, 1]")]
    WernerOutOfRange(f64),

    #[error("site {site} has {degree} neighbours; regional entanglement needs 3")]
    NotDegreeThree { site: usize, degree: usize },

    #[error("no fit available for edge ({a}, {b})")]
    MissingEdgeFit { a: usize, b: usize },

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("predicate takes the same value at both ends of [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("need at least {needed} points for this fit, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("x and y lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("fit design matrix is singular")]
    SingularFit,

    #[error("invariant check failed: {0}")]
    Invariant(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
