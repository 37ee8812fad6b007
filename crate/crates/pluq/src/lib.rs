//! Rank-revealing PLUQ factorizations over word-sized prime fields.
//!
//! The central object is the *rank profile matrix* of an m x n matrix A:
//! the unique r-sub-permutation matrix whose leading submatrices all have
//! the same rank as the corresponding leading submatrices of A. This crate
//! provides:
//!
//! * an iterative Gaussian elimination engine parameterized by pivot
//!   search order (row, column, lexicographic, reverse lexicographic,
//!   product) and by the kind of permutation used on each side
//!   (transposition or rotation), together with a static table of which
//!   combinations reveal which rank profiles ([`pivoting`]);
//! * lazy elimination schedules (Crout, left-looking) and a tile-recursive
//!   factorization that reduce the number of modular reductions
//!   ([`blocked`]);
//! * post-processing of a revealing PLUQ into LEU, Bruhat, echelon and
//!   generalized Bruhat decompositions ([`decomp`]);
//! * a Monte Carlo low-rank algorithm that recovers the rank profile
//!   matrix in O((m+n) r^2) field operations ([`lowrank`]);
//! * a small laboratory for McCoy and spanning ranks over Z/nZ, where the
//!   rank profile matrix may fail to exist or be non-unique ([`ring`]);
//! * a deliberately simple brute-force oracle used to validate everything
//!   else ([`oracle`]).
//!
//! ```
//! use pluq::field::PrimeField;
//! use pluq::matrix::DenseMatrix;
//! use pluq::blocked::crout_pluq;
//!
//! let f = PrimeField::new(7).unwrap();
//! let a = DenseMatrix::from_rows(&[
//!     vec![2, 0, 3, 0],
//!     vec![1, 0, 0, 0],
//!     vec![0, 0, 4, 0],
//!     vec![0, 2, 0, 1],
//! ]);
//! let d = crout_pluq(&f, &a);
//! assert_eq!(d.rank(), 3);
//! // pivots of the rank profile matrix, sorted by row (0-based)
//! assert_eq!(d.pivoting_matrix().pivots(), &[(0, 0), (1, 2), (3, 1)]);
//! assert_eq!(d.reconstruct(&f), a);
//! ```

pub mod blocked;
pub mod decomp;
pub mod field;
pub mod io;
pub mod lowrank;
pub mod matrix;
pub mod oracle;
pub mod perm;
pub mod pivoting;
pub mod pluq;
pub mod ring;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit the word-sized arithmetic")]
    ModulusTooLarge(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("singular diagonal in triangular solve")]
    SingularDiagonal,
    #[error("sequence is not a permutation")]
    NotAPermutation,
    #[error("invalid rotation (k = {k}, i = {i}, n = {n})")]
    InvalidRotation { k: usize, i: usize, n: usize },
    #[error("two pivots share a row or column")]
    DuplicatePivot,
    #[error("matrix is not a sub-permutation matrix")]
    NotSubPermutation,
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("decomposition does not reveal the rank profile matrix")]
    NotRpmRevealing,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("extension pivot is singular")]
    SingularExtension,
    #[error("exhaustive budget exceeded: {0}")]
    BudgetExceeded(&'static str),
    #[error("no candidate satisfies the leading-rank constraints")]
    NoCandidate,
    #[error("multiple candidates satisfy the leading-rank constraints")]
    MultipleCandidates,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("strategy parse error: {0}")]
    StrategyParse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
