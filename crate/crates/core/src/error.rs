use alloc::string::String;
use core::fmt;

/// Everything that can go wrong constructing domain values or running an
/// operation on them. Inputs are validated at the boundary; the numeric
/// kernels themselves never clamp or repair.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Workload must be a finite, strictly positive real.
    InvalidWorkload(f64),
    /// Penalty (true or announced) must be a finite, strictly positive real.
    InvalidPenalty(f64),
    /// The energy exponent must be finite and greater than 1.
    InvalidAlpha(f64),
    /// An instance needs at least one job.
    EmptyInstance,
    /// Job ids must be pairwise distinct within an instance.
    DuplicateJobId(String),
    /// Rank vector is not a permutation of 0..n.
    InvalidPermutation,
    /// Execution lengths must be finite and strictly positive.
    InvalidLength(f64),
    /// Two containers that must agree on the number of jobs do not.
    DimensionMismatch { expected: usize, got: usize },
    /// Player index out of range for this instance.
    InvalidPlayer { player: usize, n: usize },
    /// Exhaustive enumeration refused: n! would exceed the configured cap.
    CapExceeded { n: usize, cap: usize },
    /// Derivative requested for a rank the announced penalty cannot reach:
    /// lengths and speeds depend only on penalties at equal or later ranks.
    RankOutsideScope { rank: usize, player_rank: usize },
    /// A scan grid must contain at least one point.
    EmptyGrid,
    /// Grid bounds must be positive and strictly increasing.
    InvalidGrid { lo: f64, hi: f64 },
    /// Step size for finite differences must be positive and small enough
    /// to keep the perturbed penalty positive.
    InvalidStep(f64),
    /// Coordinate descent did not reach the requested tolerance.
    OracleDidNotConverge { sweeps: usize },
    /// Tolerances must be finite and strictly positive.
    InvalidTolerance(f64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidWorkload(w) => write!(f, "workload must be positive and finite, got {w}"),
            Error::InvalidPenalty(p) => write!(f, "penalty must be positive and finite, got {p}"),
            Error::InvalidAlpha(a) => write!(f, "alpha must be finite and > 1, got {a}"),
            Error::EmptyInstance => write!(f, "instance must contain at least one job"),
            Error::DuplicateJobId(id) => write!(f, "duplicate job id {id:?}"),
            Error::InvalidPermutation => write!(f, "ranks do not form a permutation of 0..n"),
            Error::InvalidLength(l) => write!(f, "length must be positive and finite, got {l}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected} entries, got {got}")
            }
            Error::InvalidPlayer { player, n } => {
                write!(f, "player index {player} out of range for {n} jobs")
            }
            Error::CapExceeded { n, cap } => write!(
                f,
                "refusing exhaustive search over {n}! orders: n exceeds the cap of {cap} \
                 (raise the cap to override)"
            ),
            Error::RankOutsideScope { rank, player_rank } => write!(
                f,
                "rank {rank} is after the player's rank {player_rank}: its length and speed \
                 do not depend on this player's announcement"
            ),
            Error::EmptyGrid => write!(f, "scan grid must contain at least one point"),
            Error::InvalidGrid { lo, hi } => {
                write!(f, "grid bounds must satisfy 0 < lo <= hi, got [{lo}, {hi}]")
            }
            Error::InvalidStep(h) => write!(f, "finite-difference step must be positive, got {h}"),
            Error::OracleDidNotConverge { sweeps } => {
                write!(f, "coordinate descent did not converge within {sweeps} sweeps")
            }
            Error::InvalidTolerance(t) => {
                write!(f, "tolerance must be positive and finite, got {t}")
            }
        }
    }
}

impl core::error::Error for Error {}
