//! Optimal speed-scaled schedules on a single machine, and a truthful
//! cost-sharing mechanism for the energy they consume.
//!
//! A machine runs `n` jobs back to back, one at a time, starting at time 0.
//! Job `i` has a workload `w_i` (instructions) and a delay penalty `p_i`
//! (money per unit of completion time). Running job `i` for a duration
//! `ℓ_i` means running it at speed `s_i = w_i / ℓ_i`, which costs
//! `ℓ_i · s_i^α` energy for a physical exponent `α > 1`. Two costs are
//! traded off against each other:
//!
//! ```text
//! energy  E = Σ_i w_i^α ℓ_i^(1-α)
//! flow    F = Σ_i p_i C_i          C_i = completion time of job i
//! social  A = E + F
//! ```
//!
//! For a fixed execution order the social optimum has a closed form: the
//! duration of each job depends only on the total penalty of the jobs at or
//! after its rank ([`optimal_lengths`]). Minimizing over orders is therefore
//! a purely combinatorial problem, equivalent to a unit-speed scheduling
//! problem with a concave cost per job ([`problem_b_value`],
//! [`equivalence_constant`]).
//!
//! On top of the solver sits a cost-sharing game ([`mechanism`]): players
//! announce their delay penalties, the operator schedules a *fixed* order at
//! the closed-form speeds for the announced values, and charges each player
//! `α` times their marginal energy contribution minus their announced
//! weighted completion time. Announcing the true penalty is every player's
//! best response, and the collected charges cover the energy cost without
//! exceeding `(α+1)` times it. The [`lab`] module verifies those claims
//! numerically: best-response scans, derivative checks against central
//! finite differences, and a derivative-free coordinate-descent oracle for
//! the closed form itself.
//!
//! The crate is `no_std` (with `alloc`) when built without the `std`
//! feature; all float math goes through `libm`. The `parallel` feature
//! fans exhaustive order searches out over rayon threads with a
//! deterministic merge, so serial and parallel runs return identical
//! results.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod lab;
pub mod mechanism;
pub mod num;
pub mod search;
pub mod solver;
pub mod tol;
mod types;

pub use error::Error;
pub use solver::{
    cost_breakdown, energy, equivalence_constant, optimal_lengths, problem_b_value, speeds,
    weighted_flow,
};
pub use types::{CostBreakdown, Instance, Job, JobId, Order, Schedule};

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
