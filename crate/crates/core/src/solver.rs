//! Cost evaluators and the closed-form length solver for a fixed order.
//!
//! With the order fixed, the social cost separates per job: its derivative
//! in `ℓ_j` is `(1-α) w_j^α ℓ_j^(-α) + S_j`, where `S_j` sums the penalties
//! of all jobs ranked at or after job `j`. The Hessian is diagonal and
//! positive, so the unique minimizer is
//!
//! ```text
//! ℓ_j = w_j ((α-1) / S_j)^(1/α)        s_j = (S_j / (α-1))^(1/α)
//! ```
//!
//! Substituting back turns the optimal social cost into a unit-speed
//! objective on the reversed order,
//!
//! ```text
//! A(π, ℓ*) = α (α-1)^((1-α)/α) · Σ_j w_j (Σ_{σ(k) ≤ σ(j)} p_k)^((α-1)/α)
//! ```
//!
//! with `σ` the reverse of `π`. [`problem_b_value`] evaluates the right-hand
//! side and [`equivalence_constant`] the leading factor, giving an
//! independent route to the same number.
//!
//! Suffix sums are accumulated backwards once per order; every power of a
//! positive real goes through `libm`.

use alloc::vec::Vec;

use crate::num::{positive_finite, powf};
use crate::types::{CostBreakdown, Instance, Order, Schedule};
use crate::{Error, Result};

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

pub(crate) fn check_penalties(penalties: &[f64], n: usize) -> Result<()> {
    check_dims(n, penalties.len())?;
    if let Some(&bad) = penalties.iter().find(|p| !positive_finite(**p)) {
        return Err(Error::InvalidPenalty(bad));
    }
    Ok(())
}

/// Penalty suffix sums along an execution sequence: `out[r]` sums the
/// penalties of the jobs at ranks `r..n`.
pub(crate) fn suffix_sums(sequence: &[usize], penalties: &[f64]) -> Vec<f64> {
    let n = sequence.len();
    let mut out = alloc::vec![0.0; n];
    let mut acc = 0.0;
    for r in (0..n).rev() {
        acc += penalties[sequence[r]];
        out[r] = acc;
    }
    out
}

/// Energy cost `E = Σ_i w_i^α ℓ_i^(1-α)` of a schedule.
pub fn energy(schedule: &Schedule, instance: &Instance) -> Result<f64> {
    check_dims(instance.n(), schedule.len())?;
    let alpha = instance.alpha();
    let mut total = 0.0;
    for (job, length) in schedule.lengths().iter().enumerate() {
        total += powf(instance.job(job).workload(), alpha) * powf(*length, 1.0 - alpha);
    }
    Ok(total)
}

/// Weighted flow time `F = Σ_i p_i C_i` of a schedule.
pub fn weighted_flow(schedule: &Schedule, penalties: &[f64]) -> Result<f64> {
    check_penalties(penalties, schedule.len())?;
    let mut clock = 0.0;
    let mut total = 0.0;
    for &job in &schedule.order().sequence() {
        clock += schedule.length(job);
        total += penalties[job] * clock;
    }
    Ok(total)
}

/// Speeds `s_i = w_i / ℓ_i`, indexed by job.
pub fn speeds(schedule: &Schedule, instance: &Instance) -> Result<Vec<f64>> {
    check_dims(instance.n(), schedule.len())?;
    Ok((0..schedule.len())
        .map(|job| instance.job(job).workload() / schedule.length(job))
        .collect())
}

/// The unique execution lengths minimizing social cost for this fixed
/// order: `ℓ_j = w_j ((α-1) / S_j)^(1/α)` with `S_j` the penalty suffix sum
/// from job j's rank on.
pub fn optimal_lengths(order: &Order, instance: &Instance, penalties: &[f64]) -> Result<Schedule> {
    check_dims(instance.n(), order.len())?;
    check_penalties(penalties, instance.n())?;
    let alpha = instance.alpha();
    let sequence = order.sequence();
    let suffix = suffix_sums(&sequence, penalties);

    let mut lengths = alloc::vec![0.0; instance.n()];
    for (rank, &job) in sequence.iter().enumerate() {
        lengths[job] =
            instance.job(job).workload() * powf((alpha - 1.0) / suffix[rank], 1.0 / alpha);
    }
    Schedule::new(order.clone(), lengths)
}

/// Unit-speed objective `B(σ) = Σ_j w_j C_j^((α-1)/α)` where job j's
/// completion time sums the processing times `p` of all jobs ranked at or
/// before it in `σ`.
pub fn problem_b_value(
    sigma: &Order,
    instance: &Instance,
    processing_times: &[f64],
) -> Result<f64> {
    check_dims(instance.n(), sigma.len())?;
    check_penalties(processing_times, instance.n())?;
    let exponent = (instance.alpha() - 1.0) / instance.alpha();
    let mut clock = 0.0;
    let mut total = 0.0;
    for &job in &sigma.sequence() {
        clock += processing_times[job];
        total += instance.job(job).workload() * powf(clock, exponent);
    }
    Ok(total)
}

/// Conversion factor `α (α-1)^((1-α)/α)` between the unit-speed objective
/// of the reversed order and the optimal social cost.
pub fn equivalence_constant(alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(alpha * powf(alpha - 1.0, (1.0 - alpha) / alpha))
}

/// Solves the closed form for this order and reports energy, flow and
/// social cost. At the optimum the split is fixed: flow = (α−1)·energy,
/// so social = α·energy.
pub fn cost_breakdown(
    order: &Order,
    instance: &Instance,
    penalties: &[f64],
) -> Result<CostBreakdown> {
    let schedule = optimal_lengths(order, instance, penalties)?;
    let energy = energy(&schedule, instance)?;
    let flow = weighted_flow(&schedule, penalties)?;
    Ok(CostBreakdown::new(energy, flow))
}

/// Fused evaluation of the optimal social cost for a sequence of job
/// indices, reusing one scratch buffer. Same value as [`cost_breakdown`]
/// up to rounding; used by the enumeration inner loop.
pub(crate) fn social_cost_for_sequence(
    sequence: &[usize],
    workloads: &[f64],
    penalties: &[f64],
    alpha: f64,
    suffix_scratch: &mut Vec<f64>,
) -> f64 {
    let n = sequence.len();
    suffix_scratch.clear();
    suffix_scratch.resize(n, 0.0);
    let mut acc = 0.0;
    for r in (0..n).rev() {
        acc += penalties[sequence[r]];
        suffix_scratch[r] = acc;
    }

    let mut energy = 0.0;
    let mut flow = 0.0;
    let mut clock = 0.0;
    for (rank, &job) in sequence.iter().enumerate() {
        let w = workloads[job];
        let length = w * powf((alpha - 1.0) / suffix_scratch[rank], 1.0 / alpha);
        energy += powf(w, alpha) * powf(length, 1.0 - alpha);
        clock += length;
        flow += penalties[job] * clock;
    }
    energy + flow
}
