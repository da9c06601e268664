//! The energy cost-sharing mechanism.
//!
//! The operator fixes an order `π` up front, independent of what anyone
//! announces. Players announce penalties `p̂`; the machine then runs the
//! closed-form schedule for `(π, p̂)` and charges player `i`
//!
//! ```text
//! b_i = α (OPT_π(p̂) - OPT_π(p̂_-i)) - p̂_i C_i
//! ```
//!
//! where `OPT_π(p̂)` is the energy of that schedule and `OPT_π(p̂_-i)` the
//! energy after deleting job `i` (same relative order, lengths re-solved).
//! Player `i` privately suffers `p_i C_i + b_i` with their *true* penalty,
//! so announcing the truth is their unique best response, and for two or
//! more players the collected charges sit between the energy cost and
//! `(α+1)` times it, with every `b_i` strictly above the energy of job `i`
//! itself.
//!
//! Violations of those bands are never clamped: they are reported as
//! falsification events on the outcome, since the point of computing them
//! is to check the theory.

use alloc::vec::Vec;
use core::fmt;

use crate::num::powf;
use crate::solver::{check_penalties, energy, optimal_lengths, suffix_sums};
use crate::types::{Instance, JobId, Order, Schedule};
use crate::{Error, Result};

/// A theory check that failed on a concrete outcome. Carried as data, not
/// panics, because producing these diagnostics is part of the job.
#[derive(Debug, Clone, PartialEq)]
pub enum Falsification {
    /// Σ b_i fell below the energy cost (n ≥ 2).
    BudgetBelowEnergy { ratio: f64 },
    /// Σ b_i exceeded (α+1) times the energy cost (n ≥ 2).
    BudgetAboveBound { ratio: f64, bound: f64 },
    /// A charge failed to strictly exceed that player's own energy (n ≥ 2).
    ChargeNotAboveShare { player: usize, charge: f64, share: f64 },
}

impl fmt::Display for Falsification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Falsification::BudgetBelowEnergy { ratio } => {
                write!(f, "total charge covers only {ratio} of the energy cost (expected >= 1)")
            }
            Falsification::BudgetAboveBound { ratio, bound } => {
                write!(f, "total charge is {ratio} times the energy cost (expected <= {bound})")
            }
            Falsification::ChargeNotAboveShare { player, charge, share } => write!(
                f,
                "player {player} pays {charge}, not strictly above their energy share {share}"
            ),
        }
    }
}

/// Everything the mechanism decides for one announcement profile.
#[derive(Debug, Clone, PartialEq)]
pub struct MechanismOutcome {
    pub order: Order,
    /// Closed-form schedule at the announced penalties.
    pub schedule: Schedule,
    /// Charge `b_i` per player, indexed by job.
    pub charges: Vec<f64>,
    pub completion_times: Vec<f64>,
    /// Energy `ℓ_i s_i^α` consumed by each player's own job.
    pub energy_shares: Vec<f64>,
    pub total_energy: f64,
    /// Σ b_i / total_energy.
    pub budget_ratio: f64,
    /// Single-player outcomes are computed but the budget guarantees are
    /// stated for two or more players only.
    pub degenerate: bool,
    pub falsifications: Vec<Falsification>,
}

impl MechanismOutcome {
    pub fn total_charge(&self) -> f64 {
        self.charges.iter().sum()
    }
}

/// One player's private view of an outcome: what they announced and what
/// the schedule plus charge costs them at their true penalty.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerView {
    pub player: JobId,
    pub true_penalty: f64,
    pub announced_penalty: f64,
    /// `p_i C_i + b_i`, true penalty on the delay term, announced one
    /// inside the charge.
    pub penalty_total: f64,
}

fn check_player(player: usize, n: usize) -> Result<()> {
    if player >= n {
        return Err(Error::InvalidPlayer { player, n });
    }
    Ok(())
}

/// Energy of the closed-form schedule at the announced penalties.
pub fn opt_energy(order: &Order, instance: &Instance, announced: &[f64]) -> Result<f64> {
    let schedule = optimal_lengths(order, instance, announced)?;
    energy(&schedule, instance)
}

/// Closed-form lengths after deleting one job, as `(job, length)` pairs in
/// execution order. Jobs ranked after the deleted one keep their lengths:
/// their penalty suffix sums never contained the deleted announcement.
pub fn lengths_excluding(
    order: &Order,
    instance: &Instance,
    announced: &[f64],
    excluded: usize,
) -> Result<Vec<(usize, f64)>> {
    let n = instance.n();
    check_player(excluded, n)?;
    check_penalties(announced, n)?;
    if order.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: order.len() });
    }
    let alpha = instance.alpha();
    let sequence: Vec<usize> =
        order.sequence().into_iter().filter(|&job| job != excluded).collect();
    let suffix = suffix_sums(&sequence, announced);
    Ok(sequence
        .iter()
        .enumerate()
        .map(|(rank, &job)| {
            let length =
                instance.job(job).workload() * powf((alpha - 1.0) / suffix[rank], 1.0 / alpha);
            (job, length)
        })
        .collect())
}

/// Energy of the re-solved schedule with one player deleted; zero for a
/// single-player instance.
pub fn opt_energy_excluding(
    order: &Order,
    instance: &Instance,
    announced: &[f64],
    excluded: usize,
) -> Result<f64> {
    let remaining = lengths_excluding(order, instance, announced, excluded)?;
    let alpha = instance.alpha();
    Ok(remaining
        .iter()
        .map(|&(job, length)| {
            powf(instance.job(job).workload(), alpha) * powf(length, 1.0 - alpha)
        })
        .sum())
}

/// The charge to one player: α times their marginal energy contribution
/// minus their announced weighted completion time.
pub fn cost_share(
    order: &Order,
    instance: &Instance,
    announced: &[f64],
    player: usize,
) -> Result<f64> {
    check_player(player, instance.n())?;
    let schedule = optimal_lengths(order, instance, announced)?;
    let full = energy(&schedule, instance)?;
    let without = opt_energy_excluding(order, instance, announced, player)?;
    let completion = schedule.completion_times()[player];
    Ok(instance.alpha() * (full - without) - announced[player] * completion)
}

/// Runs the whole mechanism for one announcement profile: schedule, every
/// charge, per-player energy shares and the budget ratio, plus any
/// falsification events observed against the n ≥ 2 guarantees.
pub fn run_mechanism(
    order: &Order,
    instance: &Instance,
    announced: &[f64],
) -> Result<MechanismOutcome> {
    let n = instance.n();
    let alpha = instance.alpha();
    let schedule = optimal_lengths(order, instance, announced)?;
    let completion_times = schedule.completion_times();
    let total_energy = energy(&schedule, instance)?;

    let energy_shares: Vec<f64> = (0..n)
        .map(|job| {
            powf(instance.job(job).workload(), alpha) * powf(schedule.length(job), 1.0 - alpha)
        })
        .collect();

    let charges: Vec<f64> = (0..n)
        .map(|player| {
            opt_energy_excluding(order, instance, announced, player).map(|without| {
                alpha * (total_energy - without) - announced[player] * completion_times[player]
            })
        })
        .collect::<Result<_>>()?;

    let total_charge: f64 = charges.iter().sum();
    let budget_ratio = total_charge / total_energy;
    let degenerate = n == 1;

    let mut falsifications = Vec::new();
    if !degenerate {
        if budget_ratio < 1.0 {
            falsifications.push(Falsification::BudgetBelowEnergy { ratio: budget_ratio });
        }
        let bound = alpha + 1.0;
        if budget_ratio > bound {
            falsifications.push(Falsification::BudgetAboveBound { ratio: budget_ratio, bound });
        }
        for player in 0..n {
            if charges[player] <= energy_shares[player] {
                falsifications.push(Falsification::ChargeNotAboveShare {
                    player,
                    charge: charges[player],
                    share: energy_shares[player],
                });
            }
        }
    }

    Ok(MechanismOutcome {
        order: order.clone(),
        schedule,
        charges,
        completion_times,
        energy_shares,
        total_energy,
        budget_ratio,
        degenerate,
        falsifications,
    })
}

/// What announcing `announced[player]` actually costs this player:
/// `p_i C_i + b_i` with the true penalty on the delay term and everything
/// else evaluated at the announcements.
pub fn player_penalty(
    order: &Order,
    instance: &Instance,
    true_penalties: &[f64],
    announced: &[f64],
    player: usize,
) -> Result<f64> {
    check_penalties(true_penalties, instance.n())?;
    check_player(player, instance.n())?;
    let schedule = optimal_lengths(order, instance, announced)?;
    let completion = schedule.completion_times()[player];
    let charge = cost_share(order, instance, announced, player)?;
    Ok(true_penalties[player] * completion + charge)
}

/// Bundles one player's announcement and realized total penalty.
pub fn player_view(
    order: &Order,
    instance: &Instance,
    true_penalties: &[f64],
    announced: &[f64],
    player: usize,
) -> Result<PlayerView> {
    let penalty_total = player_penalty(order, instance, true_penalties, announced, player)?;
    Ok(PlayerView {
        player: instance.job(player).id().clone(),
        true_penalty: true_penalties[player],
        announced_penalty: announced[player],
        penalty_total,
    })
}
