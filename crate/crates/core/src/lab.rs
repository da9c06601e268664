//! Numerical verification lab: best-response scans, derivative checks and
//! an independent minimizer for the closed-form lengths.
//!
//! Nothing in here trusts the solver's algebra. The scan evaluates a
//! player's realized penalty across a grid of announcements and just looks
//! at the shape. The derivative checks compare the two analytic partials
//! that the truthfulness argument rests on,
//!
//! ```text
//! ∂(s_k^α ℓ_k)/∂p̂_i = ℓ_k / α          ∂ℓ_k/∂p̂_i < 0       (rank k ≤ rank i)
//! ```
//!
//! against central finite differences. And [`numeric_oracle_lengths`]
//! minimizes the social cost directly — cyclic golden-section search per
//! coordinate, seeded at unit speed — so the closed form can be checked
//! against something that never saw it.

use alloc::vec::Vec;

use crate::mechanism::player_penalty;
use crate::num::{fabs, positive_finite, powf};
use crate::solver::{check_penalties, suffix_sums};
use crate::types::{Instance, JobId, Order, Schedule};
use crate::{tol, Error, Result};

/// Points in the default announcement grid.
pub const DEFAULT_GRID_POINTS: usize = 41;

/// Default grid spans `[p/4, 4p]` around the true penalty.
pub const DEFAULT_GRID_SPAN: f64 = 4.0;

/// Sweep cap for the coordinate-descent oracle.
pub const ORACLE_MAX_SWEEPS: usize = 100_000;

/// A geometric grid of `points` values from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::EmptyGrid);
    }
    if !positive_finite(lo) || !positive_finite(hi) || lo > hi || (lo == hi && points > 1) {
        return Err(Error::InvalidGrid { lo, hi });
    }
    if points == 1 {
        return Ok(alloc::vec![lo]);
    }
    let ratio = powf(hi / lo, 1.0 / (points - 1) as f64);
    let grid: Vec<f64> = (0..points).map(|j| lo * powf(ratio, j as f64)).collect();
    check_grid(&grid)?;
    Ok(grid)
}

/// The default scan grid around a true penalty.
pub fn default_grid(true_penalty: f64) -> Result<Vec<f64>> {
    geometric_grid(
        true_penalty / DEFAULT_GRID_SPAN,
        true_penalty * DEFAULT_GRID_SPAN,
        DEFAULT_GRID_POINTS,
    )
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    for pair in grid.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::InvalidGrid { lo: pair[0], hi: pair[1] });
        }
    }
    if let Some(&bad) = grid.iter().find(|g| !positive_finite(**g)) {
        return Err(Error::InvalidPenalty(bad));
    }
    Ok(())
}

/// A player's realized penalty swept across announcement values.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub player: JobId,
    /// Announced values, strictly increasing.
    pub grid: Vec<f64>,
    /// Realized total penalty at each grid point.
    pub penalties: Vec<f64>,
    /// Index of the smallest scanned penalty (first on exact ties).
    pub argmin_index: usize,
    /// Grid value at that index.
    pub argmin_value: f64,
    /// The player's true penalty.
    pub true_value: f64,
    /// False when the grid does not bracket the true penalty; the scan
    /// still runs, but the argmin-at-truth prediction no longer applies.
    pub covers_true: bool,
}

/// Sweeps one player's announcement over `grid` with every other player
/// announcing truthfully.
pub fn best_response_scan(
    order: &Order,
    instance: &Instance,
    true_penalties: &[f64],
    player: usize,
    grid: &[f64],
) -> Result<ScanReport> {
    best_response_scan_vs(order, instance, true_penalties, true_penalties, player, grid)
}

/// Same sweep against an arbitrary fixed profile of opponent
/// announcements. `opponent_announcements[player]` is ignored.
pub fn best_response_scan_vs(
    order: &Order,
    instance: &Instance,
    true_penalties: &[f64],
    opponent_announcements: &[f64],
    player: usize,
    grid: &[f64],
) -> Result<ScanReport> {
    let n = instance.n();
    if player >= n {
        return Err(Error::InvalidPlayer { player, n });
    }
    check_penalties(true_penalties, n)?;
    check_penalties(opponent_announcements, n)?;
    check_grid(grid)?;

    let mut announced = opponent_announcements.to_vec();
    let mut penalties = Vec::with_capacity(grid.len());
    for &value in grid {
        announced[player] = value;
        penalties.push(player_penalty(order, instance, true_penalties, &announced, player)?);
    }

    let mut argmin_index = 0;
    for (i, &p) in penalties.iter().enumerate() {
        if p < penalties[argmin_index] {
            argmin_index = i;
        }
    }
    let true_value = true_penalties[player];
    Ok(ScanReport {
        player: instance.job(player).id().clone(),
        argmin_value: grid[argmin_index],
        argmin_index,
        true_value,
        covers_true: grid[0] <= true_value && true_value <= grid[grid.len() - 1],
        grid: grid.to_vec(),
        penalties,
    })
}

/// An analytic partial derivative next to its finite-difference estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeCheck {
    /// Rank of the job whose quantity is differentiated.
    pub rank: usize,
    /// Player whose announcement is perturbed.
    pub player: usize,
    pub analytic: f64,
    pub finite_difference: f64,
    /// `|analytic - fd| / max(|analytic|, floor)` with a 1e-12 floor.
    pub relative_error: f64,
}

struct DerivativeSetup {
    job_at_rank: usize,
    base: f64,
    step: f64,
}

fn derivative_setup(
    order: &Order,
    instance: &Instance,
    announced: &[f64],
    player: usize,
    rank: usize,
    step: f64,
) -> Result<DerivativeSetup> {
    let n = instance.n();
    if player >= n {
        return Err(Error::InvalidPlayer { player, n });
    }
    check_penalties(announced, n)?;
    if order.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: order.len() });
    }
    if rank >= n || rank > order.rank_of(player) {
        return Err(Error::RankOutsideScope { rank, player_rank: order.rank_of(player) });
    }
    if !positive_finite(step) || announced[player] - step <= 0.0 {
        return Err(Error::InvalidStep(step));
    }
    Ok(DerivativeSetup { job_at_rank: order.sequence()[rank], base: announced[player], step })
}

fn central_difference<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

fn finish(rank: usize, player: usize, analytic: f64, fd: f64) -> DerivativeCheck {
    let relative_error = fabs(analytic - fd) / fabs(analytic).max(tol::DERIVATIVE_FLOOR);
    DerivativeCheck { rank, player, analytic, finite_difference: fd, relative_error }
}

/// Checks `∂(s_k^α ℓ_k)/∂p̂_i = ℓ_k / α` for the job at rank `k`, which must
/// not come after player `i` in the order.
pub fn check_lemma1_energy_derivative(
    order: &Order,
    instance: &Instance,
    announced: &[f64],
    player: usize,
    rank: usize,
    step: f64,
) -> Result<DerivativeCheck> {
    let setup = derivative_setup(order, instance, announced, player, rank, step)?;
    let alpha = instance.alpha();
    let job = setup.job_at_rank;

    let schedule = crate::solver::optimal_lengths(order, instance, announced)?;
    let analytic = schedule.length(job) / alpha;

    let mut perturbed = announced.to_vec();
    let fd = central_difference(
        |x| {
            perturbed[player] = x;
            let sched = crate::solver::optimal_lengths(order, instance, &perturbed)?;
            Ok(powf(instance.job(job).workload(), alpha) * powf(sched.length(job), 1.0 - alpha))
        },
        setup.base,
        setup.step,
    )?;
    Ok(finish(rank, player, analytic, fd))
}

/// Checks `∂ℓ_k/∂p̂_i = -(w_k (α-1)^(1/α) / α) S_k^(-1/α-1)`, the strictly
/// negative sensitivity behind the truthfulness argument.
pub fn check_lemma1_length_derivative(
    order: &Order,
    instance: &Instance,
    announced: &[f64],
    player: usize,
    rank: usize,
    step: f64,
) -> Result<DerivativeCheck> {
    let setup = derivative_setup(order, instance, announced, player, rank, step)?;
    let alpha = instance.alpha();
    let job = setup.job_at_rank;

    let suffix = suffix_sums(&order.sequence(), announced);
    let analytic = -(instance.job(job).workload() * powf(alpha - 1.0, 1.0 / alpha) / alpha)
        * powf(suffix[rank], -1.0 / alpha - 1.0);

    let mut perturbed = announced.to_vec();
    let fd = central_difference(
        |x| {
            perturbed[player] = x;
            let sched = crate::solver::optimal_lengths(order, instance, &perturbed)?;
            Ok(sched.length(job))
        },
        setup.base,
        setup.step,
    )?;
    Ok(finish(rank, player, analytic, fd))
}

/// Golden-section minimum of a unimodal function on `[lo, hi]`, localized
/// to a bracket of relative width `rel_tol`.
fn golden_section_min<F>(mut f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > rel_tol * 0.5 * (lo + hi) {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Minimizes the social cost over execution lengths without using the
/// closed form: cyclic golden-section descent, one coordinate at a time,
/// seeded at unit speed (`ℓ_j = w_j`), each line search bracketed a factor
/// of 10 around the current value. Stops once no coordinate moves by more
/// than `tolerance` relative within a sweep.
///
/// Because the social cost separates per coordinate, the line searches do
/// not fight each other and the sweep count stays small; the cap exists
/// for badly scaled inputs.
pub fn numeric_oracle_lengths(
    order: &Order,
    instance: &Instance,
    penalties: &[f64],
    tolerance: f64,
) -> Result<Schedule> {
    if !positive_finite(tolerance) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    let n = instance.n();
    check_penalties(penalties, n)?;
    if order.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: order.len() });
    }

    let alpha = instance.alpha();
    let workloads = instance.workloads();
    let sequence = order.sequence();

    let social = |lengths: &[f64]| -> f64 {
        let mut energy = 0.0;
        let mut flow = 0.0;
        let mut clock = 0.0;
        for &job in &sequence {
            clock += lengths[job];
            flow += penalties[job] * clock;
        }
        for job in 0..n {
            energy += powf(workloads[job], alpha) * powf(lengths[job], 1.0 - alpha);
        }
        energy + flow
    };

    let inner_tol = tolerance / 4.0;
    let mut lengths = workloads.clone();
    for _ in 0..ORACLE_MAX_SWEEPS {
        let mut max_rel_change: f64 = 0.0;
        for job in 0..n {
            let current = lengths[job];
            let best = golden_section_min(
                |x| {
                    lengths[job] = x;
                    social(&lengths)
                },
                current / 10.0,
                current * 10.0,
                inner_tol,
            );
            lengths[job] = best;
            max_rel_change = max_rel_change.max(fabs(best - current) / current);
        }
        if max_rel_change < tolerance {
            return Schedule::new(order.clone(), lengths);
        }
    }
    Err(Error::OracleDidNotConverge { sweeps: ORACLE_MAX_SWEEPS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{close, nearest_index};
    use crate::solver::optimal_lengths;
    use crate::types::Job;

    const SQRT_2: f64 = core::f64::consts::SQRT_2;

    fn instance(alpha: f64, data: &[(f64, f64)]) -> Instance {
        let jobs = data
            .iter()
            .enumerate()
            .map(|(i, &(w, p))| Job::new(alloc::format!("j{}", i + 1), w, p).unwrap())
            .collect();
        Instance::new(alpha, jobs).unwrap()
    }

    fn unit_pair() -> (Instance, Order) {
        (instance(2.0, &[(1.0, 1.0), (1.0, 1.0)]), Order::identity(2).unwrap())
    }

    #[test]
    fn geometric_grid_shape() {
        let grid = geometric_grid(0.25, 4.0, 41).unwrap();
        assert_eq!(grid.len(), 41);
        assert!(close(grid[0], 0.25, 1e-15));
        assert!(close(grid[40], 4.0, 1e-12));
        assert!(close(grid[20], 1.0, 1e-12));
        assert!(grid.windows(2).all(|w| w[0] < w[1]));

        assert!(matches!(geometric_grid(1.0, 2.0, 0), Err(Error::EmptyGrid)));
        assert_eq!(geometric_grid(2.0, 5.0, 1).unwrap(), alloc::vec![2.0]);
        assert!(matches!(geometric_grid(2.0, 1.0, 5), Err(Error::InvalidGrid { .. })));
        assert!(matches!(geometric_grid(0.0, 1.0, 5), Err(Error::InvalidGrid { .. })));
    }

    #[test]
    fn scan_worked_example_argmin_at_truth() {
        let (inst, order) = unit_pair();
        let grid = [0.5, 0.75, 1.0, 1.5, 2.0];
        let report = best_response_scan(&order, &inst, &[1.0, 1.0], 0, &grid).unwrap();
        assert_eq!(report.argmin_value, 1.0);
        assert_eq!(report.argmin_index, 2);
        assert!(report.covers_true);
        assert_eq!(report.penalties.len(), 5);
        // truthful value: p1 C1 + b1 = 2 sqrt(2)
        assert!(close(report.penalties[2], 2.0 * SQRT_2, 1e-9));
    }

    #[test]
    fn scan_single_player_still_minimizes_at_truth() {
        let inst = instance(2.0, &[(1.0, 1.0)]);
        let order = Order::identity(1).unwrap();
        let grid = default_grid(1.0).unwrap();
        let report = best_response_scan(&order, &inst, &[1.0], 0, &grid).unwrap();
        assert_eq!(report.argmin_index, nearest_index(&report.grid, 1.0));
    }

    #[test]
    fn scan_rejects_empty_and_flags_noncovering_grids() {
        let (inst, order) = unit_pair();
        assert!(matches!(
            best_response_scan(&order, &inst, &[1.0, 1.0], 0, &[]),
            Err(Error::EmptyGrid)
        ));
        let report = best_response_scan(&order, &inst, &[1.0, 1.0], 0, &[2.0, 3.0, 4.0]).unwrap();
        assert!(!report.covers_true);
        // penalty keeps rising with over-announcement, so the argmin hugs
        // the low edge
        assert_eq!(report.argmin_index, 0);
        assert!(best_response_scan(&order, &inst, &[1.0, 1.0], 5, &[1.0]).is_err());
    }

    #[test]
    fn scan_against_arbitrary_opponents_keeps_the_truthful_minimum() {
        let inst = instance(2.5, &[(1.0, 2.0), (2.0, 0.7), (0.5, 1.1)]);
        let order = Order::from_sequence(&[1, 0, 2]).unwrap();
        let truth = inst.penalties();
        let opponents = [9.0, 0.2, 3.3];
        let grid = default_grid(truth[0]).unwrap();
        let report =
            best_response_scan_vs(&order, &inst, &truth, &opponents, 0, &grid).unwrap();
        assert_eq!(report.argmin_index, nearest_index(&report.grid, truth[0]));
    }

    #[test]
    fn energy_derivative_worked_value() {
        let (inst, order) = unit_pair();
        let check =
            check_lemma1_energy_derivative(&order, &inst, &[1.0, 1.0], 1, 0, 1e-5).unwrap();
        assert!(close(check.analytic, SQRT_2 / 4.0, 1e-12));
        assert!(check.relative_error < 1e-6, "relative error {}", check.relative_error);
    }

    #[test]
    fn length_derivative_worked_value() {
        let (inst, order) = unit_pair();
        let check =
            check_lemma1_length_derivative(&order, &inst, &[1.0, 1.0], 1, 0, 1e-5).unwrap();
        assert!(close(check.analytic, -SQRT_2 / 8.0, 1e-12));
        assert!(check.analytic < 0.0 && check.finite_difference < 0.0);
        assert!(check.relative_error < 1e-6, "relative error {}", check.relative_error);
    }

    #[test]
    fn own_rank_derivative_is_in_scope() {
        let (inst, order) = unit_pair();
        let check =
            check_lemma1_energy_derivative(&order, &inst, &[1.0, 1.0], 1, 1, 1e-5).unwrap();
        // l_2 / alpha = 1/2
        assert!(close(check.analytic, 0.5, 1e-12));
        assert!(check.relative_error < 1e-6);
    }

    #[test]
    fn ranks_after_the_player_are_refused() {
        let (inst, order) = unit_pair();
        assert!(matches!(
            check_lemma1_energy_derivative(&order, &inst, &[1.0, 1.0], 0, 1, 1e-5),
            Err(Error::RankOutsideScope { rank: 1, player_rank: 0 })
        ));
        assert!(check_lemma1_length_derivative(&order, &inst, &[1.0, 1.0], 0, 1, 1e-5).is_err());
    }

    #[test]
    fn bad_steps_are_refused() {
        let (inst, order) = unit_pair();
        assert!(matches!(
            check_lemma1_energy_derivative(&order, &inst, &[1.0, 1.0], 1, 0, 0.0),
            Err(Error::InvalidStep(_))
        ));
        // step would push the announcement nonpositive
        assert!(matches!(
            check_lemma1_energy_derivative(&order, &inst, &[1.0, 1.0], 1, 0, 1.0),
            Err(Error::InvalidStep(_))
        ));
    }

    #[test]
    fn raising_an_announcement_shrinks_earlier_lengths() {
        let inst = instance(2.0, &[(1.0, 1.0), (1.0, 1.0), (1.0, 1.0)]);
        let order = Order::identity(3).unwrap();
        let base = optimal_lengths(&order, &inst, &[1.0, 1.0, 1.0]).unwrap();
        let bumped = optimal_lengths(&order, &inst, &[1.0, 1.0, 1.1]).unwrap();
        for job in 0..3 {
            assert!(bumped.length(job) < base.length(job));
        }
    }

    #[test]
    fn oracle_converges_on_the_worked_cases() {
        let inst = instance(2.0, &[(1.0, 1.0)]);
        let order = Order::identity(1).unwrap();
        let sched = numeric_oracle_lengths(&order, &inst, &[1.0], 1e-7).unwrap();
        assert!(fabs(sched.length(0) - 1.0) < 1e-6);

        let (inst, order) = unit_pair();
        let sched = numeric_oracle_lengths(&order, &inst, &[1.0, 1.0], 1e-7).unwrap();
        assert!(fabs(sched.length(0) - SQRT_2 / 2.0) < 1e-6);
        assert!(fabs(sched.length(1) - 1.0) < 1e-6);
    }

    #[test]
    fn oracle_agrees_with_the_closed_form_off_the_unit_square() {
        let inst =
            instance(2.5, &[(3.1, 0.4), (0.2, 6.0), (1.4, 1.4), (0.8, 2.2), (5.5, 0.9)]);
        let order = Order::from_sequence(&[4, 1, 0, 3, 2]).unwrap();
        let p = inst.penalties();
        let closed = optimal_lengths(&order, &inst, &p).unwrap();
        let oracle = numeric_oracle_lengths(&order, &inst, &p, 1e-6).unwrap();
        for job in 0..inst.n() {
            assert!(
                close(closed.length(job), oracle.length(job), tol::REL_ORACLE),
                "job {job}: closed {} oracle {}",
                closed.length(job),
                oracle.length(job)
            );
        }
    }

    #[test]
    fn oracle_rejects_bad_tolerances() {
        let (inst, order) = unit_pair();
        assert!(matches!(
            numeric_oracle_lengths(&order, &inst, &[1.0, 1.0], 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }
}
