//! Domain types: jobs, instances, orders, schedules and cost breakdowns.
//! Constructors validate; invalid values are rejected, never clamped.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::num::positive_finite;
use crate::tol::ALPHA_PHYSICAL;
use crate::{Error, Result};

/// Opaque job / player identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JobId(String);

impl JobId {
    pub fn new(id: impl Into<String>) -> Self {
        JobId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for JobId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for JobId {
    fn from(s: &str) -> Self {
        JobId::new(s)
    }
}

impl From<String> for JobId {
    fn from(s: String) -> Self {
        JobId(s)
    }
}

/// A single job: positive workload (instructions) and positive delay
/// penalty (money per unit of completion time).
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    id: JobId,
    workload: f64,
    penalty: f64,
}

impl Job {
    pub fn new(id: impl Into<JobId>, workload: f64, penalty: f64) -> Result<Self> {
        if !positive_finite(workload) {
            return Err(Error::InvalidWorkload(workload));
        }
        if !positive_finite(penalty) {
            return Err(Error::InvalidPenalty(penalty));
        }
        Ok(Job { id: id.into(), workload, penalty })
    }

    pub fn id(&self) -> &JobId {
        &self.id
    }

    pub fn workload(&self) -> f64 {
        self.workload
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }
}

/// A problem instance: the energy exponent α and at least one job.
///
/// α may be any finite value above 1; [`Instance::alpha_outside_physical_range`]
/// flags exponents outside the usual hardware range [2, 3] so front ends can
/// warn without refusing.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    alpha: f64,
    jobs: Vec<Job>,
}

impl Instance {
    pub fn new(alpha: f64, jobs: Vec<Job>) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if jobs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for (i, job) in jobs.iter().enumerate() {
            if jobs[..i].iter().any(|other| other.id() == job.id()) {
                return Err(Error::DuplicateJobId(String::from(job.id().as_str())));
            }
        }
        Ok(Instance { alpha, jobs })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, index: usize) -> &Job {
        &self.jobs[index]
    }

    /// Position of the job with this id, if any.
    pub fn index_of(&self, id: &JobId) -> Option<usize> {
        self.jobs.iter().position(|j| j.id() == id)
    }

    pub fn workloads(&self) -> Vec<f64> {
        self.jobs.iter().map(Job::workload).collect()
    }

    /// True delay penalties, in job order.
    pub fn penalties(&self) -> Vec<f64> {
        self.jobs.iter().map(Job::penalty).collect()
    }

    /// Warning flag: α is valid but outside the physical range [2, 3].
    pub fn alpha_outside_physical_range(&self) -> bool {
        self.alpha < ALPHA_PHYSICAL.0 || self.alpha > ALPHA_PHYSICAL.1
    }
}

/// An execution order. `ranks[j]` is the rank of job `j`; rank 0 runs first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    ranks: Vec<usize>,
}

impl Order {
    /// Builds an order from a rank vector; must be a permutation of `0..n`.
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        if n == 0 {
            return Err(Error::InvalidPermutation);
        }
        let mut seen = alloc::vec![false; n];
        for &r in &ranks {
            if r >= n || seen[r] {
                return Err(Error::InvalidPermutation);
            }
            seen[r] = true;
        }
        Ok(Order { ranks })
    }

    /// Builds an order from the job indices listed in execution order.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self> {
        let n = sequence.len();
        if n == 0 {
            return Err(Error::InvalidPermutation);
        }
        let mut ranks = alloc::vec![usize::MAX; n];
        for (rank, &job) in sequence.iter().enumerate() {
            if job >= n || ranks[job] != usize::MAX {
                return Err(Error::InvalidPermutation);
            }
            ranks[job] = rank;
        }
        Ok(Order { ranks })
    }

    /// Jobs run in index order.
    pub fn identity(n: usize) -> Result<Self> {
        Order::from_ranks((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Rank of job `job` (0 = first).
    pub fn rank_of(&self, job: usize) -> usize {
        self.ranks[job]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Job indices in execution order.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = alloc::vec![0usize; self.ranks.len()];
        for (job, &rank) in self.ranks.iter().enumerate() {
            seq[rank] = job;
        }
        seq
    }

    /// The reverse order: the job that ran first now runs last.
    pub fn reversed(&self) -> Order {
        let n = self.ranks.len();
        Order { ranks: self.ranks.iter().map(|&r| n - 1 - r).collect() }
    }
}

/// An order together with strictly positive execution lengths, one per job.
/// Speeds (`w_i / ℓ_i`) and completion times are derived, never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    order: Order,
    lengths: Vec<f64>,
}

impl Schedule {
    pub fn new(order: Order, lengths: Vec<f64>) -> Result<Self> {
        if lengths.len() != order.len() {
            return Err(Error::DimensionMismatch { expected: order.len(), got: lengths.len() });
        }
        if let Some(&bad) = lengths.iter().find(|l| !positive_finite(**l)) {
            return Err(Error::InvalidLength(bad));
        }
        Ok(Schedule { order, lengths })
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    /// Execution length of job `job` (indexed by job, not by rank).
    pub fn length(&self, job: usize) -> f64 {
        self.lengths[job]
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Completion time of every job: the machine starts at 0 and never
    /// idles, so `C_i` is the prefix sum of lengths up to job i's rank.
    pub fn completion_times(&self) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.lengths.len()];
        let mut clock = 0.0;
        for &job in &self.order.sequence() {
            clock += self.lengths[job];
            out[job] = clock;
        }
        out
    }
}

/// Energy, weighted flow and their sum for one schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub energy: f64,
    pub flow: f64,
    /// Always exactly `energy + flow`.
    pub social: f64,
}

impl CostBreakdown {
    pub fn new(energy: f64, flow: f64) -> Self {
        CostBreakdown { energy, flow, social: energy + flow }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_jobs(n: usize) -> Vec<Job> {
        (0..n)
            .map(|i| Job::new(alloc::format!("j{}", i + 1), 1.0, 1.0).unwrap())
            .collect()
    }

    #[test]
    fn job_rejects_nonpositive_and_nonfinite_fields() {
        assert!(matches!(Job::new("a", 0.0, 1.0), Err(Error::InvalidWorkload(_))));
        assert!(matches!(Job::new("a", -1.0, 1.0), Err(Error::InvalidWorkload(_))));
        assert!(matches!(Job::new("a", f64::NAN, 1.0), Err(Error::InvalidWorkload(_))));
        assert!(matches!(Job::new("a", 1.0, 0.0), Err(Error::InvalidPenalty(_))));
        assert!(matches!(Job::new("a", 1.0, f64::INFINITY), Err(Error::InvalidPenalty(_))));
        assert!(Job::new("a", 1.0, 1.0).is_ok());
    }

    #[test]
    fn instance_rejects_bad_alpha_and_duplicates() {
        assert!(matches!(Instance::new(1.0, unit_jobs(1)), Err(Error::InvalidAlpha(_))));
        assert!(matches!(Instance::new(0.5, unit_jobs(1)), Err(Error::InvalidAlpha(_))));
        assert!(matches!(Instance::new(f64::NAN, unit_jobs(1)), Err(Error::InvalidAlpha(_))));
        assert!(matches!(Instance::new(2.0, Vec::new()), Err(Error::EmptyInstance)));

        let dup = alloc::vec![
            Job::new("a", 1.0, 1.0).unwrap(),
            Job::new("a", 2.0, 2.0).unwrap(),
        ];
        assert!(matches!(Instance::new(2.0, dup), Err(Error::DuplicateJobId(_))));
    }

    #[test]
    fn alpha_physical_range_flag() {
        assert!(!Instance::new(2.0, unit_jobs(1)).unwrap().alpha_outside_physical_range());
        assert!(!Instance::new(3.0, unit_jobs(1)).unwrap().alpha_outside_physical_range());
        assert!(Instance::new(1.5, unit_jobs(1)).unwrap().alpha_outside_physical_range());
        assert!(Instance::new(3.5, unit_jobs(1)).unwrap().alpha_outside_physical_range());
    }

    #[test]
    fn order_round_trips_between_ranks_and_sequence() {
        let order = Order::from_sequence(&[2, 0, 1]).unwrap();
        assert_eq!(order.ranks(), &[1, 2, 0]);
        assert_eq!(order.sequence(), alloc::vec![2, 0, 1]);
        assert_eq!(order.rank_of(2), 0);

        assert!(Order::from_ranks(alloc::vec![0, 0]).is_err());
        assert!(Order::from_ranks(alloc::vec![0, 2]).is_err());
        assert!(Order::from_sequence(&[]).is_err());
    }

    #[test]
    fn reversed_flips_ranks() {
        let order = Order::from_sequence(&[2, 0, 1]).unwrap();
        let rev = order.reversed();
        assert_eq!(rev.sequence(), alloc::vec![1, 0, 2]);
        assert_eq!(rev.reversed(), order);
    }

    #[test]
    fn schedule_validates_lengths() {
        let order = Order::identity(2).unwrap();
        assert!(Schedule::new(order.clone(), alloc::vec![1.0]).is_err());
        assert!(matches!(
            Schedule::new(order.clone(), alloc::vec![1.0, 0.0]),
            Err(Error::InvalidLength(_))
        ));
        let sched = Schedule::new(order, alloc::vec![0.5, 1.5]).unwrap();
        assert_eq!(sched.completion_times(), alloc::vec![0.5, 2.0]);
    }

    #[test]
    fn completion_times_follow_the_order_not_the_index() {
        // job 1 runs first, then job 0
        let order = Order::from_sequence(&[1, 0]).unwrap();
        let sched = Schedule::new(order, alloc::vec![2.0, 3.0]).unwrap();
        assert_eq!(sched.completion_times(), alloc::vec![5.0, 3.0]);
    }

    #[test]
    fn cost_breakdown_sums_by_construction() {
        let cb = CostBreakdown::new(1.5, 2.5);
        assert_eq!(cb.social, 4.0);
    }
}
