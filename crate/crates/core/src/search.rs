//! Exhaustive and heuristic search for the social-cost-minimizing order.
//!
//! No polynomial algorithm is known for the order, so small instances are
//! enumerated outright — once through the social-cost objective and,
//! independently, once through the unit-speed objective on reversed orders.
//! The two must land on the same optimum, which makes the pair a useful
//! cross-oracle. Heuristic candidates are provided for larger instances
//! without any optimality claim.
//!
//! Enumeration is partitioned by the first-ranked job. Each partition walks
//! its `(n-1)!` tails in lexicographic sequence order and keeps a local
//! best; partitions merge by `(cost, rank vector)` with ties broken toward
//! the lexicographically smallest rank vector. The merge is a total-order
//! minimum, so serial and parallel runs pick the same order bit for bit.

use alloc::string::String;
use alloc::vec::Vec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::solver::{check_penalties, social_cost_for_sequence};
use crate::types::{Instance, Order};
use crate::{num::powf, solver::equivalence_constant, Error, Result};

/// Default bound on instance size for exhaustive enumeration
/// (10! ≈ 3.6M orders, a few seconds on one desktop core).
pub const DEFAULT_PERMUTATION_CAP: usize = 10;

/// How a [`SearchResult`] was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchMethod {
    /// Exhaustive enumeration of the social-cost objective.
    Exhaustive,
    /// Exhaustive enumeration of the unit-speed objective over reversed
    /// orders, mapped back.
    ExhaustiveProblemB,
    /// A named sorting heuristic; no optimality claim.
    Heuristic(String),
}

impl SearchMethod {
    pub fn label(&self) -> &str {
        match self {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::ExhaustiveProblemB => "exhaustive-problem-b",
            SearchMethod::Heuristic(name) => name,
        }
    }
}

/// Outcome of an order search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_order: Order,
    pub best_cost: f64,
    pub orders_examined: u64,
    pub method: SearchMethod,
}

/// Lexicographic successor of `a` in place; false once `a` is the last
/// permutation.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Iterator over all orders of `n` jobs, in lexicographic sequence order.
/// Intended for verification sweeps on small `n`.
pub fn all_orders(n: usize) -> impl Iterator<Item = Order> {
    let mut seq: Vec<usize> = (0..n).collect();
    let mut done = n == 0;
    core::iter::from_fn(move || {
        if done {
            return None;
        }
        let order = Order::from_sequence(&seq).expect("sequence is a permutation");
        done = !next_permutation(&mut seq);
        Some(order)
    })
}

#[derive(Clone)]
struct Candidate {
    cost: f64,
    ranks: Vec<usize>,
}

impl Candidate {
    /// Total order: smaller cost wins, then the lexicographically smaller
    /// rank vector. Costs are finite by construction.
    fn beats(&self, other: &Candidate) -> bool {
        self.cost < other.cost || (self.cost == other.cost && self.ranks < other.ranks)
    }
}

fn ranks_of_sequence(sequence: &[usize]) -> Vec<usize> {
    let mut ranks = alloc::vec![0usize; sequence.len()];
    for (rank, &job) in sequence.iter().enumerate() {
        ranks[job] = rank;
    }
    ranks
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Walks every sequence starting with `first`, scoring each with `score`,
/// and returns the partition's best candidate plus the number of orders
/// examined. Ranks are materialized only on improvement.
fn best_in_partition<F>(n: usize, first: usize, mut score: F) -> (Candidate, u64)
where
    F: FnMut(&[usize]) -> f64,
{
    let mut seq: Vec<usize> = Vec::with_capacity(n);
    seq.push(first);
    seq.extend((0..n).filter(|&j| j != first));

    let mut best: Option<Candidate> = None;
    let mut examined = 0u64;
    loop {
        examined += 1;
        let cost = score(&seq);
        let improves = match &best {
            None => true,
            Some(b) => {
                cost < b.cost || (cost == b.cost && ranks_of_sequence(&seq) < b.ranks)
            }
        };
        if improves {
            best = Some(Candidate { cost, ranks: ranks_of_sequence(&seq) });
        }
        if !next_permutation(&mut seq[1..]) {
            break;
        }
    }
    (best.expect("partition is non-empty"), examined)
}

fn merge(a: (Candidate, u64), b: (Candidate, u64)) -> (Candidate, u64) {
    let count = a.1 + b.1;
    if b.0.beats(&a.0) {
        (b.0, count)
    } else {
        (a.0, count)
    }
}

/// Runs `best_in_partition` for every choice of first-ranked job and merges
/// deterministically. The score closure must be pure; it gets a scratch
/// buffer private to its partition.
fn enumerate_partitions<F>(n: usize, score: F) -> (Candidate, u64)
where
    F: Fn(&[usize], &mut Vec<f64>) -> f64 + Sync,
{
    let run = |first: usize| {
        let mut scratch = Vec::new();
        best_in_partition(n, first, |seq| score(seq, &mut scratch))
    };
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(run).reduce_with(merge).expect("n >= 1")
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(run).reduce(merge).expect("n >= 1")
    }
}

/// Enumerates all `n!` orders and returns one minimizing the social cost of
/// its closed-form schedule. Ties break toward the lexicographically
/// smallest rank vector, so repeated and parallel runs agree exactly.
pub fn exhaustive_best_order(instance: &Instance, cap: usize) -> Result<SearchResult> {
    let n = instance.n();
    check_cap(n, cap)?;
    let workloads = instance.workloads();
    let penalties = instance.penalties();
    check_penalties(&penalties, n)?;
    let alpha = instance.alpha();

    let (best, examined) = enumerate_partitions(n, |seq, scratch| {
        social_cost_for_sequence(seq, &workloads, &penalties, alpha, scratch)
    });

    Ok(SearchResult {
        best_order: Order::from_ranks(best.ranks)?,
        best_cost: best.cost,
        orders_examined: examined,
        method: SearchMethod::Exhaustive,
    })
}

/// Enumerates the unit-speed objective over all orders `σ` and maps the
/// winner back through order reversal. The reported cost is the
/// equivalence constant times the best unit-speed value, so agreement with
/// [`exhaustive_best_order`] checks the whole reduction end to end.
///
/// Tie-breaking compares the rank vector of the *reversed* (social-cost)
/// order, matching `exhaustive_best_order`.
pub fn search_via_problem_b(instance: &Instance, cap: usize) -> Result<SearchResult> {
    let n = instance.n();
    check_cap(n, cap)?;
    let workloads = instance.workloads();
    let penalties = instance.penalties();
    check_penalties(&penalties, n)?;
    let exponent = (instance.alpha() - 1.0) / instance.alpha();

    // Score sigma-sequences; compare candidates in pi-space by reversing.
    let score = |seq: &[usize]| {
        let mut clock = 0.0;
        let mut total = 0.0;
        for &job in seq {
            clock += penalties[job];
            total += workloads[job] * powf(clock, exponent);
        }
        total
    };
    let to_pi_ranks = |sigma_seq: &[usize]| {
        let sigma_ranks = ranks_of_sequence(sigma_seq);
        sigma_ranks.iter().map(|&r| n - 1 - r).collect::<Vec<usize>>()
    };

    let run_partition = |first: usize| {
        let mut seq: Vec<usize> = Vec::with_capacity(n);
        seq.push(first);
        seq.extend((0..n).filter(|&j| j != first));
        let mut best: Option<Candidate> = None;
        let mut examined = 0u64;
        loop {
            examined += 1;
            let cost = score(&seq);
            let improves = match &best {
                None => true,
                Some(b) => cost < b.cost || (cost == b.cost && to_pi_ranks(&seq) < b.ranks),
            };
            if improves {
                best = Some(Candidate { cost, ranks: to_pi_ranks(&seq) });
            }
            if !next_permutation(&mut seq[1..]) {
                break;
            }
        }
        (best.expect("partition is non-empty"), examined)
    };

    #[cfg(feature = "parallel")]
    let (best, examined) =
        (0..n).into_par_iter().map(run_partition).reduce_with(merge).expect("n >= 1");
    #[cfg(not(feature = "parallel"))]
    let (best, examined) = (0..n).map(run_partition).reduce(merge).expect("n >= 1");

    Ok(SearchResult {
        best_order: Order::from_ranks(best.ranks)?,
        best_cost: equivalence_constant(instance.alpha())? * best.cost,
        orders_examined: examined,
        method: SearchMethod::ExhaustiveProblemB,
    })
}

/// Named candidate orders from simple sorting rules: descending penalty,
/// descending penalty per unit work, ascending workload. Ties keep job
/// index order (stable sort).
pub fn heuristic_orders(instance: &Instance) -> Vec<(String, Order)> {
    let n = instance.n();
    let by_key = |key: &dyn Fn(usize) -> f64, descending: bool| {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| {
            let (ka, kb) = (key(a), key(b));
            let ord = ka.partial_cmp(&kb).expect("keys are finite");
            if descending {
                ord.reverse()
            } else {
                ord
            }
        });
        Order::from_sequence(&idx).expect("idx is a permutation")
    };

    alloc::vec![
        (String::from("desc-penalty"), by_key(&|j| instance.job(j).penalty(), true)),
        (
            String::from("desc-penalty-per-work"),
            by_key(&|j| instance.job(j).penalty() / instance.job(j).workload(), true),
        ),
        (String::from("asc-workload"), by_key(&|j| instance.job(j).workload(), false)),
    ]
}
