//! Fleet selection by successive halving over (platform, size) candidates.
//!
//! Every round evaluates its surviving candidates on the same random
//! substreams. After each screening round the better half survives (never
//! fewer than two, so the winner is always compared against a runner-up),
//! and the survivors are re-evaluated at the final budget. Ranking uses the
//! ergodic capacity in the scenario's capacity mode; an undefined
//! conditional estimate ranks last.

use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::estimate::{estimate_batch, Executor, MetricEstimate};
use crate::scenario::{FleetSpec, Scenario};

pub type Candidate = FleetSpec;

/// Iteration budgets per round; the last one is the full budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalvingSchedule {
    pub budgets: Vec<u64>,
}

impl HalvingSchedule {
    pub fn new(budgets: Vec<u64>) -> Self {
        Self { budgets }
    }

    /// Budgets scaled by 4 from `first` over `rounds` rounds.
    pub fn geometric(first: u64, rounds: usize) -> Self {
        let mut budgets = Vec::with_capacity(rounds);
        let mut b = first;
        for _ in 0..rounds {
            budgets.push(b);
            b = b.saturating_mul(4);
        }
        Self { budgets }
    }

    pub fn full_budget(&self) -> Option<u64> {
        self.budgets.last().copied()
    }
}

impl Default for HalvingSchedule {
    fn default() -> Self {
        Self::new(alloc::vec![1_000, 4_000, 16_000])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateOutcome {
    /// Position in the candidate grid.
    pub index: usize,
    pub fleet: FleetSpec,
    /// Iterations behind `estimate`.
    pub budget: u64,
    /// `None` when the conditional capacity was undefined (no coverage).
    pub estimate: Option<MetricEstimate>,
    pub coverage_probability: f64,
}

impl CandidateOutcome {
    fn score(&self) -> f64 {
        self.estimate
            .map_or(f64::NEG_INFINITY, |e| e.ergodic_capacity)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdvisorReport {
    /// Grid index of the recommended candidate.
    pub best: usize,
    /// Finalists evaluated at the full budget, in grid order.
    pub table: Vec<CandidateOutcome>,
    /// Candidates dropped in screening rounds, with their last estimate.
    pub eliminated: Vec<CandidateOutcome>,
    /// Best capacity minus runner-up capacity, bit/s.
    pub margin: f64,
    /// Whether the 95% intervals of best and runner-up are disjoint.
    pub statistically_resolved: bool,
}

impl AdvisorReport {
    pub fn best_outcome(&self) -> &CandidateOutcome {
        self.table
            .iter()
            .find(|o| o.index == self.best)
            .expect("best is a finalist")
    }
}

fn evaluate<E: Executor>(
    scenario: &Scenario,
    candidates: &[Candidate],
    indices: &[usize],
    budget: u64,
    seed: u64,
    executor: &E,
) -> Result<Vec<CandidateOutcome>> {
    let fleets: Vec<FleetSpec> = indices.iter().map(|&i| candidates[i].clone()).collect();
    let results = estimate_batch(scenario, &fleets, budget, seed, 0, executor)?;
    Ok(indices
        .iter()
        .zip(fleets)
        .zip(results)
        .map(|((&index, fleet), result)| {
            let coverage_probability = match &result {
                Ok(e) => e.coverage_probability,
                Err(crate::Error::UndefinedEstimate {
                    coverage_probability,
                }) => *coverage_probability,
                Err(_) => 0.0,
            };
            CandidateOutcome {
                index,
                fleet,
                budget,
                estimate: result.ok(),
                coverage_probability,
            }
        })
        .collect())
}

/// Order by score, best first; ties keep grid order.
fn ranked(outcomes: &[CandidateOutcome]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..outcomes.len()).collect();
    order.sort_by(|&a, &b| {
        outcomes[b]
            .score()
            .total_cmp(&outcomes[a].score())
            .then(outcomes[a].index.cmp(&outcomes[b].index))
    });
    order
}

/// Searches `candidates` for the fleet with the highest ergodic capacity on
/// `scenario` (whose own fleet is ignored).
pub fn advise<E: Executor>(
    scenario: &Scenario,
    candidates: &[Candidate],
    schedule: &HalvingSchedule,
    seed: u64,
    executor: &E,
) -> Result<AdvisorReport> {
    if candidates.len() < 2 {
        return Err(invalid("candidates", "need at least two candidates"));
    }
    let Some(full) = schedule.full_budget() else {
        return Err(invalid("schedule", "budget too small for even one round"));
    };
    if schedule.budgets.contains(&0) {
        return Err(invalid("schedule", "budget too small for even one round"));
    }

    let mut survivors: Vec<usize> = (0..candidates.len()).collect();
    let mut eliminated = Vec::new();
    for &budget in &schedule.budgets[..schedule.budgets.len() - 1] {
        if survivors.len() <= 2 {
            break;
        }
        let outcomes = evaluate(scenario, candidates, &survivors, budget, seed, executor)?;
        let keep = survivors.len().div_ceil(2).max(2);
        let order = ranked(&outcomes);
        let mut next: Vec<usize> = order[..keep].iter().map(|&k| outcomes[k].index).collect();
        next.sort_unstable();
        for &k in &order[keep..] {
            eliminated.push(outcomes[k].clone());
        }
        survivors = next;
    }
    eliminated.sort_by_key(|o| o.index);

    let table = evaluate(scenario, candidates, &survivors, full, seed, executor)?;
    let order = ranked(&table);
    let best = &table[order[0]];
    let runner_up = &table[order[1]];
    let (margin, statistically_resolved) = match (best.estimate, runner_up.estimate) {
        (Some(b), Some(r)) => (
            b.ergodic_capacity - r.ergodic_capacity,
            b.ci95_low > r.ci95_high,
        ),
        (Some(_), None) => (f64::INFINITY, true),
        _ => (0.0, false),
    };
    Ok(AdvisorReport {
        best: best.index,
        margin,
        statistically_resolved,
        table,
        eliminated,
    })
}
