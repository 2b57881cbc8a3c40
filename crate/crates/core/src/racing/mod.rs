//! Iterated racing: repeatedly sample candidate configurations around the current elites,
//! race them on successive seed blocks with Friedman-test elimination, and validate the
//! final elites on independent runs.
//!
//! One block is one seed: every alive candidate is scored once per block (for the GA, one
//! run and its AUC). Scores are maximized.

mod friedman;
mod space;

pub use friedman::{block_ranks, friedman_eliminate, friedman_statistic};
pub use space::{
    perturbation_probability, sample_configurations, sample_configurations_with, CandidateSpace,
    ConfigSpace, FiniteSpace,
};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fastga::{run_auc, GaParams};
use crate::operators::Configuration;
use crate::rng::RngStream;
use crate::wmodel::WModelInstance;

/// Block indices at and above this value are reserved for validation runs.
pub const VALIDATION_BLOCK_BASE: u64 = 1 << 48;

/// Number of blocks every candidate sees before the first elimination test.
pub const FIRST_TEST_BLOCKS: usize = 5;

/// Number of configurable slots, used for the iteration plan `2 + log2(slots)`.
const TUNED_SLOTS: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaceBudget {
    pub total_runs: u64,
    pub validation_runs: u64,
    pub confidence: f64,
    pub min_survivors: usize,
}

impl Default for RaceBudget {
    fn default() -> Self {
        Self {
            total_runs: 100_000,
            validation_runs: 50,
            confidence: 0.05,
            min_survivors: 4,
        }
    }
}

impl RaceBudget {
    pub fn with_runs(total_runs: u64) -> Self {
        Self {
            total_runs,
            ..Self::default()
        }
    }

    /// `max(20, floor(sqrt(total_runs) / 2))`.
    pub fn initial_sample_size(&self) -> usize {
        ((self.total_runs as f64).sqrt() / 2.0).floor().max(20.0) as usize
    }

    /// Planned number of iterations before the tuner spends whatever is left.
    pub fn planned_iterations(&self) -> usize {
        2 + (TUNED_SLOTS as f64).log2().floor() as usize
    }

    fn validate(&self) -> Result<()> {
        if self.validation_runs == 0 {
            return Err(Error::Config("validation_runs must be >= 1".into()));
        }
        if self.min_survivors == 0 {
            return Err(Error::Config("min_survivors must be >= 1".into()));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::Config("confidence must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// Scores one candidate on one block. Must be a pure function of its arguments.
pub trait Objective<C>: Sync {
    fn score(&self, candidate: &C, block: u64) -> Result<f64>;
}

/// Single-run AUC of a GA configuration; block `b` runs on stream `b` of `master_seed`.
#[derive(Clone, Debug)]
pub struct GaObjective {
    pub instance: WModelInstance,
    pub params: GaParams,
    pub buckets: usize,
    pub master_seed: u64,
}

impl Objective<Configuration> for GaObjective {
    fn score(&self, candidate: &Configuration, block: u64) -> Result<f64> {
        let mut rng = RngStream::new(self.master_seed, block);
        run_auc(
            candidate,
            &self.instance,
            &self.params,
            self.buckets,
            &mut rng,
        )
        .map(|r| r.0)
    }
}

/// Live bookkeeping of one race.
#[derive(Clone, Debug)]
pub struct RaceState<C> {
    pub alive: Vec<C>,
    /// `results[i][j]`: score of `alive[i]` on the race's `j`-th block.
    pub results: Vec<Vec<f64>>,
    pub spent: u64,
}

/// A finished race: survivors best first by mean score.
#[derive(Clone, Debug)]
pub struct RaceOutcome<C> {
    pub survivors: Vec<(C, f64)>,
    pub spent: u64,
    pub blocks: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct RaceSettings {
    pub max_runs: u64,
    pub alpha: f64,
    pub min_survivors: usize,
    pub first_test: usize,
}

/// Races `candidates` on blocks `first_block, first_block + 1, ...`.
///
/// A block is only started when every alive candidate can be scored within `max_runs`.
/// After `first_test` blocks, each new block is followed by [`friedman_eliminate`]. The race
/// ends when the budget cannot cover another block, or when at most `min_survivors`
/// candidates remain after the first test.
pub fn race<C, O>(
    candidates: Vec<C>,
    objective: &O,
    first_block: u64,
    settings: RaceSettings,
) -> Result<RaceOutcome<C>>
where
    C: Clone + Send + Sync,
    O: Objective<C>,
{
    let mut state = RaceState {
        results: vec![Vec::new(); candidates.len()],
        alive: candidates,
        spent: 0,
    };
    let mut blocks = 0usize;
    while !state.alive.is_empty() && state.spent + state.alive.len() as u64 <= settings.max_runs {
        if blocks >= settings.first_test && state.alive.len() <= settings.min_survivors {
            break;
        }
        let block = first_block + blocks as u64;
        let scores = score_all(&state.alive, objective, block)?;
        state.spent += scores.len() as u64;
        for (row, s) in state.results.iter_mut().zip(scores) {
            row.push(s);
        }
        blocks += 1;
        if blocks >= settings.first_test && state.alive.len() > 1 {
            let keep = friedman_eliminate(&state.results, settings.alpha, settings.min_survivors);
            if keep.len() < state.alive.len() {
                state.alive = keep.iter().map(|&i| state.alive[i].clone()).collect();
                state.results = keep.iter().map(|&i| state.results[i].clone()).collect();
            }
        }
    }
    let mut survivors: Vec<(C, f64)> = state
        .alive
        .into_iter()
        .zip(state.results.iter().map(|r| mean(r)))
        .collect();
    sort_desc(&mut survivors);
    Ok(RaceOutcome {
        survivors,
        spent: state.spent,
        blocks,
    })
}

#[cfg(feature = "parallel")]
fn score_all<C: Sync, O: Objective<C>>(alive: &[C], objective: &O, block: u64) -> Result<Vec<f64>> {
    use rayon::prelude::*;
    alive
        .par_iter()
        .map(|c| objective.score(c, block))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn score_all<C: Sync, O: Objective<C>>(alive: &[C], objective: &O, block: u64) -> Result<Vec<f64>> {
    alive.iter().map(|c| objective.score(c, block)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IterationRecord<C> {
    pub iteration: usize,
    pub candidates: usize,
    pub blocks: usize,
    pub survivors: Vec<C>,
    pub spent: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Elite<C> {
    pub candidate: C,
    pub race_mean: f64,
    pub validation_mean: f64,
    pub validation_std: f64,
    pub validation_scores: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TuneOutcome<C> {
    /// Best first by mean validation score.
    pub elites: Vec<Elite<C>>,
    pub iterations: Vec<IterationRecord<C>>,
    /// Runs spent racing, at most `total_runs`.
    pub spent: u64,
    pub validation_spent: u64,
}

/// Iterated racing over `space`, followed by `validation_runs` runs of every elite on the
/// shared validation blocks `VALIDATION_BLOCK_BASE + j`.
pub fn tune<S, O>(
    space: &S,
    objective: &O,
    budget: &RaceBudget,
    rng: &mut RngStream,
) -> Result<TuneOutcome<S::Candidate>>
where
    S: CandidateSpace,
    O: Objective<S::Candidate>,
{
    budget.validate()?;
    let first_test = FIRST_TEST_BLOCKS;
    let initial = budget.initial_sample_size();
    let planned = budget.planned_iterations();

    let mut elites: Vec<(S::Candidate, f64)> = Vec::new();
    let mut iterations = Vec::new();
    let mut spent = 0u64;
    let mut next_block = 0u64;

    let space_cap = space.size().unwrap_or(usize::MAX);
    let first_count = initial.min(space_cap);
    if (first_count * first_test) as u64 > budget.total_runs {
        return Err(Error::Config(format!(
            "{} runs cannot complete the first {first_test} blocks of {first_count} candidates",
            budget.total_runs
        )));
    }

    for iteration in 1.. {
        let remaining = budget.total_runs - spent;
        let share = remaining / planned.saturating_sub(iteration - 1).max(1) as u64;
        let count = if iteration == 1 {
            first_count
        } else {
            let by_share = (share / (first_test + iteration.min(5)) as u64) as usize;
            initial
                .min(by_share)
                .min(space_cap)
                .min((remaining / first_test as u64) as usize)
        };
        if count == 0 || (count < 2 && space_cap >= 2) {
            break;
        }
        let max_runs = if iteration >= planned {
            remaining
        } else {
            share.max((count * first_test) as u64).min(remaining)
        };

        let elite_items: Vec<S::Candidate> = elites.iter().map(|e| e.0.clone()).collect();
        let candidates = fill_candidates(space, &elite_items, count, iteration, rng);
        let outcome = race(
            candidates.clone(),
            objective,
            next_block,
            RaceSettings {
                max_runs,
                alpha: budget.confidence,
                min_survivors: budget.min_survivors,
                first_test,
            },
        )?;
        if outcome.spent == 0 {
            break;
        }
        spent += outcome.spent;
        next_block += outcome.blocks as u64;
        elites = outcome
            .survivors
            .into_iter()
            .take(budget.min_survivors)
            .collect();
        iterations.push(IterationRecord {
            iteration,
            candidates: candidates.len(),
            blocks: outcome.blocks,
            survivors: elites.iter().map(|e| e.0.clone()).collect(),
            spent,
        });
    }
    if elites.is_empty() {
        return Err(Error::Config(format!(
            "{} runs are not enough to race any candidates",
            budget.total_runs
        )));
    }

    let mut validated = validate(elites, objective, budget.validation_runs)?;
    // stable: equal validation means keep race order
    validated.sort_by(|a, b| b.validation_mean.total_cmp(&a.validation_mean));
    let validation_spent = validated.len() as u64 * budget.validation_runs;
    Ok(TuneOutcome {
        elites: validated,
        iterations,
        spent,
        validation_spent,
    })
}

fn fill_candidates<S: CandidateSpace>(
    space: &S,
    elites: &[S::Candidate],
    count: usize,
    iteration: usize,
    rng: &mut RngStream,
) -> Vec<S::Candidate> {
    let mut out: Vec<S::Candidate> = elites.iter().take(count).cloned().collect();
    let mut seen: HashSet<S::Candidate> = out.iter().cloned().collect();
    let p = perturbation_probability(iteration);
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let c = space::sample_with_probability(space, 1, elites, iteration, p, rng)
            .pop()
            .expect("one sample");
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out
}

fn validate<C, O>(elites: Vec<(C, f64)>, objective: &O, runs: u64) -> Result<Vec<Elite<C>>>
where
    C: Clone + Send + Sync,
    O: Objective<C>,
{
    let blocks: Vec<u64> = (0..runs).map(|j| VALIDATION_BLOCK_BASE + j).collect();
    elites
        .into_iter()
        .map(|(candidate, race_mean)| {
            let scores = score_blocks(&candidate, objective, &blocks)?;
            Ok(Elite {
                race_mean,
                validation_mean: mean(&scores),
                validation_std: std_dev(&scores),
                validation_scores: scores,
                candidate,
            })
        })
        .collect()
}

/// Scores one candidate on many blocks.
pub fn score_blocks<C: Sync, O: Objective<C>>(
    candidate: &C,
    objective: &O,
    blocks: &[u64],
) -> Result<Vec<f64>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        blocks
            .par_iter()
            .map(|&b| objective.score(candidate, b))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        blocks
            .iter()
            .map(|&b| objective.score(candidate, b))
            .collect()
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

fn sort_desc<C>(items: &mut [(C, f64)]) {
    items.sort_by(|a, b| b.1.total_cmp(&a.1));
}
