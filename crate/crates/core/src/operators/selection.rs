use crate::error::{Error, Result};
use crate::operators::{ranked_indices, Individual};
use crate::rng::RngStream;

pub const SELECTOR_COUNT: usize = 7;

const STOCH_TOURNAMENT_RATE: f64 = 0.5;
const DET_TOURNAMENT_SIZES: [usize; 3] = [2, 6, 10];

/// Position of one member chosen by selector `id`.
///
/// * 0: uniform
/// * 1: binary stochastic tournament, rate 0.5
/// * 2: best member (lowest position on ties)
/// * 3: fitness-proportional, uniform if all fitness is zero
/// * 4-6: deterministic tournament of size 2, 6, 10 (capped at the population size)
pub fn select_index(id: usize, pop: &[Individual], rng: &mut RngStream) -> Result<usize> {
    if id >= SELECTOR_COUNT {
        return Err(Error::UnknownOperator {
            slot: "selection",
            index: id,
        });
    }
    if pop.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    Ok(match id {
        0 => rng.index(pop.len()),
        1 => stochastic_tournament(pop, STOCH_TOURNAMENT_RATE, rng),
        2 => ranked_indices(pop)[0],
        3 => proportional(pop, rng),
        _ => deterministic_tournament(pop, DET_TOURNAMENT_SIZES[id - 4], rng),
    })
}

pub fn select_one<'a>(
    id: usize,
    pop: &'a [Individual],
    rng: &mut RngStream,
) -> Result<&'a Individual> {
    select_index(id, pop, rng).map(|i| &pop[i])
}

/// Two positions for crossover. Selector 2 returns the two distinct best positions; every
/// other selector is called twice without removing the first pick.
pub fn select_pair_indices(
    id: usize,
    pop: &[Individual],
    rng: &mut RngStream,
) -> Result<(usize, usize)> {
    if id == 2 {
        if pop.len() < 2 {
            return Err(Error::InvalidParams(
                "selecting the two best needs at least two members".into(),
            ));
        }
        let ranked = ranked_indices(pop);
        return Ok((ranked[0], ranked[1]));
    }
    let first = select_index(id, pop, rng)?;
    let second = select_index(id, pop, rng)?;
    Ok((first, second))
}

pub fn select_pair<'a>(
    id: usize,
    pop: &'a [Individual],
    rng: &mut RngStream,
) -> Result<(&'a Individual, &'a Individual)> {
    select_pair_indices(id, pop, rng).map(|(a, b)| (&pop[a], &pop[b]))
}

/// Two distinct contestants (one if the pool has a single member); the fitter wins with
/// probability `max(rate, 0.5)`, the first drawn wins ties.
pub(crate) fn stochastic_tournament(pop: &[Individual], rate: f64, rng: &mut RngStream) -> usize {
    if pop.len() == 1 {
        return 0;
    }
    let a = rng.index(pop.len());
    let mut b = rng.index(pop.len() - 1);
    if b >= a {
        b += 1;
    }
    let (better, worse) = if pop[b].fitness > pop[a].fitness {
        (b, a)
    } else {
        (a, b)
    };
    if rng.bernoulli(rate.max(0.5)) {
        better
    } else {
        worse
    }
}

/// Best of `k` distinct uniformly drawn members; `k` is capped at the pool size.
pub(crate) fn deterministic_tournament(pop: &[Individual], k: usize, rng: &mut RngStream) -> usize {
    let n = pop.len();
    let k = k.min(n);
    let mut idx: Vec<usize> = (0..n).collect();
    let mut winner = None::<usize>;
    for i in 0..k {
        let j = i + rng.index(n - i);
        idx.swap(i, j);
        let c = idx[i];
        if winner.is_none_or(|w| pop[c].fitness > pop[w].fitness) {
            winner = Some(c);
        }
    }
    winner.expect("k >= 1")
}

fn proportional(pop: &[Individual], rng: &mut RngStream) -> usize {
    let total: u64 = pop.iter().map(|i| i.fitness as u64).sum();
    if total == 0 {
        return rng.index(pop.len());
    }
    let mut ticket = rng.below(total);
    for (i, ind) in pop.iter().enumerate() {
        let f = ind.fitness as u64;
        if ticket < f {
            return i;
        }
        ticket -= f;
    }
    unreachable!("ticket below total fitness")
}
