use std::hash::Hash;

use crate::operators::{Configuration, SLOT_SIZES};
use crate::rng::RngStream;

/// Where the tuner draws candidates from.
pub trait CandidateSpace {
    type Candidate: Clone + Eq + Hash + Send + Sync;

    fn sample(&self, rng: &mut RngStream) -> Self::Candidate;

    /// A copy of `elite` with each component resampled independently with probability `p`.
    fn perturb(&self, elite: &Self::Candidate, p: f64, rng: &mut RngStream) -> Self::Candidate;

    /// Number of distinct candidates, when small enough to matter.
    fn size(&self) -> Option<usize> {
        None
    }
}

/// The full canonical GA design space, sampled slot by slot.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConfigSpace;

impl CandidateSpace for ConfigSpace {
    type Candidate = Configuration;

    fn sample(&self, rng: &mut RngStream) -> Configuration {
        let slots = SLOT_SIZES.map(|size| rng.index(size));
        Configuration::from_slots(slots).expect("indices drawn within slot sizes")
    }

    fn perturb(&self, elite: &Configuration, p: f64, rng: &mut RngStream) -> Configuration {
        let old = elite.slots();
        let mut slots = old;
        for (slot, &size) in slots.iter_mut().zip(SLOT_SIZES.iter()) {
            if rng.bernoulli(p) {
                *slot = rng.index(size);
            }
        }
        // Crossover slots of a p_c = 0 elite carry no information; draw them afresh
        // when crossover gets switched on.
        if old[0] == 0 && slots[0] != 0 {
            for i in 1..=3 {
                slots[i] = rng.index(SLOT_SIZES[i]);
            }
        }
        Configuration::from_slots(slots).expect("indices drawn within slot sizes")
    }
}

/// An explicit list of candidates.
#[derive(Clone, Debug)]
pub struct FiniteSpace<C> {
    items: Vec<C>,
}

impl<C> FiniteSpace<C> {
    pub fn new(items: Vec<C>) -> Self {
        assert!(
            !items.is_empty(),
            "a candidate space needs at least one item"
        );
        Self { items }
    }

    pub fn items(&self) -> &[C] {
        &self.items
    }
}

impl<C: Clone + Eq + Hash + Send + Sync> CandidateSpace for FiniteSpace<C> {
    type Candidate = C;

    fn sample(&self, rng: &mut RngStream) -> C {
        self.items[rng.index(self.items.len())].clone()
    }

    fn perturb(&self, elite: &C, p: f64, rng: &mut RngStream) -> C {
        if rng.bernoulli(p) {
            self.sample(rng)
        } else {
            elite.clone()
        }
    }

    fn size(&self) -> Option<usize> {
        let mut distinct: Vec<&C> = Vec::new();
        for item in &self.items {
            if !distinct.contains(&item) {
                distinct.push(item);
            }
        }
        Some(distinct.len())
    }
}

/// Per-slot resampling probability for `iteration` (1-based): `0.9^iteration`, at least 0.1.
pub fn perturbation_probability(iteration: usize) -> f64 {
    0.9f64.powi(iteration as i32).max(0.1)
}

/// `count` configurations: uniform in the first iteration (or without elites), afterwards
/// perturbed copies of uniformly chosen elites.
pub fn sample_configurations(
    count: usize,
    elites: &[Configuration],
    iteration: usize,
    rng: &mut RngStream,
) -> Vec<Configuration> {
    sample_with_probability(
        &ConfigSpace,
        count,
        elites,
        iteration,
        perturbation_probability(iteration),
        rng,
    )
}

pub(crate) fn sample_with_probability<S: CandidateSpace>(
    space: &S,
    count: usize,
    elites: &[S::Candidate],
    iteration: usize,
    p: f64,
    rng: &mut RngStream,
) -> Vec<S::Candidate> {
    (0..count)
        .map(|_| {
            if iteration <= 1 || elites.is_empty() {
                space.sample(rng)
            } else {
                let elite = &elites[rng.index(elites.len())];
                space.perturb(elite, p, rng)
            }
        })
        .collect()
}

/// Like [`sample_configurations`] with an explicit perturbation probability.
pub fn sample_configurations_with(
    count: usize,
    elites: &[Configuration],
    p_perturb: f64,
    rng: &mut RngStream,
) -> Vec<Configuration> {
    sample_with_probability(&ConfigSpace, count, elites, 2, p_perturb, rng)
}
