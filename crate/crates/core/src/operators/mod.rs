//! Operator slots of the configurable GA family and the configuration space built from them.
//!
//! Each slot is addressed by an integer index, exactly as a [`Configuration`] stores it:
//!
//! | slot      | options | indices                                                     |
//! |-----------|---------|-------------------------------------------------------------|
//! | `p_c`     | 6       | rate in {0, 0.2, 0.4, 0.5, 0.6, 0.8}                         |
//! | SelectC   | 7       | random, stoch. tournament, best, proportional, det. tournaments |
//! | Crossover | 11      | uniform (5 biases), k-point (5 values of k), 1-point          |
//! | `p_m`     | 6       | same rates as `p_c`                                          |
//! | SelectM   | 7       | as SelectC                                                   |
//! | Mutation  | 11      | uniform, Bin(n,1/n), 1+Bin(n-1,1/n), Bin with 0->1, normal, power law, 5 fixed |
//! | Replace   | 11      | plus, comma, SSGA-worse, 3 stoch. + 5 det. tournaments        |

mod config;
mod crossover;
mod mutation;
mod replacement;
mod selection;

pub use config::{
    canonical_space_size, config_space_size, parse_config, Configuration, RATES, SLOT_NAMES,
    SLOT_SIZES,
};
pub use crossover::{crossover, k_point_with_cuts, CROSSOVER_COUNT};
pub use mutation::{mutate, sample_mutation_strength, Mutation, MUTATION_COUNT};
pub use replacement::{replace, REPLACEMENT_COUNT};
pub use selection::{select_index, select_one, select_pair, select_pair_indices, SELECTOR_COUNT};

use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::wmodel::FitnessValue;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Individual {
    pub genotype: BitString,
    pub fitness: FitnessValue,
}

impl Individual {
    pub fn new(genotype: BitString, fitness: FitnessValue) -> Self {
        Self { genotype, fitness }
    }
}

/// An ordered multiset of individuals; duplicates are allowed.
pub type Population = Vec<Individual>;

/// Indices of `pop` ordered by fitness, best first; equal fitness keeps input order.
pub(crate) fn ranked_indices(pop: &[Individual]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pop.len()).collect();
    idx.sort_by(|&a, &b| pop[b].fitness.cmp(&pop[a].fitness));
    idx
}
