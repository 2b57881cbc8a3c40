use crate::error::{Error, Result};
use crate::operators::selection::{deterministic_tournament, stochastic_tournament};
use crate::operators::{ranked_indices, Individual, Population};
use crate::rng::RngStream;

pub const REPLACEMENT_COUNT: usize = 11;

const STOCH_RATES: [f64; 3] = [0.51, 0.71, 0.91];
const DET_SIZES: [usize; 5] = [2, 4, 6, 8, 10];

/// Builds the next parent population of size `mu` from parents `p` and offspring `q`.
///
/// * 0: plus, best `mu` of `p` and `q`
/// * 1: comma, best `mu` of `q`
/// * 2: SSGA-worse, the best `min(|q|, mu)` offspring overwrite the worst parents
/// * 3-5: `mu` binary stochastic tournaments (rates 0.51, 0.71, 0.91) over `p` and `q`
/// * 6-10: `mu` deterministic tournaments (sizes 2 to 10) over `p` and `q`
///
/// Tournament variants remove each winner from the pool before the next tournament.
/// Where fitness ties decide membership, offspring are preferred over parents.
pub fn replace(
    id: usize,
    p: Population,
    q: Population,
    mu: usize,
    rng: &mut RngStream,
) -> Result<Population> {
    if id >= REPLACEMENT_COUNT {
        return Err(Error::UnknownOperator {
            slot: "replacement",
            index: id,
        });
    }
    if p.len() != mu {
        return Err(Error::InvalidParams(format!(
            "replacement expects {mu} parents, got {}",
            p.len()
        )));
    }
    match id {
        0 => {
            let mut pool = q;
            pool.extend(p);
            Ok(best_of(pool, mu))
        }
        1 => {
            if q.len() < mu {
                return Err(Error::InsufficientOffspring {
                    needed: mu,
                    got: q.len(),
                });
            }
            Ok(best_of(q, mu))
        }
        2 => {
            let r = q.len().min(mu);
            let mut next = best_of(p, mu - r);
            next.extend(best_of(q, r));
            Ok(next)
        }
        _ => {
            let mut pool = q;
            pool.extend(p);
            let mut next = Vec::with_capacity(mu);
            for _ in 0..mu {
                let w = if id <= 5 {
                    stochastic_tournament(&pool, STOCH_RATES[id - 3], rng)
                } else {
                    deterministic_tournament(&pool, DET_SIZES[id - 6], rng)
                };
                next.push(pool.swap_remove(w));
            }
            Ok(next)
        }
    }
}

fn best_of(pool: Vec<Individual>, count: usize) -> Population {
    let order = ranked_indices(&pool);
    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    order
        .into_iter()
        .take(count)
        .map(|i| slots[i].take().expect("each index taken once"))
        .collect()
}
