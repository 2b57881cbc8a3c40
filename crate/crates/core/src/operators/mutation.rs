//! Unary unbiased mutations, each defined by a distribution over the flip count `k`.

use crate::bitstring::{flip_k, BitString};
use crate::error::{Error, Result};
use crate::rng::RngStream;

pub const MUTATION_COUNT: usize = 11;

const NORMAL_VARIANCE: f64 = 1.5;
const POWER_LAW_BETA: f64 = 1.5;
const FIXED_STRENGTHS: [usize; 5] = [1, 3, 5, 7, 9];

#[derive(Clone, Debug)]
enum Strength {
    Uniform,
    /// Inverse-CDF table; `shift` is added to the draw and `zero_to_one` remaps 0 to 1.
    Table {
        cdf: Vec<f64>,
        shift: usize,
        zero_to_one: bool,
    },
    Normal,
    Fixed(usize),
}

/// A mutation operator prepared for a fixed dimension `n`.
///
/// Tables for the binomial and power-law strengths are built once here, so an engine should
/// construct one `Mutation` per run rather than call [`sample_mutation_strength`] per offspring.
#[derive(Clone, Debug)]
pub struct Mutation {
    id: usize,
    n: usize,
    strength: Strength,
}

impl Mutation {
    pub fn new(id: usize, n: usize) -> Result<Self> {
        if id >= MUTATION_COUNT {
            return Err(Error::UnknownOperator {
                slot: "mutation",
                index: id,
            });
        }
        if n < 2 {
            return Err(Error::InvalidDimension(format!(
                "mutation needs n >= 2, got {n}"
            )));
        }
        let p = 1.0 / n as f64;
        let strength = match id {
            0 => Strength::Uniform,
            1 => Strength::Table {
                cdf: binomial_cdf(n, p),
                shift: 0,
                zero_to_one: false,
            },
            2 => Strength::Table {
                cdf: binomial_cdf(n - 1, p),
                shift: 1,
                zero_to_one: false,
            },
            3 => Strength::Table {
                cdf: binomial_cdf(n, p),
                shift: 0,
                zero_to_one: true,
            },
            4 => Strength::Normal,
            5 => Strength::Table {
                cdf: power_law_cdf(n / 2, POWER_LAW_BETA),
                shift: 1,
                zero_to_one: false,
            },
            _ => {
                let k = FIXED_STRENGTHS[id - 6];
                if k > n {
                    return Err(Error::InvalidStrength { k, n });
                }
                Strength::Fixed(k)
            }
        };
        Ok(Self { id, n, strength })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn sample_strength(&self, rng: &mut RngStream) -> usize {
        match &self.strength {
            Strength::Uniform => rng.index(self.n + 1),
            Strength::Table {
                cdf,
                shift,
                zero_to_one,
            } => {
                let u = rng.uniform();
                let k = cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1) + shift;
                if *zero_to_one && k == 0 {
                    1
                } else {
                    k
                }
            }
            Strength::Normal => {
                let draw = 1.0 + NORMAL_VARIANCE.sqrt() * rng.standard_normal();
                // libm::round rounds half away from zero
                let k = libm::round(draw);
                if k < 0.0 {
                    0
                } else if k > self.n as f64 {
                    rng.index(self.n + 1)
                } else {
                    k as usize
                }
            }
            Strength::Fixed(k) => *k,
        }
    }

    pub fn apply(&self, x: &BitString, rng: &mut RngStream) -> Result<BitString> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let k = self.sample_strength(rng);
        flip_k(x, k, rng)
    }
}

pub fn sample_mutation_strength(id: usize, n: usize, rng: &mut RngStream) -> Result<usize> {
    Ok(Mutation::new(id, n)?.sample_strength(rng))
}

pub fn mutate(id: usize, x: &BitString, rng: &mut RngStream) -> Result<BitString> {
    Mutation::new(id, x.len())?.apply(x, rng)
}

/// CDF of Binomial(trials, p) at 0..=trials, with the last entry pinned to 1.
fn binomial_cdf(trials: usize, p: f64) -> Vec<f64> {
    let ratio = p / (1.0 - p);
    let mut pmf = libm::pow(1.0 - p, trials as f64);
    let mut acc = 0.0;
    let mut cdf = Vec::with_capacity(trials + 1);
    for k in 0..=trials {
        acc += pmf;
        cdf.push(acc);
        pmf *= (trials - k) as f64 / (k + 1) as f64 * ratio;
    }
    *cdf.last_mut().unwrap() = 1.0;
    cdf
}

/// CDF of P[k] proportional to k^-beta on 1..=max_k, indexed from k = 1.
fn power_law_cdf(max_k: usize, beta: f64) -> Vec<f64> {
    let weights: Vec<f64> = (1..=max_k).map(|k| libm::pow(k as f64, -beta)).collect();
    let norm: f64 = weights.iter().sum();
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = weights
        .iter()
        .map(|w| {
            acc += w / norm;
            acc
        })
        .collect();
    *cdf.last_mut().unwrap() = 1.0;
    cdf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::{hamming, uniform_bitstring};

    #[test]
    fn fixed_strengths() {
        let mut rng = RngStream::new(1, 0);
        for (id, k) in (6..11).zip(FIXED_STRENGTHS) {
            for _ in 0..20 {
                assert_eq!(sample_mutation_strength(id, 20, &mut rng).unwrap(), k);
            }
        }
        assert_eq!(
            Mutation::new(10, 8).unwrap_err(),
            Error::InvalidStrength { k: 9, n: 8 }
        );
    }

    #[test]
    fn strength_ranges() {
        let mut rng = RngStream::new(2, 0);
        for n in [2usize, 3, 16, 100] {
            for id in 0..6 {
                let m = Mutation::new(id, n).unwrap();
                for _ in 0..2000 {
                    let k = m.sample_strength(&mut rng);
                    assert!(k <= n, "id {id} n {n} k {k}");
                    if id == 2 || id == 3 || id == 5 {
                        assert!(k >= 1);
                    }
                    if id == 5 {
                        assert!(k <= n / 2);
                    }
                }
            }
        }
    }

    #[test]
    fn shifted_always_changes_the_point() {
        let mut rng = RngStream::new(3, 0);
        let x = uniform_bitstring(50, &mut rng).unwrap();
        for _ in 0..500 {
            assert_ne!(mutate(3, &x, &mut rng).unwrap(), x);
            assert_eq!(hamming(&x, &mutate(6, &x, &mut rng).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn cdf_tables_are_monotone_and_closed() {
        for cdf in [
            binomial_cdf(100, 0.01),
            binomial_cdf(15, 1.0 / 16.0),
            power_law_cdf(50, 1.5),
        ] {
            assert!(cdf.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(*cdf.last().unwrap(), 1.0);
        }
        // P[B(2, 1/2) = 0] = 1/4
        assert!((binomial_cdf(2, 0.5)[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let mut rng = RngStream::new(0, 0);
        assert!(matches!(
            sample_mutation_strength(11, 10, &mut rng),
            Err(Error::UnknownOperator { .. })
        ));
        assert!(sample_mutation_strength(0, 1, &mut rng).is_err());
        let m = Mutation::new(1, 10).unwrap();
        assert!(m.apply(&BitString::zeros(11).unwrap(), &mut rng).is_err());
    }
}
