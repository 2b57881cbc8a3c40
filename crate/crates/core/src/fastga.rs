//! The configurable (mu+lambda) GA engine.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::anytime::AttainmentHistogram;
use crate::bitstring::uniform_bitstring;
use crate::error::{Error, Result};
use crate::operators::{
    crossover, replace, select_index, select_pair_indices, Configuration, Individual, Mutation,
    Population,
};
use crate::rng::RngStream;
use crate::wmodel::{FitnessValue, WModelInstance};

/// Population sizes and evaluation budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaParams {
    pub mu: usize,
    pub lambda: usize,
    pub budget: u64,
}

impl GaParams {
    pub fn new(mu: usize, lambda: usize, budget: u64) -> Result<Self> {
        if mu == 0 || lambda == 0 {
            return Err(Error::InvalidParams("mu and lambda must be >= 1".into()));
        }
        if budget < mu as u64 {
            return Err(Error::InvalidParams(format!(
                "budget {budget} cannot cover the initial population of {mu}"
            )));
        }
        Ok(Self { mu, lambda, budget })
    }

    /// `mu = lambda = 5` and a budget of `factor * n` evaluations.
    pub fn for_instance(inst: &WModelInstance, factor: u64) -> Result<Self> {
        Self::new(5, 5, factor * inst.dimension() as u64)
    }
}

/// Receives every fitness evaluation of a run, in order.
pub trait EvaluationObserver {
    fn observe(&mut self, eval_index: u64, value: FitnessValue) -> Result<()>;
}

impl EvaluationObserver for AttainmentHistogram {
    fn observe(&mut self, eval_index: u64, value: FitnessValue) -> Result<()> {
        AttainmentHistogram::observe(self, eval_index, value)
    }
}

impl<T: EvaluationObserver + ?Sized> EvaluationObserver for &mut T {
    fn observe(&mut self, eval_index: u64, value: FitnessValue) -> Result<()> {
        (**self).observe(eval_index, value)
    }
}

/// Feeds both observers, left first.
impl<A: EvaluationObserver, B: EvaluationObserver> EvaluationObserver for (A, B) {
    fn observe(&mut self, eval_index: u64, value: FitnessValue) -> Result<()> {
        self.0.observe(eval_index, value)?;
        self.1.observe(eval_index, value)
    }
}

/// Discards all evaluations.
pub struct NoObserver;

impl EvaluationObserver for NoObserver {
    fn observe(&mut self, _: u64, _: FitnessValue) -> Result<()> {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_value: FitnessValue,
    pub evals_used: u64,
    /// `(evaluation, best so far)` at the first evaluation and at every improvement.
    pub trajectory: Vec<(u64, FitnessValue)>,
    pub crossover_count: u64,
    pub mutation_count: u64,
    /// Parent population after the last completed generation.
    pub population: Population,
}

struct Tracker<'o, O: EvaluationObserver> {
    inst: &'o WModelInstance,
    observer: O,
    evals: u64,
    best: Option<FitnessValue>,
    trajectory: Vec<(u64, FitnessValue)>,
}

impl<O: EvaluationObserver> Tracker<'_, O> {
    fn evaluate(&mut self, genotype: crate::BitString) -> Result<Individual> {
        let fitness = self.inst.evaluate(&genotype)?;
        self.evals += 1;
        self.observer.observe(self.evals, fitness)?;
        if self.best.is_none_or(|b| fitness > b) {
            self.best = Some(fitness);
            self.trajectory.push((self.evals, fitness));
        }
        Ok(Individual::new(genotype, fitness))
    }
}

/// Runs one configuration until the evaluation budget is spent.
///
/// Each offspring is produced by crossover with probability `p_c` (SelectC, Crossover, one
/// child kept at random, then mutation with probability `p_m`) or otherwise by SelectM
/// followed by mutation. Every offspring costs one evaluation. When the budget runs out
/// inside a generation, the remaining offspring are not created and the generation's
/// replacement is skipped.
pub fn run<O: EvaluationObserver>(
    config: &Configuration,
    inst: &WModelInstance,
    params: &GaParams,
    rng: &mut RngStream,
    observer: O,
) -> Result<RunResult> {
    let params = GaParams::new(params.mu, params.lambda, params.budget)?;
    let n = inst.dimension();
    let mutation = Mutation::new(config.mut_idx(), n)?;
    let (pc, pm) = (config.crossover_rate(), config.mutation_rate());

    let mut t = Tracker {
        inst,
        observer,
        evals: 0,
        best: None,
        trajectory: Vec::new(),
    };
    let mut parents: Population = Vec::with_capacity(params.mu);
    for _ in 0..params.mu {
        let x = uniform_bitstring(n, rng)?;
        parents.push(t.evaluate(x)?);
    }

    let (mut crossovers, mut mutations) = (0u64, 0u64);
    while t.evals < params.budget {
        let mut offspring: Population = Vec::with_capacity(params.lambda);
        for _ in 0..params.lambda {
            if t.evals == params.budget {
                break;
            }
            let child = if rng.bernoulli(pc) {
                let (a, b) = select_pair_indices(config.selc_idx(), &parents, rng)?;
                let (c1, c2) = crossover(
                    config.cross_idx(),
                    &parents[a].genotype,
                    &parents[b].genotype,
                    rng,
                )?;
                crossovers += 1;
                let z = if rng.index(2) == 0 { c1 } else { c2 };
                if rng.bernoulli(pm) {
                    mutations += 1;
                    mutation.apply(&z, rng)?
                } else {
                    z
                }
            } else {
                let i = select_index(config.selm_idx(), &parents, rng)?;
                mutations += 1;
                mutation.apply(&parents[i].genotype, rng)?
            };
            offspring.push(t.evaluate(child)?);
        }
        if offspring.len() < params.lambda {
            break;
        }
        parents = replace(config.repl_idx(), parents, offspring, params.mu, rng)?;
    }

    Ok(RunResult {
        best_value: t.best.expect("mu >= 1 evaluations"),
        evals_used: t.evals,
        trajectory: t.trajectory,
        crossover_count: crossovers,
        mutation_count: mutations,
        population: parents,
    })
}

/// One run observed by a fresh `buckets x buckets` histogram; returns the run's AUC.
pub fn run_auc(
    config: &Configuration,
    inst: &WModelInstance,
    params: &GaParams,
    buckets: usize,
    rng: &mut RngStream,
) -> Result<(f64, RunResult, AttainmentHistogram)> {
    let mut hist = AttainmentHistogram::new(buckets, buckets, inst.v_max(), params.budget)?;
    let result = run(config, inst, params, rng, &mut hist)?;
    hist.finalize_run();
    Ok((hist.auc()?, result, hist))
}

pub const TRAJECTORY_HEADER: &str = "fid,config,seed,eval,best";

/// Trajectory rows (no header), one per improvement.
pub fn trajectory_rows(fid: u32, config: &str, seed: u64, result: &RunResult) -> String {
    let mut out = String::new();
    for &(eval, best) in &result.trajectory {
        let _ = writeln!(out, "{fid},{config},{seed},{eval},{best}");
    }
    out
}

/// The four reference algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Baseline {
    Ea,
    Fea,
    Xga,
    OnePtGa,
}

impl Baseline {
    pub const ALL: [Baseline; 4] = [
        Baseline::Ea,
        Baseline::Fea,
        Baseline::Xga,
        Baseline::OnePtGa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Baseline::Ea => "EA",
            Baseline::Fea => "fEA",
            Baseline::Xga => "xGA",
            Baseline::OnePtGa => "1ptGA",
        }
    }

    pub fn configuration(&self) -> Configuration {
        let slots = match self {
            Baseline::Ea => [0, 0, 0, 0, 0, 1, 0],
            Baseline::Fea => [0, 0, 0, 0, 0, 5, 0],
            Baseline::Xga => [2, 2, 2, 2, 2, 1, 0],
            Baseline::OnePtGa => [2, 2, 5, 2, 2, 1, 0],
        };
        Configuration::from_slots(slots).expect("baseline slots are valid")
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Baseline::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownBaseline(s.to_string()))
    }
}

pub fn baseline(name: &str) -> Result<Configuration> {
    name.parse::<Baseline>().map(|b| b.configuration())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Counter(u64);

    impl EvaluationObserver for Counter {
        fn observe(&mut self, eval_index: u64, _: FitnessValue) -> Result<()> {
            self.0 += 1;
            assert_eq!(eval_index, self.0);
            Ok(())
        }
    }

    #[test]
    fn baselines() {
        assert_eq!(baseline("fEA").unwrap().mut_idx(), 5);
        assert_eq!(baseline("1ptGA").unwrap().cross_idx(), 5);
        assert_eq!(
            baseline("EA").unwrap().to_string(),
            "P5 C0 s0 c0 a0 M0 u0 m1 r0 O0"
        );
        assert_eq!(
            baseline("xGA").unwrap().to_string(),
            "P5 C2 s2 c2 a0 M2 u2 m1 r0 O0"
        );
        assert!(matches!(baseline("GA"), Err(Error::UnknownBaseline(_))));
    }

    #[test]
    fn budget_equal_to_mu() {
        let inst = WModelInstance::from_fid(1).unwrap();
        let params = GaParams::new(5, 5, 5).unwrap();
        let cfg = baseline("EA").unwrap();
        let mut rng = RngStream::new(3, 0);
        let r = run(&cfg, &inst, &params, &mut rng, NoObserver).unwrap();
        assert_eq!(r.evals_used, 5);
        let best_initial = r.population.iter().map(|i| i.fitness).max().unwrap();
        assert_eq!(r.best_value, best_initial);
        assert_eq!(r.mutation_count, 0);
    }

    #[test]
    fn budget_below_mu_is_rejected() {
        assert!(GaParams::new(5, 5, 4).is_err());
        assert!(GaParams::new(0, 5, 10).is_err());
    }

    #[test]
    fn no_crossover_without_rate() {
        let inst = WModelInstance::from_fid(4).unwrap();
        let params = GaParams::for_instance(&inst, 5).unwrap();
        for name in ["EA", "fEA"] {
            let mut rng = RngStream::new(1, 0);
            let r = run(
                &baseline(name).unwrap(),
                &inst,
                &params,
                &mut rng,
                NoObserver,
            )
            .unwrap();
            assert_eq!(r.crossover_count, 0);
            assert_eq!(r.mutation_count, params.budget - 5);
        }
    }

    #[test]
    fn deterministic_trajectories() {
        let inst = WModelInstance::from_fid(1).unwrap();
        let params = GaParams::new(5, 5, 100).unwrap();
        let cfg = baseline("fEA").unwrap();
        let a = run(&cfg, &inst, &params, &mut RngStream::new(9, 2), NoObserver).unwrap();
        let b = run(&cfg, &inst, &params, &mut RngStream::new(9, 2), NoObserver).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn observer_sees_every_evaluation() {
        let inst = WModelInstance::from_fid(3).unwrap();
        for budget in [5u64, 7, 10, 33, 80] {
            let params = GaParams::new(5, 5, budget).unwrap();
            let mut c = Counter(0);
            let r = run(
                &baseline("xGA").unwrap(),
                &inst,
                &params,
                &mut RngStream::new(1, 1),
                &mut c,
            )
            .unwrap();
            assert_eq!(c.0, r.evals_used);
            assert_eq!(r.evals_used, budget);
        }
    }

    #[test]
    fn comma_with_fewer_offspring_fails() {
        let inst = WModelInstance::from_fid(1).unwrap();
        let params = GaParams::new(5, 3, 50).unwrap();
        let cfg = Configuration::new(0, 0, 0, 0, 0, 1, 1).unwrap();
        assert!(matches!(
            run(&cfg, &inst, &params, &mut RngStream::new(1, 1), NoObserver),
            Err(Error::InsufficientOffspring { .. })
        ));
    }

    #[test]
    fn trajectory_csv_rows() {
        let r = RunResult {
            best_value: 4,
            evals_used: 9,
            trajectory: vec![(1, 2), (7, 4)],
            crossover_count: 0,
            mutation_count: 4,
            population: vec![],
        };
        assert_eq!(
            trajectory_rows(3, "P5 C0", 11, &r),
            "3,P5 C0,11,1,2\n3,P5 C0,11,7,4\n"
        );
    }
}
