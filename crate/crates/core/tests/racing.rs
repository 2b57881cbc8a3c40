use gafoundry::racing::{
    race, tune, CandidateSpace, ConfigSpace, FiniteSpace, GaObjective, Objective, RaceBudget,
    RaceSettings,
};
use gafoundry::{Baseline, Configuration, Error, GaParams, RngStream, WModelInstance};

/// Deterministic score: distinct per candidate, independent of the block.
struct Fixed;

impl Objective<u32> for Fixed {
    fn score(&self, c: &u32, _block: u64) -> gafoundry::Result<f64> {
        Ok(*c as f64)
    }
}

/// Bernoulli arm `i` succeeds with probability `0.1 + 0.8 * i / 99`.
pub struct Arms {
    seed: u64,
}

impl Objective<u32> for Arms {
    fn score(&self, arm: &u32, block: u64) -> gafoundry::Result<f64> {
        let p = 0.1 + 0.8 * *arm as f64 / 99.0;
        let mut rng = RngStream::new(
            self.seed.wrapping_mul(1_000).wrapping_add(*arm as u64),
            block,
        );
        Ok(rng.bernoulli(p) as u8 as f64)
    }
}

#[test]
fn deterministic_objective_returns_argmax() {
    let space = FiniteSpace::new((0..100u32).collect());
    for seed in 0..5 {
        let mut rng = RngStream::new(seed, u64::MAX);
        let out = tune(&space, &Fixed, &RaceBudget::with_runs(3_000), &mut rng).unwrap();
        assert_eq!(out.elites[0].candidate, 99);
        assert!(out.spent <= 3_000);
    }
}

#[test]
fn accounting_bound() {
    let space = FiniteSpace::new((0..40u32).collect());
    let budget = RaceBudget {
        total_runs: 1_000,
        validation_runs: 7,
        ..RaceBudget::default()
    };
    let out = tune(
        &space,
        &Arms { seed: 3 },
        &budget,
        &mut RngStream::new(1, 0),
    )
    .unwrap();
    assert!(out.spent <= budget.total_runs);
    assert_eq!(out.validation_spent, out.elites.len() as u64 * 7);
    assert!(out.elites.len() <= budget.min_survivors);
    for w in out.elites.windows(2) {
        assert!(w[0].validation_mean >= w[1].validation_mean);
    }
}

#[test]
fn too_small_budget_is_a_configuration_error() {
    let space = FiniteSpace::new((0..100u32).collect());
    let err = tune(
        &space,
        &Fixed,
        &RaceBudget::with_runs(99),
        &mut RngStream::new(0, 0),
    )
    .unwrap_err();
    assert!(matches!(err, Error::Config(_)));
}

#[test]
fn race_eliminates_and_respects_budget() {
    let settings = RaceSettings {
        max_runs: 500,
        alpha: 0.05,
        min_survivors: 1,
        first_test: 5,
    };
    let out = race((0..20u32).collect(), &Fixed, 0, settings).unwrap();
    assert_eq!(out.survivors.len(), 1);
    assert_eq!(out.survivors[0].0, 19);
    assert!(out.spent <= 500);
    // 20 candidates x 5 blocks before the first test, then one elimination to the best
    assert_eq!(out.spent, 100);
}

#[test]
fn bernoulli_arms_pick_a_top_arm() {
    let mut hits = 0;
    for rep in 0..20 {
        let settings = RaceSettings {
            max_runs: 20_000,
            alpha: 0.05,
            min_survivors: 1,
            first_test: 5,
        };
        let out = race((0..100u32).collect(), &Arms { seed: rep }, 0, settings).unwrap();
        if out.survivors[0].0 >= 97 {
            hits += 1;
        }
    }
    assert!(hits >= 18, "{hits}/20");
}

#[test]
fn tuning_is_reproducible_and_canonical() {
    let inst = WModelInstance::from_fid(1).unwrap();
    let objective = GaObjective {
        params: GaParams::for_instance(&inst, 5).unwrap(),
        instance: inst,
        buckets: 100,
        master_seed: 42,
    };
    let budget = RaceBudget {
        total_runs: 600,
        validation_runs: 5,
        ..RaceBudget::default()
    };
    let a = tune(
        &ConfigSpace,
        &objective,
        &budget,
        &mut RngStream::new(42, u64::MAX),
    )
    .unwrap();
    let b = tune(
        &ConfigSpace,
        &objective,
        &budget,
        &mut RngStream::new(42, u64::MAX),
    )
    .unwrap();
    let strings = |o: &gafoundry::racing::TuneOutcome<Configuration>| {
        o.elites
            .iter()
            .map(|e| (e.candidate.to_string(), e.validation_mean))
            .collect::<Vec<_>>()
    };
    assert_eq!(strings(&a), strings(&b));
    for e in &a.elites {
        let c = e.candidate;
        assert_eq!(Configuration::from_slots(c.slots()).unwrap(), c);
        assert!((0.0..=10_000.0).contains(&e.validation_mean));
    }
}

#[test]
fn fast_mutation_beats_standard_on_fid2() {
    let inst = WModelInstance::from_fid(2).unwrap();
    let objective = GaObjective {
        params: GaParams::for_instance(&inst, 5).unwrap(),
        instance: inst,
        buckets: 100,
        master_seed: 7,
    };
    let space = FiniteSpace::new(vec![
        Baseline::Ea.configuration(),
        Baseline::Fea.configuration(),
    ]);
    assert_eq!(space.size(), Some(2));
    let budget = RaceBudget::with_runs(2_000);
    let out = tune(
        &space,
        &objective,
        &budget,
        &mut RngStream::new(7, u64::MAX),
    )
    .unwrap();
    assert_eq!(out.elites[0].candidate, Baseline::Fea.configuration());
}
