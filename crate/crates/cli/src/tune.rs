use std::fmt::Write as _;

use clap::Args;
use gafoundry::racing::{
    mean, score_blocks, std_dev, tune, ConfigSpace, GaObjective, RaceBudget, VALIDATION_BLOCK_BASE,
};
use gafoundry::{Baseline, Configuration, GaParams, RngStream};
use serde::Serialize;

use crate::common::{create_dir, pool, write, CliError, CliResult, RunOptions};

/// Stream of the master seed reserved for candidate sampling; run blocks use low stream ids.
const SAMPLER_STREAM: u64 = u64::MAX;
const POPULATION: usize = 5;

#[derive(Args, Debug)]
pub struct TuneArgs {
    #[arg(long)]
    pub fid: u32,
    /// Racing budget in target runs.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    /// Validation runs per elite and per baseline.
    #[arg(long, default_value_t = 50)]
    pub validation_runs: u64,
    /// Significance level of the elimination tests.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Worker threads; defaults to every available core.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub options: RunOptions,
}

#[derive(Serialize)]
struct IterationReport {
    iteration: usize,
    candidates: usize,
    blocks: usize,
    survivors: Vec<String>,
    spent: u64,
}

#[derive(Serialize)]
struct EliteReport {
    config: String,
    slots: Configuration,
    race_mean: f64,
    validation_mean: f64,
    validation_std: f64,
}

#[derive(Serialize)]
struct BaselineReport {
    name: &'static str,
    config: String,
    validation_mean: f64,
    validation_std: f64,
}

#[derive(Serialize)]
struct TuneReport {
    fid: u32,
    seed: u64,
    budget: u64,
    validation_runs: u64,
    spent: u64,
    validation_spent: u64,
    iterations: Vec<IterationReport>,
    elites: Vec<EliteReport>,
    baselines: Vec<BaselineReport>,
    best_baseline: &'static str,
    /// `(elite - best baseline) / best baseline` on the shared validation runs.
    rel_gain: f64,
}

pub fn execute(args: TuneArgs) -> CliResult {
    let opts = &args.options;
    if args.validation_runs == 0 {
        return Err(CliError::usage("--validation-runs must be at least 1"));
    }
    let inst = opts.instance(args.fid)?;
    let objective = GaObjective {
        params: GaParams::for_instance(&inst, opts.budget_factor)?,
        instance: inst,
        buckets: opts.buckets as usize,
        master_seed: opts.seed,
    };
    let budget = RaceBudget {
        total_runs: args.budget,
        validation_runs: args.validation_runs,
        confidence: args.alpha,
        ..RaceBudget::default()
    };
    let workers = pool(args.jobs)?;
    let mut rng = RngStream::new(opts.seed, SAMPLER_STREAM);
    let outcome = workers.install(|| tune(&ConfigSpace, &objective, &budget, &mut rng))?;

    let blocks: Vec<u64> = (0..args.validation_runs)
        .map(|j| VALIDATION_BLOCK_BASE + j)
        .collect();
    let mut baselines = Vec::new();
    let mut baseline_scores = Vec::new();
    for b in Baseline::ALL {
        let cfg = b.configuration();
        let scores = workers.install(|| score_blocks(&cfg, &objective, &blocks))?;
        baselines.push(BaselineReport {
            name: b.name(),
            config: cfg.legend(POPULATION),
            validation_mean: mean(&scores),
            validation_std: std_dev(&scores),
        });
        baseline_scores.push(scores);
    }
    let best = baselines.iter().enumerate().fold(0, |b, (i, r)| {
        if r.validation_mean > baselines[b].validation_mean {
            i
        } else {
            b
        }
    });
    let top = &outcome.elites[0];
    let rel_gain =
        (top.validation_mean - baselines[best].validation_mean) / baselines[best].validation_mean;

    let report = TuneReport {
        fid: args.fid,
        seed: opts.seed,
        budget: args.budget,
        validation_runs: args.validation_runs,
        spent: outcome.spent,
        validation_spent: outcome.validation_spent,
        iterations: outcome
            .iterations
            .iter()
            .map(|it| IterationReport {
                iteration: it.iteration,
                candidates: it.candidates,
                blocks: it.blocks,
                survivors: it.survivors.iter().map(|c| c.legend(POPULATION)).collect(),
                spent: it.spent,
            })
            .collect(),
        elites: outcome
            .elites
            .iter()
            .map(|e| EliteReport {
                config: e.candidate.legend(POPULATION),
                slots: e.candidate,
                race_mean: e.race_mean,
                validation_mean: e.validation_mean,
                validation_std: e.validation_std,
            })
            .collect(),
        best_baseline: baselines[best].name,
        baselines,
        rel_gain,
    };

    let mut csv = String::from("algorithm,run,auc\n");
    let labelled = outcome
        .elites
        .iter()
        .map(|e| (e.candidate.legend(POPULATION), &e.validation_scores))
        .chain(
            report
                .baselines
                .iter()
                .map(|b| b.name.to_string())
                .zip(&baseline_scores),
        );
    for (label, scores) in labelled {
        for (j, s) in scores.iter().enumerate() {
            let _ = writeln!(csv, "{label},{j},{s}");
        }
    }

    create_dir(&opts.out)?;
    let stem = format!("tune-f{}-s{}", args.fid, opts.seed);
    write(
        &opts.out.join(format!("{stem}.json")),
        &serde_json::to_string_pretty(&report)?,
    )?;
    write(&opts.out.join(format!("{stem}-validation.csv")), &csv)?;
    println!(
        "elite=\"{}\" auc={} best_baseline={} baseline_auc={} rel_gain={}",
        report.elites[0].config,
        report.elites[0].validation_mean,
        report.best_baseline,
        report.baselines[best].validation_mean,
        report.rel_gain
    );
    Ok(())
}
