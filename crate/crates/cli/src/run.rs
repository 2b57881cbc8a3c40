use std::fmt::Write as _;

use clap::Args;
use gafoundry::fastga::{run_auc, TRAJECTORY_HEADER};
use gafoundry::operators::parse_config;
use gafoundry::wmodel::FitnessValue;
use gafoundry::{AttainmentHistogram, Configuration, GaParams, RngStream, WModelInstance};
use serde::{Deserialize, Serialize};

use crate::common::{create_dir, write, CliResult, RunOptions};

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Configuration legend, e.g. "P5 C0 s0 c0 a0 M0 u0 m1 r0 O0".
    pub config: String,
    #[arg(long)]
    pub fid: u32,
    #[command(flatten)]
    pub options: RunOptions,
}

/// Everything needed to re-export one run.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunArtifact {
    pub fid: u32,
    pub instance: WModelInstance,
    pub config: String,
    pub seed: u64,
    pub params: GaParams,
    pub auc: f64,
    pub best_value: FitnessValue,
    pub evals_used: u64,
    pub trajectory: Vec<(u64, FitnessValue)>,
    pub histogram: AttainmentHistogram,
}

impl RunArtifact {
    pub fn trajectory_csv(&self) -> String {
        let mut out = format!("{TRAJECTORY_HEADER}\n");
        for &(eval, best) in &self.trajectory {
            let _ = writeln!(
                out,
                "{},{},{},{eval},{best}",
                self.fid, self.config, self.seed
            );
        }
        out
    }
}

/// `run-f<fid>-s<seed>-p<pop>-<slots>`, unique per (instance, seed, configuration).
fn artifact_stem(fid: u32, seed: u64, config: &Configuration, population: usize) -> String {
    let slots: Vec<String> = config.slots().iter().map(|s| s.to_string()).collect();
    format!("run-f{fid}-s{seed}-p{population}-{}", slots.join("_"))
}

pub fn execute(args: RunArgs) -> CliResult {
    let (config, population) = parse_config(&args.config)?;
    let opts = &args.options;
    let inst = opts.instance(args.fid)?;
    let params = GaParams::new(
        population,
        population,
        opts.budget_factor * inst.dimension() as u64,
    )?;
    let mut rng = RngStream::new(opts.seed, 0);
    let (auc, result, histogram) =
        run_auc(&config, &inst, &params, opts.buckets as usize, &mut rng)?;

    let legend = config.legend(population);
    create_dir(&opts.out)?;
    let stem = artifact_stem(args.fid, opts.seed, &config, population);
    let artifact = RunArtifact {
        fid: args.fid,
        instance: inst,
        config: legend,
        seed: opts.seed,
        params,
        auc,
        best_value: result.best_value,
        evals_used: result.evals_used,
        trajectory: result.trajectory,
        histogram,
    };
    write(
        &opts.out.join(format!("{stem}.trajectory.csv")),
        &artifact.trajectory_csv(),
    )?;
    write(
        &opts.out.join(format!("{stem}.json")),
        &serde_json::to_string(&artifact)?,
    )?;
    println!("auc={auc}");
    Ok(())
}
