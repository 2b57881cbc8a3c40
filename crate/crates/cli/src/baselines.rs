use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use gafoundry::fastga::run_auc;
use gafoundry::racing::{mean, std_dev};
use gafoundry::{Baseline, Configuration, GaParams, RngStream, WModelInstance};
use rayon::prelude::*;

use crate::common::{create_dir, pool, write, CliError, CliResult, RunOptions};

#[derive(Args, Debug)]
pub struct BaselineArgs {
    /// Instance ids, comma separated; all instances when omitted.
    #[arg(long, value_delimiter = ',')]
    pub fid: Vec<u32>,
    /// Independent runs per algorithm and instance.
    #[arg(long, default_value_t = 50)]
    pub runs: u64,
    /// Worker threads; defaults to every available core.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub options: RunOptions,
}

/// A batch of runs: every configuration on every instance, `runs` times each.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub instances: Vec<WModelInstance>,
    pub configs: Vec<(String, Configuration)>,
    pub runs: u64,
    pub budget_factor: u64,
    pub buckets: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl ExperimentSpec {
    fn from_args(args: &BaselineArgs) -> CliResult<Self> {
        let opts = &args.options;
        if args.runs == 0 {
            return Err(CliError::usage("--runs must be at least 1"));
        }
        let instances = if args.fid.is_empty() {
            opts.suite()?
        } else {
            args.fid
                .iter()
                .map(|&f| opts.instance(f))
                .collect::<CliResult<_>>()?
        };
        Ok(Self {
            instances,
            configs: Baseline::ALL
                .iter()
                .map(|b| (b.name().to_string(), b.configuration()))
                .collect(),
            runs: args.runs,
            budget_factor: opts.budget_factor,
            buckets: opts.buckets as usize,
            seed: opts.seed,
            output_dir: opts.out.clone(),
        })
    }

    /// AUC of run `j` uses stream `j` of the master seed, so run 0 matches `gafoundry run`.
    fn scores(&self, config: &Configuration, inst: &WModelInstance) -> CliResult<Vec<f64>> {
        let params = GaParams::for_instance(inst, self.budget_factor)?;
        (0..self.runs)
            .into_par_iter()
            .map(|j| {
                let mut rng = RngStream::new(self.seed, j);
                Ok(run_auc(config, inst, &params, self.buckets, &mut rng)?.0)
            })
            .collect()
    }
}

pub fn execute(args: BaselineArgs) -> CliResult {
    let spec = ExperimentSpec::from_args(&args)?;
    let workers = pool(args.jobs)?;
    let mut csv = String::from("fid,algorithm,mean_auc,std_auc,best\n");
    for inst in &spec.instances {
        let stats = spec
            .configs
            .iter()
            .map(|(name, cfg)| {
                let scores = workers.install(|| spec.scores(cfg, inst))?;
                Ok((name.as_str(), mean(&scores), std_dev(&scores)))
            })
            .collect::<CliResult<Vec<_>>>()?;
        // first listed wins ties
        let best = stats
            .iter()
            .enumerate()
            .fold(0, |b, (i, s)| if s.1 > stats[b].1 { i } else { b });
        for (i, (name, m, s)) in stats.iter().enumerate() {
            let _ = writeln!(csv, "{},{name},{m},{s},{}", inst.fid(), u8::from(i == best));
        }
        println!(
            "fid={} best={} auc={}",
            inst.fid(),
            stats[best].0,
            stats[best].1
        );
    }
    create_dir(&spec.output_dir)?;
    write(&spec.output_dir.join("baselines.csv"), &csv)?;
    Ok(())
}
