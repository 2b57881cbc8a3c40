use clap::Args;
use gafoundry::fastga::run_auc;
use gafoundry::operators::SLOT_NAMES;
use gafoundry::{Configuration, GaParams, RngStream};

use crate::common::{CliError, CliResult};

/// External-tuner call: `<config-id> <instance-id> <seed> <instance> [--<slot> <index>]...`.
///
/// Slot flags are `--pc --selc --cross --pm --selm --mut --repl`; omitted slots default to 0
/// because tuners drop inactive conditional parameters. `--budget-factor`, `--buckets` and
/// `--population` are also accepted. The single output line is the cost, i.e. negated AUC.
#[derive(Args, Debug)]
pub struct RunnerArgs {
    pub config_id: String,
    pub instance_id: String,
    pub seed: u64,
    /// Instance id: `7`, `f7` or `fid7`.
    pub instance: String,
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    pub rest: Vec<String>,
}

struct RunnerOptions {
    slots: [usize; 7],
    budget_factor: u64,
    buckets: usize,
    population: usize,
}

fn parse_instance(s: &str) -> CliResult<u32> {
    let digits = s
        .strip_prefix("fid")
        .or_else(|| s.strip_prefix('f'))
        .unwrap_or(s);
    digits
        .parse()
        .map_err(|_| CliError::runtime(format!("instance `{s}` is not an instance id")))
}

fn parse_options(rest: &[String]) -> CliResult<RunnerOptions> {
    let mut opts = RunnerOptions {
        slots: [0; 7],
        budget_factor: 5,
        buckets: 100,
        population: 5,
    };
    let mut it = rest.iter();
    while let Some(flag) = it.next() {
        let name = flag.strip_prefix("--").ok_or_else(|| {
            CliError::runtime(format!("expected a `--slot value` pair, got `{flag}`"))
        })?;
        let value = it
            .next()
            .ok_or_else(|| CliError::runtime(format!("missing value for `{flag}`")))?;
        let number = |v: &str| -> CliResult<u64> {
            v.parse().map_err(|_| {
                CliError::runtime(format!(
                    "value `{v}` of `{flag}` is not a non-negative integer"
                ))
            })
        };
        match name {
            "budget-factor" => opts.budget_factor = number(value)?,
            "buckets" => opts.buckets = number(value)? as usize,
            "population" => opts.population = number(value)? as usize,
            _ => {
                let slot = SLOT_NAMES
                    .iter()
                    .position(|s| *s == name)
                    .ok_or_else(|| CliError::runtime(format!("unknown slot `{name}`")))?;
                opts.slots[slot] = number(value)? as usize;
            }
        }
    }
    Ok(opts)
}

pub fn execute(args: RunnerArgs) -> CliResult {
    let opts = parse_options(&args.rest)?;
    let fid = parse_instance(&args.instance)?;
    let inst =
        gafoundry::WModelInstance::from_fid(fid).map_err(|e| CliError::runtime(e.to_string()))?;
    let config =
        Configuration::from_slots(opts.slots).map_err(|e| CliError::runtime(e.to_string()))?;
    let params = GaParams::new(
        opts.population,
        opts.population,
        opts.budget_factor * inst.dimension() as u64,
    )
    .map_err(|e| CliError::runtime(e.to_string()))?;
    let mut rng = RngStream::new(args.seed, 0);
    let auc = run_auc(&config, &inst, &params, opts.buckets, &mut rng)
        .map_err(|e| CliError::runtime(e.to_string()))?
        .0;
    println!("{}", -auc);
    Ok(())
}
