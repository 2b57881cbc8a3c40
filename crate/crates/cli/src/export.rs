use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use crate::common::{create_dir, write, CliError, CliResult};
use crate::run::RunArtifact;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExportKind {
    Histograms,
    Trajectories,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    pub kind: ExportKind,
    /// Run artifacts (`run-*.json`) written by `run`.
    #[arg(required = true)]
    pub artifacts: Vec<PathBuf>,
    #[arg(long, env = "GAFOUNDRY_OUT", default_value = "gafoundry-out")]
    pub out: PathBuf,
}

fn load(path: &Path) -> CliResult<RunArtifact> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}

pub fn execute(args: ExportArgs) -> CliResult {
    // load everything first so a bad artifact leaves no partial export behind
    let artifacts = args
        .artifacts
        .iter()
        .map(|p| load(p).map(|a| (p, a)))
        .collect::<CliResult<Vec<_>>>()?;
    create_dir(&args.out)?;
    for (path, artifact) in artifacts {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("run");
        let (name, body) = match args.kind {
            ExportKind::Histograms => {
                (format!("{stem}.histogram.csv"), artifact.histogram.to_csv())
            }
            ExportKind::Trajectories => {
                (format!("{stem}.trajectory.csv"), artifact.trajectory_csv())
            }
        };
        let target = args.out.join(name);
        write(&target, &body)?;
        println!("{}", target.display());
    }
    Ok(())
}
