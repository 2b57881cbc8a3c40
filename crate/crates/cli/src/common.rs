use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use gafoundry::wmodel::from_csv;
use gafoundry::{Error, WModelInstance};

pub const RUNTIME_FAILURE: u8 = 1;
pub const USAGE_ERROR: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE_ERROR,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: RUNTIME_FAILURE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownInstance(_) | Error::UnknownBaseline(_) => {
                Self::usage(e.to_string())
            }
            _ => Self::runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::runtime(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::runtime(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

/// Options shared by the commands that execute GA runs.
#[derive(Args, Clone, Debug)]
pub struct RunOptions {
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evaluation budget as a multiple of the instance dimension.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_factor: u64,
    /// Histogram buckets per axis.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub buckets: u64,
    /// Instance CSV replacing the built-in suite.
    #[arg(long, value_name = "FILE")]
    pub instances: Option<PathBuf>,
    /// Output directory.
    #[arg(long, env = "GAFOUNDRY_OUT", default_value = "gafoundry-out")]
    pub out: PathBuf,
}

impl RunOptions {
    pub fn suite(&self) -> CliResult<Vec<WModelInstance>> {
        match &self.instances {
            None => Ok(gafoundry::wmodel::instances()),
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
                Ok(from_csv(&text)?)
            }
        }
    }

    pub fn instance(&self, fid: u32) -> CliResult<WModelInstance> {
        self.suite()?
            .into_iter()
            .find(|i| i.fid() == fid)
            .ok_or_else(|| CliError::usage(format!("unknown instance {fid}")))
    }
}

/// Worker pool for independent runs; `None` uses every available core.
pub fn pool(jobs: Option<usize>) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::runtime(e.to_string()))
}

pub fn create_dir(dir: &Path) -> CliResult {
    fs::create_dir_all(dir).map_err(|e| CliError::runtime(format!("{}: {e}", dir.display())))
}

pub fn write(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}
