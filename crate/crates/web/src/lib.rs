//! WebAssembly bindings for the static demo page in `www/`.
//!
//! The `*_data` functions hold the logic and are tested natively; the `#[wasm_bindgen]`
//! wrappers only convert errors into JavaScript exceptions.

use gafoundry::fastga::run_auc;
use gafoundry::operators::parse_config;
use gafoundry::wmodel::ruggedness_table;
use gafoundry::{AttainmentHistogram, GaParams, RngStream, WModelInstance};
use wasm_bindgen::prelude::*;

/// Upper bound on runs per heatmap so the page stays responsive.
pub const MAX_RUNS: u32 = 500;

/// Attained fractions of a multi-run histogram, row-major with the lowest target first.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct Heatmap {
    rows: usize,
    cols: usize,
    fractions: Vec<f64>,
    auc: f64,
    v_max: usize,
    budget: u64,
}

#[wasm_bindgen]
impl Heatmap {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn fractions(&self) -> Vec<f64> {
        self.fractions.clone()
    }

    pub fn auc(&self) -> f64 {
        self.auc
    }

    #[wasm_bindgen(js_name = vMax)]
    pub fn v_max(&self) -> usize {
        self.v_max
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }
}

/// Best-so-far curve of one run, as parallel arrays of improvement points.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct Trajectory {
    evals: Vec<f64>,
    values: Vec<f64>,
    v_max: usize,
    budget: u64,
    auc: f64,
}

#[wasm_bindgen]
impl Trajectory {
    pub fn evals(&self) -> Vec<f64> {
        self.evals.clone()
    }

    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    #[wasm_bindgen(js_name = vMax)]
    pub fn v_max(&self) -> usize {
        self.v_max
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn auc(&self) -> f64 {
        self.auc
    }
}

fn setup(
    config: &str,
    fid: u32,
    budget_factor: u64,
) -> gafoundry::Result<(gafoundry::Configuration, WModelInstance, GaParams)> {
    let (cfg, population) = parse_config(config)?;
    let inst = WModelInstance::from_fid(fid)?;
    let params = GaParams::new(
        population,
        population,
        budget_factor * inst.dimension() as u64,
    )?;
    Ok((cfg, inst, params))
}

/// Histogram over `runs` runs on streams `0..runs` of `seed`, with `buckets` per axis.
pub fn heatmap_data(
    config: &str,
    fid: u32,
    runs: u32,
    seed: u64,
    buckets: usize,
) -> gafoundry::Result<Heatmap> {
    if runs == 0 || runs > MAX_RUNS {
        return Err(gafoundry::Error::InvalidParams(format!(
            "runs must be in 1..={MAX_RUNS}"
        )));
    }
    let (cfg, inst, params) = setup(config, fid, 5)?;
    let mut total = AttainmentHistogram::new(buckets, buckets, inst.v_max(), params.budget)?;
    for j in 0..runs {
        let (_, _, h) = run_auc(
            &cfg,
            &inst,
            &params,
            buckets,
            &mut RngStream::new(seed, j as u64),
        )?;
        total = total.merge(&h)?;
    }
    let fractions = (0..buckets)
        .flat_map(|i| (0..buckets).map(move |j| (i, j)))
        .map(|(i, j)| total.fraction(i, j))
        .collect();
    Ok(Heatmap {
        rows: buckets,
        cols: buckets,
        fractions,
        auc: total.auc()?,
        v_max: inst.v_max(),
        budget: params.budget,
    })
}

/// One run on stream 0 of `seed`, matching `gafoundry run`.
pub fn trajectory_data(
    config: &str,
    fid: u32,
    seed: u64,
    budget_factor: u64,
) -> gafoundry::Result<Trajectory> {
    let (cfg, inst, params) = setup(config, fid, budget_factor)?;
    let (auc, result, _) = run_auc(&cfg, &inst, &params, 100, &mut RngStream::new(seed, 0))?;
    let (evals, values) = result
        .trajectory
        .iter()
        .map(|&(e, v)| (e as f64, v as f64))
        .unzip();
    Ok(Trajectory {
        evals,
        values,
        v_max: inst.v_max(),
        budget: params.budget,
        auc,
    })
}

/// Ruggedness lookup of instance `fid`: entry `v` is the reported value for OneMax value `v`.
pub fn ruggedness_data(fid: u32) -> gafoundry::Result<Vec<u32>> {
    let inst = WModelInstance::from_fid(fid)?;
    ruggedness_table(inst.ruggedness_gamma(), inst.v_max())
}

fn to_js(e: gafoundry::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn heatmap(
    config: &str,
    fid: u32,
    runs: u32,
    seed: u64,
    buckets: usize,
) -> Result<Heatmap, JsError> {
    heatmap_data(config, fid, runs, seed, buckets).map_err(to_js)
}

#[wasm_bindgen]
pub fn trajectory(
    config: &str,
    fid: u32,
    seed: u64,
    budget_factor: u64,
) -> Result<Trajectory, JsError> {
    trajectory_data(config, fid, seed, budget_factor).map_err(to_js)
}

#[wasm_bindgen]
pub fn ruggedness(fid: u32) -> Result<Vec<u32>, JsError> {
    ruggedness_data(fid).map_err(to_js)
}

/// Suite rows as a flat array `fid, dim, mu, nu, gamma, v_max, ...`.
#[wasm_bindgen]
pub fn suite() -> Vec<u32> {
    gafoundry::wmodel::instances()
        .iter()
        .flat_map(|i| {
            [
                i.fid(),
                i.dimension() as u32,
                i.neutrality_mu() as u32,
                i.epistasis_nu() as u32,
                i.ruggedness_gamma() as u32,
                i.v_max() as u32,
            ]
        })
        .collect()
}
