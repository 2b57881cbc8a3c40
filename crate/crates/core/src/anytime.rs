//! Bucketed two-dimensional ECDF of (quality, time) attainment and its AUC.
//!
//! A run attains cell `(i, j)` when, within the evaluations falling into time buckets
//! `0..=j`, its best-so-far value reaches target bucket `i`. Target rows are inclusive
//! downward: reaching bucket `q` attains rows `0..=q`, so row 0 is the trivial target.
//! The histogram keeps one counter per cell; AUC is the sum of attained fractions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wmodel::FitnessValue;

pub const DEFAULT_BUCKETS: usize = 100;

/// `floor((x - lo) / (hi - lo) * buckets)`, clamped to `buckets - 1` at `x = hi`.
pub fn bucket_index(x: f64, lo: f64, hi: f64, buckets: usize) -> Result<usize> {
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || buckets == 0 {
        return Err(Error::InvalidParams(format!(
            "bucket_index needs lo < hi and buckets >= 1 (lo={lo}, hi={hi}, buckets={buckets})"
        )));
    }
    if !(lo..=hi).contains(&x) {
        return Err(Error::OutOfRange { value: x, lo, hi });
    }
    // multiply before dividing so integer inputs bucket exactly
    let b = ((x - lo) * buckets as f64 / (hi - lo)).floor() as usize;
    Ok(b.min(buckets - 1))
}

/// Exact integer form of [`bucket_index`] for `lo = 0`.
#[inline]
fn bucket_of(x: u64, hi: u64, buckets: usize) -> usize {
    ((x as u128 * buckets as u128 / hi as u128) as usize).min(buckets - 1)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct ActiveRun {
    last_eval: u64,
    best: Option<FitnessValue>,
    /// Highest target row reached by evaluations inside each time column.
    reach: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttainmentHistogram {
    target_buckets: usize,
    budget_buckets: usize,
    v_max: usize,
    budget: u64,
    /// Row-major, `target_buckets` rows of `budget_buckets` counters.
    counts: Vec<u32>,
    run_count: u32,
    #[serde(skip)]
    active: Option<ActiveRun>,
}

impl AttainmentHistogram {
    pub fn new(
        target_buckets: usize,
        budget_buckets: usize,
        v_max: usize,
        budget: u64,
    ) -> Result<Self> {
        if target_buckets == 0 || budget_buckets == 0 {
            return Err(Error::InvalidParams("bucket counts must be >= 1".into()));
        }
        if v_max == 0 || budget == 0 {
            return Err(Error::InvalidParams("v_max and budget must be >= 1".into()));
        }
        Ok(Self {
            target_buckets,
            budget_buckets,
            v_max,
            budget,
            counts: vec![0; target_buckets * budget_buckets],
            run_count: 0,
            active: None,
        })
    }

    /// 100 x 100 buckets.
    pub fn with_default_buckets(v_max: usize, budget: u64) -> Result<Self> {
        Self::new(DEFAULT_BUCKETS, DEFAULT_BUCKETS, v_max, budget)
    }

    pub fn target_buckets(&self) -> usize {
        self.target_buckets
    }

    pub fn budget_buckets(&self) -> usize {
        self.budget_buckets
    }

    pub fn v_max(&self) -> usize {
        self.v_max
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn run_count(&self) -> u32 {
        self.run_count
    }

    pub fn count(&self, target: usize, column: usize) -> u32 {
        self.counts[target * self.budget_buckets + column]
    }

    /// Fraction of committed runs attaining the cell; 0 when there are no runs.
    pub fn fraction(&self, target: usize, column: usize) -> f64 {
        if self.run_count == 0 {
            0.0
        } else {
            self.count(target, column) as f64 / self.run_count as f64
        }
    }

    /// Records evaluation number `eval_index` (1-based, consecutive) of the active run.
    pub fn observe(&mut self, eval_index: u64, value: FitnessValue) -> Result<()> {
        let active = self.active.get_or_insert_with(|| ActiveRun {
            last_eval: 0,
            best: None,
            reach: vec![None; self.budget_buckets],
        });
        if eval_index != active.last_eval + 1 {
            return Err(Error::Protocol(format!(
                "expected evaluation {}, got {eval_index}",
                active.last_eval + 1
            )));
        }
        if eval_index > self.budget {
            return Err(Error::Protocol(format!(
                "evaluation {eval_index} exceeds budget {}",
                self.budget
            )));
        }
        if value as usize > self.v_max {
            return Err(Error::OutOfRange {
                value: value as f64,
                lo: 0.0,
                hi: self.v_max as f64,
            });
        }
        active.last_eval = eval_index;
        let best = active.best.map_or(value, |b| b.max(value));
        active.best = Some(best);
        let row = bucket_of(best as u64, self.v_max as u64, self.target_buckets);
        let col = bucket_of(eval_index - 1, self.budget, self.budget_buckets);
        let slot = &mut active.reach[col];
        if slot.is_none_or(|r| r < row) {
            *slot = Some(row);
        }
        Ok(())
    }

    /// Commits the active run's staircase and counts the run.
    pub fn finalize_run(&mut self) {
        if let Some(active) = self.active.take() {
            let mut reached: Option<usize> = None;
            for (col, r) in active.reach.iter().enumerate() {
                reached = reached.max(*r);
                if let Some(top) = reached {
                    for row in 0..=top {
                        self.counts[row * self.budget_buckets + col] += 1;
                    }
                }
            }
        }
        self.run_count += 1;
    }

    /// Cellwise sum of committed counts. Active (unfinalized) runs are not carried over.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if (
            self.target_buckets,
            self.budget_buckets,
            self.v_max,
            self.budget,
        ) != (
            other.target_buckets,
            other.budget_buckets,
            other.v_max,
            other.budget,
        ) {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
            run_count: self.run_count + other.run_count,
            active: None,
            ..self.clone()
        })
    }

    /// Total attained-cell count over all committed runs.
    pub fn attained_cells(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Sum over cells of the attained fraction, in `[0, target_buckets * budget_buckets]`.
    pub fn auc(&self) -> Result<f64> {
        if self.run_count == 0 {
            return Err(Error::UndefinedAuc);
        }
        Ok(self.attained_cells() as f64 / self.run_count as f64)
    }

    /// AUC scaled to `[0, 1]`.
    pub fn normalized_auc(&self) -> Result<f64> {
        Ok(self.auc()? / (self.target_buckets * self.budget_buckets) as f64)
    }

    /// Header of budget-bucket upper edges, then one row per target bucket (lower edge
    /// first) with attained fractions.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("target");
        for j in 0..self.budget_buckets {
            let edge = (j + 1) as f64 * self.budget as f64 / self.budget_buckets as f64;
            let _ = write!(out, ",{edge}");
        }
        out.push('\n');
        for i in 0..self.target_buckets {
            let lower = i as f64 * self.v_max as f64 / self.target_buckets as f64;
            let _ = write!(out, "{lower}");
            for j in 0..self.budget_buckets {
                let _ = write!(out, ",{}", self.fraction(i, j));
            }
            out.push('\n');
        }
        out
    }
}
