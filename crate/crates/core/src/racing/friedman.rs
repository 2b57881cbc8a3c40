//! Friedman rank test with a rank-sum post-hoc rule, as used by F-Race.

use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, DiscreteCDF, StudentsT};

/// Within-block ranks, 1 = largest value, ties share their average rank.
/// `results[row][block]`; returns `ranks[row][block]`.
pub fn block_ranks(results: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = results.len();
    let b = results.first().map_or(0, Vec::len);
    let mut ranks = vec![vec![0.0; b]; k];
    let mut order: Vec<usize> = (0..k).collect();
    for col in 0..b {
        order.sort_by(|&x, &y| results[y][col].total_cmp(&results[x][col]));
        let mut start = 0;
        while start < k {
            let mut end = start + 1;
            while end < k && results[order[end]][col] == results[order[start]][col] {
                end += 1;
            }
            // positions start..end share ranks start+1..=end
            let avg = (start + 1 + end) as f64 / 2.0;
            for &row in &order[start..end] {
                ranks[row][col] = avg;
            }
            start = end;
        }
    }
    ranks
}

/// `12 b / (k (k + 1)) * sum_j (mean_rank_j - (k + 1) / 2)^2`.
pub fn friedman_statistic(ranks: &[Vec<f64>]) -> f64 {
    let k = ranks.len() as f64;
    let b = ranks.first().map_or(0, Vec::len) as f64;
    if k < 2.0 || b < 1.0 {
        return 0.0;
    }
    let center = (k + 1.0) / 2.0;
    let spread: f64 = ranks
        .iter()
        .map(|row| {
            let mean = row.iter().sum::<f64>() / b;
            (mean - center).powi(2)
        })
        .sum();
    12.0 * b / (k * (k + 1.0)) * spread
}

/// Rows of `results` (one row per configuration, one column per block, larger is better)
/// that survive one elimination step at significance `alpha`.
///
/// The Friedman statistic is compared against the chi-square critical value with `k - 1`
/// degrees of freedom. When significant, rows whose rank sum exceeds the best rank sum by
/// more than the Conover critical difference are dropped; with two rows a two-sided sign
/// test decides instead. Degenerate input (fewer than two rows or blocks, ragged rows)
/// eliminates nothing, and at least `min_survivors` rows always remain (best rank sums first).
pub fn friedman_eliminate(results: &[Vec<f64>], alpha: f64, min_survivors: usize) -> Vec<usize> {
    let k = results.len();
    let all: Vec<usize> = (0..k).collect();
    let b = results.first().map_or(0, Vec::len);
    if k < 2 || b < 2 || results.iter().any(|r| r.len() != b) || k <= min_survivors {
        return all;
    }
    let ranks = block_ranks(results);
    let statistic = friedman_statistic(&ranks);
    let critical = ChiSquared::new((k - 1) as f64)
        .expect("k >= 2")
        .inverse_cdf(1.0 - alpha);
    if statistic.is_nan() || statistic <= critical {
        return all;
    }
    let sums: Vec<f64> = ranks.iter().map(|r| r.iter().sum()).collect();
    let best = sums.iter().cloned().fold(f64::INFINITY, f64::min);

    let keep: Vec<bool> = if k == 2 {
        let wins0 = (0..b).filter(|&j| results[0][j] > results[1][j]).count() as u64;
        let wins1 = (0..b).filter(|&j| results[1][j] > results[0][j]).count() as u64;
        if sign_test_p(wins0, wins1) < alpha {
            vec![wins0 >= wins1, wins1 >= wins0]
        } else {
            vec![true, true]
        }
    } else {
        let (kf, bf) = (k as f64, b as f64);
        let sum_sq_ranks: f64 = ranks.iter().flatten().map(|r| r * r).sum();
        let sum_sq_sums: f64 = sums.iter().map(|s| s * s).sum();
        let df = (bf - 1.0) * (kf - 1.0);
        let variance = (2.0 * (bf * sum_sq_ranks - sum_sq_sums) / df).max(0.0);
        let t = StudentsT::new(0.0, 1.0, df)
            .expect("df > 0")
            .inverse_cdf(1.0 - alpha / 2.0);
        let critical_difference = t * variance.sqrt();
        sums.iter()
            .map(|&s| s - best <= critical_difference)
            .collect()
    };

    let survivors: Vec<usize> = all.iter().copied().filter(|&i| keep[i]).collect();
    if survivors.len() >= min_survivors {
        return survivors;
    }
    let mut by_rank = all;
    by_rank.sort_by(|&x, &y| sums[x].total_cmp(&sums[y]).then(x.cmp(&y)));
    let mut floor: Vec<usize> = by_rank.into_iter().take(min_survivors).collect();
    floor.sort_unstable();
    floor
}

/// Two-sided exact sign test p-value for `a` wins against `b` wins.
fn sign_test_p(a: u64, b: u64) -> f64 {
    let n = a + b;
    if n == 0 {
        return 1.0;
    }
    let binom = Binomial::new(0.5, n).expect("valid binomial");
    (2.0 * binom.cdf(a.min(b))).min(1.0)
}
