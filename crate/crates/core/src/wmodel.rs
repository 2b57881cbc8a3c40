//! The W-model problem generator over OneMax.
//!
//! A candidate `x` is scored as `ruggedness(onemax(epistasis(neutrality(x, mu), nu)), gamma)`.
//! Neutrality reduces `mu`-bit blocks by majority vote, epistasis scrambles `nu`-bit blocks
//! by a parity-based bijection, and ruggedness permutes the fitness levels below the optimum.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::error::{Error, Result};

pub type FitnessValue = u32;

/// `(fid, n, mu, nu, gamma, v_max)` for the benchmark suite.
const SUITE: [(u32, usize, usize, usize, usize, usize); 19] = [
    (1, 20, 2, 6, 10, 10),
    (2, 20, 2, 6, 18, 10),
    (3, 16, 1, 5, 72, 16),
    (4, 48, 3, 9, 72, 16),
    (5, 25, 1, 23, 90, 25),
    (6, 32, 1, 2, 397, 32),
    (7, 128, 4, 11, 0, 32),
    (8, 128, 4, 14, 0, 32),
    (9, 128, 4, 8, 128, 32),
    (10, 50, 1, 36, 245, 50),
    (11, 100, 2, 21, 256, 50),
    (12, 150, 3, 16, 613, 50),
    (13, 128, 2, 32, 256, 64),
    (14, 192, 3, 21, 16, 64),
    (15, 192, 3, 21, 256, 64),
    (16, 192, 3, 21, 403, 64),
    (17, 256, 4, 52, 2, 64),
    (18, 75, 1, 60, 16, 75),
    (19, 150, 2, 32, 4, 75),
];

pub const CSV_HEADER: &str = "fid,dim,neutrality_mu,epistasis_nu,ruggedness_gamma,v_max";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceParams", into = "InstanceParams")]
pub struct WModelInstance {
    fid: u32,
    n: usize,
    neutrality_mu: usize,
    epistasis_nu: usize,
    ruggedness_gamma: usize,
    v_max: usize,
    rugged: Vec<FitnessValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct InstanceParams {
    fid: u32,
    dim: usize,
    neutrality_mu: usize,
    epistasis_nu: usize,
    ruggedness_gamma: usize,
}

impl TryFrom<InstanceParams> for WModelInstance {
    type Error = Error;

    fn try_from(p: InstanceParams) -> Result<Self> {
        Self::with_fid(
            p.fid,
            p.dim,
            p.neutrality_mu,
            p.epistasis_nu,
            p.ruggedness_gamma,
        )
    }
}

impl From<WModelInstance> for InstanceParams {
    fn from(i: WModelInstance) -> Self {
        Self {
            fid: i.fid,
            dim: i.n,
            neutrality_mu: i.neutrality_mu,
            epistasis_nu: i.epistasis_nu,
            ruggedness_gamma: i.ruggedness_gamma,
        }
    }
}

/// Length of the string left after neutrality reduction.
pub fn reduced_length(n: usize, mu: usize) -> usize {
    n / mu + n % mu
}

impl WModelInstance {
    /// A custom instance (fid 0).
    pub fn custom(n: usize, mu: usize, nu: usize, gamma: usize) -> Result<Self> {
        Self::with_fid(0, n, mu, nu, gamma)
    }

    fn with_fid(fid: u32, n: usize, mu: usize, nu: usize, gamma: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("dimension must be >= 1".into()));
        }
        if mu == 0 || nu == 0 {
            return Err(Error::InvalidInstance(
                "neutrality and epistasis block sizes must be >= 1".into(),
            ));
        }
        let m = reduced_length(n, mu);
        if nu > m {
            return Err(Error::InvalidInstance(format!(
                "epistasis block size {nu} exceeds reduced length {m}"
            )));
        }
        let rugged = ruggedness_table(gamma, m)?;
        Ok(Self {
            fid,
            n,
            neutrality_mu: mu,
            epistasis_nu: nu,
            ruggedness_gamma: gamma,
            v_max: m,
            rugged,
        })
    }

    /// Looks up one of the 19 suite instances.
    pub fn from_fid(fid: u32) -> Result<Self> {
        let &(fid, n, mu, nu, gamma, _) = SUITE
            .iter()
            .find(|row| row.0 == fid)
            .ok_or(Error::UnknownInstance(fid))?;
        Self::with_fid(fid, n, mu, nu, gamma)
    }

    pub fn fid(&self) -> u32 {
        self.fid
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn neutrality_mu(&self) -> usize {
        self.neutrality_mu
    }

    pub fn epistasis_nu(&self) -> usize {
        self.epistasis_nu
    }

    pub fn ruggedness_gamma(&self) -> usize {
        self.ruggedness_gamma
    }

    pub fn v_max(&self) -> usize {
        self.v_max
    }

    /// Fitness of `x`, in `[0, v_max]`; larger is better.
    pub fn evaluate(&self, x: &BitString) -> Result<FitnessValue> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let mut y = reduce(x.bits(), self.neutrality_mu);
        scramble(&mut y, self.epistasis_nu);
        Ok(self.rugged[count(&y)])
    }

    /// Fitness of an already reduced string of length `v_max`.
    pub fn evaluate_reduced(&self, y: &BitString) -> Result<FitnessValue> {
        if y.len() != self.v_max {
            return Err(Error::DimensionMismatch {
                expected: self.v_max,
                actual: y.len(),
            });
        }
        let mut z = y.bits().to_vec();
        scramble(&mut z, self.epistasis_nu);
        Ok(self.rugged[count(&z)])
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.fid,
            self.n,
            self.neutrality_mu,
            self.epistasis_nu,
            self.ruggedness_gamma,
            self.v_max
        )
    }
}

/// The 19-instance benchmark suite, ordered by fid.
pub fn instances() -> Vec<WModelInstance> {
    SUITE
        .iter()
        .map(|&(fid, ..)| WModelInstance::from_fid(fid).expect("suite rows are valid"))
        .collect()
}

pub fn onemax(y: &BitString) -> usize {
    y.count_ones()
}

pub fn neutrality(x: &BitString, mu: usize) -> Result<BitString> {
    if mu == 0 {
        return Err(Error::InvalidInstance(
            "neutrality block size must be >= 1".into(),
        ));
    }
    Ok(BitString::from_bits_unchecked(reduce(x.bits(), mu)))
}

pub fn epistasis(y: &BitString, nu: usize) -> Result<BitString> {
    if nu == 0 {
        return Err(Error::InvalidInstance(
            "epistasis block size must be >= 1".into(),
        ));
    }
    let mut z = y.bits().to_vec();
    scramble(&mut z, nu);
    Ok(BitString::from_bits_unchecked(z))
}

/// Applies the ruggedness permutation of `[0..=m]` selected by `gamma` to `v`.
pub fn ruggedness(v: usize, gamma: usize, m: usize) -> Result<usize> {
    if v > m {
        return Err(Error::OutOfRange {
            value: v as f64,
            lo: 0.0,
            hi: m as f64,
        });
    }
    Ok(ruggedness_table(gamma, m)?[v] as usize)
}

/// The full ruggedness permutation as a lookup table of length `m + 1`.
///
/// Transpositions `{a, b}` with `a < b < m` are enumerated by `b` descending, then `a`
/// descending; the first `gamma` of them are applied in order to the identity. Level `m`
/// never moves.
pub fn ruggedness_table(gamma: usize, m: usize) -> Result<Vec<FitnessValue>> {
    let max = m * m.saturating_sub(1) / 2;
    if gamma > max {
        return Err(Error::InvalidGamma {
            gamma,
            v_max: m,
            max,
        });
    }
    let mut table: Vec<FitnessValue> = (0..=m as FitnessValue).collect();
    let pairs = (1..m).rev().flat_map(|b| (0..b).rev().map(move |a| (a, b)));
    for (a, b) in pairs.take(gamma) {
        table.swap(a, b);
    }
    Ok(table)
}

fn reduce(x: &[u8], mu: usize) -> Vec<u8> {
    if mu == 1 {
        return x.to_vec();
    }
    let full = x.len() / mu;
    let mut y = Vec::with_capacity(reduced_length(x.len(), mu));
    for block in x.chunks_exact(mu) {
        let ones = block.iter().map(|&b| b as usize).sum::<usize>();
        // a block with exactly mu/2 ones votes 1
        y.push((2 * ones >= mu) as u8);
    }
    y.extend_from_slice(&x[full * mu..]);
    y
}

fn scramble(y: &mut [u8], nu: usize) {
    if nu <= 1 {
        return;
    }
    for block in y.chunks_mut(nu) {
        scramble_block(block);
    }
}

/// Parity-keyed block bijection. With `s` the XOR of the block, even-length blocks become
/// `s ^ y_i` everywhere; odd-length blocks put `s` first and `s ^ y_i` after it.
fn scramble_block(block: &mut [u8]) {
    let s = block.iter().fold(0u8, |acc, &b| acc ^ b);
    if block.len().is_multiple_of(2) {
        block.iter_mut().for_each(|b| *b ^= s);
    } else {
        block[0] = s;
        block[1..].iter_mut().for_each(|b| *b ^= s);
    }
}

fn count(y: &[u8]) -> usize {
    y.iter().map(|&b| b as usize).sum()
}

/// Serializes instances as CSV with the suite header.
pub fn to_csv(instances: &[WModelInstance]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for inst in instances {
        let _ = writeln!(out, "{}", inst.csv_row());
    }
    out
}

/// Parses instance CSV. `v_max` is recomputed and must agree with the file.
pub fn from_csv(text: &str) -> Result<Vec<WModelInstance>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::Parse {
                token: 0,
                text: other.unwrap_or("").to_string(),
                reason: format!("expected header {CSV_HEADER:?}"),
            })
        }
    }
    lines
        .enumerate()
        .map(|(row, line)| {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 6 {
                return Err(Error::Parse {
                    token: row + 1,
                    text: line.to_string(),
                    reason: "expected 6 fields".into(),
                });
            }
            let num = |i: usize| -> Result<usize> {
                fields[i].parse().map_err(|_| Error::Parse {
                    token: row + 1,
                    text: fields[i].to_string(),
                    reason: "expected a non-negative integer".into(),
                })
            };
            let inst =
                WModelInstance::with_fid(num(0)? as u32, num(1)?, num(2)?, num(3)?, num(4)?)?;
            if inst.v_max != num(5)? {
                return Err(Error::InvalidInstance(format!(
                    "row {}: v_max {} does not match derived {}",
                    row + 1,
                    fields[5],
                    inst.v_max
                )));
            }
            Ok(inst)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn onemax_counts() {
        assert_eq!(onemax(&BitString::zeros(8).unwrap()), 0);
        assert_eq!(onemax(&BitString::ones(8).unwrap()), 8);
        assert_eq!(onemax(&bs("10110")), 3);
    }

    #[test]
    fn neutrality_examples() {
        let x = bs("1101001");
        assert_eq!(neutrality(&x, 1).unwrap(), x);
        assert_eq!(neutrality(&bs("110100"), 2).unwrap(), bs("110"));
        assert_eq!(neutrality(&x, 2).unwrap(), bs("1101"));
        // odd block: 2 of 3 ones is a majority, 1 of 3 is not
        assert_eq!(neutrality(&bs("110100"), 3).unwrap(), bs("10"));
    }

    #[test]
    fn epistasis_examples() {
        let y = bs("100110");
        assert_eq!(epistasis(&y, 1).unwrap(), y);
        assert_eq!(epistasis(&bs("100"), 3).unwrap(), bs("111"));
        assert_eq!(epistasis(&bs("1111"), 4).unwrap(), bs("1111"));
        // trailing block of size 1 is untouched
        assert_eq!(epistasis(&bs("1001"), 3).unwrap(), bs("1111"));
    }

    #[test]
    fn ruggedness_examples() {
        for v in 0..=10 {
            assert_eq!(ruggedness(v, 0, 10).unwrap(), v);
            assert_eq!(ruggedness(10, 45, 10).unwrap(), 10);
        }
        let expect = [0, 1, 2, 3, 4, 5, 6, 7, 9, 8, 10];
        for (v, &r) in expect.iter().enumerate() {
            assert_eq!(ruggedness(v, 1, 10).unwrap(), r);
        }
        assert_eq!(
            ruggedness(0, 46, 10),
            Err(Error::InvalidGamma {
                gamma: 46,
                v_max: 10,
                max: 45
            })
        );
    }

    #[test]
    fn plain_chain_all_ones() {
        let inst = WModelInstance::custom(20, 2, 6, 0).unwrap();
        assert_eq!(inst.evaluate(&BitString::ones(20).unwrap()).unwrap(), 10);
    }

    #[test]
    fn suite_rows() {
        let all = instances();
        assert_eq!(all.len(), 19);
        let row = |i: &WModelInstance| {
            (
                i.dimension(),
                i.neutrality_mu(),
                i.epistasis_nu(),
                i.ruggedness_gamma(),
                i.v_max(),
            )
        };
        assert_eq!(row(&all[0]), (20, 2, 6, 10, 10));
        assert_eq!(row(&all[16]), (256, 4, 52, 2, 64));
        assert_eq!(row(&all[17]), (75, 1, 60, 16, 75));
        for (inst, suite) in all.iter().zip(SUITE.iter()) {
            assert_eq!(inst.fid(), suite.0);
            assert_eq!(inst.v_max(), suite.5);
        }
        assert_eq!(
            WModelInstance::from_fid(20),
            Err(Error::UnknownInstance(20))
        );
    }

    #[test]
    fn evaluate_checks_dimension() {
        let inst = WModelInstance::from_fid(1).unwrap();
        assert!(matches!(
            inst.evaluate(&BitString::ones(19).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn custom_validation() {
        assert!(WModelInstance::custom(0, 1, 1, 0).is_err());
        assert!(WModelInstance::custom(10, 0, 1, 0).is_err());
        assert!(WModelInstance::custom(10, 2, 6, 0).is_err());
        assert!(WModelInstance::custom(10, 2, 5, 11).is_err());
        assert!(WModelInstance::custom(10, 2, 5, 10).is_ok());
    }

    #[test]
    fn csv_round_trip() {
        let all = instances();
        let text = to_csv(&all);
        assert_eq!(text.lines().count(), 20);
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(from_csv(&text).unwrap(), all);
        let bad = format!("{CSV_HEADER}\n1,20,2,6,10,11\n");
        assert!(from_csv(&bad).is_err());
        assert!(from_csv("fid,dim\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let inst = WModelInstance::from_fid(9).unwrap();
        let json = serde_json::to_string(&inst).unwrap();
        let back: WModelInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(back, inst);
    }
}
