//! Fixed-length binary genotypes and the k-bit-flip primitive.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A non-empty string of bits. The length is fixed at construction.
///
/// The text form (also used by serde) is a compact `0`/`1` string, index 0 first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn zeros(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self { bits: vec![0; n] })
    }

    pub fn ones(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self { bits: vec![1; n] })
    }

    /// Builds from `bool`s; the slice must be non-empty.
    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        check_len(bits.len())?;
        Ok(Self {
            bits: bits.iter().map(|&b| b as u8).collect(),
        })
    }

    /// Builds from 0/1 bytes; any other byte value is rejected.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        check_len(bits.len())?;
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidDimension(format!(
                "bit {pos} has value {}",
                bits[pos]
            )));
        }
        Ok(Self { bits })
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(!bits.is_empty() && bits.iter().all(|&b| b <= 1));
        Self { bits }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i] == 1
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|&b| b ^ 1).collect(),
        }
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidDimension("bit strings need n >= 1".into()))
    } else {
        Ok(())
    }
}

/// `n` i.i.d. fair bits.
pub fn uniform_bitstring(n: usize, rng: &mut RngStream) -> Result<BitString> {
    check_len(n)?;
    let mut bits = Vec::with_capacity(n);
    while bits.len() < n {
        let mut word = rng.next_u64();
        for _ in 0..64.min(n - bits.len()) {
            bits.push((word & 1) as u8);
            word >>= 1;
        }
    }
    Ok(BitString { bits })
}

/// Flips exactly `k` pairwise different positions chosen uniformly at random.
pub fn flip_k(x: &BitString, k: usize, rng: &mut RngStream) -> Result<BitString> {
    let n = x.len();
    if k > n {
        return Err(Error::InvalidStrength { k, n });
    }
    let mut out = x.clone();
    if k == n {
        out.bits.iter_mut().for_each(|b| *b ^= 1);
        return Ok(out);
    }
    // Partial Fisher-Yates: the first k slots of `idx` end up as a uniform k-subset.
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.index(n - i);
        idx.swap(i, j);
        out.bits[idx[i]] ^= 1;
    }
    Ok(out)
}

pub fn hamming(x: &BitString, y: &BitString) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    Ok(x.bits.iter().zip(&y.bits).filter(|(a, b)| a != b).count())
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> Self {
        b.to_string()
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse {
                    token: i,
                    text: other.to_string(),
                    reason: "expected '0' or '1'".into(),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        check_len(bits.len())?;
        Ok(Self { bits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn zero_length_rejected() {
        let mut rng = RngStream::new(0, 0);
        assert!(matches!(
            uniform_bitstring(0, &mut rng),
            Err(Error::InvalidDimension(_))
        ));
        assert!(BitString::zeros(0).is_err());
        assert!("".parse::<BitString>().is_err());
    }

    #[test]
    fn single_bit() {
        let mut rng = RngStream::new(0, 0);
        let x = uniform_bitstring(1, &mut rng).unwrap();
        assert_eq!(x.len(), 1);
    }

    #[test]
    fn uniform_is_deterministic() {
        let a = uniform_bitstring(16, &mut RngStream::new(1, 7)).unwrap();
        let b = uniform_bitstring(16, &mut RngStream::new(1, 7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn large_sample_concentrates() {
        let n = 100_000;
        let x = uniform_bitstring(n, &mut RngStream::new(11, 0)).unwrap();
        let sigma = (n as f64 / 4.0).sqrt();
        assert!((x.count_ones() as f64 - n as f64 / 2.0).abs() < 5.0 * sigma);
    }

    #[test]
    fn flip_identity_and_complement() {
        let mut rng = RngStream::new(2, 0);
        let x = bs("10110");
        assert_eq!(flip_k(&x, 0, &mut rng).unwrap(), x);
        assert_eq!(flip_k(&x, 5, &mut rng).unwrap(), bs("01001"));
        assert_eq!(
            flip_k(&x, 6, &mut rng),
            Err(Error::InvalidStrength { k: 6, n: 5 })
        );
    }

    #[test]
    fn flip_distance_is_exact() {
        let mut rng = RngStream::new(4, 0);
        let x = uniform_bitstring(40, &mut rng).unwrap();
        for k in 0..=40 {
            let y = flip_k(&x, k, &mut rng).unwrap();
            assert_eq!(hamming(&x, &y).unwrap(), k);
        }
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(&bs("1010"), &bs("1010")).unwrap(), 0);
        assert_eq!(hamming(&bs("1010"), &bs("0101")).unwrap(), 4);
        assert_eq!(hamming(&bs("1100"), &bs("1000")).unwrap(), 1);
        assert!(matches!(
            hamming(&bs("1"), &bs("10")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn text_form_round_trip() {
        let x = bs("0011010");
        assert_eq!(x.to_string(), "0011010");
        assert!("0120".parse::<BitString>().is_err());
        assert!(BitString::from_bits(vec![0, 2]).is_err());
    }
}
