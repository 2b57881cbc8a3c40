use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::rng::RngStream;

pub const CROSSOVER_COUNT: usize = 11;

const UNIFORM_BIASES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const CUT_COUNTS: [usize; 5] = [1, 3, 5, 7, 9];

/// Recombines `x` and `y` into two children.
///
/// Ids 0-4 are biased uniform crossover (the first child takes `x_i` with probability
/// `b_c`, the second child takes the other parent's bit), ids 5-9 are k-point crossover
/// and id 10 is classic 1-point crossover.
pub fn crossover(
    id: usize,
    x: &BitString,
    y: &BitString,
    rng: &mut RngStream,
) -> Result<(BitString, BitString)> {
    if id >= CROSSOVER_COUNT {
        return Err(Error::UnknownOperator {
            slot: "crossover",
            index: id,
        });
    }
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    match id {
        0..=4 => Ok(uniform(UNIFORM_BIASES[id], x, y, rng)),
        5..=9 => k_point(CUT_COUNTS[id - 5], x, y, rng),
        _ => k_point(1, x, y, rng),
    }
}

fn uniform(bias: f64, x: &BitString, y: &BitString, rng: &mut RngStream) -> (BitString, BitString) {
    let (xs, ys) = (x.bits(), y.bits());
    let mut a = Vec::with_capacity(xs.len());
    let mut b = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        if rng.bernoulli(bias) {
            a.push(xs[i]);
            b.push(ys[i]);
        } else {
            a.push(ys[i]);
            b.push(xs[i]);
        }
    }
    (
        BitString::from_bits_unchecked(a),
        BitString::from_bits_unchecked(b),
    )
}

fn k_point(
    k: usize,
    x: &BitString,
    y: &BitString,
    rng: &mut RngStream,
) -> Result<(BitString, BitString)> {
    let n = x.len();
    if k >= n {
        return Err(Error::InvalidParams(format!(
            "{k}-point crossover needs more than {k} positions, got {n}"
        )));
    }
    // Cut c means "boundary after position c", c in 1..n; draw k of the n-1 gaps.
    let mut gaps: Vec<usize> = (1..n).collect();
    for i in 0..k {
        let j = i + rng.index(gaps.len() - i);
        gaps.swap(i, j);
    }
    let mut cuts = gaps[..k].to_vec();
    cuts.sort_unstable();
    k_point_with_cuts(x, y, &cuts)
}

/// k-point crossover with explicit sorted cut positions; a cut `c` starts a new segment at
/// index `c`. The first child starts with `x`, the second with `y`.
pub fn k_point_with_cuts(
    x: &BitString,
    y: &BitString,
    cuts: &[usize],
) -> Result<(BitString, BitString)> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: y.len(),
        });
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) || cuts.iter().any(|&c| c == 0 || c >= n) {
        return Err(Error::InvalidParams(format!(
            "cuts must be strictly increasing in 1..{n}"
        )));
    }
    let (xs, ys) = (x.bits(), y.bits());
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut from_x = true;
    let mut next = cuts.iter().peekable();
    for i in 0..n {
        if next.peek() == Some(&&i) {
            from_x = !from_x;
            next.next();
        }
        if from_x {
            a.push(xs[i]);
            b.push(ys[i]);
        } else {
            a.push(ys[i]);
            b.push(xs[i]);
        }
    }
    Ok((
        BitString::from_bits_unchecked(a),
        BitString::from_bits_unchecked(b),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::uniform_bitstring;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn identical_parents_give_identical_children() {
        let mut rng = RngStream::new(1, 0);
        let x = uniform_bitstring(30, &mut rng).unwrap();
        for id in 0..CROSSOVER_COUNT {
            let (a, b) = crossover(id, &x, &x, &mut rng).unwrap();
            assert_eq!(a, x);
            assert_eq!(b, x);
        }
    }

    #[test]
    fn one_point_with_fixed_cut() {
        let (a, b) = k_point_with_cuts(&bs("1111"), &bs("0000"), &[2]).unwrap();
        assert_eq!(a, bs("1100"));
        assert_eq!(b, bs("0011"));
    }

    #[test]
    fn complementary_children_on_complementary_parents() {
        let x = bs("1111111111111");
        let y = x.complement();
        let mut rng = RngStream::new(7, 0);
        for id in 0..CROSSOVER_COUNT {
            let (a, b) = crossover(id, &x, &y, &mut rng).unwrap();
            assert_eq!(b, a.complement(), "id {id}");
        }
    }

    #[test]
    fn k_point_has_exactly_k_boundaries() {
        let x = BitString::ones(40).unwrap();
        let y = x.complement();
        let mut rng = RngStream::new(3, 0);
        for (id, k) in (5..=9).zip(CUT_COUNTS) {
            for _ in 0..100 {
                let (a, _) = crossover(id, &x, &y, &mut rng).unwrap();
                let switches = a.bits().windows(2).filter(|w| w[0] != w[1]).count();
                assert_eq!(switches, k);
                assert!(a.get(0));
            }
        }
    }

    #[test]
    fn errors() {
        let mut rng = RngStream::new(0, 0);
        assert!(crossover(11, &bs("10"), &bs("01"), &mut rng).is_err());
        assert!(matches!(
            crossover(0, &bs("10"), &bs("011"), &mut rng),
            Err(Error::DimensionMismatch { .. })
        ));
        // 9-point on 9 bits has only 8 gaps
        assert!(crossover(9, &bs("101010101"), &bs("010101010"), &mut rng).is_err());
        assert!(k_point_with_cuts(&bs("1111"), &bs("0000"), &[2, 2]).is_err());
        assert!(k_point_with_cuts(&bs("1111"), &bs("0000"), &[4]).is_err());
    }
}
