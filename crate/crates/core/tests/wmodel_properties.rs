use std::collections::HashSet;

use gafoundry::bitstring::{hamming, uniform_bitstring};
use gafoundry::wmodel::{epistasis, instances, neutrality, reduced_length, ruggedness_table};
use gafoundry::{BitString, RngStream, WModelInstance};
use proptest::prelude::*;

fn from_mask(mask: u64, len: usize) -> BitString {
    BitString::from_bits((0..len).map(|i| ((mask >> i) & 1) as u8).collect()).unwrap()
}

#[test]
fn epistasis_blocks_are_bijective_and_amplifying() {
    for nu in 2..=12usize {
        let images: Vec<BitString> = (0..1u64 << nu)
            .map(|m| epistasis(&from_mask(m, nu), nu).unwrap())
            .collect();
        let distinct: HashSet<&BitString> = images.iter().collect();
        assert_eq!(distinct.len(), 1 << nu, "nu={nu} not bijective");
        for m in 0..1u64 << nu {
            for bit in 0..nu {
                let d = hamming(&images[m as usize], &images[(m ^ (1 << bit)) as usize]).unwrap();
                assert!(d >= nu - 1, "nu={nu} m={m:b} bit={bit} d={d}");
            }
        }
    }
}

#[test]
fn epistasis_odd_block_example_by_enumeration() {
    // every preimage of 111 under the 3-block map is 100
    let pre: Vec<u64> = (0..8)
        .filter(|&m| epistasis(&from_mask(m, 3), 3).unwrap().to_string() == "111")
        .collect();
    assert_eq!(pre, vec![0b001]);
}

#[test]
fn ruggedness_permutations_fix_the_optimum() {
    for inst in instances() {
        let m = inst.v_max();
        let table = ruggedness_table(inst.ruggedness_gamma(), m).unwrap();
        assert_eq!(table.len(), m + 1);
        assert_eq!(table[m] as usize, m);
        let mut sorted = table.clone();
        sorted.sort_unstable();
        assert!(
            sorted.iter().enumerate().all(|(i, &v)| v as usize == i),
            "fid {}",
            inst.fid()
        );
        if inst.ruggedness_gamma() == 0 {
            assert!(table.iter().enumerate().all(|(i, &v)| v as usize == i));
        }
    }
}

/// Maximum over every reduced string, by exhaustive enumeration.
fn brute_force_max(inst: &WModelInstance) -> u32 {
    let m = inst.v_max();
    (0..1u64 << m)
        .map(|mask| inst.evaluate_reduced(&from_mask(mask, m)).unwrap())
        .max()
        .unwrap()
}

#[test]
fn optimum_by_brute_force_small_instances() {
    for fid in 1..=4 {
        let inst = WModelInstance::from_fid(fid).unwrap();
        assert!(inst.v_max() <= 22);
        assert_eq!(brute_force_max(&inst) as usize, inst.v_max(), "fid {fid}");
    }
}

#[test]
fn fid1_reduced_space_maximum() {
    let inst = WModelInstance::from_fid(1).unwrap();
    assert_eq!(brute_force_max(&inst), 10);
}

#[test]
fn optimum_is_attainable_on_every_instance() {
    // Invert the block map on all-ones, lift through neutrality by repetition.
    for inst in instances() {
        let m = inst.v_max();
        let nu = inst.epistasis_nu();
        let target = BitString::ones(m).unwrap();
        let mut reduced = Vec::with_capacity(m);
        for start in (0..m).step_by(nu) {
            let len = nu.min(m - start);
            let pre = (0..1u64 << len.min(20))
                .map(|mask| from_mask(mask, len))
                .find(|b| epistasis(b, len).unwrap() == BitString::ones(len).unwrap());
            // blocks longer than 20 bits: preimage of all-ones is known in closed form
            let pre = pre.unwrap_or_else(|| closed_form_preimage(len));
            assert_eq!(epistasis(&pre, len).unwrap(), BitString::ones(len).unwrap());
            reduced.extend_from_slice(pre.bits());
        }
        let reduced = BitString::from_bits(reduced).unwrap();
        assert_eq!(epistasis(&reduced, nu).unwrap(), target);
        let mu = inst.neutrality_mu();
        let x: Vec<u8> = reduced
            .bits()
            .iter()
            .flat_map(|&b| std::iter::repeat_n(b, mu))
            .collect();
        let x = BitString::from_bits(x).unwrap();
        assert_eq!(inst.evaluate(&x).unwrap() as usize, m, "fid {}", inst.fid());
    }
}

fn closed_form_preimage(len: usize) -> BitString {
    // even length: all ones (parity 0); odd length: 1 followed by zeros (parity 1)
    if len.is_multiple_of(2) {
        BitString::ones(len).unwrap()
    } else {
        let mut bits = vec![0u8; len];
        bits[0] = 1;
        BitString::from_bits(bits).unwrap()
    }
}

#[test]
fn fid5_optimum_by_brute_force() {
    let inst = WModelInstance::from_fid(5).unwrap();
    assert_eq!(inst.v_max(), 25);
    assert_eq!(brute_force_max(&inst), 25);
}

#[test]
fn evaluation_is_pure_and_bounded() {
    let mut rng = RngStream::new(8, 0);
    for inst in instances() {
        for _ in 0..200 {
            let x = uniform_bitstring(inst.dimension(), &mut rng).unwrap();
            let v = inst.evaluate(&x).unwrap();
            assert!(v as usize <= inst.v_max());
            assert_eq!(inst.evaluate(&x).unwrap(), v);
        }
    }
}

proptest! {
    #[test]
    fn neutrality_length_law(bits in proptest::collection::vec(0u8..2, 1..80), mu in 1usize..12) {
        let x = BitString::from_bits(bits).unwrap();
        let y = neutrality(&x, mu).unwrap();
        prop_assert_eq!(y.len(), reduced_length(x.len(), mu));
        prop_assert_eq!(y.len(), x.len() / mu + x.len() % mu);
    }

    #[test]
    fn epistasis_preserves_length(bits in proptest::collection::vec(0u8..2, 1..80), nu in 1usize..20) {
        let y = BitString::from_bits(bits).unwrap();
        prop_assert_eq!(epistasis(&y, nu).unwrap().len(), y.len());
    }
}
