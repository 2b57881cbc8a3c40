use gafoundry::fastga::run_auc;
use gafoundry::{Baseline, GaParams, RngStream, WModelInstance};
use gafoundry_web::{heatmap_data, ruggedness_data, suite, trajectory_data, MAX_RUNS};

const EA: &str = "P5 C0 s0 c0 a0 M0 u0 m1 r0 O0";

#[test]
fn heatmap_auc_is_mean_of_single_runs() {
    let h = heatmap_data(EA, 2, 6, 4, 20).unwrap();
    assert_eq!((h.rows(), h.cols()), (20, 20));
    assert_eq!(h.fractions().len(), 400);
    let inst = WModelInstance::from_fid(2).unwrap();
    let params = GaParams::for_instance(&inst, 5).unwrap();
    let cfg = Baseline::Ea.configuration();
    let mean: f64 = (0..6)
        .map(|j| {
            run_auc(&cfg, &inst, &params, 20, &mut RngStream::new(4, j))
                .unwrap()
                .0
        })
        .sum::<f64>()
        / 6.0;
    assert!((h.auc() - mean).abs() < 1e-9);
    assert!((h.fractions().iter().sum::<f64>() - h.auc()).abs() < 1e-9);
    // the trivial target row is attained everywhere
    assert!(h.fractions()[..20].iter().all(|&f| f == 1.0));
}

#[test]
fn heatmap_rejects_bad_input() {
    assert!(heatmap_data(EA, 2, 0, 1, 10).is_err());
    assert!(heatmap_data(EA, 2, MAX_RUNS + 1, 1, 10).is_err());
    assert!(heatmap_data("P5 C0", 2, 1, 1, 10).is_err());
    assert!(heatmap_data(EA, 20, 1, 1, 10).is_err());
}

#[test]
fn trajectory_matches_engine() {
    let t = trajectory_data(EA, 7, 3, 5).unwrap();
    assert_eq!(t.budget(), 640);
    assert_eq!(t.v_max(), 32);
    assert_eq!(t.evals()[0], 1.0);
    assert!(t.values().windows(2).all(|w| w[0] < w[1]));
    let inst = WModelInstance::from_fid(7).unwrap();
    let params = GaParams::for_instance(&inst, 5).unwrap();
    let (auc, ..) = run_auc(
        &Baseline::Ea.configuration(),
        &inst,
        &params,
        100,
        &mut RngStream::new(3, 0),
    )
    .unwrap();
    assert_eq!(t.auc(), auc);
}

#[test]
fn ruggedness_view_is_a_permutation() {
    let table = ruggedness_data(6).unwrap();
    assert_eq!(table.len(), 33);
    let mut sorted = table.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..=32).collect::<Vec<u32>>());
    assert_eq!(ruggedness_data(7).unwrap(), (0..=32).collect::<Vec<u32>>());
}

#[test]
fn suite_is_flat_rows() {
    let s = suite();
    assert_eq!(s.len(), 19 * 6);
    assert_eq!(&s[..6], &[1, 20, 2, 6, 10, 10]);
}
