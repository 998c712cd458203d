use hadamard_core::analog::*;
use hadamard_core::rng::rng_from_seed;
use hadamard_core::transform::{fht_real, TransformSpec};
use proptest::prelude::*;
use rand_distr::{Distribution, StandardNormal};

fn gaussian(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng_from_seed(seed);
    (0..n).map(|_| StandardNormal.sample(&mut r)).collect()
}

fn ideal_array() -> CapacitorArraySpec {
    CapacitorArraySpec::from_preset(0.68).unwrap().with_sigma(0.0).with_insertion_loss(0.0)
}

#[test]
fn presets_match_published_rows() {
    let rows = [
        (0.68, 2.25, 0.078, 4.65e9, 0.06),
        (1.5, 4.41, 0.153, 2.55e9, 0.024),
        (2.0, 5.76, 0.200, 2.03e9, 0.016),
        (4.0, 10.24, 0.356, 1.1e9, 0.01),
    ];
    assert_eq!(ARRAY_PRESETS.len(), rows.len());
    for (p, (c, ua, aa, f, s)) in ARRAY_PRESETS.iter().zip(rows) {
        assert_eq!((p.c_unit_ff, p.unit_area_um2, p.array_area_mm2, p.f3db_hz, p.sigma_ratio), (c, ua, aa, f, s));
        assert_eq!(p.insertion_loss_db, DEFAULT_INSERTION_LOSS_DB);
        assert!(p.validate().is_ok());
    }
}

#[test]
fn area_law_estimates() {
    assert!((mismatch_sigma_from_cap(2.0, 4.0) - 0.01).abs() < 1e-15);
    assert!((mismatch_sigma_from_cap(2.0, 1.0) - 0.02).abs() < 1e-15);
    let small = mismatch_sigma_from_cap(2.0, 0.68);
    assert!((small - 0.02425).abs() < 1e-4);
    assert!(small < CapacitorArraySpec::from_preset(0.68).unwrap().sigma_ratio);
}

#[test]
fn nyquist_is_twice_bandwidth() {
    let fast = CapacitorArraySpec::from_preset(0.68).unwrap();
    assert!((nyquist_rate(&fast) - 9.3e9).abs() < 1.0);
    assert!(nyquist_rate(&fast) > 8e9);
    let slow = CapacitorArraySpec::from_preset(4.0).unwrap();
    assert!((nyquist_rate(&slow) - 2.2e9).abs() < 1.0);
}

#[test]
fn reduces_to_ideal_transform() {
    for m in 1..=7u32 {
        let n = 1 << m;
        let x = gaussian(n, m as u64);
        let y = analog_transform(&x, &ideal_array(), &MismatchRealization::ideal(n)).unwrap();
        let h = fht_real(&x, TransformSpec::new(m).unwrap()).unwrap();
        for (a, b) in y.iter().zip(&h) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn impulse_sees_insertion_loss() {
    let spec = CapacitorArraySpec::from_preset(0.68).unwrap().with_sigma(0.0);
    let mut x = vec![0.0; 128];
    x[0] = 1.0;
    let y = analog_transform(&x, &spec, &MismatchRealization::ideal(128)).unwrap();
    let expect = 10f64.powf(-11.3 / 20.0) / 128f64.sqrt();
    assert!(y.iter().all(|v| (v - expect).abs() < 1e-15));
}

#[test]
fn matches_double_loop_oracle() {
    let spec = CapacitorArraySpec::from_preset(1.5).unwrap();
    let real = mismatch_sample(&spec, 4, 99).unwrap();
    let x = [0.3, -1.2, 2.0, 0.5];
    let h = [[1.0, 1.0, 1.0, 1.0], [1.0, -1.0, 1.0, -1.0], [1.0, 1.0, -1.0, -1.0], [1.0, -1.0, -1.0, 1.0]];
    let a = 10f64.powf(-spec.insertion_loss_db / 20.0);
    let y = analog_transform(&x, &spec, &real).unwrap();
    for k in 0..4 {
        let mut acc = 0.0;
        for j in 0..4 {
            acc += h[k][j] * (1.0 + real.error(k, j)) * x[j];
        }
        assert!((y[k] - a * acc / 2.0).abs() < 1e-12);
    }
}

#[test]
fn zero_sigma_gives_zero_errors() {
    let spec = ideal_array();
    let r = mismatch_sample(&spec, 16, 3).unwrap();
    assert!(r.epsilon().iter().all(|&e| e == 0.0));
}

#[test]
fn realization_std_matches_four_ff_preset() {
    let spec = CapacitorArraySpec::from_preset(4.0).unwrap();
    let r = mismatch_sample(&spec, 128, 2024).unwrap();
    let e = r.epsilon();
    assert_eq!(e.len(), 16384);
    let mean = e.iter().sum::<f64>() / e.len() as f64;
    let std = (e.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (e.len() - 1) as f64).sqrt();
    assert!((std - 0.01).abs() < 0.05 * 0.01, "{std}");
    assert!(mean.abs() < 5.0 * 0.01 / 128.0);
}

#[test]
fn per_element_std_over_realizations() {
    // sample std of 400 normals has relative sd ~ 1/sqrt(798) = 3.5%, so the
    // [0.055, 0.065] band is about +-2.4 sd; nearly all elements land inside.
    let spec = CapacitorArraySpec::from_preset(0.68).unwrap();
    let dim = 32;
    let n = 400;
    let mut sum = vec![0.0; dim * dim];
    let mut sq = vec![0.0; dim * dim];
    for t in 0..n {
        let r = mismatch_sample(&spec, dim, 10_000 + t).unwrap();
        for (i, &e) in r.epsilon().iter().enumerate() {
            sum[i] += e;
            sq[i] += e * e;
        }
    }
    let inside = sum
        .iter()
        .zip(&sq)
        .filter(|(s, q)| {
            let mean = *s / n as f64;
            let var = (*q - n as f64 * mean * mean) / (n - 1) as f64;
            (0.055..=0.065).contains(&var.sqrt())
        })
        .count();
    assert!(inside as f64 >= 0.95 * (dim * dim) as f64, "{inside} of {}", dim * dim);
}

#[test]
fn seeds_are_reproducible() {
    let spec = CapacitorArraySpec::from_preset(2.0).unwrap();
    let a = mismatch_sample(&spec, 64, 5).unwrap();
    let b = mismatch_sample(&spec, 64, 5).unwrap();
    let c = mismatch_sample(&spec, 64, 6).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.epsilon(), c.epsilon());
    assert_eq!(a.seed(), 5);
}

#[test]
fn dimension_mismatch_is_an_error() {
    let r = MismatchRealization::ideal(8);
    assert!(analog_transform(&[1.0; 4], &ideal_array(), &r).is_err());
    assert!(MismatchRealization::from_errors(4, vec![0.0; 15]).is_err());
}

#[test]
fn spec_validation() {
    let base = CapacitorArraySpec::from_preset(4.0).unwrap();
    assert!(base.with_sigma(0.5).validate().is_err());
    assert!(base.with_sigma(-0.1).validate().is_err());
    assert!(base.with_insertion_loss(-1.0).validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linear_for_fixed_realization(seed in any::<u64>(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let spec = CapacitorArraySpec::from_preset(0.68).unwrap();
        let r = mismatch_sample(&spec, 32, seed).unwrap();
        let x = gaussian(32, seed ^ 1);
        let z = gaussian(32, seed ^ 2);
        let mix: Vec<f64> = x.iter().zip(&z).map(|(a, b)| alpha * a + beta * b).collect();
        let lhs = analog_transform(&mix, &spec, &r).unwrap();
        let yx = analog_transform(&x, &spec, &r).unwrap();
        let yz = analog_transform(&z, &spec, &r).unwrap();
        for k in 0..32 {
            prop_assert!((lhs[k] - (alpha * yx[k] + beta * yz[k])).abs() < 1e-10);
        }
    }

    #[test]
    fn deviation_scales_with_error_pattern(seed in any::<u64>(), t in 0.01f64..4.0) {
        let spec = CapacitorArraySpec::from_preset(1.5).unwrap();
        let r = mismatch_sample(&spec, 16, seed).unwrap();
        let x = gaussian(16, seed.wrapping_add(7));
        let y0 = analog_transform(&x, &spec, &r.scaled(0.0)).unwrap();
        let y1 = analog_transform(&x, &spec, &r).unwrap();
        let yt = analog_transform(&x, &spec, &r.scaled(t)).unwrap();
        let d = |a: &[f64]| a.iter().zip(&y0).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        let (d1, dt) = (d(&y1), d(&yt));
        prop_assert!((dt - t * d1).abs() <= 1e-9 * t * d1);
    }
}
