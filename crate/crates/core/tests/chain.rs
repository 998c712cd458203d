use std::f64::consts::PI;

use hadamard_core::analog::CapacitorArraySpec;
use hadamard_core::chain::*;
use hadamard_core::rng::rng_from_seed;
use hadamard_core::transform::TransformSpec;
use rand_distr::{Distribution, StandardNormal};

fn spec7() -> TransformSpec {
    TransformSpec::new(7).unwrap()
}

fn sweep_points() -> Vec<f64> {
    (0..=16).map(|i| 5.0 * i as f64).collect()
}

fn db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[test]
fn sine_sqnr_follows_classical_formula() {
    let n = 100_000;
    // irrational cycles per sample so the phases equidistribute
    let f = (5f64.sqrt() - 1.0) / 8.0;
    let x: Vec<f64> = (0..n).map(|i| (2.0 * PI * f * i as f64).sin()).collect();
    for b in [6u32, 8, 10, 12] {
        let q = quantize(&x, &AdcModel::ideal(b, 1.0)).unwrap();
        let s: f64 = x.iter().map(|v| v * v).sum();
        let e: f64 = x.iter().zip(&q).map(|(a, b)| (a - b).powi(2)).sum();
        let sqnr = db(s / e);
        let expect = 6.02 * b as f64 + 1.76;
        assert!((sqnr - expect).abs() <= 0.3, "b={b}: {sqnr} vs {expect}");
    }
}

#[test]
fn quantizer_edges() {
    let adc = AdcModel::ideal(4, 1.0);
    let step = adc.step();
    assert_eq!(step, 0.125);
    let q = quantize(&[0.0, 2.0, -2.0, -1e-12], &adc).unwrap();
    assert_eq!(q, vec![step / 2.0, 1.0 - step / 2.0, -1.0 + step / 2.0, -step / 2.0]);
}

#[test]
fn output_snr_matches_closed_form() {
    let mut r = rng_from_seed(42);
    let n = 100_000;
    let sigma_e: f64 = 0.1;
    let y: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut r)).collect();
    let yhat: Vec<f64> = y
        .iter()
        .map(|v| {
            let z: f64 = StandardNormal.sample(&mut r);
            v + sigma_e * z
        })
        .collect();
    let snr = output_snr(&y, &yhat, DEFAULT_SNR_CEILING_DB).unwrap();
    assert!((snr - db(1.0 / sigma_e.powi(2))).abs() < 0.1, "{snr}");
    assert_eq!(output_snr(&y, &y, DEFAULT_SNR_CEILING_DB).unwrap(), DEFAULT_SNR_CEILING_DB);
    assert!(output_snr(&y, &vec![0.0; n], DEFAULT_SNR_CEILING_DB).unwrap().abs() < 1e-12);
}

#[test]
fn yield_line_uses_linear_interpolation() {
    let s: Vec<f64> = (21..=30).map(f64::from).collect();
    // h = 0.1 * 9 = 0.9 -> 21 + 0.9 * (22 - 21)
    assert!((yield_snr(&s, 0.9).unwrap() - 21.9).abs() < 1e-12);
    assert_eq!(yield_snr(&[30.0; 10], 0.9).unwrap(), 30.0);
    assert!((yield_snr(&s, 0.5).unwrap() - 25.5).abs() < 1e-12);
    assert!(yield_snr(&[], 0.9).is_err());
}

#[test]
fn input_model_converges_and_repeats() {
    let model = SignalModel::new(f64::INFINITY, 64);
    let (s, x) = generate_input(&model, 3).unwrap();
    assert_eq!(s, x);
    let model = SignalModel::new(7.0, 64);
    assert_eq!(generate_input(&model, 9).unwrap(), generate_input(&model, 9).unwrap());
}

#[test]
fn bypass_preserves_input_snr() {
    let cfg = SweepConfig::new(ChainKind::Digital, sweep_points()).with_trials(1, 400).with_seed(11);
    let curve = run_digital_chain(&cfg, None, spec7(), None, &Sequential).unwrap();
    for p in &curve.points {
        assert!((p.mean_db - p.input_snr_db).abs() < 0.2, "{p:?}");
    }

    let array = CapacitorArraySpec::from_preset(0.68).unwrap().with_sigma(0.0).with_insertion_loss(0.0);
    let cfg = SweepConfig::new(ChainKind::Analog, sweep_points()).with_trials(2, 200).with_seed(11);
    let curve = run_analog_chain(&cfg, None, &array, spec7(), &Sequential).unwrap();
    for p in &curve.points {
        assert!((p.mean_db - p.input_snr_db).abs() < 0.2, "{p:?}");
    }
}

#[test]
fn digital_curves_are_monotone_and_saturate() {
    for b in [5u32, 8, 10] {
        let cfg = SweepConfig::new(ChainKind::Digital, sweep_points()).with_trials(1, 200).with_seed(2);
        let curve = run_digital_chain(&cfg, Some(&AdcModel::ideal(b, 1.0)), spec7(), None, &Sequential).unwrap();
        for w in curve.points.windows(2) {
            assert!(w[1].mean_db >= w[0].mean_db - 0.1, "b={b}: {:?}", w);
        }
        let top: Vec<f64> = curve.points.iter().rev().take(3).map(|p| p.mean_db).collect();
        let spread = top.iter().cloned().fold(f64::MIN, f64::max) - top.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 0.5, "b={b}: {top:?}");
        for p in &curve.points {
            assert_eq!(p.min_db, p.max_db);
            assert_eq!(p.mean_db, p.p10_db);
        }
    }
}

#[test]
fn noise_dominated_digital_point() {
    let cfg = SweepConfig::new(ChainKind::Digital, vec![0.0]).with_trials(1, 400).with_seed(8);
    let curve = run_digital_chain(&cfg, Some(&AdcModel::ideal(8, 1.0)), spec7(), None, &Sequential).unwrap();
    assert!(curve.points[0].mean_db.abs() < 1.0);
}

fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

fn cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2))
}

/// Output noise of the digital chain for unit-variance Gaussian inputs,
/// from exact Gaussian integrals over the mid-rise cells (full scale 4)
/// plus one rounding error of variance `step^2 / 8` per halving stage. The
/// LS gain fit removes the part of each error correlated with the signal:
/// for the ADC it is computed from the same integrals, for ties-away
/// rounding of a parity-balanced Gaussian it is `step^2 / (8 pi)`.
fn analytic_plateau_db(bits: u32, halvings: u32) -> f64 {
    let levels = 1i64 << bits;
    let step = 8.0 / levels as f64;
    let (mut err, mut corr) = (0.0, 0.0);
    for k in -(levels / 2)..levels / 2 {
        let a = if k == -(levels / 2) { f64::NEG_INFINITY } else { k as f64 * step };
        let c = if k == levels / 2 - 1 { f64::INFINITY } else { (k + 1) as f64 * step };
        let r = (k as f64 + 0.5) * step;
        let p = cdf(c) - cdf(a);
        let m1 = phi(a) - phi(c);
        let edge = |x: f64| if x.is_finite() { x * phi(x) } else { 0.0 };
        let m2 = p + edge(a) - edge(c);
        err += r * r * p - 2.0 * r * m1 + m2;
        corr += r * m1 - m2;
    }
    let adc = err - corr * corr;
    let rounding = halvings as f64 * step * step * (PI - 1.0) / (8.0 * PI);
    -db(adc + rounding)
}

/// 25 batches of 4000 noise-free trials, error energies pooled.
fn pooled_plateau_db(bits: u32) -> f64 {
    let inv: f64 = (0..25u64)
        .map(|batch| {
            let cfg =
                SweepConfig::new(ChainKind::Digital, vec![f64::INFINITY]).with_trials(1, 4000).with_seed(1000 + batch);
            let c = run_digital_chain(&cfg, Some(&AdcModel::ideal(bits, 1.0)), spec7(), None, &Sequential).unwrap();
            10f64.powf(-c.points[0].mean_db / 10.0)
        })
        .sum();
    -db(inv / 25.0)
}

#[test]
fn digital_plateau_matches_oracle() {
    // frozen from the first 1e5-trial run
    for (bits, frozen) in [(8u32, 34.6891), (10, 45.6354)] {
        let mc = pooled_plateau_db(bits);
        let oracle = analytic_plateau_db(bits, 3);
        assert!((mc - frozen).abs() < 1e-3, "b={bits}: {mc}");
        assert!((mc - oracle).abs() < 0.25, "b={bits}: mc {mc} oracle {oracle}");
    }
}

#[test]
fn ideal_analog_array_equals_output_quantized_transform() {
    let array = CapacitorArraySpec::from_preset(4.0).unwrap().with_sigma(0.0).with_insertion_loss(0.0);
    let cfg = SweepConfig::new(ChainKind::Analog, vec![10.0, 40.0]).with_trials(5, 50).with_seed(4);
    let curve = run_analog_chain(&cfg, Some(&AdcModel::ideal(8, 1.0)), &array, spec7(), &Sequential).unwrap();
    for p in &curve.points {
        assert_eq!(p.min_db, p.max_db);
    }
}

#[test]
fn analog_mismatch_spreads_output_snr() {
    let array = CapacitorArraySpec::from_preset(0.68).unwrap();
    let cfg = SweepConfig::new(ChainKind::Analog, vec![0.0, 20.0, 40.0, 60.0]).with_trials(60, 40).with_seed(6);
    let curve = run_analog_chain(&cfg, Some(&AdcModel::ideal(7, 1.0)), &array, spec7(), &Sequential).unwrap();
    for p in &curve.points {
        assert!(p.min_db <= p.p10_db && p.p10_db <= p.mean_db && p.mean_db <= p.max_db, "{p:?}");
    }
    let at20 = curve.points[1];
    assert!(at20.max_db > at20.min_db);
    assert!(at20.p10_db > at20.min_db && at20.p10_db < at20.mean_db);
    for w in curve.points.windows(2) {
        assert!(w[1].mean_db >= w[0].mean_db - 0.1);
    }
}

#[test]
fn sweeps_are_reproducible() {
    let array = CapacitorArraySpec::from_preset(1.5).unwrap();
    let cfg = SweepConfig::new(ChainKind::Analog, vec![10.0, 30.0]).with_trials(8, 20).with_seed(77);
    let a = run_analog_chain(&cfg, Some(&AdcModel::ideal(8, 1.0)), &array, spec7(), &Sequential).unwrap();
    let b = run_analog_chain(&cfg, Some(&AdcModel::ideal(8, 1.0)), &array, spec7(), &Sequential).unwrap();
    assert_eq!(a, b);
    let c = run_analog_chain(&cfg.clone().with_seed(78), Some(&AdcModel::ideal(8, 1.0)), &array, spec7(), &Sequential)
        .unwrap();
    assert_ne!(a, c);
}
