use super::*;
use crate::secondary_zeta::TailModel;
use crate::test_support::bundled_table;
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128)
}

#[test]
fn general_form_with_riemann_polar_data_equals_riemann_form() {
    let ctx = ctx();
    let polar = PolarData::riemann(&ctx);
    for n in [1u32, 10, 100, 1000] {
        let general = predict_rh_true_general(n, &polar, false, &ctx);
        let riemann = predict_riemann(n, false, &ctx);
        let diff = (general.clone() - &riemann).abs();
        let tol = Float::with_val(ctx.working_bits(), Float::i_exp(1, -100));
        assert!(diff < tol, "forms disagree at n = {n}: {general} vs {riemann}");
    }
}

#[test]
fn riemann_predictor_reference_values() {
    let ctx = ctx();
    // n = 1: (log 1 - log 2pi - 1 + gamma)/2 = -1.13033...
    let p1 = predict_riemann(1, false, &ctx).to_f64();
    assert!((p1 + 1.130_33).abs() < 1e-4, "predictor(1) = {p1}");

    // sign change between 9 and 10 (root at 2 pi e^(1-gamma) = 9.60...)
    assert!(predict_riemann(9, false, &ctx).is_sign_negative());
    assert!(predict_riemann(10, false, &ctx).is_sign_positive());

    // n = 100
    let p100 = predict_riemann(100, false, &ctx).to_f64();
    assert!((p100 - 117.225).abs() < 0.01, "predictor(100) = {p100}");
}

#[test]
fn delta_term_shifts_by_seven_fourths() {
    let ctx = ctx();
    let without = predict_riemann(50, false, &ctx);
    let with = predict_riemann(50, true, &ctx);
    let diff = (with - without).to_f64();
    assert!((diff - 1.75).abs() < 1e-20);
}

#[test]
fn general_form_with_zeroed_residue_substitution() {
    let ctx = ctx();
    let wp = ctx.working_bits();
    // R_-2 = 1/(8 pi), R_-1 = 0, n = 1: value is -(1 - gamma)/2
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let polar = PolarData::new((pi * 8u32).recip(), Float::new(wp));
    let v = predict_rh_true_general(1, &polar, false, &ctx);
    let expected = -(Float::with_val(wp, 1u32) - euler_gamma(&ctx)) / 2u32;
    let diff = (v.clone() - &expected).abs();
    assert!(diff.to_f64() < 1e-30, "{v} vs {expected}");
}

#[test]
fn doubling_slope_matches_functional_form() {
    // f(2n) - 2 f(n) = n log 2 for the pure n(A log n + B) shape
    let ctx = ctx();
    let wp = ctx.working_bits();
    for n in [64u32, 1024] {
        let f2n = predict_riemann(2 * n, false, &ctx);
        let fn_ = predict_riemann(n, false, &ctx);
        let expected = Float::with_val(wp, n) * Float::with_val(wp, 2u32).ln();
        let diff = (f2n - 2u32 * fn_ - expected).abs();
        assert!(diff.to_f64() < 1e-25);
    }
}

#[test]
fn off_axis_predictor_diagnostics_for_the_reference_pair() {
    let ctx = ctx();
    let wp = ctx.working_bits();
    let tau = CFloat::with_val(wp, 50.0, 2.0);
    let p = predict_rh_false(1, &[tau], &ctx).unwrap();
    let rate = p.terms[0].growth_rate.to_f64();
    assert!(
        (rate - 7.99e-4).abs() < 2e-6,
        "growth rate {rate} should be about 7.99e-4"
    );
    let onset = p.terms[0].n_onset.to_f64();
    assert!((onset - 1252.0).abs() < 1.0, "onset {onset} should be about 1252");
}

#[test]
fn pure_imaginary_ordinate_gives_ratio_three() {
    let ctx = ctx();
    let wp = ctx.working_bits();
    let tau = CFloat::with_val(wp, 0.0, 1.0);
    // w = (i + i/2)/(i - i/2) = 3: the prediction is 2 * 3^n
    for n in [1u32, 5, 9] {
        let p = predict_rh_false(n, &[tau.clone()], &ctx).unwrap();
        let expected = 2.0 * 3.0f64.powi(n as i32);
        assert!((p.value.to_f64() - expected).abs() < 1e-20 * expected);
        assert!(p.value.is_sign_positive());
    }
    // boundary case n = 0: term + conjugate = 2
    let p0 = predict_rh_false(0, &[tau], &ctx).unwrap();
    assert!((p0.value.to_f64() - 2.0).abs() < 1e-25);
}

#[test]
fn off_axis_predictor_rejects_real_ordinates() {
    let ctx = ctx();
    let tau = CFloat::with_val(ctx.working_bits(), 14.13, 0.0);
    assert!(matches!(
        predict_rh_false(3, &[tau], &ctx),
        Err(AsymptoticsError::NotOffAxis(_))
    ));
}

#[test]
fn modulus_growth_is_exactly_geometric() {
    // for a single off-axis ordinate, |w^(n+1)| / |w^n| = |w| exactly
    let ctx = ctx();
    let wp = ctx.working_bits();
    let tau = CFloat::with_val(wp, 50.0, 2.0);
    let half = Float::with_val(wp, 0.5f32);
    let w = tau
        .add(&CFloat::new(Float::new(wp), half.clone()))
        .div(&tau.sub(&CFloat::new(Float::new(wp), half)));
    let expected_ratio = w.abs();
    for n in [100u64, 500, 2000] {
        let a = w.pow_u(n).abs();
        let b = w.pow_u(n + 1).abs();
        let ratio = b / a;
        let diff = (ratio - &expected_ratio).abs();
        assert!(diff.to_f64() < 1e-30);
    }
}

#[test]
fn complex_saddle_flags() {
    let ctx = ctx();
    let wp = ctx.working_bits();

    // real ordinate: purely imaginary saddle, never eligible
    let real_tau = CFloat::with_val(wp, 14.134725, 0.0);
    let s = saddle_complex(1000, &real_tau, &ctx).unwrap();
    assert!(s.sigma.re.is_zero() || s.sigma.re.clone().abs().to_f64() < 1e-30);
    assert!(!s.eligible);

    // the reference off-axis pair
    let tau = CFloat::with_val(wp, 50.0, 2.0);
    let s_2000 = saddle_complex(2000, &tau, &ctx).unwrap();
    assert!(s_2000.eligible, "n = 2000 should be past the onset");
    assert!(s_2000.inside_convergence);
    let s_100 = saddle_complex(100, &tau, &ctx).unwrap();
    assert!(!s_100.eligible, "n = 100 is below the onset");

    // eligibility is monotone in n
    let mut last = false;
    for n in [100u32, 400, 1252, 1253, 4000] {
        let flag = saddle_complex(n, &tau, &ctx).unwrap().eligible;
        assert!(flag >= last, "eligibility flipped backwards at n = {n}");
        last = flag;
    }

    assert!(matches!(
        saddle_complex(5, &CFloat::zero(wp), &ctx),
        Err(AsymptoticsError::ZeroOrdinate)
    ));
}

#[test]
fn real_saddle_sits_in_the_interval_with_unit_scale() {
    let ctx = ctx();
    let table = bundled_table();
    let tail = TailModel::for_table(&table, &ctx).unwrap();
    let s100 = saddle_real(100, &table, &tail, &ctx, 1e-6).unwrap();
    let sigma = s100.sigma.to_f64();
    assert!((0.5..1.0).contains(&sigma), "sigma_r(100) = {sigma}");
    let scale = s100.deviation_scale.to_f64();
    assert!((0.3..3.0).contains(&scale), "(sigma - 1/2) log n = {scale}");

    // the minimum drifts toward 1/2 as n grows
    let s1000 = saddle_real(1000, &table, &tail, &ctx, 1e-6).unwrap();
    assert!(
        s1000.sigma < s100.sigma,
        "sigma_r should decrease with n: {} vs {}",
        s1000.sigma,
        s100.sigma
    );

    // refining the tolerance refines the location consistently
    let coarse = saddle_real(100, &table, &tail, &ctx, 1e-4).unwrap();
    let diff = (coarse.sigma.clone() - &s100.sigma).abs();
    assert!(diff.to_f64() < 2e-4);
}
