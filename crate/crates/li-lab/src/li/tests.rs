use super::*;
use crate::numerics::{CFloat, PrecisionContext};
use rug::ops::CompleteRound;
use crate::secondary_zeta::{z_integer_batch, TailModel};
use crate::test_support::bundled_table;
use crate::zeros::ZeroTable;
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128)
}

/// Synthetic single-pair table with x = 1 (tau = sqrt(3)/2).
fn unit_pair_table(prec: u32) -> ZeroTable {
    let root3 = Float::with_val(prec, 3u32).sqrt() / 2u32;
    ZeroTable::synthetic(vec![root3])
}

fn z1_oracle(wp: u32) -> f64 {
    let ctx = PrecisionContext::new(wp);
    let gamma = crate::numerics::euler_gamma(&ctx);
    let four_pi = Float::with_val(wp, rug::float::Constant::Pi) * 4u32;
    (Float::with_val(wp, 1u32) + gamma / 2u32 - four_pi.ln() / 2u32).to_f64()
}

// ---------------------------------------------------------------------------
// Route A
// ---------------------------------------------------------------------------

#[test]
fn unit_pair_small_indices_are_exact() {
    let ctx = ctx();
    let table = unit_pair_table(ctx.working_bits());
    // w = e^(i pi / 3): lambda_n = 2 - 2 cos(n pi / 3), period six
    let expected = [1.0f64, 3.0, 4.0, 3.0, 1.0, 0.0];
    for n in 1..=12u32 {
        let v = lambda_zero_sum(n, &table, None, &ctx).unwrap();
        let want = expected[((n - 1) % 6) as usize];
        let diff = (v.value.value.to_f64() - want).abs();
        assert!(diff < 1e-30, "lambda_{n} = {} want {want}", v.value.value);
    }
}

#[test]
fn bundled_table_lambda_one_matches_closed_form() {
    let ctx = ctx();
    let table = bundled_table();
    let v = lambda_zero_sum(1, &table, None, &ctx).unwrap();
    let oracle = z1_oracle(ctx.working_bits());
    let diff = (v.value.value.to_f64() - oracle).abs();
    assert!(
        diff <= v.value.abs_error.to_f64() + 5e-5,
        "lambda_1 = {} vs oracle {oracle}",
        v.value.value
    );
    assert!((v.value.value.to_f64() - 0.023_095_7).abs() < 1e-4);
}

#[test]
fn batch_matches_single_calls() {
    let ctx = ctx();
    let table = bundled_table();
    let ns = [1u32, 2, 3, 5, 8, 13];
    let batch = lambda_zero_sum_batch(&ns, &table, None, &ctx).unwrap();
    for (i, &n) in ns.iter().enumerate() {
        let single = lambda_zero_sum(n, &table, None, &ctx).unwrap();
        let diff = (batch[i].value.value.clone() - &single.value.value).abs();
        assert!(diff.to_f64() < 1e-25);
    }
}

#[test]
fn positivity_on_tabulated_table() {
    let ctx = ctx();
    let table = bundled_table();
    let ns: Vec<u32> = (1..=40).collect();
    for v in lambda_zero_sum_batch(&ns, &table, None, &ctx).unwrap() {
        assert!(
            v.value.value.is_sign_positive(),
            "lambda_{} = {} not positive",
            v.n,
            v.value.value
        );
    }
}

#[test]
fn off_axis_pair_contribution_is_exact() {
    // tau = i as the representative is not allowed (Re = 0), so use the
    // nearly-pure-imaginary regime where growth dominates: tau = 50 + 2i at
    // n = 0 is the boundary case handled by the predictor module; here we
    // pin the exact quadruple contribution at n = 1:
    // 4 - 2 Re w - 2 Re w^-1 with w = (tau+i/2)/(tau-i/2) equals 2 Re (1/x).
    let ctx = ctx();
    let wp = ctx.working_bits();
    let empty = ZeroTable::synthetic(vec![]);
    let tau = crate::numerics::CFloat::with_val(wp, 50.0, 2.0);
    let table = empty.inject_off_axis(&tau).unwrap();
    let v = lambda_zero_sum(1, &table, None, &ctx).unwrap();
    let x = crate::zeros::x_of(&crate::numerics::CFloat::with_val(wp, 50.0, 2.0));
    let expected = (2u32 * &x.recip().re).complete(wp);
    let diff = (v.value.value.clone() - &expected).abs();
    assert!(diff.to_f64() < 1e-30, "quadruple at n=1: {} vs {}", v.value.value, expected);
}

// ---------------------------------------------------------------------------
// Route B
// ---------------------------------------------------------------------------

#[test]
fn binomial_route_collapses_to_z1_at_n1() {
    let ctx = ctx();
    let table = bundled_table();
    let tail = TailModel::for_table(&table, &ctx).unwrap();
    let zs = z_integer_batch(1, &table, &tail, &ctx).unwrap();
    let v = lambda_binomial(1, &zs, &ctx).unwrap();
    let diff = (v.value.value.clone() - &zs[0].value).abs();
    assert!(diff.to_f64() < 1e-30);
}

#[test]
fn binomial_route_n2_is_4z1_minus_z2() {
    let ctx = ctx();
    let table = bundled_table();
    let tail = TailModel::for_table(&table, &ctx).unwrap();
    let zs = z_integer_batch(2, &table, &tail, &ctx).unwrap();
    let v = lambda_binomial(2, &zs, &ctx).unwrap();
    let wp = ctx.working_bits();
    let expected = (4u32 * &zs[0].value).complete(wp) - &zs[1].value;
    let diff = (v.value.value.clone() - &expected).abs();
    assert!(diff.to_f64() < 1e-28);
}

#[test]
fn binomial_route_unit_samples_give_period_six_values() {
    // with Z(j) = 1 for all j the route must reproduce the unit-pair
    // lambda sequence: n = 3 gives 9 - 6 + 1 = 4
    let ctx = ctx();
    let ones: Vec<crate::numerics::ValueWithError> = (0..8)
        .map(|_| crate::numerics::ValueWithError::exact(Float::with_val(160, 1u32)))
        .collect();
    let v3 = lambda_binomial(3, &ones, &ctx).unwrap();
    assert!((v3.value.value.to_f64() - 4.0).abs() < 1e-30);
    // cross-method against route A on the unit pair
    let table = unit_pair_table(ctx.working_bits());
    let a3 = lambda_zero_sum(3, &table, None, &ctx).unwrap();
    assert!((v3.value.value.to_f64() - a3.value.value.to_f64()).abs() < 1e-28);
}

#[test]
fn binomial_route_demands_precision() {
    let ctx = ctx(); // 128 bits
    let zs: Vec<crate::numerics::ValueWithError> = (0..300)
        .map(|_| crate::numerics::ValueWithError::exact(Float::with_val(64, 1u32)))
        .collect();
    // precision_for(300) = 246 > 128
    let err = lambda_binomial(300, &zs, &ctx).unwrap_err();
    assert!(matches!(err, LiError::InsufficientPrecision { .. }));
}

#[test]
fn cross_method_a_vs_b_on_bundled_table() {
    let ctx = ctx();
    let table = bundled_table();
    let tail = TailModel::for_table(&table, &ctx).unwrap();
    let zs = z_integer_batch(12, &table, &tail, &ctx).unwrap();
    let ns: Vec<u32> = (1..=12).collect();
    let a = lambda_zero_sum_batch(&ns, &table, None, &ctx).unwrap();
    for &n in &ns {
        let b = lambda_binomial(n, &zs, &ctx).unwrap();
        assert!(
            a[(n - 1) as usize].value.agrees_with(&b.value),
            "methods disagree at n = {n}: {} vs {}",
            a[(n - 1) as usize].value,
            b.value
        );
    }
}

#[test]
fn coarse_and_fine_cutoffs_agree_through_route_b() {
    let ctx = ctx();
    let table = bundled_table();
    let fine_tail = TailModel::for_table(&table, &ctx).unwrap();
    let coarse_tail = TailModel::for_table(&table, &ctx)
        .unwrap()
        .with_cutoff(
            Float::with_val(ctx.working_bits(), &table.ordinates()[9]),
            &table,
        )
        .unwrap();
    let zs_fine = z_integer_batch(10, &table, &fine_tail, &ctx).unwrap();
    let zs_coarse = z_integer_batch(10, &table, &coarse_tail, &ctx).unwrap();
    for n in 1..=10u32 {
        let fine = lambda_binomial(n, &zs_fine, &ctx).unwrap();
        let coarse = lambda_binomial(n, &zs_coarse, &ctx).unwrap();
        assert!(
            fine.value.agrees_with(&coarse.value),
            "10-zero vs 100-zero lambda_{n} disagree"
        );
    }
}

// ---------------------------------------------------------------------------
// Route C
// ---------------------------------------------------------------------------

#[test]
fn cauchy_route_agrees_with_binomial_for_small_n() {
    let ctx = PrecisionContext::new(192);
    let table = bundled_table();
    let tail = TailModel::for_table(&table, &ctx).unwrap();
    let zs = z_integer_batch(4, &table, &tail, &ctx).unwrap();
    let r = Float::with_val(ctx.working_bits(), 0.9f64);
    let ns = [1u32, 2, 3, 4];
    let cs = lambda_cauchy_batch(&ns, &r, 256, &ctx).unwrap();
    for (i, &n) in ns.iter().enumerate() {
        let b = lambda_binomial(n, &zs, &ctx).unwrap();
        assert!(
            cs[i].value.agrees_with(&b.value),
            "cauchy vs binomial at n = {n}: {} vs {}",
            cs[i].value,
            b.value
        );
    }
    // and the classical first value
    assert!((cs[0].value.value.to_f64() - 0.023_095_7).abs() < 1e-5);
}

#[test]
fn cauchy_rejects_bad_parameters() {
    let ctx = ctx();
    let r = Float::with_val(ctx.working_bits(), 0.9f64);
    assert!(matches!(
        lambda_cauchy(1, &r, 100, &ctx),
        Err(LiError::BadNodeCount(100))
    ));
    assert!(matches!(
        lambda_cauchy(1, &r, 4, &ctx),
        Err(LiError::BadNodeCount(4))
    ));
    let r_big = Float::with_val(ctx.working_bits(), 1.5f64);
    assert!(matches!(
        lambda_cauchy(1, &r_big, 64, &ctx),
        Err(LiError::BadRadius(_))
    ));
    assert!(matches!(
        lambda_cauchy(40, &r, 512, &ctx),
        Err(LiError::CauchyCeiling { .. })
    ));
}

#[test]
fn dft_extraction_recovers_mean_of_constant_samples() {
    // order-zero coefficient of a constant function is the sample mean
    let wp = 160;
    let values: Vec<CFloat> = (0..16)
        .map(|_| CFloat::with_val(wp, 2.5, 0.0))
        .collect();
    let c0 = dft_coefficient(&values, 0, 1, wp);
    assert!((c0.re.to_f64() - 2.5).abs() < 1e-40);
    assert!(c0.im.to_f64().abs() < 1e-40);
    // and a pure tone lands in its own bin
    let tone: Vec<CFloat> = (0..16)
        .map(|m| {
            let angle = 2.0 * std::f64::consts::PI * (3.0 * m as f64) / 16.0;
            CFloat::with_val(wp, angle.cos(), angle.sin())
        })
        .collect();
    let c3 = dft_coefficient(&tone, 3, 1, wp);
    assert!((c3.re.to_f64() - 1.0).abs() < 1e-12);
    let c2 = dft_coefficient(&tone, 2, 1, wp);
    assert!(c2.abs().to_f64() < 1e-12);
}

// ---------------------------------------------------------------------------
// Residue identity
// ---------------------------------------------------------------------------

#[test]
fn residue_identity_small_cases() {
    let (ok, rows) = residue_identity_check(1);
    assert!(ok);
    assert_eq!(rows[0].binomial_route, BigRational::from((1, 1)));

    let (ok5, rows5) = residue_identity_check(5);
    assert!(ok5);
    let row_j2 = &rows5[1];
    assert_eq!(row_j2.j, 2);
    assert_eq!(row_j2.residue_route, BigRational::from((-50, 1)));
    assert_eq!(row_j2.binomial_route, BigRational::from((-50, 1)));
}

#[test]
fn residue_identity_holds_through_n_50() {
    for n in 1..=50u32 {
        let (ok, rows) = residue_identity_check(n);
        assert!(ok, "coefficient mismatch at n = {n}");
        assert_eq!(rows.len(), n as usize);
    }
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

#[test]
fn zero_sum_stable_under_precision_doubling() {
    let ctx = ctx();
    let table = bundled_table();
    for n in [1u32, 7, 20] {
        let a = lambda_zero_sum(n, &table, None, &ctx).unwrap();
        let b = lambda_zero_sum(n, &table, None, &ctx.doubled()).unwrap();
        let diff = (a.value.value.clone() - &b.value.value).abs();
        assert!(diff <= a.value.abs_error, "doubling moved lambda_{n}");
    }
}
