use super::*;
use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer};

fn ctx128() -> PrecisionContext {
    PrecisionContext::new(128)
}

fn assert_close(actual: &Float, expected: &Float, tol_log2: i32, label: &str) {
    let p = actual.prec().max(expected.prec());
    let diff = (actual - expected).complete(p).abs();
    let tol = Float::with_val(p, Float::i_exp(1, tol_log2));
    assert!(
        diff <= tol,
        "{label}: |{actual} - {expected}| = {diff} > 2^{tol_log2}"
    );
}

// ---------------------------------------------------------------------------
// binomial
// ---------------------------------------------------------------------------

#[test]
fn binomial_identity_cases() {
    assert_eq!(binomial(1, 1), Integer::from(1));
    assert_eq!(binomial(4, 3), Integer::from(4));
    assert_eq!(binomial(7, 9), Integer::ZERO);
}

/// Independent Pascal-triangle computation, kept free of `Integer::binomial`.
fn pascal_rows(n: usize) -> Vec<Vec<Integer>> {
    let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::from(1)]];
    for a in 1..=n {
        let prev = &rows[a - 1];
        let mut row = Vec::with_capacity(a + 1);
        row.push(Integer::from(1));
        for b in 1..a {
            row.push(Integer::from(&prev[b - 1] + &prev[b]));
        }
        row.push(Integer::from(1));
        rows.push(row);
    }
    rows
}

#[test]
fn binomial_matches_pascal_recurrence_oracle() {
    let rows = pascal_rows(199);
    assert_eq!(binomial(199, 99), rows[199][99]);
}

#[test]
fn binomial_satisfies_pascal_rule_exhaustively() {
    // C(a,b) = C(a-1,b-1) + C(a-1,b) for all a <= 300
    for a in 1..=300u32 {
        for b in 1..a {
            let lhs = binomial(a, b);
            let rhs = binomial(a - 1, b - 1) + binomial(a - 1, b);
            assert_eq!(lhs, rhs, "Pascal rule failed at ({a},{b})");
        }
    }
}

// ---------------------------------------------------------------------------
// log_gamma
// ---------------------------------------------------------------------------

#[test]
fn log_gamma_at_one_is_zero() {
    let ctx = ctx128();
    let v = log_gamma(&CFloat::with_val(ctx.working_bits(), 1.0, 0.0), &ctx).unwrap();
    assert!(v.value.abs() <= v.abs_error);
}

#[test]
fn log_gamma_at_half_is_half_log_pi() {
    let ctx = ctx128();
    let v = log_gamma(&CFloat::with_val(ctx.working_bits(), 0.5, 0.0), &ctx).unwrap();
    let expected = Float::with_val(ctx.working_bits(), rug::float::Constant::Pi).ln() / 2u32;
    assert_close(&v.value.re, &expected, -120, "log_gamma(1/2)");
    assert!(v.value.im.is_zero() || v.value.im.clone().abs() <= v.abs_error);
}

#[test]
fn log_gamma_matches_product_recurrence_oracle() {
    // log Gamma(s) = log Gamma(s+20) - sum_{k=0}^{19} log(s+k) at s = 10+10i
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let s = CFloat::with_val(wp, 10.0, 10.0);
    let direct = log_gamma(&s, &ctx).unwrap();
    let shifted = log_gamma(&s.add_real(&Float::with_val(wp, 20u32)), &ctx).unwrap();
    let mut log_prod = CFloat::zero(wp);
    for k in 0..20u32 {
        log_prod = log_prod.add(&s.add_real(&Float::with_val(wp, k)).ln());
    }
    let oracle = shifted.value.sub(&log_prod);
    let diff = direct.value.sub(&oracle).abs();
    let tol = Float::with_val(wp, Float::i_exp(1, -110));
    assert!(diff <= tol, "recurrence oracle deviation {diff}");
}

#[test]
fn log_gamma_matches_mpfr_on_real_axis() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    for x in [0.25f64, 1.75, 7.3, 23.0] {
        let mine = log_gamma(&CFloat::with_val(wp, x, 0.0), &ctx).unwrap();
        let reference = Float::with_val(wp, x).ln_gamma();
        assert_close(&mine.value.re, &reference, -120, "log_gamma real axis");
    }
}

#[test]
fn log_gamma_rejects_poles() {
    let ctx = ctx128();
    for x in [0.0f64, -1.0, -7.0] {
        let r = log_gamma(&CFloat::with_val(ctx.working_bits(), x, 0.0), &ctx);
        assert!(matches!(r, Err(NumericsError::PoleOfGamma(_))));
    }
}

// ---------------------------------------------------------------------------
// digamma
// ---------------------------------------------------------------------------

#[test]
fn digamma_classical_values() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let gamma = euler_gamma(&ctx);

    // psi(1) = -gamma
    let v1 = digamma(&CFloat::with_val(wp, 1.0, 0.0), &ctx).unwrap();
    let expected1 = (-&gamma).complete(wp);
    assert_close(&v1.value.re, &expected1, -120, "psi(1)");

    // psi(2) = 1 - gamma  (psi(s+1) = psi(s) + 1/s)
    let v2 = digamma(&CFloat::with_val(wp, 2.0, 0.0), &ctx).unwrap();
    let expected2 = (1u32 - &gamma).complete(wp);
    assert_close(&v2.value.re, &expected2, -120, "psi(2)");
}

#[test]
fn digamma_at_half_matches_duplication_oracle() {
    // duplication: psi(2z) = psi(z)/2 + psi(z+1/2)/2 + ln 2.
    // At z = 1/2 it pins psi(1/2) = psi(1) - 2 ln 2 = -gamma - 2 ln 2.
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let v = digamma(&CFloat::with_val(wp, 0.5, 0.0), &ctx).unwrap();
    let ln2 = Float::with_val(wp, 2u32).ln();
    let expected = -euler_gamma(&ctx) - 2u32 * ln2;
    assert_close(&v.value.re, &expected, -120, "psi(1/2)");

    // and the duplication identity itself at a complex point
    let z = CFloat::with_val(wp, 1.3, 0.7);
    let two_z = z.mul_real(&Float::with_val(wp, 2u32));
    let half = Float::with_val(wp, 0.5f32);
    let lhs = digamma(&two_z, &ctx).unwrap().value;
    let mut rhs = digamma(&z, &ctx).unwrap().value.mul_real(&half);
    rhs = rhs.add(&digamma(&z.add_real(&half), &ctx).unwrap().value.mul_real(&half));
    rhs = rhs.add_real(&Float::with_val(wp, 2u32).ln());
    let diff = lhs.sub(&rhs).abs();
    assert!(diff <= Float::with_val(wp, Float::i_exp(1, -110)));
}

#[test]
fn digamma_matches_mpfr_on_real_axis() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    for x in [0.5f64, 3.25, 11.0] {
        let mine = digamma(&CFloat::with_val(wp, x, 0.0), &ctx).unwrap();
        let reference = Float::with_val(wp, x).digamma();
        assert_close(&mine.value.re, &reference, -118, "digamma real axis");
    }
}

// ---------------------------------------------------------------------------
// zeta: eta-series oracle (Cohen–Rodriguez Villegas–Zagier acceleration)
// ---------------------------------------------------------------------------

/// Alternating-series acceleration for `eta(s) = sum (-1)^k (k+1)^(-s)`
/// or its derivative; independent of the Euler–Maclaurin path under test.
fn eta_cvz(s: &CFloat, wp: u32, derivative: bool) -> CFloat {
    let im = s.im.to_f64().abs();
    let n = (wp as f64 / 2.54 + 12.0 + 1.5 * im).ceil() as usize;
    let sqrt8 = Float::with_val(wp, 8u32).sqrt();
    let big = (3u32 + &sqrt8).complete(wp).pow(n as u32);
    let d_val = (big.clone() + big.recip()) / 2u32;
    let mut b = Float::with_val(wp, -1i32);
    let mut c = (-&d_val).complete(wp);
    let mut acc = CFloat::zero(wp);
    for k in 0..n {
        c = b.clone() - c;
        let mut a_k = s.neg_pow_of_uint((k + 1) as u64);
        if derivative {
            let ln_k1 = Float::with_val(wp, (k + 1) as u64).ln();
            a_k = a_k.mul_real(&ln_k1).neg();
        }
        acc = acc.add(&a_k.mul_real(&c));
        let num = Float::with_val(wp, ((k + n) * (n - k)) as u64);
        let den = Float::with_val(wp, (k as f64 + 0.5) * (k as f64 + 1.0));
        b *= num / den;
        b = -b;
    }
    acc.mul_real(&d_val.recip())
}

/// zeta and zeta' from the eta oracle: zeta = eta / (1 - 2^(1-s)).
fn zeta_from_eta_oracle(s: &CFloat, wp: u32, with_deriv: bool) -> (CFloat, Option<CFloat>) {
    let eta = eta_cvz(s, wp, false);
    let ln2 = Float::with_val(wp, 2u32).ln();
    // 2^{1-s} = e^{(1-s) ln 2}
    let one_minus_s = s.neg().add_real(&Float::with_val(wp, 1u32));
    let two_pow = one_minus_s.mul_real(&ln2).exp();
    let denom = two_pow.neg().add_real(&Float::with_val(wp, 1u32));
    let zeta = eta.div(&denom);
    if !with_deriv {
        return (zeta, None);
    }
    let eta_prime = eta_cvz(s, wp, true);
    // zeta' = (eta' - zeta * ln 2 * 2^{1-s}) / (1 - 2^{1-s})
    let correction = zeta.mul(&two_pow).mul_real(&ln2);
    let zeta_prime = eta_prime.sub(&correction).div(&denom);
    (zeta, Some(zeta_prime))
}

#[test]
fn zeta_classical_values() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let z2 = zeta_em(&CFloat::with_val(wp, 2.0, 0.0), &ctx).unwrap();
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let expected = pi.clone().square() / 6u32;
    assert_close(&z2.value.re, &expected, -120, "zeta(2)");

    let z0 = zeta_em(&CFloat::with_val(wp, 0.0, 0.0), &ctx).unwrap();
    let expected0 = Float::with_val(wp, -0.5f64);
    assert_close(&z0.value.re, &expected0, -120, "zeta(0)");
}

#[test]
fn zeta_pole_is_an_error() {
    let ctx = ctx128();
    let r = zeta_em(&CFloat::with_val(ctx.working_bits(), 1.0, 0.0), &ctx);
    assert!(matches!(r, Err(NumericsError::PoleOfZeta)));
}

#[test]
fn zeta_matches_eta_oracle_at_2_plus_3i() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let s = CFloat::with_val(wp, 2.0, 3.0);
    let mine = zeta_em(&s, &ctx).unwrap();
    let (oracle, _) = zeta_from_eta_oracle(&s, wp, false);
    let diff = mine.value.sub(&oracle).abs();
    // 30-digit agreement demanded; comfortably inside both methods' range
    let tol = Float::with_val(wp, 10u32).pow(-30i32);
    assert!(diff <= tol, "eta oracle deviation {diff}");
}

#[test]
fn zeta_matches_eta_oracle_on_grid() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    for &re in &[0.5f64, 1.5, 4.0] {
        for &im in &[0.0f64, 5.0, 50.0] {
            if re == 1.0 && im == 0.0 {
                continue;
            }
            let s = CFloat::with_val(wp, re, im);
            let mine = zeta_em(&s, &ctx).unwrap();
            let (oracle, _) = zeta_from_eta_oracle(&s, wp, false);
            let diff = mine.value.sub(&oracle).abs();
            let mut tol = mine.abs_error.clone();
            tol += Float::with_val(wp, Float::i_exp(1, -100));
            assert!(
                diff <= tol,
                "zeta grid mismatch at {re}+{im}i: {diff} > {tol}"
            );
        }
    }
}

#[test]
fn zeta_reflection_is_exact_in_fixed_tree_mode() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let s = CFloat::with_val(wp, 1.25, 17.0);
    let z = zeta_em(&s, &ctx).unwrap().value;
    let z_conj = zeta_em(&s.conj(), &ctx).unwrap().value;
    assert_eq!(z.re, z_conj.re);
    assert_eq!(z.im, -z_conj.im);
}

// ---------------------------------------------------------------------------
// zeta log-derivative
// ---------------------------------------------------------------------------

#[test]
fn zeta_log_deriv_matches_finite_difference_at_2() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let s = CFloat::with_val(wp, 2.0, 0.0);
    let mine = zeta_log_deriv(&s, &ctx).unwrap();

    // centered finite difference of zeta_em at step 2^(-bits/3)
    let h_exp = -(ctx.bits() as i32) / 3;
    let h = Float::with_val(wp, Float::i_exp(1, h_exp));
    let sp = s.add_real(&h);
    let sm = s.add_real(&(-&h).complete(wp));
    let zp = zeta_em(&sp, &ctx).unwrap().value;
    let zm = zeta_em(&sm, &ctx).unwrap().value;
    let z = zeta_em(&s, &ctx).unwrap().value;
    let fd = zp.sub(&zm).mul_real(&(Float::with_val(wp, 2u32) * &h).recip());
    let oracle = fd.div(&z);

    let diff = mine.value.sub(&oracle).abs();
    // FD truncation ~ h^2
    let tol = Float::with_val(wp, Float::i_exp(1, 2 * h_exp + 8));
    assert!(diff <= tol, "finite-difference oracle deviation {diff}");
}

#[test]
fn zeta_log_deriv_matches_eta_derivative_oracle_at_4() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let s = CFloat::with_val(wp, 4.0, 0.0);
    let mine = zeta_log_deriv(&s, &ctx).unwrap();
    let (z, dz) = zeta_from_eta_oracle(&s, wp, true);
    let oracle = dz.unwrap().div(&z);
    let diff = mine.value.sub(&oracle).abs();
    let tol = Float::with_val(wp, 10u32).pow(-30i32);
    assert!(diff <= tol, "eta derivative oracle deviation {diff}");
}

#[test]
fn zeta_log_deriv_stable_under_precision_doubling() {
    let ctx = ctx128();
    let s = CFloat::with_val(ctx.working_bits(), 3.0, 1.0);
    let base = zeta_log_deriv(&s, &ctx).unwrap();
    let fine = zeta_log_deriv(&s, &ctx.doubled()).unwrap();
    let diff = base.value.sub(&fine.value).abs();
    assert!(diff <= base.abs_error, "doubling moved result by {diff}");
}

// ---------------------------------------------------------------------------
// xi log-derivative
// ---------------------------------------------------------------------------

#[test]
fn xi_log_deriv_vanishes_at_symmetry_point() {
    let ctx = ctx128();
    let v = xi_log_deriv(&CFloat::with_val(ctx.working_bits(), 0.5, 0.0), &ctx).unwrap();
    assert!(
        v.value.abs() <= v.abs_error,
        "xi log-derivative at 1/2: {} exceeds bound {}",
        v.value,
        v.abs_error
    );
}

#[test]
fn xi_log_deriv_matches_finite_difference_at_2() {
    let ctx = ctx128();
    let wp = ctx.working_bits();

    // log Xi from parts: ln s + ln(s-1) + lnGamma(s/2) - (s/2) ln pi + ln zeta
    let log_xi = |s: &CFloat| -> CFloat {
        let half = Float::with_val(wp, 0.5f32);
        let mut acc = s.ln();
        acc = acc.add(&s.add_real(&Float::with_val(wp, -1i32)).ln());
        acc = acc.add(&log_gamma(&s.mul_real(&half), &ctx).unwrap().value);
        let ln_pi = Float::with_val(wp, rug::float::Constant::Pi).ln();
        acc = acc.sub(&s.mul_real(&(ln_pi * &half)));
        acc.add(&zeta_em(s, &ctx).unwrap().value.ln())
    };

    let s = CFloat::with_val(wp, 2.0, 0.0);
    let mine = xi_log_deriv(&s, &ctx).unwrap();
    let h_exp = -(ctx.bits() as i32) / 3;
    let h = Float::with_val(wp, Float::i_exp(1, h_exp));
    let fp = log_xi(&s.add_real(&h));
    let fm = log_xi(&s.add_real(&(-&h).complete(wp)));
    let fd = fp.sub(&fm).mul_real(&(Float::with_val(wp, 2u32) * &h).recip());
    let diff = mine.value.sub(&fd).abs();
    let tol = Float::with_val(wp, Float::i_exp(1, 2 * h_exp + 8));
    assert!(diff <= tol, "xi finite-difference deviation {diff}");
}

#[test]
fn xi_log_deriv_conjugate_symmetry() {
    let ctx = ctx128();
    let s = CFloat::with_val(ctx.working_bits(), 1.5, 2.5);
    let a = xi_log_deriv(&s, &ctx).unwrap().value;
    let b = xi_log_deriv(&s.conj(), &ctx).unwrap().value;
    let diff = a.sub(&b.conj()).abs();
    let p = ctx.working_bits();
    assert!(diff <= Float::with_val(p, Float::i_exp(1, -100)));
}

#[test]
fn xi_log_deriv_rejects_poles() {
    let ctx = ctx128();
    for x in [0.0f64, 1.0] {
        let r = xi_log_deriv(&CFloat::with_val(ctx.working_bits(), x, 0.0), &ctx);
        assert!(matches!(r, Err(NumericsError::XiLogDerivPole(_))));
    }
}

// ---------------------------------------------------------------------------
// precision-doubling invariant across the module
// ---------------------------------------------------------------------------

#[test]
fn precision_doubling_keeps_results_within_bounds() {
    let ctx = ctx128();
    let wp = ctx.working_bits();
    let points = [
        CFloat::with_val(wp, 2.0, 3.0),
        CFloat::with_val(wp, 0.75, 10.0),
        CFloat::with_val(wp, 4.0, 0.0),
    ];
    for s in &points {
        let z = zeta_em(s, &ctx).unwrap();
        let z2 = zeta_em(s, &ctx.doubled()).unwrap();
        assert!(z.value.sub(&z2.value).abs() <= z.abs_error);

        let g = log_gamma(s, &ctx).unwrap();
        let g2 = log_gamma(s, &ctx.doubled()).unwrap();
        assert!(g.value.sub(&g2.value).abs() <= g.abs_error);

        let d = digamma(s, &ctx).unwrap();
        let d2 = digamma(s, &ctx.doubled()).unwrap();
        assert!(d.value.sub(&d2.value).abs() <= d.abs_error);
    }
}
