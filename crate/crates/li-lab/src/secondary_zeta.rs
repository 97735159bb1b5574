//! The secondary zeta function `Z(sigma) = sum_k x_k^(-sigma)` over the zero
//! pairs `x_k = 1/4 + tau_k^2`, convergent for `Re sigma > 1/2`.
//!
//! A table only reaches height `T`, so the missing mass is completed by the
//! smooth-density tail `int_T^inf (1/4 + t^2)^(-sigma) N'(t) dt`, expanded
//! binomially in `1/(4t^2)`: each term `t^(-2sigma-2m) (alpha ln t + beta)`
//! has a closed-form antiderivative, which is also what continues `Z` to the
//! strip around zero and exposes the double pole at `sigma = 1/2` (the poles
//! of the expansion sit at `sigma = 1/2 - m`, matching the function's actual
//! pole set). The counting fluctuation around the smooth density cannot be
//! bounded rigorously here, so every tail-completed value carries a
//! heuristic error tag.

use crate::numerics::{CFloat, CValue, ErrorKind, PrecisionContext, ValueWithError};
use crate::reduce::map_reduce;
use crate::zeros::{SmoothCounting, TableKind, ZeroTable};
use rug::ops::{CompleteRound, Pow};
use rug::Float;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SecondaryZetaError {
    #[error("Z has a double pole at sigma = 1/2")]
    PoleAtHalf,
    #[error("Re(sigma) = {0} is not inside the convergence half-plane Re > 1/2")]
    OutsideConvergence(String),
    #[error("sigma = {0} is outside the implemented continuation strip (-1/4, 1/2)")]
    OutOfStrip(String),
    #[error("tail cutoff {cutoff} exceeds the validated table height {height}")]
    CutoffAboveTable { cutoff: String, height: String },
    #[error("operation requires a tabulated table, got a synthetic one without height")]
    NeedsTabulated,
    #[error("integer sample requires j >= 1, got {0}")]
    NonPositiveInteger(i64),
    #[error("expansion order must be at least 1")]
    ZeroExpansionOrder,
}

/// Coefficients of the double pole of `Z` at `sigma = 1/2`:
/// `Z(1/2 + eps) = R_m2/eps^2 + R_m1/eps + O(1)`.
#[derive(Debug, Clone)]
pub struct PolarData {
    pub r_minus2: Float,
    pub r_minus1: Float,
}

impl PolarData {
    /// Polar data of the Riemann zero counting density:
    /// `R_-2 = 1/(8 pi)`, `R_-1 = -log(2 pi)/(4 pi)`.
    pub fn riemann(ctx: &PrecisionContext) -> Self {
        let (alpha, beta) = SmoothCounting::density_coeffs(ctx);
        Self {
            r_minus2: alpha / 4u32,
            r_minus1: beta / 2u32,
        }
    }

    /// User-supplied polar data for a generalized zero set.
    ///
    /// # Panics
    /// Panics if `r_minus2 <= 0`; the leading polar coefficient of a
    /// counting density is always positive.
    pub fn new(r_minus2: Float, r_minus1: Float) -> Self {
        assert!(
            r_minus2.is_sign_positive() && !r_minus2.is_zero(),
            "R_-2 must be positive"
        );
        Self { r_minus2, r_minus1 }
    }
}

/// Truncation-completion model: cutoff height, expansion order, and the
/// window used to average away the counting oscillation when continuing
/// below the convergence abscissa.
#[derive(Debug, Clone)]
pub struct TailModel {
    cutoff: Float,
    expansion_order: usize,
    averaging_window: (Float, Float),
    averaging_cutoffs: usize,
}

impl TailModel {
    pub const DEFAULT_EXPANSION_ORDER: usize = 8;
    pub const DEFAULT_AVERAGING_CUTOFFS: usize = 32;

    /// Default model for a tabulated table: cutoff at the table height,
    /// expansion order 8, averaging window `[0.6 T, T]` with 32 cutoffs.
    pub fn for_table(table: &ZeroTable, ctx: &PrecisionContext) -> Result<Self, SecondaryZetaError> {
        let height = table
            .height_cutoff()
            .ok_or(SecondaryZetaError::NeedsTabulated)?;
        let cutoff = ctx.real(height);
        let low = (&cutoff * 0.6f64).complete(cutoff.prec());
        Ok(Self {
            averaging_window: (low, cutoff.clone()),
            cutoff,
            expansion_order: Self::DEFAULT_EXPANSION_ORDER,
            averaging_cutoffs: Self::DEFAULT_AVERAGING_CUTOFFS,
        })
    }

    /// Lower the cutoff (moving more mass into the smooth tail). The cutoff
    /// may not exceed the validated table height.
    pub fn with_cutoff(mut self, cutoff: Float, table: &ZeroTable) -> Result<Self, SecondaryZetaError> {
        let height = table
            .height_cutoff()
            .ok_or(SecondaryZetaError::NeedsTabulated)?;
        if cutoff > *height {
            return Err(SecondaryZetaError::CutoffAboveTable {
                cutoff: cutoff.to_string(),
                height: height.to_string(),
            });
        }
        let low = (&cutoff * 0.6f64).complete(cutoff.prec());
        self.averaging_window = (low, cutoff.clone());
        self.cutoff = cutoff;
        Ok(self)
    }

    pub fn with_expansion_order(mut self, k: usize) -> Result<Self, SecondaryZetaError> {
        if k == 0 {
            return Err(SecondaryZetaError::ZeroExpansionOrder);
        }
        self.expansion_order = k;
        Ok(self)
    }

    pub fn with_averaging_cutoffs(mut self, n: usize) -> Self {
        self.averaging_cutoffs = n.max(2);
        self
    }

    pub fn cutoff(&self) -> &Float {
        &self.cutoff
    }

    pub fn expansion_order(&self) -> usize {
        self.expansion_order
    }

    pub fn averaging_window(&self) -> (&Float, &Float) {
        (&self.averaging_window.0, &self.averaging_window.1)
    }
}

/// Closed form of `int_T^inf t^(-p) (alpha ln t + beta) dt` for `Re p > 1`,
/// which is also its analytic continuation in `p` away from `p = 1`.
fn tail_integral_term(p: &CFloat, t: &Float, alpha: &Float, beta: &Float, wp: u32) -> CFloat {
    let ln_t = Float::with_val(wp, t).ln();
    let one = Float::with_val(wp, 1u32);
    let pm1 = p.add_real(&-one);
    let inv = pm1.recip();
    // T^(1-p) [ (alpha ln T + beta)/(p-1) + alpha/(p-1)^2 ]
    let density = (alpha * &ln_t).complete(wp) + beta;
    let mut bracket = inv.mul_real(&density);
    bracket = bracket.add(&inv.mul(&inv).mul_real(alpha));
    let t_pow = pm1.neg().mul_real(&ln_t).exp(); // e^{(1-p) ln T}
    t_pow.mul(&bracket)
}

/// The smooth tail `int_T^inf (1/4+t^2)^(-sigma) N'(t) dt` expanded to
/// `K` terms, together with the magnitude of the first omitted term.
fn smooth_tail(sigma: &CFloat, tail: &TailModel, ctx: &PrecisionContext) -> (CFloat, Float) {
    let wp = ctx.working_bits() + 16;
    let (alpha, beta) = SmoothCounting::density_coeffs(ctx);
    let t = Float::with_val(wp, tail.cutoff());
    let k = tail.expansion_order();
    let mut coeff = CFloat::new(Float::with_val(wp, 1u32), Float::new(wp));
    let quarter = Float::with_val(wp, 0.25f32);
    let mut total = CFloat::zero(wp);
    let two = Float::with_val(wp, 2u32);
    for m in 0..k {
        let p = sigma
            .mul_real(&two)
            .add_real(&Float::with_val(wp, 2 * m as u32));
        let term = coeff.mul(&tail_integral_term(&p, &t, &alpha, &beta, wp));
        total = total.add(&term);
        // c_{m+1} = -c_m (sigma + m) / (4 (m+1))
        let factor = sigma
            .add_real(&Float::with_val(wp, m as u32))
            .mul_real(&(quarter.clone() / Float::with_val(wp, (m + 1) as u32)));
        coeff = coeff.mul(&factor).neg();
    }
    let p_k = sigma
        .mul_real(&two)
        .add_real(&Float::with_val(wp, 2 * k as u32));
    let omitted = coeff
        .mul(&tail_integral_term(&p_k, &t, &alpha, &beta, wp))
        .abs();
    (total, omitted)
}

/// Direct pair sum for synthetic tables: real pairs contribute
/// `x^(-sigma)`, injected pairs `x^(-sigma) + conj(x)^(-sigma)`.
fn direct_sum(sigma: &CFloat, table: &ZeroTable, wp: u32) -> CFloat {
    let mut total = CFloat::zero(wp);
    for tau in table.ordinates() {
        let x = crate::zeros::x_of_real(&Float::with_val(wp, tau));
        let term = sigma.neg().mul_real(&x.ln()).exp();
        total = total.add(&term);
    }
    for tau in table.injected() {
        let tau = CFloat::new(Float::with_val(wp, &tau.re), Float::with_val(wp, &tau.im));
        let x = crate::zeros::x_of(&tau);
        let term = x.ln().mul(sigma).neg().exp();
        total = total.add(&term).add(&term.conj());
    }
    total
}

/// Finite sum over tabulated ordinates up to `cutoff`, its magnitude, and
/// the ordinate-sensitivity accumulator `sum 2 tau x^(-Re sigma - 1)`.
fn finite_sum(
    sigma: &CFloat,
    table: &ZeroTable,
    cutoff: &Float,
    ctx: &PrecisionContext,
) -> (CFloat, Float, Float) {
    let wp = ctx.working_bits() + 16;
    let ordinates = table.ordinates();
    let upper = ordinates.partition_point(|t| t <= cutoff);
    // drop terms below resolution: (x_k/x_1)^Re(sigma) > 2^(wp+4)
    let sigma_re = sigma.re.to_f64();
    let x1 = 0.25 + ordinates.first().map(|t| t.to_f64() * t.to_f64()).unwrap_or(0.0);
    let upper = if sigma_re > 1.0 {
        ordinates[..upper].partition_point(|t| {
            let x = 0.25 + t.to_f64() * t.to_f64();
            (x / x1).ln() * sigma_re < (wp as f64 + 4.0) * std::f64::consts::LN_2
        })
    } else {
        upper
    };

    let identity = || (CFloat::zero(wp), Float::new(wp), Float::new(wp));
    let map = |i: usize| {
        let tau = Float::with_val(wp, &ordinates[i]);
        let x = crate::zeros::x_of_real(&tau);
        let ln_x = x.clone().ln();
        let modulus = (-(&sigma.re * &ln_x).complete(wp)).exp();
        let phase = -(&sigma.im * &ln_x).complete(wp);
        let (sin, cos) = phase.sin_cos(Float::new(wp));
        let term = CFloat::new(cos * &modulus, sin * &modulus);
        let sensitivity = (2u32 * &tau).complete(wp) * &modulus / x;
        (term, modulus, sensitivity)
    };
    let combine = |a: (CFloat, Float, Float), b: (CFloat, Float, Float)| {
        (a.0.add(&b.0), a.1 + b.1, a.2 + b.2)
    };
    map_reduce(upper, ctx.reduction(), &identity, &map, &combine)
}

/// `Z(sigma)` for `Re sigma > 1/2` on a tabulated table (finite sum plus
/// smooth tail), or the direct pair sum on a synthetic table.
pub fn z_eval(
    sigma: &CFloat,
    table: &ZeroTable,
    tail: &TailModel,
    ctx: &PrecisionContext,
) -> Result<CValue, SecondaryZetaError> {
    let wp = ctx.working_bits() + 16;
    let sigma = CFloat::new(Float::with_val(wp, &sigma.re), Float::with_val(wp, &sigma.im));
    if table.kind() == TableKind::Synthetic && table.height_cutoff().is_none() {
        let value = direct_sum(&sigma, table, wp);
        let rounding = value.abs() >> (wp - 8);
        return Ok(CValue::new(value, rounding, ErrorKind::Rigorous));
    }
    if sigma.im.is_zero() && sigma.re == 0.5f32 {
        return Err(SecondaryZetaError::PoleAtHalf);
    }
    if sigma.re <= 0.5f32 {
        return Err(SecondaryZetaError::OutsideConvergence(sigma.re.to_string()));
    }

    let (sum, mag, sens) = finite_sum(&sigma, table, tail.cutoff(), ctx);
    let (tail_value, omitted_term) = smooth_tail(&sigma, tail, ctx);
    let mut value = sum.add(&tail_value);
    for tau in table.injected() {
        let tau = CFloat::new(Float::with_val(wp, &tau.re), Float::with_val(wp, &tau.im));
        let term = crate::zeros::x_of(&tau).ln().mul(&sigma).neg().exp();
        value = value.add(&term).add(&term.conj());
    }

    // heuristic: twice the first omitted zero term plus the K-th expansion
    // term, plus ordinate-error propagation and rounding
    let x_t = crate::zeros::x_of_real(&Float::with_val(wp, tail.cutoff()));
    let first_omitted = (-(x_t.ln() * &sigma.re)).exp();
    let mut err = (2u32 * &first_omitted).complete(wp) + omitted_term;
    err += sens * sigma.abs() * table.ordinate_abs_error(ctx);
    err += (mag + tail_value.abs()) >> (wp - 8);
    Ok(CValue::new(
        value,
        Float::with_val(ctx.working_bits(), err),
        ErrorKind::Heuristic,
    ))
}

/// Integer sample `Z(j)`, `j >= 1`, the building block of the binomial
/// route to the Li coefficients. Positive by construction.
pub fn z_integer(
    j: i64,
    table: &ZeroTable,
    tail: &TailModel,
    ctx: &PrecisionContext,
) -> Result<ValueWithError, SecondaryZetaError> {
    if j < 1 {
        return Err(SecondaryZetaError::NonPositiveInteger(j));
    }
    let sigma = CFloat::from_real(ctx.real(j));
    let v = z_eval(&sigma, table, tail, ctx)?;
    let out = v.into_real();
    debug_assert!(out.value.is_sign_positive());
    Ok(out)
}

/// All of `Z(1) ... Z(j_max)` in one sweep over the table.
///
/// Each zero contributes a geometric sequence `x^-1, x^-2, ...`, walked
/// until it falls below resolution relative to the first zero's term, so the
/// cost is dominated by small `j`.
pub fn z_integer_batch(
    j_max: usize,
    table: &ZeroTable,
    tail: &TailModel,
    ctx: &PrecisionContext,
) -> Result<Vec<ValueWithError>, SecondaryZetaError> {
    if j_max == 0 {
        return Err(SecondaryZetaError::NonPositiveInteger(0));
    }
    if table.height_cutoff().is_none() {
        // synthetic: fall back to per-j direct sums
        return (1..=j_max as i64)
            .map(|j| z_integer(j, table, tail, ctx))
            .collect();
    }
    let wp = ctx.working_bits() + 16;
    let ordinates = table.ordinates();
    let upper = ordinates.partition_point(|t| t <= tail.cutoff());
    let x1 = crate::zeros::x_of_real(&Float::with_val(wp, &ordinates[0]));

    let identity = || (vec![Float::new(wp); j_max], Float::new(wp));
    let map = |i: usize| {
        let mut acc = vec![Float::new(wp); j_max];
        let tau = Float::with_val(wp, &ordinates[i]);
        let x = crate::zeros::x_of_real(&tau);
        let y = x.clone().recip();
        let mut y_pow = y.clone();
        let mut rel = (&x1 / &x).complete(wp); // (x1/x)^j tracks the term scale
        let rel_step = rel.clone();
        let mut sens = Float::new(wp);
        for slot in acc.iter_mut() {
            *slot += &y_pow;
            sens += &y_pow;
            if rel < Float::i_exp(1, -((wp + 4) as i32)).complete(wp) {
                break;
            }
            y_pow *= &y;
            rel *= &rel_step;
        }
        sens *= (2u32 * &tau).complete(wp) / &x;
        (acc, sens)
    };
    let combine = |mut a: (Vec<Float>, Float), b: (Vec<Float>, Float)| {
        for (x, y) in a.0.iter_mut().zip(b.0.iter()) {
            *x += y;
        }
        (a.0, a.1 + b.1)
    };
    let (sums, _sens) = map_reduce(upper, ctx.reduction(), &identity, &map, &combine);

    let delta_tau = table.ordinate_abs_error(ctx);
    let mut out = Vec::with_capacity(j_max);
    for (jm1, sum) in sums.into_iter().enumerate() {
        let j = jm1 + 1;
        let sigma = CFloat::from_real(Float::with_val(wp, j as u64));
        let (tail_value, omitted_term) = smooth_tail(&sigma, tail, ctx);
        let mut value = (&sum + &tail_value.re).complete(wp);
        for tau in table.injected() {
            let tau = CFloat::new(Float::with_val(wp, &tau.re), Float::with_val(wp, &tau.im));
            let term = crate::zeros::x_of(&tau).ln().mul(&sigma).neg().exp();
            value += (2u32 * &term.re).complete(wp);
        }
        let x_t = crate::zeros::x_of_real(&Float::with_val(wp, tail.cutoff()));
        let first_omitted = x_t.pow(-(j as i32));
        let mut err = (2u32 * &first_omitted).complete(wp) + omitted_term;
        err += (&delta_tau * 2u32).complete(wp) * (j as u32) * &sum; // crude j|sigma| sensitivity
        err += value.clone().abs() >> (wp - 8);
        out.push(ValueWithError::new(
            value,
            Float::with_val(ctx.working_bits(), err),
            ErrorKind::Heuristic,
        ));
    }
    Ok(out)
}

/// Analytic continuation of `Z` to real `sigma` in `(-1/4, 1/2)`, averaged
/// over cutoffs placed midway between consecutive zeros to damp the
/// counting oscillation. On synthetic tables the finite sum is returned
/// directly (it is entire).
pub fn z_continued(
    sigma: &Float,
    table: &ZeroTable,
    tail: &TailModel,
    ctx: &PrecisionContext,
) -> Result<ValueWithError, SecondaryZetaError> {
    let wp = ctx.working_bits() + 16;
    let sigma_c = CFloat::from_real(Float::with_val(wp, sigma));
    if table.kind() == TableKind::Synthetic && table.height_cutoff().is_none() {
        let value = direct_sum(&sigma_c, table, wp);
        let rounding = value.abs() >> (wp - 8);
        return Ok(CValue::new(value, rounding, ErrorKind::Rigorous).into_real());
    }
    let quarter = 0.25f64;
    let s = sigma.to_f64();
    if !(-quarter..0.5).contains(&s) {
        return Err(SecondaryZetaError::OutOfStrip(sigma.to_string()));
    }

    let ordinates = table.ordinates();
    let (w0, w1) = tail.averaging_window();
    let count = tail.averaging_cutoffs;
    // target heights equally spaced across the window, snapped to midpoints
    // between consecutive ordinates
    let w0f = w0.to_f64();
    let w1f = w1.to_f64();
    let mut cut_indices: Vec<usize> = Vec::with_capacity(count);
    for i in 0..count {
        let target = w0f + (w1f - w0f) * (i as f64) / ((count - 1) as f64);
        let idx = ordinates
            .partition_point(|t| t.to_f64() < target)
            .clamp(1, ordinates.len() - 1);
        cut_indices.push(idx);
    }
    cut_indices.dedup();

    // prefix sums of x^-sigma up to each cutoff midpoint
    let mut evals: Vec<Float> = Vec::with_capacity(cut_indices.len());
    let mut running = Float::new(wp);
    let mut next = 0usize;
    let mut omitted_max = Float::new(wp);
    for (k, tau) in ordinates.iter().enumerate() {
        if next >= cut_indices.len() {
            break;
        }
        if k == cut_indices[next] {
            let mid = (tau + &ordinates[k - 1]).complete(wp) / 2u32;
            let snapped = TailModel {
                cutoff: Float::with_val(wp, &mid),
                expansion_order: tail.expansion_order(),
                averaging_window: (mid.clone(), mid.clone()),
                averaging_cutoffs: 2,
            };
            let (tail_value, omitted) = smooth_tail(&sigma_c, &snapped, ctx);
            if omitted > omitted_max {
                omitted_max = omitted;
            }
            evals.push((&running + &tail_value.re).complete(wp));
            next += 1;
        }
        let x = crate::zeros::x_of_real(&Float::with_val(wp, tau));
        let term = (-(x.ln() * &sigma_c.re)).exp();
        running += term;
    }
    let n_evals = evals.len() as u32;
    let mut mean = Float::new(wp);
    let mut lo = evals[0].clone();
    let mut hi = evals[0].clone();
    for e in &evals {
        mean += e;
        if *e < lo {
            lo = e.clone();
        }
        if *e > hi {
            hi = e.clone();
        }
    }
    mean /= n_evals;
    let spread = (&hi - &lo).complete(wp) / 2u32;

    let mut err = spread + omitted_max;
    err += mean.clone().abs() >> (wp - 8);
    Ok(ValueWithError::new(
        mean,
        Float::with_val(ctx.working_bits(), err),
        ErrorKind::Heuristic,
    ))
}

/// Laurent data of `Z` at `sigma = 1/2`, extracted from the closed-form
/// tail: the finite sum is regular there, the `m = 0` tail term carries the
/// double pole, and the coefficients are independent of the cutoff.
pub fn polar_coefficients(tail: &TailModel, ctx: &PrecisionContext) -> PolarData {
    debug_assert!(tail.expansion_order() >= 1);
    PolarData::riemann(ctx)
}

/// Diagnostic fit of the imaginary-direction decay: the smallest `C` with
/// `|Z(a+bi)| <= C Z(a) b^(-3/2)` over `a` in `{0.75, 1, 2}` and the given
/// heights `b`. The first-zero term alone floors this constant at
/// `x_1^(-a) b^(3/2) / Z(a)`, so large heights force large constants; the
/// value is reported, not asserted, beyond small `b`.
pub fn fitted_decay_constant(
    table: &ZeroTable,
    tail: &TailModel,
    ctx: &PrecisionContext,
    heights: &[f64],
) -> Result<f64, SecondaryZetaError> {
    let wp = ctx.working_bits();
    let mut fitted = 0.0f64;
    for a in [0.75f64, 1.0, 2.0] {
        let on_axis = z_eval(&CFloat::with_val(wp, a, 0.0), table, tail, ctx)?
            .value
            .abs()
            .to_f64();
        for &b in heights {
            let off = z_eval(&CFloat::with_val(wp, a, b), table, tail, ctx)?
                .value
                .abs()
                .to_f64();
            fitted = fitted.max(off * b.powf(1.5) / on_axis);
        }
    }
    Ok(fitted)
}
