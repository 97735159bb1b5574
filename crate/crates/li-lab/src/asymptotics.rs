//! Asymptotic predictors for the two regimes of the Li sequence, plus
//! saddle-point diagnostics of the underlying contour integral.
//!
//! With every zero on the critical axis the sequence follows
//! `n (A log n + B)` with constants fixed by the polar data of the
//! secondary zeta function; a single off-axis pair instead injects an
//! exponentially growing oscillation whose rate and onset scale are exact
//! functions of the offending ordinate.

use crate::numerics::{euler_gamma, ln_two_pi, CFloat, PrecisionContext};
use crate::secondary_zeta::{z_eval, PolarData, SecondaryZetaError, TailModel};
use crate::zeros::ZeroTable;
use rug::ops::CompleteRound;
use rug::Float;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error("off-axis predictor requires Im(tau) > 0, got {0}")]
    NotOffAxis(String),
    #[error("saddle location is undefined for tau = 0")]
    ZeroOrdinate,
    #[error("no interior minimum in ({lo}, {hi}); the modulus profile is monotone here")]
    NoInteriorMinimum { lo: f64, hi: f64 },
    #[error(transparent)]
    SecondaryZeta(#[from] SecondaryZetaError),
}

/// Which asymptotic model a run compares against.
#[derive(Debug, Clone)]
pub enum Predictor {
    /// `2 pi n (2 R_-2 log n - 2 R_-2 (1 - gamma) + R_-1)` for general
    /// polar data.
    RhTrueGeneral { polar: PolarData, include_delta: bool },
    /// The Riemann specialization `n/2 (log n - log 2pi - 1 + gamma)`.
    RhTrueRiemann { include_delta: bool },
    /// Exponential oscillation from explicit off-axis ordinates.
    RhFalse { off_axis: Vec<CFloat> },
}

impl Predictor {
    pub fn evaluate(&self, n: u32, ctx: &PrecisionContext) -> Result<Float, AsymptoticsError> {
        match self {
            Predictor::RhTrueGeneral {
                polar,
                include_delta,
            } => Ok(predict_rh_true_general(n, polar, *include_delta, ctx)),
            Predictor::RhTrueRiemann { include_delta } => {
                Ok(predict_riemann(n, *include_delta, ctx))
            }
            Predictor::RhFalse { off_axis } => {
                Ok(predict_rh_false(n, off_axis, ctx)?.value)
            }
        }
    }
}

/// The `+7/4` correction contributed by the continuation value `2 Z(0)`;
/// exposed as a flag because it is not asymptotically meaningful, only a
/// mean improvement.
fn delta_term(ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.working_bits(), 7u32) / 4u32
}

/// General on-axis predictor from polar data:
/// `2 pi n [2 R_-2 log n - 2 R_-2 (1 - gamma) + R_-1]`.
pub fn predict_rh_true_general(
    n: u32,
    polar: &PolarData,
    include_delta: bool,
    ctx: &PrecisionContext,
) -> Float {
    let wp = ctx.working_bits();
    let ln_n = Float::with_val(wp, n).ln();
    let gamma = euler_gamma(ctx);
    let one_minus_gamma = Float::with_val(wp, 1u32) - gamma;
    let mut bracket = (2u32 * &polar.r_minus2).complete(wp) * ln_n;
    bracket -= (2u32 * &polar.r_minus2).complete(wp) * one_minus_gamma;
    bracket += &polar.r_minus1;
    let two_pi_n = Float::with_val(wp, rug::float::Constant::Pi) * 2u32 * n;
    let mut value = two_pi_n * bracket;
    if include_delta {
        value += delta_term(ctx);
    }
    value
}

/// Riemann-case predictor `n/2 (log n - log 2pi - 1 + gamma)`.
pub fn predict_riemann(n: u32, include_delta: bool, ctx: &PrecisionContext) -> Float {
    let wp = ctx.working_bits();
    let mut bracket = Float::with_val(wp, n).ln();
    bracket -= ln_two_pi(ctx);
    bracket -= 1u32;
    bracket += euler_gamma(ctx);
    let mut value = bracket * n / 2u32;
    if include_delta {
        value += delta_term(ctx);
    }
    value
}

/// Per-ordinate diagnostics of the off-axis predictor.
#[derive(Debug, Clone)]
pub struct OffAxisTerm {
    pub tau: CFloat,
    /// `log |(tau + i/2)/(tau - i/2)|`: the per-index growth rate of the
    /// injected oscillation.
    pub growth_rate: Float,
    /// `1 / |Im (1/tau)|`: the index scale where the oscillation becomes
    /// appreciable.
    pub n_onset: Float,
}

#[derive(Debug, Clone)]
pub struct RhFalsePrediction {
    /// `sum_k w_k^n + conjugate`, returned through its real value.
    pub value: Float,
    pub terms: Vec<OffAxisTerm>,
}

/// Off-axis predictor: `sum over {arg tau > 0} of w^n` plus its complex
/// conjugate, `w = (tau + i/2)/(tau - i/2)`, with per-term growth rates and
/// onset scales.
pub fn predict_rh_false(
    n: u32,
    off_axis: &[CFloat],
    ctx: &PrecisionContext,
) -> Result<RhFalsePrediction, AsymptoticsError> {
    let wp = ctx.working_bits();
    let half = Float::with_val(wp, 0.5f32);
    let mut value = Float::new(wp);
    let mut terms = Vec::with_capacity(off_axis.len());
    for tau in off_axis {
        if !(tau.im.is_sign_positive() && !tau.im.is_zero()) {
            return Err(AsymptoticsError::NotOffAxis(tau.to_string()));
        }
        let tau = CFloat::new(Float::with_val(wp, &tau.re), Float::with_val(wp, &tau.im));
        let w = tau
            .add(&CFloat::new(Float::new(wp), half.clone()))
            .div(&tau.sub(&CFloat::new(Float::new(wp), half.clone())));
        let w_n = w.pow_u(n as u64);
        value += (2u32 * &w_n.re).complete(wp);
        let growth_rate = w.abs().ln();
        let inv_tau = tau.recip();
        let n_onset = inv_tau.im.clone().abs().recip();
        terms.push(OffAxisTerm {
            tau,
            growth_rate,
            n_onset,
        });
    }
    Ok(RhFalsePrediction { value, terms })
}

/// Real saddle diagnostics: the location of the interior minimum of the
/// modulus profile along `(1/2, 1)` and its deviation scale.
#[derive(Debug, Clone)]
pub struct RealSaddle {
    pub sigma: Float,
    /// `(sigma - 1/2) log n`, which the saddle analysis predicts to be O(1).
    pub deviation_scale: Float,
}

/// Minimize `pi n^(2 sigma - 1) Z(sigma) / (sin(pi sigma) Gamma(2 sigma + 1))`
/// over `sigma` in `(1/2 + delta, 1 - delta)` by golden-section search on
/// its logarithm. Flat plateaus resolve to the lower end.
pub fn saddle_real(
    n: u32,
    table: &ZeroTable,
    tail: &TailModel,
    ctx: &PrecisionContext,
    tolerance: f64,
) -> Result<RealSaddle, AsymptoticsError> {
    let wp = ctx.working_bits();
    let delta = 1e-3f64;
    let ln_n_f = (n as f64).ln();

    let objective = |sigma_f: f64| -> Result<f64, AsymptoticsError> {
        let sigma = Float::with_val(wp, sigma_f);
        let z = z_eval(&CFloat::from_real(sigma.clone()), table, tail, ctx)?;
        let pi = Float::with_val(wp, rug::float::Constant::Pi);
        let sin_term = Float::with_val(wp, &pi * &sigma).sin().ln();
        let gamma_term = (Float::with_val(wp, 2.0 * sigma_f) + 1u32).ln_gamma();
        let mut h = z.value.abs().ln();
        h += (2.0 * sigma_f - 1.0) * ln_n_f;
        h -= sin_term;
        h -= gamma_term;
        h += pi.ln();
        Ok(h.to_f64())
    };

    // golden-section, tie-breaking toward the lower end
    let inv_phi = 0.618_033_988_749_894_9f64;
    let mut lo = 0.5 + delta;
    let mut hi = 1.0 - delta;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = objective(c)?;
    let mut fd = objective(d)?;
    while hi - lo > tolerance {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(d)?;
        }
    }
    let sigma_f = lo;
    // reject boundary minima: the profile must rise on both sides
    if sigma_f - (0.5 + delta) < 2.0 * tolerance || (1.0 - delta) - sigma_f < 2.0 * tolerance {
        return Err(AsymptoticsError::NoInteriorMinimum {
            lo: 0.5 + delta,
            hi: 1.0 - delta,
        });
    }
    let sigma = Float::with_val(wp, sigma_f);
    let deviation_scale = (sigma.clone() - 0.5f64) * Float::with_val(wp, n).ln();
    Ok(RealSaddle {
        sigma,
        deviation_scale,
    })
}

/// Complex saddle diagnostics for one ordinate.
#[derive(Debug, Clone)]
pub struct ComplexSaddle {
    /// `n i / (2 tau)`.
    pub sigma: CFloat,
    /// `n |Im(1/tau)| > 1`: whether the saddle has entered the relevant
    /// regime.
    pub eligible: bool,
    /// Whether `Re sigma > 1/2`, i.e. the saddle sits inside the
    /// convergence half-plane of the zero sum.
    pub inside_convergence: bool,
}

/// The formal complex saddle `sigma_c(n) = n i / (2 tau)` with its
/// eligibility flags. Real ordinates give purely imaginary locations,
/// never eligible.
pub fn saddle_complex(
    n: u32,
    tau: &CFloat,
    ctx: &PrecisionContext,
) -> Result<ComplexSaddle, AsymptoticsError> {
    if tau.is_zero() {
        return Err(AsymptoticsError::ZeroOrdinate);
    }
    let wp = ctx.working_bits();
    let tau = CFloat::new(Float::with_val(wp, &tau.re), Float::with_val(wp, &tau.im));
    let i_over_2tau = CFloat::i(wp).div(&tau.mul_real(&Float::with_val(wp, 2u32)));
    let sigma = i_over_2tau.mul_real(&Float::with_val(wp, n));
    let im_inv_tau = tau.recip().im.clone().abs();
    let eligible = (&im_inv_tau * &Float::with_val(wp, n)).complete(wp) > 1u32;
    let inside_convergence = sigma.re > 0.5f32;
    Ok(ComplexSaddle {
        sigma,
        eligible,
        inside_convergence,
    })
}

#[cfg(test)]
mod tests;
