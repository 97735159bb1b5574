//! Complex log-gamma and digamma by upward recurrence into the region where
//! the Stirling series converges to target precision.

use super::bernoulli::bernoulli;
use super::complex::CFloat;
use super::context::PrecisionContext;
use super::value::{CValue, ErrorKind};
use super::NumericsError;
use rug::ops::Pow;
use rug::Float;

/// True when `s` sits exactly on a gamma pole (0, -1, -2, ...).
fn is_nonpositive_integer(s: &CFloat) -> bool {
    s.im.is_zero() && s.re.is_integer() && s.re <= 0u32
}

/// How far right the argument must sit before the Stirling series reaches
/// `wp` bits, with margin for the argument-angle penalty.
fn stirling_threshold(wp: u32) -> f64 {
    0.125 * wp as f64 + 16.0
}

struct StirlingPlan {
    shift: u32,
    wp: u32,
}

fn plan(s: &CFloat, ctx: &PrecisionContext) -> StirlingPlan {
    let wp = ctx.working_bits() + 48;
    let re = s.re.to_f64();
    let im = s.im.to_f64().abs();
    let needed = stirling_threshold(wp).max(im);
    let shift = if re >= needed {
        0
    } else {
        (needed - re).ceil() as u32 + 1
    };
    StirlingPlan { shift, wp }
}

/// Principal branch of `log Gamma(s)`.
///
/// Computed as `log Gamma(s + m) - sum_k log(s + k)` with the Stirling
/// series at the shifted argument; the relative error bound is of order
/// `2^-(bits + guard)`.
pub fn log_gamma(s: &CFloat, ctx: &PrecisionContext) -> Result<CValue, NumericsError> {
    if is_nonpositive_integer(s) {
        return Err(NumericsError::PoleOfGamma(s.to_string()));
    }
    if s.im.is_sign_negative() && !s.im.is_zero() {
        let v = log_gamma(&s.conj(), ctx)?;
        return Ok(CValue::new(v.value.conj(), v.abs_error, v.kind));
    }
    let StirlingPlan { shift, wp } = plan(s, ctx);
    let s = CFloat::new(
        Float::with_val(wp, &s.re),
        Float::with_val(wp, &s.im),
    );

    // log of the rising product, term by term to keep the branch unwrapped
    let mut log_shift = CFloat::zero(wp);
    let mut mag = Float::with_val(wp, 1u32);
    for k in 0..shift {
        let term = s.add_real(&Float::with_val(wp, k)).ln();
        mag += term.abs();
        log_shift = log_shift.add(&term);
    }

    let z = s.add_real(&Float::with_val(wp, shift));
    let ln_z = z.ln();
    let half = Float::with_val(wp, 0.5f32);
    // (z - 1/2) ln z - z + (1/2) log(2 pi)
    let mut result = z.add_real(&Float::with_val(wp, -0.5f32)).mul(&ln_z);
    result = result.sub(&z);
    let ln_2pi = (Float::with_val(wp, rug::float::Constant::Pi) * 2u32).ln();
    result = result.add_real(&(ln_2pi * half));
    mag += result.abs();

    let w = z.recip();
    let w2 = w.mul(&w);
    let mut pow = w.clone();
    let target = {
        let mut t = result.abs();
        t >>= wp - 8;
        t
    };
    let mut q = 1usize;
    let mut last_mag;
    loop {
        let coeff = Float::with_val(
            wp,
            bernoulli(q) / rug::Integer::from((2 * q) * (2 * q - 1)),
        );
        let term = pow.mul_real(&coeff);
        last_mag = term.abs();
        result = result.add(&term);
        if last_mag < target || q > (wp as usize) / 2 + 64 {
            break;
        }
        pow = pow.mul(&w2);
        q += 1;
    }

    // remainder: next-term magnitude inflated by the sec(arg/2) penalty
    let arg_half = z.arg() / 2u32;
    let sec = arg_half.cos().recip();
    let penalty = sec.pow((2 * q + 3) as u32);
    let mut rem = last_mag * penalty;
    rem *= 4u32;

    let total = result.sub(&log_shift);
    let mut rounding = mag;
    rounding >>= wp - 6;
    let err = Float::with_val(ctx.working_bits(), rem + rounding);
    Ok(CValue::new(total, err, ErrorKind::Rigorous))
}

/// Digamma `psi(s)`, by the same shift-plus-asymptotic-series scheme.
pub fn digamma(s: &CFloat, ctx: &PrecisionContext) -> Result<CValue, NumericsError> {
    if is_nonpositive_integer(s) {
        return Err(NumericsError::PoleOfGamma(s.to_string()));
    }
    if s.im.is_sign_negative() && !s.im.is_zero() {
        let v = digamma(&s.conj(), ctx)?;
        return Ok(CValue::new(v.value.conj(), v.abs_error, v.kind));
    }
    let StirlingPlan { shift, wp } = plan(s, ctx);
    let s = CFloat::new(
        Float::with_val(wp, &s.re),
        Float::with_val(wp, &s.im),
    );

    let mut recip_sum = CFloat::zero(wp);
    let mut mag = Float::with_val(wp, 1u32);
    for k in 0..shift {
        let term = s.add_real(&Float::with_val(wp, k)).recip();
        mag += term.abs();
        recip_sum = recip_sum.add(&term);
    }

    let z = s.add_real(&Float::with_val(wp, shift));
    // psi(z) ~ ln z - 1/(2z) - sum B_2q / (2q z^2q)
    let mut result = z.ln();
    let w = z.recip();
    result = result.sub(&w.mul_real(&Float::with_val(wp, 0.5f32)));
    mag += result.abs();

    let w2 = w.mul(&w);
    let mut pow = w2.clone();
    let target = {
        let mut t = result.abs();
        t >>= wp - 8;
        t
    };
    let mut q = 1usize;
    let mut last_mag;
    loop {
        let coeff = Float::with_val(wp, bernoulli(q) / rug::Integer::from(2 * q));
        let term = pow.mul_real(&coeff);
        last_mag = term.abs();
        result = result.sub(&term);
        if last_mag < target || q > (wp as usize) / 2 + 64 {
            break;
        }
        pow = pow.mul(&w2);
        q += 1;
    }

    let arg_half = z.arg() / 2u32;
    let sec = arg_half.cos().recip();
    let penalty = sec.pow((2 * q + 3) as u32);
    let mut rem = last_mag * penalty;
    rem *= 4u32;

    let total = result.sub(&recip_sum);
    let mut rounding = mag;
    rounding >>= wp - 6;
    let err = Float::with_val(ctx.working_bits(), rem + rounding);
    Ok(CValue::new(total, err, ErrorKind::Rigorous))
}
