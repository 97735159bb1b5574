//! Arbitrary-precision scalars, error tracking, and special functions.
//!
//! Everything here is built on MPFR floats (via `rug`). The submodules
//! provide the complex arithmetic layer, exact Bernoulli numbers and
//! binomial coefficients, the log-gamma/digamma pair, and the
//! Euler–Maclaurin zeta evaluator with its term-wise derivative.

mod bernoulli;
mod complex;
mod context;
mod gamma;
pub mod quad;
mod value;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_over_factorial};
pub use complex::CFloat;
pub use context::{PrecisionContext, ReductionOrder};
pub use gamma::{digamma, log_gamma};
pub use value::{CValue, ErrorKind, ValueWithError};
pub use zeta::{xi_log_deriv, zeta_em, zeta_em_with_deriv, zeta_log_deriv};

use rug::{Integer, Rational};
use thiserror::Error;

pub type Real = rug::Float;
/// Exact rational scalar; always stored reduced with positive denominator.
pub type BigRational = Rational;

/// Errors surfaced by the scalar and special-function layer.
#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("gamma pole at non-positive integer s = {0}")]
    PoleOfGamma(String),
    #[error("zeta pole at s = 1")]
    PoleOfZeta,
    #[error("|zeta(s)| = {zeta_mag} does not exceed its own error bound {error} at s = {s}")]
    NearZeroOfZeta {
        s: String,
        zeta_mag: String,
        error: String,
    },
    #[error("log-derivative of Xi undefined at s = {0}")]
    XiLogDerivPole(String),
    #[error("evaluation would need {needed} summation terms, above the ceiling {ceiling}")]
    PrecisionInfeasible { needed: usize, ceiling: usize },
}

/// Binomial coefficient `C(a, b)` as an exact integer; zero when `b > a`.
pub fn binomial(a: u32, b: u32) -> Integer {
    if b > a {
        return Integer::ZERO.clone();
    }
    Integer::from(a).binomial(b)
}

/// Euler's constant at the context's working precision.
pub fn euler_gamma(ctx: &PrecisionContext) -> Real {
    Real::with_val(ctx.working_bits(), rug::float::Constant::Euler)
}

/// pi at the context's working precision.
pub fn pi(ctx: &PrecisionContext) -> Real {
    Real::with_val(ctx.working_bits(), rug::float::Constant::Pi)
}

/// log(2 pi) at the context's working precision.
pub fn ln_two_pi(ctx: &PrecisionContext) -> Real {
    let two_pi = pi(ctx) * 2u32;
    two_pi.ln()
}

#[cfg(test)]
mod tests;
