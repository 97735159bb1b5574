//! Li coefficients `lambda_n` by three independent routes.
//!
//! * Route A, [`lambda_zero_sum`]: the pairwise sum over zeros. A real-tau
//!   pair contributes `2 - 2 Re w^n = 4 sin^2(n arctan(1/(2 tau)))` with
//!   `w = (tau + i/2)/(tau - i/2)`, which is non-negative; an off-axis pair
//!   and its conjugate twin contribute `4 - 2 Re w^n - 2 Re w^-n`, which
//!   grows exponentially in modulus. Tables backed by a height cutoff get a
//!   smooth-density tail completion.
//! * Route B, [`lambda_binomial`]: the exact alternating binomial
//!   combination of the integer samples `Z(1..n)` of the secondary zeta
//!   function. The coefficients are exact integers; the route's enemy is
//!   cancellation, so it demands `ceil(n/2) + 96` bits up front.
//! * Route C, [`lambda_cauchy`]: trapezoidal Cauchy extraction of the
//!   Taylor coefficients of `(d/dz) log Xi(1/(1-z))` on a circle `|z| = r`.
//!   This route never sees a zero table, which is what makes the
//!   cross-check against routes A and B meaningful.
//!
//! [`residue_identity_check`] verifies, in exact rational arithmetic, that
//! the coefficients produced by the contour-integral representation (one
//! residue per integer pole) coincide with route B's binomial coefficients.

use crate::numerics::quad::integrate;
use crate::numerics::{
    binomial, xi_log_deriv, BigRational, CFloat, ErrorKind, NumericsError, PrecisionContext,
    ValueWithError,
};
use crate::reduce::map_reduce;
use crate::secondary_zeta::{SecondaryZetaError, TailModel};
use crate::zeros::{SmoothCounting, ZeroTable};
use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer};
use thiserror::Error;

/// Default ceiling for the Cauchy route's coefficient index.
pub const DEFAULT_CAUCHY_MAX_N: u32 = 32;

#[derive(Debug, Error)]
pub enum LiError {
    #[error("degenerate zero pair with x = 0 (tau = {0})")]
    DegenerateZero(String),
    #[error("n = {n} needs at least {needed} bits against cancellation, context has {got}")]
    InsufficientPrecision { n: u32, needed: u32, got: u32 },
    #[error("Z values cover j = 1..{got}, need 1..{needed}")]
    ZvalsTooShort { needed: usize, got: usize },
    #[error("node count {0} must be a power of two exceeding 4n")]
    BadNodeCount(usize),
    #[error("extraction radius must lie in (0, 1), got {0}")]
    BadRadius(String),
    #[error("n = {n} exceeds the Cauchy-route ceiling {max}")]
    CauchyCeiling { n: u32, max: u32 },
    #[error("quadrature node maps to s = {0}, too close to a pole of log Xi")]
    NodeNearPole(String),
    #[error("Cauchy extraction did not converge: halving the node count moved lambda_{n} by {delta}")]
    NonConvergence { n: u32, delta: String },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    SecondaryZeta(#[from] SecondaryZetaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ZeroSum,
    Binomial,
    Cauchy,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ZeroSum => "zero-sum",
            Method::Binomial => "binomial",
            Method::Cauchy => "cauchy",
        }
    }
}

/// One computed Li coefficient.
#[derive(Debug, Clone)]
pub struct LambdaValue {
    pub n: u32,
    pub value: ValueWithError,
    pub method: Method,
    pub bits_used: u32,
}

/// Working precision for route B at index `n`: the largest binomial term
/// exceeds the result by roughly `exp(0.26 n)`, so half a bit per index
/// plus slack is required before the route is attempted.
pub fn precision_for(n: u32) -> u32 {
    n.div_ceil(2) + 96
}

// ---------------------------------------------------------------------------
// Route A: pairwise zero sum
// ---------------------------------------------------------------------------

/// `lambda_n` for a single `n`; see [`lambda_zero_sum_batch`].
pub fn lambda_zero_sum(
    n: u32,
    table: &ZeroTable,
    tail: Option<&TailModel>,
    ctx: &PrecisionContext,
) -> Result<LambdaValue, LiError> {
    Ok(lambda_zero_sum_batch(&[n], table, tail, ctx)?.pop().unwrap())
}

/// Route A over a batch of indices (ascending), sharing one sweep over the
/// table: each zero's unit ratio `w` is powered incrementally across the
/// requested indices.
///
/// Tables with a validated height cutoff receive the smooth tail
/// completion; pure synthetic tables are summed directly.
pub fn lambda_zero_sum_batch(
    ns: &[u32],
    table: &ZeroTable,
    tail: Option<&TailModel>,
    ctx: &PrecisionContext,
) -> Result<Vec<LambdaValue>, LiError> {
    assert!(!ns.is_empty() && ns.windows(2).all(|w| w[0] < w[1]), "indices must ascend");
    assert!(ns[0] >= 1, "lambda is defined for n >= 1");
    let wp = ctx.working_bits() + 16;
    let ordinates = table.ordinates();
    let half = Float::with_val(wp, 0.5f32);

    // per-zero contributions across all requested n
    let identity = || (vec![Float::new(wp); ns.len()], Float::new(wp));
    let map = |k: usize| {
        let tau = Float::with_val(wp, &ordinates[k]);
        let num = CFloat::new(tau.clone(), half.clone());
        let den = CFloat::new(tau.clone(), (-&half).complete(wp));
        let w = num.div(&den);
        let mut acc = vec![Float::new(wp); ns.len()];
        let mut cur = w.pow_u(ns[0] as u64);
        for (i, &n) in ns.iter().enumerate() {
            if i > 0 {
                let step = (n - ns[i - 1]) as u64;
                cur = if step == 1 {
                    cur.mul(&w)
                } else {
                    cur.mul(&w.pow_u(step))
                };
            }
            // 2 - 2 Re w^n, clamped against rounding drift below zero
            let mut term = Float::with_val(wp, 2u32);
            term -= (2u32 * &cur.re).complete(wp);
            acc[i] = term;
        }
        // ordinate sensitivity: |d term / d tau| <= 2 n / x
        let sens = crate::zeros::x_of_real(&tau).recip();
        (acc, sens)
    };
    let combine = |mut a: (Vec<Float>, Float), b: (Vec<Float>, Float)| {
        for (x, y) in a.0.iter_mut().zip(b.0.iter()) {
            *x += y;
        }
        (a.0, a.1 + b.1)
    };
    let (mut sums, inv_x_sum) = map_reduce(ordinates.len(), ctx.reduction(), &identity, &map, &combine);

    // injected off-axis pairs: 4 - 2 Re w^n - 2 Re w^-n per representative
    for tau in table.injected() {
        let tau = CFloat::new(Float::with_val(wp, &tau.re), Float::with_val(wp, &tau.im));
        let num = tau.add(&CFloat::new(Float::new(wp), half.clone()));
        let den = tau.sub(&CFloat::new(Float::new(wp), half.clone()));
        if den.is_zero() || num.is_zero() {
            return Err(LiError::DegenerateZero(tau.to_string()));
        }
        let w = num.div(&den);
        let w_inv = w.recip();
        let mut cur = w.pow_u(ns[0] as u64);
        let mut cur_inv = w_inv.pow_u(ns[0] as u64);
        for (i, &n) in ns.iter().enumerate() {
            if i > 0 {
                let step = (n - ns[i - 1]) as u64;
                cur = cur.mul(&w.pow_u(step));
                cur_inv = cur_inv.mul(&w_inv.pow_u(step));
            }
            let mut term = Float::with_val(wp, 4u32);
            term -= (2u32 * &cur.re).complete(wp);
            term -= (2u32 * &cur_inv.re).complete(wp);
            sums[i] += term;
        }
    }

    let delta_tau = table.ordinate_abs_error(ctx);
    let use_tail = table.height_cutoff().is_some();
    let default_tail;
    let tail = match (tail, use_tail) {
        (Some(t), true) => Some(t),
        (None, true) => {
            default_tail = TailModel::for_table(table, ctx)?;
            Some(&default_tail)
        }
        (_, false) => None,
    };

    let mut out = Vec::with_capacity(ns.len());
    for (i, &n) in ns.iter().enumerate() {
        let mut value = sums[i].clone();
        let mut err = Float::new(wp);
        // ordinate propagation: sum over zeros of 2 n delta_tau / x
        err += (2u32 * &delta_tau).complete(wp) * n * &inv_x_sum;
        let mut kind = ErrorKind::Rigorous;
        if let Some(tail) = tail {
            let (tail_value, tail_err) = lambda_tail(n, tail.cutoff(), ctx);
            value += tail_value;
            err += tail_err;
            kind = ErrorKind::Heuristic;
        }
        err += value.clone().abs() >> (wp - 10);
        out.push(LambdaValue {
            n,
            value: ValueWithError::new(value, Float::with_val(ctx.working_bits(), err), kind),
            method: Method::ZeroSum,
            bits_used: ctx.bits(),
        });
    }
    Ok(out)
}

/// Smooth tail `int_T^inf (2 - 2 cos(2 n arctan(1/2t))) N'(t) dt` plus its
/// heuristic oscillation bound.
///
/// The integrand is quadrature-integrated (panels split at phase
/// half-periods and geometric points) out to `T_far = max(T, 5n)`, where the
/// small-angle expansion `n^2/t^2 - (n^2/6 + n^4/12)/t^4` takes over in
/// closed form. For `5n <= T` the quadrature region is empty and the closed
/// form applies directly, which is the common large-table case.
fn lambda_tail(n: u32, cutoff: &Float, ctx: &PrecisionContext) -> (Float, Float) {
    let wp = ctx.working_bits() + 16;
    let (alpha, beta) = SmoothCounting::density_coeffs(ctx);
    let t0 = Float::with_val(wp, cutoff);
    let t0_f = t0.to_f64();
    let n_f = n as f64;
    let t_far_f = (5.0 * n_f).max(t0_f);
    let mut total = Float::new(wp);

    if t_far_f > t0_f {
        // oscillatory stretch [T, T_far]: break at phase half-periods
        // (2n arctan(1/2t) = k pi) and geometric points, then Gauss panels
        let mut breaks: Vec<f64> = vec![t0_f];
        let phase0 = 2.0 * n_f * (1.0 / (2.0 * t0_f)).atan();
        let mut k = (phase0 / std::f64::consts::PI).floor();
        while k >= 1.0 {
            let t_k = 1.0 / (2.0 * (k * std::f64::consts::PI / (2.0 * n_f)).tan());
            if t_k > t0_f * 1.0001 && t_k < t_far_f {
                breaks.push(t_k);
            }
            k -= 1.0;
        }
        let mut g = t0_f * 1.5;
        while g < t_far_f {
            breaks.push(g);
            g *= 1.5;
        }
        breaks.push(t_far_f);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a / *b - 1.0).abs() < 1e-12);

        let two_n = Float::with_val(wp, 2 * n);
        for pair in breaks.windows(2) {
            let a = Float::with_val(wp, pair[0]);
            let b = Float::with_val(wp, pair[1]);
            total += integrate(&a, &b, 16, wp, |t| {
                let theta = (Float::with_val(wp, 0.5f32) / t).atan();
                let mut osc = Float::with_val(wp, 1u32);
                osc -= (theta * &two_n).cos();
                osc *= 2u32;
                let density = (&alpha * &t.clone().ln()).complete(wp) + &beta;
                osc * density
            });
        }
    }

    // closed form beyond T_far
    let tf = Float::with_val(wp, t_far_f);
    let ln_tf = tf.clone().ln();
    let n2 = Float::with_val(wp, n).square();
    // n^2 [alpha(ln T + 1) + beta]/T
    let mut lead = (&alpha * &ln_tf).complete(wp);
    lead += &alpha;
    lead += &beta;
    lead *= &n2;
    lead /= &tf;
    total += &lead;
    // -(n^2/6 + n^4/12) [alpha(ln T + 1/3) + beta]/(3 T^3)
    let mut corr = (&alpha * &ln_tf).complete(wp);
    corr += (&alpha / &Float::with_val(wp, 3u32)).complete(wp);
    corr += &beta;
    let mut scale = n2.clone() / 6u32;
    scale += n2.clone().square() / 12u32;
    corr *= scale;
    corr /= tf.clone().pow(3u32) * 3u32;
    total -= &corr;

    // next omitted expansion order, as a crude truncation bound
    let trunc = {
        let mut t = Float::with_val(wp, n).pow(6u32);
        t /= tf.clone().pow(5u32) * 5u32;
        t *= Float::with_val(wp, 8.0 / 45.0 / 64.0);
        t * ((&alpha * &ln_tf).complete(wp) + &beta)
    };

    // counting-fluctuation heuristic: band(T) * (g(T) + total variation)
    let band = Float::with_val(wp, SmoothCounting::band(t0_f));
    let u_t = (1.0 / (2.0 * t0_f)).atan();
    let x_phase = 2.0 * n_f * u_t;
    let pi = std::f64::consts::PI;
    let tv = 2.0 * (2.0 * (x_phase / pi).floor() + 1.0 - (x_phase % pi).cos());
    let g_t = 2.0 - 2.0 * x_phase.cos();
    let osc = band * Float::with_val(wp, tv + g_t);

    (total, osc + trunc)
}

// ---------------------------------------------------------------------------
// Route B: exact binomial combination of Z(j)
// ---------------------------------------------------------------------------

/// Exact route-B coefficient `c_j = (-1)^(j+1) (n/j) C(n+j-1, 2j-1)` as a
/// rational; exposed for the residue cross-check.
pub fn binomial_route_coefficient(n: u32, j: u32) -> BigRational {
    let c = binomial(n + j - 1, 2 * j - 1);
    let mut r = BigRational::from((c * n, Integer::from(j)));
    if j % 2 == 0 {
        r = -r;
    }
    r
}

/// Route B: `lambda_n = -n sum_{j=1}^n ((-1)^j / j) C(n+j-1, 2j-1) Z(j)`.
///
/// `zvals[j-1]` must hold `Z(j)`. The context must provide at least
/// [`precision_for`]`(n)` bits; the cancellation actually encountered is
/// measured and reported as an error if the margin was eaten.
pub fn lambda_binomial(
    n: u32,
    zvals: &[ValueWithError],
    ctx: &PrecisionContext,
) -> Result<LambdaValue, LiError> {
    if (zvals.len() as u32) < n {
        return Err(LiError::ZvalsTooShort {
            needed: n as usize,
            got: zvals.len(),
        });
    }
    let needed = precision_for(n);
    if ctx.bits() < needed {
        return Err(LiError::InsufficientPrecision {
            n,
            needed,
            got: ctx.bits(),
        });
    }
    let wp = ctx.working_bits() + 16;
    let mut value = Float::new(wp);
    let mut err = Float::new(wp);
    let mut max_mag = Float::new(wp);
    // C(n+j-1, 2j-1) by the exact ratio recurrence
    let mut binom = Integer::from(n);
    for j in 1..=n {
        let coeff_mag = {
            let mut c = Float::with_val(wp, &binom);
            c *= n;
            c /= j;
            c
        };
        let term = {
            let mut t = (&coeff_mag * &zvals[(j - 1) as usize].value).complete(wp);
            if j % 2 == 0 {
                t = -t;
            }
            t
        };
        let term_mag = term.clone().abs();
        if term_mag > max_mag {
            max_mag = term_mag;
        }
        err += coeff_mag * &zvals[(j - 1) as usize].abs_error;
        value += term;
        if j < n {
            // C(n+j, 2j+1) = C(n+j-1, 2j-1) (n+j)(n-j) / ((2j)(2j+1))
            binom *= (n + j) as u64;
            binom *= (n - j) as u64;
            binom /= (2 * j) as u64;
            binom /= (2 * j + 1) as u64;
        }
    }

    // post-hoc cancellation audit
    let lost = if value.is_zero() {
        wp
    } else {
        let ratio = (&max_mag / &value.clone().abs()).complete(wp).abs();
        ratio.to_f64().log2().max(0.0).ceil() as u32
    };
    if lost + 40 > wp {
        return Err(LiError::InsufficientPrecision {
            n,
            needed: lost + 40 + ctx.guard_bits(),
            got: ctx.bits(),
        });
    }
    err += max_mag * n * (Float::with_val(wp, 1u32) >> (wp - 4));

    let kind = zvals[..n as usize]
        .iter()
        .fold(ErrorKind::Rigorous, |k, z| k.combine(z.kind));
    Ok(LambdaValue {
        n,
        value: ValueWithError::new(value, Float::with_val(ctx.working_bits(), err), kind),
        method: Method::Binomial,
        bits_used: ctx.bits(),
    })
}

// ---------------------------------------------------------------------------
// Route C: Cauchy coefficient extraction
// ---------------------------------------------------------------------------

/// Route C for one index; see [`lambda_cauchy_batch`].
pub fn lambda_cauchy(
    n: u32,
    radius: &Float,
    node_count: usize,
    ctx: &PrecisionContext,
) -> Result<LambdaValue, LiError> {
    Ok(lambda_cauchy_batch(&[n], radius, node_count, ctx)?.pop().unwrap())
}

/// Route C: extract `lambda_n` as Taylor coefficients of
/// `f(z) = (1/(1-z)^2) (d/ds log Xi)(1/(1-z))` by the trapezoidal rule on
/// `|z| = r`, entirely from the zeta side — no zero table involved.
///
/// All requested indices share one set of node evaluations. The aliasing
/// error is estimated by re-extracting from the half-density node subset,
/// which overestimates the full-rule aliasing.
pub fn lambda_cauchy_batch(
    ns: &[u32],
    radius: &Float,
    node_count: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<LambdaValue>, LiError> {
    assert!(!ns.is_empty() && ns.windows(2).all(|w| w[0] < w[1]));
    let n_max = *ns.last().unwrap();
    if n_max > DEFAULT_CAUCHY_MAX_N {
        return Err(LiError::CauchyCeiling {
            n: n_max,
            max: DEFAULT_CAUCHY_MAX_N,
        });
    }
    if !node_count.is_power_of_two() || node_count <= 4 * n_max as usize {
        return Err(LiError::BadNodeCount(node_count));
    }
    let wp = ctx.working_bits() + 16;
    let r = Float::with_val(wp, radius);
    if !r.is_sign_positive() || r.is_zero() || r >= 1u32 {
        return Err(LiError::BadRadius(r.to_string()));
    }

    let q = node_count;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    // f at nodes 0..=Q/2; conjugate symmetry supplies the rest
    let mut nodes: Vec<(CFloat, Float)> = Vec::with_capacity(q / 2 + 1);
    for m in 0..=q / 2 {
        let angle = (&two_pi * &Float::with_val(wp, m as u64)).complete(wp) / (q as u32);
        let (sin, cos) = angle.sin_cos(Float::new(wp));
        let z = CFloat::new(cos * &r, sin * &r);
        let one_minus_z = z.neg().add_real(&Float::with_val(wp, 1u32));
        let s = one_minus_z.recip();
        let near_zero = s.abs();
        let near_one = s.add_real(&Float::with_val(wp, -1i32)).abs();
        if near_zero < 0.05f64 || near_one < 0.05f64 {
            return Err(LiError::NodeNearPole(s.to_string()));
        }
        let xi = xi_log_deriv(&s, ctx)?;
        let jacobian = s.mul(&s); // 1/(1-z)^2
        nodes.push((xi.value.mul(&jacobian), xi.abs_error));
    }

    let node_err_sum: Float = {
        let mut acc = Float::new(wp);
        for (_, e) in &nodes {
            acc += e;
        }
        acc *= 2u32;
        acc / (q as u32)
    };

    // full circle of samples via conjugate symmetry
    let samples: Vec<CFloat> = (0..q)
        .map(|m| {
            if m <= q / 2 {
                nodes[m].0.clone()
            } else {
                nodes[q - m].0.conj()
            }
        })
        .collect();

    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let r_pow = r.clone().pow((n - 1) as u32).recip();
        let full = dft_coefficient(&samples, (n - 1) as usize, 1, wp).mul_real(&r_pow);
        let coarse = dft_coefficient(&samples, (n - 1) as usize, 2, wp).mul_real(&r_pow);
        let alias = full.sub(&coarse).abs();
        let value = full.re.clone();
        let mut err = alias.clone();
        err += full.im.clone().abs();
        err += (&node_err_sum * &r_pow).complete(wp);
        err += value.clone().abs() >> (wp - 10);

        let half_mag = Float::with_val(wp, &value).abs() / 2u32;
        if alias > half_mag && alias > Float::with_val(wp, 1e-3f64) {
            return Err(LiError::NonConvergence {
                n,
                delta: alias.to_string(),
            });
        }
        out.push(LambdaValue {
            n,
            value: ValueWithError::new(
                value,
                Float::with_val(ctx.working_bits(), err),
                ErrorKind::Heuristic,
            ),
            method: Method::Cauchy,
            bits_used: ctx.bits(),
        });
    }
    Ok(out)
}

/// Decimated trapezoidal coefficient: the mean of
/// `samples[m] e^(-2 pi i m order / Q)` over every `stride`-th sample.
pub(crate) fn dft_coefficient(samples: &[CFloat], order: usize, stride: usize, wp: u32) -> CFloat {
    let q = samples.len();
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let count = q / stride;
    let mut acc = CFloat::zero(wp);
    for idx in 0..count {
        let m = idx * stride;
        let angle = (&two_pi * &Float::with_val(wp, ((m * order) % q) as u64)).complete(wp)
            / (q as u32);
        let (sin, cos) = angle.sin_cos(Float::new(wp));
        let root = CFloat::new(cos, -sin);
        acc = acc.add(&samples[m].mul(&root));
    }
    acc.mul_real(&Float::with_val(wp, count as u64).recip())
}

// ---------------------------------------------------------------------------
// Residue identity: contour representation vs binomial coefficients
// ---------------------------------------------------------------------------

/// One row of the residue-identity certificate.
#[derive(Debug, Clone)]
pub struct ResidueCertificateRow {
    pub j: u32,
    pub residue_route: BigRational,
    pub binomial_route: BigRational,
}

/// Verify, in exact arithmetic, that the residue of the gamma-ratio kernel
/// at each integer pole `sigma = j` reproduces route B's coefficient:
///
/// `-2n (-1)^j (n+j-1)! / ((n-j)! (2j)!)  ==  -n ((-1)^j / j) C(n+j-1, 2j-1)`.
///
/// Returns the full coefficient table as a certificate.
pub fn residue_identity_check(n: u32) -> (bool, Vec<ResidueCertificateRow>) {
    let mut rows = Vec::with_capacity(n as usize);
    let mut all_equal = true;
    for j in 1..=n {
        let num: Integer = Integer::factorial(n + j - 1).into();
        let d1: Integer = Integer::factorial(n - j).into();
        let d2: Integer = Integer::factorial(2 * j).into();
        // -2n (-1)^j (n+j-1)! / ((n-j)! (2j)!)
        let mut residue = BigRational::from((num * 2u32 * n, d1 * d2));
        if j % 2 == 0 {
            residue = -residue;
        }
        let binomial_route = binomial_route_coefficient(n, j);
        if residue != binomial_route {
            all_equal = false;
        }
        rows.push(ResidueCertificateRow {
            j,
            residue_route: residue,
            binomial_route,
        });
    }
    (all_equal, rows)
}

#[cfg(test)]
mod tests;
