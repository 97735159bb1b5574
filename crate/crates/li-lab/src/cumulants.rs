//! Stieltjes constants, the cumulants of `log(s zeta(1+s))`, and the
//! binomial combinations `S_n`.
//!
//! Two routes exist for the cumulants. The series route composes the power
//! series of `s zeta(1+s)` (whose coefficients are the Stieltjes constants)
//! with the formal logarithm; it is the authoritative one. The prime-sum
//! route accumulates `Lambda(m) (log m)^(n-1) / m` over a segmented sieve
//! and converges slowly; it exists as an independent rough check and its
//! error tag is heuristic.

use crate::numerics::{
    bernoulli_over_factorial, ErrorKind, PrecisionContext, ValueWithError,
};
use crate::reduce::map_reduce;
use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CumulantsError {
    #[error("Stieltjes table holds gamma_0..gamma_{got}, need gamma_{needed}")]
    TableTooShort { needed: usize, got: usize },
    #[error("Stieltjes index {0} is above the configured ceiling {1}")]
    IndexCeiling(usize, usize),
    #[error("S_{n} needs at least {needed} bits against binomial growth, context has {got}")]
    InsufficientPrecision { n: u32, needed: u32, got: u32 },
    #[error("sieve bound {0} exceeds the configured capacity {1}")]
    SieveCapacity(u64, u64),
    #[error("sieve bound must be at least 100, got {0}")]
    SieveBoundTooSmall(u64),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: cannot parse Stieltjes constant '{text}'")]
    Parse { line: usize, text: String },
}

/// Largest index the direct Euler–Maclaurin route will attempt.
pub const STIELTJES_INDEX_CEILING: usize = 128;
/// Largest admissible prime-sum sieve bound.
pub const SIEVE_CAPACITY: u64 = 1 << 34;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Ingested,
}

/// Table of Stieltjes constants `gamma_0 .. gamma_M` with per-entry error
/// bounds.
#[derive(Debug, Clone)]
pub struct StieltjesTable {
    gammas: Vec<Float>,
    abs_errors: Vec<Float>,
    digits: u32,
    provenance: Provenance,
}

impl StieltjesTable {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn gamma(&self, m: usize) -> &Float {
        &self.gammas[m]
    }

    pub fn gamma_value(&self, m: usize) -> ValueWithError {
        ValueWithError::new(
            self.gammas[m].clone(),
            self.abs_errors[m].clone(),
            ErrorKind::Rigorous,
        )
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Build a table from explicit values taken as exact (tests, synthetic
    /// configurations).
    pub fn from_exact(gammas: Vec<Float>) -> Self {
        let zeros = gammas.iter().map(|g| Float::new(g.prec())).collect();
        Self {
            abs_errors: zeros,
            digits: 0,
            provenance: Provenance::Computed,
            gammas,
        }
    }

    /// Ingest a precomputed table: one constant per line (plain or
    /// scientific notation), `#` comments allowed, `gamma_0` first.
    /// `expected_digits` declares significant digits; per-entry error is
    /// `|gamma_m| 10^(1-digits)`.
    pub fn ingest(path: &Path, expected_digits: u32) -> Result<Self, CumulantsError> {
        let text = std::fs::read_to_string(path).map_err(|e| CumulantsError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let prec = ((expected_digits + 8) as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32;
        let mut gammas = Vec::new();
        let mut abs_errors = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let value = Float::parse(trimmed)
                .map(|p| Float::with_val(prec, p))
                .map_err(|_| CumulantsError::Parse {
                    line: idx + 1,
                    text: trimmed.to_string(),
                })?;
            let mut err = value.clone().abs();
            err *= Float::with_val(prec, 10u32).pow(1i32 - expected_digits as i32);
            gammas.push(value);
            abs_errors.push(err);
        }
        Ok(Self {
            gammas,
            abs_errors,
            digits: expected_digits,
            provenance: Provenance::Ingested,
        })
    }
}

// ---------------------------------------------------------------------------
// Stieltjes constants by Euler–Maclaurin acceleration
// ---------------------------------------------------------------------------

/// Derivative polynomials of `f(x) = (log x)^m / x`:
/// `f^(j)(x) = P_j(log x) / x^(j+1)` with
/// `P_{j+1} = P_j' - (j+1) P_j` and `P_0(u) = u^m`.
struct DerivPolys {
    m: usize,
    coeffs: Vec<Integer>, // coeffs[i] multiplies u^(m-i) ... u^0; index by power
}

impl DerivPolys {
    fn new(m: usize) -> Self {
        let mut coeffs = vec![Integer::ZERO.clone(); m + 1];
        coeffs[m] = Integer::from(1); // u^m
        Self { m, coeffs }
    }

    /// Advance from P_j to P_{j+1}.
    fn step(&mut self, j: usize) {
        let mut next = vec![Integer::ZERO.clone(); self.m + 1];
        for power in 0..=self.m {
            if self.coeffs[power].is_zero() {
                continue;
            }
            // derivative: c u^p -> c p u^(p-1)
            if power > 0 {
                next[power - 1] += Integer::from(&self.coeffs[power] * power as u64);
            }
            // -(j+1) c u^p
            next[power] -= Integer::from(&self.coeffs[power] * (j as u64 + 1));
        }
        self.coeffs = next;
    }

    /// Evaluate P_j at `u`, plus the sum of absolute coefficient sizes
    /// weighted by `u^power` (for remainder bounds).
    fn eval(&self, u: &Float, wp: u32) -> (Float, Float) {
        let mut value = Float::new(wp);
        let mut mag = Float::new(wp);
        let mut u_pow = Float::with_val(wp, 1u32);
        for power in 0..=self.m {
            if !self.coeffs[power].is_zero() {
                let c = Float::with_val(wp, &self.coeffs[power]);
                value += (&c * &u_pow).complete(wp);
                mag += c.abs() * &u_pow;
            }
            if power < self.m {
                u_pow *= u;
            }
        }
        (value, mag)
    }
}

/// `gamma_m` by the accelerated limit
/// `sum_{k<=K} (log k)^m / k - (log K)^(m+1)/(m+1)` with Euler–Maclaurin
/// corrections at the cut; the remainder bound is the classical one.
pub fn stieltjes_single(
    m: usize,
    k_cut: usize,
    ctx: &PrecisionContext,
) -> Result<ValueWithError, CumulantsError> {
    if m > STIELTJES_INDEX_CEILING {
        return Err(CumulantsError::IndexCeiling(m, STIELTJES_INDEX_CEILING));
    }
    let wp = ctx.working_bits() + 32 + (m as u32) * 2;
    let k = k_cut.max(8);

    // partial sum, tracking raw magnitude for the rounding bound
    let mut partial = Float::new(wp);
    let mut mag_sum = Float::with_val(wp, 1u32);
    for j in 1..=k {
        let ln_j = Float::with_val(wp, j as u64).ln();
        let term = ln_j.pow(m as u32) / Float::with_val(wp, j as u64);
        mag_sum += &term;
        partial += term;
    }
    let ln_k = Float::with_val(wp, k as u64).ln();
    // - (log K)^(m+1)/(m+1)
    partial -= ln_k.clone().pow((m + 1) as u32) / Float::with_val(wp, (m + 1) as u64);
    // - f(K)/2
    let f_k = ln_k.clone().pow(m as u32) / Float::with_val(wp, k as u64);
    partial -= f_k / 2u32;

    // corrections: - sum_r B_2r/(2r)! f^(2r-1)(K), f^(j)(K) = P_j(ln K)/K^(j+1)
    let mut polys = DerivPolys::new(m);
    let inv_k = Float::with_val(wp, k as u64).recip();
    let mut k_pow = inv_k.clone() * &inv_k; // K^{-(j+1)} at j = 1
    let target = Float::i_exp(1, -(wp as i32)).complete(wp);
    let mut j = 0usize; // current derivative order of `polys`
    let mut r = 1usize;
    let mut last_term_mag = Float::with_val(wp, 1u32);
    let remainder;
    loop {
        while j < 2 * r - 1 {
            polys.step(j);
            j += 1;
        }
        let (p_val, p_mag) = polys.eval(&ln_k, wp);
        let coeff = Float::with_val(wp, bernoulli_over_factorial(r));
        let term = (&coeff * &p_val).complete(wp) * &k_pow;
        let term_mag = (coeff.abs() * p_mag) * &k_pow;
        partial -= term;

        // remainder bound ~ 4 (2pi)^(-2r) * |P_2r|(ln K) K^(-2r) / r
        if term_mag < target || term_mag > last_term_mag || r > (wp as usize) / 4 + 64 {
            let mut bound = term_mag.clone();
            bound *= 4u32;
            remainder = bound;
            break;
        }
        last_term_mag = term_mag;
        k_pow *= (&inv_k * &inv_k).complete(wp);
        r += 1;
    }

    let rounding = {
        let mut r = partial.clone().abs();
        r += mag_sum;
        r *= 64u32;
        r >> wp
    };
    Ok(ValueWithError::new(
        partial,
        Float::with_val(ctx.working_bits(), remainder + rounding),
        ErrorKind::Rigorous,
    ))
}

fn default_cut(m: usize, ctx: &PrecisionContext) -> usize {
    let wp = ctx.working_bits() as f64;
    ((0.12 * wp).ceil() as usize + 2 * m + 48).max(64)
}

/// The table `gamma_0 .. gamma_M` by the Euler–Maclaurin route.
pub fn stieltjes_constants(
    m_max: usize,
    ctx: &PrecisionContext,
) -> Result<StieltjesTable, CumulantsError> {
    let mut gammas = Vec::with_capacity(m_max + 1);
    let mut abs_errors = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let v = stieltjes_single(m, default_cut(m, ctx), ctx)?;
        gammas.push(v.value);
        abs_errors.push(v.abs_error);
    }
    Ok(StieltjesTable {
        gammas,
        abs_errors,
        digits: (ctx.bits() as f64 * std::f64::consts::LOG10_2) as u32,
        provenance: Provenance::Computed,
    })
}

// ---------------------------------------------------------------------------
// Cumulants: series route
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulantRoute {
    Series,
    PrimeSum,
}

#[derive(Debug, Clone)]
pub struct CumulantValue {
    pub n: u32,
    pub g: ValueWithError,
    pub route: CumulantRoute,
}

/// Taylor coefficients `l_1..l_n` of `log(s zeta(1+s))` at `s = 0`, with
/// first-order error propagation from the Stieltjes table.
///
/// `u_j = (-1)^(j-1) gamma_{j-1} / (j-1)!` are the series coefficients of
/// `s zeta(1+s) - 1`; the formal logarithm follows the standard recurrence
/// `l_n = u_n - (1/n) sum_{k<n} k l_k u_{n-k}`.
pub fn log_series_coefficients(
    n_max: usize,
    table: &StieltjesTable,
    ctx: &PrecisionContext,
) -> Result<Vec<ValueWithError>, CumulantsError> {
    if table.len() < n_max {
        return Err(CumulantsError::TableTooShort {
            needed: n_max - 1,
            got: table.len().saturating_sub(1),
        });
    }
    let wp = ctx.working_bits() + 32;
    let mut u: Vec<(Float, Float)> = Vec::with_capacity(n_max + 1);
    u.push((Float::new(wp), Float::new(wp))); // u_0 unused
    let mut factorial = Integer::from(1);
    for j in 1..=n_max {
        if j >= 2 {
            factorial *= (j as u64) - 1;
        }
        let mut value = Float::with_val(wp, table.gamma(j - 1));
        value /= Float::with_val(wp, &factorial);
        let mut err = Float::with_val(wp, &table.abs_errors[j - 1]);
        err /= Float::with_val(wp, &factorial);
        if (j - 1) % 2 == 1 {
            value = -value;
        }
        u.push((value, err));
    }

    let mut l: Vec<(Float, Float)> = vec![(Float::new(wp), Float::new(wp))];
    for n in 1..=n_max {
        let mut value = u[n].0.clone();
        let mut err = u[n].1.clone();
        let mut correction = Float::new(wp);
        let mut corr_err = Float::new(wp);
        for k in 1..n {
            let prod = (&l[k].0 * &u[n - k].0).complete(wp);
            correction += prod * (k as u32);
            let mut e = (&l[k].1 * &u[n - k].0.clone().abs()).complete(wp);
            e += (&u[n - k].1 * &l[k].0.clone().abs()).complete(wp);
            corr_err += e * (k as u32);
        }
        correction /= n as u32;
        corr_err /= n as u32;
        value -= correction;
        err += corr_err;
        err += value.clone().abs() >> (wp - 6);
        l.push((value, err));
    }

    Ok(l
        .into_iter()
        .skip(1)
        .map(|(v, e)| {
            ValueWithError::new(v, Float::with_val(ctx.working_bits(), e), ErrorKind::Rigorous)
        })
        .collect())
}

/// Series-route cumulant `g_n^c = (-1)^(n-1) n! l_n`.
pub fn cumulant_series(
    n: u32,
    table: &StieltjesTable,
    ctx: &PrecisionContext,
) -> Result<CumulantValue, CumulantsError> {
    let ls = log_series_coefficients(n as usize, table, ctx)?;
    let l_n = &ls[(n - 1) as usize];
    let factorial: Integer = Integer::factorial(n).into();
    let mut g = l_n.scale(&Float::with_val(ctx.working_bits(), &factorial));
    if n % 2 == 0 {
        g.value = -g.value;
    }
    Ok(CumulantValue {
        n,
        g,
        route: CumulantRoute::Series,
    })
}

/// The `eta_{n-1} = (-1)^n g_n^c / (n-1)!` normalization of the same
/// quantity, exposed for internal-consistency checks.
pub fn eta_coefficient(
    n: u32,
    table: &StieltjesTable,
    ctx: &PrecisionContext,
) -> Result<ValueWithError, CumulantsError> {
    let g = cumulant_series(n, table, ctx)?.g;
    let factorial: Integer = Integer::factorial(n - 1).into();
    let mut scaled = g.scale(&Float::with_val(ctx.working_bits(), &factorial).recip());
    if n % 2 == 1 {
        scaled.value = -scaled.value;
    }
    Ok(scaled)
}

// ---------------------------------------------------------------------------
// Cumulants: prime-sum route with a segmented von Mangoldt sieve
// ---------------------------------------------------------------------------

const SEGMENT_LEN: u64 = 1 << 20;

/// Kahan-compensated f64 accumulator; per-segment sums stay deterministic
/// and the cross-segment merge runs in fixed-tree order.
#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn merge(self, other: Kahan) -> Kahan {
        let mut out = self;
        out.add(other.sum);
        out.add(other.carry);
        out
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let mut is_comp = vec![false; (limit + 1) as usize];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if !is_comp[p as usize] {
            primes.push(p);
            let mut q = p * p;
            while q <= limit {
                is_comp[q as usize] = true;
                q += p;
            }
        }
    }
    primes
}

/// `-[ sum_{m<=M} Lambda(m) (log m)^(n-1) / m - (log M)^n / n ]` with the
/// half-bound run tracked in the same pass; the difference of the two runs
/// is the (heuristic) error estimate.
pub fn cumulant_prime_sum(n: u32, sieve_bound: u64) -> Result<CumulantValue, CumulantsError> {
    if sieve_bound < 100 {
        return Err(CumulantsError::SieveBoundTooSmall(sieve_bound));
    }
    if sieve_bound > SIEVE_CAPACITY {
        return Err(CumulantsError::SieveCapacity(sieve_bound, SIEVE_CAPACITY));
    }
    let m = sieve_bound;
    let half = m / 2;
    let root = (m as f64).sqrt() as u64 + 1;
    let base_primes = simple_sieve(root);
    let exponent = (n - 1) as i32;

    // prime contributions, segment by segment
    let segments = m / SEGMENT_LEN + 1;
    let identity = || (Kahan::default(), Kahan::default());
    let base = &base_primes;
    let map = move |seg: usize| {
        let lo = (seg as u64) * SEGMENT_LEN + 2;
        let hi = ((seg as u64 + 1) * SEGMENT_LEN + 1).min(m);
        if lo > hi {
            return (Kahan::default(), Kahan::default());
        }
        let len = (hi - lo + 1) as usize;
        let mut comp = vec![false; len];
        for &p in base.iter() {
            if p * p > hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start == p {
                start += p;
            }
            let mut q = start;
            while q <= hi {
                comp[(q - lo) as usize] = true;
                q += p;
            }
        }
        let mut full = Kahan::default();
        let mut halved = Kahan::default();
        for (i, &is_comp) in comp.iter().enumerate() {
            if is_comp {
                continue;
            }
            let p = lo + i as u64;
            let ln_p = (p as f64).ln();
            let term = ln_p.powi(exponent + 1) / p as f64;
            full.add(term);
            if p <= half {
                halved.add(term);
            }
        }
        (full, halved)
    };
    let combine = |a: (Kahan, Kahan), b: (Kahan, Kahan)| (a.0.merge(b.0), a.1.merge(b.1));
    let (mut full, mut halved) = map_reduce(
        segments as usize,
        crate::numerics::ReductionOrder::FixedTree,
        &identity,
        &map,
        &combine,
    );

    // prime powers p^a <= M, a >= 2
    for &p in &base_primes {
        let ln_p = (p as f64).ln();
        let mut pk = p.saturating_mul(p);
        let mut a = 2u32;
        while pk <= m {
            let ln_m = a as f64 * ln_p;
            let term = ln_p * ln_m.powi(exponent) / pk as f64;
            full.add(term);
            if pk <= half {
                halved.add(term);
            }
            pk = pk.saturating_mul(p);
            a += 1;
        }
    }

    let assemble = |sum: Kahan, bound: u64| -> f64 {
        let ln_m = (bound as f64).ln();
        -(sum.sum + sum.carry - ln_m.powi(exponent + 1) / n as f64)
    };
    let value = assemble(full, m);
    let coarse = assemble(halved, half);
    let err = (value - coarse).abs().max(1e-12);

    let prec = 64;
    Ok(CumulantValue {
        n,
        g: ValueWithError::new(
            Float::with_val(prec, value),
            Float::with_val(prec, err),
            ErrorKind::Heuristic,
        ),
        route: CumulantRoute::PrimeSum,
    })
}

// ---------------------------------------------------------------------------
// S_n
// ---------------------------------------------------------------------------

/// `S_n = sum_{j=1}^n ((-1)^(j-1)/(j-1)!) C(n,j) g_j^c`, accumulated as
/// `sum_j C(n,j) j l_j` with exact binomials at full precision.
pub fn s_n(
    n: u32,
    table: &StieltjesTable,
    ctx: &PrecisionContext,
) -> Result<ValueWithError, CumulantsError> {
    let needed = 4 * n + 96;
    if ctx.bits() < needed {
        return Err(CumulantsError::InsufficientPrecision {
            n,
            needed,
            got: ctx.bits(),
        });
    }
    let ls = log_series_coefficients(n as usize, table, ctx)?;
    let wp = ctx.working_bits() + 32;
    let mut value = Float::new(wp);
    let mut err = Float::new(wp);
    let mut max_mag = Float::new(wp);
    let mut binom = Integer::from(n); // C(n, 1)
    for j in 1..=n {
        let c = Float::with_val(wp, &binom) * j;
        let term = (&c * &ls[(j - 1) as usize].value).complete(wp);
        let tmag = term.clone().abs();
        if tmag > max_mag {
            max_mag = tmag;
        }
        err += c * &ls[(j - 1) as usize].abs_error;
        value += term;
        if j < n {
            // C(n, j+1) = C(n, j) (n - j)/(j + 1)
            binom *= (n - j) as u64;
            binom /= (j + 1) as u64;
        }
    }
    err += max_mag * n * (Float::with_val(wp, 1u32) >> (wp - 4));
    Ok(ValueWithError::new(
        value,
        Float::with_val(ctx.working_bits(), err),
        ErrorKind::Rigorous,
    ))
}
