//! Tables of Riemann-zero ordinates: ingestion with validation, synthetic
//! variants for the off-axis sandbox, and the smooth counting function used
//! by every tail completion.
//!
//! A pair of zeros `rho = 1/2 ± i tau` is parametrized by the single number
//! `x = rho(1-rho) = 1/4 + tau^2`. Tabulated tables hold real ascending
//! ordinates; synthetic tables may add off-axis representatives with
//! `arg tau` in `(0, pi/2)`, whose conjugate pair is accounted for by every
//! downstream sum.

use crate::numerics::{CFloat, PrecisionContext};
use rug::ops::{CompleteRound, Pow};
use rug::Float;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZerosError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("no ordinates in {0}")]
    Empty(String),
    #[error("line {line}: cannot parse ordinate '{text}'")]
    Parse { line: usize, text: String },
    #[error("line {line}: ordinate {value} does not exceed its predecessor (monotonicity violation)")]
    Monotonicity { line: usize, value: String },
    #[error("first ordinate {0} is not near 14.1347 (expected a table starting at the first zero)")]
    FirstZero(String),
    #[error("zero #{index} at t = {t}: count deviates from the smooth counting by {deviation}, outside the sanity band {band}")]
    DensityBand {
        index: usize,
        t: String,
        deviation: String,
        band: String,
    },
    #[error("injected ordinate must be off-axis: Im(tau) = 0 for {0}")]
    OnAxisInjection(String),
    #[error("injected ordinate must have Re(tau) > 0, got {0}")]
    NonPositiveRealPart(String),
    #[error("degenerate pair x = 1/4 + tau^2 = 0 at tau = {0} (corresponds to rho in {{0,1}})")]
    DegeneratePair(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Tabulated,
    Synthetic,
}

/// Metadata record serialized next to a zeros file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableMetadata {
    pub source: String,
    pub digits: u32,
    pub count: usize,
    #[serde(rename = "T")]
    pub height_cutoff: f64,
    pub checksum_sha256: String,
}

/// One zero pair, viewed through its representative ordinate.
#[derive(Debug, Clone)]
pub struct ZeroPair {
    pub tau: CFloat,
}

impl ZeroPair {
    /// The pair parameter `x = 1/4 + tau^2`.
    pub fn x(&self) -> CFloat {
        x_of(&self.tau)
    }

    pub fn is_on_axis(&self) -> bool {
        self.tau.im.is_zero()
    }
}

/// `x = 1/4 + tau^2`, the single parameter of a zero pair.
pub fn x_of(tau: &CFloat) -> CFloat {
    let quarter = Float::with_val(tau.prec(), 0.25f32);
    tau.mul(tau).add_real(&quarter)
}

/// Real-ordinate fast path of [`x_of`].
pub fn x_of_real(tau: &Float) -> Float {
    let mut x = tau.clone().square();
    x += 0.25f32;
    x
}

/// Validated, immutable table of zero ordinates.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    ordinates: Arc<Vec<Float>>,
    injected: Vec<CFloat>,
    kind: TableKind,
    /// Decimal places declared by the source file (None for exact synthetic input).
    digits: Option<u32>,
    height_cutoff: Option<Float>,
    source: String,
    checksum: String,
}

impl ZeroTable {
    /// Load and validate a tabulated ordinate file.
    ///
    /// Format: one decimal ordinate per line, ascending; `#` starts a
    /// comment line. `expected_digits` declares how many decimal places the
    /// source carries; each ordinate's absolute error is `10^-digits`.
    pub fn load(path: &Path, expected_digits: u32) -> Result<Self, ZerosError> {
        let bytes = std::fs::read(path).map_err(|e| ZerosError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let checksum = hex_digest(&bytes);
        let text = String::from_utf8_lossy(&bytes);
        let prec = parse_precision(expected_digits);
        let mut ordinates: Vec<Float> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let value = Float::parse(trimmed)
                .map(|p| Float::with_val(prec, p))
                .map_err(|_| ZerosError::Parse {
                    line,
                    text: trimmed.to_string(),
                })?;
            if let Some(last) = ordinates.last() {
                if value <= *last {
                    return Err(ZerosError::Monotonicity {
                        line,
                        value: value.to_string(),
                    });
                }
            }
            ordinates.push(value);
        }
        if ordinates.is_empty() {
            return Err(ZerosError::Empty(path.display().to_string()));
        }
        let first = ordinates[0].to_f64();
        if (first - 14.134_725).abs() > 0.01 {
            return Err(ZerosError::FirstZero(format!("{first}")));
        }
        validate_density(&ordinates)?;
        let height_cutoff = Some(ordinates.last().unwrap().clone());
        Ok(Self {
            ordinates: Arc::new(ordinates),
            injected: Vec::new(),
            kind: TableKind::Tabulated,
            digits: Some(expected_digits),
            height_cutoff,
            source: path.display().to_string(),
            checksum,
        })
    }

    /// A synthetic table from explicit real ordinates (taken as exact).
    /// No tail model is attached: downstream sums are direct.
    pub fn synthetic(real_ordinates: Vec<Float>) -> Self {
        Self {
            ordinates: Arc::new(real_ordinates),
            injected: Vec::new(),
            kind: TableKind::Synthetic,
            digits: None,
            height_cutoff: None,
            source: "synthetic".into(),
            checksum: String::new(),
        }
    }

    /// New table with an off-axis pair added; the base is never mutated.
    ///
    /// The representative is normalized to `arg tau` in `(0, pi/2)`;
    /// downstream sums add the conjugate pair's contribution automatically.
    pub fn inject_off_axis(&self, tau_star: &CFloat) -> Result<Self, ZerosError> {
        if tau_star.im.is_zero() {
            return Err(ZerosError::OnAxisInjection(tau_star.to_string()));
        }
        if !(tau_star.re.is_sign_positive() && !tau_star.re.is_zero()) {
            return Err(ZerosError::NonPositiveRealPart(tau_star.to_string()));
        }
        let tau = if tau_star.im.is_sign_negative() {
            tau_star.conj()
        } else {
            tau_star.clone()
        };
        if x_of(&tau).is_zero() {
            return Err(ZerosError::DegeneratePair(tau.to_string()));
        }
        let mut injected = self.injected.clone();
        injected.push(tau);
        Ok(Self {
            ordinates: Arc::clone(&self.ordinates),
            injected,
            kind: TableKind::Synthetic,
            digits: self.digits,
            height_cutoff: self.height_cutoff.clone(),
            source: format!("{} + injection", self.source),
            checksum: String::new(),
        })
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn ordinates(&self) -> &[Float] {
        &self.ordinates
    }

    pub fn injected(&self) -> &[CFloat] {
        &self.injected
    }

    /// Number of zero pairs represented directly (injected pairs count once;
    /// their conjugate twins are implicit).
    pub fn pair_count(&self) -> usize {
        self.ordinates.len() + self.injected.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = ZeroPair> + '_ {
        let real = self
            .ordinates
            .iter()
            .map(|t| ZeroPair {
                tau: CFloat::from_real(t.clone()),
            });
        let inj = self.injected.iter().map(|t| ZeroPair { tau: t.clone() });
        real.chain(inj)
    }

    /// Largest validated ordinate, when the table is backed by one.
    pub fn height_cutoff(&self) -> Option<&Float> {
        self.height_cutoff.as_ref()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn digits(&self) -> Option<u32> {
        self.digits
    }

    /// Absolute error attributed to each stored ordinate.
    pub fn ordinate_abs_error(&self, ctx: &PrecisionContext) -> Float {
        match self.digits {
            Some(d) => {
                let ten = Float::with_val(ctx.working_bits(), 10u32);
                ten.pow(-(d as i32))
            }
            None => ctx.zero(),
        }
    }

    /// Serialize ordinates in the line format of [`ZeroTable::load`],
    /// reproducing the declared digit count.
    pub fn write_ordinates(&self) -> String {
        let digits = self.digits.unwrap_or(30) as usize;
        let mut out = String::new();
        for t in self.ordinates.iter() {
            let _ = writeln!(out, "{}", format_fixed(t, digits));
        }
        out
    }

    pub fn metadata(&self) -> TableMetadata {
        TableMetadata {
            source: self.source.clone(),
            digits: self.digits.unwrap_or(0),
            count: self.ordinates.len(),
            height_cutoff: self
                .height_cutoff
                .as_ref()
                .map(|t| t.to_f64())
                .unwrap_or(0.0),
            checksum_sha256: self.checksum.clone(),
        }
    }
}

/// Fixed-point decimal rendering with exactly `digits` fractional places,
/// correctly rounded.
pub fn format_fixed(value: &Float, digits: usize) -> String {
    let prec = value.prec() + 64;
    let mut scaled = Float::with_val(prec, value);
    let ten_pow = Float::with_val(prec, 10u32).pow(digits as u32);
    scaled *= ten_pow;
    let int = scaled.round().to_integer().unwrap();
    let negative = int.is_negative();
    let mut body = int.abs().to_string();
    if body.len() <= digits {
        body = format!("{body:0>width$}", width = digits + 1);
    }
    let split = body.len() - digits;
    let mut s = String::new();
    if negative {
        s.push('-');
    }
    s.push_str(&body[..split]);
    if digits > 0 {
        s.push('.');
        s.push_str(&body[split..]);
    }
    s
}

fn parse_precision(digits: u32) -> u32 {
    // decimal digits (plus integer-part headroom) to bits, with padding
    (((digits + 10) as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        let _ = write!(s, "{b:02x}");
    }
    s
}

fn validate_density(ordinates: &[Float]) -> Result<(), ZerosError> {
    for (i, t) in ordinates.iter().enumerate() {
        let tf = t.to_f64();
        let expected = smooth_count_f64(tf);
        let deviation = ((i + 1) as f64 - expected).abs();
        let band = 3.0 + 0.5 * tf.ln();
        if deviation >= band {
            return Err(ZerosError::DensityBand {
                index: i + 1,
                t: format!("{tf:.3}"),
                deviation: format!("{deviation:.2}"),
                band: format!("{band:.2}"),
            });
        }
    }
    Ok(())
}

/// Smooth zero-counting approximation and its density.
///
/// `N(t) = (t/2pi) log(t/2pi) - t/2pi + 7/8`, increasing for `t > 2 pi e`;
/// the density `N'(t) = log(t/2pi)/2pi` is positive for `t > 2 pi`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SmoothCounting;

impl SmoothCounting {
    /// `N(t)` at the context's working precision.
    pub fn count(t: &Float, ctx: &PrecisionContext) -> Float {
        let wp = ctx.working_bits();
        let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
        let u = (t / &two_pi).complete(wp);
        let mut n = u.clone().ln();
        n *= &u;
        n -= &u;
        n += Float::with_val(wp, 7u32) / 8u32;
        n
    }

    /// Density `N'(t)`.
    pub fn density(t: &Float, ctx: &PrecisionContext) -> Float {
        let wp = ctx.working_bits();
        let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
        let ratio = (t / &two_pi).complete(wp);
        ratio.ln() / two_pi
    }

    /// Coefficients `(alpha, beta)` with `N'(t) = alpha ln t + beta`.
    pub fn density_coeffs(ctx: &PrecisionContext) -> (Float, Float) {
        let wp = ctx.working_bits();
        let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
        let alpha = two_pi.clone().recip();
        let beta = -(two_pi.clone().ln() / two_pi);
        (alpha, beta)
    }

    /// Width of the count-vs-smooth sanity band at height `t`.
    pub fn band(t: f64) -> f64 {
        3.0 + 0.5 * t.ln()
    }
}

fn smooth_count_f64(t: f64) -> f64 {
    let u = t / std::f64::consts::TAU;
    u * u.ln() - u + 0.875
}
