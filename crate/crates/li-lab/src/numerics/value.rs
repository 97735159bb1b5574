use super::complex::CFloat;
use rug::ops::CompleteRound;
use rug::Float;
use std::fmt;

/// Whether an error bound is backed by a remainder estimate or by an
/// empirical heuristic (omitted-term sizes, cutoff spreads, and the like).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Rigorous,
    Heuristic,
}

impl ErrorKind {
    /// Combining anything with a heuristic bound yields a heuristic bound.
    pub fn combine(self, other: ErrorKind) -> ErrorKind {
        match (self, other) {
            (ErrorKind::Rigorous, ErrorKind::Rigorous) => ErrorKind::Rigorous,
            _ => ErrorKind::Heuristic,
        }
    }
}

/// A big-float value with an absolute error bound.
///
/// This is the universal return currency of the crate. Propagation is
/// conservative: bounds add under addition and combine to first order under
/// multiplication.
#[derive(Debug, Clone)]
pub struct ValueWithError {
    pub value: Float,
    pub abs_error: Float,
    pub kind: ErrorKind,
}

impl ValueWithError {
    pub fn new(value: Float, abs_error: Float, kind: ErrorKind) -> Self {
        debug_assert!(abs_error.is_finite() && !abs_error.is_sign_negative());
        Self {
            value,
            abs_error,
            kind,
        }
    }

    /// An exactly known value (error bound zero).
    pub fn exact(value: Float) -> Self {
        let prec = value.prec();
        Self {
            value,
            abs_error: Float::new(prec),
            kind: ErrorKind::Rigorous,
        }
    }

    fn prec(&self, other: &Self) -> u32 {
        self.value.prec().max(other.value.prec())
    }

    pub fn is_heuristic(&self) -> bool {
        self.kind == ErrorKind::Heuristic
    }

    /// Sum with bound addition.
    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec(other);
        Self::new(
            (&self.value + &other.value).complete(p),
            (&self.abs_error + &other.abs_error).complete(p),
            self.kind.combine(other.kind),
        )
    }

    /// Product with first-order bound combination `|a| eb + |b| ea + ea eb`.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec(other);
        let value = (&self.value * &other.value).complete(p);
        let mut abs_error = (&self.abs_error * &other.abs_error).complete(p);
        abs_error += self.value.clone().abs() * &other.abs_error;
        abs_error += other.value.clone().abs() * &self.abs_error;
        Self::new(value, abs_error, self.kind.combine(other.kind))
    }

    /// Scale by an exact factor.
    pub fn scale(&self, factor: &Float) -> Self {
        let p = self.value.prec().max(factor.prec());
        Self::new(
            (&self.value * factor).complete(p),
            (&self.abs_error * factor).complete(p).abs(),
            self.kind,
        )
    }

    /// Widen the bound by `extra` (e.g. to fold in a model error).
    pub fn widen(&self, extra: &Float, kind: ErrorKind) -> Self {
        let p = self.abs_error.prec().max(extra.prec());
        Self::new(
            self.value.clone(),
            (&self.abs_error + extra).complete(p),
            self.kind.combine(kind),
        )
    }

    /// True when `|self.value - other.value|` is within the combined bounds.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = self.prec(other);
        let diff = (&self.value - &other.value).complete(p).abs();
        let combined = (&self.abs_error + &other.abs_error).complete(p);
        diff <= combined
    }
}

impl fmt::Display for ValueWithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ErrorKind::Rigorous => "rigorous",
            ErrorKind::Heuristic => "heuristic",
        };
        write!(f, "{} ± {:.3e} ({})", self.value, self.abs_error, tag)
    }
}

/// Complex value with a single absolute (modulus) error bound.
#[derive(Debug, Clone)]
pub struct CValue {
    pub value: CFloat,
    pub abs_error: Float,
    pub kind: ErrorKind,
}

impl CValue {
    pub fn new(value: CFloat, abs_error: Float, kind: ErrorKind) -> Self {
        debug_assert!(abs_error.is_finite() && !abs_error.is_sign_negative());
        Self {
            value,
            abs_error,
            kind,
        }
    }

    pub fn exact(value: CFloat) -> Self {
        let prec = value.prec();
        Self {
            value,
            abs_error: Float::new(prec),
            kind: ErrorKind::Rigorous,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.abs_error.prec().max(other.abs_error.prec());
        Self::new(
            self.value.add(&other.value),
            (&self.abs_error + &other.abs_error).complete(p),
            self.kind.combine(other.kind),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.abs_error.prec().max(other.abs_error.prec());
        let value = self.value.mul(&other.value);
        let ma = self.value.abs();
        let mb = other.value.abs();
        let mut abs_error = (&self.abs_error * &other.abs_error).complete(p);
        abs_error += ma * &other.abs_error;
        abs_error += mb * &self.abs_error;
        Self::new(value, abs_error, self.kind.combine(other.kind))
    }

    /// Quotient with first-order bound `(ea + |f/g| eb) / (|g| - eb)`.
    ///
    /// Returns `None` when the denominator does not exceed its own bound.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mb = other.value.abs();
        if mb <= other.abs_error {
            return None;
        }
        let p = self.abs_error.prec().max(other.abs_error.prec());
        let value = self.value.div(&other.value);
        let quot_mag = value.abs();
        let denom = (&mb - &other.abs_error).complete(p);
        let mut abs_error = quot_mag * &other.abs_error;
        abs_error += &self.abs_error;
        abs_error /= denom;
        Some(Self::new(value, abs_error, self.kind.combine(other.kind)))
    }

    /// Treat as a real value, folding any imaginary residue into the bound.
    pub fn into_real(self) -> ValueWithError {
        let CFloat { re, im } = self.value;
        let mut abs_error = im.abs();
        abs_error += &self.abs_error;
        ValueWithError::new(re, abs_error, self.kind)
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = self.abs_error.prec().max(other.abs_error.prec());
        let diff = self.value.sub(&other.value).abs();
        let combined = (&self.abs_error + &other.abs_error).complete(p);
        diff <= combined
    }
}
