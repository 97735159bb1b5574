use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::Float;
use std::fmt;

/// Complex number over MPFR floats.
///
/// `rug`'s own complex type needs the MPC library, which this crate avoids;
/// the handful of operations required here are written out explicitly.
/// Binary operations complete at the larger precision of the two operands.
#[derive(Debug, Clone, PartialEq)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Float::new(prec),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn with_val(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    fn op_prec(&self, other: &Self) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: (-&self.im).complete(self.im.prec()),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: (-&self.re).complete(self.re.prec()),
            im: (-&self.im).complete(self.im.prec()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.op_prec(other);
        Self {
            re: (&self.re + &other.re).complete(p),
            im: (&self.im + &other.im).complete(p),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.op_prec(other);
        Self {
            re: (&self.re - &other.re).complete(p),
            im: (&self.im - &other.im).complete(p),
        }
    }

    pub fn add_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        Self {
            re: (&self.re + x).complete(p),
            im: self.im.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.op_prec(other);
        let mut re = (&self.re * &other.re).complete(p);
        re -= (&self.im * &other.im).complete(p);
        let mut im = (&self.re * &other.im).complete(p);
        im += (&self.im * &other.re).complete(p);
        Self { re, im }
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        Self {
            re: (&self.re * x).complete(p),
            im: (&self.im * x).complete(p),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        let p = self.op_prec(other);
        let mut den = other.re.clone().square();
        den += other.im.clone().square();
        let mut re = (&self.re * &other.re).complete(p);
        re += (&self.im * &other.im).complete(p);
        re /= &den;
        let mut im = (&self.im * &other.re).complete(p);
        im -= (&self.re * &other.im).complete(p);
        im /= &den;
        Self { re, im }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let mut den = self.re.clone().square();
        den += self.im.clone().square();
        Self {
            re: (&self.re / &den).complete(p),
            im: -(&self.im / &den).complete(p),
        }
    }

    /// Modulus |z|.
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Self {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let scale = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(p));
        Self {
            re: cos * &scale,
            im: sin * &scale,
        }
    }

    /// Integer power by binary exponentiation.
    pub fn pow_u(&self, mut n: u64) -> Self {
        let p = self.prec();
        let mut result = Self {
            re: Float::with_val(p, 1),
            im: Float::new(p),
        };
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Principal complex power `z^w = exp(w log z)`.
    pub fn pow(&self, w: &Self) -> Self {
        self.ln().mul(w).exp()
    }

    /// `k^(-self)` for a positive integer base: the workhorse of Dirichlet
    /// sums. Uses one real log and one complex exponential.
    pub fn neg_pow_of_uint(&self, k: u64) -> Self {
        let p = self.prec();
        let ln_k = Float::with_val(p, k).ln();
        let re = -(&self.re * &ln_k).complete(p);
        let im = -(&self.im * &ln_k).complete(p);
        CFloat { re, im }.exp()
    }

    /// Distance |self - other|.
    pub fn dist(&self, other: &Self) -> Float {
        self.sub(other).abs()
    }

    pub fn i(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn pi(prec: u32) -> Self {
        Self::from_real(Float::with_val(prec, Constant::Pi))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for CFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_sign_negative() {
            write!(f, "{} - {}i", self.re, (-&self.im).complete(self.im.prec()))
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}
