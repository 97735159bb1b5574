use rug::Float;

/// Summation-order policy for reductions over many terms.
///
/// Floating-point addition is not associative, so the reduction order is
/// part of the numerical contract. `FixedTree` uses a balanced binary
/// bracketing that depends only on the term count, which makes results
/// bit-identical across runs and across degrees of parallelism.
/// `Sequential` is a plain left fold and forces single-threaded execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionOrder {
    Sequential,
    #[default]
    FixedTree,
}

/// Working precision, guard digits, and reduction policy.
///
/// All public operations promise that recomputing with `bits` doubled moves
/// the result by less than the reported error bound; the guard bits absorb
/// rounding inside composite expressions so that the promise holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionContext {
    bits: u32,
    guard_bits: u32,
    reduction: ReductionOrder,
}

impl PrecisionContext {
    /// Context with the given mantissa precision and default guard (32 bits)
    /// and reduction policy (fixed tree).
    ///
    /// # Panics
    /// Panics if `bits < 64`.
    pub fn new(bits: u32) -> Self {
        assert!(bits >= 64, "precision context requires at least 64 bits");
        Self {
            bits,
            guard_bits: 32,
            reduction: ReductionOrder::FixedTree,
        }
    }

    pub fn with_guard(mut self, guard_bits: u32) -> Self {
        self.guard_bits = guard_bits;
        self
    }

    pub fn with_reduction(mut self, reduction: ReductionOrder) -> Self {
        self.reduction = reduction;
        self
    }

    /// Target precision for reported results.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn reduction(&self) -> ReductionOrder {
        self.reduction
    }

    /// Precision used for intermediate arithmetic.
    pub fn working_bits(&self) -> u32 {
        self.bits + self.guard_bits
    }

    /// Same policy at doubled target precision (for stability checks).
    pub fn doubled(&self) -> Self {
        Self {
            bits: self.bits * 2,
            guard_bits: self.guard_bits,
            reduction: self.reduction,
        }
    }

    /// 2^(-bits), the target resolution, at working precision.
    pub fn eps(&self) -> Float {
        Float::with_val(self.working_bits(), Float::u_exp(1, -(self.bits as i32)))
    }

    /// A fresh zero at working precision.
    pub fn zero(&self) -> Float {
        Float::new(self.working_bits())
    }

    /// Lift a small value to working precision.
    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits(), v)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(128)
    }
}
