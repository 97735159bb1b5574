//! High-precision machinery for the Li coefficients of the Riemann xi
//! function and the secondary zeta function over the nontrivial zeros.
//!
//! The crate computes the coefficients `lambda_n` three independent ways:
//!
//! * [`li::lambda_zero_sum`] — direct pairwise sum over zero ordinates with a
//!   smooth-density tail completion,
//! * [`li::lambda_binomial`] — the exact binomial combination of integer
//!   samples `Z(j)` of the secondary zeta function,
//! * [`li::lambda_cauchy`] — Cauchy coefficient extraction from the
//!   generating function of `log Xi(1/(1-z))`, which never touches a zero
//!   table at all.
//!
//! Around that sit the supporting layers: arbitrary-precision special
//! functions ([`numerics`]), validated tables of zero ordinates ([`zeros`]),
//! the secondary zeta function with its tail continuation and polar data
//! ([`secondary_zeta`]), Stieltjes constants and cumulants ([`cumulants`]),
//! and the asymptotic predictors for both the on-axis and off-axis regimes
//! ([`asymptotics`]).
//!
//! Every fallible numerical result is a [`numerics::ValueWithError`]: a
//! big-float value paired with an absolute error bound and a flag telling
//! whether that bound is rigorous or heuristic.
//!
//! Computation is deterministic: with the default fixed-tree reduction
//! policy, results are bit-identical whether the `parallel` feature is
//! enabled or not and regardless of thread count.

pub mod asymptotics;
pub mod cumulants;
pub mod li;
pub mod numerics;
pub mod reduce;
pub mod sandbox;
pub mod secondary_zeta;
pub mod zeros;

pub use numerics::{ErrorKind, PrecisionContext, ReductionOrder, ValueWithError};

/// Path to a file bundled under the crate's `data/` directory.
pub fn bundled_data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::zeros::ZeroTable;

    /// The bundled oracle-generated table of the first 100 ordinates.
    pub fn bundled_table() -> ZeroTable {
        ZeroTable::load(&crate::bundled_data_path("zeros-first100.txt"), 30)
            .expect("bundled zero table must validate")
    }
}
