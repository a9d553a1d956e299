//! Equally positive integer-indexed harmonic sums.
//!
//! A harmonic sum here is
//!
//! ```text
//! S_{a_k}(N) = sum over N >= n_1 >= n_2 >= ... >= n_k >= 1 of 1 / (n_1 n_2 ... n_k)^a
//! ```
//!
//! with one positive exponent `a` repeated across all `k` indices, evaluated
//! either at a finite cutoff `N` or, for `a >= 2`, at `N = infinity`. The crate
//! provides:
//!
//! * [`exact`]: exact rational evaluation by three independent routes (direct
//!   enumeration, a column recurrence, partition enumeration), plus the
//!   q-series coefficient identity that ties partitions to a truncated
//!   product expansion.
//! * [`series`]: coefficients of the generating function
//!   `sum_k S_{a_k}(N) t^(a k) = prod_{n<=N} n^a / (n^a - t^a)` via Newton's
//!   identities, for finite cutoffs (exact rationals) and the infinite limit
//!   (floats fed by a zeta reference).
//! * [`special`]: complex gamma (Lanczos plus reflection), beta, roots of
//!   unity, the finite Euler-style product, and the beta-limit route to gamma.
//! * [`quad`]: a double-exponential quadrature for the `m = 2` moment
//!   integral and a deterministic chunked Monte Carlo engine on the unit
//!   simplex for the general integral representation.
//! * [`report`] and [`cli`]: machine-readable JSON run reports behind the
//!   `epiihs` binary.
//!
//! Numerical invariant across the crate: no `NaN` or infinity escapes a
//! public operation as a value; such states surface as typed [`Error`]s.

pub mod cli;
pub mod exact;
pub mod quad;
pub mod report;
pub mod series;
pub mod special;
pub mod verify;

pub use exact::{Cutoff, HarmonicSpec, Partition};
pub use quad::{McEstimate, Quad1DConfig, SimplexPoint};
pub use report::{Check, CheckStatus, ResultValue, RunReport};
pub use series::PowerSeries;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on arguments was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration route refused to start because it would visit too many
    /// tuples or partitions.
    #[error("enumeration guard: at least {tuples} tuples requested, limit is {limit}")]
    EnumerationTooLarge { tuples: u128, limit: u128 },

    /// Gamma was evaluated within pole tolerance of a non-positive integer.
    #[error("gamma pole at z = {re}{im:+}i")]
    GammaPole { re: f64, im: f64 },

    /// An operation produced a non-finite intermediate or final value.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// A quadrature configuration cannot meet the truncation budget.
    #[error(
        "quadrature tail bound {bound:e} exceeds budget {budget:e}; raise the cutoff"
    )]
    TailBudget { bound: f64, budget: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

// Every code block in the guide compiles and runs with the library's own
// doctests, so the book cannot drift from the API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub mod $name {}
        };
    }

    chapter!(readme, "../../../README.md");
    chapter!(intro, "../../../book/src/intro.md");
    chapter!(exact_evaluation, "../../../book/src/exact.md");
    chapter!(partitions, "../../../book/src/partitions.md");
    chapter!(generating_functions, "../../../book/src/genfunc.md");
    chapter!(gamma, "../../../book/src/gamma.md");
    chapter!(integrals, "../../../book/src/integrals.md");
    chapter!(command_line, "../../../book/src/cli.md");
    chapter!(determinism, "../../../book/src/determinism.md");
}
