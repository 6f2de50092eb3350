//! Exact machinery for coset spans on the symmetric group, 2-bistochastic
//! pair-indexed matrices and Boolean functions on the slice `J(n,k)`.
//!
//! All arithmetic is exact (`Rational` is an arbitrary-precision fraction).
//! Points are 1-based everywhere.

pub mod bistochastic;
pub mod cli;
pub mod coset_span;
pub mod cover;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod group;
pub mod oracles;
pub mod report;
pub mod slice;

pub use error::{Error, Result};
pub use exact::{RatMatrix, Rational};

/// Largest ambient size accepted by the enumerating operations.
pub const DEFAULT_MAX_N: usize = 8;

/// The `n` guard, overridable through `COSETFORGE_MAX_N`.
pub fn max_n() -> usize {
    std::env::var("COSETFORGE_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

pub(crate) fn guard_n(n: usize) -> Result<()> {
    let limit = max_n();
    if n > limit {
        return Err(Error::SizeGuard {
            what: "n",
            value: n,
            limit,
        });
    }
    if n == 0 {
        return Err(error::contract("n must be at least 1"));
    }
    Ok(())
}
