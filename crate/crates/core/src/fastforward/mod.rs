//! Iterating maximal-orbit maps in time independent of the exponent, by
//! conjugating the base-p increment.

mod factor;
mod form;
mod generate;
mod report;

pub use factor::{ElementaryFactor, Term};
pub use form::{FastForwardForm, SeedInfo};
pub use generate::{sparse_generate, RNG_ALGORITHM};
pub use report::{count_report, CountReport, DEFAULT_NAIVE_CAP};

/// Documented constant `C` of the per-chain cost bound
/// `C * n * budget * (2 + ceil(log2 p))` for sparse forms with `n <= 8`.
///
/// A monomial over at most `n - 1` variables with exponents below `p` costs
/// at most `(n - 1) * 2 * ceil(log2 p)` multiplications, so `C = 2 (n - 1)`
/// covers every `n <= 8`.
pub const COST_CONSTANT: u64 = 14;
