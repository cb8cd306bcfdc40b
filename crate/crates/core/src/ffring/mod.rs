//! The reduced ring `R_k = F_p[x_1..x_k] / (x_i^p - x_i)`.

mod counter;
pub(crate) mod grid;
mod modulus;
mod poly;

pub use counter::MultCounter;
pub use modulus::{is_prime, Fp, PrimeModulus, MAX_PRIME};
pub use poly::{dense_len, digits_of, index_of, ReducedPoly, MAX_DENSE_LEN};
