//! Integer-valued polynomials in the binomial basis and their reduction
//! mod `p` to polynomials in the base-p digit functions `Q_i = C(T, p^i)`.

mod binomial;
mod digits;
mod qpoly;

pub use binomial::{binom_eval, binom_expand, binomial, BinomialPoly};
pub use digits::{lucas_binom, q_digits, q_eval};
pub use qpoly::{periodic_to_qpoly, tau_reduce, QPolynomial};
