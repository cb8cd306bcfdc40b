use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::binomial::BinomialPoly;
use super::digits::{q_digits, small_binom_table};
use crate::error::{Error, Result};
use crate::ffring::{dense_len, digits_of, PrimeModulus, ReducedPoly};

/// A reduced polynomial in the digit variables `Q_0, ..., Q_{r-1}`, read as
/// the function `m ↦ g(Q_0(m), ..., Q_{r-1}(m))` of period `p^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    poly: ReducedPoly,
}

impl QPolynomial {
    pub fn new(poly: ReducedPoly) -> Self {
        QPolynomial { poly }
    }

    pub fn poly(&self) -> &ReducedPoly {
        &self.poly
    }

    pub fn into_poly(self) -> ReducedPoly {
        self.poly
    }

    /// Number of digit variables.
    pub fn arity(&self) -> usize {
        self.poly.arity()
    }

    pub fn eval_at(&self, m: i128) -> u32 {
        let p = self.poly.modulus();
        self.poly.evaluate(&q_digits(self.arity(), m, p)).value()
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.arity()).map(|j| format!("Q{j}")).collect();
        let shown = self.poly.display_with(&names);
        write!(f, "{shown}")
    }
}

fn reduce_rational(c: &num_rational::BigRational, p: PrimeModulus) -> Option<u32> {
    let q = BigInt::from(p.get());
    let num = c.numer().mod_floor(&q).to_u32()?;
    let den = c.denom().mod_floor(&q).to_u32()?;
    Some(p.mul(num, p.inv(den)?))
}

/// The digit polynomial agreeing with `f mod p` on all of `Z`.
///
/// `C(T, d)` with `d = sum a_j p^j` becomes `prod_j C(Q_j, a_j)`, each factor
/// interpolated from its `p` values. The result uses as many digit variables
/// as the degree has base-p digits.
pub fn tau_reduce(f: &BinomialPoly, p: PrimeModulus) -> Result<QPolynomial> {
    if !f.is_p_integral(p.get()) {
        return Err(Error::Domain(format!(
            "polynomial is not {p}-integral: some coefficient has a denominator divisible by {p}"
        )));
    }
    let deg = f.degree().unwrap_or(0);
    let mut arity = 0;
    let mut rest = deg;
    while rest > 0 {
        arity += 1;
        rest /= p.get() as usize;
    }
    let len = dense_len(p, arity)?;
    // per-variable factors C(q, a) as univariate coefficient vectors
    let factor: Vec<Vec<u32>> = small_binom_table(p)
        .into_iter()
        .map(|vals| {
            ReducedPoly::from_values(p, 1, vals)
                .expect("p values")
                .coeffs()
                .to_vec()
        })
        .collect();
    let mut coeffs = vec![0u32; len];
    for (d, c) in f.coeffs() {
        let c = reduce_rational(c, p).expect("p-integral");
        if c == 0 {
            continue;
        }
        let alpha = digits_of(p, *d, arity);
        for (idx, slot) in coeffs.iter_mut().enumerate() {
            let e = digits_of(p, idx, arity);
            let t = e.iter().zip(&alpha).fold(c, |acc, (ej, aj)| {
                p.mul(acc, factor[*aj as usize][*ej as usize])
            });
            *slot = p.add(*slot, t);
        }
    }
    Ok(QPolynomial::new(ReducedPoly::from_coeffs(
        p, arity, coeffs,
    )?))
}

/// The digit polynomial of a function `Z -> F_p` with period `p^r`, given
/// its values on `0..p^r`.
pub fn periodic_to_qpoly(values: &[u32], p: PrimeModulus) -> Result<QPolynomial> {
    let q = p.get() as usize;
    let mut r = 0;
    let mut len = 1usize;
    while len < values.len() {
        len = len.saturating_mul(q);
        r += 1;
    }
    if len != values.len() {
        return Err(Error::usage(format!(
            "{} values is not a power of p = {p}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| **v >= p.get()) {
        return Err(Error::usage(format!("value {v} is not below p = {p}")));
    }
    // m and its digit vector share the same dense index
    Ok(QPolynomial::new(ReducedPoly::from_values(
        p,
        r,
        values.to_vec(),
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::lucas_binom;
    use num_rational::BigRational;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn q(p: u64, arity: usize, terms: &[(&[u32], u32)]) -> QPolynomial {
        QPolynomial::new(
            ReducedPoly::from_terms(pm(p), arity, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
                .unwrap(),
        )
    }

    #[test]
    fn tau_examples() {
        let g = tau_reduce(&BinomialPoly::basis(2), pm(2)).unwrap();
        assert_eq!(g, q(2, 2, &[(&[0, 1], 1)]));
        let g3 = tau_reduce(&BinomialPoly::basis(3), pm(2)).unwrap();
        assert_eq!(g3, q(2, 2, &[(&[1, 1], 1)]));
        for m in 0..8 {
            assert_eq!(g.eval_at(m), lucas_binom(m as u128, 2, pm(2)));
            assert_eq!(g3.eval_at(m), lucas_binom(m as u128, 3, pm(2)));
        }
        let c = BinomialPoly::new([(0, BigRational::from_integer(7.into()))]);
        assert_eq!(tau_reduce(&c, pm(5)).unwrap(), q(5, 0, &[(&[], 2)]));
        let half = BinomialPoly::new([(1, BigRational::new(1.into(), 2.into()))]);
        assert!(tau_reduce(&half, pm(2)).is_err());
        assert_eq!(tau_reduce(&half, pm(3)).unwrap(), q(3, 1, &[(&[1], 2)]));
        assert_eq!(g.to_string(), "Q1");
    }

    #[test]
    fn periodic_examples() {
        assert_eq!(
            periodic_to_qpoly(&[4; 25], pm(5)).unwrap(),
            q(5, 2, &[(&[0, 0], 4)])
        );
        assert_eq!(
            periodic_to_qpoly(&[0, 1], pm(2)).unwrap(),
            q(2, 1, &[(&[1], 1)])
        );
        assert_eq!(
            periodic_to_qpoly(&[0, 0, 1, 1], pm(2)).unwrap(),
            q(2, 2, &[(&[0, 1], 1)])
        );
        assert!(periodic_to_qpoly(&[0, 1, 1], pm(2)).is_err());
        let vals: Vec<u32> = (0..27).map(|m| (m * m + 1) % 3).collect();
        let g = periodic_to_qpoly(&vals, pm(3)).unwrap();
        for m in -30i128..60 {
            assert_eq!(g.eval_at(m), vals[m.rem_euclid(27) as usize]);
        }
    }
}
