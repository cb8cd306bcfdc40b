use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `sum c_i * C(T, i)` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BinomialPoly {
    coeffs: BTreeMap<usize, BigRational>,
}

/// Generalised binomial coefficient `m (m-1) ... (m-i+1) / i!`, valid for
/// every integer `m`.
pub fn binomial(m: &BigInt, i: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= m - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

impl BinomialPoly {
    /// Zero coefficients are dropped.
    pub fn new<I: IntoIterator<Item = (usize, BigRational)>>(coeffs: I) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in coeffs {
            let slot = map.entry(i).or_insert_with(BigRational::zero);
            *slot += c;
        }
        map.retain(|_, c: &mut BigRational| !c.is_zero());
        BinomialPoly { coeffs: map }
    }

    /// `C(T, d)`.
    pub fn basis(d: usize) -> Self {
        Self::new([(d, BigRational::one())])
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(&i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Integer valued on `Z` exactly when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Every denominator prime to `p`.
    pub fn is_p_integral(&self, p: u32) -> bool {
        let p = BigInt::from(p);
        self.coeffs.values().all(|c| !c.denom().is_multiple_of(&p))
    }

    pub fn eval(&self, m: &BigInt) -> BigRational {
        self.coeffs
            .iter()
            .map(|(i, c)| c * BigRational::from_integer(binomial(m, *i)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Coefficients in the power basis `1, T, T^2, ...`.
    pub fn to_power_basis(&self) -> Vec<BigRational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut out = vec![BigRational::zero(); deg + 1];
        // falling factorial T (T-1) ... (T-i+1), grown one factor at a time
        let mut falling = vec![BigInt::one()];
        let mut fact = BigInt::one();
        for i in 0..=deg {
            if i > 0 {
                let shift = BigInt::from(i - 1);
                let mut next = vec![BigInt::zero(); falling.len() + 1];
                for (k, a) in falling.iter().enumerate() {
                    next[k + 1] += a;
                    next[k] -= a * &shift;
                }
                falling = next;
                fact *= BigInt::from(i);
            }
            if let Some(c) = self.coeffs.get(&i) {
                for (k, a) in falling.iter().enumerate() {
                    out[k] += c * BigRational::new(a.clone(), fact.clone());
                }
            }
        }
        out
    }
}

/// Expand a polynomial given by power-basis coefficients (constant term
/// first) in the binomial basis: `c_i` is the `i`-th forward difference at 0.
pub fn binom_expand(poly: &[BigRational]) -> BinomialPoly {
    let mut vals: Vec<BigRational> = (0..poly.len())
        .map(|t| {
            let t = BigRational::from_integer(BigInt::from(t));
            poly.iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * &t + c)
        })
        .collect();
    let mut coeffs = Vec::with_capacity(vals.len());
    for i in 0..vals.len() {
        coeffs.push((i, vals[0].clone()));
        for k in 0..vals.len() - 1 - i {
            vals[k] = &vals[k + 1] - &vals[k];
        }
    }
    BinomialPoly::new(coeffs)
}

/// `f(m)`.
pub fn binom_eval(f: &BinomialPoly, m: &BigInt) -> BigRational {
    f.eval(m)
}

impl fmt::Display for BinomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            let sep = match (k, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sep}C(T,{i})")?;
            } else {
                write!(f, "{sep}{a}*C(T,{i})")?;
            }
        }
        Ok(())
    }
}
