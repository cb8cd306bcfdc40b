use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ffring::{MultCounter, PrimeModulus, ReducedPoly};

/// A sparse monomial: exponent vector and nonzero coefficient.
pub type Term = (Vec<u32>, u32);

/// The map `(x_1, ..., x_i + sign * g, ..., x_n)` where `g` never reads
/// `x_i`; its inverse is the same factor with the sign flipped.
///
/// `g` is kept sparse so that factors of high arity stay cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryFactor {
    modulus: PrimeModulus,
    target: usize,
    sign: i8,
    arity: usize,
    terms: Vec<Term>,
}

/// Orders exponent vectors like the dense index (last variable most
/// significant) without computing the index.
fn index_order(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

impl ElementaryFactor {
    /// `target` is 1-based. Repeated exponents are merged and zero
    /// coefficients dropped.
    pub fn new<I>(
        modulus: PrimeModulus,
        target: usize,
        sign: i8,
        arity: usize,
        terms: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        if target == 0 {
            return Err(Error::usage("factor target index is 1-based"));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::usage(format!(
                "factor sign must be 1 or -1, got {sign}"
            )));
        }
        let mut merged: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: exps.len(),
                });
            }
            if let Some(e) = exps.iter().find(|e| **e >= modulus.get()) {
                return Err(Error::usage(format!(
                    "exponent {e} is not below p = {modulus}; reduce it with x^p = x first"
                )));
            }
            if target <= arity && exps[target - 1] != 0 {
                return Err(Error::usage(format!(
                    "factor with target x_{target} must not depend on x_{target}"
                )));
            }
            let slot = merged.entry(exps).or_insert(0);
            *slot = modulus.add(*slot, modulus.reduce(c));
        }
        let mut terms: Vec<Term> = merged.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| index_order(&a.0, &b.0));
        Ok(ElementaryFactor {
            modulus,
            target,
            sign,
            arity,
            terms,
        })
    }

    pub fn from_poly(target: usize, sign: i8, g: &ReducedPoly) -> Result<Self> {
        Self::new(
            g.modulus(),
            target,
            sign,
            g.arity(),
            g.terms().map(|(e, c)| (e, c as u64)),
        )
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ElementaryFactor {
            sign: -self.sign,
            ..self.clone()
        }
    }

    /// Dense form of `g`.
    pub fn to_poly(&self) -> Result<ReducedPoly> {
        ReducedPoly::from_terms(self.modulus, self.arity, self.terms.iter().cloned())
    }

    /// `g(v)`, charging every field multiplication to `counter`.
    ///
    /// Each power is taken by square-and-multiply; multiplications by a unit
    /// coefficient are skipped. The count depends only on the exponents,
    /// never on `v`.
    pub fn eval_g(&self, v: &[u32], counter: &mut MultCounter) -> u32 {
        let p = self.modulus;
        let mut sum = 0u32;
        for (exps, c) in &self.terms {
            let mut mono: Option<u32> = None;
            for (x, e) in v.iter().zip(exps).filter(|(_, e)| **e > 0) {
                let pw = pow_counted(p, *x, *e, counter);
                mono = Some(match mono {
                    None => pw,
                    Some(acc) => {
                        counter.tick();
                        p.mul(acc, pw)
                    }
                });
            }
            let term = match mono {
                None => *c,
                Some(m) if *c == 1 => m,
                Some(m) => {
                    counter.tick();
                    p.mul(m, *c)
                }
            };
            sum = p.add(sum, term);
        }
        sum
    }

    /// `v_i <- v_i + sign * g(v)` in place.
    pub fn apply(&self, v: &mut [u32], counter: &mut MultCounter) {
        self.apply_signed(v, counter, false);
    }

    /// The inverse factor, applied in place.
    pub fn apply_inverse(&self, v: &mut [u32], counter: &mut MultCounter) {
        self.apply_signed(v, counter, true);
    }

    fn apply_signed(&self, v: &mut [u32], counter: &mut MultCounter, flip: bool) {
        let g = self.eval_g(v, counter);
        let slot = &mut v[self.target - 1];
        *slot = if (self.sign > 0) != flip {
            self.modulus.add(*slot, g)
        } else {
            self.modulus.sub(*slot, g)
        };
    }
}

/// `x^e` for `e >= 1` by left-to-right binary powering.
fn pow_counted(p: PrimeModulus, x: u32, e: u32, counter: &mut MultCounter) -> u32 {
    debug_assert!(e >= 1);
    let mut acc = x;
    for bit in (0..u32::BITS - 1 - e.leading_zeros()).rev() {
        acc = p.mul(acc, acc);
        counter.tick();
        if e >> bit & 1 == 1 {
            acc = p.mul(acc, x);
            counter.tick();
        }
    }
    acc
}
