use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest admissible modulus. Products of two residues then fit in a `u64`
/// with plenty of headroom for a handful of accumulated terms.
pub const MAX_PRIME: u64 = 1 << 16;

/// A prime `p` with `2 <= p <= 2^16`, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.0;
        let mut b = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.0;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.0 as u64 - 2))
        }
    }

    pub fn elem(self, v: u64) -> Fp {
        Fp::new(v, self)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division; `p` is at most 2^16.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: PrimeModulus,
}

impl Fp {
    pub fn new(v: u64, modulus: PrimeModulus) -> Self {
        Fp {
            value: modulus.reduce(v),
            modulus,
        }
    }

    pub fn from_i64(v: i64, modulus: PrimeModulus) -> Self {
        Fp {
            value: modulus.reduce_i64(v),
            modulus,
        }
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        Fp { value: 0, modulus }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Fp { value: 1, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        self.modulus.inv(self.value).map(|value| Fp {
            value,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, exp: u64) -> Fp {
        Fp {
            value: self.modulus.pow(self.value, exp),
            modulus: self.modulus,
        }
    }

    fn check(self, other: Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in F_p arithmetic"
        );
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
