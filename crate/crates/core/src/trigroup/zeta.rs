//! The digit bijection between `Z/p^n` and `F_p^n`, least significant digit
//! first.

use crate::error::{Error, Result};
use crate::ffring::PrimeModulus;

/// `p^n` if it fits in a `u128`.
pub fn group_order(p: PrimeModulus, n: usize) -> Option<u128> {
    (p.get() as u128).checked_pow(n as u32)
}

/// Base-p digits of `m mod p^n`. Works for every `n`, including those where
/// `p^n` overflows: negative `m` is written in `p`-adic complement form.
pub fn zeta(p: PrimeModulus, n: usize, m: i128) -> Vec<u32> {
    let q = p.get() as u128;
    let mut digits = vec![0u32; n];
    if m >= 0 {
        let mut r = m as u128;
        for d in digits.iter_mut() {
            *d = (r % q) as u32;
            r /= q;
        }
    } else {
        // -a = complement(a - 1) in p-adic digits
        let mut r = m.unsigned_abs() - 1;
        for d in digits.iter_mut() {
            *d = (q - 1 - r % q) as u32;
            r /= q;
        }
    }
    digits
}

/// The integer in `[0, p^n)` with the given digits.
pub fn zeta_inv(p: PrimeModulus, v: &[u32]) -> Result<u128> {
    let q = p.get() as u128;
    v.iter().rev().try_fold(0u128, |acc, d| {
        if *d as u128 >= q {
            return Err(Error::usage(format!("digit {d} is not below p = {p}")));
        }
        acc.checked_mul(q)
            .and_then(|a| a.checked_add(*d as u128))
            .ok_or(Error::ResourceLimit {
                what: "digit vector value",
                size: u128::MAX,
                cap: u128::MAX,
            })
    })
}

/// `v + zeta(m)` with carries, discarding overflow past digit `n`; this is
/// `zeta(zeta_inv(v) + m)` without materialising the integer.
pub fn add_to_digits(p: PrimeModulus, v: &mut [u32], m: i128) {
    let q = p.get();
    let inc = zeta(p, v.len(), m);
    let mut carry = 0u32;
    for (d, a) in v.iter_mut().zip(inc) {
        let s = *d + a + carry;
        if s >= q {
            *d = s - q;
            carry = 1;
        } else {
            *d = s;
            carry = 0;
        }
    }
}
