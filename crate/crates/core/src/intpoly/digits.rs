use crate::ffring::PrimeModulus;

/// `C(a, b) mod p` for `a, b < p`.
fn small_binom(p: PrimeModulus, a: u32, b: u32) -> u32 {
    if b > a {
        return 0;
    }
    let (mut num, mut den) = (1u32, 1u32);
    for j in 0..b {
        num = p.mul(num, a - j);
        den = p.mul(den, j + 1);
    }
    p.mul(num, p.inv(den).expect("j + 1 < p"))
}

/// `table[a][q] = C(q, a) mod p` for `a, q < p`.
pub(crate) fn small_binom_table(p: PrimeModulus) -> Vec<Vec<u32>> {
    (0..p.get())
        .map(|a| (0..p.get()).map(|q| small_binom(p, q, a)).collect())
        .collect()
}

/// `C(m, d) mod p` as the product of digitwise binomials.
pub fn lucas_binom(m: u128, d: u128, p: PrimeModulus) -> u32 {
    let q = p.get() as u128;
    let (mut m, mut d) = (m, d);
    let mut acc = 1u32;
    while d > 0 {
        acc = p.mul(acc, small_binom(p, (m % q) as u32, (d % q) as u32));
        if acc == 0 {
            return 0;
        }
        m /= q;
        d /= q;
    }
    acc
}

/// `Q_i(m)`: digit `i` of `m mod p^(i+1)`, so negative `m` follow by
/// periodicity.
pub fn q_eval(i: usize, m: i128, p: PrimeModulus) -> u32 {
    let q = p.get() as i128;
    match q.checked_pow(i as u32 + 1) {
        Some(period) => (m.rem_euclid(period) / q.pow(i as u32)) as u32,
        // beyond i128 every representable m has digit 0, or p-1 in complement
        None if m >= 0 => 0,
        None => p.get() - 1,
    }
}

/// `(Q_0(m), ..., Q_{r-1}(m))`.
pub fn q_digits(r: usize, m: i128, p: PrimeModulus) -> Vec<u32> {
    crate::trigroup::zeta(p, r, m)
}
