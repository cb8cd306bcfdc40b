//! Tensor-product change of basis between the monomial coefficients of a
//! reduced polynomial and its value table on the full grid F_p^k.
//!
//! Both layouts use the same mixed-radix index, least significant variable
//! first: the coefficient of `x^a` and the value at the point `v` live at
//! `sum a_i p^(i-1)` and `sum v_i p^(i-1)` respectively. Transforming one
//! variable at a time costs `O(k p^(k+1))`.
//!
//! Per variable, the inverse transform is the expansion of the point
//! indicators `1 - (x - a)^(p-1)`: the constant coefficient is `f(0)` and the
//! coefficient of `x^e` (`e >= 1`) is `-sum_a f(a) a^(p-1-e)`.

use super::modulus::PrimeModulus;

/// Above this modulus the per-variable matrices are not tabulated.
const TABLE_LIMIT: u32 = 1024;

struct Axis {
    p: PrimeModulus,
    /// `forward[a * p + e] = a^e`, with `0^0 = 1`.
    forward: Option<Vec<u32>>,
    /// `inverse[e * p + a]` is the weight of `f(a)` in coefficient `e`.
    inverse: Option<Vec<u32>>,
}

impl Axis {
    fn new(p: PrimeModulus) -> Self {
        let q = p.get();
        if q > TABLE_LIMIT {
            return Axis {
                p,
                forward: None,
                inverse: None,
            };
        }
        let n = q as usize;
        let mut forward = vec![0u32; n * n];
        for a in 0..n {
            let mut pw = 1u32;
            for e in 0..n {
                forward[a * n + e] = pw;
                pw = p.mul(pw, a as u32);
            }
        }
        let mut inverse = vec![0u32; n * n];
        inverse[0] = 1;
        for e in 1..n {
            for a in 0..n {
                // a^(p-1-e), read off the forward table
                let w = forward[a * n + (n - 1 - e)];
                inverse[e * n + a] = p.neg(w);
            }
        }
        Axis {
            p,
            forward: Some(forward),
            inverse: Some(inverse),
        }
    }

    fn to_values(&self, fiber: &[u32], out: &mut [u32]) {
        let p = self.p;
        let n = fiber.len();
        match &self.forward {
            Some(m) => {
                for a in 0..n {
                    let row = &m[a * n..(a + 1) * n];
                    let mut acc = 0u64;
                    for (c, w) in fiber.iter().zip(row) {
                        acc += *c as u64 * *w as u64;
                        if acc >= 1 << 62 {
                            acc %= p.get() as u64;
                        }
                    }
                    out[a] = p.reduce(acc);
                }
            }
            None => {
                for (a, slot) in out.iter_mut().enumerate() {
                    let mut acc = 0u32;
                    for c in fiber.iter().rev() {
                        acc = p.add(p.mul(acc, a as u32), *c);
                    }
                    *slot = acc;
                }
            }
        }
    }

    fn to_coeffs(&self, fiber: &[u32], out: &mut [u32]) {
        let p = self.p;
        let n = fiber.len();
        match &self.inverse {
            Some(m) => {
                for e in 0..n {
                    let row = &m[e * n..(e + 1) * n];
                    let mut acc = 0u64;
                    for (v, w) in fiber.iter().zip(row) {
                        acc += *v as u64 * *w as u64;
                        if acc >= 1 << 62 {
                            acc %= p.get() as u64;
                        }
                    }
                    out[e] = p.reduce(acc);
                }
            }
            None => {
                out.iter_mut().for_each(|c| *c = 0);
                out[0] = fiber[0];
                for (a, &fa) in fiber.iter().enumerate() {
                    if fa == 0 {
                        continue;
                    }
                    // accumulate -f(a) a^j into coefficient p-1-j
                    let mut pw = 1u32;
                    for j in 0..n - 1 {
                        let e = n - 1 - j;
                        out[e] = p.sub(out[e], p.mul(fa, pw));
                        pw = p.mul(pw, a as u32);
                    }
                }
            }
        }
    }
}

fn apply_axes(
    data: &mut [u32],
    p: PrimeModulus,
    axes: std::ops::Range<usize>,
    f: impl Fn(&Axis, &[u32], &mut [u32]),
) {
    let q = p.get() as usize;
    let axis = Axis::new(p);
    let mut fiber = vec![0u32; q];
    let mut out = vec![0u32; q];
    for j in axes {
        let stride = q.pow(j as u32);
        let block = stride * q;
        debug_assert!(data.len().is_multiple_of(block));
        for base in (0..data.len()).step_by(block) {
            for o in 0..stride {
                for t in 0..q {
                    fiber[t] = data[base + o + t * stride];
                }
                f(&axis, &fiber, &mut out);
                for t in 0..q {
                    data[base + o + t * stride] = out[t];
                }
            }
        }
    }
}

/// Coefficients to values along the given variable axes (0-based), in place.
pub(crate) fn coeffs_to_values(data: &mut [u32], p: PrimeModulus, axes: std::ops::Range<usize>) {
    apply_axes(data, p, axes, |ax, f, o| ax.to_values(f, o));
}

/// Values to coefficients along the given variable axes (0-based), in place.
pub(crate) fn values_to_coeffs(data: &mut [u32], p: PrimeModulus, axes: std::ops::Range<usize>) {
    apply_axes(data, p, axes, |ax, f, o| ax.to_coeffs(f, o));
}
