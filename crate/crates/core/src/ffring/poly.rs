use std::fmt;

use super::counter::MultCounter;
use super::grid;
use super::modulus::{Fp, PrimeModulus};
use crate::error::{Error, Result};

/// Hard ceiling on dense coefficient vectors (entries).
pub const MAX_DENSE_LEN: usize = 1 << 26;

/// `p^k` as a dense length, or a resource error when it is too large.
pub fn dense_len(p: PrimeModulus, arity: usize) -> Result<usize> {
    let mut len: usize = 1;
    for _ in 0..arity {
        len = len
            .checked_mul(p.get() as usize)
            .filter(|l| *l <= MAX_DENSE_LEN)
            .ok_or(Error::ResourceLimit {
                what: "dense polynomial",
                size: (p.get() as u128).saturating_pow(arity as u32),
                cap: MAX_DENSE_LEN as u128,
            })?;
    }
    Ok(len)
}

/// Mixed-radix index of a digit vector, least significant entry first.
pub fn index_of(p: PrimeModulus, digits: &[u32]) -> usize {
    digits
        .iter()
        .rev()
        .fold(0usize, |acc, d| acc * p.get() as usize + *d as usize)
}

/// Inverse of [`index_of`] for a fixed number of digits.
pub fn digits_of(p: PrimeModulus, mut idx: usize, arity: usize) -> Vec<u32> {
    let q = p.get() as usize;
    (0..arity)
        .map(|_| {
            let d = idx % q;
            idx /= q;
            d as u32
        })
        .collect()
}

/// An element of `F_p[x_1..x_k] / (x_i^p - x_i)`.
///
/// Stored densely: the coefficient of `x^a` sits at index `sum a_i p^(i-1)`.
/// Every function `F_p^k -> F_p` has exactly one such representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedPoly {
    modulus: PrimeModulus,
    arity: usize,
    coeffs: Vec<u32>,
}

impl ReducedPoly {
    /// # Panics
    /// If `p^arity` exceeds [`MAX_DENSE_LEN`]; use [`dense_len`] first at
    /// API boundaries.
    pub fn zero(modulus: PrimeModulus, arity: usize) -> Self {
        let len = dense_len(modulus, arity).expect("dense polynomial too large");
        ReducedPoly {
            modulus,
            arity,
            coeffs: vec![0; len],
        }
    }

    pub fn constant(modulus: PrimeModulus, arity: usize, c: u64) -> Self {
        let mut f = Self::zero(modulus, arity);
        f.coeffs[0] = modulus.reduce(c);
        f
    }

    /// The coordinate function `x_{var+1}` (0-based `var`).
    pub fn variable(modulus: PrimeModulus, arity: usize, var: usize) -> Self {
        assert!(var < arity);
        let mut f = Self::zero(modulus, arity);
        f.coeffs[(modulus.get() as usize).pow(var as u32)] = 1 % modulus.get();
        f
    }

    /// Build from already reduced coefficients in mixed-radix order.
    pub fn from_coeffs(modulus: PrimeModulus, arity: usize, coeffs: Vec<u32>) -> Result<Self> {
        let len = dense_len(modulus, arity)?;
        if coeffs.len() != len {
            return Err(Error::usage(format!(
                "expected {len} coefficients for arity {arity}, got {}",
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| **c >= modulus.get()) {
            return Err(Error::usage(format!(
                "coefficient {c} is not reduced mod {modulus}"
            )));
        }
        Ok(ReducedPoly {
            modulus,
            arity,
            coeffs,
        })
    }

    /// Build from reduced `(exponents, coefficient)` terms; exponents must
    /// already be below `p`. Repeated exponents are summed.
    pub fn from_terms<I>(modulus: PrimeModulus, arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u32)>,
    {
        dense_len(modulus, arity)?;
        let mut f = Self::zero(modulus, arity);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: exps.len(),
                });
            }
            if let Some(e) = exps.iter().find(|e| **e >= modulus.get()) {
                return Err(Error::usage(format!(
                    "exponent {e} is not reduced (must be < p = {modulus}); \
                     apply x^p = x, i.e. e -> 1 + (e - 1) mod (p - 1)"
                )));
            }
            let idx = index_of(modulus, &exps);
            f.coeffs[idx] = modulus.add(f.coeffs[idx], modulus.reduce(c as u64));
        }
        Ok(f)
    }

    /// Reduce arbitrary exponents with `x^p = x`: an exponent `e >= 1`
    /// becomes `1 + (e - 1) mod (p - 1)`, and `0` stays `0`.
    pub fn canonical_reduce<I>(modulus: PrimeModulus, arity: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u64>, u64)>,
    {
        let pm1 = modulus.get() as u64 - 1;
        let terms: Vec<_> = raw
            .into_iter()
            .map(|(exps, c)| {
                let red = exps
                    .into_iter()
                    .map(|e| {
                        if e == 0 {
                            0
                        } else {
                            (1 + (e - 1) % pm1) as u32
                        }
                    })
                    .collect();
                (red, modulus.reduce(c))
            })
            .collect();
        Self::from_terms(modulus, arity, terms)
    }

    /// Interpolate the unique polynomial with the given value table, indexed
    /// like the coefficients (point `v` at `sum v_i p^(i-1)`).
    pub fn from_values(modulus: PrimeModulus, arity: usize, mut values: Vec<u32>) -> Result<Self> {
        let len = dense_len(modulus, arity)?;
        if values.len() != len {
            return Err(Error::usage(format!(
                "value table has {} entries, expected p^k = {len}",
                values.len()
            )));
        }
        if values.iter().any(|v| *v >= modulus.get()) {
            return Err(Error::usage("value table entry not reduced mod p"));
        }
        grid::values_to_coeffs(&mut values, modulus, 0..arity);
        Ok(ReducedPoly {
            modulus,
            arity,
            coeffs: values,
        })
    }

    /// Interpolate a function given as a closure on points.
    pub fn grid_interpolate(
        modulus: PrimeModulus,
        arity: usize,
        f: impl Fn(&[u32]) -> u32,
    ) -> Result<Self> {
        let len = dense_len(modulus, arity)?;
        let values = (0..len)
            .map(|i| modulus.reduce(f(&digits_of(modulus, i, arity)) as u64))
            .collect();
        Self::from_values(modulus, arity, values)
    }

    /// Indicator of the point `(p-1, ..., p-1)` in `F_p^i`; `delta(0) = 1`.
    pub fn delta(modulus: PrimeModulus, i: usize) -> Self {
        let mut values = vec![0u32; dense_len(modulus, i).expect("delta arity too large")];
        let last = values.len() - 1;
        values[last] = 1;
        Self::from_values(modulus, i, values).expect("table has the right size")
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.coeffs[index_of(self.modulus, exps)]
    }

    pub fn constant_coeff(&self) -> u32 {
        self.coeffs[0]
    }

    /// Coefficient of `(x_1 ... x_k)^(p-1)`.
    pub fn top_coeff(&self) -> u32 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Membership in `R_k^-`: no `(x_1 ... x_k)^(p-1)` term.
    pub fn in_r_minus(&self) -> bool {
        self.top_coeff() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|c| *c == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| **c != 0).count()
    }

    /// Nonzero terms in index order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (digits_of(self.modulus, i, self.arity), *c))
    }

    /// Value table on all of `F_p^k`.
    pub fn values(&self) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        grid::coeffs_to_values(&mut v, self.modulus, 0..self.arity);
        v
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| p.add(*a, *b))
            .collect();
        Ok(ReducedPoly {
            coeffs,
            ..self.clone_shape()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| p.sub(*a, *b))
            .collect();
        Ok(ReducedPoly {
            coeffs,
            ..self.clone_shape()
        })
    }

    pub fn neg(&self) -> Self {
        let p = self.modulus;
        ReducedPoly {
            coeffs: self.coeffs.iter().map(|c| p.neg(*c)).collect(),
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.modulus;
        ReducedPoly {
            coeffs: self.coeffs.iter().map(|a| p.mul(*a, c)).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        ReducedPoly {
            modulus: self.modulus,
            arity: self.arity,
            coeffs: Vec::new(),
        }
    }

    /// Product in the reduced ring. Sparse operands are convolved term by
    /// term; dense ones are multiplied pointwise on the value grid.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let conv_cost = self.num_terms() as u128 * other.num_terms() as u128;
        let grid_cost = 3 * self.coeffs.len() as u128 * self.modulus.get() as u128;
        if conv_cost <= grid_cost {
            Ok(self.mul_convolve(other))
        } else {
            Ok(self.mul_pointwise(other))
        }
    }

    pub(crate) fn mul_convolve(&self, other: &Self) -> Self {
        let p = self.modulus;
        let q = p.get();
        let mut out = ReducedPoly::zero(p, self.arity);
        let rhs: Vec<(Vec<u32>, u32)> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for (eb, cb) in &rhs {
                let mut idx = 0usize;
                for j in (0..self.arity).rev() {
                    let mut e = ea[j] + eb[j];
                    if e >= q {
                        e -= q - 1;
                    }
                    idx = idx * q as usize + e as usize;
                }
                out.coeffs[idx] = p.add(out.coeffs[idx], p.mul(ca, *cb));
            }
        }
        out
    }

    pub(crate) fn mul_pointwise(&self, other: &Self) -> Self {
        let p = self.modulus;
        let a = self.values();
        let b = other.values();
        let prod = a.iter().zip(&b).map(|(x, y)| p.mul(*x, *y)).collect();
        ReducedPoly::from_values(p, self.arity, prod).expect("same shape")
    }

    /// Reinterpret in more variables (the new ones are ignored).
    pub fn embed(&self, arity: usize) -> Result<Self> {
        if arity < self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: arity,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dense_len(self.modulus, arity)?, 0);
        Ok(ReducedPoly {
            modulus: self.modulus,
            arity,
            coeffs,
        })
    }

    /// Drop trailing variables that do not occur.
    pub fn truncate(&self, arity: usize) -> Result<Self> {
        if arity > self.arity {
            return self.embed(arity);
        }
        let len = dense_len(self.modulus, arity)?;
        if self.coeffs[len..].iter().any(|c| *c != 0) {
            return Err(Error::usage(format!(
                "polynomial depends on variables beyond x_{arity}"
            )));
        }
        Ok(ReducedPoly {
            modulus: self.modulus,
            arity,
            coeffs: self.coeffs[..len].to_vec(),
        })
    }

    /// Value at a point.
    pub fn evaluate(&self, v: &[u32]) -> Fp {
        let mut c = MultCounter::new();
        self.evaluate_counted(v, &mut c)
    }

    /// Value at a point by nested Horner evaluation in the last variable,
    /// charging each multiplication to `counter`.
    pub fn evaluate_counted(&self, v: &[u32], counter: &mut MultCounter) -> Fp {
        assert_eq!(v.len(), self.arity, "point arity mismatch");
        let value = horner(self.modulus, &self.coeffs, v, counter).unwrap_or(0);
        Fp::new(value as u64, self.modulus)
    }

    /// `f(G_1, ..., G_k)` where each `G_j` has a common arity `k'`.
    pub fn substitute(&self, subs: &[ReducedPoly]) -> Result<Self> {
        if subs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: subs.len(),
            });
        }
        let Some(first) = subs.first() else {
            // constant polynomial, no variables to replace
            return Ok(self.clone());
        };
        let target = first.arity;
        for g in subs {
            if g.modulus != self.modulus {
                return Err(Error::ModulusMismatch(self.modulus.get(), g.modulus.get()));
            }
            if g.arity != target {
                return Err(Error::ArityMismatch {
                    expected: target,
                    found: g.arity,
                });
            }
        }
        let p = self.modulus;
        let q = p.get() as usize;
        let f_vals = self.values();
        let g_vals: Vec<Vec<u32>> = subs.iter().map(|g| g.values()).collect();
        let len = dense_len(p, target)?;
        let out: Vec<u32> = (0..len)
            .map(|w| {
                let idx = g_vals
                    .iter()
                    .rev()
                    .fold(0usize, |acc, gv| acc * q + gv[w] as usize);
                f_vals[idx]
            })
            .collect();
        ReducedPoly::from_values(p, target, out)
    }

    /// Fix the first `vals.len()` variables, returning a polynomial in the
    /// remaining ones.
    pub fn partial_eval_prefix(&self, vals: &[u32]) -> Result<Self> {
        let r = vals.len();
        if r > self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: r,
            });
        }
        let p = self.modulus;
        let low = dense_len(p, r)?;
        // monomial values over the fixed variables
        let mut mono = vec![1u32 % p.get(); low];
        for (i, m) in mono.iter_mut().enumerate() {
            for (j, e) in digits_of(p, i, r).into_iter().enumerate() {
                *m = p.mul(*m, p.pow(vals[j], e as u64));
            }
        }
        let rest = self.arity - r;
        let mut out = ReducedPoly::zero(p, rest);
        for (h, slot) in out.coeffs.iter_mut().enumerate() {
            let block = &self.coeffs[h * low..(h + 1) * low];
            let mut acc = 0u64;
            for (c, m) in block.iter().zip(&mono) {
                acc = (acc + *c as u64 * *m as u64) % p.get() as u64;
            }
            *slot = acc as u32;
        }
        Ok(out)
    }

    /// Render with custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

fn horner(p: PrimeModulus, coeffs: &[u32], v: &[u32], counter: &mut MultCounter) -> Option<u32> {
    let k = v.len();
    if k == 0 {
        return (coeffs[0] != 0).then_some(coeffs[0]);
    }
    let q = p.get() as usize;
    let chunk = coeffs.len() / q;
    let x = v[k - 1];
    let mut acc: Option<u32> = None;
    for j in (0..q).rev() {
        let sub = horner(p, &coeffs[j * chunk..(j + 1) * chunk], &v[..k - 1], counter);
        acc = match (acc, sub) {
            (None, s) => s,
            (Some(a), s) => {
                counter.tick();
                Some(p.add(p.mul(a, x), s.unwrap_or(0)))
            }
        };
    }
    acc
}

struct PolyDisplay<'a> {
    poly: &'a ReducedPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exps, c) in self.poly.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(j, e)| {
                    let name = self
                        .names
                        .get(j)
                        .cloned()
                        .unwrap_or_else(|| format!("x{}", j + 1));
                    if *e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", mono.join("*"))?,
                (_, false) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
        let shown = PolyDisplay {
            poly: self,
            names: &names,
        };
        write!(f, "{shown}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(p: u64, k: usize, terms: &[(&[u32], u32)]) -> ReducedPoly {
        ReducedPoly::from_terms(pm(p), k, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn canonical_reduce_examples() {
        let f = ReducedPoly::canonical_reduce(pm(2), 1, [(vec![2], 1)]).unwrap();
        assert_eq!(f, poly(2, 1, &[(&[1], 1)]));
        let f = ReducedPoly::canonical_reduce(pm(3), 1, [(vec![5], 2)]).unwrap();
        assert_eq!(f, poly(3, 1, &[(&[1], 2)]));
        // both sides agree as functions
        for x in 0..3u32 {
            assert_eq!(f.evaluate(&[x]).value(), pm(3).mul(2, pm(3).pow(x, 5)));
        }
        let z = ReducedPoly::canonical_reduce(pm(5), 2, [(vec![0, 0], 0)]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn canonical_reduce_is_idempotent() {
        let raw = vec![
            (vec![7u64, 0, 4], 3u64),
            (vec![1, 9, 2], 4),
            (vec![0, 0, 0], 11),
        ];
        let f = ReducedPoly::canonical_reduce(pm(5), 3, raw).unwrap();
        let again = ReducedPoly::canonical_reduce(
            pm(5),
            3,
            f.terms()
                .map(|(e, c)| (e.into_iter().map(u64::from).collect(), c as u64)),
        )
        .unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn ring_arith_examples() {
        let x = poly(2, 1, &[(&[1], 1)]);
        assert_eq!(x.mul(&x).unwrap(), x);
        let two_x = poly(3, 1, &[(&[1], 2)]);
        assert_eq!(two_x.add(&two_x).unwrap(), poly(3, 1, &[(&[1], 1)]));
        let x1 = poly(2, 2, &[(&[1, 0], 1)]);
        let x2 = poly(2, 2, &[(&[0, 1], 1)]);
        assert_eq!(x1.mul(&x2).unwrap(), poly(2, 2, &[(&[1, 1], 1)]));
    }

    #[test]
    fn mismatches_are_usage_errors() {
        let a = poly(2, 1, &[(&[1], 1)]);
        let b = poly(2, 2, &[(&[1, 0], 1)]);
        let c = poly(3, 1, &[(&[1], 1)]);
        assert!(matches!(a.add(&b), Err(Error::ArityMismatch { .. })));
        assert!(matches!(a.mul(&c), Err(Error::ModulusMismatch(2, 3))));
    }

    #[test]
    fn evaluate_examples() {
        let f = poly(2, 2, &[(&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(f.evaluate(&[1, 1]).value(), 0);
        assert_eq!(ReducedPoly::zero(pm(7), 3).evaluate(&[1, 2, 3]).value(), 0);
        let g = poly(3, 1, &[(&[2], 2), (&[1], 1)]);
        assert_eq!(g.evaluate(&[2]).value(), 1);
    }

    #[test]
    fn substitute_examples() {
        let p = pm(2);
        let g1 = poly(2, 1, &[(&[1], 1), (&[0], 1)]);
        let g2 = poly(2, 1, &[(&[1], 1)]);
        let x1 = poly(2, 2, &[(&[1, 0], 1)]);
        assert_eq!(x1.substitute(&[g1.clone(), g2.clone()]).unwrap(), g1);
        let f = poly(2, 2, &[(&[1, 1], 1)]);
        assert!(f.substitute(&[g1.clone(), g2.clone()]).unwrap().is_zero());
        let c = ReducedPoly::constant(p, 2, 1);
        assert_eq!(
            c.substitute(&[g1.clone(), g2]).unwrap(),
            ReducedPoly::constant(p, 1, 1)
        );
        assert!(matches!(
            f.substitute(&[g1]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn grid_interpolate_examples() {
        let z = ReducedPoly::from_values(pm(3), 2, vec![0; 9]).unwrap();
        assert!(z.is_zero());
        let x = ReducedPoly::from_values(pm(2), 1, vec![0, 1]).unwrap();
        assert_eq!(x, poly(2, 1, &[(&[1], 1)]));
        let d = ReducedPoly::from_values(pm(3), 1, vec![0, 0, 1]).unwrap();
        assert_eq!(d, poly(3, 1, &[(&[2], 2), (&[1], 1)]));
        assert!(ReducedPoly::from_values(pm(3), 1, vec![0, 0]).is_err());
    }

    #[test]
    fn grid_interpolate_matches_exhaustive_search() {
        // all 27 univariate polynomials over F_3: exactly one matches each table
        let p = pm(3);
        for table in 0..27u32 {
            let vals = vec![table % 3, (table / 3) % 3, table / 9];
            let mut hits = Vec::new();
            for code in 0..27u32 {
                let cand = ReducedPoly::from_coeffs(p, 1, vec![code % 3, (code / 3) % 3, code / 9])
                    .unwrap();
                if (0..3u32).all(|x| cand.evaluate(&[x]).value() == vals[x as usize]) {
                    hits.push(cand);
                }
            }
            assert_eq!(hits.len(), 1);
            assert_eq!(ReducedPoly::from_values(p, 1, vals).unwrap(), hits[0]);
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            ReducedPoly::delta(pm(5), 0),
            ReducedPoly::constant(pm(5), 0, 1)
        );
        assert_eq!(ReducedPoly::delta(pm(2), 1), poly(2, 1, &[(&[1], 1)]));
        assert_eq!(
            ReducedPoly::delta(pm(3), 1),
            poly(3, 1, &[(&[2], 2), (&[1], 1)])
        );
    }

    #[test]
    fn r_minus_examples() {
        assert!(ReducedPoly::zero(pm(2), 2).in_r_minus());
        assert!(!poly(2, 2, &[(&[1, 1], 1)]).in_r_minus());
        assert!(!poly(3, 1, &[(&[2], 2), (&[1], 1)]).in_r_minus());
        assert!(poly(3, 1, &[(&[1], 1)]).in_r_minus());
    }

    #[test]
    fn horner_counts_are_bounded() {
        // fully dense polynomial in k variables costs p^k - 1 Horner steps
        let p = pm(3);
        let f = ReducedPoly::from_coeffs(p, 3, vec![1; 27]).unwrap();
        let mut c = MultCounter::new();
        f.evaluate_counted(&[1, 2, 0], &mut c);
        assert_eq!(c.count(), 26);
    }

    #[test]
    fn partial_eval_prefix_agrees_with_full() {
        let p = pm(3);
        let f =
            ReducedPoly::from_coeffs(p, 3, (0..27u32).map(|i| (i * 7 + 1) % 3).collect()).unwrap();
        let g = f.partial_eval_prefix(&[2, 1]).unwrap();
        for z in 0..3u32 {
            assert_eq!(g.evaluate(&[z]), f.evaluate(&[2, 1, z]));
        }
    }

    #[test]
    fn display() {
        assert_eq!(
            poly(3, 1, &[(&[2], 2), (&[1], 1)]).to_string(),
            "x1 + 2*x1^2"
        );
        assert_eq!(ReducedPoly::zero(pm(2), 1).to_string(), "0");
    }
}
