use std::fmt;

use rand::Rng;

use super::zeta::group_order;
use crate::error::{Error, Result};
use crate::ffring::{dense_len, MultCounter, PrimeModulus, ReducedPoly};

/// An element `(x_1 + g_1, x_2 + g_2(x_1), ..., x_n + g_n(x_1..x_{n-1}))` of
/// the strictly triangular permutation group of `F_p^n`.
///
/// `components()[i]` is `g_{i+1}`, a reduced polynomial of arity `i`.
/// Products are function composition: `a.compose(&b)` is `a ∘ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangularPermutation {
    modulus: PrimeModulus,
    components: Vec<ReducedPoly>,
}

impl TriangularPermutation {
    pub fn new(modulus: PrimeModulus, components: Vec<ReducedPoly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::usage(
                "a triangular map needs at least one coordinate",
            ));
        }
        for (i, g) in components.iter().enumerate() {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.get(), g.modulus().get()));
            }
            if g.arity() != i {
                return Err(Error::ArityMismatch {
                    expected: i,
                    found: g.arity(),
                });
            }
        }
        Ok(TriangularPermutation {
            modulus,
            components,
        })
    }

    fn check_size(p: PrimeModulus, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::usage("n must be at least 1"));
        }
        dense_len(p, n - 1).map(|_| ())
    }

    pub fn identity(p: PrimeModulus, n: usize) -> Result<Self> {
        Self::check_size(p, n)?;
        Ok(TriangularPermutation {
            modulus: p,
            components: (0..n).map(|i| ReducedPoly::zero(p, i)).collect(),
        })
    }

    /// `(x_1 + delta_0, x_2 + delta_1, ..., x_n + delta_{n-1})`, the map that
    /// adds one to the base-p number whose digits are the coordinates.
    pub fn delta_map(p: PrimeModulus, n: usize) -> Result<Self> {
        Self::check_size(p, n)?;
        Ok(TriangularPermutation {
            modulus: p,
            components: (0..n).map(|i| ReducedPoly::delta(p, i)).collect(),
        })
    }

    /// Uniformly random group element.
    pub fn random<R: Rng + ?Sized>(p: PrimeModulus, n: usize, rng: &mut R) -> Result<Self> {
        Self::check_size(p, n)?;
        let q = p.get();
        let components = (0..n)
            .map(|i| {
                let len = dense_len(p, i).expect("checked above");
                let coeffs = (0..len).map(|_| rng.gen_range(0..q)).collect();
                ReducedPoly::from_coeffs(p, i, coeffs).expect("reduced")
            })
            .collect();
        Ok(TriangularPermutation {
            modulus: p,
            components,
        })
    }

    /// Uniformly random element of maximal orbit.
    pub fn random_maximal<R: Rng + ?Sized>(p: PrimeModulus, n: usize, rng: &mut R) -> Result<Self> {
        Self::check_size(p, n)?;
        let q = p.get();
        let components = (0..n)
            .map(|i| {
                let len = dense_len(p, i).expect("checked above");
                let mut coeffs: Vec<u32> = (0..len).map(|_| rng.gen_range(0..q)).collect();
                coeffs[len - 1] = rng.gen_range(1..q);
                ReducedPoly::from_coeffs(p, i, coeffs).expect("reduced")
            })
            .collect();
        Ok(TriangularPermutation {
            modulus: p,
            components,
        })
    }

    /// Every element of the group, for tiny `p` and `n` (at most 2^20 elements).
    pub fn all(p: PrimeModulus, n: usize) -> Result<Vec<Self>> {
        Self::check_size(p, n)?;
        let lens: Vec<usize> = (0..n)
            .map(|i| dense_len(p, i).expect("checked above"))
            .collect();
        let slots: usize = lens.iter().sum();
        let q = p.get() as u128;
        let count = q
            .checked_pow(slots as u32)
            .filter(|c| *c <= 1 << 20)
            .ok_or(Error::ResourceLimit {
                what: "group enumeration",
                size: q.saturating_pow(slots.min(128) as u32),
                cap: 1 << 20,
            })?;
        let mut out = Vec::with_capacity(count as usize);
        let mut flat = vec![0u32; slots];
        for _ in 0..count {
            let mut offset = 0;
            let components = lens
                .iter()
                .enumerate()
                .map(|(i, len)| {
                    let c = flat[offset..offset + len].to_vec();
                    offset += len;
                    ReducedPoly::from_coeffs(p, i, c).expect("reduced")
                })
                .collect();
            out.push(TriangularPermutation {
                modulus: p,
                components,
            });
            for d in flat.iter_mut() {
                *d += 1;
                if *d < p.get() {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ReducedPoly] {
        &self.components
    }

    /// `p^n`, when representable.
    pub fn group_order(&self) -> Option<u128> {
        group_order(self.modulus, self.n())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        if self.n() != other.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    fn check_point(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        if let Some(d) = v.iter().find(|d| **d >= self.modulus.get()) {
            return Err(Error::usage(format!(
                "coordinate {d} is not below p = {}",
                self.modulus
            )));
        }
        Ok(())
    }

    /// `w_i = v_i + g_i(v_1..v_{i-1})`.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        let mut counter = MultCounter::new();
        self.apply_counted(v, &mut counter)
    }

    pub fn apply_counted(&self, v: &[u32], counter: &mut MultCounter) -> Result<Vec<u32>> {
        self.check_point(v)?;
        let p = self.modulus;
        Ok(self
            .components
            .iter()
            .enumerate()
            .map(|(i, g)| p.add(v[i], g.evaluate_counted(&v[..i], counter).value()))
            .collect())
    }

    /// Value tables of every `g_i` on its own grid `F_p^(i-1)`.
    pub fn value_tables(&self) -> Vec<Vec<u32>> {
        self.components.iter().map(|g| g.values()).collect()
    }

    /// The permutation induced on the first `m` coordinates, as an index
    /// table on `[0, p^m)` (mixed radix, least significant first).
    pub fn prefix_table(&self, m: usize) -> Result<Vec<u32>> {
        if m > self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: m,
            });
        }
        let tables = self.components[..m]
            .iter()
            .map(|g| g.values())
            .collect::<Vec<_>>();
        Ok(prefix_table_from(self.modulus, &tables, m))
    }

    /// Table of the whole permutation on `[0, p^n)`.
    pub fn point_table(&self) -> Result<Vec<u32>> {
        self.prefix_table(self.n())
    }

    /// Rebuild a map from its index table, checking strict triangularity.
    pub fn from_point_table(p: PrimeModulus, n: usize, table: &[u32]) -> Result<Self> {
        let len = dense_len(p, n)?;
        if table.len() != len || n == 0 {
            return Err(Error::usage(format!(
                "table has {} entries, expected {len}",
                table.len()
            )));
        }
        let q = p.get() as usize;
        let mut components = Vec::with_capacity(n);
        let mut stride = 1usize;
        for i in 0..n {
            let vals = (0..stride)
                .map(|u| ((table[u] as usize / stride) % q) as u32)
                .collect();
            components.push(ReducedPoly::from_values(p, i, vals)?);
            stride *= q;
        }
        let sigma = TriangularPermutation {
            modulus: p,
            components,
        };
        if sigma.point_table()? != table {
            return Err(Error::Domain(
                "table is not a strictly triangular map".into(),
            ));
        }
        Ok(sigma)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let p = self.modulus;
        let n = self.n();
        let outer = self.value_tables();
        let inner = other.value_tables();
        // `other` on the first n-1 coordinates
        let t = prefix_table_from(p, &inner, n - 1);
        let q = p.get() as usize;
        let mut components = Vec::with_capacity(n);
        let mut stride = 1usize;
        for i in 0..n {
            let vals = (0..stride)
                .map(|u| p.add(inner[i][u], outer[i][t[u] as usize % stride]))
                .collect();
            components.push(ReducedPoly::from_values(p, i, vals)?);
            stride *= q;
        }
        Ok(TriangularPermutation {
            modulus: p,
            components,
        })
    }

    /// Group inverse, i.e. the factor chain `(x_n - g_n) ∘ ... ∘ (x_1 - g_1)`
    /// evaluated pointwise and interpolated.
    pub fn invert(&self) -> Self {
        let p = self.modulus;
        let n = self.n();
        let q = p.get() as usize;
        let tables = self.value_tables();
        let len = dense_len(p, n - 1).expect("fits, as the map itself does");
        // preimage of u (last coordinate 0), coordinates solved one at a time
        let mut pre = vec![0u32; len * n];
        for u in 0..len {
            let mut rest = u;
            let mut idx = 0usize;
            let mut stride = 1usize;
            for i in 0..n {
                let ui = (rest % q) as u32;
                rest /= q;
                let vi = p.sub(ui, tables[i][idx]);
                pre[u * n + i] = vi;
                idx += vi as usize * stride;
                stride *= q;
            }
        }
        let mut components = Vec::with_capacity(n);
        let mut stride = 1usize;
        for i in 0..n {
            let vals = (0..stride).map(|u| pre[u * n + i]).collect();
            components.push(ReducedPoly::from_values(p, i, vals).expect("sized"));
            stride *= q;
        }
        TriangularPermutation {
            modulus: p,
            components,
        }
    }

    /// `self^m` by square-and-multiply; `m` is reduced mod `p^n` when that
    /// is representable.
    pub fn power(&self, m: i128) -> Self {
        let (base, mut e) = match self.group_order() {
            Some(order) => (self.clone(), m.rem_euclid(order as i128) as u128),
            None if m < 0 => (self.invert(), m.unsigned_abs()),
            None => (self.clone(), m as u128),
        };
        let mut acc = TriangularPermutation::identity(self.modulus, self.n()).expect("same size");
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq).expect("same shape");
            }
        }
        acc
    }

    /// First `m` components, as a map of `F_p^m`.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.n() {
            return Err(Error::usage(format!(
                "cannot restrict a map on {} coordinates to {m}",
                self.n()
            )));
        }
        Ok(TriangularPermutation {
            modulus: self.modulus,
            components: self.components[..m].to_vec(),
        })
    }

    /// Append a component, producing a map on one more coordinate.
    pub fn extend(&self, g: ReducedPoly) -> Result<Self> {
        let mut components = self.components.clone();
        components.push(g);
        TriangularPermutation::new(self.modulus, components)
    }

    /// Coefficients `c_i` of `(x_1 ... x_{i-1})^(p-1)` in each `g_i`.
    pub fn top_coeffs(&self) -> Vec<u32> {
        self.components.iter().map(|g| g.top_coeff()).collect()
    }

    /// Ostafe's criterion: a single cycle of length `p^n` iff every `c_i` is
    /// nonzero. Returns the invariant vector `(c_1..c_n)` in that case.
    pub fn is_maximal_orbit(&self) -> Option<Vec<u32>> {
        let c = self.top_coeffs();
        c.iter().all(|ci| *ci != 0).then_some(c)
    }

    pub(crate) fn require_maximal(&self) -> Result<Vec<u32>> {
        match self.top_coeffs().iter().position(|c| *c == 0) {
            Some(i) => Err(Error::NotMaximalOrbit { index: i + 1 }),
            None => Ok(self.top_coeffs()),
        }
    }

    /// `g_1 = 1` and every other `g_i` has zero constant term, i.e. the
    /// origin maps to `(1, 0, ..., 0)`.
    pub fn is_standard_form(&self) -> bool {
        self.components[0].constant_coeff() == 1
            && self.components[1..].iter().all(|g| g.constant_coeff() == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|g| g.is_zero())
    }
}

/// Index table of the prefix map on `[0, p^m)` from component value tables.
pub(crate) fn prefix_table_from(p: PrimeModulus, tables: &[Vec<u32>], m: usize) -> Vec<u32> {
    let q = p.get() as usize;
    let len = q.pow(m as u32);
    (0..len)
        .map(|idx| {
            let mut out = 0usize;
            let mut stride = 1usize;
            let mut rest = idx;
            for t in &tables[..m] {
                let vi = (rest % q) as u32;
                rest /= q;
                let wi = p.add(vi, t[idx % stride]);
                out += wi as usize * stride;
                stride *= q;
            }
            out as u32
        })
        .collect()
}

impl fmt::Display for TriangularPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if g.is_zero() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{} + {}", i + 1, g)?;
            }
        }
        write!(f, ")")
    }
}
