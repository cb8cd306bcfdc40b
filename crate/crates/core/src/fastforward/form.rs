use super::factor::ElementaryFactor;
use crate::error::{Error, Result};
use crate::ffring::{MultCounter, PrimeModulus};
use crate::trigroup::{
    add_to_digits, conjugate_to_delta, group_order, DiagonalMap, TriangularPermutation,
};

/// Provenance of a generated form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeedInfo {
    pub algorithm: String,
    pub seed: u64,
    pub budget: usize,
}

/// `σ = W ∘ Φ ∘ D ∘ Δ ∘ D^{-1} ∘ Φ^{-1} ∘ W^{-1}` with `Φ` and `W` products
/// of elementary factors (listed leftmost first) and `Δ` the base-p
/// increment, so that `σ^m = W Φ D Δ^m D^{-1} Φ^{-1} W^{-1}` costs the same
/// for every `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FastForwardForm {
    modulus: PrimeModulus,
    n: usize,
    factors: Vec<ElementaryFactor>,
    diag: DiagonalMap,
    diag_inv: DiagonalMap,
    wrap: Vec<ElementaryFactor>,
    seed_info: Option<SeedInfo>,
}

impl FastForwardForm {
    pub fn new(
        modulus: PrimeModulus,
        n: usize,
        factors: Vec<ElementaryFactor>,
        diag: DiagonalMap,
        wrap: Vec<ElementaryFactor>,
        seed_info: Option<SeedInfo>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("n must be at least 1"));
        }
        if diag.modulus() != modulus || diag.lambdas().len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: diag.lambdas().len(),
            });
        }
        for f in factors.iter().chain(&wrap) {
            if f.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.get(), f.modulus().get()));
            }
            if f.target() > n || f.arity() > n {
                return Err(Error::usage(format!(
                    "factor on x_{} with arity {} does not fit n = {n}",
                    f.target(),
                    f.arity()
                )));
            }
        }
        let diag_inv = diag.inverse();
        Ok(FastForwardForm {
            modulus,
            n,
            factors,
            diag,
            diag_inv,
            wrap,
            seed_info,
        })
    }

    /// Fast-forward form of a maximal-orbit triangular map, via its
    /// conjugation certificate `(φ, D)`. Zero factors of `φ` are dropped;
    /// when `σ` already equals `D Δ D^{-1}` no conjugator is stored.
    pub fn from_triangular(sigma: &TriangularPermutation) -> Result<Self> {
        let cert = conjugate_to_delta(sigma)?;
        let p = sigma.modulus();
        let n = sigma.n();
        let delta = TriangularPermutation::delta_map(p, n)?;
        let target = cert.diag().inverse().conjugate(&delta)?;
        let factors = if *sigma == target {
            Vec::new()
        } else {
            cert.phi()
                .components()
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_zero())
                .map(|(i, g)| ElementaryFactor::from_poly(i + 1, 1, g))
                .collect::<Result<_>>()?
        };
        let form = Self::new(p, n, factors, cert.diag().clone(), Vec::new(), None)?;
        form.spot_check(sigma)?;
        Ok(form)
    }

    fn spot_check(&self, sigma: &TriangularPermutation) -> Result<()> {
        let p = self.modulus.get();
        let mut points = vec![vec![0; self.n], vec![1; self.n], vec![p - 1; self.n]];
        points.push((0..self.n).map(|i| (i as u32 * 7 + 3) % p).collect());
        let sigma2 = sigma.compose(sigma)?;
        let mut counter = MultCounter::new();
        for v in &points {
            let ok = self.eval_power(0, v, &mut counter)? == *v
                && self.eval_power(1, v, &mut counter)? == sigma.apply(v)?
                && self.eval_power(2, v, &mut counter)? == sigma2.apply(v)?;
            if !ok {
                return Err(Error::Domain(
                    "fast-forward form disagrees with the source map".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[ElementaryFactor] {
        &self.factors
    }

    pub fn diag(&self) -> &DiagonalMap {
        &self.diag
    }

    pub fn wrap(&self) -> &[ElementaryFactor] {
        &self.wrap
    }

    pub fn seed_info(&self) -> Option<&SeedInfo> {
        self.seed_info.as_ref()
    }

    /// `p^n`, when representable.
    pub fn order(&self) -> Option<u128> {
        group_order(self.modulus, self.n)
    }

    fn check_point(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
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

    /// `D^{-1} Φ^{-1} W^{-1} v`.
    fn pull(&self, v: &mut [u32], counter: &mut MultCounter) {
        for f in self.wrap.iter().chain(&self.factors) {
            f.apply_inverse(v, counter);
        }
        self.diag_inv.apply_counted(v, counter);
    }

    /// `W Φ D v`.
    fn push(&self, v: &mut [u32], counter: &mut MultCounter) {
        self.diag.apply_counted(v, counter);
        for f in self.factors.iter().rev().chain(self.wrap.iter().rev()) {
            f.apply(v, counter);
        }
    }

    /// `σ^m(v)` for any integer `m`; only the digit addition depends on `m`.
    pub fn eval_power(&self, m: i128, v: &[u32], counter: &mut MultCounter) -> Result<Vec<u32>> {
        self.check_point(v)?;
        let mut w = v.to_vec();
        self.pull(&mut w, counter);
        add_to_digits(self.modulus, &mut w, m);
        self.push(&mut w, counter);
        Ok(w)
    }

    /// `σ(v)`.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.eval_power(1, v, &mut MultCounter::new())
    }

    /// Multiplications charged by one call to [`Self::eval_power`].
    pub fn eval_cost(&self) -> u64 {
        let mut counter = MultCounter::new();
        let v = vec![0; self.n];
        self.eval_power(0, &v, &mut counter)
            .expect("origin is a valid point");
        counter.count()
    }

    /// The triangular map represented, when no wrap is present.
    pub fn to_triangular(&self) -> Result<TriangularPermutation> {
        if !self.wrap.is_empty() {
            return Err(Error::Domain("a wrapped form is not triangular".into()));
        }
        let size = self
            .order()
            .filter(|s| *s <= 1 << 20)
            .ok_or(Error::ResourceLimit {
                what: "point table",
                size: self.order().unwrap_or(u128::MAX),
                cap: 1 << 20,
            })?;
        let p = self.modulus;
        let mut table = Vec::with_capacity(size as usize);
        let mut v = vec![0u32; self.n];
        let mut counter = MultCounter::new();
        for _ in 0..size {
            let w = self.eval_power(1, &v, &mut counter)?;
            table.push(crate::trigroup::zeta_inv(p, &w)? as u32);
            add_to_digits(p, &mut v, 1);
        }
        TriangularPermutation::from_point_table(p, self.n, &table)
    }
}
