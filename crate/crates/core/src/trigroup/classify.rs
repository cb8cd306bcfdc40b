//! Standard forms and the conjugation of maximal-orbit maps onto the
//! canonical increment map.

use super::perm::TriangularPermutation;
use crate::error::{Error, Result};
use crate::ffring::{digits_of, MultCounter, PrimeModulus, ReducedPoly};

/// `D = (λ_1 x_1, ..., λ_n x_n)` with every `λ_i` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalMap {
    modulus: PrimeModulus,
    lambdas: Vec<u32>,
}

impl DiagonalMap {
    pub fn new(modulus: PrimeModulus, lambdas: Vec<u32>) -> Result<Self> {
        if let Some(l) = lambdas.iter().find(|l| **l == 0 || **l >= modulus.get()) {
            return Err(Error::usage(format!(
                "diagonal entry {l} is not a unit of F_{modulus}"
            )));
        }
        Ok(DiagonalMap { modulus, lambdas })
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        DiagonalMap {
            modulus,
            lambdas: vec![1; n],
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.lambdas
    }

    pub fn is_identity(&self) -> bool {
        self.lambdas.iter().all(|l| *l == 1)
    }

    pub fn inverse(&self) -> Self {
        DiagonalMap {
            modulus: self.modulus,
            lambdas: self
                .lambdas
                .iter()
                .map(|l| self.modulus.inv(*l).expect("units only"))
                .collect(),
        }
    }

    /// `v_i <- λ_i v_i`; multiplications by one are free.
    pub fn apply_counted(&self, v: &mut [u32], counter: &mut MultCounter) {
        for (x, l) in v.iter_mut().zip(&self.lambdas) {
            if *l != 1 {
                *x = self.modulus.mul(*x, *l);
                counter.tick();
            }
        }
    }

    /// `D^{-1} ∘ ρ ∘ D` for a strictly triangular `ρ`; the result is again
    /// strictly triangular with component `λ_i^{-1} r_i(λ_1 x_1, ...)`.
    pub fn conjugate(&self, rho: &TriangularPermutation) -> Result<TriangularPermutation> {
        if rho.n() != self.lambdas.len() || rho.modulus() != self.modulus {
            return Err(Error::usage(
                "diagonal map and triangular map have different shapes",
            ));
        }
        let p = self.modulus;
        let comps = rho
            .components()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let inv = p.inv(self.lambdas[i]).expect("units only");
                let coeffs = g
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(idx, c)| {
                        if *c == 0 {
                            return 0;
                        }
                        let scale = digits_of(p, idx, i)
                            .iter()
                            .zip(&self.lambdas)
                            .fold(inv, |acc, (e, l)| p.mul(acc, p.pow(*l, *e as u64)));
                        p.mul(*c, scale)
                    })
                    .collect();
                ReducedPoly::from_coeffs(p, i, coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        TriangularPermutation::new(p, comps)
    }
}

/// A pair `(φ, D)` with `φ` in standard form and
/// `D^{-1} ∘ φ^{-1} ∘ σ ∘ φ ∘ D = Δ`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugationCertificate {
    phi: TriangularPermutation,
    diag: DiagonalMap,
}

impl ConjugationCertificate {
    pub fn new(
        source: &TriangularPermutation,
        phi: TriangularPermutation,
        diag: DiagonalMap,
    ) -> Result<Self> {
        if !phi.is_standard_form() {
            return Err(Error::Domain("conjugator is not in standard form".into()));
        }
        let cert = ConjugationCertificate { phi, diag };
        let delta = TriangularPermutation::delta_map(source.modulus(), source.n())?;
        if cert.chain(source)? != delta {
            return Err(Error::Domain(
                "certificate does not conjugate the map onto Δ".into(),
            ));
        }
        Ok(cert)
    }

    pub fn phi(&self) -> &TriangularPermutation {
        &self.phi
    }

    pub fn diag(&self) -> &DiagonalMap {
        &self.diag
    }

    /// `D^{-1} ∘ φ^{-1} ∘ σ ∘ φ ∘ D`.
    pub fn chain(&self, sigma: &TriangularPermutation) -> Result<TriangularPermutation> {
        let inner = self.phi.invert().compose(&sigma.compose(&self.phi)?)?;
        self.diag.conjugate(&inner)
    }
}

/// The unique standard-form map generating the same cyclic group as `σ`,
/// together with an exponent `e` (prime to `p`) with `σ^e` equal to it.
pub fn standard_form_representative(
    sigma: &TriangularPermutation,
) -> Result<(TriangularPermutation, u128)> {
    sigma.require_maximal()?;
    let p = sigma.modulus();
    let order = sigma.group_order().ok_or(Error::ResourceLimit {
        what: "group order",
        size: u128::MAX,
        cap: u128::MAX,
    })?;
    let a = p
        .inv(sigma.components()[0].constant_coeff())
        .expect("g_1 != 0") as u128;
    let tau = sigma.power(a as i128);
    let step = tau.point_table()?;
    let step_p = tau.power(p.get() as i128).point_table()?;
    // walk τ^(jp+1)(0) until it hits (1, 0, ..., 0), which has index 1
    let mut cur = step[0];
    let mut j: u128 = 0;
    while cur != 1 {
        cur = step_p[cur as usize];
        j += 1;
        if j * p.get() as u128 >= order {
            return Err(Error::Domain(
                "origin orbit never reaches (1,0,...,0)".into(),
            ));
        }
    }
    let e = (a * ((j * p.get() as u128 + 1) % order)) % order;
    Ok((sigma.power(e as i128), e))
}

/// Solve `f - f∘τ = k` with zero constant term, for `τ` of maximal orbit on
/// `k.arity()` coordinates and `k` in `R^-`.
///
/// Walks the single orbit of `τ` from the origin assigning
/// `f(τ(v)) = f(v) - k(v)`, interpolates, then drops the constant term
/// (constants are exactly the kernel of `f ↦ f - f∘τ`).
pub fn solve_coboundary(tau: &TriangularPermutation, k: &ReducedPoly) -> Result<ReducedPoly> {
    tau.require_maximal()?;
    if k.arity() != tau.n() || k.modulus() != tau.modulus() {
        return Err(Error::ArityMismatch {
            expected: tau.n(),
            found: k.arity(),
        });
    }
    if !k.in_r_minus() {
        return Err(Error::NotInRMinus { top: k.top_coeff() });
    }
    let p = tau.modulus();
    let table = tau.point_table()?;
    let kv = k.values();
    let mut f = vec![0u32; table.len()];
    let mut cur = 0usize;
    for _ in 1..table.len() {
        let next = table[cur] as usize;
        f[next] = p.sub(f[cur], kv[cur]);
        cur = next;
    }
    debug_assert_eq!(table[cur], 0);
    let mut sol = ReducedPoly::from_values(p, tau.n(), f)?;
    let c0 = sol.constant_coeff();
    if c0 != 0 {
        sol = sol.sub(&ReducedPoly::constant(p, tau.n(), c0 as u64))?;
    }
    Ok(sol)
}

/// The unique standard-form `φ` with `φ^{-1} ∘ σ ∘ φ = τ`, built one
/// coordinate at a time; fails when the invariant vectors differ.
pub fn conjugate_to_standard(
    sigma: &TriangularPermutation,
    tau: &TriangularPermutation,
) -> Result<TriangularPermutation> {
    if sigma.n() != tau.n() || sigma.modulus() != tau.modulus() {
        return Err(Error::ArityMismatch {
            expected: sigma.n(),
            found: tau.n(),
        });
    }
    let ls = sigma.require_maximal()?;
    let lt = tau.require_maximal()?;
    let p = sigma.modulus();
    if ls[0] != lt[0] {
        return Err(Error::NotConjugate {
            index: 1,
            left: ls[0],
            right: lt[0],
        });
    }
    let mut phi = TriangularPermutation::new(p, vec![ReducedPoly::constant(p, 0, 1)])?;
    for i in 1..sigma.n() {
        let psi = phi.extend(ReducedPoly::zero(p, i))?;
        let sigma_i = sigma.restrict(i + 1)?;
        let rho = psi.invert().compose(&sigma_i.compose(&psi)?)?;
        let tau_prev = tau.restrict(i)?;
        debug_assert_eq!(&rho.components()[..i], tau_prev.components());
        let k = tau.components()[i].sub(&rho.components()[i])?;
        if !k.in_r_minus() {
            return Err(Error::NotConjugate {
                index: i + 1,
                left: ls[i],
                right: lt[i],
            });
        }
        let f = solve_coboundary(&tau_prev, &k)?;
        phi = phi.extend(f)?;
    }
    Ok(phi)
}

/// `(φ, D)` with `D^{-1} ∘ φ^{-1} ∘ σ ∘ φ ∘ D = Δ`.
///
/// `D` carries `λ_i = c_i / μ_i`, where `c_i` are the invariants of `σ` and
/// `μ_i = (-1)^(i-1)` is the top coefficient of `δ_{i-1}`; `φ` conjugates
/// `σ` onto `D ∘ Δ ∘ D^{-1}`, which has the same invariants.
pub fn conjugate_to_delta(sigma: &TriangularPermutation) -> Result<ConjugationCertificate> {
    let c = sigma.require_maximal()?;
    let p = sigma.modulus();
    let n = sigma.n();
    let delta = TriangularPermutation::delta_map(p, n)?;
    let lambdas = c
        .iter()
        .zip(delta.top_coeffs())
        .map(|(ci, mu)| p.mul(*ci, p.inv(mu).expect("δ has unit top coefficient")))
        .collect();
    let diag = DiagonalMap::new(p, lambdas)?;
    // D ∘ Δ ∘ D^{-1} is the D^{-1}-conjugate of Δ
    let target = diag.inverse().conjugate(&delta)?;
    let phi = conjugate_to_standard(sigma, &target)?;
    ConjugationCertificate::new(sigma, phi, diag)
}

/// `τ = σ^a` with `a m ≡ 1 (mod p^n)`, so that `τ^m = σ`.
pub fn mth_root(sigma: &TriangularPermutation, m: i128) -> Result<TriangularPermutation> {
    let p = sigma.modulus().get() as i128;
    if m.rem_euclid(p) == 0 {
        return Err(Error::Domain(format!(
            "gcd({m}, {p}) != 1: no m-th root in general"
        )));
    }
    let order = sigma.group_order().ok_or(Error::ResourceLimit {
        what: "group order",
        size: u128::MAX,
        cap: u128::MAX,
    })? as i128;
    let a = mod_inverse(m.rem_euclid(order), order).expect("coprime to p, hence to p^n");
    Ok(sigma.power(a))
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn tri(p: u64, comps: &[&[(&[u32], u32)]]) -> TriangularPermutation {
        let p = pm(p);
        let components = comps
            .iter()
            .enumerate()
            .map(|(i, ts)| {
                ReducedPoly::from_terms(p, i, ts.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
            })
            .collect();
        TriangularPermutation::new(p, components).unwrap()
    }

    #[test]
    fn standard_form_representative_examples() {
        let d = TriangularPermutation::delta_map(pm(2), 2).unwrap();
        assert_eq!(standard_form_representative(&d).unwrap(), (d.clone(), 1));
        let s = tri(3, &[&[(&[], 2)]]);
        assert_eq!(
            standard_form_representative(&s).unwrap(),
            (tri(3, &[&[(&[], 1)]]), 2)
        );
        let s = tri(2, &[&[(&[], 1)], &[(&[1], 1), (&[0], 1)]]);
        assert_eq!(standard_form_representative(&s).unwrap(), (d, 3));
        let id = TriangularPermutation::identity(pm(2), 2).unwrap();
        assert!(matches!(
            standard_form_representative(&id),
            Err(Error::NotMaximalOrbit { index: 1 })
        ));
    }

    #[test]
    fn solve_coboundary_examples() {
        let t2 = tri(2, &[&[(&[], 1)]]);
        let zero = ReducedPoly::zero(pm(2), 1);
        assert!(solve_coboundary(&t2, &zero).unwrap().is_zero());
        let x = ReducedPoly::variable(pm(2), 1, 0);
        assert!(matches!(
            solve_coboundary(&t2, &x),
            Err(Error::NotInRMinus { top: 1 })
        ));

        let t3 = tri(3, &[&[(&[], 1)]]);
        let k = ReducedPoly::variable(pm(3), 1, 0);
        let f = solve_coboundary(&t3, &k).unwrap();
        // orbit walk gives values {0:0, 1:0, 2:2}, then the constant is dropped
        let walked = ReducedPoly::from_values(pm(3), 1, vec![0, 0, 2]).unwrap();
        assert_eq!(f.coeffs()[1..], walked.coeffs()[1..]);
        assert_eq!(f.constant_coeff(), 0);
        // brute force over all 27 candidates with zero constant term
        let mut sols = Vec::new();
        for code in 0..27u32 {
            let cand = ReducedPoly::from_coeffs(pm(3), 1, vec![code % 3, (code / 3) % 3, code / 9])
                .unwrap();
            let shifted = cand
                .substitute(&[ReducedPoly::from_coeffs(pm(3), 1, vec![1, 1, 0]).unwrap()])
                .unwrap();
            if cand.sub(&shifted).unwrap() == k && cand.constant_coeff() == 0 {
                sols.push(cand);
            }
        }
        assert_eq!(sols, vec![f]);

        let id = TriangularPermutation::identity(pm(3), 1).unwrap();
        assert!(matches!(
            solve_coboundary(&id, &k),
            Err(Error::NotMaximalOrbit { .. })
        ));
    }

    #[test]
    fn conjugate_to_standard_examples() {
        let sigma = tri(2, &[&[(&[], 1)], &[(&[1], 1), (&[0], 1)]]);
        let delta = TriangularPermutation::delta_map(pm(2), 2).unwrap();
        let phi = conjugate_to_standard(&sigma, &delta).unwrap();
        assert_eq!(phi, tri(2, &[&[(&[], 1)], &[]]));
        assert_eq!(
            phi.invert().compose(&sigma.compose(&phi).unwrap()).unwrap(),
            delta
        );

        let fixed = conjugate_to_standard(&sigma, &sigma).unwrap();
        assert_eq!(fixed, conjugate_to_standard(&sigma, &sigma).unwrap());
        assert!(fixed.is_standard_form());
        assert_eq!(
            fixed
                .invert()
                .compose(&sigma.compose(&fixed).unwrap())
                .unwrap(),
            sigma
        );

        let tau = tri(2, &[&[(&[], 1)], &[(&[1], 1), (&[0], 1)]]);
        let phi = conjugate_to_standard(&delta, &tau).unwrap();
        assert!(phi.is_standard_form());
        assert_eq!(
            phi.invert().compose(&delta.compose(&phi).unwrap()).unwrap(),
            tau
        );
        let conjugators: Vec<_> = TriangularPermutation::all(pm(2), 2)
            .unwrap()
            .into_iter()
            .filter(|psi| psi.invert().compose(&delta.compose(psi).unwrap()).unwrap() == tau)
            .collect();
        assert!(conjugators.contains(&phi));

        let d3 = TriangularPermutation::delta_map(pm(3), 2).unwrap();
        let mismatched = tri(3, &[&[(&[], 1)], &[(&[2], 1)]]);
        assert!(matches!(
            conjugate_to_standard(&mismatched, &d3),
            Err(Error::NotConjugate {
                index: 2,
                left: 1,
                right: 2
            })
        ));
    }

    #[test]
    fn conjugate_to_delta_examples() {
        let d = TriangularPermutation::delta_map(pm(3), 3).unwrap();
        let cert = conjugate_to_delta(&d).unwrap();
        assert!(cert.diag().is_identity());
        assert_eq!(
            cert.phi()
                .invert()
                .compose(&d.compose(cert.phi()).unwrap())
                .unwrap(),
            d
        );

        let s = tri(2, &[&[(&[], 1)], &[(&[1], 1), (&[0], 1)]]);
        let cert = conjugate_to_delta(&s).unwrap();
        assert_eq!(cert.phi(), &tri(2, &[&[(&[], 1)], &[]]));
        assert!(cert.diag().is_identity());

        let s = tri(3, &[&[(&[], 2)]]);
        let cert = conjugate_to_delta(&s).unwrap();
        assert_eq!(cert.diag().lambdas(), &[2]);
        assert_eq!(cert.phi(), &tri(3, &[&[(&[], 1)]]));
        assert_eq!(cert.chain(&s).unwrap(), tri(3, &[&[(&[], 1)]]));

        let id = TriangularPermutation::identity(pm(3), 2).unwrap();
        assert!(matches!(
            conjugate_to_delta(&id),
            Err(Error::NotMaximalOrbit { index: 1 })
        ));
    }

    #[test]
    fn mth_root_examples() {
        let s = tri(2, &[&[(&[], 1)], &[(&[1], 1)]]);
        assert_eq!(mth_root(&s, 1).unwrap(), s);
        let r = mth_root(&s, 3).unwrap();
        assert_eq!(r, s.power(3));
        assert_eq!(r.power(3), s);
        let t = tri(3, &[&[(&[], 1)]]);
        assert_eq!(mth_root(&t, 2).unwrap(), tri(3, &[&[(&[], 2)]]));
        assert!(matches!(mth_root(&t, 6), Err(Error::Domain(_))));
        assert_eq!(mth_root(&t, -1).unwrap().power(-1), t);
    }

    #[test]
    fn mod_inverse_small() {
        assert_eq!(mod_inverse(3, 4), Some(3));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(5, 27), Some(11));
    }
}
