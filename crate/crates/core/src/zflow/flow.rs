use std::fmt;

use crate::error::{Error, Result};
use crate::ffring::{dense_len, PrimeModulus, ReducedPoly};
use crate::intpoly::q_digits;
use crate::trigroup::{group_order, TriangularPermutation};

/// Default ceiling on `p^n` for [`build_flow`].
pub const DEFAULT_FLOW_CAP: u128 = 4096;

/// A family `σ_T = (x_1 + g_{1,T}, ..., x_n + g_{n,T})` whose specialisation
/// at the digits of `m` is `σ^m`.
///
/// Component `i` (0-based) has arity `n + i` over the variables
/// `Q_0, ..., Q_{n-1}, x_1, ..., x_i`, in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlowMap {
    modulus: PrimeModulus,
    n: usize,
    components: Vec<ReducedPoly>,
}

/// Outcome of the `W_i` membership check for one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WComponent {
    /// 1-based component index.
    pub index: usize,
    /// Coefficient of the lone `Q_{i-1}` monomial.
    pub lambda: u32,
    pub pass: bool,
}

impl FlowMap {
    pub fn new(modulus: PrimeModulus, n: usize, components: Vec<ReducedPoly>) -> Result<Self> {
        if n == 0 || components.len() != n {
            return Err(Error::usage(format!(
                "a flow on n = {n} coordinates needs n components, got {}",
                components.len()
            )));
        }
        for (i, g) in components.iter().enumerate() {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.get(), g.modulus().get()));
            }
            if g.arity() != n + i {
                return Err(Error::ArityMismatch {
                    expected: n + i,
                    found: g.arity(),
                });
            }
        }
        Ok(FlowMap {
            modulus,
            n,
            components,
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of digit variables, always `n`.
    pub fn q_arity(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[ReducedPoly] {
        &self.components
    }

    /// Substitute `Q_j = Q_j(m)` everywhere.
    pub fn specialize(&self, m: i128) -> TriangularPermutation {
        let digits = q_digits(self.n, m, self.modulus);
        let comps = self
            .components
            .iter()
            .map(|g| g.partial_eval_prefix(&digits).expect("q_arity fits"))
            .collect();
        TriangularPermutation::new(self.modulus, comps).expect("arities are i")
    }

    /// Split each `g_{i,T}` as `h + λ Q_{i-1}` with `h` free of
    /// `Q_{i-1}, ..., Q_{n-1}`.
    pub fn w_membership(&self) -> Vec<WComponent> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut lambda = 0;
                let mut pass = true;
                for (exps, c) in g.terms() {
                    let high = &exps[i..self.n];
                    if high.iter().all(|e| *e == 0) {
                        continue;
                    }
                    let lone = high[0] == 1
                        && high[1..].iter().all(|e| *e == 0)
                        && exps[..i].iter().chain(&exps[self.n..]).all(|e| *e == 0);
                    if lone {
                        lambda = c;
                    } else {
                        pass = false;
                    }
                }
                WComponent {
                    index: i + 1,
                    lambda,
                    pass,
                }
            })
            .collect()
    }
}

impl fmt::Display for FlowMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.components.iter().enumerate() {
            let names: Vec<String> = (0..self.n)
                .map(|j| format!("Q{j}"))
                .chain((1..=i).map(|j| format!("x{j}")))
                .collect();
            if i > 0 {
                write!(f, ", ")?;
            }
            let shown = g.display_with(&names);
            if g.is_zero() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{} + {shown}", i + 1)?;
            }
        }
        write!(f, ")")
    }
}

/// The flow of `σ`, with the default size cap.
pub fn build_flow(sigma: &TriangularPermutation) -> Result<FlowMap> {
    build_flow_capped(sigma, DEFAULT_FLOW_CAP)
}

/// Tabulates `σ^m` for `m < p^n` and interpolates every component over the
/// joint grid of digits and points; the sequence has period `p^n`, so the
/// digit variables recover it for every integer `m`.
pub fn build_flow_capped(sigma: &TriangularPermutation, cap: u128) -> Result<FlowMap> {
    let p = sigma.modulus();
    let n = sigma.n();
    let order = group_order(p, n)
        .filter(|o| *o <= cap)
        .ok_or(Error::ResourceLimit {
            what: "flow period p^n",
            size: group_order(p, n).unwrap_or(u128::MAX),
            cap,
        })? as usize;
    let q = p.get() as usize;
    let step = sigma.point_table()?;
    let mut values: Vec<Vec<u32>> = (0..n)
        .map(|i| dense_len(p, n + i).map(|len| vec![0u32; len]))
        .collect::<Result<_>>()?;
    let mut cur: Vec<u32> = (0..order as u32).collect();
    for m in 0..order {
        let mut stride = 1usize;
        for vals in values.iter_mut() {
            // points u < p^i have coordinate i equal to zero
            for u in 0..stride {
                vals[m + order * u] = ((cur[u] as usize / stride) % q) as u32;
            }
            stride *= q;
        }
        for c in cur.iter_mut() {
            *c = step[*c as usize];
        }
    }
    let components = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| ReducedPoly::from_values(p, n + i, v))
        .collect::<Result<_>>()?;
    FlowMap::new(p, n, components)
}

/// The `λ_i` that [`FlowMap::w_membership`] must report for the flow of
/// `σ`: `(-1)^(i-1) c_i` when `σ` acts on its first `i - 1` coordinates with
/// a single orbit, and 0 otherwise (every shorter orbit sum is counted a
/// multiple of `p` times).
pub fn expected_w_lambdas(sigma: &TriangularPermutation) -> Vec<u32> {
    let p = sigma.modulus();
    let c = sigma.top_coeffs();
    let mut prefix_maximal = true;
    c.iter()
        .enumerate()
        .map(|(i, ci)| {
            let lam = if !prefix_maximal {
                0
            } else if i % 2 == 0 {
                *ci
            } else {
                p.neg(*ci)
            };
            prefix_maximal &= *ci != 0;
            lam
        })
        .collect()
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
    fn identity_flow_is_zero() {
        let id = TriangularPermutation::identity(pm(3), 2).unwrap();
        let f = build_flow(&id).unwrap();
        assert!(f.components().iter().all(|g| g.is_zero()));
        assert!(f.w_membership().iter().all(|w| w.pass && w.lambda == 0));
    }

    #[test]
    fn translation_flow() {
        let s = tri(2, &[&[(&[], 1)]]);
        let f = build_flow(&s).unwrap();
        assert_eq!(f.components()[0], ReducedPoly::variable(pm(2), 1, 0));
        assert_eq!(f.to_string(), "(x1 + Q0)");
        assert_eq!(
            f.w_membership(),
            vec![WComponent {
                index: 1,
                lambda: 1,
                pass: true
            }]
        );
    }

    #[test]
    fn specializations_are_powers() {
        let s = tri(3, &[&[(&[], 2)], &[(&[1], 1), (&[2], 2)]]);
        let f = build_flow(&s).unwrap();
        for m in -9i128..27 {
            assert_eq!(f.specialize(m), s.power(m));
        }
        let w = f.w_membership();
        assert!(w.iter().all(|c| c.pass));
        let lam: Vec<u32> = w.iter().map(|c| c.lambda).collect();
        assert_eq!(lam, expected_w_lambdas(&s));
    }

    #[test]
    fn cap_is_enforced() {
        let id = TriangularPermutation::identity(pm(5), 6).unwrap();
        assert!(matches!(build_flow(&id), Err(Error::ResourceLimit { .. })));
    }
}
