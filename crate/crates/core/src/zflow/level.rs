use crate::error::{Error, Result};
use crate::ffring::{PrimeModulus, ReducedPoly};
use crate::trigroup::TriangularPermutation;

/// A one-digit flow of `τ = σ^(p^i)`: component `j` (0-based) has arity
/// `1 + j` over `t, x_1, ..., x_j`, and setting `t = m` gives `τ^m` for
/// `0 <= m < p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelFlow {
    modulus: PrimeModulus,
    level: usize,
    components: Vec<ReducedPoly>,
}

impl LevelFlow {
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn components(&self) -> &[ReducedPoly] {
        &self.components
    }

    /// `t = m`.
    pub fn specialize(&self, m: u32) -> Result<TriangularPermutation> {
        if m >= self.modulus.get() {
            return Err(Error::usage(format!(
                "t = {m} is not below p = {}",
                self.modulus
            )));
        }
        let comps = self
            .components
            .iter()
            .map(|g| g.partial_eval_prefix(&[m]))
            .collect::<Result<_>>()?;
        TriangularPermutation::new(self.modulus, comps)
    }
}

/// Lagrange basis `M_k(t) = prod_{j != k} (t - j) / (k - j)` over `F_p`, as
/// coefficient vectors of length `p`.
fn lagrange_basis(p: PrimeModulus) -> Vec<Vec<u32>> {
    let q = p.get();
    (0..q)
        .map(|k| {
            let mut poly = vec![1u32];
            let mut den = 1u32;
            for j in (0..q).filter(|j| *j != k) {
                let mut next = vec![0u32; poly.len() + 1];
                for (e, c) in poly.iter().enumerate() {
                    next[e + 1] = p.add(next[e + 1], *c);
                    next[e] = p.sub(next[e], p.mul(*c, j));
                }
                poly = next;
                den = p.mul(den, p.sub(k, j));
            }
            let inv = p.inv(den).expect("distinct nodes");
            poly.resize(q as usize, 0);
            poly.into_iter().map(|c| p.mul(c, inv)).collect()
        })
        .collect()
}

/// Level-`i` flow of `σ`, interpolating `τ^0, ..., τ^(p-1)` for
/// `τ = σ^(p^i)` with the Lagrange basis in `t`.
pub fn level_flow(sigma: &TriangularPermutation, level: usize) -> Result<LevelFlow> {
    let n = sigma.n();
    if level >= n {
        return Err(Error::usage(format!("level {level} is outside 0..{n}")));
    }
    let p = sigma.modulus();
    let q = p.get() as usize;
    let mut tau = sigma.clone();
    for _ in 0..level {
        tau = tau.power(q as i128);
    }
    let mut powers = vec![TriangularPermutation::identity(p, n)?];
    for k in 1..q {
        powers.push(powers[k - 1].compose(&tau)?);
    }
    let basis = lagrange_basis(p);
    let mut components = Vec::with_capacity(n);
    for j in 0..n {
        let mut out = ReducedPoly::zero(p, 1 + j).coeffs().to_vec();
        for (k, pw) in powers.iter().enumerate() {
            for (a, c) in pw.components()[j].coeffs().iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                for (e, m) in basis[k].iter().enumerate() {
                    let slot = &mut out[e + q * a];
                    *slot = p.add(*slot, p.mul(*c, *m));
                }
            }
        }
        components.push(ReducedPoly::from_coeffs(p, 1 + j, out)?);
    }
    Ok(LevelFlow {
        modulus: p,
        level,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn lagrange_over_f2() {
        // M_0 = 1 + t, M_1 = t
        assert_eq!(lagrange_basis(pm(2)), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn translation_levels() {
        for q in [2u64, 3] {
            let s = TriangularPermutation::new(pm(q), vec![ReducedPoly::constant(pm(q), 0, 1)])
                .unwrap();
            let l = level_flow(&s, 0).unwrap();
            assert_eq!(l.components()[0], ReducedPoly::variable(pm(q), 1, 0));
            assert!(level_flow(&s, 1).is_err());
        }
    }

    #[test]
    fn levels_match_powers() {
        let p = pm(3);
        let s = TriangularPermutation::delta_map(p, 3).unwrap();
        for i in 0..3 {
            let l = level_flow(&s, i).unwrap();
            for m in 0..3u32 {
                assert_eq!(
                    l.specialize(m).unwrap(),
                    s.power(3i128.pow(i as u32) * m as i128)
                );
            }
        }
        let id = TriangularPermutation::identity(p, 2).unwrap();
        assert!(level_flow(&id, 1)
            .unwrap()
            .components()
            .iter()
            .all(|g| g.is_zero()));
    }
}
