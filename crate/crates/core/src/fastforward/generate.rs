use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::ElementaryFactor;
use super::form::{FastForwardForm, SeedInfo};
use crate::error::Result;
use crate::ffring::PrimeModulus;
use crate::trigroup::DiagonalMap;

/// Identifier stored in generated forms.
pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64";

fn sparse_factor<R: Rng>(
    p: PrimeModulus,
    target: usize,
    arity: usize,
    deps: std::ops::Range<usize>,
    budget: usize,
    rng: &mut R,
) -> Result<ElementaryFactor> {
    let q = p.get();
    let terms: Vec<(Vec<u32>, u64)> = (0..budget)
        .map(|_| {
            let mut exps = vec![0u32; arity];
            for j in deps.clone() {
                exps[j] = rng.gen_range(0..q);
            }
            (exps, rng.gen_range(1..q) as u64)
        })
        .collect();
    ElementaryFactor::new(p, target, 1, arity, terms)
}

/// A random form `Φ D Δ D^{-1} Φ^{-1}` with `Φ = τ_1 ∘ ... ∘ τ_n`, each
/// `τ_i = (x_i + f_i(x_1..x_{i-1}))` carrying at most `budget` monomials.
///
/// With `wrap`, the whole map is further conjugated by a lower triangular
/// `μ = (x_1 + h_1(x_2..x_n), ..., x_n + h_n)` built the same way, which
/// leaves it a single `p^n`-cycle but no longer triangular.
///
/// Draw order: the monomials of `f_1..f_n` (exponents, then coefficient),
/// the diagonal entries, then the monomials of `μ` from `h_n` down to `h_1`.
pub fn sparse_generate(
    p: PrimeModulus,
    n: usize,
    budget: usize,
    seed: u64,
    wrap: bool,
) -> Result<FastForwardForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for i in 1..=n {
        let f = sparse_factor(p, i, i - 1, 0..i - 1, budget, &mut rng)?;
        if !f.is_trivial() {
            factors.push(f);
        }
    }
    let lambdas = (0..n).map(|_| rng.gen_range(1..p.get())).collect();
    let diag = DiagonalMap::new(p, lambdas)?;
    let mut wrap_factors = Vec::new();
    if wrap {
        for target in (1..=n).rev() {
            let f = sparse_factor(p, target, n, target..n, budget, &mut rng)?;
            if !f.is_trivial() {
                wrap_factors.push(f);
            }
        }
    }
    let info = SeedInfo {
        algorithm: RNG_ALGORITHM.to_string(),
        seed,
        budget,
    };
    FastForwardForm::new(p, n, factors, diag, wrap_factors, Some(info))
}
