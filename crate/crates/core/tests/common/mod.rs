#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triperm::ffring::{PrimeModulus, ReducedPoly};
use triperm::trigroup::TriangularPermutation;

pub fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_map(p: u64, n: usize, seed: u64) -> TriangularPermutation {
    TriangularPermutation::random(pm(p), n, &mut rng(seed)).unwrap()
}

pub fn random_maximal(p: u64, n: usize, seed: u64) -> TriangularPermutation {
    TriangularPermutation::random_maximal(pm(p), n, &mut rng(seed)).unwrap()
}

pub fn random_poly(p: u64, arity: usize, seed: u64) -> ReducedPoly {
    use rand::Rng;
    let p = pm(p);
    let len = (p.get() as usize).pow(arity as u32);
    let mut r = rng(seed);
    ReducedPoly::from_coeffs(
        p,
        arity,
        (0..len).map(|_| r.gen_range(0..p.get())).collect(),
    )
    .unwrap()
}

pub fn points(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let len = (p as usize).pow(n as u32);
    (0..len).map(move |mut i| {
        (0..n)
            .map(|_| {
                let d = (i % p as usize) as u32;
                i /= p as usize;
                d
            })
            .collect()
    })
}
