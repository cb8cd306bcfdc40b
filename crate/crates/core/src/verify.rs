//! Self-checks of the whole library against the brute-force oracle.
//!
//! Each check is deterministic in its seed and reports a one-line detail.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fastforward::{sparse_generate, FastForwardForm, COST_CONSTANT};
use crate::ffring::{digits_of, MultCounter, PrimeModulus, ReducedPoly};
use crate::intpoly::{binomial, q_eval, tau_reduce, BinomialPoly};
use crate::oracle::{
    cycle_type, enumerate, enumerate_count, form_table, group_size_formula, star_kernel_dim,
    to_table, PermutationTable,
};
use crate::trigroup::{conjugate_to_delta, mth_root, TriangularPermutation};
use crate::zflow::{build_flow, expected_w_lambdas, level_flow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

pub struct Check {
    pub name: &'static str,
    pub run: fn(u64) -> Result<Outcome>,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub outcome: Result<Outcome>,
    pub millis: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(o) if o.passed)
    }

    pub fn detail(&self) -> String {
        match &self.outcome {
            Ok(o) => o.detail.clone(),
            Err(e) => format!("error: {e}"),
        }
    }
}

pub fn run_check(check: &Check, seed: u64) -> CheckReport {
    let start = Instant::now();
    let outcome = (check.run)(seed);
    CheckReport {
        name: check.name,
        outcome,
        millis: start.elapsed().as_millis(),
    }
}

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("small primes")
}

fn iterate(t: &PermutationTable, m: u128, start: usize) -> usize {
    (0..m).fold(start, |cur, _| t.table[cur] as usize)
}

fn table_power(t: &PermutationTable, m: u128) -> Vec<u32> {
    (0..t.table.len())
        .map(|i| iterate(t, m, i) as u32)
        .collect()
}

/// The ten headline checks.
pub fn acceptance_checks() -> Vec<Check> {
    vec![
        Check {
            name: "flow of (x+y+z, y+z, z) over F_2",
            run: flow_example,
        },
        Check {
            name: "group order by enumeration",
            run: group_order,
        },
        Check {
            name: "maximal-orbit criterion vs cycles vs kernel",
            run: ostafe,
        },
        Check {
            name: "shift by p^(n-1) steps",
            run: shift_formula,
        },
        Check {
            name: "conjugation onto the increment map",
            run: canonicalization,
        },
        Check {
            name: "fast-forward agrees with naive iteration",
            run: fastforward_correct,
        },
        Check {
            name: "fast-forward multiplication count",
            run: fastforward_cost,
        },
        Check {
            name: "Lucas and digit polynomials",
            run: lucas_digits,
        },
        Check {
            name: "flows, W membership and level flows",
            run: flow_suite,
        },
        Check {
            name: "m-th roots",
            run: roots,
        },
    ]
}

/// Everything: the headline checks plus supporting invariants.
pub fn all_checks() -> Vec<Check> {
    let mut v = acceptance_checks();
    v.extend([
        Check {
            name: "group laws on small groups",
            run: group_laws,
        },
        Check {
            name: "cycle lengths are powers of p",
            run: cycle_lengths,
        },
        Check {
            name: "invariants survive conjugation",
            run: conjugacy_invariance,
        },
        Check {
            name: "binomial expansion round trip",
            run: binomial_roundtrip,
        },
    ]);
    v
}

pub fn flow_example(_seed: u64) -> Result<Outcome> {
    let p = pm(2);
    let var = |a, i| ReducedPoly::variable(p, a, i);
    // variables reversed: x_1 = z, x_2 = y, x_3 = x
    let sigma = TriangularPermutation::new(
        p,
        vec![
            ReducedPoly::zero(p, 0),
            var(1, 0),
            var(2, 0).add(&var(2, 1))?,
        ],
    )?;
    let flow = build_flow(&sigma)?;
    // (x + Q0 y + (Q1 + Q0) z, y + Q0 z, z) in the combined variables
    // (Q0, Q1, Q2, x_1, ..., x_{i-1})
    let expected = [
        ReducedPoly::zero(p, 3),
        ReducedPoly::from_terms(p, 4, [(vec![1, 0, 0, 1], 1)])?,
        ReducedPoly::from_terms(
            p,
            5,
            [
                (vec![1, 0, 0, 0, 1], 1),
                (vec![0, 1, 0, 1, 0], 1),
                (vec![1, 0, 0, 1, 0], 1),
            ],
        )?,
    ];
    let coeffs_match = flow.components() == expected;

    let f = |v: &[u32]| [(v[0] + v[1] + v[2]) % 2, (v[1] + v[2]) % 2, v[2]];
    let mut iter_match = true;
    for m in 0..8u32 {
        let sm = flow.specialize(m as i128);
        for code in 0..8usize {
            let xyz = digits_of(p, code, 3);
            let mut fm = [xyz[0], xyz[1], xyz[2]];
            for _ in 0..m {
                fm = f(&fm);
            }
            let w = sm.apply(&[xyz[2], xyz[1], xyz[0]])?;
            iter_match &= [w[2], w[1], w[0]] == fm;
        }
    }
    let order = (1..=8).find(|k| sigma.power(*k).is_identity()).unwrap_or(0);
    Ok(Outcome::new(
        coeffs_match && iter_match && order == 4,
        format!("coefficients match: {coeffs_match}, F^m for m<8: {iter_match}, order {order}"),
    ))
}

pub fn group_order(_seed: u64) -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, n, want) in [(2u64, 2usize, 8u128), (2, 3, 128), (3, 1, 3), (3, 2, 81)] {
        let got = enumerate_count(pm(p), n)?;
        ok &= got == want && group_size_formula(pm(p), n) == Some(want);
        parts.push(format!("BB_{n}(F_{p})={got}"));
    }
    Ok(Outcome::new(ok, parts.join(", ")))
}

pub fn ostafe(_seed: u64) -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let p = pm(q);
        let size = (q as usize).pow(n as u32);
        let mut maximal = 0u128;
        for sigma in enumerate(p, n)? {
            let crit = sigma.is_maximal_orbit().is_some();
            let cycles = cycle_type(&to_table(&sigma)?) == vec![size];
            let kernel = star_kernel_dim(&sigma)? == 1;
            ok &= crit == cycles && cycles == kernel;
            maximal += crit as u128;
        }
        let exp = (size as u32 - 1) / (q as u32 - 1) - n as u32;
        let want = (q as u128 - 1).pow(n as u32) * (q as u128).pow(exp);
        ok &= maximal == want;
        parts.push(format!("BB_{n}(F_{q}): {maximal} maximal"));
    }
    Ok(Outcome::new(ok, parts.join(", ")))
}

const SMALL_SHAPES: [(u64, usize); 12] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (2, 7),
    (3, 1),
    (3, 3),
    (3, 5),
    (5, 2),
    (5, 3),
];

pub fn shift_formula(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..200 {
        let (q, n) = SMALL_SHAPES[rng.gen_range(0..SMALL_SHAPES.len())];
        let p = pm(q);
        let sigma = TriangularPermutation::random_maximal(p, n, &mut rng)?;
        let c_n = sigma.top_coeffs()[n - 1];
        let shift = if n % 2 == 1 { c_n } else { p.neg(c_n) };
        let tau = sigma.power((q as i128).pow(n as u32 - 1));
        let expected = TriangularPermutation::new(
            p,
            (0..n)
                .map(|i| ReducedPoly::constant(p, i, if i == n - 1 { shift as u64 } else { 0 }))
                .collect(),
        )?;
        bad += (tau != expected) as usize;
    }
    Ok(Outcome::new(
        bad == 0,
        format!("200 samples, {bad} mismatches"),
    ))
}

fn certificate_ok(sigma: &TriangularPermutation) -> Result<bool> {
    let delta = TriangularPermutation::delta_map(sigma.modulus(), sigma.n())?;
    let a = conjugate_to_delta(sigma)?;
    let b = conjugate_to_delta(sigma)?;
    Ok(a.chain(sigma)? == delta && a.phi().is_standard_form() && a == b)
}

pub fn canonicalization(seed: u64) -> Result<Outcome> {
    let mut count = 0;
    let mut bad = 0;
    for (q, n) in [(2u64, 2usize), (3, 2)] {
        for sigma in enumerate(pm(q), n)? {
            if sigma.is_maximal_orbit().is_some() {
                count += 1;
                bad += !certificate_ok(&sigma)? as usize;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let sigma = TriangularPermutation::random_maximal(pm(3), 3, &mut rng)?;
        count += 1;
        bad += !certificate_ok(&sigma)? as usize;
    }
    Ok(Outcome::new(
        bad == 0,
        format!("{count} maps, {bad} failures"),
    ))
}

pub fn fastforward_correct(seed: u64) -> Result<Outcome> {
    let shapes: [(u64, usize); 6] = [(2, 4), (2, 6), (3, 3), (3, 6), (5, 2), (5, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for trial in 0..1000 {
        let (q, n) = shapes[rng.gen_range(0..shapes.len())];
        let p = pm(q);
        let order = (q as u128).pow(n as u32);
        let m = rng.gen_range(0..2 * order);
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
        let start = crate::trigroup::zeta_inv(p, &v)? as usize;
        let mut counter = MultCounter::new();
        let (got, want) = match trial % 3 {
            0 => {
                let sigma = TriangularPermutation::random_maximal(p, n, &mut rng)?;
                let form = FastForwardForm::from_triangular(&sigma)?;
                let mut w = v.clone();
                for _ in 0..m {
                    w = sigma.apply(&w)?;
                }
                (form.eval_power(m as i128, &v, &mut counter)?, w)
            }
            k => {
                let form = sparse_generate(p, n, n, rng.gen(), k == 2)?;
                let table = form_table(&form, order)?;
                let w = digits_of(p, iterate(&table, m, start), n);
                (form.eval_power(m as i128, &v, &mut counter)?, w)
            }
        };
        bad += (got != want) as usize;
    }
    Ok(Outcome::new(
        bad == 0,
        format!("1000 triples, {bad} mismatches"),
    ))
}

/// `ceil(log2 p)`.
fn ceil_log2(p: u32) -> u64 {
    (u32::BITS - (p - 1).leading_zeros()) as u64
}

pub fn fastforward_cost(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut worst = 0f64;
    for (q, n) in [(2u64, 4usize), (2, 8), (5, 4), (5, 8)] {
        let p = pm(q);
        let per_chain = COST_CONSTANT * n as u64 * n as u64 * (2 + ceil_log2(q as u32));
        for wrap in [false, true] {
            for _ in 0..5 {
                let form = sparse_generate(p, n, n, rng.gen(), wrap)?;
                let chains = if wrap { 4 } else { 2 };
                let mut counts = Vec::new();
                for _ in 0..20 {
                    let m: i128 = rng.gen_range(-(1 << 40)..(1 << 40));
                    let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
                    let mut c = MultCounter::new();
                    form.eval_power(m, &v, &mut c)?;
                    counts.push(c.count());
                }
                let max = *counts.iter().max().expect("20 samples");
                ok &= counts.iter().all(|c| *c == counts[0]);
                ok &= max <= chains * per_chain;
                worst = worst.max(max as f64 / (chains * per_chain) as f64);
            }
        }
    }
    Ok(Outcome::new(
        ok,
        format!("C = {COST_CONSTANT}; counts constant in m; worst count / bound = {worst:.3}"),
    ))
}

pub fn lucas_digits(_seed: u64) -> Result<Outcome> {
    let mut ok = true;
    for q in [2u64, 3] {
        let p = pm(q);
        let cube = (q as usize).pow(3);
        for d in 0..cube {
            let g = tau_reduce(&BinomialPoly::basis(d), p)?;
            for m in 0..cube {
                let exact = binomial(&BigInt::from(m), d).mod_floor(&BigInt::from(q));
                ok &= g.eval_at(m as i128) as u64 == exact.to_u64().expect("below p");
            }
        }
        let qi = q as i128;
        for i in 0..4u32 {
            for m in 0..qi.pow(4) {
                ok &= q_eval(i as usize, m, p) as i128 == (m / qi.pow(i)) % qi;
            }
            for m in -qi.pow(3)..0 {
                let shifted = m + qi.pow(4);
                ok &= q_eval(i as usize, m, p) == q_eval(i as usize, shifted, p);
            }
        }
    }
    Ok(Outcome::new(
        ok,
        "p in {2,3}: C(T,d) for d < p^3, digits for m in [-p^3, p^4)",
    ))
}

pub fn flow_suite(_seed: u64) -> Result<Outcome> {
    let mut count = 0;
    let mut bad = Vec::new();
    for (q, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let p = pm(q);
        let order = (q as u128).pow(n as u32);
        for sigma in enumerate(p, n)? {
            count += 1;
            let flow = build_flow(&sigma)?;
            let table = to_table(&sigma)?;
            let powers_ok = (0..order).all(|m| {
                to_table(&flow.specialize(m as i128)).map(|t| t.table) == Ok(table_power(&table, m))
            });
            let w = flow.w_membership();
            let w_ok = w.iter().all(|c| c.pass)
                && w.iter().map(|c| c.lambda).collect::<Vec<_>>() == expected_w_lambdas(&sigma);
            let mut level_ok = true;
            for i in 0..n {
                let l = level_flow(&sigma, i)?;
                for m in 0..q as u32 {
                    let steps = (q as u128).pow(i as u32) * m as u128;
                    level_ok &= to_table(&l.specialize(m)?)?.table == table_power(&table, steps);
                }
            }
            if !(powers_ok && w_ok && level_ok) {
                bad.push(sigma.to_string());
            }
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("{count} maps, {} failures {}", bad.len(), bad.join("; ")),
    ))
}

pub fn roots(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..100 {
        let (q, n) = SMALL_SHAPES[rng.gen_range(0..SMALL_SHAPES.len())];
        let sigma = TriangularPermutation::random(pm(q), n, &mut rng)?;
        let m = loop {
            let m: i128 = rng.gen_range(-10_000..10_000);
            if m.rem_euclid(q as i128) != 0 {
                break m;
            }
        };
        bad += (mth_root(&sigma, m)?.power(m) != sigma) as usize;
    }
    Ok(Outcome::new(bad == 0, format!("100 pairs, {bad} failures")))
}

pub fn group_laws(_seed: u64) -> Result<Outcome> {
    let mut ok = true;
    for (q, n) in [(2u64, 2usize), (3, 2)] {
        let p = pm(q);
        let all = enumerate(p, n)?;
        let id = TriangularPermutation::identity(p, n)?;
        for a in &all {
            ok &= a.compose(&a.invert())? == id && a.invert().compose(a)? == id;
            ok &= id.compose(a)? == *a && a.compose(&id)? == *a;
            ok &= a.power((q as i128).pow(n as u32)) == id;
            for b in all.iter().step_by(5) {
                let ab = to_table(&a.compose(b)?)?;
                ok &= ab == to_table(a)?.compose(&to_table(b)?);
                for c in all.iter().step_by(7) {
                    ok &= a.compose(&b.compose(c)?)? == a.compose(b)?.compose(c)?;
                }
            }
        }
    }
    Ok(Outcome::new(ok, "BB_2(F_2), BB_2(F_3)"))
}

pub fn cycle_lengths(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..200 {
        let (q, n) = SMALL_SHAPES[rng.gen_range(0..SMALL_SHAPES.len())];
        let sigma = TriangularPermutation::random(pm(q), n, &mut rng)?;
        let cycles = cycle_type(&to_table(&sigma)?);
        ok &= cycles.iter().sum::<usize>() == (q as usize).pow(n as u32);
        ok &= cycles.iter().all(|len| {
            let mut l = *len;
            while l % q as usize == 0 {
                l /= q as usize;
            }
            l == 1
        });
    }
    Ok(Outcome::new(ok, "200 random maps"))
}

pub fn conjugacy_invariance(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..100 {
        let (q, n) = SMALL_SHAPES[rng.gen_range(0..SMALL_SHAPES.len())];
        let p = pm(q);
        let sigma = TriangularPermutation::random_maximal(p, n, &mut rng)?;
        let psi = TriangularPermutation::random(p, n, &mut rng)?;
        let conj = psi.invert().compose(&sigma.compose(&psi)?)?;
        ok &= conj.is_maximal_orbit() == sigma.is_maximal_orbit();
    }
    Ok(Outcome::new(ok, "100 random conjugates"))
}

pub fn binomial_roundtrip(seed: u64) -> Result<Outcome> {
    use num_rational::BigRational;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..50 {
        let deg = rng.gen_range(0..7);
        let poly: Vec<BigRational> = (0..=deg)
            .map(|_| {
                BigRational::new(
                    rng.gen_range(-20i64..20).into(),
                    rng.gen_range(1i64..9).into(),
                )
            })
            .collect();
        let f = crate::intpoly::binom_expand(&poly);
        let mut trimmed = poly.clone();
        while trimmed
            .last()
            .is_some_and(|c| *c == BigRational::from_integer(0.into()))
        {
            trimmed.pop();
        }
        ok &= f.to_power_basis() == trimmed;
        for _ in 0..20 {
            let m: i64 = rng.gen_range(-1000..1000);
            let t = BigRational::from_integer(m.into());
            let direct = poly
                .iter()
                .rev()
                .fold(BigRational::from_integer(0.into()), |acc, c| acc * &t + c);
            ok &= f.eval(&BigInt::from(m)) == direct;
        }
    }
    Ok(Outcome::new(ok, "50 random rational polynomials"))
}
