mod common;

use common::pm;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use triperm::intpoly::{
    binom_eval, binom_expand, binomial, lucas_binom, periodic_to_qpoly, q_eval, tau_reduce,
    BinomialPoly,
};

fn exact_mod(m: i64, d: usize, p: u64) -> u32 {
    binomial(&BigInt::from(m), d)
        .mod_floor(&BigInt::from(p))
        .to_u32()
        .unwrap()
}

#[test]
fn lucas_exhaustive_small() {
    for p in [2u64, 3, 5] {
        let bound = if p == 5 { 125 } else { (p as i64).pow(4) };
        for m in 0..bound {
            for d in 0..bound as usize {
                assert_eq!(
                    lucas_binom(m as u128, d as u128, pm(p)),
                    exact_mod(m, d, p),
                    "C({m},{d}) mod {p}"
                );
            }
        }
    }
}

#[test]
fn digits_at_negative_arguments() {
    for p in [2u64, 3] {
        for i in 0..3usize {
            let d = (p as usize).pow(i as u32);
            for m in -64i64..0 {
                assert_eq!(
                    q_eval(i, m as i128, pm(p)),
                    exact_mod(m, d, p),
                    "Q_{i}({m}) mod {p}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn lucas_sampled(p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], m in 0u32..5000, d in 0usize..200) {
        prop_assert_eq!(lucas_binom(m as u128, d as u128, pm(p)), exact_mod(m as i64, d, p));
    }

    #[test]
    fn q_digits_are_periodic(p in prop_oneof![Just(2u64), Just(3), Just(5)], i in 0usize..5, m in -100_000i128..100_000) {
        let period = (p as i128).pow(i as u32 + 1);
        prop_assert_eq!(q_eval(i, m + period, pm(p)), q_eval(i, m, pm(p)));
        if m >= 0 {
            prop_assert_eq!(q_eval(i, m, pm(p)), lucas_binom(m as u128, (p as u128).pow(i as u32), pm(p)));
            prop_assert_eq!(q_eval(i, m, pm(p)) as i128, (m / (p as i128).pow(i as u32)) % p as i128);
        }
    }

    #[test]
    fn expand_and_evaluate(coeffs in prop::collection::vec((-30i64..30, 1i64..12), 0..7), ms in prop::collection::vec(-10_000i64..10_000, 100)) {
        let poly: Vec<BigRational> = coeffs.iter().map(|(n, d)| BigRational::new((*n).into(), (*d).into())).collect();
        let f = binom_expand(&poly);
        for m in ms {
            let t = BigRational::from_integer(m.into());
            let direct = poly.iter().rev().fold(BigRational::from_integer(0.into()), |acc, c| acc * &t + c);
            prop_assert_eq!(binom_eval(&f, &BigInt::from(m)), direct);
        }
    }

    #[test]
    fn tau_agrees_with_values(p in prop_oneof![Just(2u64), Just(3), Just(5)],
                              coeffs in prop::collection::vec((0usize..60, -50i64..50, 1i64..8), 1..6)) {
        let terms = coeffs.iter().map(|(i, n, d)| {
            // denominators prime to p
            let d = if d % p as i64 == 0 { d + 1 } else { *d };
            (*i, BigRational::new((*n).into(), d.into()))
        });
        let f = BinomialPoly::new(terms);
        prop_assume!(f.is_p_integral(p as u32));
        let g = tau_reduce(&f, pm(p)).unwrap();
        let span = (p as i128).pow(g.arity() as u32 + 1);
        let q = BigInt::from(p);
        for m in -span..span {
            let v = f.eval(&BigInt::from(m as i64));
            let want = (v.numer().mod_floor(&q) * num_integer::Integer::extended_gcd(&v.denom().mod_floor(&q), &q).x)
                .mod_floor(&q);
            prop_assert_eq!(g.eval_at(m) as u64, want.to_u64().unwrap());
        }
    }

    #[test]
    fn periodic_roundtrip(p in prop_oneof![Just(2u64), Just(3), Just(5)], r in 0u32..4, seed in any::<u64>()) {
        let len = (p as usize).pow(r);
        let vals: Vec<u32> = (0..len).map(|i| ((seed >> (i % 60)) as usize + i * 7) as u32 % p as u32).collect();
        let g = periodic_to_qpoly(&vals, pm(p)).unwrap();
        for m in -(len as i128)..2 * len as i128 {
            prop_assert_eq!(g.eval_at(m), vals[m.rem_euclid(len as i128) as usize]);
        }
    }
}
