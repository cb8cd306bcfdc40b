mod common;

use common::{pm, points, random_poly};
use proptest::prelude::*;
use triperm::ffring::ReducedPoly;

fn shape() -> impl Strategy<Value = (u64, usize)> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)].prop_flat_map(|p| (Just(p), 0usize..=3))
}

proptest! {
    #[test]
    fn ring_laws((p, k) in shape(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (random_poly(p, k, a), random_poly(p, k, b), random_poly(p, k, c));
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.add(&f.neg()).unwrap(), ReducedPoly::zero(pm(p), k));
    }

    #[test]
    fn values_are_pointwise((p, k) in shape(), a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (random_poly(p, k, a), random_poly(p, k, b));
        let (fv, gv, prod) = (f.values(), g.values(), f.mul(&g).unwrap().values());
        let q = pm(p);
        for (i, v) in points(p as u32, k).enumerate() {
            prop_assert_eq!(f.evaluate(&v).value(), fv[i]);
            prop_assert_eq!(prod[i], q.mul(fv[i], gv[i]));
        }
        prop_assert_eq!(ReducedPoly::from_values(q, k, fv).unwrap(), f);
    }

    #[test]
    fn substitution_is_composition((p, k) in shape(), a in any::<u64>(), s in any::<u64>()) {
        // with no substitutions the target arity is undetermined
        prop_assume!(k > 0);
        let f = random_poly(p, k, a);
        let subs: Vec<ReducedPoly> = (0..k).map(|j| random_poly(p, 2, s.wrapping_add(j as u64))).collect();
        let h = f.substitute(&subs).unwrap();
        for v in points(p as u32, 2) {
            let inner: Vec<u32> = subs.iter().map(|g| g.evaluate(&v).value()).collect();
            prop_assert_eq!(h.evaluate(&v), f.evaluate(&inner));
        }
    }

    #[test]
    fn prefix_evaluation((p, k) in shape(), a in any::<u64>(), r in 0usize..=3) {
        let r = r.min(k);
        let f = random_poly(p, k, a);
        for fixed in points(p as u32, r).take(5) {
            let g = f.partial_eval_prefix(&fixed).unwrap();
            for rest in points(p as u32, k - r) {
                let full: Vec<u32> = fixed.iter().chain(&rest).copied().collect();
                prop_assert_eq!(g.evaluate(&rest), f.evaluate(&full));
            }
        }
    }

    #[test]
    fn reduction_matches_functions(p in prop_oneof![Just(2u64), Just(3), Just(5)], e in 0u64..40, c in 0u64..100) {
        let q = pm(p);
        let f = ReducedPoly::canonical_reduce(q, 1, [(vec![e], c)]).unwrap();
        for x in 0..p as u32 {
            let direct = q.mul(q.reduce(c), if e == 0 { 1 } else { q.pow(x, e) });
            prop_assert_eq!(f.evaluate(&[x]).value(), direct);
        }
    }
}

#[test]
fn horner_cost_of_dense_polynomial() {
    let f = ReducedPoly::from_coeffs(pm(3), 3, vec![1; 27]).unwrap();
    let mut c = triperm::ffring::MultCounter::new();
    f.evaluate_counted(&[1, 2, 0], &mut c);
    assert_eq!(c.count(), 26);
}
