mod common;

use common::{pm, points, random_maximal};
use proptest::prelude::*;
use triperm::fastforward::{count_report, sparse_generate, FastForwardForm, DEFAULT_NAIVE_CAP};
use triperm::ffring::MultCounter;
use triperm::oracle::{cycle_type, form_table};
use triperm::trigroup::TriangularPermutation;

fn shape() -> impl Strategy<Value = (u64, usize)> {
    prop_oneof![
        (Just(2u64), 1usize..=8),
        (Just(3u64), 1usize..=5),
        (Just(5u64), 1usize..=3)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn powers_compose((p, n) in shape(), seed in any::<u64>(), wrap in any::<bool>(),
                      a in any::<i64>(), b in any::<i64>(), code in any::<u64>()) {
        let form = sparse_generate(pm(p), n, n, seed, wrap).unwrap();
        let v: Vec<u32> = (0..n).map(|i| ((code >> (3 * i)) % p) as u32).collect();
        let mut c = MultCounter::new();
        let inner = form.eval_power(b as i128, &v, &mut c).unwrap();
        prop_assert_eq!(
            form.eval_power(a as i128, &inner, &mut c).unwrap(),
            form.eval_power(a as i128 + b as i128, &v, &mut c).unwrap()
        );
        prop_assert_eq!(form.eval_power(0, &v, &mut c).unwrap(), v.clone());
        let order = (p as i128).pow(n as u32);
        prop_assert_eq!(form.eval_power(order, &v, &mut c).unwrap(), v);
    }

    #[test]
    fn factors_invert((p, n) in shape(), seed in any::<u64>(), code in any::<u64>()) {
        let form = sparse_generate(pm(p), n, n, seed, true).unwrap();
        let v: Vec<u32> = (0..n).map(|i| ((code >> (3 * i)) % p) as u32).collect();
        let mut c = MultCounter::new();
        for f in form.factors().iter().chain(form.wrap()) {
            let mut w = v.clone();
            f.apply(&mut w, &mut c);
            f.apply_inverse(&mut w, &mut c);
            prop_assert_eq!(&w, &v);
        }
    }

    #[test]
    fn generated_maps_are_single_cycles((p, n) in shape(), seed in any::<u64>(), wrap in any::<bool>()) {
        let form = sparse_generate(pm(p), n, n, seed, wrap).unwrap();
        let order = (p as u128).pow(n as u32);
        prop_assume!(order <= 256);
        let t = form_table(&form, 256).unwrap();
        prop_assert_eq!(cycle_type(&t), vec![order as usize]);
    }

    #[test]
    fn cost_is_independent_of_m((p, n) in shape(), seed in any::<u64>(), m in any::<i128>()) {
        let form = sparse_generate(pm(p), n, n, seed, false).unwrap();
        let v = vec![0; n];
        let mut c = MultCounter::new();
        form.eval_power(m, &v, &mut c).unwrap();
        prop_assert_eq!(c.count(), form.eval_cost());
    }

    #[test]
    fn sampled_triangular_powers((p, n) in prop_oneof![(Just(2u64), 1usize..=8), (Just(3u64), 1usize..=6), (Just(5u64), 1usize..=4)],
                                 seed in any::<u64>(), m in -2000i128..2000, code in any::<u64>()) {
        let s = random_maximal(p, n, seed);
        let form = FastForwardForm::from_triangular(&s).unwrap();
        let v: Vec<u32> = (0..n).map(|i| ((code >> (3 * i)) % p) as u32).collect();
        let mut c = MultCounter::new();
        prop_assert_eq!(form.eval_power(m, &v, &mut c).unwrap(), s.power(m).apply(&v).unwrap());
    }
}

#[test]
fn triangular_forms_exhaustive() {
    for (p, n, seeds) in [
        (2u64, 1usize, 4u64),
        (2, 3, 4),
        (2, 6, 2),
        (3, 2, 4),
        (3, 3, 2),
        (5, 2, 2),
        (7, 2, 1),
    ] {
        for seed in 0..seeds {
            let s = random_maximal(p, n, seed);
            let form = FastForwardForm::from_triangular(&s).unwrap();
            let order = (p as i128).pow(n as u32);
            let mut c = MultCounter::new();
            let mut sm = TriangularPermutation::identity(pm(p), n).unwrap();
            for m in 0..order {
                for v in points(p as u32, n) {
                    assert_eq!(
                        form.eval_power(m, &v, &mut c).unwrap(),
                        sm.apply(&v).unwrap()
                    );
                }
                sm = s.compose(&sm).unwrap();
            }
        }
    }
}

#[test]
fn naive_grows_with_m_while_fast_forward_does_not() {
    let s = random_maximal(3, 4, 11);
    let form = FastForwardForm::from_triangular(&s).unwrap();
    let v = vec![1, 2, 0, 1];
    let naive = |m: u32| {
        let mut c = MultCounter::new();
        let mut w = v.clone();
        for _ in 0..m {
            w = s.apply_counted(&w, &mut c).unwrap();
        }
        c.count()
    };
    let per_step = naive(1);
    assert!(per_step > 0);
    for m in [10u32, 40, 80] {
        assert_eq!(naive(m), per_step * m as u64);
        let mut c = MultCounter::new();
        form.eval_power(m as i128, &v, &mut c).unwrap();
        assert_eq!(c.count(), form.eval_cost());
    }
    let r = count_report(&form, 50, 3, DEFAULT_NAIVE_CAP).unwrap();
    assert_eq!(r.ff_mults_max as f64, r.ff_mults_mean);
    assert!(r.naive_mults_mean.unwrap() > r.ff_mults_mean);
}

#[test]
fn determinism_of_generation() {
    let a = sparse_generate(pm(3), 4, 4, 42, false).unwrap();
    let b = sparse_generate(pm(3), 4, 4, 42, false).unwrap();
    let ta = triperm::doc::emit_map(&triperm::doc::MapDocument::FastForward(a));
    let tb = triperm::doc::emit_map(&triperm::doc::MapDocument::FastForward(b));
    assert_eq!(ta, tb);
}
