use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::form::FastForwardForm;
use crate::error::{Error, Result};
use crate::ffring::MultCounter;

/// Largest `p^n` for which the naive iteration count is reported.
pub const DEFAULT_NAIVE_CAP: u128 = 1 << 20;

/// Multiplication statistics over random `(m, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub p: u32,
    pub n: usize,
    pub budget: Option<usize>,
    pub trials: usize,
    pub ff_mults_mean: f64,
    pub ff_mults_max: u64,
    /// Mean of `m` times the cost of one step, for `p^n` within the cap.
    pub naive_mults_mean: Option<f64>,
    /// Set for `p = 2`, where a multiplication costs no more than an addition.
    pub indicative_only: bool,
}

pub fn count_report(
    form: &FastForwardForm,
    trials: usize,
    seed: u64,
    naive_cap: u128,
) -> Result<CountReport> {
    if trials == 0 {
        return Err(Error::usage("trials must be at least 1"));
    }
    let p = form.modulus();
    let n = form.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = form.order().filter(|o| *o <= i128::MAX as u128);
    let step_cost = form.eval_cost();
    let naive = form.order().is_some_and(|o| o <= naive_cap);

    let mut total = 0u128;
    let mut max = 0u64;
    let mut naive_total = 0f64;
    for _ in 0..trials {
        let m: i128 = match order {
            Some(o) => rng.gen_range(0..o) as i128,
            None => rng.gen::<u64>() as i128,
        };
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p.get())).collect();
        let mut counter = MultCounter::new();
        form.eval_power(m, &v, &mut counter)?;
        total += counter.count() as u128;
        max = max.max(counter.count());
        naive_total += m as f64 * step_cost as f64;
    }
    Ok(CountReport {
        p: p.get(),
        n,
        budget: form.seed_info().map(|s| s.budget),
        trials,
        ff_mults_mean: total as f64 / trials as f64,
        ff_mults_max: max,
        naive_mults_mean: naive.then(|| naive_total / trials as f64),
        indicative_only: p.get() == 2,
    })
}
