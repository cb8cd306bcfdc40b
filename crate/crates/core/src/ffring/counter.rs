use std::ops::AddAssign;

/// Running tally of F_p multiplications.
///
/// Counted evaluation routines take `&mut MultCounter`; concurrent callers
/// each own one and merge with `+=`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultCounter(u64);

impl MultCounter {
    pub fn new() -> Self {
        MultCounter(0)
    }

    #[inline]
    pub fn tick(&mut self) {
        self.0 += 1;
    }

    #[inline]
    pub fn add(&mut self, n: u64) {
        self.0 += n;
    }

    pub fn count(self) -> u64 {
        self.0
    }
}

impl AddAssign for MultCounter {
    fn add_assign(&mut self, rhs: MultCounter) {
        self.0 += rhs.0;
    }
}
