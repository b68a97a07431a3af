//! Compensated accumulation in fixed index order.

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if libm::fabs(self.sum) >= libm::fabs(value) {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = NeumaierSum::new();
    acc.extend(values);
    acc.total()
}

/// Running mean and variance of a sample, accumulated as compensated sums
/// of deviations from the first observation.
///
/// Shifting by the first value makes a constant sample produce exactly
/// zero variance and an exact mean.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShiftedMoments {
    count: u64,
    shift: f64,
    sum: NeumaierSum,
    sum_sq: NeumaierSum,
}

impl ShiftedMoments {
    pub const fn new() -> Self {
        Self {
            count: 0,
            shift: 0.0,
            sum: NeumaierSum::new(),
            sum_sq: NeumaierSum::new(),
        }
    }

    #[inline]
    pub fn push(&mut self, value: f64) {
        if self.count == 0 {
            self.shift = value;
        }
        let d = value - self.shift;
        self.sum.add(d);
        self.sum_sq.add(d * d);
        self.count += 1;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        self.shift + self.sum.total() / self.count as f64
    }

    /// Unbiased sample variance; zero for fewer than two observations.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let s = self.sum.total();
        let v = (self.sum_sq.total() - s * s / n) / (n - 1.0);
        if v > 0.0 {
            v
        } else {
            0.0
        }
    }
}
