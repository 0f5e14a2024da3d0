//! Neumaier-compensated summation.

use super::dd::two_sum;

/// Running sum with a separate compensation term for the low-order bits lost
/// at each addition.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedAccumulator {
    sum: f64,
    compensation: f64,
}

impl CompensatedAccumulator {
    pub const fn new() -> Self {
        Self { sum: 0.0, compensation: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.compensation += e;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedAccumulator {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedAccumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedAccumulator>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_million_tenths() {
        let mut acc = CompensatedAccumulator::new();
        for _ in 0..10_000_000 {
            acc.add(0.1);
        }
        let rel = (acc.value() - 1e6).abs() / 1e6;
        assert!(rel < 1e-14, "relative error {rel}");
    }

    #[test]
    fn cancellation_recovered() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(v), 2.0);
        assert_ne!(v.iter().sum::<f64>(), 2.0);
    }
}
