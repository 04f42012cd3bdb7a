//! Compensated summation (Neumaier's variant of Kahan).

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Complex accumulator with independent compensation of both parts.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sums in iteration order with compensation.
pub fn sum_f64<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut s = NeumaierSum::new();
    for x in it {
        s.add(x);
    }
    s.value()
}

pub fn sum_complex<I: IntoIterator<Item = Complex64>>(it: I) -> Complex64 {
    let mut s = ComplexSum::new();
    for x in it {
        s.add(x);
    }
    s.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_bits() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(sum_f64(xs), 2.0);
        assert_eq!(xs.iter().sum::<f64>(), 0.0);
        let n = 1_000_000;
        let s = sum_f64(std::iter::repeat(0.1).take(n));
        assert!((s - 100_000.0).abs() < 1e-9);
    }
}
