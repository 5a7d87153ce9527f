//! Compensated accumulation and unit-root tables.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// Neumaier (improved Kahan) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Componentwise compensated complex sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
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

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = ComplexSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// The `N` powers of `e^{2 pi i / N}`, each evaluated directly from its reduced exponent.
#[derive(Debug, Clone)]
pub struct UnitRoots {
    modulus: u64,
    table: Vec<Complex64>,
}

impl UnitRoots {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1);
        let table = (0..modulus)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / modulus as f64))
            .collect();
        UnitRoots { modulus, table }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `e^{2 pi i k / N}` for any integer `k`.
    #[inline]
    pub fn at(&self, k: i128) -> Complex64 {
        self.table[k.rem_euclid(self.modulus as i128) as usize]
    }

    /// `e^{2 pi i a n / N}`.
    #[inline]
    pub fn pow(&self, a: i64, n: u64) -> Complex64 {
        self.at(a as i128 * n as i128)
    }
}

/// `e^{2 pi i k / N}` without a table; the exponent is reduced exactly first.
pub fn unit_root(k: i128, modulus: u64) -> Complex64 {
    let r = k.rem_euclid(modulus as i128) as f64;
    Complex64::from_polar(1.0, TAU * r / modulus as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_small_terms() {
        let mut acc = Neumaier::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        acc.add(-1.0);
        // naive summation returns 0 here
        assert!((acc.value() - 1e-10).abs() < 1e-18);
    }

    #[test]
    fn roots_sum_to_zero() {
        let r = UnitRoots::new(97);
        let s: ComplexSum = (0..97).map(|k| r.at(k)).collect();
        assert!(s.value().norm() < 1e-13);
        assert_eq!(r.at(-1), r.at(96));
        assert!((unit_root(5 * 97 + 3, 97) - r.at(3)).norm() < 1e-15);
    }
}
