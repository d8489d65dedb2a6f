use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

/// A finitely supported map `k -> f̂(k)` of Fourier coefficients.
///
/// Exact zeros are never stored, so [`SpectralFunction::support`] lists the
/// indices that actually carry mass. Trigonometric polynomials are
/// represented the same way.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SpectralFunction<T> {
    coefficients: BTreeMap<i64, Complex<T>>,
}

impl<T: Real> SpectralFunction<T> {
    pub fn new() -> Self {
        Self { coefficients: BTreeMap::new() }
    }

    /// Builds from `(k, f̂(k))` pairs; repeated indices are summed.
    pub fn from_coefficients<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex<T>)>,
    {
        let mut f = Self::new();
        for (k, c) in pairs {
            let sum = f.coefficient(k) + c;
            f.set(k, sum);
        }
        f
    }

    /// Builds from real coefficients.
    pub fn from_real<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
    {
        Self::from_coefficients(pairs.into_iter().map(|(k, v)| (k, Complex::new(v, T::zero()))))
    }

    /// The single harmonic `c·e^{ikx}`.
    pub fn harmonic(k: i64, c: Complex<T>) -> Self {
        Self::from_coefficients([(k, c)])
    }

    pub fn set(&mut self, k: i64, c: Complex<T>) {
        if c.is_zero() {
            self.coefficients.remove(&k);
        } else {
            self.coefficients.insert(k, c);
        }
    }

    pub fn coefficient(&self, k: i64) -> Complex<T> {
        self.coefficients.get(&k).copied().unwrap_or_else(Complex::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.coefficients.iter().map(|(&k, &c)| (k, c))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coefficients.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `max |k|` over the support, 0 for the zero function.
    pub fn support_radius(&self) -> u64 {
        self.coefficients.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    /// Applies `g(k, f̂(k))` to every stored coefficient.
    pub fn map<F>(&self, mut g: F) -> Self
    where
        F: FnMut(i64, Complex<T>) -> Complex<T>,
    {
        Self::from_coefficients(self.iter().map(|(k, c)| (k, g(k, c))))
    }

    /// Keeps the coefficients whose index satisfies `keep`.
    pub fn filter<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(i64) -> bool,
    {
        Self {
            coefficients: self
                .coefficients
                .iter()
                .filter(|(&k, _)| keep(k))
                .map(|(&k, &c)| (k, c))
                .collect(),
        }
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        self.map(|_, v| v * c)
    }

    /// Replaces every coefficient by its modulus.
    pub fn moduli(&self) -> Self {
        self.map(|_, v| Complex::new(v.norm(), T::zero()))
    }

    /// Point value `Σ f̂(k) e^{ikx}`.
    pub fn evaluate(&self, x: T) -> Complex<T> {
        self.iter()
            .map(|(k, c)| c * Complex::from_polar(T::one(), T::from_index(k) * x))
            .fold(Complex::zero(), |acc, v| acc + v)
    }

    /// Samples on the uniform grid `x_j = 2πj/n`, `j = 0..n`.
    pub fn sample_uniform(&self, n: usize) -> Vec<Complex<T>> {
        let step = T::TAU() / T::from_count(n);
        (0..n).map(|j| self.evaluate(step * T::from_count(j))).collect()
    }
}

impl<T: Real> Add for &SpectralFunction<T> {
    type Output = SpectralFunction<T>;

    fn add(self, rhs: Self) -> SpectralFunction<T> {
        SpectralFunction::from_coefficients(self.iter().chain(rhs.iter()))
    }
}

impl<T: Real> Neg for &SpectralFunction<T> {
    type Output = SpectralFunction<T>;

    fn neg(self) -> SpectralFunction<T> {
        self.map(|_, c| -c)
    }
}

impl<T: Real> Sub for &SpectralFunction<T> {
    type Output = SpectralFunction<T>;

    fn sub(self, rhs: Self) -> SpectralFunction<T> {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_not_stored() {
        let f = SpectralFunction::<f64>::from_real([(0, 1.0), (3, 0.0), (-2, 2.0), (0, -1.0)]);
        assert_eq!(f.support().collect::<Vec<_>>(), vec![-2]);
        assert_eq!(f.support_radius(), 2);
        assert!(SpectralFunction::<f64>::new().is_empty());
        assert_eq!(SpectralFunction::<f64>::new().support_radius(), 0);
    }

    #[test]
    fn arithmetic_cancels() {
        let f = SpectralFunction::<f64>::from_real([(1, 1.0), (2, -0.5)]);
        let g = SpectralFunction::<f64>::from_real([(1, 0.5)]);
        let d = &(&f - &g) - &f;
        assert_eq!(d, g.scaled(Complex::new(-1.0, 0.0)));
        assert!((&f - &f).is_empty());
    }

    #[test]
    fn evaluation_of_cosine() {
        let f = SpectralFunction::<f64>::from_real([(-1, 0.5), (1, 0.5)]);
        let v = f.evaluate(0.3);
        assert!((v.re - 0.3f64.cos()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }
}
