//! Construction and manipulation of spectral functions: ingestion from
//! samples, Fourier partial sums, ψ-derivatives and fractional differences.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seq_norms::SpectralFunction;

/// The multiplier sequence `ψ_k` of a ψ-derivative.
///
/// `Power { r }` is the canonical family `ψ_k = |k|^{-r}` whose derivative is
/// written `f^{(r)}`. Index 0 never takes part in ψ-differentiation.
#[derive(Clone, Debug, PartialEq)]
pub enum PsiWeights<T> {
    Power { r: T },
    Table(BTreeMap<i64, Complex<T>>),
}

impl<T: Real> PsiWeights<T> {
    pub fn power(r: T) -> Result<Self> {
        if !(r > T::zero()) || !r.is_finite() {
            return Err(Error::domain(format!("power family needs r > 0, got {r}")));
        }
        Ok(PsiWeights::Power { r })
    }

    /// An explicit table of nonzero weights.
    pub fn table<I: IntoIterator<Item = (i64, Complex<T>)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if v.is_zero() || !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::domain(format!("ψ_{k} must be finite and nonzero")));
            }
            map.insert(k, v);
        }
        Ok(PsiWeights::Table(map))
    }

    pub fn is_power(&self) -> bool {
        matches!(self, PsiWeights::Power { .. })
    }

    /// `ψ_k`, or `None` when undefined (index 0, or absent from a table).
    pub fn value(&self, k: i64) -> Option<Complex<T>> {
        match self {
            PsiWeights::Power { r } => (k != 0)
                .then(|| Complex::new(T::from_index(k).abs().powf(-*r), T::zero())),
            PsiWeights::Table(map) => map.get(&k).copied(),
        }
    }

    pub(crate) fn modulus(&self, k: i64) -> Result<T> {
        self.value(k)
            .map(|v| v.norm())
            .ok_or_else(|| Error::domain(format!("ψ_{k} is undefined")))
    }
}

/// A positive fractional order `α` together with `⌈α⌉`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FractionalOrder<T> {
    alpha: T,
    ceil: u32,
}

impl<T: Real> FractionalOrder<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::domain(format!("order must be positive, got {alpha}")));
        }
        let ceil = alpha
            .ceil()
            .to_u32()
            .ok_or_else(|| Error::domain(format!("order {alpha} is too large")))?;
        Ok(Self { alpha, ceil })
    }

    pub fn integer(n: u32) -> Result<Self> {
        Self::new(T::from_u32(n).expect("u32 fits scalar"))
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `inf{m ∈ ℕ : m >= α}`.
    pub fn ceil(&self) -> u32 {
        self.ceil
    }

    pub fn is_integer(&self) -> bool {
        self.alpha == self.alpha.ceil()
    }

    /// `2^{⌈α⌉}`, the bound on `Σ_j |binom(α, j)|`.
    pub fn binomial_mass_bound(&self) -> T {
        T::lit(2.0).powi(self.ceil as i32)
    }
}

/// Uniform grid size used when sampling polynomials of degree `<= cutoff`:
/// the smallest power of two that is at least `4·cutoff` (and at least 4).
pub fn sample_grid_size(cutoff: usize) -> usize {
    (4 * cutoff).max(4).next_power_of_two()
}

/// Discrete Fourier estimates of `f̂(k)`, `|k| <= cutoff`, from samples on the
/// uniform grid `x_j = 2πj/N` over `[0, 2π)`.
///
/// Normalised by `1/N` so that `e^{ik₀x}` yields coefficient 1 at `k₀`.
pub fn coefficients_from_samples<T: Real>(
    samples: &[Complex<T>],
    cutoff: usize,
) -> Result<SpectralFunction<T>> {
    let n = samples.len();
    if n < 2 * cutoff + 1 {
        return Err(Error::domain(format!(
            "{n} samples cannot resolve cutoff {cutoff} (need at least {})",
            2 * cutoff + 1
        )));
    }
    let mut buffer = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    let scale = T::one() / T::from_count(n);
    let c = cutoff as i64;
    Ok(SpectralFunction::from_coefficients((-c..=c).map(|k| {
        let bin = if k >= 0 { k as usize } else { n - k.unsigned_abs() as usize };
        (k, buffer[bin] * scale)
    })))
}

/// Fourier partial sum `S_{n-1}`: keeps `|k| <= n - 1`. `n = 0` gives zero.
pub fn partial_sum<T: Real>(f: &SpectralFunction<T>, n: u64) -> SpectralFunction<T> {
    f.filter(|k| k.unsigned_abs() < n)
}

/// ψ-derivative: `ĝ(k) = f̂(k)/ψ_k` for `k ≠ 0` and `ĝ(0) = 0`.
pub fn psi_derivative<T: Real>(
    f: &SpectralFunction<T>,
    psi: &PsiWeights<T>,
) -> Result<SpectralFunction<T>> {
    let mut out = SpectralFunction::new();
    for (k, c) in f.iter().filter(|&(k, _)| k != 0) {
        let w = psi
            .value(k)
            .ok_or_else(|| Error::domain(format!("ψ_{k} is undefined on the support")))?;
        out.set(k, c / w);
    }
    Ok(out)
}

/// `f^{(r)}`: coefficients multiplied by `|k|^r`, mean removed.
pub fn fractional_derivative<T: Real>(f: &SpectralFunction<T>, r: T) -> Result<SpectralFunction<T>> {
    psi_derivative(f, &PsiWeights::power(r)?)
}

/// Generalised binomial coefficient `α(α-1)…(α-j+1)/j!`.
pub fn binomial_fractional<T: Real>(order: &FractionalOrder<T>, j: u32) -> T {
    (0..j).fold(T::one(), |acc, i| {
        let i = T::from_u32(i).expect("u32 fits scalar");
        acc * (order.alpha - i) / (i + T::one())
    })
}

/// `|1 - e^{-ikh}|^α = 2^α |sin(kh/2)|^α`.
pub fn difference_multiplier_modulus<T: Real>(order: &FractionalOrder<T>, k: i64, h: T) -> T {
    let s = (T::from_index(k) * h / T::lit(2.0)).sin().abs();
    (T::lit(2.0) * s).powf(order.alpha)
}

/// `(1 - e^{-ikh})^α` on the principal branch.
pub fn difference_multiplier<T: Real>(order: &FractionalOrder<T>, k: i64, h: T) -> Complex<T> {
    let z = Complex::new(T::one(), T::zero()) - Complex::from_polar(T::one(), -T::from_index(k) * h);
    if z.is_zero() {
        Complex::zero()
    } else {
        z.powf(order.alpha)
    }
}

/// Fractional difference `Δ_h^α f` in coefficient space.
///
/// Exact for finitely supported `f`: the binomial series collapses to the
/// multiplier `(1 - e^{-ikh})^α` on each coefficient.
pub fn fractional_difference<T: Real>(
    f: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    h: T,
) -> SpectralFunction<T> {
    f.map(|k, c| c * difference_multiplier(order, k, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq_norms::{luxemburg_norm, ExponentWeightPair, NormQuery};
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn order_ceiling() {
        let o = FractionalOrder::new(2.0f64).unwrap();
        assert_eq!(o.ceil(), 2);
        assert!(o.is_integer());
        let o = FractionalOrder::new(2.01f64).unwrap();
        assert_eq!(o.ceil(), 3);
        assert!(!o.is_integer());
        assert_eq!(FractionalOrder::new(0.3f64).unwrap().ceil(), 1);
        assert!(FractionalOrder::new(0.0f64).is_err());
        assert!(FractionalOrder::new(f64::NAN).is_err());
    }

    #[test]
    fn dft_examples() {
        let n = 64;
        let step = 2.0 * PI / n as f64;
        let samples: Vec<_> = (0..n).map(|j| Complex::from_polar(1.0, 3.0 * step * j as f64)).collect();
        let f = coefficients_from_samples(&samples, 5).unwrap();
        for k in -5..=5 {
            let expect = if k == 3 { 1.0 } else { 0.0 };
            assert!((f.coefficient(k) - c(expect)).norm() < 1e-12, "k = {k}");
        }

        let f = coefficients_from_samples(&[c(2.0); 8], 1).unwrap();
        assert!((f.coefficient(0) - c(2.0)).norm() < 1e-14);
        assert!(f.coefficient(1).norm() < 1e-14);

        let samples: Vec<_> = (0..16).map(|j| c((2.0 * PI * j as f64 / 16.0).cos())).collect();
        let f = coefficients_from_samples(&samples, 2).unwrap();
        assert!((f.coefficient(1) - c(0.5)).norm() < 1e-14);
        assert!((f.coefficient(-1) - c(0.5)).norm() < 1e-14);

        assert!(coefficients_from_samples(&[c(1.0); 4], 2).is_err());
    }

    #[test]
    fn grid_size_rule() {
        assert_eq!(sample_grid_size(0), 4);
        assert_eq!(sample_grid_size(5), 32);
        assert_eq!(sample_grid_size(8), 32);
        assert!(sample_grid_size(9) > 2 * 9);
    }

    #[test]
    fn partial_sum_examples() {
        let f = SpectralFunction::from_real([(0, 1.0), (3, 1.0)]);
        assert_eq!(partial_sum(&f, 2), SpectralFunction::from_real([(0, 1.0)]));
        assert!(partial_sum(&SpectralFunction::from_real([(0, 1.0)]), 0).is_empty());
        let g = SpectralFunction::from_real([(-2, 1.0), (2, 4.0)]);
        assert_eq!(partial_sum(&g, 3), g);
    }

    #[test]
    fn psi_derivative_examples() {
        let one = PsiWeights::power(1.0).unwrap();
        let two = PsiWeights::power(2.0).unwrap();
        let d = psi_derivative(&SpectralFunction::from_real([(2, 1.0)]), &one).unwrap();
        assert!((d.coefficient(2) - c(2.0)).norm() < 1e-15);
        assert!(psi_derivative(&SpectralFunction::from_real([(0, 7.0)]), &one).unwrap().is_empty());
        let d = psi_derivative(&SpectralFunction::from_real([(-3, 1.0)]), &two).unwrap();
        assert!((d.coefficient(-3) - c(9.0)).norm() < 1e-13);

        let table = PsiWeights::table([(1, c(0.5))]).unwrap();
        assert!(psi_derivative(&SpectralFunction::from_real([(2, 1.0)]), &table).is_err());
        assert!(PsiWeights::table([(1, c(0.0))]).is_err());
        assert!(PsiWeights::power(0.0f64).is_err());
    }

    #[test]
    fn binomial_examples() {
        let one = FractionalOrder::new(1.0).unwrap();
        assert_eq!(binomial_fractional(&one, 0), 1.0);
        assert_eq!(binomial_fractional(&one, 1), 1.0);
        let half = FractionalOrder::new(0.5).unwrap();
        assert!((binomial_fractional::<f64>(&half, 2) - 0.5 * (-0.5) / 2.0).abs() < 1e-16);
        assert_eq!(binomial_fractional(&FractionalOrder::new(2.0).unwrap(), 3), 0.0);
    }

    #[test]
    fn binomial_partial_mass_is_bounded() {
        for i in 1..=40 {
            let alpha = 0.1 * i as f64;
            let o = FractionalOrder::new(alpha).unwrap();
            let mut acc = 0.0f64;
            for j in 0..400 {
                acc += binomial_fractional(&o, j).abs();
                assert!(acc <= o.binomial_mass_bound() + 1e-12, "alpha {alpha}, J {j}");
            }
        }
    }

    #[test]
    fn multiplier_examples() {
        let one = FractionalOrder::new(1.0).unwrap();
        assert!((difference_multiplier_modulus(&one, 1, PI) - 2.0).abs() < 1e-15);
        let half = FractionalOrder::new(0.5).unwrap();
        assert_eq!(difference_multiplier_modulus(&half, 0, 0.7), 0.0);
        let v = difference_multiplier_modulus(&half, 2, PI / 4.0);
        // direct evaluation: sqrt(2)·sin(π/4)^{1/2}
        let direct = 2f64.sqrt() * (PI / 4.0).sin().sqrt();
        assert!((v - direct).abs() < 1e-15);
        assert!((v - 2f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn fractional_difference_examples() {
        let o = FractionalOrder::new(1.7).unwrap();
        assert!(fractional_difference(&SpectralFunction::from_real([(0, 5.0)]), &o, 0.3).is_empty());
        let one = FractionalOrder::new(1.0).unwrap();
        let d = fractional_difference(&SpectralFunction::from_real([(1, 1.0)]), &one, PI);
        assert!((d.coefficient(1).norm() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn fractional_difference_matches_binomial_series() {
        // Δ_h^α e^{ikx} via truncated Σ (-1)^j binom(α,j) e^{-ikjh}
        let o = FractionalOrder::new(2.5).unwrap();
        let (k, h) = (3i64, 0.4f64);
        let series: Complex<f64> = (0..4000)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                Complex::from_polar(sign * binomial_fractional(&o, j), -(k as f64) * h * j as f64)
            })
            .sum();
        let d = fractional_difference(&SpectralFunction::from_real([(k, 1.0)]), &o, h);
        assert!((d.coefficient(k) - series).norm() < 1e-9);
    }

    #[test]
    fn difference_norm_bounded_by_binomial_mass() {
        let q = NormQuery::default();
        let s = ExponentWeightPair::new(2.0, 1.0, 3.0).unwrap().with_exponent(1, 3.0).unwrap();
        let f = SpectralFunction::from_real([(-2, 0.3), (1, 1.0), (4, -0.7)]);
        let base = luxemburg_norm(&f, &s, &q).unwrap();
        for alpha in [0.3, 1.0, 2.5] {
            let o = FractionalOrder::new(alpha).unwrap();
            for h in [0.1, 1.0, 2.9] {
                let d = luxemburg_norm(&fractional_difference(&f, &o, h), &s, &q).unwrap();
                assert!(d <= o.binomial_mass_bound() * base + 1e-12);
            }
        }
    }
}
