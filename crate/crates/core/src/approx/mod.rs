//! Best approximation, Jackson approximants and Bernstein-type bounds.

mod kernel;

pub use kernel::{block_size, jackson_kernel, kernel_moment, kernel_shifted_moment, Kernel};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seq_norms::{ExponentWeightPair, Moduli, NormQuery, SpectralFunction};
use crate::smoothness::DifferenceNormProfile;
use crate::spectral::{fractional_derivative, psi_derivative, FractionalOrder, PsiWeights};

/// `E_n(f) = ‖f - S_{n-1}(f)‖`: the norm of the tail `|k| >= n`, which is
/// the exact best approximation by polynomials of degree `< n`.
pub fn best_approximation<T: Real>(
    f: &SpectralFunction<T>,
    n: u64,
    space: &ExponentWeightPair<T>,
    query: &NormQuery<T>,
) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("best approximation needs n >= 1"));
    }
    Moduli::new(f, space).restrict(|k| k.unsigned_abs() >= n).luxemburg(query)
}

/// `(E_n(f), ε_n E_n(f^ψ))` with `ε_n` the largest `|ψ_k|` over the support
/// tail `|k| >= n`, or `|ψ_n|` when the tail is empty.
pub fn best_approx_by_psi_derivative_bound<T: Real>(
    f: &SpectralFunction<T>,
    psi: &PsiWeights<T>,
    n: u64,
    space: &ExponentWeightPair<T>,
) -> Result<(T, T)> {
    let query = NormQuery::default();
    let lhs = best_approximation(f, n, space, &query)?;
    let tail = f.filter(|k| k.unsigned_abs() >= n);
    let mut eps = T::zero();
    for k in tail.support() {
        eps = eps.max(psi.modulus(k)?);
    }
    if tail.is_empty() {
        let n = i64::try_from(n).map_err(|_| Error::domain("n too large"))?;
        eps = psi.value(n).map_or(T::zero(), |v| v.norm());
    }
    let derived = psi_derivative(&tail, psi)?;
    let rhs = eps * best_approximation(&derived, n, space, &query)?;
    Ok((lhs, rhs))
}

/// `(‖τ^ψ‖, ‖τ‖/ε_n)` with `ε_n = min_{0<|k|<=n} |ψ_k|`, for `τ` of degree `<= n`.
pub fn bernstein_psi_bound<T: Real>(
    tau: &SpectralFunction<T>,
    psi: &PsiWeights<T>,
    n: u64,
    space: &ExponentWeightPair<T>,
) -> Result<(T, T)> {
    if tau.support_radius() > n {
        return Err(Error::domain(format!(
            "polynomial of degree {} exceeds n = {n}",
            tau.support_radius()
        )));
    }
    if n == 0 {
        return Err(Error::domain("Bernstein bound needs n >= 1"));
    }
    let n = i64::try_from(n).map_err(|_| Error::domain("n too large"))?;
    let mut eps = T::infinity();
    for k in (-n..=n).filter(|&k| k != 0) {
        eps = eps.min(psi.modulus(k)?);
    }
    let query = NormQuery::default();
    let lhs = Moduli::new(&psi_derivative(tau, psi)?, space).luxemburg(&query)?;
    let rhs = Moduli::new(tau, space).luxemburg(&query)? / eps;
    Ok((lhs, rhs))
}

/// Default kernel power `k₀ = ⌈α⌉ + 1`.
pub fn default_kernel_power<T: Real>(order: &FractionalOrder<T>) -> u32 {
    order.ceil() + 1
}

/// `2π Σ_{j=0}^{α} (-1)^j C(α, j) K̂(jk) = ∫ K(t) (1 - e^{-ikt})^α dt`.
fn smoothing_multiplier<T: Real>(kernel: &Kernel<T>, alpha: u32, k: i64) -> T {
    let two_pi = T::lit(2.0) * T::PI();
    let mut binom = T::one();
    let mut acc = T::zero();
    for j in 0..=alpha {
        let term = binom * two_pi * kernel.coefficient(j as i64 * k);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
        binom = binom * T::from_count((alpha - j) as usize) / T::from_count(j as usize + 1);
    }
    acc
}

/// Near-best approximant `σ_{n-1}` built from the Jackson kernel `K_{n-1}`:
/// `σ̂(k) = f̂(k)(1 - m_k)`, so that `f - σ = ∫ K_{n-1}(t) Δ_t^α f dt`.
pub fn jackson_approximant<T: Real>(
    f: &SpectralFunction<T>,
    n: u64,
    alpha: u32,
    k0: u32,
) -> Result<SpectralFunction<T>> {
    if n == 0 || alpha == 0 {
        return Err(Error::domain("jackson_approximant needs n >= 1 and alpha >= 1"));
    }
    let kernel = jackson_kernel::<T>(n - 1, k0)?;
    Ok(f.map(|k, c| c * (T::one() - smoothing_multiplier(&kernel, alpha, k))))
}

/// The three terms of `E_n(f) <= ‖f - σ_{n-1}‖ <= 2 ∫ |K_{n-1}(t)| ω_β(f, |t|) dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacksonChain<T> {
    pub best: T,
    pub residual: T,
    pub integral: T,
    /// Integer order used for the approximant (`⌈α⌉`).
    pub beta: u32,
}

impl<T: Real> JacksonChain<T> {
    pub fn holds(&self, tolerance: T) -> bool {
        self.best <= self.residual + tolerance && self.residual <= self.integral + tolerance
    }
}

/// Evaluates the Jackson chain. Fractional `α` is routed through `β = ⌈α⌉`.
/// `ω_β(f, t)` is profiled on the quadrature nodes by a running supremum of
/// `‖Δ_t^β f‖`.
pub fn jackson_chain<T: Real>(
    f: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    n: u64,
    k0: u32,
    space: &ExponentWeightPair<T>,
    query: &NormQuery<T>,
    quadrature_points: usize,
) -> Result<JacksonChain<T>> {
    let beta = order.ceil();
    let sigma = jackson_approximant(f, n, beta, k0)?;
    let best = best_approximation(f, n, space, query)?;
    let residual = Moduli::new(&(f - &sigma), space).luxemburg(query)?;
    let kernel = jackson_kernel::<T>(n - 1, k0)?;
    let points = quadrature_points.max(16 * kernel.degree()).max(16);
    let nodes = kernel::quadrature_nodes::<T>(points);
    let profile = DifferenceNormProfile::new(f, FractionalOrder::integer(beta)?, space, *query);
    let omega = profile.running_sup(&nodes)?;
    let integral = T::lit(2.0) * kernel::weighted_integral_on_nodes(&kernel, &omega)?;
    Ok(JacksonChain { best, residual, integral, beta })
}

/// `((sin(nh/2)/(n/2))^α ‖τ^{(α)}‖, ‖Δ_h^α τ‖, h^α ‖τ^{(α)}‖)` for `τ` of
/// degree `<= n` and `0 < h < 2π/n`.
pub fn lemma4_bounds<T: Real>(
    tau: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    h: T,
    n: u64,
    space: &ExponentWeightPair<T>,
) -> Result<(T, T, T)> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let nf = T::from_count(n as usize);
    let two = T::lit(2.0);
    if !(h > T::zero() && h < two * T::PI() / nf) {
        return Err(Error::domain(format!("h = {h} outside (0, 2π/{n})")));
    }
    if tau.support_radius() > n {
        return Err(Error::domain(format!("polynomial degree exceeds n = {n}")));
    }
    let query = NormQuery::default();
    let alpha = order.alpha();
    let derivative = Moduli::new(&fractional_derivative(tau, alpha)?, space).luxemburg(&query)?;
    let lower = ((nf * h / two).sin() / (nf / two)).powf(alpha) * derivative;
    let middle = DifferenceNormProfile::new(tau, *order, space, query).at(h)?;
    let upper = h.powf(alpha) * derivative;
    Ok((lower, middle, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use std::f64::consts::PI;

    fn l2() -> ExponentWeightPair<f64> {
        ExponentWeightPair::constant(2.0).unwrap()
    }

    #[test]
    fn best_approximation_examples() {
        let q = NormQuery::default();
        let f = SpectralFunction::from_real([(5, 1.0)]);
        for n in 1..=5 {
            assert!((best_approximation(&f, n, &l2(), &q).unwrap() - 1.0).abs() < 1e-12);
        }
        assert_eq!(best_approximation(&f, 6, &l2(), &q).unwrap(), 0.0);
        let g = SpectralFunction::from_real([(-1, 1.0), (1, 1.0), (-2, 0.5), (2, 0.5)]);
        assert!((best_approximation(&g, 2, &l2(), &q).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(best_approximation(&g, 0, &l2(), &q).is_err());
    }

    #[test]
    fn psi_derivative_bound_examples() {
        let psi = PsiWeights::power(1.0).unwrap();
        let f = SpectralFunction::from_real([(-2, 1.0), (2, 1.0), (-5, 1.0), (5, 1.0)]);
        let (a, b) = best_approx_by_psi_derivative_bound(&f, &psi, 3, &l2()).unwrap();
        assert!((a - 2f64.sqrt()).abs() < 1e-12 && (b - 2f64.sqrt()).abs() < 1e-12);
        let single = SpectralFunction::harmonic(4, Complex::new(0.3, -2.0));
        let psi2 = PsiWeights::power(2.5).unwrap();
        for n in 1..=4 {
            let (a, b) = best_approx_by_psi_derivative_bound(&single, &psi2, n, &l2()).unwrap();
            assert!((a - b).abs() < 1e-10 * a);
        }
        let (a, b) = best_approx_by_psi_derivative_bound(&single, &psi2, 5, &l2()).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
    }

    #[test]
    fn bernstein_examples() {
        let psi = PsiWeights::power(1.0).unwrap();
        let tau = SpectralFunction::from_real([(-1, 1.0), (1, 1.0), (-3, 1.0), (3, 1.0)]);
        let (a, b) = bernstein_psi_bound(&tau, &psi, 3, &l2()).unwrap();
        assert!((a - 20f64.sqrt()).abs() < 1e-10 && (b - 6.0).abs() < 1e-10);
        let c = SpectralFunction::from_real([(0, 2.0)]);
        let (a, b) = bernstein_psi_bound(&c, &psi, 2, &l2()).unwrap();
        assert_eq!(a, 0.0);
        assert!(b.is_finite());
        assert!(bernstein_psi_bound(&tau, &psi, 2, &l2()).is_err());
        let single = SpectralFunction::from_real([(-6, 0.7)]);
        let (a, b) = bernstein_psi_bound(&single, &PsiWeights::power(1.5).unwrap(), 6, &l2()).unwrap();
        assert!((a - b).abs() < 1e-10 * b);
    }

    #[test]
    fn approximant_is_a_polynomial_of_lower_degree() {
        let c = SpectralFunction::from_real([(0, 1.7)]);
        assert_eq!(jackson_approximant(&c, 4, 2, 3).unwrap(), c);
        let f = SpectralFunction::from_real((-20..=20).map(|k| (k, 1.0 / (1.0 + (k * k) as f64))));
        for alpha in 1..=3 {
            for n in [1u64, 2, 7, 16] {
                let sigma = jackson_approximant(&f, n, alpha, alpha + 1).unwrap();
                assert!(sigma.support_radius() < n.max(1), "alpha {alpha} n {n}");
            }
        }
    }

    #[test]
    fn approximant_matches_kernel_convolution() {
        // f - σ = ∫ K(t) Δ_t^α f dt, checked coefficientwise by quadrature
        let f = SpectralFunction::from_real([(1, 1.0), (3, -0.5), (4, 0.25)]);
        let (n, alpha, k0) = (9u64, 2u32, 3u32);
        let sigma = jackson_approximant(&f, n, alpha, k0).unwrap();
        let kernel: Kernel<f64> = jackson_kernel(n - 1, k0).unwrap();
        for k in [1i64, 3, 4] {
            let m = 4096;
            let mut acc = Complex::new(0.0, 0.0);
            for i in 0..m {
                let t = -PI + 2.0 * PI * (i as f64 + 0.5) / m as f64;
                let mult = (Complex::new(1.0, 0.0) - Complex::from_polar(1.0, -(k as f64) * t)).powu(alpha);
                acc += mult * kernel.evaluate(t);
            }
            acc *= 2.0 * PI / m as f64;
            let residual = f.coefficient(k) - sigma.coefficient(k);
            assert!((residual - f.coefficient(k) * acc).norm() < 1e-12);
        }
    }

    #[test]
    fn chain_holds() {
        let s = ExponentWeightPair::new(1.6, 1.0, 3.0).unwrap().with_exponent(2, 3.0).unwrap();
        let f = SpectralFunction::from_real([(-3, 0.5), (1, 1.0), (2, -0.7), (6, 0.3)]);
        let q = NormQuery::default();
        for alpha in [0.5, 1.0, 2.0] {
            let o = FractionalOrder::new(alpha).unwrap();
            for n in [1u64, 2, 4, 8] {
                let c = jackson_chain(&f, &o, n, default_kernel_power(&o), &s, &q, 256).unwrap();
                assert!(c.holds(1e-9), "{alpha} {n}: {c:?}");
            }
        }
    }

    #[test]
    fn difference_ordering_examples() {
        let one = FractionalOrder::new(1.0).unwrap();
        let tau = SpectralFunction::from_real([(1, 1.0)]);
        let (lo, mid, hi) = lemma4_bounds(&tau, &one, PI, 1, &l2()).unwrap();
        assert!((lo - 2.0).abs() < 1e-12 && (mid - 2.0).abs() < 1e-12 && (hi - PI).abs() < 1e-12);
        let t8 = SpectralFunction::from_real([(8, 1.0)]);
        let (lo, mid, hi) = lemma4_bounds(&t8, &one, 1e-9, 8, &l2()).unwrap();
        assert!(lo < 1e-7 && mid < 1e-7 && hi < 1e-7);
        assert!(lemma4_bounds(&tau, &one, 2.0 * PI, 1, &l2()).is_err());
        assert!(lemma4_bounds(&t8, &one, 0.1, 7, &l2()).is_err());
    }
}
