use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{ExponentWeightPair, SpectralFunction};

/// Accuracy contract for the iterative norm computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormQuery<T> {
    /// Absolute tolerance on the returned norm value.
    pub tolerance: T,
    pub max_iterations: usize,
}

impl<T: Real> NormQuery<T> {
    pub fn new(tolerance: T, max_iterations: usize) -> Result<Self> {
        if !(tolerance > T::zero()) || !tolerance.is_finite() {
            return Err(Error::domain("tolerance must be a positive finite number"));
        }
        if max_iterations == 0 {
            return Err(Error::domain("max_iterations must be at least 1"));
        }
        Ok(Self { tolerance, max_iterations })
    }
}

impl<T: Real> Default for NormQuery<T> {
    fn default() -> Self {
        Self {
            tolerance: T::lit(1e-12).max(T::tolerance_floor()),
            max_iterations: 200,
        }
    }
}

/// One active summand `μ_k |x_k|^{p_k}` of a modular, stored in log form.
#[derive(Clone, Copy, Debug)]
struct Summand<T> {
    /// `ln μ_k + p_k ln |x_k|`
    log_mass: T,
    exponent: T,
}

impl<T: Real> Summand<T> {
    fn new(weight: T, modulus: T, exponent: T) -> Option<Self> {
        if weight > T::zero() && modulus > T::zero() {
            Some(Self { log_mass: weight.ln() + exponent * modulus.ln(), exponent })
        } else {
            None
        }
    }
}

/// `Σ exp(c_k - p_k s)` and `Σ p_k exp(c_k - p_k s)` at `s = ln a`.
fn level_sums<T: Real>(terms: &[Summand<T>], s: T) -> (T, T) {
    terms.iter().fold((T::zero(), T::zero()), |(v, d), t| {
        let e = (t.log_mass - t.exponent * s).exp();
        (v + e, d + t.exponent * e)
    })
}

/// Certified bracket `[lo, hi]` for the root of `Σ exp(c_k - p_k ln a) = 1`.
///
/// At `lo` the largest single summand equals one; at `hi` every summand is at
/// most `1/N`.
fn level_bracket<T: Real>(terms: &[Summand<T>]) -> (T, T) {
    let ln_n = T::from_count(terms.len()).ln();
    let mut lo = T::neg_infinity();
    let mut hi = T::neg_infinity();
    for t in terms {
        lo = lo.max(t.log_mass / t.exponent);
        hi = hi.max((t.log_mass + ln_n) / t.exponent);
    }
    (lo.exp(), hi.exp())
}

/// Closed-form root when every summand has the same exponent:
/// `ln a = ln Σ exp(c_k) / p`.
fn uniform_root<T: Real>(terms: &[Summand<T>]) -> Option<T> {
    let p = terms.first()?.exponent;
    if terms.iter().any(|t| t.exponent != p) {
        return None;
    }
    let peak = terms.iter().map(|t| t.log_mass).fold(T::neg_infinity(), T::max);
    let sum: T = terms.iter().map(|t| (t.log_mass - peak).exp()).sum();
    Some(((peak + sum.ln()) / p).exp())
}

/// Solves `Σ exp(c_k - p_k ln a) = 1` for `a > 0`.
///
/// The level function is convex and strictly decreasing in `ln a`, so Newton
/// steps taken from the lower end of the bracket never overshoot the root.
/// Every candidate is evaluated and the bracket updated from the sign of the
/// residual, so the bracket stays valid under rounding. Returns the bracket
/// midpoint once its width is at most `max(abs_tol, rel_tol·hi)`.
fn solve_level<T: Real>(
    terms: &[Summand<T>],
    abs_tol: T,
    rel_tol: T,
    max_iterations: usize,
) -> Result<T> {
    if let Some(root) = uniform_root(terms) {
        return Ok(root);
    }
    let (mut lo, mut hi) = level_bracket(terms);
    let four_eps = T::epsilon() * T::lit(4.0);
    let (mut phi_lo, mut slope_lo) = level_sums(terms, lo.ln());
    for iteration in 0..max_iterations {
        let width_tol = abs_tol.max(rel_tol * hi).max(four_eps * hi);
        let mid = lo + (hi - lo) / T::lit(2.0);
        if hi - lo <= width_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let newton = (lo.ln() + (phi_lo - T::one()) / slope_lo).exp();
        let candidate = if iteration % 8 == 7 || !newton.is_finite() || newton >= hi {
            mid
        } else if newton - lo <= width_tol / T::lit(2.0) {
            (lo + width_tol / T::lit(2.0)).min(mid)
        } else {
            newton
        };
        let (phi, slope) = level_sums(terms, candidate.ln());
        if phi > T::one() {
            lo = candidate;
            phi_lo = phi;
            slope_lo = slope;
        } else {
            hi = candidate;
        }
    }
    Err(Error::Convergence {
        iterations: max_iterations,
        lo: lo.to_f64_lossy(),
        hi: hi.to_f64_lossy(),
    })
}

/// Weighted coefficient moduli `(k, |x_k|, μ_k, p_k)` of a sequence, restricted
/// to the indices that can contribute to a modular (`μ_k |x_k| > 0`).
///
/// Both norms depend on a sequence only through these moduli, so the
/// smoothness and approximation routines rescale a prepared set of moduli
/// instead of rebuilding complex coefficient maps.
#[derive(Clone, Debug)]
pub struct Moduli<T> {
    entries: Vec<ModulusEntry<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModulusEntry<T> {
    pub index: i64,
    pub modulus: T,
    pub weight: T,
    pub exponent: T,
}

impl<T: Real> Moduli<T> {
    pub fn new(f: &SpectralFunction<T>, space: &ExponentWeightPair<T>) -> Self {
        Self::from_moduli(f.iter().map(|(k, c)| (k, c.norm())), space)
    }

    pub fn from_moduli<I>(moduli: I, space: &ExponentWeightPair<T>) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
    {
        let entries = moduli
            .into_iter()
            .map(|(index, modulus)| ModulusEntry {
                index,
                modulus,
                weight: space.weight(index),
                exponent: space.exponent(index),
            })
            .filter(|e| e.weight > T::zero() && e.modulus > T::zero())
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[ModulusEntry<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `|k|` among contributing indices.
    pub fn radius(&self) -> u64 {
        self.entries.iter().map(|e| e.index.unsigned_abs()).max().unwrap_or(0)
    }

    /// Keeps the entries whose index satisfies `keep`.
    pub fn restrict<F: FnMut(i64) -> bool>(&self, mut keep: F) -> Self {
        Self { entries: self.entries.iter().copied().filter(|e| keep(e.index)).collect() }
    }

    /// Multiplies every modulus by a nonnegative factor depending on `k`.
    pub fn rescaled<F: FnMut(i64) -> T>(&self, mut factor: F) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| ModulusEntry { modulus: e.modulus * factor(e.index), ..*e })
            .filter(|e| e.modulus > T::zero())
            .collect();
        Self { entries }
    }

    /// `Φ(a) = Σ μ_k (|x_k|/a)^{p_k}`.
    pub fn modular(&self, a: T) -> Result<T> {
        if !(a > T::zero()) {
            return Err(Error::domain(format!("modular scale a = {a} must be positive")));
        }
        Ok(self
            .entries
            .iter()
            .map(|e| e.weight * (e.modulus / a).powf(e.exponent))
            .sum())
    }

    fn summands(&self) -> Vec<Summand<T>> {
        self.entries
            .iter()
            .filter_map(|e| Summand::new(e.weight, e.modulus, e.exponent))
            .collect()
    }

    /// Luxemburg norm `inf{a > 0 : Φ(a) <= 1}`.
    pub fn luxemburg(&self, query: &NormQuery<T>) -> Result<T> {
        let terms = self.summands();
        if terms.is_empty() {
            return Ok(T::zero());
        }
        solve_level(&terms, query.tolerance, T::zero(), query.max_iterations)
    }

    /// Luxemburg norm of the moduli rescaled by `factor(k)`; avoids
    /// materialising the rescaled sequence.
    pub fn luxemburg_rescaled<F: FnMut(i64) -> T>(
        &self,
        mut factor: F,
        query: &NormQuery<T>,
    ) -> Result<T> {
        let terms: Vec<_> = self
            .entries
            .iter()
            .filter_map(|e| Summand::new(e.weight, e.modulus * factor(e.index), e.exponent))
            .collect();
        if terms.is_empty() {
            return Ok(T::zero());
        }
        solve_level(&terms, query.tolerance, T::zero(), query.max_iterations)
    }

    /// Orlicz (dual) norm `sup{Σ μ_k λ_k |x_k| : Σ μ_k λ_k^{q_k} <= 1}`.
    ///
    /// The maximiser is `λ_k = (|x_k|/(γ q_k))^{p_k - 1}` where the multiplier
    /// `γ` solves `Σ μ_k (|x_k|/(γ q_k))^{p_k} = 1`; this is the same convex
    /// level equation as the Luxemburg norm, with `|x_k|` replaced by
    /// `|x_k|/q_k`.
    pub fn orlicz(&self, query: &NormQuery<T>) -> Result<T> {
        if self.entries.is_empty() {
            return Ok(T::zero());
        }
        let conj = |p: T| p / (p - T::one());
        let terms: Vec<_> = self
            .entries
            .iter()
            .filter_map(|e| Summand::new(e.weight, e.modulus / conj(e.exponent), e.exponent))
            .collect();
        // The value scales like γ^{1-p}; a relative accuracy of tol/(K·V_max)
        // on γ keeps the value within tol, with V_max <= 2·(Luxemburg upper).
        let lux_hi = level_bracket(&self.summands()).1;
        let max_p = self.entries.iter().map(|e| e.exponent).fold(T::one(), T::max);
        let rel = query.tolerance / (max_p * T::lit(2.0) * lux_hi);
        let gamma = solve_level(&terms, T::zero(), rel, query.max_iterations)?;
        let ln_gamma = gamma.ln();
        Ok(self
            .entries
            .iter()
            .map(|e| {
                let q = conj(e.exponent);
                let ln_ratio = e.modulus.ln() - q.ln() - ln_gamma;
                (e.weight.ln() + e.modulus.ln() + (e.exponent - T::one()) * ln_ratio).exp()
            })
            .sum())
    }
}

/// `Φ(a) = Σ_k μ_k |f̂(k)/a|^{p_k}`.
pub fn modular_sum<T: Real>(
    f: &SpectralFunction<T>,
    space: &ExponentWeightPair<T>,
    a: T,
) -> Result<T> {
    Moduli::new(f, space).modular(a)
}

/// Luxemburg norm of the coefficient sequence of `f`.
pub fn luxemburg_norm<T: Real>(
    f: &SpectralFunction<T>,
    space: &ExponentWeightPair<T>,
    query: &NormQuery<T>,
) -> Result<T> {
    Moduli::new(f, space).luxemburg(query)
}

/// Orlicz norm of the coefficient sequence of `f`, built on the conjugate
/// exponents `q_k`.
pub fn orlicz_norm<T: Real>(
    f: &SpectralFunction<T>,
    space: &ExponentWeightPair<T>,
    query: &NormQuery<T>,
) -> Result<T> {
    Moduli::new(f, space).orlicz(query)
}

/// Conjugate exponents `1/p_k + 1/q_k = 1`, same weights.
pub fn dual_exponents<T: Real>(space: &ExponentWeightPair<T>) -> ExponentWeightPair<T> {
    space.dual_exponents()
}
