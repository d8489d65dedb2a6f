use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The exponent/weight pair `(p, μ)` that fixes a weighted variable-exponent
/// sequence space, together with the uniform exponent bound `K`.
///
/// Exponents must satisfy `1 < p_k <= K < ∞`, weights `μ_k >= 0`. Indices
/// without an explicit entry take the defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentWeightPair<T> {
    default_exponent: T,
    default_weight: T,
    exponents: BTreeMap<i64, T>,
    weights: BTreeMap<i64, T>,
    bound: T,
}

fn check_exponent<T: Real>(p: T, bound: T, what: &str) -> Result<()> {
    if !p.is_finite() || p <= T::one() || p > bound {
        return Err(Error::domain(format!(
            "{what} exponent {p} must satisfy 1 < p <= K = {bound}"
        )));
    }
    Ok(())
}

fn check_weight<T: Real>(mu: T, what: &str) -> Result<()> {
    if !mu.is_finite() || mu < T::zero() {
        return Err(Error::domain(format!("{what} weight {mu} must be finite and >= 0")));
    }
    Ok(())
}

impl<T: Real> ExponentWeightPair<T> {
    pub fn new(default_exponent: T, default_weight: T, bound: T) -> Result<Self> {
        if !bound.is_finite() {
            return Err(Error::domain("exponent bound K must be finite"));
        }
        check_exponent(default_exponent, bound, "default")?;
        check_weight(default_weight, "default")?;
        Ok(Self {
            default_exponent,
            default_weight,
            exponents: BTreeMap::new(),
            weights: BTreeMap::new(),
            bound,
        })
    }

    /// Constant exponent `p`, unit weights, `K = p`: the classical `ℓ_p` setting.
    pub fn constant(p: T) -> Result<Self> {
        Self::new(p, T::one(), p)
    }

    pub fn with_exponent(mut self, k: i64, p: T) -> Result<Self> {
        check_exponent(p, self.bound, &format!("index {k}"))?;
        self.exponents.insert(k, p);
        Ok(self)
    }

    pub fn with_weight(mut self, k: i64, mu: T) -> Result<Self> {
        check_weight(mu, &format!("index {k}"))?;
        self.weights.insert(k, mu);
        Ok(self)
    }

    pub fn exponent(&self, k: i64) -> T {
        self.exponents.get(&k).copied().unwrap_or(self.default_exponent)
    }

    pub fn weight(&self, k: i64) -> T {
        self.weights.get(&k).copied().unwrap_or(self.default_weight)
    }

    pub fn default_exponent(&self) -> T {
        self.default_exponent
    }

    pub fn default_weight(&self) -> T {
        self.default_weight
    }

    pub fn bound(&self) -> T {
        self.bound
    }

    pub fn exponent_overrides(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.exponents.iter().map(|(&k, &p)| (k, p))
    }

    pub fn weight_overrides(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    /// True when every index carries the default exponent.
    pub fn has_uniform_exponent(&self) -> bool {
        self.exponents.values().all(|&p| p == self.default_exponent)
    }

    /// Conjugate exponents `q_k = p_k / (p_k - 1)` with the same weights.
    pub fn dual_exponents(&self) -> Self {
        let conj = |p: T| p / (p - T::one());
        let exponents: BTreeMap<i64, T> =
            self.exponents.iter().map(|(&k, &p)| (k, conj(p))).collect();
        let default_exponent = conj(self.default_exponent);
        let bound = exponents
            .values()
            .copied()
            .fold(default_exponent, T::max);
        Self {
            default_exponent,
            default_weight: self.default_weight,
            exponents,
            weights: self.weights.clone(),
            bound,
        }
    }
}
