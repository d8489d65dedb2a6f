//! Jackson kernels `K(t) = b (sin(pt/2)/sin(t/2))^{2k₀}` with exact integer
//! coefficients.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

type CoefficientTable = Arc<Vec<BigUint>>;

fn cache() -> &'static RwLock<HashMap<(u64, u32), CoefficientTable>> {
    static CACHE: OnceLock<RwLock<HashMap<(u64, u32), CoefficientTable>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Block size `p` with `n/(2k₀) < p <= n/(2k₀) + 1`.
pub fn block_size(n: u64, k0: u32) -> u64 {
    n / (2 * k0 as u64) + 1
}

/// Nonnegative-index half of the integer coefficients of
/// `(sin(pt/2)/sin(t/2))^{2k₀}`: the `k₀`-fold convolution of the triangle
/// `p - |ℓ|`.
fn integer_coefficients(p: u64, k0: u32) -> Vec<BigUint> {
    let p = p as i64;
    let triangle: Vec<BigUint> = (-(p - 1)..p).map(|l| BigUint::from((p - l.abs()) as u64)).collect();
    let mut full = vec![BigUint::from(1u32)];
    for _ in 0..k0 {
        let mut next = vec![BigUint::zero(); full.len() + triangle.len() - 1];
        for (i, a) in full.iter().enumerate() {
            for (j, b) in triangle.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        full = next;
    }
    let centre = full.len() / 2;
    full.split_off(centre)
}

fn cached_coefficients(n: u64, k0: u32) -> CoefficientTable {
    let key = (n, k0);
    if let Some(table) = cache().read().expect("kernel cache poisoned").get(&key) {
        return Arc::clone(table);
    }
    let table = Arc::new(integer_coefficients(block_size(n, k0), k0));
    let mut guard = cache().write().expect("kernel cache poisoned");
    Arc::clone(guard.entry(key).or_insert(table))
}

/// `a / b` for big integers, correctly scaled into `f64` range.
fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = b.bits().saturating_sub(960);
    let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}

/// An even trigonometric polynomial stored by its nonnegative-index
/// coefficients, with `∫_{-π}^{π} K = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel<T> {
    coefficients: Vec<T>,
    normalization: T,
    block: u64,
    power: u32,
}

impl<T: Real> Kernel<T> {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `K̂(ℓ)`, zero beyond the degree.
    pub fn coefficient(&self, l: i64) -> T {
        self.coefficients.get(l.unsigned_abs() as usize).copied().unwrap_or_else(T::zero)
    }

    /// `(ℓ, K̂(ℓ))` for `-degree <= ℓ <= degree`.
    pub fn coefficients(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        let d = self.degree() as i64;
        (-d..=d).map(move |l| (l, self.coefficient(l)))
    }

    /// The scale `b` in front of `(sin(pt/2)/sin(t/2))^{2k₀}`.
    pub fn normalization(&self) -> T {
        self.normalization
    }

    pub fn block_size(&self) -> u64 {
        self.block
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// `K(t) = K̂(0) + 2 Σ_{ℓ>0} K̂(ℓ) cos(ℓt)`.
    pub fn evaluate(&self, t: T) -> T {
        let two = T::lit(2.0);
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .fold(self.coefficients[0], |acc, (l, c)| acc + two * *c * (T::from_count(l) * t).cos())
    }
}

/// Jackson kernel of order `n` and power `k₀ >= 1`; `n = 0` gives the
/// constant kernel `1/(2π)`.
pub fn jackson_kernel<T: Real>(n: u64, k0: u32) -> Result<Kernel<T>> {
    if k0 == 0 {
        return Err(Error::domain("the kernel power k0 must be at least 1"));
    }
    let ints = cached_coefficients(n, k0);
    let two_pi = T::lit(2.0) * T::PI();
    let centre = &ints[0];
    let coefficients = ints.iter().map(|c| T::lit(ratio(c, centre)) / two_pi).collect();
    let normalization = T::one() / (two_pi * T::lit(centre.to_f64().unwrap_or(f64::INFINITY)));
    Ok(Kernel { coefficients, normalization, block: block_size(n, k0), power: k0 })
}

/// Composite Simpson rule for `2 ∫_0^π g(t) |K(t)| dt`.
fn symmetric_integral<T: Real, G: FnMut(T) -> T>(
    kernel: &Kernel<T>,
    points: usize,
    mut g: G,
) -> Result<T> {
    let needed = (16 * kernel.degree()).max(16);
    if points < needed {
        return Err(Error::domain(format!(
            "{points} quadrature points cannot resolve a kernel of degree {} (need {needed})",
            kernel.degree()
        )));
    }
    let m = points + points % 2;
    let step = T::PI() / T::from_count(m);
    let mut acc = T::zero();
    for i in 0..=m {
        let t = step * T::from_count(i);
        let w = if i == 0 || i == m {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc = acc + T::lit(w) * g(t) * kernel.evaluate(t).abs();
    }
    Ok(T::lit(2.0) * acc * step / T::lit(3.0))
}

/// `∫_{-π}^{π} |t|^r |K(t)| dt` by composite quadrature with at least
/// `16·degree` points.
pub fn kernel_moment<T: Real>(kernel: &Kernel<T>, r: u32, quadrature_points: usize) -> Result<T> {
    symmetric_integral(kernel, quadrature_points, |t| t.powi(r as i32))
}

/// `∫_{-π}^{π} (|t| + 1/n)^r |K(t)| dt`.
pub fn kernel_shifted_moment<T: Real>(
    kernel: &Kernel<T>,
    r: u32,
    n: u64,
    quadrature_points: usize,
) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("shifted moment needs n >= 1"));
    }
    let shift = T::one() / T::from_count(n as usize);
    symmetric_integral(kernel, quadrature_points, |t| (t + shift).powi(r as i32))
}

/// `2 ∫_0^π g(t) |K(t)| dt` on the nodes `t_i = iπ/m`, where `values[i] = g(t_i)`.
pub(crate) fn weighted_integral_on_nodes<T: Real>(kernel: &Kernel<T>, values: &[T]) -> Result<T> {
    let m = values.len() - 1;
    let mut i = 0;
    symmetric_integral(kernel, m, |_| {
        let v = values[i];
        i += 1;
        v
    })
}

/// Nodes matching [`weighted_integral_on_nodes`] for a given point count.
pub(crate) fn quadrature_nodes<T: Real>(points: usize) -> Vec<T> {
    let m = points + points % 2;
    let step = T::PI() / T::from_count(m);
    (0..=m).map(|i| step * T::from_count(i)).collect()
}
