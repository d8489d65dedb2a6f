use std::f64::consts::PI;

use num_traits::Num;

use super::families::decay_family;
use super::majorant::MajorantSpec;
use super::verdict::Verdict;
use crate::approx::{
    bernstein_psi_bound, best_approx_by_psi_derivative_bound, best_approximation, default_kernel_power,
    jackson_chain, lemma4_bounds,
};
use crate::error::{Error, Result};
use crate::seq_norms::{ExponentWeightPair, NormQuery, SpectralFunction};
use crate::smoothness::{k_functional, modulus_estimate, modulus_of_smoothness, SupSearchPolicy};
use crate::spectral::{FractionalOrder, PsiWeights};

/// Both sides of the summation-by-parts identity
/// `Σ_{ν=m}^{M} a_ν c_ν = a_m Σ_{ν=m}^{N} c_ν + Σ_{ν=m+1}^{M} (a_ν - a_{ν-1}) Σ_{i=ν}^{N} c_i - a_M Σ_{ν=M+1}^{N} c_ν`
/// with 1-based indices `m <= M < N <= len`.
pub fn abel_transform_sides<V: Num + Copy>(a: &[V], c: &[V], m: usize, big_m: usize, n: usize) -> Result<(V, V)> {
    if !(1 <= m && m <= big_m && big_m < n && n <= a.len() && n <= c.len()) {
        return Err(Error::domain(format!(
            "need 1 <= m <= M < N <= len, got m={m}, M={big_m}, N={n}, lengths {} and {}",
            a.len(),
            c.len()
        )));
    }
    let at = |s: &[V], i: usize| s[i - 1];
    // tail[i] = Σ_{j=i}^{N} c_j
    let mut tail = vec![V::zero(); n + 2];
    for i in (1..=n).rev() {
        tail[i] = tail[i + 1] + at(c, i);
    }
    let left = (m..=big_m).fold(V::zero(), |acc, v| acc + at(a, v) * at(c, v));
    let middle = (m + 1..=big_m).fold(V::zero(), |acc, v| acc + (at(a, v) - at(a, v - 1)) * tail[v]);
    let right = at(a, m) * tail[m] + middle - at(a, big_m) * tail[big_m + 1];
    Ok((left, right))
}

fn best_approximations(f: &SpectralFunction<f64>, n: u64, space: &ExponentWeightPair<f64>) -> Result<Vec<f64>> {
    let q = NormQuery::default();
    (1..=n).map(|v| best_approximation(f, v, space, &q)).collect()
}

/// `ω_α(f, π/n) <= (π/n)^α Σ_{ν=1}^{n} (ν^α - (ν-1)^α) E_ν(f)`, with the
/// search lower value on the left.
pub fn inverse_theorem_check(
    f: &SpectralFunction<f64>,
    n: u64,
    order: &FractionalOrder<f64>,
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let alpha = order.alpha();
    let nf = n as f64;
    let lhs = modulus_of_smoothness(f, order, PI / nf, space, &SupSearchPolicy::default())?;
    let e = best_approximations(f, n, space)?;
    let sum: f64 = e
        .iter()
        .enumerate()
        .map(|(i, en)| {
            let v = (i + 1) as f64;
            (v.powf(alpha) - (v - 1.0).powf(alpha)) * en
        })
        .sum();
    let rhs = (PI / nf).powf(alpha) * sum;
    let margin = (NormQuery::<f64>::default().tolerance * nf).min(1e-6 * rhs);
    Ok(Verdict::new("inverse_theorem", lhs, rhs, margin).with("n", n).with("alpha", alpha))
}

/// `ω_α(f, π/n) <= (π^α α / n^α) Σ_{ν=1}^{n} ν^{α-1} E_ν(f)`.
///
/// Only implied by the inverse theorem when `α >= 1`, where
/// `ν^α - (ν-1)^α <= αν^{α-1}`; for `α < 1` that comparison reverses and the
/// bound can fail (e.g. `f = e^{ix}`, `n = 1`, `α = 1/2`).
pub fn inverse_weighted_sum_bound(
    f: &SpectralFunction<f64>,
    n: u64,
    order: &FractionalOrder<f64>,
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let alpha = order.alpha();
    let nf = n as f64;
    let lhs = modulus_of_smoothness(f, order, PI / nf, space, &SupSearchPolicy::default())?;
    let e = best_approximations(f, n, space)?;
    let sum: f64 = e.iter().enumerate().map(|(i, en)| ((i + 1) as f64).powf(alpha - 1.0) * en).sum();
    let rhs = PI.powf(alpha) * alpha / nf.powf(alpha) * sum;
    let margin = (NormQuery::<f64>::default().tolerance * nf).min(1e-6 * rhs);
    Ok(Verdict::new("inverse_weighted_sum", lhs, rhs, margin).with("n", n).with("alpha", alpha))
}

/// Ratio of the two sides of the inverse theorem for `f* = e^{ik₀x}`.
pub fn sharpness_ratio(
    k0: u64,
    n: u64,
    order: &FractionalOrder<f64>,
    space: &ExponentWeightPair<f64>,
) -> Result<f64> {
    if k0 == 0 || n == 0 {
        return Err(Error::domain("k0 and n must be at least 1"));
    }
    let k = k0 as i64;
    if space.weight(k) != 1.0 {
        return Err(Error::domain(format!("sharpness example needs μ = 1 at index {k0}")));
    }
    let f = SpectralFunction::from_real([(k, 1.0)]);
    let v = inverse_theorem_check(&f, n, order, space)?;
    Ok(v.lhs / v.rhs)
}

/// Smallest `n >= k₀` (up to `n_limit`) from which the inverse-theorem
/// ratio exceeds `(π^α - ε)/π^α`.
pub fn sharpness_threshold(
    k0: u64,
    order: &FractionalOrder<f64>,
    space: &ExponentWeightPair<f64>,
    eps: f64,
    n_limit: u64,
) -> Result<Option<u64>> {
    let level = (PI.powf(order.alpha()) - eps) / PI.powf(order.alpha());
    for n in k0..=n_limit {
        if sharpness_ratio(k0, n, order, space)? > level {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `E_n(f) <= ‖f - σ_{n-1}‖ <= 2 ∫ |K_{n-1}| ω_β(f, |t|) dt`, reported as
/// the larger of the two excesses against zero.
pub fn jackson_chain_check(
    f: &SpectralFunction<f64>,
    n: u64,
    order: &FractionalOrder<f64>,
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    let q = NormQuery::default();
    let chain = jackson_chain(f, order, n, default_kernel_power(order), space, &q, 0)?;
    let lhs = (chain.best - chain.residual).max(chain.residual - chain.integral);
    let margin = 1e-9 * chain.integral.max(chain.residual) + 4.0 * q.tolerance;
    Ok(Verdict::new("jackson_chain", lhs, 0.0, margin)
        .with("n", n)
        .with("alpha", order.alpha())
        .with("best", chain.best)
        .with("residual", chain.residual)
        .with("integral", chain.integral))
}

/// `E_n(f) / ω_α(f, 1/n)`, or `None` when the modulus vanishes.
pub fn direct_theorem_ratio(
    f: &SpectralFunction<f64>,
    n: u64,
    order: &FractionalOrder<f64>,
    space: &ExponentWeightPair<f64>,
) -> Result<Option<f64>> {
    let q = NormQuery::default();
    let e = best_approximation(f, n, space, &q)?;
    let w = modulus_of_smoothness(f, order, 1.0 / n as f64, space, &SupSearchPolicy::default())?;
    Ok((w > 0.0).then(|| e / w))
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Stability proxy for a positive sequence: `max / median <= limit`.
pub fn drift_verdict(name: &str, values: &[f64], limit: f64) -> Verdict {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite() && *v > 0.0).collect();
    let (lo, hi) = finite.iter().fold((f64::INFINITY, 0.0f64), |(a, b), v| (a.min(*v), b.max(*v)));
    let mid = if finite.is_empty() { 1.0 } else { median(&finite) };
    let drift = if finite.is_empty() { 1.0 } else { hi / mid };
    let all_finite = finite.len() == values.len();
    Verdict::new(name, if all_finite { drift } else { f64::INFINITY }, limit, 0.0)
        .with("max", hi)
        .with("median", mid)
        .with("min", lo)
        .with("samples", values.len())
}

/// Approximation of a function by the approximation of its ψ-derivative: `E_n(f) <= ε_n E_n(f^ψ)`.
pub fn psi_derivative_bound_check(
    f: &SpectralFunction<f64>,
    psi: &PsiWeights<f64>,
    n: u64,
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    let (lhs, rhs) = best_approx_by_psi_derivative_bound(f, psi, n, space)?;
    Ok(Verdict::new("psi_derivative_bound", lhs, rhs, 1e-10 * rhs + 1e-12).with("n", n))
}

/// Bernstein-type bound for polynomials of degree `n`: `‖τ^ψ‖ <= ‖τ‖/ε_n`.
pub fn bernstein_check(
    tau: &SpectralFunction<f64>,
    psi: &PsiWeights<f64>,
    n: u64,
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    let (lhs, rhs) = bernstein_psi_bound(tau, psi, n, space)?;
    Ok(Verdict::new("bernstein", lhs, rhs, 1e-10 * rhs + 1e-12).with("n", n))
}

/// Three-term ordering `lower <= ‖Δ_h^α τ‖ <= upper`, as the larger excess.
pub fn lemma4_check(
    tau: &SpectralFunction<f64>,
    order: &FractionalOrder<f64>,
    h: f64,
    n: u64,
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    let (lower, middle, upper) = lemma4_bounds(tau, order, h, n, space)?;
    let lhs = (lower - middle).max(middle - upper);
    Ok(Verdict::new("difference_ordering", lhs, 0.0, 1e-10 * upper + 1e-12)
        .with("n", n)
        .with("h", h)
        .with("alpha", order.alpha()))
}

/// Logarithmically spaced increments over `[1e-3, 1e-1]`.
pub fn corollary2_deltas() -> Vec<f64> {
    (0..=8).map(|i| 10f64.powf(-3.0 + 0.25 * i as f64)).collect()
}

/// `(δ, ω_α(f_β, δ))` for the decay family `f_β` with `E_n = n^{-β}` for
/// `n <= n_max`.
pub fn corollary2_profile(
    beta: f64,
    order: &FractionalOrder<f64>,
    n_max: u64,
    space: &ExponentWeightPair<f64>,
) -> Result<Vec<(f64, f64)>> {
    let f = decay_family(beta, n_max, space)?;
    let policy = SupSearchPolicy::new(64, 20, false)?.with_max_points(64)?;
    corollary2_deltas()
        .into_iter()
        .map(|d| Ok((d, modulus_of_smoothness(&f, order, d, space, &policy)?)))
        .collect()
}

/// Least-squares slope of `ln ω` against `ln δ`.
pub fn log_log_slope(profile: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = profile.iter().map(|(d, w)| (d.ln(), w.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Regime check on the profile: slope `β` when `β < α`, slope `α` when
/// `β > α` (both within 0.1), and a stable `ω(δ)/(δ^α |ln δ|)` when `β = α`.
pub fn corollary2_check(
    beta: f64,
    order: &FractionalOrder<f64>,
    n_max: u64,
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    let alpha = order.alpha();
    let profile = corollary2_profile(beta, order, n_max, space)?;
    let slope = log_log_slope(&profile);
    let v = if (beta - alpha).abs() < 1e-12 {
        let ratios: Vec<f64> = profile.iter().map(|(d, w)| w / (d.powf(alpha) * d.ln().abs())).collect();
        let med = median(&ratios);
        let hi = ratios.iter().copied().fold(0.0, f64::max);
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        Verdict::new("decay_regimes", (hi / med).max(med / lo), 2.0, 0.0).with("ratio_max", hi).with("ratio_min", lo)
    } else {
        let target = beta.min(alpha);
        Verdict::new("decay_regimes", (slope - target).abs(), 0.1, 0.0).with("target_slope", target)
    };
    Ok(v.with("beta", beta).with("alpha", alpha).with("slope", slope).with("n_max", n_max))
}

/// `R(n) = Σ_{v=1}^{n} v^{α-1} ω(1/v) / (n^α ω(1/n))` for `n = 1..=n_max`.
pub fn b_alpha_ratios(majorant: &MajorantSpec, order: &FractionalOrder<f64>, n_max: u64) -> Vec<f64> {
    let alpha = order.alpha();
    let mut sum = 0.0;
    (1..=n_max)
        .map(|n| {
            let v = n as f64;
            let w = majorant.evaluate(1.0 / v);
            sum += v.powf(alpha - 1.0) * w;
            sum / (v.powf(alpha) * w)
        })
        .collect()
}

/// Boundedness proxy for the majorant growth condition: the largest `R(n)` up to `n_max`
/// must stay within twice the value already reached at `⌊√n_max⌋`.
pub fn b_alpha_condition_check(majorant: &MajorantSpec, order: &FractionalOrder<f64>, n_max: u64) -> Verdict {
    let ratios = b_alpha_ratios(majorant, order, n_max.max(1));
    let early = ((n_max as f64).sqrt().floor() as usize).max(1);
    let lhs = ratios.iter().copied().fold(0.0, f64::max);
    let rhs = 2.0 * ratios[early - 1];
    Verdict::new("b_alpha_condition", lhs, rhs, 0.0)
        .with("alpha", order.alpha())
        .with("n_max", n_max)
        .with("stabilized_at", early)
}

/// Compares `A(n) = E_n(f)/ω(1/n)` and `B(n) = ω_α(f, 1/n)/ω(1/n)` over
/// `n <= n_max`: both must stay within twice their values over
/// `n <= ⌊√n_max⌋`.
pub fn class_membership_diagnostic(
    f: &SpectralFunction<f64>,
    majorant: &MajorantSpec,
    order: &FractionalOrder<f64>,
    space: &ExponentWeightPair<f64>,
    n_max: u64,
) -> Result<Verdict> {
    let q = NormQuery::default();
    let policy = SupSearchPolicy::new(64, 20, false)?.with_max_points(64)?;
    let early = ((n_max as f64).sqrt().floor() as u64).max(1);
    let (mut a_full, mut a_early, mut b_full, mut b_early) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 1..=n_max {
        let t = 1.0 / n as f64;
        let w = majorant.evaluate(t);
        let a = best_approximation(f, n, space, &q)? / w;
        let b = modulus_of_smoothness(f, order, t, space, &policy)? / w;
        a_full = a_full.max(a);
        b_full = b_full.max(b);
        if n <= early {
            a_early = a_early.max(a);
            b_early = b_early.max(b);
        }
    }
    let growth = |full: f64, early: f64| if full == 0.0 { 1.0 } else { full / early };
    let lhs = growth(a_full, a_early).max(growth(b_full, b_early));
    Ok(Verdict::new("class_membership", lhs, 2.0, 0.0)
        .with("alpha", order.alpha())
        .with("n_max", n_max)
        .with("sup_best_approximation_ratio", a_full)
        .with("sup_modulus_ratio", b_full))
}

/// `2^{-⌈α⌉} ω_α(f, δ) <= K_α(δ, f)` at every `δ` (with the search's lower
/// value of ω, so a failure is a genuine violation) and a stable ratio `K/ω` (max at most twice the median). Reported as
/// `max(worst lower-bound ratio, max(K/ω) / (2·median))` against 1.
pub fn k_functional_equivalence_check(
    f: &SpectralFunction<f64>,
    order: &FractionalOrder<f64>,
    deltas: &[f64],
    space: &ExponentWeightPair<f64>,
) -> Result<Verdict> {
    let q = NormQuery::default();
    let policy = SupSearchPolicy::default();
    let c1 = 2f64.powi(-(order.ceil() as i32));
    let mut lower = 0.0f64;
    let mut ratios = Vec::new();
    for &d in deltas {
        if !(d > 0.0 && d < 2.0 * PI) {
            return Err(Error::domain(format!("delta = {d} outside (0, 2π)")));
        }
        let est = modulus_estimate(f, order, d, space, &policy)?;
        let k = k_functional(f, order, d, space, &q)?;
        let scaled = c1 * est.value;
        if scaled > 4.0 * q.tolerance {
            lower = lower.max(scaled / (k + 4.0 * q.tolerance));
        }
        if est.value > 0.0 {
            ratios.push(k / est.value);
        }
    }
    let stability = if ratios.is_empty() {
        0.0
    } else {
        ratios.iter().copied().fold(0.0, f64::max) / (2.0 * median(&ratios))
    };
    Ok(Verdict::new("k_functional_equivalence", lower.max(stability), 1.0, 0.0)
        .with("alpha", order.alpha())
        .with("lower_bound_ratio", lower)
        .with("max_k_over_omega", ratios.iter().copied().fold(0.0, f64::max)))
}
