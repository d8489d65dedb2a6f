//! Fractional moduli of smoothness `ω_α(f, δ)` and the Peetre K-functional
//! `K_α(δ, f)`.
//!
//! The supremum over `|h| <= δ` is discretised. Every estimate reports a lower
//! value (the best point actually evaluated) and, when the guard is enabled,
//! a certified upper value from a Lipschitz/Hölder bound on
//! `h ↦ ‖Δ_h^α f‖` between grid points.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seq_norms::{ExponentWeightPair, Moduli, NormQuery, SpectralFunction};
use crate::spectral::FractionalOrder;

/// How the supremum over `0 < h <= δ` is searched.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupSearchPolicy<T> {
    /// Minimum number of uniform grid points on `(0, δ]`.
    pub coarse_points: usize,
    /// Golden-section rounds spent around each promising grid maximum.
    pub refine_rounds: usize,
    /// Compute a certified upper bound and refine every grid maximum that
    /// could still beat the best value.
    pub guard: bool,
    /// Optional cap on the grid size for very long supports.
    pub max_points: Option<usize>,
    pub query: NormQuery<T>,
}

impl<T: Real> SupSearchPolicy<T> {
    pub fn new(coarse_points: usize, refine_rounds: usize, guard: bool) -> Result<Self> {
        if coarse_points < 8 {
            return Err(Error::domain("coarse_points must be at least 8"));
        }
        Ok(Self { coarse_points, refine_rounds, guard, max_points: None, query: NormQuery::default() })
    }

    pub fn with_max_points(mut self, cap: usize) -> Result<Self> {
        if cap < 8 {
            return Err(Error::domain("max_points must be at least 8"));
        }
        self.max_points = Some(cap);
        Ok(self)
    }

    pub fn with_query(mut self, query: NormQuery<T>) -> Self {
        self.query = query;
        self
    }

    fn grid_points(&self, radius: u64, delta: T) -> usize {
        let per_unit = (8 * radius) as usize;
        let scale = delta.ceil().to_usize().unwrap_or(1).max(1);
        let n = self.coarse_points.max(per_unit * scale);
        self.max_points.map_or(n, |cap| n.min(cap.max(self.coarse_points)))
    }
}

impl<T: Real> Default for SupSearchPolicy<T> {
    fn default() -> Self {
        Self { coarse_points: 64, refine_rounds: 20, guard: true, max_points: None, query: NormQuery::default() }
    }
}

/// Outcome of a supremum search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupEstimate<T> {
    /// Largest value found; a lower bound for the supremum up to the norm tolerance.
    pub value: T,
    /// Certified upper bound, when the guard was enabled.
    pub upper: Option<T>,
    /// Increment at which `value` was attained.
    pub argmax: T,
}

impl<T: Real> SupEstimate<T> {
    /// Upper bound when certified, the value otherwise.
    pub fn upper_or_value(&self) -> T {
        self.upper.unwrap_or(self.value)
    }

    /// Width of the certified interval (zero without a certificate).
    pub fn gap(&self) -> T {
        self.upper_or_value() - self.value
    }
}

/// `h ↦ ‖Δ_h^α f‖` for fixed `f`, `α` and space, with the coefficient moduli
/// prepared once.
#[derive(Clone, Debug)]
pub struct DifferenceNormProfile<T> {
    moduli: Moduli<T>,
    order: FractionalOrder<T>,
    query: NormQuery<T>,
}

impl<T: Real> DifferenceNormProfile<T> {
    pub fn new(
        f: &SpectralFunction<T>,
        order: FractionalOrder<T>,
        space: &ExponentWeightPair<T>,
        query: NormQuery<T>,
    ) -> Self {
        let moduli = Moduli::new(f, space).restrict(|k| k != 0);
        Self { moduli, order, query }
    }

    pub fn order(&self) -> &FractionalOrder<T> {
        &self.order
    }

    /// Largest `|k|` carrying mass.
    pub fn radius(&self) -> u64 {
        self.moduli.radius()
    }

    /// `‖Δ_h^α f‖`, via the moduli `2^α |sin(kh/2)|^α |f̂(k)|`.
    pub fn at(&self, h: T) -> Result<T> {
        let two = T::lit(2.0);
        let alpha = self.order.alpha();
        self.moduli.luxemburg_rescaled(
            |k| (two * (T::from_index(k) * h / two).sin().abs()).powf(alpha),
            &self.query,
        )
    }

    /// Bound on `|‖Δ_{h1}^α f‖ - ‖Δ_{h2}^α f‖|` valid whenever `|h1 - h2| <= s`.
    pub fn oscillation_bound(&self, s: T) -> Result<T> {
        let two = T::lit(2.0);
        let alpha = self.order.alpha();
        let cap = two.powf(alpha);
        self.moduli.luxemburg_rescaled(
            |k| {
                let ks = T::from_index(k).abs() * s;
                let w = if alpha >= T::one() {
                    alpha * two.powf(alpha - T::one()) * ks
                } else {
                    ks.powf(alpha)
                };
                w.min(cap)
            },
            &self.query,
        )
    }

    /// Searches `sup_{0 <= h <= δ} ‖Δ_h^α f‖`.
    ///
    /// The function is even and `2π`-periodic in `h`, so only
    /// `[0, min(δ, π)]` is searched. On `[0, π/R]` (`R` the support radius)
    /// every multiplier is nondecreasing, so the supremum there is attained at
    /// the right end point.
    pub fn sup(&self, delta: T, policy: &SupSearchPolicy<T>) -> Result<SupEstimate<T>> {
        if !(delta > T::zero()) {
            return Err(Error::domain(format!("delta = {delta} must be positive")));
        }
        let radius = self.radius();
        if radius == 0 {
            return Ok(SupEstimate { value: T::zero(), upper: Some(T::zero()), argmax: T::zero() });
        }
        let pi = T::PI();
        let span = delta.min(pi);
        let slack = self.query.tolerance * T::lit(2.0);
        if span <= pi / T::from_count(radius as usize) {
            let v = self.at(span)?;
            return Ok(SupEstimate { value: v, upper: Some(v + slack), argmax: span });
        }

        let n = policy.grid_points(radius, span);
        let step = span / T::from_count(n);
        let mut values = Vec::with_capacity(n + 1);
        values.push(T::zero());
        for j in 1..=n {
            let h = if j == n { span } else { step * T::from_count(j) };
            values.push(self.at(h)?);
        }
        let (mut best_j, mut best) = (0, T::zero());
        for (j, &v) in values.iter().enumerate() {
            if v > best {
                best = v;
                best_j = j;
            }
        }

        let (upper, threshold) = if policy.guard {
            let half = self.oscillation_bound(step / T::lit(2.0))?;
            let full = self.oscillation_bound(step)?;
            (Some(best + half + slack), best - full)
        } else {
            (None, best)
        };

        let mut estimate = SupEstimate { value: best, upper, argmax: step * T::from_count(best_j) };
        if policy.refine_rounds == 0 {
            return Ok(estimate);
        }
        for j in 1..=n {
            let v = values[j];
            let local_max = v >= values[j - 1] && (j == n || v >= values[j + 1]);
            if !local_max || v < threshold || (!policy.guard && j != best_j) {
                continue;
            }
            let a = step * T::from_count(j - 1);
            let b = if j == n { span } else { (step * T::from_count(j + 1)).min(span) };
            let (h, val) = self.golden_max(a, b, policy.refine_rounds)?;
            if val > estimate.value {
                estimate.value = val;
                estimate.argmax = h;
            }
        }
        if let Some(u) = estimate.upper.as_mut() {
            *u = u.max(estimate.value);
        }
        Ok(estimate)
    }

    fn golden_max(&self, mut a: T, mut b: T, rounds: usize) -> Result<(T, T)> {
        let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
        let mut x1 = b - ratio * (b - a);
        let mut x2 = a + ratio * (b - a);
        let mut f1 = self.at(x1)?;
        let mut f2 = self.at(x2)?;
        let (mut best_h, mut best) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        for _ in 0..rounds {
            if f1 >= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - ratio * (b - a);
                f1 = self.at(x1)?;
                if f1 > best {
                    best = f1;
                    best_h = x1;
                }
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + ratio * (b - a);
                f2 = self.at(x2)?;
                if f2 > best {
                    best = f2;
                    best_h = x2;
                }
            }
        }
        Ok((best_h, best))
    }

    /// Running supremum `max_{h_i <= h_j} ‖Δ_{h_i}^α f‖` along an increasing
    /// grid; a lower profile of `h ↦ ω_α(f, h)` sharing one set of evaluations.
    pub fn running_sup(&self, grid: &[T]) -> Result<Vec<T>> {
        let radius = self.radius();
        if radius == 0 {
            return Ok(vec![T::zero(); grid.len()]);
        }
        let monotone_end = T::PI() / T::from_count(radius as usize);
        let mut out = Vec::with_capacity(grid.len());
        let mut acc = T::zero();
        for &h in grid {
            let v = self.at(h)?;
            // exact on the monotone stretch, running max elsewhere
            acc = if h <= monotone_end { v } else { acc.max(v) };
            out.push(acc);
        }
        Ok(out)
    }
}

/// `‖Δ_h^α f‖` in the space.
pub fn difference_norm<T: Real>(
    f: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    h: T,
    space: &ExponentWeightPair<T>,
    query: &NormQuery<T>,
) -> Result<T> {
    DifferenceNormProfile::new(f, *order, space, *query).at(h)
}

/// `ω_α(f, δ) = sup_{|h| <= δ} ‖Δ_h^α f‖`, as the lower value of the search.
pub fn modulus_of_smoothness<T: Real>(
    f: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    delta: T,
    space: &ExponentWeightPair<T>,
    policy: &SupSearchPolicy<T>,
) -> Result<T> {
    Ok(modulus_estimate(f, order, delta, space, policy)?.value)
}

/// `ω_α(f, δ)` with its certificate.
pub fn modulus_estimate<T: Real>(
    f: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    delta: T,
    space: &ExponentWeightPair<T>,
    policy: &SupSearchPolicy<T>,
) -> Result<SupEstimate<T>> {
    DifferenceNormProfile::new(f, *order, space, policy.query).sup(delta, policy)
}

/// Objective of the K-functional restricted to competitors `ĥ(k) = t_k f̂(k)`.
struct KObjective<'a, T> {
    residual: &'a Moduli<T>,
    smooth: Moduli<T>,
    scale: T,
    query: &'a NormQuery<T>,
}

impl<T: Real> KObjective<'_, T> {
    /// `‖(1 - t_k) f̂(k)‖ + δ^α ‖t_k |k|^α f̂(k)‖`, with `t` aligned to the
    /// entries of the residual moduli.
    fn eval(&self, t: &[T]) -> Result<T> {
        let mut it = t.iter();
        let rest = self.residual.luxemburg_rescaled(|_| T::one() - *it.next().unwrap(), self.query)?;
        let mut it = t.iter();
        let smooth = self.smooth.luxemburg_rescaled(|_| *it.next().unwrap(), self.query)?;
        Ok(rest + self.scale * smooth)
    }
}

fn k_objective<'a, T: Real>(
    residual: &'a Moduli<T>,
    order: &FractionalOrder<T>,
    delta: T,
    query: &'a NormQuery<T>,
) -> KObjective<'a, T> {
    let alpha = order.alpha();
    let smooth = Moduli::clone(residual);
    let smooth = smooth.rescaled(|k| T::from_index(k).abs().powf(alpha));
    KObjective { residual, smooth, scale: delta.powf(alpha), query }
}

fn prepare_k<T: Real>(
    f: &SpectralFunction<T>,
    delta: T,
    space: &ExponentWeightPair<T>,
) -> Result<Moduli<T>> {
    if !(delta > T::zero()) {
        return Err(Error::domain(format!("delta = {delta} must be positive")));
    }
    // The zero mode is always copied into the competitor: it costs nothing in
    // the smooth term.
    let moduli = Moduli::new(f, space).restrict(|k| k != 0);
    let mut entries = moduli.entries().to_vec();
    entries.sort_by_key(|e| (e.index.unsigned_abs(), e.index));
    let moduli = Moduli::from_moduli(entries.iter().map(|e| (e.index, e.modulus)), space);
    Ok(moduli)
}

/// Threshold vectors `t_k = [|k| <= n]`, i.e. the competitors `h = S_n(f)`.
fn partial_sum_patterns<T: Real>(moduli: &Moduli<T>) -> Vec<Vec<T>> {
    let radius = moduli.radius();
    let mut levels: Vec<u64> = moduli.entries().iter().map(|e| e.index.unsigned_abs()).collect();
    levels.insert(0, 0);
    levels.dedup();
    debug_assert!(levels.last().copied().unwrap_or(0) <= radius);
    levels
        .into_iter()
        .map(|n| {
            moduli
                .entries()
                .iter()
                .map(|e| if e.index.unsigned_abs() <= n { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

/// `min_n ‖f - S_n‖ + δ^α ‖S_n^{(α)}‖` over `0 <= n <= R + 1`: an upper bound
/// for the K-functional using Fourier partial sums as competitors.
pub fn k_functional_partial_sum_bound<T: Real>(
    f: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    delta: T,
    space: &ExponentWeightPair<T>,
    query: &NormQuery<T>,
) -> Result<T> {
    let moduli = prepare_k(f, delta, space)?;
    if moduli.is_zero() {
        return Ok(T::zero());
    }
    let objective = k_objective(&moduli, order, delta, query);
    let mut best = T::infinity();
    for t in partial_sum_patterns(&moduli) {
        best = best.min(objective.eval(&t)?);
    }
    Ok(best)
}

/// Peetre K-functional `inf_h ‖f - h‖ + δ^α ‖h^{(α)}‖`.
///
/// Competitors are restricted to `ĥ(k) = t_k f̂(k)` with `t_k ∈ [0, 1]`:
/// projecting any competitor's coefficient onto the segment `[0, f̂(k)]`
/// shrinks both moduli `|f̂(k) - ĥ(k)|` and `|ĥ(k)|`, so the restriction loses
/// nothing. The resulting convex objective is minimised by coordinate descent
/// in order of increasing `|k|`, each coordinate by golden-section search
/// (end points included), with an extrapolation step along each sweep's
/// displacement. Runs start from the best partial-sum competitor and from
/// `t ≡ 1/2`; the smaller result is returned.
pub fn k_functional<T: Real>(
    f: &SpectralFunction<T>,
    order: &FractionalOrder<T>,
    delta: T,
    space: &ExponentWeightPair<T>,
    query: &NormQuery<T>,
) -> Result<T> {
    let moduli = prepare_k(f, delta, space)?;
    if moduli.is_zero() {
        return Ok(T::zero());
    }
    let objective = k_objective(&moduli, order, delta, query);
    let mut best_pattern = None;
    let mut best = T::infinity();
    for t in partial_sum_patterns(&moduli) {
        let v = objective.eval(&t)?;
        if v < best {
            best = v;
            best_pattern = Some(t);
        }
    }
    let half = vec![T::lit(0.5); moduli.entries().len()];
    for start in [best_pattern.expect("at least one pattern"), half] {
        best = best.min(coordinate_descent(&objective, start, query)?);
    }
    Ok(best)
}

fn coordinate_descent<T: Real>(
    objective: &KObjective<'_, T>,
    mut t: Vec<T>,
    query: &NormQuery<T>,
) -> Result<T> {
    let mut value = objective.eval(&t)?;
    for _ in 0..query.max_iterations {
        let before = value;
        let snapshot = t.clone();
        for i in 0..t.len() {
            value = minimize_coordinate(objective, &mut t, i, value)?;
        }
        // extrapolate along the sweep displacement
        let direction: Vec<T> = t.iter().zip(&snapshot).map(|(a, b)| *a - *b).collect();
        if direction.iter().any(|d| *d != T::zero()) {
            value = extrapolate(objective, &mut t, &direction, value)?;
        }
        if before - value <= query.tolerance {
            return Ok(value);
        }
    }
    Err(Error::Convergence { iterations: query.max_iterations, lo: 0.0, hi: value.to_f64_lossy() })
}

fn minimize_coordinate<T: Real>(
    objective: &KObjective<'_, T>,
    t: &mut [T],
    i: usize,
    current: T,
) -> Result<T> {
    let original = t[i];
    let eval = |x: T, t: &mut [T]| -> Result<T> {
        t[i] = x;
        objective.eval(t)
    };
    let mut best = (original, current);
    for x in [T::zero(), T::one()] {
        let v = eval(x, t)?;
        if v < best.1 {
            best = (x, v);
        }
    }
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = (T::zero(), T::one());
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = eval(x1, t)?;
    let mut f2 = eval(x2, t)?;
    let width = T::lit(1e-9).max(T::tolerance_floor());
    while b - a > width {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = eval(x1, t)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = eval(x2, t)?;
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v < best.1 {
            best = (x, v);
        }
    }
    t[i] = best.0;
    Ok(best.1)
}

/// Exact line search on the segment from `t` to `target`; the objective is
/// convex along it, so golden section applies. Moves `t` only on improvement.
fn segment_search<T: Real>(
    objective: &KObjective<'_, T>,
    t: &mut Vec<T>,
    target: &[T],
    current: T,
) -> Result<T> {
    let at = |s: T| -> Vec<T> {
        t.iter().zip(target).map(|(x, y)| (*x + s * (*y - *x)).max(T::zero()).min(T::one())).collect()
    };
    let eval = |s: T| objective.eval(&at(s));
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = (T::zero(), T::one());
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (eval(x1)?, eval(x2)?);
    let width = T::lit(1e-10).max(T::tolerance_floor());
    while b - a > width {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = eval(x2)?;
        }
    }
    let mut best = (T::zero(), current);
    for (s, v) in [(x1, f1), (x2, f2), (T::one(), eval(T::one())?)] {
        if v < best.1 {
            best = (s, v);
        }
    }
    if best.0 > T::zero() {
        *t = at(best.0);
    }
    Ok(best.1)
}

/// Line searches along the sweep displacement (to the box boundary) and
/// towards the corners `t ≡ 0` and `t ≡ 1`, where the objective has kinks
/// that stall coordinate moves.
fn extrapolate<T: Real>(
    objective: &KObjective<'_, T>,
    t: &mut Vec<T>,
    direction: &[T],
    current: T,
) -> Result<T> {
    let mut value = current;
    let mut reach = T::infinity();
    for (x, d) in t.iter().zip(direction) {
        if *d > T::zero() {
            reach = reach.min((T::one() - *x) / *d);
        } else if *d < T::zero() {
            reach = reach.min(*x / -*d);
        }
    }
    if reach > T::zero() && reach.is_finite() {
        let target: Vec<T> = t.iter().zip(direction).map(|(x, d)| *x + reach * *d).collect();
        value = segment_search(objective, t, &target, value)?;
    }
    for corner in [T::zero(), T::one()] {
        let target = vec![corner; t.len()];
        value = segment_search(objective, t, &target, value)?;
    }
    Ok(value)
}
