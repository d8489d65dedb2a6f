//! The default verification suite: a fixed list of seeded sweeps.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checks::*;
use super::families::{decay_family, random_function, random_polynomial, random_space};
use super::majorant::MajorantSpec;
use super::verdict::Verdict;
use crate::error::Result;
use crate::seq_norms::{luxemburg_norm, orlicz_norm, ExponentWeightPair, NormQuery, SpectralFunction};
use crate::smoothness::{
    k_functional, k_functional_partial_sum_bound, modulus_estimate, SupSearchPolicy,
};
use crate::spectral::{FractionalOrder, PsiWeights};

/// Suite parameters. Everything random is derived from `seed`.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random functions per sweep.
    pub instances: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 42, instances: 12 }
    }
}

type Task = fn(&mut ChaCha8Rng, usize) -> Result<Vec<Verdict>>;

const ORDERS: [f64; 3] = [0.5, 1.0, 2.0];

fn order(alpha: f64) -> FractionalOrder<f64> {
    FractionalOrder::new(alpha).expect("positive order")
}

fn instance<R: Rng>(rng: &mut R) -> (SpectralFunction<f64>, ExponentWeightPair<f64>) {
    let f = random_function(rng, 16, 16);
    (f, random_space(rng, 4.0, 2.0, 16))
}

fn worst(name: String, verdicts: Vec<Verdict>) -> Vec<Verdict> {
    Verdict::worst(name, verdicts).into_iter().collect()
}

fn norm_sandwich(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let q = NormQuery::default();
    let (mut upper, mut lower) = (Vec::new(), Vec::new());
    for _ in 0..count * 4 {
        let f = random_function(rng, 32, 32);
        let s = random_space(rng, 4.0, 2.0, 32);
        let ratio = orlicz_norm(&f, &s, &q)? / luxemburg_norm(&f, &s, &q)?;
        upper.push(Verdict::new("", ratio, 2.0, 1e-8));
        lower.push(Verdict::new("", 1.0 - ratio, 0.0, 1e-8));
    }
    let mut out = worst("norms/orlicz_over_luxemburg_upper".into(), upper);
    out.extend(worst("norms/orlicz_over_luxemburg_lower".into(), lower));
    Ok(out)
}

fn lp_collapse(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let q = NormQuery::default();
    let mut out = Vec::new();
    for _ in 0..count * 4 {
        let p = [1.5, 2.0, 3.0][rng.gen_range(0..3)];
        let s = ExponentWeightPair::constant(p)?;
        let f = random_function(rng, 32, 32);
        let lp = f.iter().map(|(_, c)| c.norm().powf(p)).sum::<f64>().powf(1.0 / p);
        let lux = luxemburg_norm(&f, &s, &q)?;
        let orl = orlicz_norm(&f, &s, &q)?;
        out.push(Verdict::new("", ((lux - lp).abs().max((orl - lp).abs())) / lp, 1e-9, 0.0).with("p", p));
    }
    Ok(worst("norms/constant_exponent_collapse".into(), out))
}

fn inverse_sweep(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let cases: Vec<_> = (0..count).map(|_| instance(rng)).collect();
    let mut out = Vec::new();
    for alpha in ORDERS {
        let o = order(alpha);
        let mut exact = Vec::new();
        let mut relaxed = Vec::new();
        for (f, s) in &cases {
            for n in 1..=16 {
                exact.push(inverse_theorem_check(f, n, &o, s)?);
                if alpha >= 1.0 {
                    relaxed.push(inverse_weighted_sum_bound(f, n, &o, s)?);
                }
            }
        }
        out.extend(worst(format!("inverse_theorem/alpha={alpha}"), exact));
        out.extend(worst(format!("inverse_weighted_sum/alpha={alpha}"), relaxed));
    }
    Ok(out)
}

fn sharpness(_: &mut ChaCha8Rng, _: usize) -> Result<Vec<Verdict>> {
    let s = ExponentWeightPair::constant(2.0)?;
    let o = order(1.0);
    let mut out = Vec::new();
    for n in (1..=64).chain([1000]) {
        let x = PI / (2.0 * n as f64);
        let r = sharpness_ratio(1, n, &o, &s)?;
        out.push(Verdict::new("", (r - x.sin() / x).abs(), 1e-12, 0.0).with("n", n));
    }
    let mut verdicts = worst("sharpness/sinc_ratio".into(), out);
    let n0 = sharpness_threshold(1, &o, &s, 0.05, 1000)?;
    verdicts.push(
        Verdict::new("sharpness/threshold_eps_0.05", n0.map_or(f64::INFINITY, |n| n as f64), 1000.0, 0.0)
            .with("n0", n0.map_or(-1, |n| n as i64)),
    );
    Ok(verdicts)
}

fn direct_theorem(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let cases: Vec<_> = (0..count.min(6)).map(|_| instance(rng)).collect();
    let mut out = Vec::new();
    for alpha in ORDERS {
        let o = order(alpha);
        let mut chain = Vec::new();
        for (f, s) in &cases {
            for n in 1..=12 {
                chain.push(jackson_chain_check(f, n, &o, s)?);
            }
        }
        out.extend(worst(format!("jackson_chain/alpha={alpha}"), chain));
        let mut constants = Vec::new();
        for n in 2..=32u64 {
            let mut best = 0.0f64;
            for _ in 0..4 {
                let f = random_function(rng, 16, 2 * n as i64);
                let s = random_space(rng, 4.0, 2.0, 2 * n as i64);
                if let Some(r) = direct_theorem_ratio(&f, n, &o, &s)? {
                    best = best.max(r);
                }
            }
            constants.push(best);
        }
        out.push(drift_verdict(&format!("direct_theorem_constant_drift/alpha={alpha}"), &constants, 2.0));
    }
    Ok(out)
}

fn bernstein_family(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let (mut prop1, mut prop2, mut l4) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..count * 2 {
        let r = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let psi = PsiWeights::power(r)?;
        let (f, s) = instance(rng);
        let n = rng.gen_range(1..=17);
        prop1.push(psi_derivative_bound_check(&f, &psi, n, &s)?.with("r", r));
        let degree = rng.gen_range(1..=12);
        let tau = random_polynomial(rng, degree);
        let s = random_space(rng, 4.0, 2.0, degree);
        prop2.push(bernstein_check(&tau, &psi, degree as u64, &s)?.with("r", r));
        let alpha = rng.gen_range(0.3..3.0);
        let h = rng.gen_range(1e-3..0.999) * 2.0 * PI / degree as f64;
        l4.push(lemma4_check(&tau, &order(alpha), h, degree as u64, &s)?);
    }
    let mut out = worst("psi_derivative_bound".into(), prop1);
    out.extend(worst("bernstein_inequality".into(), prop2));
    out.extend(worst("difference_ordering".into(), l4));
    Ok(out)
}

fn k_functionals(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let q = NormQuery::default();
    let deltas = [0.01, 0.03, 0.1, 0.3, 1.0];
    let mut out = Vec::new();
    for alpha in ORDERS {
        let o = order(alpha);
        let (mut equivalence, mut upper) = (Vec::new(), Vec::new());
        for _ in 0..count.min(6) {
            let f = random_function(rng, 8, 8);
            let s = random_space(rng, 4.0, 2.0, 8);
            equivalence.push(k_functional_equivalence_check(&f, &o, &deltas, &s)?);
            let d = deltas[rng.gen_range(0..deltas.len())];
            let k = k_functional(&f, &o, d, &s, &q)?;
            let b = k_functional_partial_sum_bound(&f, &o, d, &s, &q)?;
            upper.push(Verdict::new("", k, b, 4.0 * q.tolerance).with("delta", d));
        }
        out.extend(worst(format!("k_functional_equivalence/alpha={alpha}"), equivalence));
        out.extend(worst(format!("k_functional_below_partial_sums/alpha={alpha}"), upper));
    }
    Ok(out)
}

fn moduli_properties(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let q = NormQuery::default();
    let policy = SupSearchPolicy::default();
    let (mut bounded, mut monotone, mut subadditive) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..count * 2 {
        let (f, s) = instance(rng);
        let g = random_function(rng, 16, 16);
        let alpha = rng.gen_range(0.3..3.0);
        let o = order(alpha);
        let delta = rng.gen_range(0.01..3.0);
        let w = modulus_estimate(&f, &o, delta, &s, &policy)?;
        let norm = luxemburg_norm(&f, &s, &q)?;
        bounded.push(Verdict::new("", w.value, o.binomial_mass_bound() * norm, 1e-10).with("alpha", alpha));
        let half = modulus_estimate(&f, &o, delta / 2.0, &s, &policy)?;
        monotone.push(Verdict::new("", half.value, w.upper_or_value(), 1e-10).with("alpha", alpha));
        let sum = modulus_estimate(&(&f + &g), &o, delta, &s, &policy)?;
        let wg = modulus_estimate(&g, &o, delta, &s, &policy)?;
        subadditive.push(Verdict::new("", sum.value, w.upper_or_value() + wg.upper_or_value(), 1e-10));
    }
    let mut out = worst("modulus/bounded_by_binomial_mass".into(), bounded);
    out.extend(worst("modulus/monotone_in_delta".into(), monotone));
    out.extend(worst("modulus/subadditive".into(), subadditive));
    Ok(out)
}

fn abel(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Verdict>> {
    let (mut ints, mut floats) = (Vec::new(), Vec::new());
    for _ in 0..count * 4 {
        let len = rng.gen_range(2..40);
        let n = rng.gen_range(2..=len);
        let big_m = rng.gen_range(1..n);
        let m = rng.gen_range(1..=big_m);
        let a: Vec<i64> = (0..len).map(|_| rng.gen_range(-1000..=1000)).collect();
        let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-1000..=1000)).collect();
        let (l, r) = abel_transform_sides(&a, &c, m, big_m, n)?;
        ints.push(Verdict::new("", (l - r).abs() as f64, 0.0, 0.0));
        let af: Vec<f64> = (0..len).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let cf: Vec<f64> = (0..len).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let (l, r) = abel_transform_sides(&af, &cf, m, big_m, n)?;
        let scale: f64 = (m..=big_m).map(|v| (af[v - 1] * cf[v - 1]).abs()).sum::<f64>().max(1e-300);
        floats.push(Verdict::new("", (l - r).abs() / scale, 1e-12, 0.0));
    }
    let mut out = worst("abel_identity/integer".into(), ints);
    out.extend(worst("abel_identity/float".into(), floats));
    Ok(out)
}

fn decay_regimes(rng: &mut ChaCha8Rng, _: usize) -> Result<Vec<Verdict>> {
    let o = order(1.0);
    let mut out = Vec::new();
    let constant = ExponentWeightPair::constant(2.0)?;
    for beta in [0.5, 1.0, 2.0] {
        out.push(corollary2_check(beta, &o, 4096, &constant)?.renamed(format!("decay_regimes/beta={beta}")));
    }
    // same regimes with the exponent perturbed around 2
    let n_max = 1024;
    let mut perturbed = ExponentWeightPair::new(2.0, 1.0, 4.0)?;
    for k in -n_max..=n_max {
        perturbed = perturbed.with_exponent(k, 2.0 + rng.gen_range(-0.3..0.3))?;
    }
    for beta in [0.5, 1.0, 2.0] {
        out.push(
            corollary2_check(beta, &o, n_max as u64, &perturbed)?
                .renamed(format!("decay_regimes_variable_exponent/beta={beta}")),
        );
    }
    Ok(out)
}

fn classes(_: &mut ChaCha8Rng, _: usize) -> Result<Vec<Verdict>> {
    let s = ExponentWeightPair::constant(2.0)?;
    let mut out = Vec::new();
    for (alpha, r) in [(1.0, 0.5), (2.0, 1.0), (2.0, 1.5)] {
        let o = order(alpha);
        let m = MajorantSpec::power(r)?;
        out.push(b_alpha_condition_check(&m, &o, 10_000).renamed(format!("b_alpha/alpha={alpha}/r={r}")));
        if r < alpha {
            let f = decay_family(r, 512, &s)?;
            out.push(
                class_membership_diagnostic(&f, &m, &o, &s, 48)?
                    .renamed(format!("class_membership/alpha={alpha}/r={r}")),
            );
        }
    }
    Ok(out)
}

const TASKS: [(&str, Task); 11] = [
    ("norm_sandwich", norm_sandwich),
    ("lp_collapse", lp_collapse),
    ("inverse", inverse_sweep),
    ("sharpness", sharpness),
    ("direct", direct_theorem),
    ("bernstein", bernstein_family),
    ("k_functional", k_functionals),
    ("moduli", moduli_properties),
    ("abel", abel),
    ("decay_regimes", decay_regimes),
    ("classes", classes),
];

/// Runs the suite. Tasks run in parallel on the current rayon pool; each has
/// its own generator derived from the seed, and the result is sorted by
/// verdict name, so the output does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> Vec<Verdict> {
    let mut verdicts: Vec<Verdict> = TASKS
        .par_iter()
        .enumerate()
        .map(|(i, (label, task))| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i as u64 + 1);
            task(&mut rng, config.instances).unwrap_or_else(|e| {
                vec![Verdict::new(format!("{label}/error"), f64::INFINITY, 0.0, 0.0).with("error", e.to_string())]
            })
        })
        .flatten()
        .collect();
    verdicts.sort_by(|a, b| a.name.cmp(&b.name));
    verdicts
}
