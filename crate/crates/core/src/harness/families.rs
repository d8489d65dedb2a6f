//! Test-instance families: seeded random inputs and functions with a
//! prescribed best-approximation decay.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::seq_norms::{ExponentWeightPair, SpectralFunction};

/// Random function with between 1 and `max_terms` nonzero coefficients at
/// indices in `[-radius, radius]`, real and imaginary parts uniform in `[-1, 1]`.
pub fn random_function<R: Rng>(rng: &mut R, max_terms: usize, radius: i64) -> SpectralFunction<f64> {
    let count = rng.gen_range(1..=max_terms.max(1));
    let mut f = SpectralFunction::new();
    while f.len() < count.min((2 * radius + 1) as usize) {
        let k = rng.gen_range(-radius..=radius);
        let c = Complex::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        f.set(k, c);
    }
    f
}

/// Random function with every coefficient in `[-radius, radius]` drawn and the
/// highest frequency guaranteed present.
pub fn random_polynomial<R: Rng>(rng: &mut R, degree: i64) -> SpectralFunction<f64> {
    let mut f = SpectralFunction::new();
    for k in -degree..=degree {
        if rng.gen_bool(0.6) {
            f.set(k, Complex::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)));
        }
    }
    let top = if rng.gen_bool(0.5) { degree } else { -degree };
    f.set(top, Complex::from_polar(rng.gen_range(0.2..=1.0), rng.gen_range(0.0..std::f64::consts::TAU)));
    f
}

/// Random variable-exponent space: `p_k ∈ (1, p_max]` and `μ_k ∈ (0, mu_max]`
/// on `[-radius, radius]`, defaults drawn the same way.
pub fn random_space<R: Rng>(rng: &mut R, p_max: f64, mu_max: f64, radius: i64) -> ExponentWeightPair<f64> {
    let draw_p = |rng: &mut R| p_max - rng.gen_range(0.0..(p_max - 1.0));
    let p0 = draw_p(rng);
    let mu0 = mu_max - rng.gen_range(0.0..mu_max);
    let mut space = ExponentWeightPair::new(p0, mu0, p_max).expect("valid defaults");
    for k in -radius..=radius {
        let p = draw_p(rng);
        let mu = mu_max - rng.gen_range(0.0..mu_max);
        space = space.with_exponent(k, p).expect("valid p").with_weight(k, mu).expect("valid mu");
    }
    space
}

/// Real even function with `E_n(f) = n^{-β}` exactly for `1 <= n <= terms`
/// and `E_n(f) = 0` beyond.
///
/// For a uniform exponent the coefficients follow from the tail identity
/// `Σ_{|k|>=n} μ_k a_k^p = n^{-βp}`; otherwise they are fixed from the top
/// index down so that each tail norm hits its target.
pub fn decay_family(beta: f64, terms: u64, space: &ExponentWeightPair<f64>) -> Result<SpectralFunction<f64>> {
    if !(beta > 0.0) || terms == 0 {
        return Err(Error::domain("decay family needs beta > 0 and at least one term"));
    }
    let n = terms as i64;
    let target = |k: i64| (k as f64).powf(-beta);
    let uniform = (1..=n).all(|k| {
        space.exponent(k) == space.exponent(1) && space.exponent(-k) == space.exponent(1)
    });
    let mut f = SpectralFunction::new();
    if uniform {
        let p = space.exponent(1);
        for k in 1..=n {
            let mass = space.weight(k) + space.weight(-k);
            if mass <= 0.0 {
                return Err(Error::domain(format!("zero weight at ±{k}")));
            }
            let next = if k == n { 0.0 } else { target(k + 1).powf(p) };
            let a = ((target(k).powf(p) - next) / mass).powf(1.0 / p);
            f.set(k, Complex::new(a, 0.0));
            f.set(-k, Complex::new(a, 0.0));
        }
        return Ok(f);
    }
    let mut amplitudes = vec![0.0; n as usize + 1];
    for k in (1..=n).rev() {
        let t = target(k);
        let used: f64 = (k + 1..=n)
            .flat_map(|j| [j, -j])
            .map(|j| space.weight(j) * (amplitudes[j.unsigned_abs() as usize] / t).powf(space.exponent(j)))
            .sum();
        let rest = 1.0 - used;
        let (mp, mm) = (space.weight(k), space.weight(-k));
        let (pp, pm) = (space.exponent(k), space.exponent(-k));
        if mp + mm <= 0.0 {
            return Err(Error::domain(format!("zero weight at ±{k}")));
        }
        let level = |x: f64| mp * x.powf(pp) + mm * x.powf(pm);
        let (mut lo, mut hi) = (0.0, 1.0);
        while level(hi) < rest {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if level(mid) < rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        amplitudes[k as usize] = 0.5 * (lo + hi) * t;
    }
    for k in 1..=n {
        let a = Complex::new(amplitudes[k as usize], 0.0);
        f.set(k, a);
        f.set(-k, a);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::best_approximation;
    use crate::seq_norms::NormQuery;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decay_family_hits_targets() {
        let q = NormQuery::default();
        let l2 = ExponentWeightPair::constant(2.0).unwrap();
        let f = decay_family(0.7, 300, &l2).unwrap();
        for n in [1u64, 2, 17, 300] {
            let e = best_approximation(&f, n, &l2, &q).unwrap();
            assert!((e - (n as f64).powf(-0.7)).abs() < 1e-12);
        }
        assert_eq!(best_approximation(&f, 301, &l2, &q).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_space(&mut rng, 4.0, 2.0, 40);
        let g = decay_family(1.3, 40, &s).unwrap();
        for n in 1..=40u64 {
            let e = best_approximation(&g, n, &s, &q).unwrap();
            assert!((e - (n as f64).powf(-1.3)).abs() < 1e-10, "n {n}: {e}");
        }
    }

    #[test]
    fn random_generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = random_function(&mut rng, 16, 16);
            assert!(!f.is_empty() && f.len() <= 16 && f.support_radius() <= 16);
            let s = random_space(&mut rng, 4.0, 2.0, 3);
            for k in -5..=5 {
                assert!(s.exponent(k) > 1.0 && s.exponent(k) <= 4.0);
                assert!(s.weight(k) > 0.0 && s.weight(k) <= 2.0);
            }
            assert_eq!(random_polynomial(&mut rng, 6).support_radius(), 6);
        }
    }
}
