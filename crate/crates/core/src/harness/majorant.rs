use crate::error::{Error, Result};

/// A majorant `ω(t)` on `[0, 1]`: continuous, nondecreasing, positive on
/// `(0, 1]`, with `ω(0+) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum MajorantSpec {
    /// `ω(t) = t^r`.
    Power { r: f64 },
    /// Piecewise-linear interpolation of `(t, ω(t))` points; must start at `(0, 0)`.
    Tabulated(Vec<(f64, f64)>),
}

impl MajorantSpec {
    pub fn power(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::domain(format!("majorant exponent must be positive, got {r}")));
        }
        Ok(MajorantSpec::Power { r })
    }

    pub fn tabulated(mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.len() < 2 {
            return Err(Error::domain("a tabulated majorant needs at least two points"));
        }
        if points[0] != (0.0, 0.0) {
            return Err(Error::domain("a tabulated majorant must start at (0, 0)"));
        }
        for w in points.windows(2) {
            let ((t0, v0), (t1, v1)) = (w[0], w[1]);
            if t1 <= t0 || t1 > 1.0 {
                return Err(Error::domain("majorant nodes must be distinct and lie in [0, 1]"));
            }
            if !(v1 > 0.0 && v1 >= v0 && v1.is_finite()) {
                return Err(Error::domain("majorant values must be positive and nondecreasing"));
            }
        }
        if points.last().unwrap().0 < 1.0 {
            return Err(Error::domain("a tabulated majorant must cover t = 1"));
        }
        Ok(MajorantSpec::Tabulated(points))
    }

    /// `ω(t)` for `t ∈ [0, 1]` (clamped outside).
    pub fn evaluate(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self {
            MajorantSpec::Power { r } => t.powf(*r),
            MajorantSpec::Tabulated(points) => {
                let i = points.partition_point(|p| p.0 < t).clamp(1, points.len() - 1);
                let ((t0, v0), (t1, v1)) = (points[i - 1], points[i]);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }
}
