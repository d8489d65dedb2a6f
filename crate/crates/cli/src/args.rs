use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "orlicz-approx", version, about = "Norms, moduli of smoothness and approximation checks in weighted variable-exponent sequence spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Luxemburg and Orlicz norms of the input and their ratio.
    Norm(RunArgs),
    /// Best approximations E_n over the n range.
    EnTable(RunArgs),
    /// Modulus of smoothness over the delta range.
    Modulus(RunArgs),
    /// K-functional and its ratio to the modulus over the delta range.
    Kfunc(RunArgs),
    /// Run the verification suite; exits 1 if any verdict fails.
    Verify(RunArgs),
    /// All of the above in one JSON document.
    Report(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Space definition (JSON); defaults to p = 2, μ = 1.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Spectral function `{"coeffs": [[k, re, im], ...]}` or samples `[[re, im], ...]`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Smoothness order α > 0.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Inclusive range of n, e.g. `1..8`.
    #[arg(long, default_value = "1..8", value_parser = parse_n_range)]
    pub n: RangeInclusive<u64>,
    /// Increments `a..b:steps`, evenly spaced and inclusive.
    #[arg(long, default_value = "0.1..1:10", value_parser = parse_delta_range)]
    pub delta: DeltaRange,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomised sweep.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Absolute tolerance on norm values.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl DeltaRange {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.end } else { self.start + step * i as f64 })
            .collect()
    }
}

pub fn parse_n_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = text.split_once("..").ok_or("expected a..b")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    if a == 0 || a > b {
        return Err("need 1 <= a <= b".into());
    }
    Ok(a..=b)
}

pub fn parse_delta_range(text: &str) -> Result<DeltaRange, String> {
    let (range, steps) = text.split_once(':').ok_or("expected a..b:steps")?;
    let (a, b) = range.split_once("..").ok_or("expected a..b:steps")?;
    let start: f64 = a.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let end: f64 = b.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    let steps: usize = steps.trim().parse().map_err(|e| format!("bad step count: {e}"))?;
    if !(start > 0.0 && start <= end && end.is_finite()) || steps == 0 {
        return Err("need 0 < a <= b and steps >= 1".into());
    }
    if steps == 1 && start != end {
        return Err("a single step needs a == b".into());
    }
    Ok(DeltaRange { start, end, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("2..5").unwrap(), 2..=5);
        assert!(parse_n_range("0..5").is_err());
        assert!(parse_n_range("5..2").is_err());
        let d = parse_delta_range("0.1..0.5:5").unwrap();
        let v = d.values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[4], 0.5);
        assert!((v[1] - 0.2).abs() < 1e-15);
        assert!(parse_delta_range("0..1:3").is_err());
        assert!(parse_delta_range("0.1..1").is_err());
        assert_eq!(parse_delta_range("0.3..0.3:1").unwrap().values(), vec![0.3]);
    }
}
