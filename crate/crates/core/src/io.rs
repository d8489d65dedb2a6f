//! JSON file formats.
//!
//! * spectral function: `{"coeffs": [[k, re, im], ...]}`
//! * space: `{"default_p": x, "default_mu": y, "p": [[k, v], ...], "mu": [[k, v], ...], "bound_K": z}`
//! * samples: `[[re, im], ...]` on a uniform grid over `[0, 2π)`
//! * kernel export: `{"degree": d, "coeffs": [[l, v], ...]}`

use num_complex::Complex;
use serde_json::{json, Value};

use crate::approx::Kernel;
use crate::error::{Error, Result};
use crate::seq_norms::{ExponentWeightPair, SpectralFunction};

fn parse_error(context: &str, message: impl Into<String>) -> Error {
    Error::Parse { context: context.to_owned(), message: message.into() }
}

fn document(text: &str, source: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        parse_error(&format!("{source}:{}:{}", e.line(), e.column()), e.to_string())
    })
}

fn field<'a>(obj: &'a Value, key: &str, source: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_error(&format!("{source}: {key}"), "missing field"))
}

fn real(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().filter(|x| x.is_finite()).ok_or_else(|| parse_error(path, format!("expected a finite number, found {v}")))
}

fn index(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_error(path, format!("expected an integer index, found {v}")))
}

fn rows<'a>(v: &'a Value, path: &str, width: usize) -> Result<Vec<&'a [Value]>> {
    let list = v.as_array().ok_or_else(|| parse_error(path, "expected an array"))?;
    list.iter()
        .enumerate()
        .map(|(i, row)| {
            let row_path = format!("{path}[{i}]");
            match row.as_array() {
                Some(items) if items.len() == width => Ok(items.as_slice()),
                _ => Err(parse_error(&row_path, format!("expected an array of {width} numbers, found {row}"))),
            }
        })
        .collect()
}

/// Parses `{"coeffs": [[k, re, im], ...]}`; repeated indices are summed.
pub fn parse_spectral_function(text: &str, source: &str) -> Result<SpectralFunction<f64>> {
    let doc = document(text, source)?;
    let coeffs = field(&doc, "coeffs", source)?;
    let path = format!("{source}: coeffs");
    let mut pairs = Vec::new();
    for (i, row) in rows(coeffs, &path, 3)?.into_iter().enumerate() {
        let at = |j: usize| format!("{path}[{i}][{j}]");
        pairs.push((index(&row[0], &at(0))?, Complex::new(real(&row[1], &at(1))?, real(&row[2], &at(2))?)));
    }
    Ok(SpectralFunction::from_coefficients(pairs))
}

/// Parses a space description; `p` and `mu` override lists are optional.
pub fn parse_space(text: &str, source: &str) -> Result<ExponentWeightPair<f64>> {
    let doc = document(text, source)?;
    let get = |key: &str| -> Result<f64> { real(field(&doc, key, source)?, &format!("{source}: {key}")) };
    let mut space = ExponentWeightPair::new(get("default_p")?, get("default_mu")?, get("bound_K")?)
        .map_err(|e| parse_error(source, e.to_string()))?;
    for key in ["p", "mu"] {
        let Some(list) = doc.get(key) else { continue };
        let path = format!("{source}: {key}");
        for (i, row) in rows(list, &path, 2)?.into_iter().enumerate() {
            let k = index(&row[0], &format!("{path}[{i}][0]"))?;
            let vpath = format!("{path}[{i}][1]");
            let v = real(&row[1], &vpath)?;
            space = if key == "p" { space.with_exponent(k, v) } else { space.with_weight(k, v) }
                .map_err(|e| parse_error(&vpath, e.to_string()))?;
        }
    }
    Ok(space)
}

/// Parses `[[re, im], ...]`.
pub fn parse_samples(text: &str, source: &str) -> Result<Vec<Complex<f64>>> {
    let doc = document(text, source)?;
    let path = format!("{source}: samples");
    rows(&doc, &path, 2)?
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            Ok(Complex::new(real(&row[0], &format!("{path}[{i}][0]"))?, real(&row[1], &format!("{path}[{i}][1]"))?))
        })
        .collect()
}

/// `{"coeffs": [[k, re, im], ...]}` in increasing `k`.
pub fn spectral_function_to_json(f: &SpectralFunction<f64>) -> String {
    let coeffs: Vec<Value> = f.iter().map(|(k, c)| json!([k, c.re, c.im])).collect();
    json!({ "coeffs": coeffs }).to_string()
}

/// `{"default_p", "default_mu", "p", "mu", "bound_K"}`.
pub fn space_to_json(space: &ExponentWeightPair<f64>) -> String {
    let p: Vec<Value> = space.exponent_overrides().map(|(k, v)| json!([k, v])).collect();
    let mu: Vec<Value> = space.weight_overrides().map(|(k, v)| json!([k, v])).collect();
    json!({
        "default_p": space.default_exponent(),
        "default_mu": space.default_weight(),
        "p": p,
        "mu": mu,
        "bound_K": space.bound(),
    })
    .to_string()
}

/// `{"degree": d, "coeffs": [[l, v], ...]}` for `-d <= l <= d`.
pub fn kernel_to_json(kernel: &Kernel<f64>) -> String {
    let coeffs: Vec<Value> = kernel.coefficients().map(|(l, v)| json!([l, v])).collect();
    json!({ "degree": kernel.degree(), "coeffs": coeffs }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::jackson_kernel;

    #[test]
    fn spectral_round_trip() {
        let f = SpectralFunction::from_coefficients([(-3, Complex::new(0.5, 2.0)), (7, Complex::new(-1.0, 0.0))]);
        let text = spectral_function_to_json(&f);
        assert_eq!(parse_spectral_function(&text, "f.json").unwrap(), f);
        let dup = parse_spectral_function(r#"{"coeffs": [[1, 1, 0], [1, 2, 0]]}"#, "x").unwrap();
        assert_eq!(dup.coefficient(1), Complex::new(3.0, 0.0));
    }

    #[test]
    fn space_round_trip() {
        let s = ExponentWeightPair::new(2.0, 1.0, 4.0).unwrap().with_exponent(3, 4.0).unwrap().with_weight(-1, 0.0).unwrap();
        let back = parse_space(&space_to_json(&s), "s.json").unwrap();
        assert_eq!(back, s);
        let minimal = parse_space(r#"{"default_p": 3, "default_mu": 1, "bound_K": 3}"#, "m").unwrap();
        assert_eq!(minimal.exponent(10), 3.0);
    }

    #[test]
    fn errors_carry_location() {
        match parse_spectral_function("{\n  \"coeffs\": [[1, 2]\n", "bad.json") {
            Err(Error::Parse { context, .. }) => assert!(context.starts_with("bad.json:"), "{context}"),
            other => panic!("{other:?}"),
        }
        match parse_spectral_function(r#"{"coeffs": [[1, 2, 0], [1.5, 2, 0]]}"#, "f") {
            Err(Error::Parse { context, .. }) => assert_eq!(context, "f: coeffs[1][0]"),
            other => panic!("{other:?}"),
        }
        match parse_space(r#"{"default_p": 2, "default_mu": 1, "bound_K": 3, "p": [[0, 5]]}"#, "s") {
            Err(Error::Parse { context, .. }) => assert_eq!(context, "s: p[0][1]"),
            other => panic!("{other:?}"),
        }
        match parse_space(r#"{"default_p": 2, "bound_K": 3}"#, "s") {
            Err(Error::Parse { context, .. }) => assert_eq!(context, "s: default_mu"),
            other => panic!("{other:?}"),
        }
        assert!(parse_samples("[[1, 0], [2]]", "x").is_err());
        assert_eq!(parse_samples("[[1, 0], [2, -1]]", "x").unwrap()[1], Complex::new(2.0, -1.0));
    }

    #[test]
    fn kernel_export() {
        let k = jackson_kernel::<f64>(2, 1).unwrap();
        let v: Value = serde_json::from_str(&kernel_to_json(&k)).unwrap();
        assert_eq!(v["degree"], 1);
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
        assert_eq!(v["coeffs"][0][0], -1);
    }
}
