use std::collections::BTreeMap;

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::value::RawValue;

/// A parameter recorded alongside a verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Int(i64),
    Real(f64),
    Text(String),
    Flag(bool),
}

macro_rules! int_param {
    ($($t:ty),*) => {$(
        impl From<$t> for Param {
            fn from(v: $t) -> Self {
                Param::Int(v as i64)
            }
        }
    )*};
}
int_param!(i32, i64, u32, u64, usize);

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_owned())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

impl From<bool> for Param {
    fn from(v: bool) -> Self {
        Param::Flag(v)
    }
}

/// Outcome of one inequality check: passes iff `lhs <= rhs + margin`.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub passed: bool,
    pub parameters: BTreeMap<String, Param>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, margin: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            passed: lhs <= rhs + margin,
            parameters: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Excess `lhs - rhs - margin`; positive means failure.
    pub fn excess(&self) -> f64 {
        let e = self.lhs - self.rhs - self.margin;
        if e.is_nan() {
            f64::INFINITY
        } else {
            e
        }
    }

    /// Collapses a sweep into its worst instance, renamed, with the number of
    /// instances and failures recorded.
    pub fn worst<I: IntoIterator<Item = Verdict>>(name: impl Into<String>, verdicts: I) -> Option<Verdict> {
        let mut count = 0usize;
        let mut failures = 0usize;
        let mut worst: Option<Verdict> = None;
        for v in verdicts {
            count += 1;
            failures += usize::from(!v.passed);
            if worst.as_ref().is_none_or(|w| v.excess() > w.excess()) {
                worst = Some(v);
            }
        }
        worst.map(|mut w| {
            w.name = name.into();
            w.with("instances", count).with("failures", failures)
        })
    }
}

/// JSON number with 17 significant digits; non-finite values become `null`.
pub(crate) fn number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".to_owned() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Int(v) => s.serialize_i64(*v),
            Param::Real(v) => number(*v).serialize(s),
            Param::Text(v) => s.serialize_str(v),
            Param::Flag(v) => s.serialize_bool(*v),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(6))?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("lhs", &number(self.lhs))?;
        map.serialize_entry("rhs", &number(self.rhs))?;
        map.serialize_entry("margin", &number(self.margin))?;
        map.serialize_entry("passed", &self.passed)?;
        map.serialize_entry("parameters", &self.parameters)?;
        map.end()
    }
}

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Self-describing JSON report of a verdict list.
pub fn verdicts_to_json(verdicts: &[Verdict], seed: u64) -> String {
    #[derive(serde::Serialize)]
    struct Summary {
        total: usize,
        passed: usize,
        failed: usize,
    }
    #[derive(serde::Serialize)]
    struct Report<'a> {
        schema_version: u32,
        seed: u64,
        summary: Summary,
        verdicts: &'a [Verdict],
    }
    let passed = verdicts.iter().filter(|v| v.passed).count();
    let report = Report {
        schema_version: SCHEMA_VERSION,
        seed,
        summary: Summary { total: verdicts.len(), passed, failed: verdicts.len() - passed },
        verdicts,
    };
    serde_json::to_string_pretty(&report).expect("report serializes")
}

/// CSV summary `name,lhs,rhs,margin,passed`.
pub fn verdicts_to_csv(verdicts: &[Verdict]) -> String {
    let mut out = String::from("name,lhs,rhs,margin,passed\n");
    for v in verdicts {
        out.push_str(&format!(
            "{},{:.16e},{:.16e},{:.16e},{}\n",
            v.name, v.lhs, v.rhs, v.margin, v.passed
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule_and_worst() {
        assert!(Verdict::new("a", 1.0, 1.0, 0.0).passed);
        assert!(!Verdict::new("a", 1.0 + 1e-9, 1.0, 0.0).passed);
        assert!(!Verdict::new("a", f64::NAN, 1.0, 0.0).passed);
        let w = Verdict::worst(
            "sweep",
            vec![Verdict::new("x", 0.1, 1.0, 0.0), Verdict::new("y", 0.9, 1.0, 0.0)],
        )
        .unwrap();
        assert_eq!(w.lhs, 0.9);
        assert_eq!(w.parameters["instances"], Param::Int(2));
        assert!(Verdict::worst("none", Vec::new()).is_none());
    }

    #[test]
    fn json_uses_seventeen_digits() {
        let v = Verdict::new("t", 0.1, f64::INFINITY, 0.0).with("alpha", 0.5).with("n", 3u64);
        let text = verdicts_to_json(&[v], 7);
        assert!(text.contains("1.0000000000000001e-1"));
        assert!(text.contains("\"rhs\": null"));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["schema_version"], 1);
        assert_eq!(parsed["verdicts"][0]["lhs"].as_f64(), Some(0.1));
        assert!(verdicts_to_csv(&[Verdict::new("t", 1.0, 2.0, 0.0)]).ends_with(",true\n"));
    }
}
