use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};
use serde_json::value::RawValue;

use orlicz_approx::harness::{Verdict, SCHEMA_VERSION};

/// A scalar in a report.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format!("{v:.16e}"),
            Cell::Text(v) => v.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Real(v) => {
                let text = if v.is_finite() { format!("{v:.16e}") } else { "null".into() };
                RawValue::from_string(text).expect("valid number").serialize(s)
            }
            Cell::Text(v) => s.serialize_str(v),
        }
    }
}

/// Named columns with rows of cells.
#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [&'static str], &'a [Cell]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0.iter().zip(self.1) {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(&Row(&self.columns, row))?;
        }
        seq.end()
    }
}

/// An ordered JSON object.
#[derive(Clone, Debug, Default)]
pub struct Document(Vec<(String, Node)>);

#[derive(Clone, Debug)]
pub enum Node {
    Cell(Cell),
    Table(Table),
    Verdicts(Vec<Verdict>),
    Object(Document),
}

impl Document {
    pub fn report(command: &str) -> Self {
        Document::default()
            .with("schema_version", Node::Cell(Cell::Int(SCHEMA_VERSION as i64)))
            .with("command", Node::Cell(Cell::Text(command.into())))
    }

    pub fn with(mut self, key: &str, node: Node) -> Self {
        self.0.push((key.to_owned(), node));
        self
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}

impl Serialize for Document {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                Node::Cell(c) => map.serialize_entry(k, c)?,
                Node::Table(t) => map.serialize_entry(k, t)?,
                Node::Verdicts(v) => map.serialize_entry(k, v)?,
                Node::Object(d) => map.serialize_entry(k, d)?,
            }
        }
        map.end()
    }
}
