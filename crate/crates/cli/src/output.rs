use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    #[default]
    Pretty,
}

/// An integer that serializes as a JSON number when it fits in `i64` and as
/// a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Small(i64),
            Big(String),
        }
        match Raw::deserialize(d)? {
            Raw::Small(x) => Ok(Int(BigInt::from(x))),
            Raw::Big(s) => s.parse().map(Int).map_err(serde::de::Error::custom),
        }
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

pub fn json_ints(v: &[BigInt]) -> Value {
    serde_json::to_value(ints(v)).expect("integers serialize")
}

pub fn tsv_vec(v: &[BigInt]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn pretty_vec(v: &[BigInt]) -> String {
    format!(
        "({})",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

/// A titled table. Cells are stored in TSV form; pretty output swaps the
/// comma-joined vectors for parenthesized ones.
#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Vector(Vec<BigInt>),
}

impl Cell {
    fn tsv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Vector(v) => tsv_vec(v),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Vector(v) => pretty_vec(v),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<Vec<BigInt>> for Cell {
    fn from(v: Vec<BigInt>) -> Self {
        Cell::Vector(v)
    }
}

impl Table {
    pub fn new(title: &str, header: &[&str]) -> Self {
        Table {
            title: title.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }
}

/// What a command produced: a JSON document and the same data as tables.
pub struct Output {
    pub json: Value,
    pub tables: Vec<Table>,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json serializes");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        s.push('\n');
                    }
                    if self.tables.len() > 1 {
                        writeln!(s, "# {}", t.title).unwrap();
                    }
                    writeln!(s, "{}", t.header.join("\t")).unwrap();
                    for r in &t.rows {
                        writeln!(
                            s,
                            "{}",
                            r.iter().map(Cell::tsv).collect::<Vec<_>>().join("\t")
                        )
                        .unwrap();
                    }
                }
                s
            }
            Format::Pretty => {
                let mut s = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        s.push('\n');
                    }
                    writeln!(s, "{}", t.title).unwrap();
                    let cells: Vec<Vec<String>> = t
                        .rows
                        .iter()
                        .map(|r| r.iter().map(Cell::pretty).collect())
                        .collect();
                    let mut width: Vec<usize> =
                        t.header.iter().map(|h| h.chars().count()).collect();
                    for r in &cells {
                        for (w, c) in width.iter_mut().zip(r) {
                            *w = (*w).max(c.chars().count());
                        }
                    }
                    let line = |r: &[String]| {
                        let padded: Vec<String> = r
                            .iter()
                            .zip(&width)
                            .map(|(c, w)| format!("{c:<w$}"))
                            .collect();
                        padded.join("  ").trim_end().to_string()
                    };
                    writeln!(s, "  {}", line(&t.header)).unwrap();
                    for r in &cells {
                        writeln!(s, "  {}", line(r)).unwrap();
                    }
                }
                s
            }
        }
    }
}
