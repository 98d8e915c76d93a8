//! Deterministic CSV and JSON tables of exact symbol values.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use polarcg::basis::{validate_triple, CGKey};
use polarcg::coupling::{oracle_value, threej_value};
use polarcg::exact::{j_values, HalfInt, RadicalSum};
use polarcg::recoupling::sixj_value;
use polarcg::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Cg,
    ThreeJ,
    SixJ,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Cg => "cg",
            TableKind::ThreeJ => "threej",
            TableKind::SixJ => "sixj",
        }
    }

    pub fn label_columns(self) -> Vec<&'static str> {
        match self {
            TableKind::Cg | TableKind::ThreeJ => vec!["j1x2", "j2x2", "j3x2", "m1x2", "m2x2", "m3x2"],
            TableKind::SixJ => vec!["j1x2", "j2x2", "j3x2", "j4x2", "j5x2", "j6x2"],
        }
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cg" => Ok(TableKind::Cg),
            "threej" | "3j" => Ok(TableKind::ThreeJ),
            "sixj" | "6j" => Ok(TableKind::SixJ),
            other => Err(Error::Parse(format!("unknown table `{other}` (cg, threej, sixj)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parse(format!("unknown format `{other}` (text, csv, json)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub labels: Vec<i64>,
    pub value: String,
    pub value_squared: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

#[derive(Serialize)]
struct TableDoc<'a> {
    table: &'static str,
    max_2j: i64,
    label_columns: Vec<&'static str>,
    rows: &'a [TableRow],
}

/// Doubled label tuples of every entry, in lexicographic order.
pub fn table_labels(kind: TableKind, max_2j: i64) -> Vec<Vec<i64>> {
    let mut labels: Vec<Vec<i64>> = match kind {
        TableKind::Cg | TableKind::ThreeJ => CGKey::enumerate(max_2j)
            .into_iter()
            .map(|k| {
                let t = k.twice();
                let m3 = if kind == TableKind::ThreeJ { -t[5] } else { t[5] };
                vec![t[0], t[1], t[2], t[3], t[4], m3]
            })
            .collect(),
        TableKind::SixJ => {
            let js: Vec<HalfInt> = j_values(max_2j).collect();
            let mut out = Vec::new();
            for &a in &js {
                for &b in &js {
                    for &c in &js {
                        if !validate_triple(a, b, c) {
                            continue;
                        }
                        for &d in &js {
                            for &e in &js {
                                if !validate_triple(d, e, c) {
                                    continue;
                                }
                                for &f in &js {
                                    if validate_triple(a, e, f) && validate_triple(d, b, f) {
                                        out.push([a, b, c, d, e, f].iter().map(|x| x.twice()).collect());
                                    }
                                }
                            }
                        }
                    }
                }
            }
            out
        }
    };
    labels.sort();
    labels
}

fn value_at(kind: TableKind, t: &[i64]) -> Result<RadicalSum> {
    let h: Vec<HalfInt> = t.iter().map(|&x| HalfInt::from_twice(x)).collect();
    match kind {
        TableKind::Cg => Ok(oracle_value(&CGKey::new(h[0], h[1], h[2], h[3], h[4])?)),
        TableKind::ThreeJ => threej_value(h[0], h[1], h[2], h[3], h[4], h[5]),
        TableKind::SixJ => sixj_value(h[0], h[1], h[2], h[3], h[4], h[5]),
    }
}

/// Every row of the table, computed in parallel and returned in label
/// order.
pub fn table_rows(kind: TableKind, max_2j: i64, decimal: Option<u32>) -> Result<Vec<TableRow>> {
    table_labels(kind, max_2j)
        .into_par_iter()
        .map(|labels| {
            let v = value_at(kind, &labels)?;
            let sq = v
                .square()
                .as_rational()
                .ok_or_else(|| Error::Consistency(format!("{v} squared is not rational")))?;
            Ok(TableRow {
                decimal: decimal.map(|d| v.to_decimal(d)),
                value: v.to_string(),
                value_squared: sq.to_string(),
                labels,
            })
        })
        .collect()
}

pub fn render_csv(kind: TableKind, rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let with_decimal = rows.first().is_some_and(|r| r.decimal.is_some());
    let mut header: Vec<&str> = kind.label_columns();
    header.extend(["value", "value_squared"]);
    if with_decimal {
        header.push("decimal");
    }
    w.write_record(&header).expect("write to memory");
    for r in rows {
        let mut rec: Vec<String> = r.labels.iter().map(|x| x.to_string()).collect();
        rec.push(r.value.clone());
        rec.push(r.value_squared.clone());
        if let Some(d) = &r.decimal {
            rec.push(d.clone());
        }
        w.write_record(&rec).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn render_json(kind: TableKind, max_2j: i64, rows: &[TableRow]) -> String {
    let doc = TableDoc {
        table: kind.name(),
        max_2j,
        label_columns: kind.label_columns(),
        rows,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
    s.push('\n');
    s
}

/// The full document for `kind` up to `max_2j` in the chosen format; text
/// output is CSV.
pub fn emit_table(kind: TableKind, max_2j: i64, format: OutputFormat, decimal: Option<u32>) -> Result<String> {
    if max_2j < 0 {
        return Err(Error::Domain(format!("max 2j must be nonnegative, got {max_2j}")));
    }
    let rows = table_rows(kind, max_2j, decimal)?;
    Ok(match format {
        OutputFormat::Json => render_json(kind, max_2j, &rows),
        OutputFormat::Csv | OutputFormat::Text => render_csv(kind, &rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let rows = table_rows(TableKind::Cg, 0, None).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].value, "1");
        let six = table_rows(TableKind::SixJ, 0, None).unwrap();
        assert_eq!(six.len(), 1);
        assert_eq!(six[0].value, "1");
    }

    #[test]
    fn row_count_matches_keys() {
        let rows = table_rows(TableKind::Cg, 2, None).unwrap();
        assert_eq!(rows.len(), CGKey::enumerate(2).len());
        let mut sorted = rows.clone();
        sorted.sort_by(|a, b| a.labels.cmp(&b.labels));
        assert_eq!(rows, sorted);
    }

    #[test]
    fn csv_and_json_share_values() {
        let rows = table_rows(TableKind::ThreeJ, 2, Some(6)).unwrap();
        let csv = render_csv(TableKind::ThreeJ, &rows);
        let json: serde_json::Value = serde_json::from_str(&render_json(TableKind::ThreeJ, 2, &rows)).unwrap();
        let from_json: Vec<String> = json["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["value"].as_str().unwrap().to_string())
            .collect();
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        let from_csv: Vec<String> = rdr.records().map(|r| r.unwrap()[6].to_string()).collect();
        assert_eq!(from_csv, from_json);
    }

    #[test]
    fn values_round_trip_through_text() {
        for r in table_rows(TableKind::SixJ, 2, None).unwrap() {
            let parsed: RadicalSum = r.value.parse().unwrap();
            assert_eq!(parsed.to_string(), r.value);
        }
    }
}
