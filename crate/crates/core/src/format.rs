//! Distance-matrix and correspondence file formats.
//!
//! JSON: `{"labels": [...], "dist": [[...], ...]}` with entries as integers or
//! `"p/q"` strings. CSV: a header row of labels followed by one row per point,
//! optionally led by the point's label. Both go through full metric
//! validation, so asymmetric input is rejected with a witness.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::relation::Correspondence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

impl MatrixFormat {
    /// `.csv` selects CSV; anything else is read as JSON.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => MatrixFormat::Csv,
            _ => MatrixFormat::Json,
        }
    }
}

pub fn parse_space(text: &str, format: MatrixFormat) -> Result<FiniteMetricSpace> {
    match format {
        MatrixFormat::Json => parse_json(text),
        MatrixFormat::Csv => parse_csv(text),
    }
}

fn entry(value: &Value, i: usize, j: usize) -> Result<Rational> {
    match value {
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Malformed(format!(
            "entry ({i},{j}) must be an integer or a \"p/q\" string, got {other}"
        ))),
    }
}

pub fn parse_json(text: &str) -> Result<FiniteMetricSpace> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
    let labels = doc
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing \"labels\" array".into()))?
        .iter()
        .map(|l| match l {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(Error::Malformed(format!("label must be a string, got {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = doc
        .get("dist")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing \"dist\" matrix".into()))?;
    let matrix = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| Error::Malformed(format!("row {i} of \"dist\" is not an array")))?
                .iter()
                .enumerate()
                .map(|(j, v)| entry(v, i, j))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteMetricSpace::new(labels, matrix)
}

pub fn parse_csv(text: &str) -> Result<FiniteMetricSpace> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = records
        .next()
        .ok_or_else(|| Error::Malformed("CSV input is empty".into()))?
        .map_err(|e| Error::Malformed(format!("invalid CSV: {e}")))?;
    let mut labels: Vec<String> = header.iter().map(str::to_string).collect();
    // A blank leading header cell marks a label column.
    let label_column = labels.first().is_some_and(|l| l.is_empty());
    if label_column {
        labels.remove(0);
    }
    let n = labels.len();
    let mut matrix = Vec::with_capacity(n);
    for (i, record) in records.enumerate() {
        let record = record.map_err(|e| Error::Malformed(format!("invalid CSV: {e}")))?;
        let mut fields: Vec<&str> = record.iter().collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if label_column || fields.len() == n + 1 {
            let row_label = fields.remove(0);
            if labels.get(i).is_some_and(|l| l != row_label) {
                return Err(Error::Malformed(format!(
                    "row {i} is labelled `{row_label}` but the header says `{}`",
                    labels[i]
                )));
            }
        }
        matrix.push(fields.into_iter().map(parse_rational).collect::<Result<Vec<_>>>()?);
    }
    FiniteMetricSpace::new(labels, matrix)
}

pub fn to_json_value(space: &FiniteMetricSpace) -> Value {
    let dist: Vec<Vec<String>> = space.matrix().iter().map(|row| row.iter().map(format_rational).collect()).collect();
    json!({ "labels": space.labels(), "dist": dist })
}

pub fn to_json(space: &FiniteMetricSpace) -> String {
    serde_json::to_string_pretty(&to_json_value(space)).expect("JSON values always serialize")
}

pub fn to_csv(space: &FiniteMetricSpace) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(space.labels().iter().cloned());
    writer.write_record(&header).expect("writing to memory");
    for i in 0..space.len() {
        let mut row = vec![space.label(i).to_string()];
        row.extend(space.row(i).iter().map(format_rational));
        writer.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("CSV output is UTF-8")
}

/// `[[x_label, y_label], ...]`.
pub fn correspondence_to_json(r: &Correspondence, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Value {
    Value::Array(r.iter().map(|(a, b)| json!([x.label(a), y.label(b)])).collect())
}

pub fn parse_correspondence(text: &str, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<Correspondence> {
    let pairs: Vec<(String, String)> =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid correspondence JSON: {e}")))?;
    let lookup = |space: &FiniteMetricSpace, l: &str| {
        space.index_of(l).ok_or_else(|| Error::Domain(format!("unknown label `{l}`")))
    };
    let indexed = pairs
        .iter()
        .map(|(a, b)| Ok((lookup(x, a)?, lookup(y, b)?)))
        .collect::<Result<Vec<_>>>()?;
    Correspondence::from_pairs(indexed, x.len(), y.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{random_metric_space, Axiom};
    use crate::rational::{int, ratio};

    #[test]
    fn reads_json_with_mixed_entries() {
        let text = r#"{"labels": ["a", "b", "c"], "dist": [[0, "1/3", 1], ["1/3", 0, "2/3"], [1, "2/3", 0]]}"#;
        let space = parse_json(text).unwrap();
        assert_eq!(space.len(), 3);
        assert_eq!(space.dist(0, 1), &ratio(1, 3));
        assert_eq!(space.label(2), "c");
    }

    #[test]
    fn asymmetric_json_is_a_symmetry_violation() {
        let text = r#"{"labels": ["a", "b"], "dist": [[0, 1], [2, 0]]}"#;
        match parse_json(text) {
            Err(Error::Validation(report)) => {
                assert_eq!(report.violations[0].axiom, Axiom::Symmetry);
                assert_eq!(report.violations[0].witness, vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_floats_and_missing_fields() {
        assert!(matches!(parse_json(r#"{"labels": ["a"], "dist": [[0.0]]}"#), Err(Error::Malformed(_))));
        assert!(matches!(parse_json(r#"{"dist": [[0]]}"#), Err(Error::Malformed(_))));
        assert!(matches!(parse_json("not json"), Err(Error::Malformed(_))));
    }

    #[test]
    fn reads_csv_with_and_without_label_column() {
        let plain = "a,b\n0,1/3\n1/3,0\n";
        let space = parse_csv(plain).unwrap();
        assert_eq!(space.dist(1, 0), &ratio(1, 3));

        let labelled = ",a,b\na,0,1/3\nb,1/3,0\n";
        assert_eq!(parse_csv(labelled).unwrap(), space);

        let wrong = ",a,b\nb,0,1\na,1,0\n";
        assert!(matches!(parse_csv(wrong), Err(Error::Malformed(_))));
        assert!(matches!(parse_csv("a,b\n0,1\n2,0\n"), Err(Error::Validation(_))));
    }

    #[test]
    fn written_files_read_back() {
        let space = random_metric_space(5, 11).unwrap();
        assert_eq!(parse_json(&to_json(&space)).unwrap(), space);
        assert_eq!(parse_csv(&to_csv(&space)).unwrap(), space);
        assert_eq!(space.dist(0, 0), &int(0));
    }

    #[test]
    fn correspondence_json() {
        let x = random_metric_space(2, 1).unwrap();
        let y = random_metric_space(3, 2).unwrap();
        let r = Correspondence::from_pairs([(0, 0), (1, 1), (1, 2)], 2, 3).unwrap();
        let text = correspondence_to_json(&r, &x, &y).to_string();
        assert_eq!(text, r#"[["p0","p0"],["p1","p1"],["p1","p2"]]"#);
        assert_eq!(parse_correspondence(&text, &x, &y).unwrap(), r);
        assert!(parse_correspondence(r#"[["p0","p0"]]"#, &x, &y).is_err());
    }
}
