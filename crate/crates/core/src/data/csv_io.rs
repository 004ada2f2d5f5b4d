use std::collections::HashMap;
use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use ndarray::Array2;

use super::Dataset;
use crate::error::{Error, Result};

/// Which CSV column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Index(usize),
    Name(String),
    Last,
}

impl FromStr for LabelColumn {
    type Err = std::convert::Infallible;

    /// `last`, a zero-based index, or anything else as a header name.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(if s.eq_ignore_ascii_case("last") {
            LabelColumn::Last
        } else if let Ok(i) = s.parse::<usize>() {
            LabelColumn::Index(i)
        } else {
            LabelColumn::Name(s.to_string())
        })
    }
}

/// Load a comma-separated file. Labels are re-encoded to `0..C` in order of
/// first appearance; the remaining columns keep their order.
pub fn load_csv(path: impl AsRef<Path>, label_column: &LabelColumn, header: bool) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers: Option<Vec<String>> = if header {
        let h = reader.headers().map_err(|e| csv_error(e, 1))?;
        Some(h.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| csv_error(e, 0))?;
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        records.push(rec);
    }
    let width = match (&headers, records.first()) {
        (Some(h), _) => h.len(),
        (None, Some(r)) => r.len(),
        (None, None) => return Err(Error::InvalidData("file contains no data rows".into())),
    };

    let label_idx = match label_column {
        LabelColumn::Last => width.checked_sub(1),
        LabelColumn::Index(i) => (*i < width).then_some(*i),
        LabelColumn::Name(name) => headers
            .as_ref()
            .and_then(|h| h.iter().position(|c| c == name)),
    }
    .ok_or_else(|| Error::MissingColumn(describe(label_column)))?;

    if width < 2 {
        return Err(Error::InvalidData("need a label column and at least one feature".into()));
    }
    let d = width - 1;
    let mut values = Vec::with_capacity(records.len() * d);
    let mut labels = Vec::with_capacity(records.len());
    let mut class_index: HashMap<String, usize> = HashMap::new();
    let mut class_names = Vec::new();

    for rec in &records {
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != width {
            return Err(Error::Parse {
                line,
                column: rec.len().min(width),
                message: format!("expected {width} fields, found {}", rec.len()),
            });
        }
        for (col, cell) in rec.iter().enumerate() {
            if col == label_idx {
                let next = class_index.len();
                let id = *class_index.entry(cell.to_string()).or_insert_with(|| {
                    class_names.push(cell.to_string());
                    next
                });
                labels.push(id);
            } else {
                let v: f64 = cell.parse().map_err(|_| Error::Parse {
                    line,
                    column: col,
                    message: format!("cannot parse {cell:?} as a number"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line,
                        column: col,
                        message: format!("non-finite value {cell:?}"),
                    });
                }
                values.push(v);
            }
        }
    }

    if class_names.len() < 2 {
        return Err(Error::InvalidData(format!(
            "need at least 2 classes, found {}",
            class_names.len()
        )));
    }
    let n = labels.len();
    let features = Array2::from_shape_vec((n, d), values)
        .map_err(|e| Error::InvalidData(e.to_string()))?;
    let n_classes = class_names.len();
    let mut ds = Dataset::new(features, labels, n_classes)?.with_class_names(class_names)?;
    if let Some(h) = headers {
        let names = h
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| i != label_idx)
            .map(|(_, n)| n)
            .collect();
        ds = ds.with_feature_names(names)?;
    }
    Ok(ds)
}

/// Write features followed by a trailing `class` column. Class names are
/// used when known, otherwise the integer labels.
pub fn write_csv(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = String::new();
    let names: Vec<String> = match data.feature_names() {
        Some(n) => n.to_vec(),
        None => (0..data.ncols()).map(|j| format!("f{j}")).collect(),
    };
    out.push_str(&names.join(","));
    out.push_str(",class\n");
    for (row, &label) in data.features().rows().into_iter().zip(data.labels()) {
        for v in row {
            // `{}` on f64 prints the shortest round-tripping representation.
            out.push_str(&format!("{v},"));
        }
        match data.class_names() {
            Some(c) => out.push_str(&c[label]),
            None => out.push_str(&label.to_string()),
        }
        out.push('\n');
    }
    let mut f = File::create(path).map_err(io_err)?;
    f.write_all(out.as_bytes()).map_err(io_err)
}

fn describe(c: &LabelColumn) -> String {
    match c {
        LabelColumn::Index(i) => i.to_string(),
        LabelColumn::Name(n) => n.clone(),
        LabelColumn::Last => "last".into(),
    }
}

fn csv_error(e: csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map_or(fallback_line, |p| p.line());
    Error::Parse {
        line,
        column: 0,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn first_appearance_encoding() {
        let f = tmp("x,y,label\n1,2,A\n3,4,B\n5,6,A\n");
        let ds = load_csv(f.path(), &LabelColumn::Last, true).unwrap();
        assert_eq!(ds.labels(), &[0, 1, 0]);
        assert_eq!(ds.n_classes(), 2);
        assert_eq!(ds.class_names().unwrap(), &["A".to_string(), "B".to_string()]);
        assert_eq!(ds.feature_names().unwrap(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn label_by_name_and_index_without_header() {
        let f = tmp("c,x\nb,1.5\na,2.5\n");
        let ds = load_csv(f.path(), &LabelColumn::Name("c".into()), true).unwrap();
        assert_eq!(ds.features()[[1, 0]], 2.5);
        assert_eq!(ds.labels(), &[0, 1]);

        let f = tmp("b,1.5\na,2.5\n");
        let ds = load_csv(f.path(), &LabelColumn::Index(0), false).unwrap();
        assert_eq!(ds.nrows(), 2);
    }

    #[test]
    fn non_numeric_cell_names_line_and_column() {
        let f = tmp("x,y,label\n1,2,A\n3,oops,B\n");
        match load_csv(f.path(), &LabelColumn::Last, true).unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_label_column_and_single_class() {
        let f = tmp("x,y\n1,A\n2,B\n");
        assert!(matches!(
            load_csv(f.path(), &LabelColumn::Name("nope".into()), true),
            Err(Error::MissingColumn(_))
        ));
        let f = tmp("x,y\n1,A\n2,A\n");
        assert!(matches!(
            load_csv(f.path(), &LabelColumn::Last, true),
            Err(Error::InvalidData(_))
        ));
    }

    #[test]
    fn label_column_parsing() {
        assert_eq!("last".parse::<LabelColumn>().unwrap(), LabelColumn::Last);
        assert_eq!("3".parse::<LabelColumn>().unwrap(), LabelColumn::Index(3));
        assert_eq!(
            "class".parse::<LabelColumn>().unwrap(),
            LabelColumn::Name("class".into())
        );
    }
}
