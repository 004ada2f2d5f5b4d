use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Feature source evaluated by cross-validation. The declaration order is
/// the column order of rendered tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethod {
    /// Leading original (normalized) feature columns.
    Raw,
    Pca,
    Lda,
    Mifx,
}

impl EvalMethod {
    pub const ALL: [EvalMethod; 4] = [EvalMethod::Raw, EvalMethod::Pca, EvalMethod::Lda, EvalMethod::Mifx];

    pub fn as_str(self) -> &'static str {
        match self {
            EvalMethod::Raw => "raw",
            EvalMethod::Pca => "pca",
            EvalMethod::Lda => "lda",
            EvalMethod::Mifx => "mifx",
        }
    }

    fn title(self) -> &'static str {
        match self {
            EvalMethod::Raw => "Raw",
            EvalMethod::Pca => "PCA",
            EvalMethod::Lda => "LDA",
            EvalMethod::Mifx => "MIFX",
        }
    }
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "raw" => Ok(EvalMethod::Raw),
            "pca" => Ok(EvalMethod::Pca),
            "lda" => Ok(EvalMethod::Lda),
            "mifx" => Ok(EvalMethod::Mifx),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// Cross-validated accuracy of one method at several output dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub dataset_name: String,
    pub method: EvalMethod,
    pub classifier: String,
    /// Dimensions that were evaluated, ascending.
    pub dims_evaluated: Vec<usize>,
    /// Requested dimensions the method cannot produce (LDA beyond `C - 1`).
    pub dims_absent: Vec<usize>,
    pub folds: usize,
    /// `fold_accuracies[i][f]`: accuracy in percent at `dims_evaluated[i]`
    /// on test fold `f`.
    pub fold_accuracies: Vec<Vec<f64>>,
    pub mean_accuracy: Vec<f64>,
    pub seed: u64,
    pub config_digest: String,
    pub config: serde_json::Value,
}

impl EvaluationReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn mean_at(&self, dim: usize) -> Option<f64> {
        self.dims_evaluated
            .iter()
            .position(|&d| d == dim)
            .map(|i| self.mean_accuracy[i])
    }

    /// Check internal invariants: accuracy range, fold count and that each
    /// mean is the mean of its folds.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidData(m));
        if self.fold_accuracies.len() != self.dims_evaluated.len()
            || self.mean_accuracy.len() != self.dims_evaluated.len()
        {
            return bad("accuracy rows do not match evaluated dims".into());
        }
        for (row, &mean) in self.fold_accuracies.iter().zip(&self.mean_accuracy) {
            if row.len() != self.folds {
                return bad(format!("expected {} folds, found {}", self.folds, row.len()));
            }
            if row.iter().any(|a| !(0.0..=100.0).contains(a)) {
                return bad("accuracy outside [0, 100]".into());
            }
            if (fold_mean(row) - mean).abs() > 1e-9 {
                return bad("mean accuracy differs from the mean of its folds".into());
            }
        }
        Ok(())
    }
}

pub(crate) fn fold_mean(row: &[f64]) -> f64 {
    row.iter().sum::<f64>() / row.len() as f64
}

/// Load one report or a JSON array of reports.
pub fn load_reports(path: impl AsRef<Path>) -> Result<Vec<EvaluationReport>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let reports = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    Ok(reports)
}

/// Hex SHA-256 of the compact JSON encoding of `config`.
pub fn config_digest<T: Serialize>(config: &T) -> Result<String> {
    let bytes = serde_json::to_vec(config)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Externally supplied reference columns, e.g. published accuracies.
/// Cells are kept verbatim.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReferenceTable {
    pub columns: Vec<String>,
    pub rows: Vec<(usize, Vec<String>)>,
}

impl ReferenceTable {
    /// Parse CSV with header `dim,<column>...` and one row per dim.
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| Error::Parse {
            line: 1,
            column: 0,
            message: e.to_string(),
        })?;
        if header.get(0).map(str::to_ascii_lowercase).as_deref() != Some("dim") {
            return Err(Error::Parse {
                line: 1,
                column: 0,
                message: "reference header must start with \"dim\"".into(),
            });
        }
        let columns: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line()),
                column: 0,
                message: e.to_string(),
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            let dim = rec[0].parse::<usize>().map_err(|_| Error::Parse {
                line,
                column: 0,
                message: format!("invalid dim {:?}", &rec[0]),
            })?;
            let mut cells: Vec<String> = rec.iter().skip(1).map(str::to_string).collect();
            cells.resize(columns.len(), "-".into());
            rows.push((dim, cells));
        }
        Ok(Self { columns, rows })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    fn cell(&self, dim: usize, col: usize) -> String {
        self.rows
            .iter()
            .find(|(d, _)| *d == dim)
            .map_or_else(|| "-".to_string(), |(_, c)| c[col].clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown table format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    dataset: &'a str,
    classifier: &'a str,
    columns: Vec<String>,
    rows: Vec<JsonRow>,
}

#[derive(Serialize)]
struct JsonRow {
    dim: usize,
    cells: Vec<String>,
}

/// Render reports as a dims-by-methods table with one decimal place and
/// `-` for dimensions a method did not produce.
pub fn render_table(
    reports: &[EvaluationReport],
    format: TableFormat,
    reference: Option<&ReferenceTable>,
) -> Result<String> {
    let first = reports
        .first()
        .ok_or_else(|| Error::InconsistentReports("no reports to render".into()))?;
    for r in reports {
        if r.dataset_name != first.dataset_name || r.classifier != first.classifier {
            return Err(Error::InconsistentReports(format!(
                "reports mix {}/{} with {}/{}",
                first.dataset_name, first.classifier, r.dataset_name, r.classifier
            )));
        }
    }
    let mut sorted: Vec<&EvaluationReport> = reports.iter().collect();
    sorted.sort_by_key(|r| r.method);
    if sorted.windows(2).any(|w| w[0].method == w[1].method) {
        return Err(Error::InconsistentReports("duplicate method".into()));
    }

    let dims: BTreeSet<usize> = sorted
        .iter()
        .flat_map(|r| r.dims_evaluated.iter().chain(&r.dims_absent).copied())
        .collect();
    let mut headers: Vec<String> = sorted.iter().map(|r| r.method.title().to_string()).collect();
    if let Some(rt) = reference {
        headers.extend(rt.columns.iter().cloned());
    }
    let rows: Vec<(usize, Vec<String>)> = dims
        .iter()
        .map(|&dim| {
            let mut cells: Vec<String> = sorted
                .iter()
                .map(|r| r.mean_at(dim).map_or_else(|| "-".to_string(), |m| format!("{m:.1}")))
                .collect();
            if let Some(rt) = reference {
                cells.extend((0..rt.columns.len()).map(|c| rt.cell(dim, c)));
            }
            (dim, cells)
        })
        .collect();

    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            out.push_str(&format!(
                "{} ({}), mean accuracy %\n\n",
                first.dataset_name, first.classifier
            ));
            out.push_str("| Dim. |");
            for h in &headers {
                out.push_str(&format!(" {h} |"));
            }
            out.push_str("\n|---:|");
            out.push_str(&"---:|".repeat(headers.len()));
            out.push('\n');
            for (dim, cells) in &rows {
                out.push_str(&format!("| {dim} |"));
                for c in cells {
                    out.push_str(&format!(" {c} |"));
                }
                out.push('\n');
            }
        }
        TableFormat::Csv => {
            out.push_str("dim");
            for h in &headers {
                out.push(',');
                out.push_str(&h.to_ascii_lowercase());
            }
            out.push('\n');
            for (dim, cells) in &rows {
                out.push_str(&dim.to_string());
                for c in cells {
                    out.push(',');
                    out.push_str(c);
                }
                out.push('\n');
            }
        }
        TableFormat::Json => {
            let table = JsonTable {
                dataset: &first.dataset_name,
                classifier: &first.classifier,
                columns: headers,
                rows: rows.into_iter().map(|(dim, cells)| JsonRow { dim, cells }).collect(),
            };
            out = serde_json::to_string_pretty(&table)?;
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(method: EvalMethod, dims: &[usize], absent: &[usize], means: &[f64]) -> EvaluationReport {
        EvaluationReport {
            dataset_name: "toy".into(),
            method,
            classifier: "knn-1".into(),
            dims_evaluated: dims.to_vec(),
            dims_absent: absent.to_vec(),
            folds: 2,
            fold_accuracies: means.iter().map(|&m| vec![m, m]).collect(),
            mean_accuracy: means.to_vec(),
            seed: 1,
            config_digest: "x".into(),
            config: serde_json::Value::Null,
        }
    }

    #[test]
    fn two_row_markdown() {
        let t = render_table(&[report(EvalMethod::Mifx, &[1, 2], &[], &[49.84, 75.25])], TableFormat::Markdown, None).unwrap();
        assert_eq!(
            t,
            "toy (knn-1), mean accuracy %\n\n| Dim. | MIFX |\n|---:|---:|\n| 1 | 49.8 |\n| 2 | 75.2 |\n"
        );
    }

    #[test]
    fn columns_ordered_and_dashes_for_absent() {
        let reports = [
            report(EvalMethod::Mifx, &[1, 2, 3, 4], &[], &[1.0, 2.0, 3.0, 4.0]),
            report(EvalMethod::Lda, &[1, 2, 3], &[4], &[5.0, 6.0, 7.0]),
            report(EvalMethod::Raw, &[1, 2, 3, 4], &[], &[8.0, 9.0, 10.0, 11.0]),
        ];
        let csv = render_table(&reports, TableFormat::Csv, None).unwrap();
        assert_eq!(
            csv,
            "dim,raw,lda,mifx\n1,8.0,5.0,1.0\n2,9.0,6.0,2.0\n3,10.0,7.0,3.0\n4,11.0,-,4.0\n"
        );
        let again = render_table(&reports, TableFormat::Csv, None).unwrap();
        assert_eq!(csv, again);
    }

    #[test]
    fn reference_columns_verbatim() {
        let rt = ReferenceTable::parse("dim,published_mifx\n1,49.8\n2,75.30\n").unwrap();
        let t = render_table(&[report(EvalMethod::Mifx, &[1, 2, 3], &[], &[50.0, 74.0, 85.0])], TableFormat::Csv, Some(&rt)).unwrap();
        assert_eq!(t, "dim,mifx,published_mifx\n1,50.0,49.8\n2,74.0,75.30\n3,85.0,-\n");
        let json = render_table(&[report(EvalMethod::Mifx, &[1], &[], &[50.0])], TableFormat::Json, Some(&rt)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["columns"][1], "published_mifx");
        assert_eq!(v["rows"][0]["cells"][0], "50.0");
    }

    #[test]
    fn inconsistent_sets_rejected() {
        let mut other = report(EvalMethod::Pca, &[1], &[], &[1.0]);
        other.dataset_name = "else".into();
        let mifx = report(EvalMethod::Mifx, &[1], &[], &[1.0]);
        assert!(render_table(&[mifx.clone(), other], TableFormat::Csv, None).is_err());
        assert!(render_table(&[mifx.clone(), mifx], TableFormat::Csv, None).is_err());
        assert!(render_table(&[], TableFormat::Csv, None).is_err());
    }

    #[test]
    fn validate_checks_means() {
        let mut r = report(EvalMethod::Raw, &[1], &[], &[50.0]);
        r.validate().unwrap();
        r.mean_accuracy[0] = 51.0;
        assert!(r.validate().is_err());
    }

    #[test]
    fn digest_is_stable() {
        let a = config_digest(&serde_json::json!({"a": 1, "b": [1, 2]})).unwrap();
        let b = config_digest(&serde_json::json!({"a": 1, "b": [1, 2]})).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
        assert_ne!(a, config_digest(&serde_json::json!({"a": 2})).unwrap());
    }
}
