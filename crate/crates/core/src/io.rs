//! CSV datasets and depth reports.
//!
//! Dataset files have the header `a,b,c,d` followed by any of the optional
//! columns `count`, `label` and `role` (`sample` or `query`). Query rows are
//! evaluated against the sample but are not part of it.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::depth::{DepthReport, Depths, PairScheme, Role};
use crate::error::DepthError;
use crate::fuzzy::{FuzzyNumber, Sample, Trapezoid};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("line {line}: {source}")]
    Ordering { line: u64, source: DepthError },

    #[error("dataset has no sample rows")]
    EmptyDataset,

    #[error(transparent)]
    Depth(#[from] DepthError),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type DataResult<T> = std::result::Result<T, DataError>;

/// A parsed dataset file: the reference sample plus optional query rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub sample: Sample,
    pub queries: Vec<(Option<String>, Trapezoid)>,
}

impl Dataset {
    pub fn query_numbers(&self) -> Vec<(Option<String>, FuzzyNumber)> {
        self.queries.iter().map(|(l, t)| (l.clone(), t.to_fuzzy())).collect()
    }
}

/// Shortest decimal that round-trips the value rounded to 12 significant
/// digits (ties to even).
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

/// Value as written to reports: rounded to 12 significant digits.
pub fn round_sig12(v: f64) -> f64 {
    fmt_sig12(v).parse().expect("formatted float parses")
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim().eq_ignore_ascii_case(name))
}

/// Parses a dataset from any reader.
pub fn read_dataset<R: Read>(reader: R) -> DataResult<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let coords: Vec<usize> = ["a", "b", "c", "d"]
        .iter()
        .map(|c| {
            column(&headers, c).ok_or_else(|| DataError::Parse {
                line: 1,
                msg: format!("missing column `{c}` in header"),
            })
        })
        .collect::<DataResult<_>>()?;
    let count_col = column(&headers, "count");
    let label_col = column(&headers, "label");
    let role_col = column(&headers, "role");

    let mut items = Vec::new();
    let mut counts = Vec::new();
    let mut labels = Vec::new();
    let mut queries = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| rec.get(i).unwrap_or("").trim();
        let mut v = [0.0; 4];
        for (slot, &i) in v.iter_mut().zip(&coords) {
            *slot = field(i).parse::<f64>().map_err(|_| DataError::Parse {
                line,
                msg: format!("cannot parse `{}` as a number", field(i)),
            })?;
        }
        let t = Trapezoid::new(v[0], v[1], v[2], v[3]).map_err(|source| DataError::Ordering { line, source })?;
        let count = match count_col.map(field) {
            None | Some("") => 1,
            Some(s) => match s.parse::<usize>() {
                Ok(c) if c >= 1 => c,
                _ => {
                    return Err(DataError::Parse {
                        line,
                        msg: format!("count `{s}` must be a positive integer"),
                    })
                }
            },
        };
        let label = label_col.map(field).filter(|s| !s.is_empty()).map(str::to_owned);
        let role = match role_col.map(field) {
            None | Some("") | Some("sample") => Role::Sample,
            Some("query") => Role::Query,
            Some(other) => {
                return Err(DataError::Parse {
                    line,
                    msg: format!("role `{other}` must be `sample` or `query`"),
                })
            }
        };
        match role {
            Role::Sample => {
                items.push(t.to_fuzzy());
                counts.push(count);
                labels.push(label);
            }
            Role::Query => queries.push((label, t)),
        }
    }
    if items.is_empty() {
        return Err(DataError::EmptyDataset);
    }
    Ok(Dataset {
        sample: Sample::with_labels(items, counts, labels)?,
        queries,
    })
}

/// Loads a dataset file; `-` reads standard input.
pub fn load_dataset(path: &Path) -> DataResult<Dataset> {
    if path.as_os_str() == "-" {
        read_dataset(std::io::stdin().lock())
    } else {
        read_dataset(File::open(path)?)
    }
}

/// Loads the sample rows of a dataset file.
pub fn load_csv(path: &Path) -> DataResult<Sample> {
    Ok(load_dataset(path)?.sample)
}

/// Writes a trapezoidal sample as `a,b,c,d,count,label`.
pub fn write_dataset<W: Write>(sample: &Sample, writer: W) -> DataResult<()> {
    let ts = sample.trapezoids()?;
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["a", "b", "c", "d", "count", "label"])?;
    for ((t, count), label) in ts.iter().zip(sample.counts()).zip(sample.labels()) {
        w.write_record([
            t.a.to_string(),
            t.b.to_string(),
            t.c.to_string(),
            t.d.to_string(),
            count.to_string(),
            label.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Output format of a depth report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

/// Flat report record, one per row, in output column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub label: String,
    pub role: Role,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
    pub count: usize,
    #[serde(rename = "d_nS")]
    pub d_ns: f64,
    #[serde(rename = "d_mS")]
    pub d_ms: f64,
    #[serde(rename = "d_FS")]
    pub d_fs: f64,
    #[serde(rename = "rank_nS")]
    pub rank_ns: usize,
    #[serde(rename = "rank_mS")]
    pub rank_ms: usize,
    #[serde(rename = "rank_FS")]
    pub rank_fs: usize,
}

impl ReportRecord {
    pub fn depths(&self) -> Depths {
        Depths {
            naive: self.d_ns,
            modified: self.d_ms,
            simplicial: self.d_fs,
        }
    }
}

/// Report rows flattened for output, depths rounded to 12 significant digits.
pub fn report_records(report: &DepthReport) -> Vec<ReportRecord> {
    report
        .rows
        .iter()
        .map(|r| {
            let t = r.trapezoid;
            ReportRecord {
                label: r.label.clone().unwrap_or_else(|| format!("X{}", r.index + 1)),
                role: r.role,
                a: t.map(|t| t.a),
                b: t.map(|t| t.b),
                c: t.map(|t| t.c),
                d: t.map(|t| t.d),
                count: r.count,
                d_ns: round_sig12(r.depths.naive),
                d_ms: round_sig12(r.depths.modified),
                d_fs: round_sig12(r.depths.simplicial),
                rank_ns: r.rank_naive,
                rank_ms: r.rank_modified,
                rank_fs: r.rank_simplicial,
            }
        })
        .collect()
}

const REPORT_HEADER: [&str; 13] = [
    "label", "role", "a", "b", "c", "d", "count", "d_nS", "d_mS", "d_FS", "rank_nS", "rank_mS", "rank_FS",
];

#[derive(Serialize)]
struct JsonReport<'a> {
    pairs: PairScheme,
    median: Option<[f64; 4]>,
    maximizers: JsonMaximizers<'a>,
    rows: Vec<ReportRecord>,
}

#[derive(Serialize)]
struct JsonMaximizers<'a> {
    #[serde(rename = "d_nS")]
    d_ns: &'a [usize],
    #[serde(rename = "d_mS")]
    d_ms: &'a [usize],
    #[serde(rename = "d_FS")]
    d_fs: &'a [usize],
}

/// Writes a report in the requested format.
pub fn write_report_to<W: Write>(report: &DepthReport, mut writer: W, format: ReportFormat) -> DataResult<()> {
    let records = report_records(report);
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(writer);
            w.write_record(REPORT_HEADER)?;
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            for r in &records {
                w.write_record([
                    r.label.clone(),
                    match r.role {
                        Role::Sample => "sample".into(),
                        Role::Query => "query".into(),
                    },
                    opt(r.a),
                    opt(r.b),
                    opt(r.c),
                    opt(r.d),
                    r.count.to_string(),
                    fmt_sig12(r.d_ns),
                    fmt_sig12(r.d_ms),
                    fmt_sig12(r.d_fs),
                    r.rank_ns.to_string(),
                    r.rank_ms.to_string(),
                    r.rank_fs.to_string(),
                ])?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let doc = JsonReport {
                pairs: report.scheme,
                median: report.median.map(|m| m.coords()),
                maximizers: JsonMaximizers {
                    d_ns: &report.max_naive,
                    d_ms: &report.max_modified,
                    d_fs: &report.max_simplicial,
                },
                rows: records,
            };
            serde_json::to_writer_pretty(&mut writer, &doc)?;
            writeln!(writer)?;
        }
    }
    Ok(())
}

pub fn write_report(report: &DepthReport, path: &Path, format: ReportFormat) -> DataResult<()> {
    write_report_to(report, File::create(path)?, format)
}

/// Reads a CSV report written by [`write_report`].
pub fn read_report<R: Read>(reader: R) -> DataResult<Vec<ReportRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let get = |i: usize| rec.get(i).unwrap_or("");
        let bad = |what: &str| DataError::Parse {
            line,
            msg: format!("invalid `{what}` field"),
        };
        let num = |i: usize, what: &str| get(i).parse::<f64>().map_err(|_| bad(what));
        let opt = |i: usize, what: &str| -> DataResult<Option<f64>> {
            if get(i).is_empty() {
                Ok(None)
            } else {
                num(i, what).map(Some)
            }
        };
        let int = |i: usize, what: &str| get(i).parse::<usize>().map_err(|_| bad(what));
        out.push(ReportRecord {
            label: get(0).to_owned(),
            role: match get(1) {
                "query" => Role::Query,
                _ => Role::Sample,
            },
            a: opt(2, "a")?,
            b: opt(3, "b")?,
            c: opt(4, "c")?,
            d: opt(5, "d")?,
            count: int(6, "count")?,
            d_ns: num(7, "d_nS")?,
            d_ms: num(8, "d_mS")?,
            d_fs: num(9, "d_FS")?,
            rank_ns: int(10, "rank_nS")?,
            rank_ms: int(11, "rank_mS")?,
            rank_fs: int(12, "rank_FS")?,
        });
    }
    Ok(out)
}

pub fn load_report(path: &Path) -> DataResult<Vec<ReportRecord>> {
    read_report(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::rank_sample;

    #[test]
    fn sig12_formatting() {
        assert_eq!(fmt_sig12(0.625), "0.625");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(1.0), "1");
    }

    #[test]
    fn parse_with_counts_and_labels() {
        let text = "a,b,c,d,count,label\n0,1,2,3,2,first\n1,2,3,4,,second\n";
        let ds = read_dataset(text.as_bytes()).unwrap();
        assert_eq!(ds.sample.counts(), &[2, 1]);
        assert_eq!(ds.sample.labels()[0].as_deref(), Some("first"));
        assert_eq!(ds.sample.expanded_len(), 3);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = read_dataset("a,b,c,d\n0,1,2,3\n2,1,3,4\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DataError::Ordering { line: 3, .. }), "{err}");
        let err = read_dataset("a,b,c,d\n0,x,2,3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DataError::Parse { line: 2, .. }), "{err}");
        let err = read_dataset("a,b,c,d\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DataError::EmptyDataset));
        let err = read_dataset("a,b,c\n1,2,3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DataError::Parse { line: 1, .. }));
        let err = read_dataset("a,b,c,d,count\n0,1,2,3,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DataError::Parse { line: 2, .. }));
    }

    #[test]
    fn query_rows_are_kept_apart() {
        let text = "a,b,c,d,label,role\n1,1,2,2,X1,sample\n4,4,5,5,X2,\n0.5,1.5,1.5,3.5,R,query\n";
        let ds = read_dataset(text.as_bytes()).unwrap();
        assert_eq!(ds.sample.len(), 2);
        assert_eq!(ds.queries.len(), 1);
        assert_eq!(ds.queries[0].0.as_deref(), Some("R"));
        let only_queries = "a,b,c,d,role\n1,1,2,2,query\n";
        assert!(matches!(
            read_dataset(only_queries.as_bytes()),
            Err(DataError::EmptyDataset)
        ));
    }

    #[test]
    fn dataset_round_trip() {
        let text = "a,b,c,d,count,label\n0.1,0.2,0.30000000000000004,1e-5,3,x\n";
        // ordering violation: 1e-5 < 0.3
        assert!(read_dataset(text.as_bytes()).is_err());
        let text = "a,b,c,d,count,label\n0.1,0.2,0.30000000000000004,7.25,3,x\n-1,0,0,1,1,\n";
        let s1 = read_dataset(text.as_bytes()).unwrap().sample;
        let mut buf = Vec::new();
        write_dataset(&s1, &mut buf).unwrap();
        let s2 = read_dataset(buf.as_slice()).unwrap().sample;
        assert_eq!(s1, s2);
    }

    #[test]
    fn report_round_trip_and_ties() {
        let text = "a,b,c,d\n0,0,0,0\n1,1,1,1\n2,2,2,2\n3,3,3,3\n";
        let s = read_dataset(text.as_bytes()).unwrap().sample;
        let rep = rank_sample(&s, PairScheme::Strict).unwrap();
        let mut buf = Vec::new();
        write_report_to(&rep, &mut buf, ReportFormat::Csv).unwrap();
        let back = read_report(buf.as_slice()).unwrap();
        assert_eq!(back, report_records(&rep));
        // outer pair ties, inner pair ties
        assert_eq!(back[0].rank_ms, back[3].rank_ms);
        assert_eq!(back[1].rank_ms, back[2].rank_ms);
        assert_eq!(back[1].rank_ms, 1);
        let mut again = Vec::new();
        write_report_to(&rep, &mut again, ReportFormat::Csv).unwrap();
        assert_eq!(buf, again);

        let mut json = Vec::new();
        write_report_to(&rep, &mut json, ReportFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
        assert_eq!(v["pairs"], "strict");
    }
}
