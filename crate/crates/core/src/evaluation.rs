//! Benchmark harness: word-pair datasets with human ratings, Pearson
//! correlation, the range statistic, and report output.

use std::fmt::Write as _;
use std::io::BufRead;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ic::{IcModel, IcTable};
use crate::ingest::LemmaIndex;
use crate::similarity::{validate_combination, word_similarity, MeasureId};
use crate::taxonomy::Taxonomy;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkPair {
    pub word1: String,
    pub word2: String,
    pub rating: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkDataset {
    pub name: String,
    pub pairs: Vec<BenchmarkPair>,
}

const RG30: [(&str, &str, f64); 30] = [
    ("autograph", "shore", 0.06),
    ("noon", "string", 0.08),
    ("glass", "magician", 0.11),
    ("automobile", "wizard", 0.11),
    ("mound", "stove", 0.14),
    ("coast", "forest", 0.42),
    ("boy", "rooster", 0.44),
    ("cushion", "jewel", 0.45),
    ("coast", "hill", 0.87),
    ("boy", "sage", 0.96),
    ("mound", "shore", 0.97),
    ("automobile", "cushion", 0.97),
    ("crane", "rooster", 1.41),
    ("hill", "woodland", 1.48),
    ("brother", "lad", 1.66),
    ("crane", "implement", 1.68),
    ("magician", "oracle", 1.82),
    ("sage", "wizard", 2.46),
    ("oracle", "sage", 2.61),
    ("brother", "monk", 2.82),
    ("implement", "tool", 2.95),
    ("bird", "crane", 2.97),
    ("bird", "cock", 3.05),
    ("hill", "mound", 3.29),
    ("cord", "string", 3.41),
    ("midday", "noon", 3.42),
    ("glass", "tumbler", 3.45),
    ("serf", "slave", 3.46),
    ("cemetery", "graveyard", 3.88),
    ("magician", "wizard", 3.50),
];

/// The 30-pair Rubenstein & Goodenough subset, ratings on a 0–4 scale.
pub fn embedded_rg30() -> BenchmarkDataset {
    BenchmarkDataset {
        name: "rg30".into(),
        pairs: RG30
            .iter()
            .map(|&(a, b, r)| BenchmarkPair {
                word1: a.into(),
                word2: b.into(),
                rating: r,
            })
            .collect(),
    }
}

/// Reads `word1<TAB>word2<TAB>rating` lines. Blank lines and lines starting
/// with `#` are skipped.
pub fn load_dataset(name: &str, reader: impl BufRead) -> Result<BenchmarkDataset> {
    let mut pairs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [w1, w2, rating] = cols.as_slice() else {
            return Err(Error::Parse {
                line: lineno,
                message: "expected `word1<TAB>word2<TAB>rating`".into(),
            });
        };
        let rating: f64 = rating.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("rating `{rating}` is not a number"),
        })?;
        if !rating.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                message: "rating must be finite".into(),
            });
        }
        pairs.push(BenchmarkPair {
            word1: (*w1).to_owned(),
            word2: (*w2).to_owned(),
            rating,
        });
    }
    Ok(BenchmarkDataset {
        name: name.to_owned(),
        pairs,
    })
}

/// Sample Pearson correlation, accumulated in a single streaming pass.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Input(format!(
            "vectors differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::Input(
            "correlation needs at least two observations".into(),
        ));
    }
    let (mut mean_x, mut mean_y) = (0.0f64, 0.0f64);
    let (mut sxx, mut syy, mut sxy) = (0.0f64, 0.0f64, 0.0f64);
    for (i, (&xi, &yi)) in x.iter().zip(y).enumerate() {
        let n = (i + 1) as f64;
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        mean_x += dx / n;
        mean_y += dy / n;
        sxx += dx * (xi - mean_x);
        syy += dy * (yi - mean_y);
        sxy += dx * (yi - mean_y);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("a vector is constant".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// `max(x) - min(x)`.
pub fn range_stat(x: &[f64]) -> Result<f64> {
    let (min, max) = x
        .iter()
        .fold(None, |acc: Option<(f64, f64)>, &v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
        .ok_or_else(|| Error::Input("range of an empty vector".into()))?;
    Ok(max - min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OovPolicy {
    /// Any pair with an unknown word is an error.
    #[default]
    Strict,
    /// Pairs with unknown words are dropped and listed in the report.
    Skip,
}

#[derive(Debug, Clone, Copy)]
pub struct MeasureSpec<'a> {
    pub measure: MeasureId,
    pub ic: Option<&'a IcTable>,
}

impl MeasureSpec<'_> {
    /// Column label: the measure name, plus the IC model for IC-based measures.
    pub fn label(&self) -> String {
        match (self.measure.needs_ic(), self.ic) {
            (true, Some(ic)) => format!("{}({})", self.measure, ic.model()),
            _ => self.measure.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureColumn {
    pub measure: MeasureId,
    pub ic_model: Option<IcModel>,
    pub label: String,
    pub scores: Vec<f64>,
    /// `None` when the correlation is undefined (constant column, < 2 pairs).
    pub pearson: Option<f64>,
    pub range: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub dataset: String,
    pub pairs: Vec<BenchmarkPair>,
    pub skipped: Vec<BenchmarkPair>,
    pub human_range: f64,
    pub human_pearson: Option<f64>,
    pub columns: Vec<MeasureColumn>,
}

impl CorrelationReport {
    pub fn human(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.rating).collect()
    }

    pub fn column(&self, label: &str) -> Option<&MeasureColumn> {
        self.columns.iter().find(|c| c.label == label)
    }

    pub fn column_for(&self, measure: MeasureId) -> Option<&MeasureColumn> {
        self.columns.iter().find(|c| c.measure == measure)
    }
}

/// Scores every dataset pair under every measure and correlates each column
/// with the human ratings. Output order follows the dataset and `measures`.
pub fn run_benchmark(
    t: &Taxonomy,
    idx: &LemmaIndex,
    dataset: &BenchmarkDataset,
    measures: &[MeasureSpec<'_>],
    policy: OovPolicy,
) -> Result<CorrelationReport> {
    for spec in measures {
        validate_combination(t, spec.measure, spec.ic)?;
    }

    let known = |w: &str| idx.senses(w).is_some_and(|s| !s.is_empty());
    let (pairs, skipped): (Vec<_>, Vec<_>) = dataset
        .pairs
        .iter()
        .cloned()
        .partition(|p| known(&p.word1) && known(&p.word2));
    if !skipped.is_empty() && policy == OovPolicy::Strict {
        let listed: Vec<String> = skipped
            .iter()
            .map(|p| format!("{}-{}", p.word1, p.word2))
            .collect();
        return Err(Error::OutOfVocabulary(listed.join(", ")));
    }
    if pairs.is_empty() {
        return Err(Error::Input(format!(
            "no pair of dataset `{}` is in the vocabulary",
            dataset.name
        )));
    }

    let human: Vec<f64> = pairs.iter().map(|p| p.rating).collect();
    let mut columns = Vec::with_capacity(measures.len());
    for spec in measures {
        let scores = pairs
            .par_iter()
            .map(|p| {
                word_similarity(t, idx, spec.measure, spec.ic, &p.word1, &p.word2).map(|s| s.value)
            })
            .collect::<Result<Vec<f64>>>()?;
        columns.push(MeasureColumn {
            measure: spec.measure,
            ic_model: spec
                .ic
                .filter(|_| spec.measure.needs_ic())
                .map(IcTable::model),
            label: spec.label(),
            pearson: pearson(&scores, &human).ok(),
            range: range_stat(&scores)?,
            scores,
        });
    }

    Ok(CorrelationReport {
        dataset: dataset.name.clone(),
        human_range: range_stat(&human)?,
        human_pearson: pearson(&human, &human).ok(),
        pairs,
        skipped,
        columns,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Tsv,
    Csv,
    Pretty,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tsv" => Ok(ReportFormat::Tsv),
            "csv" => Ok(ReportFormat::Csv),
            "pretty" => Ok(ReportFormat::Pretty),
            other => Err(Error::Input(format!("unknown report format `{other}`"))),
        }
    }
}

/// Four decimals, dot separator, never `-0.0000`.
pub fn format_value(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn format_opt(v: Option<f64>) -> String {
    v.map(format_value).unwrap_or_else(|| "NA".into())
}

fn report_rows(r: &CorrelationReport) -> Vec<Vec<String>> {
    let mut rows = Vec::with_capacity(r.pairs.len() + 3);
    let mut header = vec!["word1".to_owned(), "word2".to_owned(), "human".to_owned()];
    header.extend(r.columns.iter().map(|c| c.label.clone()));
    rows.push(header);
    for (i, p) in r.pairs.iter().enumerate() {
        let mut row = vec![p.word1.clone(), p.word2.clone(), format_value(p.rating)];
        row.extend(r.columns.iter().map(|c| format_value(c.scores[i])));
        rows.push(row);
    }
    let mut range = vec![
        "range".to_owned(),
        String::new(),
        format_value(r.human_range),
    ];
    range.extend(r.columns.iter().map(|c| format_value(c.range)));
    rows.push(range);
    let mut corr = vec!["r".to_owned(), String::new(), format_opt(r.human_pearson)];
    corr.extend(r.columns.iter().map(|c| format_opt(c.pearson)));
    rows.push(corr);
    rows
}

/// Renders the report: a header, one row per pair, then `range` and `r`
/// summary rows.
pub fn emit_report(r: &CorrelationReport, format: ReportFormat) -> Result<String> {
    let rows = report_rows(r);
    match format {
        ReportFormat::Tsv => {
            let mut out = String::new();
            for row in &rows {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(Vec::new());
            for row in &rows {
                w.write_record(row)
                    .map_err(|e| Error::Input(format!("csv: {e}")))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Input(format!("csv: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::Input(format!("csv: {e}")))
        }
        ReportFormat::Pretty => {
            let ncols = rows[0].len();
            let widths: Vec<usize> = (0..ncols)
                .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            let rule: usize = widths.iter().sum::<usize>() + 2 * (ncols - 1);
            for (i, row) in rows.iter().enumerate() {
                if i == 1 || i == rows.len() - 2 {
                    let _ = writeln!(out, "{}", "-".repeat(rule));
                }
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .enumerate()
                    .map(|(j, (cell, &w))| {
                        if j < 2 {
                            format!("{cell:<w$}")
                        } else {
                            format!("{cell:>w$}")
                        }
                    })
                    .collect();
                let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            }
            if !r.skipped.is_empty() {
                let _ = writeln!(
                    out,
                    "\n{} of {} pairs used; skipped: {}",
                    r.pairs.len(),
                    r.pairs.len() + r.skipped.len(),
                    r.skipped
                        .iter()
                        .map(|p| format!("{}-{}", p.word1, p.word2))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            Ok(out)
        }
    }
}
