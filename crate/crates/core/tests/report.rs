//! Emitted benchmark reports: structure, round trip and determinism.

mod common;

use common::wordnet;
use taxsim::evaluation::{
    embedded_rg30, emit_report, format_value, pearson, run_benchmark, CorrelationReport,
    MeasureSpec, OovPolicy, ReportFormat,
};
use taxsim::ic;
use taxsim::similarity::{word_similarity, MeasureId};

fn rg30_report() -> CorrelationReport {
    let (t, idx) = wordnet();
    let hybrid = ic::hybrid_table(t);
    let seco = ic::ic_seco(t).unwrap();
    let specs: Vec<MeasureSpec> = MeasureId::ALL
        .into_iter()
        .map(|measure| MeasureSpec {
            measure,
            ic: Some(if measure.needs_normalized_ic() {
                &seco
            } else {
                &hybrid
            }),
        })
        .collect();
    run_benchmark(t, idx, &embedded_rg30(), &specs, OovPolicy::Strict).unwrap()
}

fn round4(v: f64) -> f64 {
    format_value(v).parse().unwrap()
}

#[test]
fn tsv_structure() {
    let tsv = emit_report(&rg30_report(), ReportFormat::Tsv).unwrap();
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines.len(), 1 + 30 + 2);
    assert!(!tsv.contains('\r'));
    assert!(lines[0].starts_with("word1\tword2\thuman\t"));
    assert!(lines[1].starts_with("autograph\tshore\t0.0600\t"));
    assert!(lines[30].starts_with("magician\twizard\t3.5000\t"));
    assert!(lines[31].starts_with("range\t"));
    assert!(lines[32].starts_with("r\t"));
    let width = lines[0].split('\t').count();
    assert_eq!(width, 3 + MeasureId::ALL.len());
    assert!(lines.iter().all(|l| l.split('\t').count() == width));
}

#[test]
fn tsv_round_trip_recomputes_correlations() {
    let report = rg30_report();
    let tsv = emit_report(&report, ReportFormat::Tsv).unwrap();
    let rows: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
    let column =
        |j: usize| -> Vec<f64> { rows[1..31].iter().map(|r| r[j].parse().unwrap()).collect() };
    let human = column(2);
    assert_eq!(human, report.human());
    for (k, col) in report.columns.iter().enumerate() {
        let j = 3 + k;
        assert_eq!(rows[0][j], col.label);
        let parsed = column(j);
        let rounded: Vec<f64> = col.scores.iter().map(|&v| round4(v)).collect();
        assert_eq!(parsed, rounded);
        let from_file = pearson(&parsed, &human).unwrap();
        let from_rounded = pearson(&rounded, &report.human()).unwrap();
        assert!((from_file - from_rounded).abs() <= 1e-9, "{}", col.label);
        // four decimals move r by far less than its printed precision
        assert!(
            (from_file - col.pearson.unwrap()).abs() < 1e-3,
            "{}",
            col.label
        );
        assert_eq!(rows[32][j], format_value(col.pearson.unwrap()));
        assert_eq!(rows[31][j], format_value(col.range));
    }
}

#[test]
fn csv_carries_the_same_cells() {
    let report = rg30_report();
    let tsv = emit_report(&report, ReportFormat::Tsv).unwrap();
    let csv_text = emit_report(&report, ReportFormat::Csv).unwrap();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_text.as_bytes());
    let from_csv: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    let from_tsv: Vec<Vec<String>> = tsv
        .lines()
        .map(|l| l.split('\t').map(str::to_owned).collect())
        .collect();
    assert_eq!(from_csv, from_tsv);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = emit_report(&rg30_report(), ReportFormat::Tsv).unwrap();
    let b = emit_report(&rg30_report(), ReportFormat::Tsv).unwrap();
    assert_eq!(a, b);
}

#[test]
fn parallel_scoring_keeps_dataset_order() {
    let (t, idx) = wordnet();
    let report = rg30_report();
    let hybrid = ic::hybrid_table(t);
    let lin = report.column_for(MeasureId::Lin).unwrap();
    for (p, &got) in report.pairs.iter().zip(&lin.scores) {
        let want =
            word_similarity(t, idx, MeasureId::Lin, Some(&hybrid), &p.word1, &p.word2).unwrap();
        assert_eq!(got, want.value);
    }
}

#[test]
fn human_column_correlates_perfectly_with_itself() {
    let report = rg30_report();
    assert_eq!(report.human_pearson, Some(1.0));
    assert!((report.human_range - 3.82).abs() < 1e-12);
    for c in &report.columns {
        let r = c.pearson.unwrap();
        assert!((-1.0..=1.0).contains(&r));
        assert_eq!(c.scores.len(), 30);
    }
    // distances are correlated as-is
    assert!(
        report
            .column_for(MeasureId::RadaDist)
            .unwrap()
            .pearson
            .unwrap()
            < 0.0
    );
    assert!(
        report
            .column_for(MeasureId::JcnDist)
            .unwrap()
            .pearson
            .unwrap()
            < 0.0
    );
}
