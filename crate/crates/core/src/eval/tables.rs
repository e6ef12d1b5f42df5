//! Plain-text result tables.

use std::fmt::Write as _;

use serde::Serialize;

use super::distribution::SectionDistribution;
use super::experiment::{AblationRow, CrossValidation, SweepPoint};
use super::metrics::EvalReport;
use crate::classify::Label;
use crate::features::FeaturePreset;

/// Left-aligned columns separated by two spaces.
pub fn render_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:<w$}");
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    let rule: usize = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn f4(x: f64) -> String {
    format!("{x:.4}")
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn preset_title(p: FeaturePreset) -> &'static str {
    match p {
        FeaturePreset::OnlyPos => "Only POS",
        FeaturePreset::Combination => "Combination",
    }
}

/// Features | SVM | Paum, one row per preset.
pub fn ablation_table(rows: &[AblationRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![preset_title(r.preset).to_string(), f4(r.svm_f1), f4(r.paum_f1)])
        .collect();
    render_table(&strings(&["Features", "SVM micro-F1", "Paum micro-F1"]), &body)
}

/// Per-class F1 of several systems plus an overall micro-F1 row.
pub fn per_class_table(columns: &[(&str, &EvalReport)]) -> String {
    let Some((_, first)) = columns.first() else {
        return String::new();
    };
    let mut header = vec!["Label".to_string()];
    header.extend(columns.iter().map(|(n, _)| format!("{n} F1")));
    header.push("Support".into());
    let mut body = Vec::new();
    for l in &first.labels {
        let mut row = vec![l.to_string()];
        row.extend(columns.iter().map(|(_, r)| r.class(*l).map_or("-".into(), |c| f4(c.f1))));
        row.push(first.class(*l).map_or(0, |c| c.support).to_string());
        body.push(row);
    }
    for (name, pick) in [
        ("Overall micro-F1", (|r: &EvalReport| r.micro_f1) as fn(&EvalReport) -> f64),
        ("Overall macro-F1", |r: &EvalReport| r.macro_f1),
    ] {
        let mut row = vec![name.to_string()];
        row.extend(columns.iter().map(|(_, r)| f4(pick(r))));
        row.push(first.total.to_string());
        body.push(row);
    }
    render_table(&header, &body)
}

/// Algorithm | run scores | mean.
pub fn crossval_table(results: &[CrossValidation]) -> String {
    let runs = results.iter().map(|r| r.scores.len()).max().unwrap_or(0);
    let mut header = vec!["Algorithm".to_string()];
    header.extend((1..=runs).map(|i| format!("F{i}")));
    header.push("Overall".into());
    let body: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            let mut row = vec![r.algorithm.to_string()];
            row.extend(r.scores.iter().map(|s| format!("{s:.2}")));
            row.push(format!("{:.2}", r.mean));
            row
        })
        .collect();
    render_table(&header, &body)
}

/// Approach | one column per sweep point.
pub fn sweep_table(unit: &str, points: &[SweepPoint]) -> String {
    let mut header = vec!["Approach".to_string()];
    header.extend(points.iter().map(|p| format!("{} {unit}", p.parameter)));
    let row = |name: &str, f: fn(&SweepPoint) -> f64| {
        let mut r = vec![name.to_string()];
        r.extend(points.iter().map(|p| f4(f(p))));
        r
    };
    render_table(
        &header,
        &[row("SVM", |p| p.svm_f1), row("Paum", |p| p.paum_f1)],
    )
}

pub fn distribution_table(d: &SectionDistribution) -> String {
    let mut header = vec!["Section".to_string()];
    let labels: Vec<Label> = d.rows.keys().copied().collect();
    header.extend(labels.iter().map(|l| l.to_string()));
    let body: Vec<Vec<String>> = d
        .buckets
        .iter()
        .enumerate()
        .map(|(b, s)| {
            let mut row = vec![s.to_string()];
            row.extend(labels.iter().map(|l| format!("{:.2}", d.rows[l][b])));
            row
        })
        .collect();
    render_table(&header, &body)
}

/// One system in a correct-count comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub method: String,
    pub correct: Vec<(Label, usize)>,
    pub support: Vec<(Label, usize)>,
    pub micro_f1: f64,
    pub macro_f1: f64,
    pub macro_recall: f64,
    /// Externally reported F-score to compare against, if any.
    pub reference_f: Option<f64>,
}

impl ComparisonRow {
    pub fn from_report(method: impl Into<String>, labels: &[Label], report: &EvalReport, reference_f: Option<f64>) -> Self {
        let pick = |f: fn(&super::metrics::ClassMetrics) -> usize| {
            labels
                .iter()
                .map(|l| (*l, report.class(*l).map_or(0, f)))
                .collect()
        };
        ComparisonRow {
            method: method.into(),
            correct: pick(|c| c.correct),
            support: pick(|c| c.support),
            micro_f1: report.micro_f1,
            macro_f1: report.macro_f1,
            macro_recall: report.macro_recall,
            reference_f,
        }
    }

    /// A note when the reference F-score differs from micro-F1 at two
    /// decimals, naming the closest computed variant.
    pub fn discrepancy(&self) -> Option<String> {
        let r = self.reference_f?;
        if (r - self.micro_f1).abs() < 0.005 {
            return None;
        }
        let variants = [
            ("micro-F1", self.micro_f1),
            ("macro-F1", self.macro_f1),
            ("macro-recall", self.macro_recall),
        ];
        let (name, value) = variants
            .iter()
            .min_by(|a, b| (a.1 - r).abs().total_cmp(&(b.1 - r).abs()))
            .expect("three variants");
        Some(format!(
            "{}: reference F {r:.2} differs from micro-F1 {:.4}; the F variant behind it cannot be recovered from correct counts alone (closest computed: {name} {value:.4})",
            self.method, self.micro_f1
        ))
    }
}

/// Method | correct per label | micro-F1 | macro-F1 | macro-R | ref F,
/// followed by a support row and any discrepancy notes.
pub fn comparison_table(rows: &[ComparisonRow]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let mut header = vec!["Method".to_string()];
    header.extend(first.correct.iter().map(|(l, _)| l.to_string()));
    header.extend(strings(&["micro-F1", "macro-F1", "macro-R", "ref F"]));
    let mut body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.method.clone()];
            row.extend(r.correct.iter().map(|(_, c)| c.to_string()));
            row.extend([f4(r.micro_f1), f4(r.macro_f1), f4(r.macro_recall)]);
            row.push(r.reference_f.map_or("-".into(), |f| format!("{f:.2}")));
            row
        })
        .collect();
    let mut support = vec!["Correct values".to_string()];
    support.extend(first.support.iter().map(|(_, s)| s.to_string()));
    body.push(support);
    let mut out = render_table(&header, &body);
    for note in rows.iter().filter_map(ComparisonRow::discrepancy) {
        let _ = writeln!(out, "note: {note}");
    }
    out
}
