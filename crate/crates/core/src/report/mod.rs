//! Per-document aggregation and the static HTML/SVG report.

mod analysis;
mod html;

pub use analysis::{analyze_document, Analyzer, DocumentAnalysis, Mention, ReferenceAnalysis, Totals};
pub use html::{render_html, summary_text, EDGE_BASE_WIDTH, EDGE_MAX_WIDTH};

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Writes `<doc_id>.report.html` and `<doc_id>.analysis.json` into `dir`.
pub fn write_report(analysis: &DocumentAnalysis, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let stem: String = analysis
        .doc_id
        .chars()
        .map(|c| if c.is_alphanumeric() || "-_.".contains(c) { c } else { '_' })
        .collect();
    let html = dir.join(format!("{stem}.report.html"));
    let json = dir.join(format!("{stem}.analysis.json"));
    std::fs::write(&html, render_html(analysis)).map_err(|e| Error::io(&html, e))?;
    std::fs::write(&json, analysis.to_json()).map_err(|e| Error::io(&json, e))?;
    Ok((html, json))
}
