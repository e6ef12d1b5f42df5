use std::fmt::Write as _;

use super::analysis::{DocumentAnalysis, ReferenceAnalysis};
use crate::classify::{Label, Task};
use crate::eval::tables::render_table;

/// Stroke width per mention.
pub const EDGE_BASE_WIDTH: f64 = 2.0;
/// Upper bound on any edge width.
pub const EDGE_MAX_WIDTH: f64 = 24.0;

const WIDTH: f64 = 960.0;
const TOP: f64 = 70.0;
const BOTTOM: f64 = 30.0;
const NODE_W: f64 = 130.0;
const NODE_H: f64 = 26.0;
const ROW: f64 = 36.0;
const GAP: f64 = 12.0;
const LEFT_X: f64 = 40.0;
const MID_X: f64 = 415.0;
const RIGHT_X: f64 = 790.0;

const STYLE: &str = "body{font-family:sans-serif;margin:24px;color:#222}\
svg text{font-size:13px}\
.node rect{stroke:#333;stroke-width:1}\
.edge{fill:none;stroke-opacity:0.55}\
.positive{fill:#2e7d32;stroke:#2e7d32}\
.neutral{fill:#9e9e9e;stroke:#9e9e9e}\
.negative{fill:#c62828;stroke:#c62828}\
.usage{fill:#1565c0;stroke:#1565c0}\
.reading{fill:#6a1b9a;stroke:#6a1b9a}\
.dataset{fill:#ef6c00;stroke:#ef6c00}\
.reference{fill:#00838f;stroke:#00838f}\
.rest{fill:#795548;stroke:#795548}\
.ref rect{fill:#eceff1}\
.edge.positive,.edge.neutral,.edge.negative,.edge.usage,.edge.reading,.edge.dataset,.edge.reference,.edge.rest{fill:none}\
table{border-collapse:collapse}td,th{border:1px solid #ccc;padding:2px 8px;text-align:right}";

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

/// Edge width for a mention count; 0 means the edge is omitted.
pub(crate) fn edge_width(count: usize) -> f64 {
    (EDGE_BASE_WIDTH * count as f64).min(EDGE_MAX_WIDTH)
}

struct Node {
    label: Label,
    count: usize,
    y: f64,
    h: f64,
}

/// Stacks one node per label, heights split by count share.
fn class_column(labels: &[Label], count: impl Fn(Label) -> usize, height: f64) -> Vec<Node> {
    let total: usize = labels.iter().map(|l| count(*l)).sum();
    let k = labels.len() as f64;
    let extra = (height - TOP - BOTTOM - k * NODE_H - (k - 1.0) * GAP).max(0.0);
    let mut y = TOP;
    labels
        .iter()
        .map(|l| {
            let c = count(*l);
            let share = if total == 0 { 0.0 } else { c as f64 / total as f64 };
            let h = NODE_H + share * extra;
            let n = Node {
                label: *l,
                count: c,
                y,
                h,
            };
            y += h + GAP;
            n
        })
        .collect()
}

fn mid_y(i: usize) -> f64 {
    TOP + i as f64 * ROW
}

fn edge(out: &mut String, (x1, y1): (f64, f64), (x2, y2): (f64, f64), class: &str, count: usize, title: &str) {
    let cx = (x1 + x2) / 2.0;
    let _ = writeln!(
        out,
        "<path class=\"edge {class}\" data-count=\"{count}\" stroke-width=\"{:.2}\" d=\"M {x1:.2} {y1:.2} C {cx:.2} {y1:.2} {cx:.2} {y2:.2} {x2:.2} {y2:.2}\"><title>{}</title></path>",
        edge_width(count),
        esc(title)
    );
}

fn class_node(out: &mut String, kind: &str, x: f64, n: &Node) {
    let _ = writeln!(
        out,
        "<g class=\"node {kind}-node\" data-label=\"{l}\"><title>{l}: {c} mention(s)</title><rect class=\"{l}\" x=\"{x:.2}\" y=\"{:.2}\" width=\"{NODE_W:.2}\" height=\"{:.2}\" rx=\"4\"/><text x=\"{:.2}\" y=\"{:.2}\" fill=\"#fff\">{l} ({c})</text></g>",
        n.y,
        n.h,
        x + 8.0,
        n.y + n.h / 2.0 + 4.0,
        l = n.label,
        c = n.count
    );
}

fn ref_tooltip(r: &ReferenceAnalysis) -> String {
    let mut t = format!("[{}] {}", r.number, r.entry.raw_text);
    if r.mentions.is_empty() {
        t.push_str("\nnot cited in the text");
    }
    for m in &r.mentions {
        let _ = write!(
            t,
            "\n- {} (sentiment: {}, nature: {}, section: {})",
            m.sentence, m.sentiment, m.nature, m.section
        );
    }
    t
}

/// Self-contained XHTML page with an inline SVG: sentiment classes on the
/// left, numbered references in the middle, nature classes on the right.
/// Output depends only on the analysis.
pub fn render_html(a: &DocumentAnalysis) -> String {
    let sentiments = Task::Sentiment.labels();
    let natures = Task::Nature.labels();
    let n = a.references.len();
    let height = (TOP + n as f64 * ROW + BOTTOM)
        .max(TOP + natures.len() as f64 * (NODE_H + GAP) + BOTTOM)
        .max(320.0);
    let t = &a.totals;
    let left = class_column(&sentiments, |l| t.sentiment.get(&l).copied().unwrap_or(0), height);
    let right = class_column(&natures, |l| t.nature.get(&l).copied().unwrap_or(0), height);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {WIDTH:.0} {height:.0}\" role=\"img\">"
    );
    for (x, title) in [(LEFT_X, "Sentiment"), (MID_X, "References"), (RIGHT_X, "Nature")] {
        let _ = writeln!(svg, "<text class=\"column-title\" x=\"{x:.2}\" y=\"{:.2}\" font-weight=\"bold\">{title}</text>", TOP - 24.0);
    }

    svg.push_str("<g class=\"edges\">\n");
    for (i, r) in a.references.iter().enumerate() {
        let y = mid_y(i) + NODE_H / 2.0;
        for node in &left {
            let c = r.mentions.iter().filter(|m| m.sentiment == node.label).count();
            if c > 0 {
                let title = format!("{} -> [{}]: {c} mention(s)", node.label, r.number);
                edge(&mut svg, (LEFT_X + NODE_W, node.y + node.h / 2.0), (MID_X, y), node.label.as_str(), c, &title);
            }
        }
        for node in &right {
            let c = r.mentions.iter().filter(|m| m.nature == node.label).count();
            if c > 0 {
                let title = format!("[{}] -> {}: {c} mention(s)", r.number, node.label);
                edge(&mut svg, (MID_X + NODE_W, y), (RIGHT_X, node.y + node.h / 2.0), node.label.as_str(), c, &title);
            }
        }
    }
    svg.push_str("</g>\n<g class=\"column sentiment-column\">\n");
    for node in &left {
        class_node(&mut svg, "sentiment", LEFT_X, node);
    }
    svg.push_str("</g>\n<g class=\"column reference-column\">\n");
    for (i, r) in a.references.iter().enumerate() {
        let y = mid_y(i);
        let _ = writeln!(
            svg,
            "<g class=\"node ref-node ref\" id=\"ref-{num}\" data-key=\"{key}\" data-mentions=\"{m}\"><title>{tip}</title><rect x=\"{MID_X:.2}\" y=\"{y:.2}\" width=\"{NODE_W:.2}\" height=\"{NODE_H:.2}\" rx=\"4\"/><text x=\"{:.2}\" y=\"{:.2}\">[{num}] ({m})</text></g>",
            MID_X + 8.0,
            y + NODE_H / 2.0 + 4.0,
            num = r.number,
            key = esc(&r.entry.key),
            m = r.mentions.len(),
            tip = esc(&ref_tooltip(r)),
        );
    }
    svg.push_str("</g>\n<g class=\"column nature-column\">\n");
    for node in &right {
        class_node(&mut svg, "nature", RIGHT_X, node);
    }
    svg.push_str("</g>\n</svg>\n");

    let mut totals = String::from("<table class=\"totals\">\n<tr><th>class</th><th>mentions</th></tr>\n");
    for (l, c) in t.sentiment.iter().chain(t.nature.iter()) {
        let _ = writeln!(totals, "<tr><td>{l}</td><td>{c}</td></tr>");
    }
    let _ = writeln!(totals, "<tr><td>all</td><td>{}</td></tr>\n</table>", t.mentions);

    let mut diag = String::from("<footer class=\"diagnostics\">\n<h2>Diagnostics</h2>\n");
    if a.diagnostics.is_empty() {
        diag.push_str("<p>No diagnostics.</p>\n");
    } else {
        diag.push_str("<ul>\n");
        for d in &a.diagnostics {
            let _ = writeln!(diag, "<li class=\"{}\">{}</li>", d.kind.as_str(), esc(&d.message));
        }
        diag.push_str("</ul>\n");
    }
    diag.push_str("</footer>\n");

    format!(
        "<!DOCTYPE html>\n<html xmlns=\"http://www.w3.org/1999/xhtml\" lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n<title>Citation report: {id}</title>\n<style>{STYLE}</style>\n</head>\n<body>\n<h1>Citation report: {id}</h1>\n<p>{refs} references, {m} citing mentions. Edge width grows with the number of mentions; hover a node or edge for details.</p>\n{svg}<h2>Totals</h2>\n{totals}{diag}</body>\n</html>\n",
        id = esc(&a.doc_id),
        refs = n,
        m = t.mentions,
    )
}

/// Per-reference mention counts as a plain-text table.
pub fn summary_text(a: &DocumentAnalysis) -> String {
    let mut header = vec!["Ref".to_string(), "Key".to_string()];
    let labels: Vec<Label> = Task::Sentiment.labels().into_iter().chain(Task::Nature.labels()).collect();
    header.extend(labels.iter().map(|l| l.to_string()));
    let mut rows: Vec<Vec<String>> = a
        .references
        .iter()
        .map(|r| {
            let mut row = vec![format!("[{}]", r.number), r.entry.key.clone()];
            row.extend(labels.iter().map(|l| r.count(*l).to_string()));
            row
        })
        .collect();
    let mut total = vec!["all".to_string(), String::new()];
    total.extend(labels.iter().map(|l| {
        a.totals
            .sentiment
            .get(l)
            .or_else(|| a.totals.nature.get(l))
            .copied()
            .unwrap_or(0)
            .to_string()
    }));
    rows.push(total);
    format!("{}: {} references, {} mentions\n{}", a.doc_id, a.references.len(), a.totals.mentions, render_table(&header, &rows))
}
