use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use senticite::classify::TrainConfig;
use senticite::features::FeatureConfig;
use senticite::ingest::RawDocument;
use senticite::report::{render_html, summary_text, Analyzer, EDGE_MAX_WIDTH};
use senticite::resources::Resources;

fn analyzer() -> &'static Analyzer {
    static A: OnceLock<Analyzer> = OnceLock::new();
    A.get_or_init(|| {
        Analyzer::train_bundled(&TrainConfig::default(), &FeatureConfig::combination(), Resources::bundled()).unwrap()
    })
}

const CLAUSES: &[&str] = &[
    "We build on the excellent parser of",
    "Unlike the flawed evaluation in",
    "The dataset was taken from",
    "Further details are given in",
    "Our method clearly outperforms",
    "A survey appears in",
];

fn document() -> impl Strategy<Value = (usize, String)> {
    (1usize..12).prop_flat_map(|n| {
        let cite = (1..=n).prop_map(|k| format!("[{k}]"));
        let sentence = (prop::sample::select(CLAUSES), prop::collection::vec(cite, 1..3))
            .prop_map(|(c, keys)| format!("{c} {}.", keys.join(", ")));
        (Just(n), prop::collection::vec(sentence, 0..20)).prop_map(|(n, body)| {
            let mut doc = format!("1 Introduction\n{}\n\nReferences\n", body.join(" "));
            for k in 1..=n {
                doc.push_str(&format!("[{k}] B. Writer{k}. Paper number {k} & more. Venue, 2015.\n"));
            }
            (n, doc)
        })
    })
}

fn parse(html: &str) -> roxmltree::Document<'_> {
    let opt = roxmltree::ParsingOptions {
        allow_dtd: true,
        ..Default::default()
    };
    roxmltree::Document::parse_with_options(html, opt).expect("well-formed")
}

fn has_class(n: &roxmltree::Node, class: &str) -> bool {
    n.attribute("class").is_some_and(|c| c.split(' ').any(|t| t == class))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn report_structure((n, text) in document()) {
        let a = analyzer().analyze(&RawDocument::new("p", text).unwrap()).unwrap();
        prop_assert_eq!(a.totals.clone(), a.recount());
        let html = render_html(&a);
        prop_assert_eq!(&html, &render_html(&a));
        let doc = parse(&html);

        let refs: Vec<_> = doc.descendants().filter(|x| has_class(x, "ref-node")).collect();
        prop_assert_eq!(refs.len(), n);
        let ids: BTreeSet<&str> = refs.iter().filter_map(|r| r.attribute("id")).collect();
        prop_assert_eq!(ids.len(), n);

        // One tooltip line per mention, attached to exactly one reference.
        let mut lines = 0;
        for (r, analysis) in refs.iter().zip(&a.references) {
            let title = r.children().find(|c| c.has_tag_name("title")).unwrap().text().unwrap_or("");
            let here = title.lines().filter(|l| l.starts_with("- ")).count();
            prop_assert_eq!(here, analysis.mentions.len());
            lines += here;
        }
        prop_assert_eq!(lines, a.totals.mentions);

        let mut edges: Vec<(usize, f64)> = doc
            .descendants()
            .filter(|x| has_class(x, "edge"))
            .map(|e| (e.attribute("data-count").unwrap().parse().unwrap(), e.attribute("stroke-width").unwrap().parse().unwrap()))
            .collect();
        edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (count, width) in &edges {
            prop_assert!(*count >= 1 && *width > 0.0 && *width <= EDGE_MAX_WIDTH);
        }
        for w in edges.windows(2) {
            prop_assert!(w[0].1 <= w[1].1);
        }
        prop_assert!(summary_text(&a).contains(&a.totals.mentions.to_string()));
    }
}
