use proptest::prelude::*;

use senticite::ingest::{clean_text, split_sentences, tokenize, RawDocument};

const FRAGMENTS: &[&str] = &[
    "The", "method", "of", "Smith", "et al.", "(Smith, 2010)", "(Jones and Lee, 2012a)",
    "[3]", "[4, 7]", "[12][13]", "e.g.", "Fig. 2", "3.5%", "x[i]", "results", "improve",
    ".", ",", ";", "!", "?", "\"", "'s", "-", "\n", "\n\n", "1 Introduction\n", "Table 4:",
    "\u{fb01}ne", "naïve", "\t", "\u{0007}", "References\n", "[1] A. Author. Title.\n",
];

fn document() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(FRAGMENTS), 0..60).prop_map(|parts| parts.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn token_spans_are_in_bounds_and_increasing(text in document()) {
        let clean = clean_text(&RawDocument::new("p", text).unwrap());
        let tokens = tokenize(&clean);
        for t in &tokens {
            prop_assert!(t.span.start < t.span.end && t.span.end <= clean.text.len());
            prop_assert_eq!(&clean.text[t.span.start..t.span.end], t.surface.as_str());
        }
        for w in tokens.windows(2) {
            prop_assert!(w[0].span.end <= w[1].span.start);
        }
    }

    #[test]
    fn cleaning_is_idempotent(text in document()) {
        let once = clean_text(&RawDocument::new("p", text).unwrap());
        let twice = clean_text(&RawDocument::new("p", once.text.clone()).unwrap());
        prop_assert_eq!(once.text, twice.text);
    }

    #[test]
    fn cleaned_text_has_no_stray_controls(text in document()) {
        let clean = clean_text(&RawDocument::new("p", text).unwrap());
        prop_assert!(clean.text.chars().all(|c| c == '\n' || !c.is_control()));
        for w in clean.removed_spans.windows(2) {
            prop_assert!(w[0].end <= w[1].start);
        }
    }

    #[test]
    fn sentences_partition_tokens(text in document()) {
        let clean = clean_text(&RawDocument::new("p", text).unwrap());
        let tokens = tokenize(&clean);
        let sentences = split_sentences(&clean, &tokens);
        let total: usize = sentences.iter().map(|s| s.tokens.len()).sum();
        prop_assert_eq!(total, tokens.len());
        for s in &sentences {
            prop_assert!(!s.tokens.is_empty());
        }
        for w in sentences.windows(2) {
            prop_assert_eq!(w[0].tokens.end, w[1].tokens.start);
            prop_assert!(w[0].span.end <= w[1].span.start);
        }
    }

    #[test]
    fn identical_bytes_give_identical_output(text in document()) {
        let a = clean_text(&RawDocument::from_bytes("p", text.as_bytes()).unwrap());
        let b = clean_text(&RawDocument::from_bytes("p", text.as_bytes()).unwrap());
        let (ta, tb) = (tokenize(&a), tokenize(&b));
        prop_assert_eq!(&ta, &tb);
        prop_assert_eq!(split_sentences(&a, &ta), split_sentences(&b, &tb));
    }
}

#[test]
fn invalid_utf8_is_rejected_with_offset() {
    let err = RawDocument::from_bytes("p", b"ok \xff bad").unwrap_err();
    assert!(err.to_string().contains('3'), "{err}");
}
