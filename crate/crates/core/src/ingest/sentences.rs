use super::{heading_lines, CleanDocument, Section, Sentence, Span, Token, TokenKind};

fn is_terminal(t: &Token) -> bool {
    t.kind == TokenKind::Punctuation && matches!(t.surface.as_str(), "." | "!" | "?")
}

fn is_closer(t: &Token) -> bool {
    t.kind == TokenKind::Punctuation
        && matches!(t.surface.as_str(), ")" | "]" | "\"" | "”" | "’" | "'")
}

fn starts_lowercase(t: &Token) -> bool {
    t.kind == TokenKind::Word && t.surface.chars().next().is_some_and(char::is_lowercase)
}

fn has_blank_line(gap: &str) -> bool {
    let mut lines = gap.split('\n');
    lines.next();
    let n = gap.matches('\n').count();
    n >= 2 && lines.take(n - 1).any(|l| l.trim().is_empty())
}

/// Groups tokens into sentences.
///
/// A sentence ends at `.`, `!` or `?` (plus any directly attached closing
/// quote or bracket) unless the next word starts in lower case.
/// Abbreviations never end a sentence because the tokenizer keeps their
/// period inside the word. Line structure also forces a break: at blank
/// lines, around heading lines, and before a line that opens with a
/// bracketed reference number.
pub fn split_sentences(doc: &CleanDocument, tokens: &[Token]) -> Vec<Sentence> {
    let text = doc.text.as_str();
    let headings: Vec<Span> = heading_lines(text).into_iter().map(|h| h.span).collect();
    let in_heading = |pos: usize| {
        let i = headings.partition_point(|h| h.end < pos);
        headings.get(i).is_some_and(|h| h.start <= pos && pos <= h.end)
    };

    let mut sentences = Vec::new();
    let mut start: Option<usize> = None;
    let close = |from: usize, to: usize, out: &mut Vec<Sentence>| {
        out.push(Sentence {
            tokens: from..to,
            span: Span::new(tokens[from].span.start, tokens[to - 1].span.end),
            section: Section::Other,
        });
    };

    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        if let Some(s) = start {
            let prev = &tokens[i - 1];
            let gap = &text[prev.span.end..tok.span.start];
            if gap.contains('\n') {
                let line_opens_with_ref = tok.kind == TokenKind::CitationCandidate
                    && tok.surface.starts_with('[')
                    && gap.rsplit('\n').next().is_some_and(|l| l.trim().is_empty());
                if has_blank_line(gap)
                    || in_heading(prev.span.start)
                    || in_heading(tok.span.start)
                    || line_opens_with_ref
                {
                    close(s, i, &mut sentences);
                    start = None;
                }
            }
        }
        if start.is_none() {
            start = Some(i);
        }
        i += 1;
        if is_terminal(tok) {
            while i < tokens.len()
                && is_closer(&tokens[i])
                && tokens[i].span.start == tokens[i - 1].span.end
            {
                i += 1;
            }
            if tokens.get(i).is_some_and(starts_lowercase) {
                continue;
            }
            close(start.take().unwrap(), i, &mut sentences);
        }
    }
    if let Some(s) = start {
        close(s, tokens.len(), &mut sentences);
    }
    sentences
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::tokenize;

    fn split(text: &str) -> Vec<String> {
        let doc = CleanDocument {
            doc_id: "t".into(),
            text: text.into(),
            removed_spans: vec![],
        };
        let tokens = tokenize(&doc);
        split_sentences(&doc, &tokens)
            .iter()
            .map(|s| s.text(text).to_string())
            .collect()
    }

    #[test]
    fn two_sentences() {
        assert_eq!(split("We cite [1]. It works."), ["We cite [1].", "It works."]);
    }

    #[test]
    fn et_al_does_not_split() {
        assert_eq!(
            split("See Smith et al. [2] for details."),
            ["See Smith et al. [2] for details."]
        );
    }

    #[test]
    fn empty() {
        assert!(split("").is_empty());
    }

    #[test]
    fn fig_abbreviation_and_decimal() {
        assert_eq!(
            split("As Fig. 2 shows, accuracy is 61.9%. Next."),
            ["As Fig. 2 shows, accuracy is 61.9%.", "Next."]
        );
    }

    #[test]
    fn closing_quote_attached() {
        assert_eq!(
            split("He wrote “it works.” Then left."),
            ["He wrote “it works.”", "Then left."]
        );
    }

    #[test]
    fn reference_lines_split() {
        assert_eq!(
            split("References\n[1] A. B, Title one, 2001\n[2] C. D, Title\ntwo, 2002\n"),
            [
                "References",
                "[1] A. B, Title one, 2001",
                "[2] C. D, Title\ntwo, 2002"
            ]
        );
    }

    #[test]
    fn wrapped_line_joins() {
        assert_eq!(
            split("The method of\nthe authors works [3]."),
            ["The method of\nthe authors works [3]."]
        );
    }
}
