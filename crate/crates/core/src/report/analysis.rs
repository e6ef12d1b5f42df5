use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::citation::{BibliographyEntry, Diagnostic};
use crate::classify::{predict, train_paum, train_svm, Label, LinearModel, Task, TrainConfig};
use crate::error::{Error, Result};
use crate::eval::{bundled_corpus, to_examples};
use crate::features::FeatureConfig;
use crate::fusion::{fuse, FusionPolicy};
use crate::ingest::{RawDocument, Section};
use crate::pipeline::{parse_document, sentence_features};
use crate::resources::Resources;

/// One citing sentence attached to one bibliography entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mention {
    pub sentence_id: usize,
    pub sentence: String,
    pub section: Section,
    /// Fused sentiment.
    pub sentiment: Label,
    pub nature: Label,
    pub svm_sentiment: Label,
    pub paum_sentiment: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceAnalysis {
    /// 1-based position in the reference list.
    pub number: usize,
    pub entry: BibliographyEntry,
    /// Nature of the entry itself; always `reference`.
    pub nature: Label,
    pub mentions: Vec<Mention>,
}

impl ReferenceAnalysis {
    pub fn count(&self, label: Label) -> usize {
        self.mentions
            .iter()
            .filter(|m| m.sentiment == label || m.nature == label)
            .count()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub mentions: usize,
    pub sentiment: BTreeMap<Label, usize>,
    pub nature: BTreeMap<Label, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentAnalysis {
    pub doc_id: String,
    pub references: Vec<ReferenceAnalysis>,
    pub totals: Totals,
    pub diagnostics: Vec<Diagnostic>,
}

impl DocumentAnalysis {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("analysis serializes") + "\n"
    }

    /// Totals recomputed from the mention lists.
    pub fn recount(&self) -> Totals {
        let mut t = Totals {
            mentions: 0,
            sentiment: Task::Sentiment.labels().into_iter().map(|l| (l, 0)).collect(),
            nature: Task::Nature.labels().into_iter().map(|l| (l, 0)).collect(),
        };
        for m in self.references.iter().flat_map(|r| &r.mentions) {
            t.mentions += 1;
            *t.sentiment.entry(m.sentiment).or_insert(0) += 1;
            *t.nature.entry(m.nature).or_insert(0) += 1;
        }
        t
    }
}

/// Trained models and resources for whole-document analysis. Sentiment is
/// the fusion of SVM and perceptron; nature comes from the perceptron.
#[derive(Debug, Clone)]
pub struct Analyzer {
    pub sentiment_svm: LinearModel,
    pub sentiment_paum: LinearModel,
    pub nature: LinearModel,
    pub policy: FusionPolicy,
    pub resources: Resources,
}

impl Analyzer {
    pub fn new(
        sentiment_svm: LinearModel,
        sentiment_paum: LinearModel,
        nature: LinearModel,
        policy: FusionPolicy,
        resources: Resources,
    ) -> Result<Self> {
        let expect = |m: &LinearModel, t: Task, what: &str| {
            if m.task == t {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "{what} model is a {} model, expected {t}",
                    m.task
                )))
            }
        };
        expect(&sentiment_svm, Task::Sentiment, "sentiment SVM")?;
        expect(&sentiment_paum, Task::Sentiment, "sentiment perceptron")?;
        expect(&nature, Task::Nature, "nature")?;
        if policy.task() != Task::Sentiment {
            return Err(Error::InvalidArgument("fusion policy must cover sentiment labels".into()));
        }
        Ok(Analyzer {
            sentiment_svm,
            sentiment_paum,
            nature,
            policy,
            resources,
        })
    }

    /// Trains all three models on the bundled mini-corpora and uses the
    /// bundled sentiment policy.
    pub fn train_bundled(config: &TrainConfig, features: &FeatureConfig, resources: Resources) -> Result<Self> {
        let sentiment = to_examples(&bundled_corpus(Task::Sentiment).records, features, &resources);
        let nature = to_examples(&bundled_corpus(Task::Nature).records, features, &resources);
        Analyzer::new(
            train_svm(&sentiment, config)?.with_features(features.clone()),
            train_paum(&sentiment, config)?.with_features(features.clone()),
            train_paum(&nature, config)?.with_features(features.clone()),
            FusionPolicy::bundled_sentiment(),
            resources,
        )
    }

    pub fn analyze(&self, raw: &RawDocument) -> Result<DocumentAnalysis> {
        analyze_document(raw, self)
    }
}

fn features_of(model: &LinearModel) -> FeatureConfig {
    model
        .meta
        .features
        .clone()
        .unwrap_or_else(FeatureConfig::combination)
}

/// Runs the full pipeline on one document and groups mentions by
/// bibliography entry. A sentence citing an entry several times counts once
/// for that entry.
pub fn analyze_document(raw: &RawDocument, analyzer: &Analyzer) -> Result<DocumentAnalysis> {
    let res = &analyzer.resources;
    let parsed = parse_document(raw, res);
    let mut references: Vec<ReferenceAnalysis> = parsed
        .bibliography
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| ReferenceAnalysis {
            number: i + 1,
            entry: e.clone(),
            nature: Label::REFERENCE,
            mentions: Vec::new(),
        })
        .collect();

    let mut marker_base = 0;
    for cs in &parsed.citation_sentences {
        let mut entries: Vec<usize> = (marker_base..marker_base + cs.markers.len())
            .flat_map(|m| parsed.linkage.entries_for(m))
            .collect();
        marker_base += cs.markers.len();
        entries.sort_unstable();
        entries.dedup();
        if entries.is_empty() {
            continue;
        }
        let svm_p = predict(
            &analyzer.sentiment_svm,
            &sentence_features(&parsed, cs, &features_of(&analyzer.sentiment_svm), res),
        );
        let paum_p = predict(
            &analyzer.sentiment_paum,
            &sentence_features(&parsed, cs, &features_of(&analyzer.sentiment_paum), res),
        );
        let sentiment = fuse(&svm_p, &paum_p, &analyzer.policy)?;
        let nature = predict(
            &analyzer.nature,
            &sentence_features(&parsed, cs, &features_of(&analyzer.nature), res),
        )
        .label;
        for e in entries {
            references[e].mentions.push(Mention {
                sentence_id: cs.sentence_id,
                sentence: cs.text.clone(),
                section: cs.sentence.section,
                sentiment,
                nature,
                svm_sentiment: svm_p.label,
                paum_sentiment: paum_p.label,
            });
        }
    }

    let mut analysis = DocumentAnalysis {
        doc_id: raw.doc_id.clone(),
        references,
        totals: Totals::default(),
        diagnostics: parsed.diagnostics,
    };
    analysis.totals = analysis.recount();
    Ok(analysis)
}
