use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Sentiment,
    Nature,
}

impl Task {
    /// All labels of the task in the fixed tie-break order.
    pub fn labels(&self) -> Vec<Label> {
        match self {
            Task::Sentiment => SentimentLabel::ALL.iter().map(|l| Label::Sentiment(*l)).collect(),
            Task::Nature => NatureLabel::ALL.iter().map(|l| Label::Nature(*l)).collect(),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Task::Sentiment => "sentiment",
            Task::Nature => "nature",
        }
    }
}

impl std::str::FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sentiment" => Ok(Task::Sentiment),
            "nature" => Ok(Task::Nature),
            _ => Err(Error::InvalidArgument(format!("unknown task `{s}`"))),
        }
    }
}

impl std::fmt::Display for Task {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SentimentLabel {
    Positive,
    Neutral,
    Negative,
}

impl SentimentLabel {
    pub const ALL: [SentimentLabel; 3] = [
        SentimentLabel::Positive,
        SentimentLabel::Neutral,
        SentimentLabel::Negative,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NatureLabel {
    Usage,
    Reading,
    Dataset,
    Reference,
    Rest,
}

impl NatureLabel {
    pub const ALL: [NatureLabel; 5] = [
        NatureLabel::Usage,
        NatureLabel::Reading,
        NatureLabel::Dataset,
        NatureLabel::Reference,
        NatureLabel::Rest,
    ];
}

/// A class label of either task. The derived order is the tie-break order
/// within each task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Label {
    Sentiment(SentimentLabel),
    Nature(NatureLabel),
}

impl Label {
    pub const POSITIVE: Label = Label::Sentiment(SentimentLabel::Positive);
    pub const NEUTRAL: Label = Label::Sentiment(SentimentLabel::Neutral);
    pub const NEGATIVE: Label = Label::Sentiment(SentimentLabel::Negative);
    pub const USAGE: Label = Label::Nature(NatureLabel::Usage);
    pub const READING: Label = Label::Nature(NatureLabel::Reading);
    pub const DATASET: Label = Label::Nature(NatureLabel::Dataset);
    pub const REFERENCE: Label = Label::Nature(NatureLabel::Reference);
    pub const REST: Label = Label::Nature(NatureLabel::Rest);

    pub fn task(&self) -> Task {
        match self {
            Label::Sentiment(_) => Task::Sentiment,
            Label::Nature(_) => Task::Nature,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Sentiment(SentimentLabel::Positive) => "positive",
            Label::Sentiment(SentimentLabel::Neutral) => "neutral",
            Label::Sentiment(SentimentLabel::Negative) => "negative",
            Label::Nature(NatureLabel::Usage) => "usage",
            Label::Nature(NatureLabel::Reading) => "reading",
            Label::Nature(NatureLabel::Dataset) => "dataset",
            Label::Nature(NatureLabel::Reference) => "reference",
            Label::Nature(NatureLabel::Rest) => "rest",
        }
    }

    /// Label names are unique across tasks, so no task is needed.
    pub fn from_name(s: &str) -> Option<Label> {
        [Task::Sentiment, Task::Nature]
            .iter()
            .flat_map(|t| t.labels())
            .find(|l| l.as_str() == s)
    }

    pub fn parse(task: Task, s: &str) -> Result<Label> {
        match Label::from_name(s) {
            Some(l) if l.task() == task => Ok(l),
            Some(l) => Err(Error::InvalidArgument(format!(
                "label `{s}` belongs to the {} task, not {task}",
                l.task()
            ))),
            None => Err(Error::InvalidArgument(format!(
                "unknown {task} label `{s}`"
            ))),
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.as_str().to_string()
    }
}

impl TryFrom<String> for Label {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        Label::from_name(&s).ok_or_else(|| format!("unknown label `{s}`"))
    }
}
