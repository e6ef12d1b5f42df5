//! Run settings: flags override the config file, which overrides defaults.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use senticite::classify::{Task, TrainConfig};
use senticite::features::{FeatureConfig, FeaturePreset};

use crate::UsageError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// Classification task.
    #[arg(long, value_parser = parse_task)]
    pub task: Option<Task>,
    /// Feature preset.
    #[arg(long, value_parser = parse_preset)]
    pub features: Option<FeaturePreset>,
    /// Seed for shuffling and splitting.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Learning rate.
    #[arg(long)]
    pub lr: Option<f64>,
    /// Regularization strength.
    #[arg(long)]
    pub reg: Option<f64>,
    /// Perceptron margins as `POS,NEG`.
    #[arg(long, value_name = "POS,NEG", value_parser = parse_margins)]
    pub margins: Option<(f64, f64)>,
    /// Fusion policy file.
    #[arg(long, value_name = "FILE")]
    pub policy: Option<PathBuf>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads for batch work.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

/// Contents of a `--config` TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    task: Option<String>,
    features: Option<String>,
    seed: Option<u64>,
    epochs: Option<usize>,
    lr: Option<f64>,
    reg: Option<f64>,
    margins: Option<[f64; 2]>,
    policy: Option<PathBuf>,
    out: Option<PathBuf>,
    jobs: Option<u16>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub task: Option<Task>,
    pub preset: FeaturePreset,
    pub train: TrainConfig,
    pub policy: Option<PathBuf>,
    pub out: PathBuf,
    pub jobs: usize,
}

impl Settings {
    pub fn resolve(flags: &Opts, file: &FileConfig) -> Result<Self, UsageError> {
        let defaults = TrainConfig::default();
        let file_task = file.task.as_deref().map(parse_task).transpose().map_err(UsageError)?;
        let file_preset = file.features.as_deref().map(parse_preset).transpose().map_err(UsageError)?;
        let margins = flags
            .margins
            .or(file.margins.map(|[p, n]| (p, n)))
            .unwrap_or((defaults.positive_margin, defaults.negative_margin));
        let train = TrainConfig {
            epochs: flags.epochs.or(file.epochs).unwrap_or(defaults.epochs),
            learning_rate: flags.lr.or(file.lr).unwrap_or(defaults.learning_rate),
            regularization: flags.reg.or(file.reg).unwrap_or(defaults.regularization),
            positive_margin: margins.0,
            negative_margin: margins.1,
            shuffle_seed: flags.seed.or(file.seed).unwrap_or(defaults.shuffle_seed),
        };
        train.validate().map_err(|e| UsageError(e.to_string()))?;
        let jobs = flags.jobs.or(file.jobs).map(usize::from).unwrap_or_else(|| {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        });
        if jobs == 0 {
            return Err(UsageError("jobs must be at least 1".into()));
        }
        Ok(Settings {
            task: flags.task.or(file_task),
            preset: flags.features.or(file_preset).unwrap_or(FeaturePreset::Combination),
            train,
            policy: flags.policy.clone().or_else(|| file.policy.clone()),
            out: flags.out.clone().or_else(|| file.out.clone()).unwrap_or_else(|| PathBuf::from(".")),
            jobs,
        })
    }

    pub fn seed(&self) -> u64 {
        self.train.shuffle_seed
    }

    pub fn features(&self) -> FeatureConfig {
        FeatureConfig::preset(self.preset)
    }
}

pub fn parse_task(s: &str) -> Result<Task, String> {
    s.parse().map_err(|_| format!("unknown task `{s}` (expected sentiment or nature)"))
}

pub fn parse_preset(s: &str) -> Result<FeaturePreset, String> {
    s.parse().map_err(|e: senticite::Error| e.to_string())
}

pub fn parse_margins(s: &str) -> Result<(f64, f64), String> {
    let (p, n) = s.split_once(',').ok_or("expected two comma-separated numbers")?;
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((num(p)?, num(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file: FileConfig = toml::from_str("epochs = 5\nlr = 0.2\nfeatures = \"only-pos\"\nmargins = [0.5, 0.25]").unwrap();
        let flags = Opts {
            epochs: Some(9),
            ..Opts::default()
        };
        let s = Settings::resolve(&flags, &file).unwrap();
        assert_eq!(s.train.epochs, 9);
        assert_eq!(s.train.learning_rate, 0.2);
        assert_eq!(s.train.regularization, TrainConfig::default().regularization);
        assert_eq!((s.train.positive_margin, s.train.negative_margin), (0.5, 0.25));
        assert_eq!(s.preset, FeaturePreset::OnlyPos);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_usage_errors() {
        assert!(toml::from_str::<FileConfig>("epoch = 5").is_err());
        let file: FileConfig = toml::from_str("task = \"mood\"").unwrap();
        assert!(Settings::resolve(&Opts::default(), &file).is_err());
        let flags = Opts {
            lr: Some(-1.0),
            ..Opts::default()
        };
        assert!(Settings::resolve(&flags, &FileConfig::default()).is_err());
    }

    #[test]
    fn margins_syntax() {
        assert_eq!(parse_margins("1, 0.5").unwrap(), (1.0, 0.5));
        assert!(parse_margins("1").is_err());
        assert!(parse_margins("a,b").is_err());
    }
}
