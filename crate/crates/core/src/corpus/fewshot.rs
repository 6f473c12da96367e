use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Corpus, Dialogue};
use crate::ontology::Domain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FewShotMode {
    /// Pretrain on dialogues without the target domain, fine-tune on a
    /// sample of those with it.
    CrossDomain,
    /// Fine-tune on a sample of target-domain dialogues only.
    CrossTask,
    /// Fine-tune on a sample of all dialogues.
    MultiDomain,
}

impl FromStr for FewShotMode {
    type Err = SampleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "cd" | "cross_domain" => Ok(FewShotMode::CrossDomain),
            "ct" | "cross_task" => Ok(FewShotMode::CrossTask),
            "md" | "multi_domain" => Ok(FewShotMode::MultiDomain),
            _ => Err(SampleError::UnknownMode(s.to_string())),
        }
    }
}

/// Fraction of eligible dialogues used for fine-tuning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ratio {
    OnePercent,
    FivePercent,
    TenPercent,
    Full,
}

impl Ratio {
    pub const ALL: [Ratio; 4] = [Ratio::OnePercent, Ratio::FivePercent, Ratio::TenPercent, Ratio::Full];

    pub fn per_mille(self) -> usize {
        match self {
            Ratio::OnePercent => 10,
            Ratio::FivePercent => 50,
            Ratio::TenPercent => 100,
            Ratio::Full => 1000,
        }
    }

    pub fn value(self) -> f64 {
        self.per_mille() as f64 / 1000.0
    }

    /// `round(ratio * n)` with halves rounded up, in exact integer arithmetic.
    pub fn sample_size(self, n: usize) -> usize {
        (n * self.per_mille() + 500) / 1000
    }
}

impl TryFrom<f64> for Ratio {
    type Error = SampleError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Ratio::ALL
            .into_iter()
            .find(|r| (r.value() - value).abs() < 1e-9)
            .ok_or(SampleError::Ratio(value))
    }
}

impl FromStr for Ratio {
    type Err = SampleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = match s.strip_suffix('%') {
            Some(pct) => pct.trim().parse::<f64>().map(|p| p / 100.0),
            None => s.trim().parse::<f64>(),
        };
        value
            .map_err(|_| SampleError::UnparsableRatio(s.to_string()))
            .and_then(Ratio::try_from)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        Ratio::try_from(v).map_err(serde::de::Error::custom)
    }
}

/// Which target-domain dialogues may be sampled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EligibleFilter {
    /// Every dialogue that contains the target domain.
    #[default]
    Containing,
    /// Only dialogues whose sole domain is the target.
    SingleDomainOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FewShotSplit {
    pub mode: FewShotMode,
    pub target_domain: Option<Domain>,
    pub ratio: Ratio,
    pub seed: u64,
    #[serde(default)]
    pub eligible: EligibleFilter,
    pub pretrain_ids: Vec<String>,
    pub finetune_ids: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SampleError {
    #[error("ratio {0} is not one of 0.01, 0.05, 0.1, 1.0")]
    Ratio(f64),
    #[error("cannot read ratio `{0}`")]
    UnparsableRatio(String),
    #[error("unknown few-shot mode `{0}` (expected cd, ct or md)")]
    UnknownMode(String),
    #[error("{0:?} mode needs a target domain")]
    MissingTarget(FewShotMode),
    #[error("multi-domain mode takes no target domain")]
    UnexpectedTarget,
    #[error("no eligible dialogues")]
    NoEligible,
    #[error("ratio {ratio} of {eligible} eligible dialogues rounds to zero")]
    EmptySample { ratio: Ratio, eligible: usize },
}

/// Samples a split from the corpus's train dialogues.
pub fn sample_fewshot(
    corpus: &Corpus,
    mode: FewShotMode,
    target: Option<Domain>,
    ratio: Ratio,
    seed: u64,
) -> Result<FewShotSplit, SampleError> {
    sample_dialogues(&corpus.train, mode, target, ratio, seed, EligibleFilter::default())
}

/// Samples a split from an arbitrary dialogue pool.
///
/// Eligible ids are sorted before a seeded shuffle, so the result depends
/// only on the id set, never on load order.
pub fn sample_dialogues(
    pool: &[Dialogue],
    mode: FewShotMode,
    target: Option<Domain>,
    ratio: Ratio,
    seed: u64,
    filter: EligibleFilter,
) -> Result<FewShotSplit, SampleError> {
    match (mode, target) {
        (FewShotMode::MultiDomain, Some(_)) => return Err(SampleError::UnexpectedTarget),
        (FewShotMode::CrossDomain | FewShotMode::CrossTask, None) => {
            return Err(SampleError::MissingTarget(mode))
        }
        _ => {}
    }
    let eligible_dialogue = |d: &Dialogue| match target {
        None => filter == EligibleFilter::Containing || d.is_single_domain(),
        Some(t) => d.contains(t) && (filter == EligibleFilter::Containing || d.is_single_domain()),
    };
    let mut eligible: Vec<String> = pool
        .iter()
        .filter(|d| eligible_dialogue(d))
        .map(|d| d.id.clone())
        .collect();
    if eligible.is_empty() {
        return Err(SampleError::NoEligible);
    }
    let n = ratio.sample_size(eligible.len());
    if n == 0 {
        return Err(SampleError::EmptySample {
            ratio,
            eligible: eligible.len(),
        });
    }
    eligible.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    eligible.shuffle(&mut rng);
    let mut finetune_ids: Vec<String> = eligible.into_iter().take(n).collect();
    finetune_ids.sort();

    let mut pretrain_ids: Vec<String> = match (mode, target) {
        (FewShotMode::CrossDomain, Some(t)) => pool
            .iter()
            .filter(|d| !d.contains(t))
            .map(|d| d.id.clone())
            .collect(),
        _ => Vec::new(),
    };
    pretrain_ids.sort();

    Ok(FewShotSplit {
        mode,
        target_domain: target,
        ratio,
        seed,
        eligible: filter,
        pretrain_ids,
        finetune_ids,
    })
}
