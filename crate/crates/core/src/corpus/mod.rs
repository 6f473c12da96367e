//! Dialogues, MultiWoZ ingestion, few-shot splits and JSONL files.

mod fewshot;
mod io;
mod multiwoz;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::ontology::{DialogueState, Domain};

pub use fewshot::{
    sample_dialogues, sample_fewshot, EligibleFilter, FewShotMode, FewShotSplit, Ratio, SampleError,
};
pub use io::{
    export_training_file, load_predictions, ExportError, ExportReport, PredictionError,
    PredictionRecord, Predictions, SplitRole, TrainingRecord,
};
pub use multiwoz::{load_multiwoz, LoadError, MultiwozVersion};

/// One user turn with the belief state after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Turn {
    pub index: usize,
    /// System utterance preceding the user's; empty for the first turn.
    pub system_utterance: String,
    pub user_utterance: String,
    pub state: DialogueState,
    /// `system: …` / `user: …` lines for every exchange up to this turn.
    pub history_text: String,
}

impl Turn {
    /// Builds a turn with a single-exchange history.
    pub fn new(
        index: usize,
        system_utterance: impl Into<String>,
        user_utterance: impl Into<String>,
        state: DialogueState,
    ) -> Self {
        let system_utterance = system_utterance.into();
        let user_utterance = user_utterance.into();
        let history_text = exchange(&system_utterance, &user_utterance);
        Self {
            index,
            system_utterance,
            user_utterance,
            state,
            history_text,
        }
    }
}

pub(crate) fn exchange(system: &str, user: &str) -> String {
    if system.is_empty() {
        format!("user: {user}")
    } else {
        format!("system: {system}\nuser: {user}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dialogue {
    pub id: String,
    /// Annotated domains among the supported ones, in canonical order.
    pub domains: Vec<Domain>,
    pub turns: Vec<Turn>,
}

impl Dialogue {
    pub fn contains(&self, domain: Domain) -> bool {
        self.domains.contains(&domain)
    }

    pub fn is_single_domain(&self) -> bool {
        self.domains.len() == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        })
    }
}

/// Something the loader skipped or repaired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoadDiagnostic {
    pub dialogue_id: String,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub version: Option<MultiwozVersion>,
    pub train: Vec<Dialogue>,
    pub dev: Vec<Dialogue>,
    pub test: Vec<Dialogue>,
    pub diagnostics: Vec<LoadDiagnostic>,
}

impl Corpus {
    pub fn from_splits(train: Vec<Dialogue>, dev: Vec<Dialogue>, test: Vec<Dialogue>) -> Self {
        Self {
            version: None,
            train,
            dev,
            test,
            diagnostics: Vec::new(),
        }
    }

    pub fn split(&self, split: Split) -> &[Dialogue] {
        match split {
            Split::Train => &self.train,
            Split::Dev => &self.dev,
            Split::Test => &self.test,
        }
    }

    pub fn dialogues(&self) -> impl Iterator<Item = &Dialogue> {
        self.train.iter().chain(&self.dev).chain(&self.test)
    }

    pub fn len(&self) -> usize {
        self.train.len() + self.dev.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Id lookup across all splits.
    pub fn index(&self) -> HashMap<&str, &Dialogue> {
        self.dialogues().map(|d| (d.id.as_str(), d)).collect()
    }

    /// Number of `split` dialogues containing `domain`, and how many of those
    /// contain no other domain.
    pub fn domain_counts(&self, split: Split, domain: Domain) -> (usize, usize) {
        let with: Vec<_> = self.split(split).iter().filter(|d| d.contains(domain)).collect();
        let single = with.iter().filter(|d| d.is_single_domain()).count();
        (with.len(), single)
    }
}
