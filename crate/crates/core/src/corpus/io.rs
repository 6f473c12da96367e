use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Corpus, FewShotSplit};
use crate::config::TemplateConfig;
use crate::ontology::{DialogueState, Ontology};
use crate::summarize::Summarizer;
use crate::write_atomic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitRole {
    Pretrain,
    Finetune,
}

/// One line of a training file. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainingRecord {
    pub dialogue_id: String,
    pub turn_index: usize,
    pub split_role: SplitRole,
    pub history: String,
    pub gold_summary: String,
    pub gold_state: DialogueState,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExportReport {
    pub records: usize,
    pub pretrain_records: usize,
    pub finetune_records: usize,
    /// Dialogues left out, with the reason.
    pub skipped: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("dialogue `{0}` is in the split but not in the corpus")]
    UnknownDialogue(String),
    #[error("dialogue `{0}` is listed as both pretrain and finetune")]
    Overlap(String),
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Writes one JSONL record per turn of every dialogue in `split`, sorted by
/// dialogue id then turn. Dialogues whose states cannot be rendered
/// faithfully are skipped and listed in the report. The file is written to
/// a temporary sibling and renamed, so a failed export leaves nothing behind.
pub fn export_training_file(
    split: &FewShotSplit,
    corpus: &Corpus,
    ont: &Ontology,
    cfg: &TemplateConfig,
    out: impl AsRef<Path>,
) -> Result<ExportReport, ExportError> {
    let index = corpus.index();
    let mut roles: BTreeMap<&str, SplitRole> = BTreeMap::new();
    for id in &split.pretrain_ids {
        roles.insert(id, SplitRole::Pretrain);
    }
    for id in &split.finetune_ids {
        if roles.insert(id, SplitRole::Finetune).is_some() {
            return Err(ExportError::Overlap(id.clone()));
        }
    }

    let summarizer = Summarizer::new(ont);
    let mut report = ExportReport::default();
    let mut records = Vec::new();
    for (id, role) in roles {
        let dialogue = index
            .get(id)
            .ok_or_else(|| ExportError::UnknownDialogue(id.to_string()))?;
        let labels = match summarizer.synthesize_labels(dialogue, cfg, split.seed) {
            Ok(labels) => labels,
            Err(err) => {
                report.skipped.push(err.to_string());
                continue;
            }
        };
        for (turn, (index, summary)) in dialogue.turns.iter().zip(labels) {
            records.push(TrainingRecord {
                dialogue_id: dialogue.id.clone(),
                turn_index: index,
                split_role: role,
                history: turn.history_text.clone(),
                gold_summary: summary.into_string(),
                gold_state: turn.state.clone(),
            });
            match role {
                SplitRole::Pretrain => report.pretrain_records += 1,
                SplitRole::Finetune => report.finetune_records += 1,
            }
        }
    }
    report.records = records.len();

    let path = out.as_ref();
    write_atomic(path, |w| {
        for record in &records {
            serde_json::to_writer(&mut *w, record)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    })
    .map_err(|source| ExportError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub dialogue_id: String,
    pub turn_index: usize,
    pub predicted_summary: String,
}

/// Parsed predictions, sorted by (dialogue id, turn), plus notes about
/// duplicate keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Predictions {
    pub records: Vec<PredictionRecord>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum PredictionError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

pub fn load_predictions(path: impl AsRef<Path>) -> Result<Predictions, PredictionError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| PredictionError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_predictions(&text)
}

pub(crate) fn parse_predictions(text: &str) -> Result<Predictions, PredictionError> {
    let mut by_key: BTreeMap<(String, usize), (usize, PredictionRecord)> = BTreeMap::new();
    let mut diagnostics = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| PredictionError::Line {
            line: line_no,
            message,
        };
        let value: Value = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        for key in ["dialogue_id", "turn_index", "predicted_summary"] {
            if value.get(key).is_none() {
                return Err(err(format!("missing `{key}`")));
            }
        }
        let record: PredictionRecord = serde_json::from_value(value).map_err(|e| err(e.to_string()))?;
        let label = format!("{} turn {}", record.dialogue_id, record.turn_index);
        let key = (record.dialogue_id.clone(), record.turn_index);
        if let Some((previous, _)) = by_key.insert(key, (line_no, record)) {
            diagnostics.push(format!(
                "line {line_no}: duplicate prediction for {label} replaces line {previous}"
            ));
        }
    }
    Ok(Predictions {
        records: by_key.into_values().map(|(_, r)| r).collect(),
        diagnostics,
    })
}
