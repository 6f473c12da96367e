use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{bleu4, classify_errors, joint_goal_accuracy, rouge_n_f1, slot_accuracy, ErrorKind, ErrorRecord, MetricError};
use crate::config::{DomainOrder, TemplateConfig};
use crate::corpus::{load_predictions, Corpus, PredictionError, Predictions};
use crate::destate::Diagnostic;
use crate::ontology::{DialogueState, Domain, Ontology};
use crate::summarize::{SummarizeError, Summarizer};
use crate::write_atomic;

/// ROUGE orders reported by the evaluator.
pub const ROUGE_ORDERS: [usize; 3] = [1, 2, 4];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub n_turns: usize,
    pub all_domain_jga: f64,
    /// Computed over every joined turn, with both states restricted to the
    /// domain's slots.
    pub per_domain_jga: BTreeMap<Domain, f64>,
    pub slot_true_acc: f64,
    pub slot_none_acc: f64,
    pub bleu4: f64,
    /// Mean per-turn ROUGE-n F1, keyed by n.
    pub rouge_n_f1: BTreeMap<String, f64>,
    pub error_counts: BTreeMap<ErrorKind, usize>,
    /// Domain order used for the gold summaries the text metrics compare to.
    pub gold_summary_order: DomainOrder,
    pub config: TemplateConfig,
    pub n_parses: usize,
    pub turns_with_diagnostics: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TurnResult {
    pub dialogue_id: String,
    pub turn_index: usize,
    pub exact_match: bool,
    pub predicted_summary: String,
    pub gold_summary: String,
    pub predicted_state: DialogueState,
    pub gold_state: DialogueState,
    pub errors: Vec<ErrorRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub report: Report,
    pub turns: Vec<TurnResult>,
    /// Notes from reading the predictions file.
    pub prediction_diagnostics: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Predictions(#[from] PredictionError),
    #[error("{} predictions match no corpus turn: {}", .0.len(), .0.join(", "))]
    Unmatched(Vec<String>),
    #[error("cannot render gold summary for {dialogue_id} turn {turn_index}: {source}")]
    Gold {
        dialogue_id: String,
        turn_index: usize,
        source: SummarizeError,
    },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Loads a predictions file and scores it; see [`evaluate_predictions`].
pub fn evaluate_run(
    predictions_path: impl AsRef<Path>,
    corpus: &Corpus,
    ont: &Ontology,
    cfg: &TemplateConfig,
) -> Result<Evaluation, EvalError> {
    let predictions = load_predictions(predictions_path)?;
    evaluate_predictions(&predictions, corpus, ont, cfg)
}

/// Parses every predicted summary once and scores it against the gold
/// state and a gold summary rendered in canonical domain order.
pub fn evaluate_predictions(
    predictions: &Predictions,
    corpus: &Corpus,
    ont: &Ontology,
    cfg: &TemplateConfig,
) -> Result<Evaluation, EvalError> {
    let index = corpus.index();
    let mut unmatched = Vec::new();
    let mut joined = Vec::new();
    for record in &predictions.records {
        let turn = index
            .get(record.dialogue_id.as_str())
            .and_then(|d| d.turns.iter().find(|t| t.index == record.turn_index).map(|t| (*d, t)));
        match turn {
            Some(pair) => joined.push((record, pair)),
            None => unmatched.push(format!("{}#{}", record.dialogue_id, record.turn_index)),
        }
    }
    if !unmatched.is_empty() {
        return Err(EvalError::Unmatched(unmatched));
    }
    if joined.is_empty() {
        return Err(MetricError::Empty.into());
    }

    let summarizer = Summarizer::new(ont);
    let parser = summarizer.parser();
    let gold_cfg = cfg.with_order(DomainOrder::Canonical);
    let mut rng = rand::rngs::mock::StepRng::new(0, 1);
    let parses_before = parser.stats().parses;

    let mut turns = Vec::with_capacity(joined.len());
    let mut domains: Vec<Domain> = Vec::new();
    for (record, (dialogue, turn)) in joined {
        for d in &dialogue.domains {
            if !domains.contains(d) {
                domains.push(*d);
            }
        }
        let gold_summary = summarizer
            .render(&turn.state, &gold_cfg, &mut rng)
            .map_err(|source| EvalError::Gold {
                dialogue_id: dialogue.id.clone(),
                turn_index: turn.index,
                source,
            })?
            .into_string();
        let outcome = parser.summary_to_state(&record.predicted_summary, cfg);
        let errors = classify_errors(&outcome.state, &turn.state, ont);
        turns.push(TurnResult {
            dialogue_id: dialogue.id.clone(),
            turn_index: turn.index,
            exact_match: outcome.state == turn.state,
            predicted_summary: record.predicted_summary.clone(),
            gold_summary,
            predicted_state: outcome.state,
            gold_state: turn.state.clone(),
            errors,
            diagnostics: outcome.diagnostics,
        });
    }
    domains.sort();

    let pairs: Vec<(DialogueState, DialogueState)> = turns
        .iter()
        .map(|t| (t.predicted_state.clone(), t.gold_state.clone()))
        .collect();
    let mut per_domain_jga = BTreeMap::new();
    for d in domains {
        per_domain_jga.insert(d, joint_goal_accuracy(&pairs, Some(d))?);
    }
    let (slot_true_acc, slot_none_acc) = slot_accuracy(&pairs, ont)?;
    let candidates: Vec<&str> = turns.iter().map(|t| t.predicted_summary.as_str()).collect();
    let references: Vec<&str> = turns.iter().map(|t| t.gold_summary.as_str()).collect();
    let rouge_n_f1 = ROUGE_ORDERS
        .iter()
        .map(|&n| {
            let total: f64 = turns
                .iter()
                .map(|t| rouge_n_f1(&t.predicted_summary, &t.gold_summary, n))
                .sum();
            (n.to_string(), total / turns.len() as f64)
        })
        .collect();
    let mut error_counts: BTreeMap<ErrorKind, usize> = ErrorKind::ALL.iter().map(|k| (*k, 0)).collect();
    for record in turns.iter().flat_map(|t| &t.errors) {
        *error_counts.get_mut(&record.kind).expect("all kinds") += 1;
    }

    let report = Report {
        n_turns: turns.len(),
        all_domain_jga: joint_goal_accuracy(&pairs, None)?,
        per_domain_jga,
        slot_true_acc,
        slot_none_acc,
        bleu4: bleu4(&candidates, &references)?,
        rouge_n_f1,
        error_counts,
        gold_summary_order: DomainOrder::Canonical,
        config: *cfg,
        n_parses: (parser.stats().parses - parses_before) as usize,
        turns_with_diagnostics: turns.iter().filter(|t| !t.diagnostics.is_empty()).count(),
    };
    Ok(Evaluation {
        report,
        turns,
        prediction_diagnostics: predictions.diagnostics.clone(),
    })
}

impl Evaluation {
    /// Writes the report as pretty-printed JSON.
    pub fn write_report(&self, path: impl AsRef<Path>) -> Result<(), EvalError> {
        let path = path.as_ref();
        write_atomic(path, |w| {
            serde_json::to_writer_pretty(&mut *w, &self.report)?;
            w.write_all(b"\n")
        })
        .map_err(|source| EvalError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Writes one JSON line per turn that has errors or diagnostics.
    pub fn write_turn_diagnostics(&self, path: impl AsRef<Path>) -> Result<(), EvalError> {
        let path = path.as_ref();
        write_atomic(path, |w| {
            for turn in self.turns.iter().filter(|t| !t.errors.is_empty() || !t.diagnostics.is_empty()) {
                serde_json::to_writer(&mut *w, turn)?;
                w.write_all(b"\n")?;
            }
            Ok(())
        })
        .map_err(|source| EvalError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
