//! State and summary metrics.

mod errors;
mod eval;
mod text;

use crate::ontology::{DialogueState, Domain, Ontology};

pub use errors::{classify_errors, ErrorKind, ErrorRecord};
pub use eval::{evaluate_predictions, evaluate_run, EvalError, Evaluation, Report, TurnResult};
pub use text::{bleu4, rouge_n_f1};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("no turns to score")]
    Empty,
    #[error("{candidates} candidates but {references} references")]
    LengthMismatch { candidates: usize, references: usize },
}

/// Fraction of turns whose predicted state equals the gold state. With a
/// domain filter both states are first restricted to that domain's slots.
pub fn joint_goal_accuracy(
    pairs: &[(DialogueState, DialogueState)],
    domain_filter: Option<Domain>,
) -> Result<f64, MetricError> {
    if pairs.is_empty() {
        return Err(MetricError::Empty);
    }
    let hits = pairs
        .iter()
        .filter(|(pred, gold)| match domain_filter {
            Some(d) => pred.restrict(d) == gold.restrict(d),
            None => pred == gold,
        })
        .count();
    Ok(hits as f64 / pairs.len() as f64)
}

/// `(true_acc, none_acc)` over every slot of the ontology in every turn.
///
/// `true_acc` is the share of gold-filled slots predicted with the gold
/// value; `none_acc` the share of gold-empty slots also left empty. A
/// ratio with nothing to count is 1.
pub fn slot_accuracy(
    pairs: &[(DialogueState, DialogueState)],
    ont: &Ontology,
) -> Result<(f64, f64), MetricError> {
    if pairs.is_empty() {
        return Err(MetricError::Empty);
    }
    let (mut active, mut active_hit, mut none, mut none_hit) = (0usize, 0usize, 0usize, 0usize);
    for (pred, gold) in pairs {
        for slot in ont.slots().map(|s| s.name()) {
            match gold.get(slot) {
                Some(value) => {
                    active += 1;
                    active_hit += usize::from(pred.get(slot) == Some(value));
                }
                None => {
                    none += 1;
                    none_hit += usize::from(!pred.contains(slot));
                }
            }
        }
    }
    let ratio = |hit: usize, total: usize| if total == 0 { 1.0 } else { hit as f64 / total as f64 };
    Ok((ratio(active_hit, active), ratio(none_hit, none)))
}
