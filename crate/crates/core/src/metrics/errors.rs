use serde::Serialize;

use crate::ontology::{DialogueState, Ontology, SlotValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// A predicted value the gold state does not have.
    Hallucination,
    /// A gold slot the prediction leaves out.
    MissingSlot,
    /// A gold value predicted under another slot of the same kind.
    WrongSlot,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 3] = [ErrorKind::Hallucination, ErrorKind::MissingSlot, ErrorKind::WrongSlot];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Hallucination => "hallucination",
            ErrorKind::MissingSlot => "missing_slot",
            ErrorKind::WrongSlot => "wrong_slot",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub kind: ErrorKind,
    /// The predicted slot for hallucinations, the gold slot otherwise.
    pub slot_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gold_value: Option<String>,
    /// For wrong-slot errors, the slot that received the gold value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_slot: Option<String>,
}

impl ErrorRecord {
    fn hallucination(slot: &str, value: &SlotValue) -> Self {
        Self {
            kind: ErrorKind::Hallucination,
            slot_name: slot.to_string(),
            predicted_value: Some(value.to_string()),
            gold_value: None,
            predicted_slot: None,
        }
    }

    fn missing(slot: &str, value: &SlotValue) -> Self {
        Self {
            kind: ErrorKind::MissingSlot,
            slot_name: slot.to_string(),
            predicted_value: None,
            gold_value: Some(value.to_string()),
            predicted_slot: None,
        }
    }
}

/// Sorts every slot on which `pred` and `gold` differ into exactly one
/// record.
///
/// A slot present in both with different values counts as a hallucination
/// of the predicted value. A gold-only slot and a predicted-only slot are
/// merged into one wrong-slot record when they share domain, value kind and
/// literal value; pairing follows ontology order, first come first served.
pub fn classify_errors(pred: &DialogueState, gold: &DialogueState, ont: &Ontology) -> Vec<ErrorRecord> {
    let mut records = Vec::new();
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    for spec in ont.slots() {
        let slot = spec.name();
        match (pred.get(slot), gold.get(slot)) {
            (Some(p), Some(g)) if p != g => records.push(ErrorRecord::hallucination(slot, p)),
            (Some(_), None) => extra.push(spec),
            (None, Some(_)) => missing.push(spec),
            _ => {}
        }
    }

    let mut used = vec![false; extra.len()];
    let mut unpaired_missing = Vec::new();
    for gold_spec in missing {
        let gold_value = gold.get(gold_spec.name()).expect("gold slot");
        let partner = (0..extra.len()).find(|&i| {
            let p = extra[i];
            !used[i]
                && p.domain() == gold_spec.domain()
                && p.kind() == gold_spec.kind()
                && matches!(gold_value, SlotValue::Literal(_))
                && pred.get(p.name()) == Some(gold_value)
        });
        match partner {
            Some(i) => {
                used[i] = true;
                records.push(ErrorRecord {
                    kind: ErrorKind::WrongSlot,
                    slot_name: gold_spec.name().to_string(),
                    predicted_value: Some(gold_value.to_string()),
                    gold_value: Some(gold_value.to_string()),
                    predicted_slot: Some(extra[i].name().to_string()),
                });
            }
            None => unpaired_missing.push(ErrorRecord::missing(gold_spec.name(), gold_value)),
        }
    }
    records.extend(unpaired_missing);
    for (spec, _) in extra.iter().zip(&used).filter(|(_, u)| !**u) {
        records.push(ErrorRecord::hallucination(spec.name(), pred.get(spec.name()).expect("pred slot")));
    }
    records
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(pairs: &[(&str, &str)]) -> DialogueState {
        pairs.iter().copied().collect()
    }

    #[test]
    fn error_kinds() {
        let ont = Ontology::multiwoz();
        let gold = state(&[("train-day", "monday")]);
        let pred = state(&[("train-day", "monday"), ("train-book people", "7")]);
        let errs = classify_errors(&pred, &gold, &ont);
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].kind, ErrorKind::Hallucination);
        assert_eq!(errs[0].gold_value, None);

        let errs = classify_errors(&DialogueState::new(), &state(&[("train-leaveat", "16:00")]), &ont);
        assert_eq!(errs[0].kind, ErrorKind::MissingSlot);
        assert_eq!(errs[0].predicted_value, None);

        let errs = classify_errors(
            &state(&[("train-arriveby", "18:30")]),
            &state(&[("train-leaveat", "18:30")]),
            &ont,
        );
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].kind, ErrorKind::WrongSlot);
        assert_eq!(errs[0].slot_name, "train-leaveat");
        assert_eq!(errs[0].predicted_slot.as_deref(), Some("train-arriveby"));
    }

    #[test]
    fn cross_domain_is_not_wrong_slot() {
        let ont = Ontology::multiwoz();
        let errs = classify_errors(
            &state(&[("taxi-leaveat", "18:30")]),
            &state(&[("train-leaveat", "18:30")]),
            &ont,
        );
        let kinds: Vec<_> = errs.iter().map(|e| e.kind).collect();
        assert_eq!(kinds, vec![ErrorKind::MissingSlot, ErrorKind::Hallucination]);
    }
}
