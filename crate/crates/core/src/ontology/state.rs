use std::fmt;

use indexmap::IndexMap;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{Domain, Ontology, ValueKind};

/// Value of a single slot.
///
/// `None` is the explicit "not mentioned" value. It never belongs in a
/// stored [`DialogueState`], where absence plays that role; it exists so
/// that raw inputs carrying it can be represented and rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SlotValue {
    Literal(String),
    Dontcare,
    None,
}

const DONTCARE_SPELLINGS: &[&str] = &["dontcare", "don't care", "dont care", "do n't care", "do nt care"];
const NONE_SPELLINGS: &[&str] = &["", "none", "not mentioned"];

impl SlotValue {
    /// Interprets a raw annotation or JSON string: dontcare and none
    /// spellings map to their variants, anything else is normalized.
    pub fn parse(raw: &str) -> SlotValue {
        let folded = normalize_value(raw).to_lowercase();
        if DONTCARE_SPELLINGS.contains(&folded.as_str()) {
            SlotValue::Dontcare
        } else if NONE_SPELLINGS.contains(&folded.as_str()) {
            SlotValue::None
        } else {
            SlotValue::Literal(normalize_value(raw))
        }
    }

    pub fn literal(value: impl Into<String>) -> SlotValue {
        SlotValue::Literal(value.into())
    }

    pub fn as_str(&self) -> &str {
        match self {
            SlotValue::Literal(v) => v,
            SlotValue::Dontcare => "dontcare",
            SlotValue::None => "none",
        }
    }

    pub fn as_literal(&self) -> Option<&str> {
        match self {
            SlotValue::Literal(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for SlotValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<&str> for SlotValue {
    fn from(raw: &str) -> Self {
        SlotValue::parse(raw)
    }
}

impl From<String> for SlotValue {
    fn from(raw: String) -> Self {
        SlotValue::parse(&raw)
    }
}

/// Strips `,` and `.`, trims, and collapses runs of whitespace.
pub fn normalize_value(raw: &str) -> String {
    raw.replace([',', '.'], "")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// A set of slot-value pairs.
///
/// Equality is set equality. Insertion order is kept because rendering uses
/// it to order domain sentences (the first domain to appear is rendered
/// first); it never affects which pairs the state contains.
#[derive(Clone, Debug, Default)]
pub struct DialogueState {
    entries: IndexMap<String, SlotValue>,
}

impl DialogueState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or replaces a pair. A replaced slot keeps its original position.
    pub fn insert(&mut self, slot: impl Into<String>, value: impl Into<SlotValue>) -> Option<SlotValue> {
        self.entries.insert(slot.into(), value.into())
    }

    pub fn get(&self, slot: &str) -> Option<&SlotValue> {
        self.entries.get(slot)
    }

    pub fn remove(&mut self, slot: &str) -> Option<SlotValue> {
        self.entries.shift_remove(slot)
    }

    pub fn contains(&self, slot: &str) -> bool {
        self.entries.contains_key(slot)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SlotValue)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn slots(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Sub-state holding only the slots of `domain`.
    pub fn restrict(&self, domain: Domain) -> DialogueState {
        self.iter()
            .filter(|(slot, _)| slot_domain(slot) == Some(domain))
            .map(|(s, v)| (s.to_string(), v.clone()))
            .collect()
    }

    /// Domains mentioned by the state, in order of first appearance.
    pub fn domains(&self) -> Vec<Domain> {
        let mut out = Vec::new();
        for slot in self.slots() {
            if let Some(d) = slot_domain(slot) {
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Extends with the pairs of `other`, replacing values of shared slots.
    pub fn merge(&mut self, other: DialogueState) {
        self.entries.extend(other.entries);
    }
}

/// Domain encoded in a `<domain>-<slot>` name.
pub(crate) fn slot_domain(slot: &str) -> Option<Domain> {
    slot.split_once('-').and_then(|(d, _)| d.parse().ok())
}

impl PartialEq for DialogueState {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|(k, v)| other.get(k) == Some(v))
    }
}

impl Eq for DialogueState {}

impl<K: Into<String>, V: Into<SlotValue>> FromIterator<(K, V)> for DialogueState {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        let mut state = DialogueState::new();
        for (k, v) in iter {
            state.insert(k, v);
        }
        state
    }
}

impl Serialize for DialogueState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.len()))?;
        for (k, v) in self.iter() {
            map.serialize_entry(k, v.as_str())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for DialogueState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct StateVisitor;

        impl<'de> Visitor<'de> for StateVisitor {
            type Value = DialogueState;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from slot names to value strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut state = DialogueState::new();
                while let Some((slot, value)) = access.next_entry::<String, String>()? {
                    if state.contains(&slot) {
                        return Err(de::Error::custom(format!("slot `{slot}` listed twice")));
                    }
                    state.insert(slot, SlotValue::parse(&value));
                }
                Ok(state)
            }
        }

        deserializer.deserialize_map(StateVisitor)
    }
}

/// Reasons a state fails validation.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("unknown slot `{0}`")]
    UnknownSlot(String),
    #[error("slot `{0}` is none; absent slots must be omitted")]
    NoneValue(String),
    #[error("slot `{slot}` has an empty value")]
    EmptyValue { slot: String },
    #[error("value `{value}` of slot `{slot}` is not normalized")]
    NotNormalized { slot: String, value: String },
    #[error("value `{value}` of slot `{slot}` is a reserved word")]
    ReservedLiteral { slot: String, value: String },
    #[error("boolean slot `{slot}` has value `{value}` (expected yes or no)")]
    NotBoolean { slot: String, value: String },
    #[error("value `{value}` is not a category of slot `{slot}`")]
    NotInCategory { slot: String, value: String },
}

/// Checks every pair against the ontology; reports all violations.
pub fn validate_state(ont: &Ontology, state: &DialogueState) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    for (slot, value) in state.iter() {
        let Some(spec) = ont.slot(slot) else {
            violations.push(Violation::UnknownSlot(slot.to_string()));
            continue;
        };
        let literal = match value {
            SlotValue::Dontcare => continue,
            SlotValue::None => {
                violations.push(Violation::NoneValue(slot.to_string()));
                continue;
            }
            SlotValue::Literal(v) => v,
        };
        let err_slot = slot.to_string();
        if literal.is_empty() {
            violations.push(Violation::EmptyValue { slot: err_slot });
        } else if normalize_value(literal) != *literal {
            violations.push(Violation::NotNormalized {
                slot: err_slot,
                value: literal.clone(),
            });
        } else if !matches!(SlotValue::parse(literal), SlotValue::Literal(_)) {
            violations.push(Violation::ReservedLiteral {
                slot: err_slot,
                value: literal.clone(),
            });
        } else {
            match spec.kind() {
                ValueKind::BooleanYesNo if literal != "yes" && literal != "no" => {
                    violations.push(Violation::NotBoolean {
                        slot: err_slot,
                        value: literal.clone(),
                    })
                }
                ValueKind::Categorical(options) if !options.contains(literal) => {
                    violations.push(Violation::NotInCategory {
                        slot: err_slot,
                        value: literal.clone(),
                    })
                }
                _ => {}
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
