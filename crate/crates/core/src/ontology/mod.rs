//! Domain and slot schema.
//!
//! An [`Ontology`] lists the supported domains, each with a sentence head
//! and an ordered list of [`SlotSpec`]s. Slot specs carry the phrase
//! template used when rendering summaries, the noun used when the user does
//! not care about the slot, and the value kind used for validation and error
//! analysis. The built-in MultiWoZ schema is embedded in the crate and
//! returned by [`Ontology::multiwoz`].

mod random;
mod state;
mod template;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use random::{random_state, GenerationError, StateGenerator, ValuePool};
pub use state::{normalize_value, validate_state, DialogueState, SlotValue, Violation};
pub use template::{PhraseTemplate, TemplateError};

/// Subject of the first sentence of every natural summary.
pub const PRIMARY_SUBJECT: &str = "The user is looking for";

const BUILTIN_SCHEMA: &str = include_str!("../../data/multiwoz5.toml");

/// The five supported MultiWoZ domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Attraction,
    Hotel,
    Restaurant,
    Taxi,
    Train,
}

impl Domain {
    pub const ALL: [Domain; 5] = [
        Domain::Attraction,
        Domain::Hotel,
        Domain::Restaurant,
        Domain::Taxi,
        Domain::Train,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Attraction => "attraction",
            Domain::Hotel => "hotel",
            Domain::Restaurant => "restaurant",
            Domain::Taxi => "taxi",
            Domain::Train => "train",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown domain `{0}`")]
pub struct UnknownDomain(pub String);

impl FromStr for Domain {
    type Err = UnknownDomain;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Domain::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| UnknownDomain(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    FreeText,
    TimeHhmm,
    Count,
    DayOfWeek,
    BooleanYesNo,
    Categorical(Vec<String>),
}

impl ValueKind {
    pub fn is_boolean(&self) -> bool {
        matches!(self, ValueKind::BooleanYesNo)
    }
}

/// Where a slot phrase lands in its domain sentence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Space-separated phrase after the domain head.
    #[default]
    Main,
    /// Part of the trailing `, which A and B` clause.
    Which,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlotSpec {
    name: String,
    domain: Domain,
    template: PhraseTemplate,
    dontcare_noun: String,
    kind: ValueKind,
    position: u32,
    clause: Clause,
    values: Vec<String>,
}

impl SlotSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Slot name without its domain prefix (`book people` for `hotel-book people`).
    pub fn short_name(&self) -> &str {
        &self.name[self.domain.as_str().len() + 1..]
    }

    pub fn template(&self) -> &PhraseTemplate {
        &self.template
    }

    pub fn dontcare_noun(&self) -> &str {
        &self.dontcare_noun
    }

    pub fn kind(&self) -> &ValueKind {
        &self.kind
    }

    pub fn position(&self) -> u32 {
        self.position
    }

    pub fn clause(&self) -> Clause {
        self.clause
    }

    /// Default value pool from the schema file.
    pub fn values(&self) -> &[String] {
        &self.values
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec {
    domain: Domain,
    domain_phrase: String,
    sentence_prefix: String,
    slots: Vec<SlotSpec>,
}

impl DomainSpec {
    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Noun phrase following the subject, e.g. `a place to stay`.
    pub fn domain_phrase(&self) -> &str {
        &self.domain_phrase
    }

    pub fn sentence_prefix(&self) -> &str {
        &self.sentence_prefix
    }

    /// Slots in canonical phrase order.
    pub fn slots(&self) -> &[SlotSpec] {
        &self.slots
    }

    pub fn slot(&self, name: &str) -> Option<&SlotSpec> {
        self.slots.iter().find(|s| s.name == name)
    }
}

/// Validated, immutable slot schema.
#[derive(Clone, Debug)]
pub struct Ontology {
    domains: Vec<DomainSpec>,
    index: HashMap<String, (usize, usize)>,
    dontcare_probability: f64,
}

#[derive(Debug, Error)]
pub enum OntologyError {
    #[error("cannot read schema file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed schema: {0}")]
    Syntax(String),
    #[error("schema lists no domains")]
    Empty,
    #[error("duplicate slot `{0}`")]
    DuplicateSlot(String),
    #[error("schema error in domain `{domain}`: {reason}")]
    Domain { domain: String, reason: String },
    #[error("schema error in slot `{slot}`: {reason}")]
    Slot { slot: String, reason: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchema {
    #[serde(default = "default_dontcare_probability")]
    dontcare_probability: f64,
    #[serde(default)]
    domains: Vec<RawDomain>,
}

fn default_dontcare_probability() -> f64 {
    0.1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    name: String,
    domain_phrase: String,
    sentence_prefix: String,
    #[serde(default)]
    slots: Vec<RawSlot>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSlot {
    name: String,
    template: String,
    dontcare: String,
    kind: ValueKind,
    position: u32,
    #[serde(default)]
    clause: Clause,
    #[serde(default)]
    values: Vec<String>,
}

/// Reads and validates a schema file.
pub fn load_ontology(path: impl AsRef<Path>) -> Result<Ontology, OntologyError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| OntologyError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ontology::from_toml_str(&text)
}

impl Ontology {
    /// The built-in five-domain, 30-slot MultiWoZ schema.
    pub fn multiwoz() -> Ontology {
        Ontology::from_toml_str(BUILTIN_SCHEMA).expect("built-in schema is valid")
    }

    pub fn from_toml_str(text: &str) -> Result<Ontology, OntologyError> {
        let raw: RawSchema =
            toml::from_str(text).map_err(|e| OntologyError::Syntax(e.message().to_string()))?;
        Ontology::from_raw(raw)
    }

    fn from_raw(raw: RawSchema) -> Result<Ontology, OntologyError> {
        if raw.domains.is_empty() {
            return Err(OntologyError::Empty);
        }
        if !(0.0..=1.0).contains(&raw.dontcare_probability) {
            return Err(OntologyError::Syntax(format!(
                "dontcare_probability {} is not a probability",
                raw.dontcare_probability
            )));
        }
        let mut domains = Vec::with_capacity(raw.domains.len());
        let mut seen_domains = BTreeSet::new();
        let mut seen_slots = BTreeSet::new();
        for rd in raw.domains {
            let domain_err = |reason: String| OntologyError::Domain {
                domain: rd.name.clone(),
                reason,
            };
            let domain: Domain = rd.name.parse().map_err(|e: UnknownDomain| domain_err(e.to_string()))?;
            if !seen_domains.insert(domain) {
                return Err(domain_err("domain listed twice".into()));
            }
            let expected_prefix = format!("{PRIMARY_SUBJECT} {}", rd.domain_phrase);
            if rd.sentence_prefix != expected_prefix {
                return Err(domain_err(format!(
                    "sentence_prefix must be `{expected_prefix}`"
                )));
            }
            if rd.slots.is_empty() {
                return Err(domain_err("domain has no slots".into()));
            }
            let mut slots = Vec::with_capacity(rd.slots.len());
            let mut positions = BTreeSet::new();
            let mut nouns = BTreeSet::new();
            for rs in rd.slots {
                let slot_err = |reason: String| OntologyError::Slot {
                    slot: rs.name.clone(),
                    reason,
                };
                if !seen_slots.insert(rs.name.clone()) {
                    return Err(OntologyError::DuplicateSlot(rs.name));
                }
                let short = rs
                    .name
                    .strip_prefix(domain.as_str())
                    .and_then(|rest| rest.strip_prefix('-'))
                    .filter(|rest| !rest.is_empty())
                    .ok_or_else(|| slot_err(format!("name must have the form `{domain}-<slot>`")))?;
                if short.contains(" as ") || short.contains(" of ") || short.contains(',') {
                    return Err(slot_err("slot name contains reserved text".into()));
                }
                let template = PhraseTemplate::parse(&rs.template).map_err(|e| slot_err(e.to_string()))?;
                if !positions.insert(rs.position) {
                    return Err(slot_err(format!("position {} is used twice", rs.position)));
                }
                let noun = rs.dontcare.trim();
                if noun.is_empty() || noun.contains(',') || noun.contains('.') || noun.contains(" and ") {
                    return Err(slot_err(format!("invalid dontcare noun `{}`", rs.dontcare)));
                }
                if !nouns.insert(noun.to_string()) {
                    return Err(slot_err(format!("dontcare noun `{noun}` is used twice")));
                }
                if rs.kind.is_boolean() && rs.clause != Clause::Which {
                    return Err(slot_err("boolean slots belong to the `which` clause".into()));
                }
                for value in &rs.values {
                    if normalize_value(value) != *value || value.is_empty() {
                        return Err(slot_err(format!("pool value `{value}` is not normalized")));
                    }
                }
                slots.push(SlotSpec {
                    name: rs.name.clone(),
                    domain,
                    template,
                    dontcare_noun: noun.to_string(),
                    kind: rs.kind,
                    position: rs.position,
                    clause: rs.clause,
                    values: rs.values,
                });
            }
            slots.sort_by_key(|s| s.position);
            domains.push(DomainSpec {
                domain,
                domain_phrase: rd.domain_phrase,
                sentence_prefix: rd.sentence_prefix,
                slots,
            });
        }
        let index = domains
            .iter()
            .enumerate()
            .flat_map(|(di, d)| {
                d.slots
                    .iter()
                    .enumerate()
                    .map(move |(si, s)| (s.name.clone(), (di, si)))
            })
            .collect();
        Ok(Ontology {
            domains,
            index,
            dontcare_probability: raw.dontcare_probability,
        })
    }

    /// Domains in schema order.
    pub fn domains(&self) -> &[DomainSpec] {
        &self.domains
    }

    pub fn domain(&self, domain: Domain) -> Option<&DomainSpec> {
        self.domains.iter().find(|d| d.domain == domain)
    }

    pub fn slot(&self, name: &str) -> Option<&SlotSpec> {
        self.index
            .get(name)
            .map(|&(di, si)| &self.domains[di].slots[si])
    }

    /// All slots, domain by domain, in canonical order.
    pub fn slots(&self) -> impl Iterator<Item = &SlotSpec> {
        self.domains.iter().flat_map(|d| d.slots.iter())
    }

    /// Number of slots (k).
    pub fn slot_count(&self) -> usize {
        self.index.len()
    }

    pub fn dontcare_probability(&self) -> f64 {
        self.dontcare_probability
    }
}

impl Default for Ontology {
    fn default() -> Self {
        Ontology::multiwoz()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_thirty_slots() {
        let ont = Ontology::multiwoz();
        assert_eq!(ont.slot_count(), 30);
        assert_eq!(ont.domains().len(), 5);
        let per_domain: Vec<usize> = ont.domains().iter().map(|d| d.slots().len()).collect();
        assert_eq!(per_domain, vec![3, 10, 7, 4, 6]);
        assert_eq!(ont.slot("hotel-book people").unwrap().short_name(), "book people");
    }

    #[test]
    fn templates_contain_their_values() {
        let ont = Ontology::multiwoz();
        for slot in ont.slots().filter(|s| !s.kind().is_boolean()) {
            for value in slot.values() {
                let phrase = slot.template().render(value, slot.kind());
                assert!(phrase.contains(value.as_str()), "{phrase} lacks {value}");
            }
        }
    }

    const ONE_SLOT: &str = r#"
[[domains]]
name = "hotel"
domain_phrase = "a place to stay"
sentence_prefix = "The user is looking for a place to stay"
[[domains.slots]]
name = "hotel-area"
template = "located in the {v}"
dontcare = "the location"
kind = "free_text"
position = 0
"#;

    #[test]
    fn minimal_schema_loads() {
        let ont = Ontology::from_toml_str(ONE_SLOT).unwrap();
        assert_eq!(ont.slot_count(), 1);
        assert_eq!(ont.dontcare_probability(), 0.1);
    }

    #[test]
    fn duplicate_slot_is_rejected() {
        let doubled = format!(
            "{ONE_SLOT}\n[[domains.slots]]\nname = \"hotel-area\"\ntemplate = \"in {{v}}\"\ndontcare = \"the area\"\nkind = \"free_text\"\nposition = 1\n"
        );
        match Ontology::from_toml_str(&doubled) {
            Err(OntologyError::DuplicateSlot(slot)) => assert_eq!(slot, "hotel-area"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_domain_list_is_rejected() {
        assert!(matches!(
            Ontology::from_toml_str("domains = []"),
            Err(OntologyError::Empty)
        ));
        assert!(matches!(Ontology::from_toml_str(""), Err(OntologyError::Empty)));
    }

    #[test]
    fn malformed_slot_is_named() {
        let bad = ONE_SLOT.replace("located in the {v}", "located somewhere");
        match Ontology::from_toml_str(&bad) {
            Err(OntologyError::Slot { slot, .. }) => assert_eq!(slot, "hotel-area"),
            other => panic!("unexpected {other:?}"),
        }
        let wrong_prefix = ONE_SLOT.replace("name = \"hotel-area\"", "name = \"taxi-area\"");
        assert!(matches!(
            Ontology::from_toml_str(&wrong_prefix),
            Err(OntologyError::Slot { .. })
        ));
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            load_ontology("/nonexistent/schema.toml"),
            Err(OntologyError::Io { .. })
        ));
    }
}
