//! State-to-summary conversion.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{DomainOrder, TemplateConfig, CONJUNCTION, SUBJECT_VARIANTS};
use crate::corpus::Dialogue;
use crate::destate::StateParser;
use crate::ontology::{
    validate_state, Clause, DialogueState, Domain, DomainSpec, Ontology, SlotSpec, SlotValue,
    Violation,
};

/// Summary text. Natural summaries end with `.`; the empty state gives `""`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Summary(pub String);

impl Summary {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Summary {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SummarizeError {
    #[error("invalid state: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("slot `{0}` is not a literal; dontcare is rendered per sentence")]
    NotLiteral(String),
    #[error("no slots given for domain {0}")]
    EmptyDomain(Domain),
    #[error("slot `{slot}` does not belong to domain {domain}")]
    ForeignSlot { slot: String, domain: Domain },
    /// The value reads as template text and would not parse back.
    #[error("value `{value}` of slot `{slot}` collides with template wording")]
    ReservedPhrase { slot: String, value: String },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Renders one slot phrase, e.g. `located in the center`.
pub fn render_slot_phrase(spec: &SlotSpec, value: &SlotValue) -> Result<String, SummarizeError> {
    match value {
        SlotValue::Literal(v) => Ok(spec.template().render(v, spec.kind())),
        _ => Err(SummarizeError::NotLiteral(spec.name().to_string())),
    }
}

/// Subject for the sentence at `position` (0-based).
fn subject(position: usize, paraphrasing: bool) -> String {
    if position == 0 {
        SUBJECT_VARIANTS[0].to_string()
    } else if paraphrasing {
        let variant = SUBJECT_VARIANTS[1 + (position - 1) % 2];
        format!("{CONJUNCTION} {variant}")
    } else {
        format!("{CONJUNCTION} {}", SUBJECT_VARIANTS[0].to_lowercase())
    }
}

/// `a`, `a and b`, `a, b and c`.
fn join_nouns(nouns: &[&str]) -> String {
    match nouns {
        [] => String::new(),
        [one] => one.to_string(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    }
}

/// Renders the sentence for one domain. `position` is the sentence's index
/// in the summary and selects the subject phrase.
pub fn render_domain_sentence(
    spec: &DomainSpec,
    partial: &DialogueState,
    cfg: &TemplateConfig,
    position: usize,
) -> Result<String, SummarizeError> {
    if partial.is_empty() {
        return Err(SummarizeError::EmptyDomain(spec.domain()));
    }
    if let Some(slot) = partial.slots().find(|s| spec.slot(s).is_none()) {
        return Err(SummarizeError::ForeignSlot {
            slot: slot.to_string(),
            domain: spec.domain(),
        });
    }

    let mut main = Vec::new();
    let mut which = Vec::new();
    let mut dontcare = Vec::new();
    for slot in spec.slots() {
        match partial.get(slot.name()) {
            None => {}
            Some(SlotValue::Dontcare) => dontcare.push(slot.dontcare_noun()),
            Some(value) => {
                let phrase = render_slot_phrase(slot, value)?;
                match slot.clause() {
                    Clause::Main => main.push(phrase),
                    Clause::Which => which.push(phrase),
                }
            }
        }
    }

    let mut out = format!("{} {}", subject(position, cfg.paraphrasing()), spec.domain_phrase());
    for phrase in &main {
        out.push(' ');
        out.push_str(phrase);
    }
    if !which.is_empty() {
        out.push_str(", which ");
        out.push_str(&which.join(" and "));
    }
    if !dontcare.is_empty() {
        let nouns = join_nouns(&dontcare);
        let pronoun = if cfg.paraphrasing() { "he" } else { "the user" };
        if cfg.dontcare_concat() {
            out.push_str(&format!(", and {pronoun} does not care about {nouns}"));
        } else {
            let pronoun = if cfg.paraphrasing() { "He" } else { "The user" };
            out.push_str(&format!(". {pronoun} does not care about {nouns}"));
        }
    }
    out.push('.');
    Ok(out)
}

/// State-to-summary converter bound to one ontology.
///
/// Every summary it returns is checked by parsing it back; a state whose
/// values collide with template wording is refused instead of producing a
/// summary that would decode to a different state.
#[derive(Debug)]
pub struct Summarizer {
    parser: StateParser,
}

impl Summarizer {
    pub fn new(ont: &Ontology) -> Self {
        Self {
            parser: StateParser::new(ont),
        }
    }

    pub fn ontology(&self) -> &Ontology {
        self.parser.ontology()
    }

    pub fn parser(&self) -> &StateParser {
        &self.parser
    }

    /// Renders without the parse-back check.
    pub fn render<R: Rng + ?Sized>(
        &self,
        state: &DialogueState,
        cfg: &TemplateConfig,
        rng: &mut R,
    ) -> Result<Summary, SummarizeError> {
        let ont = self.ontology();
        validate_state(ont, state).map_err(SummarizeError::Invalid)?;
        if state.is_empty() {
            return Ok(Summary::default());
        }
        if !cfg.naturalness() {
            let items: Vec<String> = state
                .iter()
                .map(|(slot, value)| {
                    let spec = ont.slot(slot).expect("validated");
                    format!("{value} as {} of {}", spec.short_name(), spec.domain())
                })
                .collect();
            return Ok(Summary(format!("The user wants {}.", items.join(", "))));
        }

        let mut domains = state.domains();
        if cfg.domain_order() == DomainOrder::Shuffled {
            domains.shuffle(rng);
        }
        let mut sentences = Vec::with_capacity(domains.len());
        for (position, domain) in domains.into_iter().enumerate() {
            let spec = ont.domain(domain).expect("validated");
            sentences.push(render_domain_sentence(spec, &state.restrict(domain), cfg, position)?);
        }
        Ok(Summary(sentences.join(" ")))
    }

    pub fn state_to_summary<R: Rng + ?Sized>(
        &self,
        state: &DialogueState,
        cfg: &TemplateConfig,
        rng: &mut R,
    ) -> Result<Summary, SummarizeError> {
        let summary = self.render(state, cfg, rng)?;
        let parsed = self.parser.parse_uncounted(summary.as_str(), cfg).state;
        if parsed != *state {
            let (slot, value) = state
                .iter()
                .find(|(slot, value)| parsed.get(slot) != Some(*value))
                .or_else(|| parsed.iter().find(|(slot, _)| !state.contains(slot)))
                .map(|(s, v)| (s.to_string(), v.to_string()))
                .expect("states differ");
            return Err(SummarizeError::ReservedPhrase { slot, value });
        }
        Ok(summary)
    }

    /// One gold summary per turn of `dialogue`. Shuffled domain order draws
    /// from a generator seeded by `seed` and the dialogue id, so labels do
    /// not depend on which other dialogues are processed.
    pub fn synthesize_labels(
        &self,
        dialogue: &Dialogue,
        cfg: &TemplateConfig,
        seed: u64,
    ) -> Result<Vec<(usize, Summary)>, LabelError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(dialogue.id.as_bytes()));
        dialogue
            .turns
            .iter()
            .map(|turn| {
                self.state_to_summary(&turn.state, cfg, &mut rng)
                    .map(|s| (turn.index, s))
                    .map_err(|source| LabelError {
                        dialogue_id: dialogue.id.clone(),
                        turn_index: turn.index,
                        source,
                    })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("dialogue {dialogue_id}, turn {turn_index}: {source}")]
pub struct LabelError {
    pub dialogue_id: String,
    pub turn_index: usize,
    pub source: SummarizeError,
}

/// One-shot conversion; compiles the parse-back patterns on every call, so
/// prefer [`Summarizer`] in loops.
pub fn state_to_summary<R: Rng + ?Sized>(
    state: &DialogueState,
    ont: &Ontology,
    cfg: &TemplateConfig,
    rng: &mut R,
) -> Result<Summary, SummarizeError> {
    Summarizer::new(ont).state_to_summary(state, cfg, rng)
}

pub fn synthesize_labels(
    dialogue: &Dialogue,
    ont: &Ontology,
    cfg: &TemplateConfig,
    seed: u64,
) -> Result<Vec<(usize, Summary)>, LabelError> {
    Summarizer::new(ont).synthesize_labels(dialogue, cfg, seed)
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(*b)).wrapping_mul(0x0100_0000_01b3)
    })
}
