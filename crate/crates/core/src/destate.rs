//! Summary-to-state conversion.
//!
//! A summary is first cut into domain fragments. Literal values never
//! contain `,` or `.`, so every period in a summary is template punctuation
//! and sentence boundaries are exact. Each fragment is then parsed in two
//! stages:
//!
//! 1. an anchored regex built from the domain's phrase templates in
//!    canonical order. Values are matched lazily, so a value that merely
//!    contains a template word (`a and b guest house`) is still recovered
//!    whole;
//! 2. if the fragment is off-template (reordered phrases, unknown wording),
//!    an order-free per-slot extraction: each slot's opener is located and
//!    the value runs to the next delimiter phrase.
//!
//! Either way the work per summary is one sentence split plus at most one
//! pattern application per slot and one per domain fragment.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use indexmap::IndexMap;
use regex::Regex;
use serde::Serialize;

use crate::config::{TemplateConfig, SUBJECT_VARIANTS};
use crate::ontology::{
    normalize_value, Clause, DialogueState, Domain, DomainSpec, Ontology, SlotSpec, SlotValue,
    ValueKind,
};

const UNNATURAL_PREFIX: &str = "The user wants ";
const DONTCARE_SUBJECTS: [&str; 2] = ["he does not care about ", "the user does not care about "];
const DONTCARE_CONCAT: [&str; 2] = [", and he does not care about ", ", and the user does not care about "];

/// Phrases that end a value during lenient extraction.
const VALUE_TERMINATORS: &[&str] = &[
    " The ", " Also, ", " which ", " called ", " ranked ", " during ", " located in the ", " for ",
    " on ", " and ", " with a", " people", " person", " price", " star", " day", ",",
];

/// Something the parser noticed but could not, or did not, turn into state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// A sentence that names no known domain.
    UnmatchedSentence { text: String },
    /// A second sentence for a domain that already has one; it is ignored.
    DuplicateDomain { domain: Domain, text: String },
    /// The domain was recognised by keyword rather than by its sentence head.
    DomainByKeyword { domain: Domain, text: String },
    /// The fragment did not follow the template; per-slot extraction was used.
    OffTemplate { domain: Domain, text: String },
    /// A slot phrase was found but no value followed it.
    MissingValue { slot: String },
    UnknownDontcare { domain: Domain, noun: String },
    /// A dontcare sentence with no preceding domain sentence.
    DanglingDontcare { text: String },
    /// A slot was given both a value and dontcare; dontcare wins.
    ConflictingValue { slot: String },
    /// An unnatural-form item that names no slot.
    UnparsedItem { text: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseOutcome {
    pub state: DialogueState,
    pub diagnostics: Vec<Diagnostic>,
}

/// Domain fragments of a summary, keyed by domain in order of appearance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DomainSentenceMap {
    pub fragments: IndexMap<Domain, String>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Counters for complexity checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParserStats {
    /// Calls to [`StateParser::summary_to_state`].
    pub parses: u64,
    /// Regex or phrase-pattern applications across those calls.
    pub pattern_applications: u64,
}

enum LenientPattern {
    /// Boolean slot: negative and positive phrase.
    Boolean { no: String, yes: String },
    /// Template with text after the hole: the value sits between the two.
    Bounded(Regex),
    /// Template ending at the hole: the value runs to the next terminator.
    Open(Regex),
}

struct DomainPatterns {
    domain: Domain,
    phrase: String,
    keyword: String,
    strict: Regex,
    /// Strict-regex capture group name and the slot index it fills.
    groups: Vec<(String, usize)>,
    lenient: Vec<LenientPattern>,
    /// Surface openers per slot (` called `, ` which is a `, ` which is an `).
    openers: Vec<Vec<String>>,
    terminators: Vec<String>,
    nouns: HashMap<String, usize>,
    slots: Vec<SlotSpec>,
}

/// Compiled summary-to-state converter for one ontology.
///
/// Patterns are compiled once in [`StateParser::new`]; the parser is then
/// read-only apart from its statistics counters and can be shared across
/// threads.
pub struct StateParser {
    ont: Ontology,
    domains: Vec<DomainPatterns>,
    unnatural_slots: HashMap<String, String>,
    parses: AtomicU64,
    pattern_applications: AtomicU64,
}

impl std::fmt::Debug for StateParser {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StateParser")
            .field("slots", &self.ont.slot_count())
            .field("stats", &self.stats())
            .finish()
    }
}

impl StateParser {
    pub fn new(ont: &Ontology) -> Self {
        let domains = ont.domains().iter().map(compile_domain).collect();
        let unnatural_slots = ont
            .slots()
            .map(|s| {
                (
                    format!("{} of {}", s.short_name(), s.domain()),
                    s.name().to_string(),
                )
            })
            .collect();
        Self {
            ont: ont.clone(),
            domains,
            unnatural_slots,
            parses: AtomicU64::new(0),
            pattern_applications: AtomicU64::new(0),
        }
    }

    pub fn ontology(&self) -> &Ontology {
        &self.ont
    }

    pub fn stats(&self) -> ParserStats {
        ParserStats {
            parses: self.parses.load(Ordering::Relaxed),
            pattern_applications: self.pattern_applications.load(Ordering::Relaxed),
        }
    }

    pub fn reset_stats(&self) {
        self.parses.store(0, Ordering::Relaxed);
        self.pattern_applications.store(0, Ordering::Relaxed);
    }

    fn applied(&self, n: u64) {
        self.pattern_applications.fetch_add(n, Ordering::Relaxed);
    }

    /// Extracts the dialogue state from a summary. Never fails; anything
    /// that could not be interpreted is reported in the diagnostics.
    pub fn summary_to_state(&self, summary: &str, cfg: &TemplateConfig) -> ParseOutcome {
        self.parses.fetch_add(1, Ordering::Relaxed);
        self.parse_uncounted(summary, cfg)
    }

    /// Same as [`Self::summary_to_state`] without bumping the parse counter.
    pub(crate) fn parse_uncounted(&self, summary: &str, cfg: &TemplateConfig) -> ParseOutcome {
        if !cfg.naturalness() {
            return self.parse_unnatural(summary);
        }
        let split = self.split_by_domain(summary);
        let mut outcome = ParseOutcome {
            state: DialogueState::new(),
            diagnostics: split.diagnostics,
        };
        for (domain, fragment) in &split.fragments {
            let part = self.parse_domain_sentence(fragment, *domain);
            outcome.state.merge(part.state);
            outcome.diagnostics.extend(part.diagnostics);
        }
        outcome
    }

    /// Cuts a natural summary into one fragment per domain. A separate
    /// "does not care" sentence is attached to the domain sentence before it.
    pub fn split_by_domain(&self, summary: &str) -> DomainSentenceMap {
        let mut map = DomainSentenceMap::default();
        let mut current: Option<Domain> = None;
        for raw in summary.split('.') {
            let sentence = strip_conjunction(raw.trim());
            if sentence.is_empty() {
                continue;
            }
            if strip_prefix_ci(sentence, &DONTCARE_SUBJECTS).is_some() {
                match current.and_then(|d| map.fragments.get_mut(&d)) {
                    Some(fragment) => {
                        fragment.push_str(". ");
                        fragment.push_str(sentence);
                    }
                    None => map.diagnostics.push(Diagnostic::DanglingDontcare {
                        text: sentence.to_string(),
                    }),
                }
                continue;
            }
            let Some((domain, by_keyword)) = self.sentence_domain(sentence) else {
                map.diagnostics.push(Diagnostic::UnmatchedSentence {
                    text: sentence.to_string(),
                });
                current = None;
                continue;
            };
            if map.fragments.contains_key(&domain) {
                map.diagnostics.push(Diagnostic::DuplicateDomain {
                    domain,
                    text: sentence.to_string(),
                });
                current = None;
                continue;
            }
            if by_keyword {
                map.diagnostics.push(Diagnostic::DomainByKeyword {
                    domain,
                    text: sentence.to_string(),
                });
            }
            map.fragments.insert(domain, sentence.to_string());
            current = Some(domain);
        }
        map
    }

    fn sentence_domain(&self, sentence: &str) -> Option<(Domain, bool)> {
        if let Some(rest) = strip_subject(sentence) {
            if let Some(p) = self.domains.iter().find(|p| starts_with_phrase(rest, &p.phrase)) {
                return Some((p.domain, false));
            }
        }
        self.domains
            .iter()
            .filter_map(|p| sentence.find(p.keyword.as_str()).map(|at| (at, p.domain)))
            .min()
            .map(|(_, d)| (d, true))
    }

    /// Parses one domain fragment as produced by [`Self::split_by_domain`].
    pub fn parse_domain_sentence(&self, fragment: &str, domain: Domain) -> ParseOutcome {
        let mut outcome = ParseOutcome::default();
        let Some(pats) = self.domains.iter().find(|p| p.domain == domain) else {
            return outcome;
        };
        let mut pieces = fragment
            .split('.')
            .map(|s| strip_conjunction(s.trim()))
            .filter(|s| !s.is_empty());
        let Some(first) = pieces.next() else {
            return outcome;
        };

        let body = match strip_subject(first).and_then(|rest| rest.strip_prefix(pats.phrase.as_str())) {
            Some(body) => body,
            None => match first.find(pats.keyword.as_str()) {
                Some(at) => &first[at + pats.keyword.len()..],
                None => first,
            },
        };

        let mut dontcare_lists = Vec::new();
        let body = match find_ci(body, &DONTCARE_CONCAT) {
            Some((at, len)) => {
                dontcare_lists.push(&body[at + len..]);
                &body[..at]
            }
            None => body,
        };
        for piece in pieces {
            match strip_prefix_ci(piece, &DONTCARE_SUBJECTS) {
                Some(list) => dontcare_lists.push(list),
                None => outcome.diagnostics.push(Diagnostic::UnmatchedSentence {
                    text: piece.to_string(),
                }),
            }
        }

        for (idx, value) in self.parse_body(pats, body, &mut outcome.diagnostics) {
            outcome.state.insert(pats.slots[idx].name(), SlotValue::Literal(value));
        }
        for list in dontcare_lists {
            for noun in split_noun_list(list) {
                match pats.nouns.get(noun) {
                    Some(&idx) => {
                        let slot = pats.slots[idx].name();
                        if outcome.state.contains(slot) {
                            outcome.diagnostics.push(Diagnostic::ConflictingValue {
                                slot: slot.to_string(),
                            });
                        }
                        outcome.state.insert(slot, SlotValue::Dontcare);
                    }
                    None => outcome.diagnostics.push(Diagnostic::UnknownDontcare {
                        domain,
                        noun: noun.to_string(),
                    }),
                }
            }
        }
        outcome
    }

    /// Literal values of a fragment body (the text after the domain head),
    /// as (slot index, value) pairs in canonical order.
    fn parse_body(
        &self,
        pats: &DomainPatterns,
        body: &str,
        diagnostics: &mut Vec<Diagnostic>,
    ) -> Vec<(usize, String)> {
        if body.trim().is_empty() {
            return Vec::new();
        }
        self.applied(1);
        if let Some(caps) = pats.strict.captures(body) {
            let mut values: Vec<(usize, String)> = pats
                .groups
                .iter()
                .filter_map(|(group, idx)| caps.name(group).map(|m| (*idx, m.as_str())))
                .map(|(idx, text)| {
                    let slot = &pats.slots[idx];
                    let value = if slot.kind().is_boolean() {
                        slot.template().boolean_value(text).to_string()
                    } else {
                        normalize_value(text)
                    };
                    (idx, value)
                })
                .collect();
            values.sort_by_key(|(idx, _)| *idx);
            if !looks_reordered(pats, &values) {
                return values;
            }
        }
        diagnostics.push(Diagnostic::OffTemplate {
            domain: pats.domain,
            text: body.trim().to_string(),
        });
        self.parse_lenient(pats, body, diagnostics)
    }

    fn parse_lenient(
        &self,
        pats: &DomainPatterns,
        body: &str,
        diagnostics: &mut Vec<Diagnostic>,
    ) -> Vec<(usize, String)> {
        let mut values = Vec::new();
        self.applied(pats.lenient.len() as u64);
        for (idx, pattern) in pats.lenient.iter().enumerate() {
            let value = match pattern {
                LenientPattern::Boolean { no, yes } => {
                    if body.contains(no.as_str()) {
                        Some("no".to_string())
                    } else if body.contains(yes.as_str()) {
                        Some("yes".to_string())
                    } else {
                        None
                    }
                }
                LenientPattern::Bounded(re) => re
                    .captures(body)
                    .map(|c| normalize_value(c.name("v").map_or("", |m| m.as_str()))),
                LenientPattern::Open(re) => re.find(body).map(|m| {
                    let rest = &body[m.end()..];
                    let cut = pats
                        .terminators
                        .iter()
                        .filter_map(|t| rest.find(t.as_str()))
                        .min()
                        .unwrap_or(rest.len());
                    normalize_value(&rest[..cut])
                }),
            };
            match value {
                Some(v) if !v.is_empty() => values.push((idx, v)),
                Some(_) => diagnostics.push(Diagnostic::MissingValue {
                    slot: pats.slots[idx].name().to_string(),
                }),
                None => {}
            }
        }
        values
    }

    fn parse_unnatural(&self, summary: &str) -> ParseOutcome {
        let mut outcome = ParseOutcome::default();
        let text = summary.trim();
        if text.is_empty() {
            return outcome;
        }
        let text = text.strip_prefix(UNNATURAL_PREFIX).unwrap_or(text);
        let text = text.trim_end_matches('.').trim();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            self.applied(1);
            let parsed = item.rfind(" as ").and_then(|at| {
                let slot = self.unnatural_slots.get(&item[at + 4..])?;
                Some((slot, &item[..at]))
            });
            match parsed {
                Some((slot, raw)) => {
                    let value = match SlotValue::parse(raw) {
                        SlotValue::None => {
                            outcome.diagnostics.push(Diagnostic::MissingValue { slot: slot.clone() });
                            continue;
                        }
                        v => v,
                    };
                    outcome.state.insert(slot.clone(), value);
                }
                None => outcome.diagnostics.push(Diagnostic::UnparsedItem {
                    text: item.to_string(),
                }),
            }
        }
        outcome
    }
}

/// Convenience wrapper that compiles a parser for a single call.
pub fn summary_to_state(summary: &str, ont: &Ontology, cfg: &TemplateConfig) -> ParseOutcome {
    StateParser::new(ont).summary_to_state(summary, cfg)
}

/// True when a strictly parsed value swallowed the opener of an absent slot
/// that the template places earlier, i.e. the phrases were written out of
/// canonical order.
fn looks_reordered(pats: &DomainPatterns, values: &[(usize, String)]) -> bool {
    let present = |idx: usize| values.iter().any(|(i, _)| *i == idx);
    values.iter().any(|(idx, value)| {
        let padded = format!(" {value} ");
        (0..*idx)
            .filter(|j| !present(*j))
            .any(|j| pats.openers[j].iter().any(|o| padded.contains(o.as_str())))
    })
}

fn compile_domain(spec: &DomainSpec) -> DomainPatterns {
    let slots = spec.slots().to_vec();
    let mut groups = Vec::new();
    let mut pattern = String::from("^");

    for (idx, slot) in slots.iter().enumerate().filter(|(_, s)| s.clause() == Clause::Main) {
        let group = format!("s{idx}");
        pattern.push_str(&format!(
            "(?: {})?",
            slot.template().strict_regex(&group, slot.kind())
        ));
        groups.push((group, idx));
    }

    // `, which A and B and C` with every item optional but at least one
    // present: one alternative per choice of first item.
    let which: Vec<usize> = (0..slots.len())
        .filter(|&i| slots[i].clause() == Clause::Which)
        .collect();
    if !which.is_empty() {
        let mut alternatives = Vec::new();
        for (start, &first) in which.iter().enumerate() {
            let mut alt = String::new();
            for (offset, &idx) in which[start..].iter().enumerate() {
                let group = format!("s{idx}_{start}");
                let frag = slots[idx].template().strict_regex(&group, slots[idx].kind());
                if offset == 0 {
                    alt.push_str(&frag);
                } else {
                    alt.push_str(&format!("(?: and {frag})?"));
                }
                groups.push((group, idx));
            }
            debug_assert!(alt.contains(&format!("s{first}_{start}")));
            alternatives.push(alt);
        }
        pattern.push_str(&format!("(?:, which (?:{}))?", alternatives.join("|")));
    }
    pattern.push('$');

    let lenient = slots
        .iter()
        .map(|slot| {
            let tpl = slot.template();
            if slot.kind().is_boolean() {
                let render = |v| format!(" {}", tpl.render(v, slot.kind()));
                LenientPattern::Boolean {
                    no: render("no"),
                    yes: render("yes"),
                }
            } else if tpl.after_regex().is_empty() {
                LenientPattern::Open(
                    Regex::new(&format!("(?:^| ){}", tpl.before_regex())).expect("opener regex"),
                )
            } else {
                let value = if *slot.kind() == ValueKind::Count { r"\d+" } else { "[^,]+?" };
                LenientPattern::Bounded(
                    Regex::new(&format!(
                        "(?:^| ){}(?P<v>{value}){}",
                        tpl.before_regex(),
                        tpl.after_regex()
                    ))
                    .expect("bounded regex"),
                )
            }
        })
        .collect();

    let openers: Vec<Vec<String>> = slots
        .iter()
        .map(|slot| {
            let opener = slot.template().opener();
            match opener.strip_suffix(" a").or_else(|| (opener == "a").then_some("")) {
                Some(stem) => vec![format!(" {stem} a "), format!(" {stem} an ")],
                None => vec![format!(" {opener} ")],
            }
        })
        .collect();

    let mut terminators: Vec<String> = VALUE_TERMINATORS.iter().map(|s| s.to_string()).collect();
    for slot in &slots {
        let t = format!(" {} ", slot.template().opener());
        if !terminators.contains(&t) {
            terminators.push(t);
        }
    }

    let nouns = slots
        .iter()
        .enumerate()
        .map(|(i, s)| (s.dontcare_noun().to_string(), i))
        .collect();
    let phrase = spec.domain_phrase().to_string();
    let keyword = phrase
        .strip_prefix("an ")
        .or_else(|| phrase.strip_prefix("a "))
        .unwrap_or(&phrase)
        .to_string();

    DomainPatterns {
        domain: spec.domain(),
        phrase,
        keyword,
        strict: Regex::new(&pattern).expect("domain regex"),
        groups,
        lenient,
        openers,
        terminators,
        nouns,
        slots,
    }
}

fn strip_conjunction(s: &str) -> &str {
    s.strip_prefix("Also,")
        .or_else(|| s.strip_prefix("also,"))
        .map_or(s, str::trim_start)
}

/// Strips one of `prefixes`, ignoring the case of the first letter.
fn strip_prefix_ci<'a>(s: &'a str, prefixes: &[&str]) -> Option<&'a str> {
    prefixes.iter().find_map(|p| {
        let head = s.get(..p.len())?;
        head.eq_ignore_ascii_case(p).then(|| &s[p.len()..])
    })
}

fn strip_subject(sentence: &str) -> Option<&str> {
    SUBJECT_VARIANTS.iter().find_map(|subject| {
        let rest = strip_prefix_ci(sentence, &[subject])?;
        rest.strip_prefix(' ')
    })
}

fn starts_with_phrase(text: &str, phrase: &str) -> bool {
    text.strip_prefix(phrase)
        .is_some_and(|rest| rest.is_empty() || rest.starts_with(' ') || rest.starts_with(','))
}

fn find_ci(text: &str, needles: &[&str]) -> Option<(usize, usize)> {
    let lower = text.to_ascii_lowercase();
    needles
        .iter()
        .filter_map(|n| lower.find(n).map(|at| (at, n.len())))
        .min()
}

fn split_noun_list(list: &str) -> Vec<&str> {
    list.split(", ")
        .flat_map(|part| part.split(" and "))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parser() -> StateParser {
        StateParser::new(&Ontology::multiwoz())
    }

    fn state(pairs: &[(&str, &str)]) -> DialogueState {
        pairs.iter().copied().collect()
    }

    #[test]
    fn attraction_example() {
        let out = parser().summary_to_state(
            "The user is looking for an attraction called byard art which is a museum located in the center.",
            &TemplateConfig::default(),
        );
        assert_eq!(
            out.state,
            state(&[
                ("attraction-name", "byard art"),
                ("attraction-type", "museum"),
                ("attraction-area", "center")
            ])
        );
        assert!(out.diagnostics.is_empty());
    }

    #[test]
    fn hotel_fragment_with_concatenated_dontcare() {
        let p = parser();
        let out = p.parse_domain_sentence(
            "The user is looking for a place to stay which is a guesthouse with a moderate price, which has internet, and he does not care about the location",
            Domain::Hotel,
        );
        assert_eq!(
            out.state,
            state(&[
                ("hotel-type", "guesthouse"),
                ("hotel-pricerange", "moderate"),
                ("hotel-internet", "yes"),
                ("hotel-area", "dontcare")
            ])
        );
        assert!(out.diagnostics.is_empty());
        assert_eq!(p.parse_domain_sentence("", Domain::Hotel), ParseOutcome::default());
    }

    #[test]
    fn split_examples() {
        let p = parser();
        let map = p.split_by_domain(
            "The user is looking for a train for 3 people from london station to Incheon airport. Also, he is searching for a restaurant called meze bar on tuesday at 12:00. Also, he looks for a place to stay which is a guesthouse called Intercontinental ranked 3 stars.",
        );
        assert_eq!(
            map.fragments.keys().copied().collect::<Vec<_>>(),
            vec![Domain::Train, Domain::Restaurant, Domain::Hotel]
        );
        let taxi = p.split_by_domain("The user is looking for a taxi from the junction.");
        assert_eq!(taxi.fragments.len(), 1);
        let hello = p.split_by_domain("Hello world.");
        assert!(hello.fragments.is_empty());
        assert_eq!(hello.diagnostics.len(), 1);
    }

    #[test]
    fn value_containing_template_words() {
        let out = parser().summary_to_state(
            "The user is looking for a place to stay called a and b guest house for 1 person on monday, which has no parking.",
            &TemplateConfig::default(),
        );
        assert_eq!(
            out.state,
            state(&[
                ("hotel-name", "a and b guest house"),
                ("hotel-book people", "1"),
                ("hotel-book day", "monday"),
                ("hotel-parking", "no")
            ])
        );
    }

    #[test]
    fn reordered_phrases_fall_back_to_lenient_extraction() {
        let out = parser().summary_to_state(
            "The user is looking for an attraction which is an entertainment called nusha located in the cambridge.",
            &TemplateConfig::default(),
        );
        assert_eq!(
            out.state,
            state(&[
                ("attraction-type", "entertainment"),
                ("attraction-name", "nusha"),
                ("attraction-area", "cambridge")
            ])
        );
        assert!(matches!(out.diagnostics[..], [Diagnostic::OffTemplate { .. }]));
    }

    #[test]
    fn off_template_wording_is_reported() {
        let out = parser().summary_to_state(
            "The user is looking for a train for 7 people from broxbourne to cambridge on wednesday, which arrives at 11:30.",
            &TemplateConfig::default(),
        );
        assert_eq!(
            out.state,
            state(&[
                ("train-book people", "7"),
                ("train-departure", "broxbourne"),
                ("train-destination", "cambridge"),
                ("train-day", "wednesday")
            ])
        );
        assert!(!out.diagnostics.is_empty());
    }

    #[test]
    fn unnatural_form() {
        let out = parser().summary_to_state(
            "The user wants dontcare as area of hotel, 3 as book people of train, kings lynn as departure of train.",
            &TemplateConfig::unnatural(),
        );
        assert_eq!(
            out.state,
            state(&[
                ("hotel-area", "dontcare"),
                ("train-book people", "3"),
                ("train-departure", "kings lynn")
            ])
        );
        let bad = parser().summary_to_state("The user wants x as colour of car.", &TemplateConfig::unnatural());
        assert!(bad.state.is_empty());
        assert_eq!(bad.diagnostics.len(), 1);
    }

    #[test]
    fn empty_summary() {
        let p = parser();
        for cfg in TemplateConfig::ablation_variants() {
            assert_eq!(p.summary_to_state("", &cfg), ParseOutcome::default());
        }
    }

    #[test]
    fn dangling_and_unknown_dontcare() {
        let p = parser();
        let out = p.summary_to_state("He does not care about the location.", &TemplateConfig::default());
        assert!(matches!(out.diagnostics[..], [Diagnostic::DanglingDontcare { .. }]));
        let out = p.summary_to_state(
            "The user is looking for a taxi, and he does not care about the weather.",
            &TemplateConfig::default(),
        );
        assert!(out.state.is_empty());
        assert!(matches!(out.diagnostics[..], [Diagnostic::UnknownDontcare { .. }]));
    }

    #[test]
    fn counters_track_parses() {
        let p = parser();
        p.summary_to_state("The user is looking for a taxi from a to b.", &TemplateConfig::default());
        p.summary_to_state("", &TemplateConfig::default());
        assert_eq!(p.stats().parses, 2);
        assert_eq!(p.stats().pattern_applications, 1);
        p.reset_stats();
        assert_eq!(p.stats(), ParserStats::default());
    }
}
