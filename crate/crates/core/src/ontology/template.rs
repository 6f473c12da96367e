use std::fmt;

use regex::escape;

use super::ValueKind;

const HOLE: &str = "{v}";

/// Plural nouns that switch to their singular form when the value is `1`.
const PLURALS: &[(&str, &str)] = &[("stars", "star"), ("people", "person"), ("days", "day")];

/// A slot phrase with a single `{v}` value hole, e.g. `ranked {v} stars`.
///
/// Rendering resolves the surface details the raw template leaves open:
/// `a` becomes `an` before vowel-initial values, a trailing plural noun is
/// singularised for the value `1`, and boolean slots render as
/// `has parking` / `has no parking`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhraseTemplate {
    raw: String,
    before: String,
    after: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TemplateError {
    #[error("template `{0}` must contain exactly one `{{v}}` hole")]
    HoleCount(String),
    #[error("template `{0}` has no literal text around its hole")]
    Bare(String),
    #[error("template `{0}` contains `,` or `.`, which are reserved as template punctuation")]
    Punctuation(String),
}

impl PhraseTemplate {
    pub fn parse(raw: &str) -> Result<Self, TemplateError> {
        if raw.matches(HOLE).count() != 1 {
            return Err(TemplateError::HoleCount(raw.to_string()));
        }
        if raw.contains(',') || raw.contains('.') {
            return Err(TemplateError::Punctuation(raw.to_string()));
        }
        let (before, after) = raw.split_once(HOLE).expect("one hole");
        if before.trim().is_empty() {
            return Err(TemplateError::Bare(raw.to_string()));
        }
        Ok(Self {
            raw: raw.to_string(),
            before: before.to_string(),
            after: after.to_string(),
        })
    }

    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// Literal text that introduces the value, without trailing whitespace
    /// (`called`, `located in the`, `has`).
    pub fn opener(&self) -> &str {
        self.before.trim_end()
    }

    fn has_article(&self) -> bool {
        self.before == "a " || self.before.ends_with(" a ")
    }

    /// First word after the hole, if it is one of the pluralisable nouns.
    fn plural_noun(&self) -> Option<(&'static str, &'static str)> {
        let word = self.after.split_whitespace().next()?;
        PLURALS.iter().copied().find(|(plural, _)| *plural == word)
    }

    pub fn render(&self, value: &str, kind: &ValueKind) -> String {
        if kind.is_boolean() {
            return if value == "no" {
                format!("{}no{}", self.before, self.after)
            } else {
                format!("{}{}", self.opener(), self.after)
            };
        }
        let mut before = self.before.clone();
        if self.has_article() && starts_with_vowel(value) {
            before.truncate(before.len() - 2);
            before.push_str("an ");
        }
        let mut after = self.after.clone();
        if value == "1" {
            if let Some((plural, singular)) = self.plural_noun() {
                after = after.replacen(plural, singular, 1);
            }
        }
        format!("{before}{value}{after}")
    }

    /// Regex for the text before the hole; accepts either article.
    pub(crate) fn before_regex(&self) -> String {
        if self.has_article() {
            let stem = &self.before[..self.before.len() - 2];
            format!("{}an? ", escape(stem))
        } else {
            escape(&self.before)
        }
    }

    /// Regex for the text after the hole; accepts singular or plural nouns.
    pub(crate) fn after_regex(&self) -> String {
        match self.plural_noun() {
            Some((plural, singular)) => {
                let rest = self.after.replacen(plural, "\u{0}", 1);
                let (head, tail) = rest.split_once('\u{0}').expect("noun present");
                format!("{}(?:{plural}|{singular}){}", escape(head), escape(tail))
            }
            None => escape(&self.after),
        }
    }

    /// Regex matching exactly the phrases this template renders, capturing
    /// the value (or, for booleans, the whole phrase) in group `group`.
    pub(crate) fn strict_regex(&self, group: &str, kind: &ValueKind) -> String {
        if kind.is_boolean() {
            format!(
                "(?P<{group}>{}(?: no)?{})",
                escape(self.opener()),
                escape(&self.after)
            )
        } else {
            format!(
                "{}(?P<{group}>{}){}",
                self.before_regex(),
                value_regex(kind),
                self.after_regex()
            )
        }
    }

    /// Decodes a boolean phrase captured by [`Self::strict_regex`].
    pub(crate) fn boolean_value(&self, phrase: &str) -> &'static str {
        if phrase.starts_with(&format!("{}no", self.before)) {
            "no"
        } else {
            "yes"
        }
    }
}

/// Value shape per kind. Narrow shapes keep a lazy free-text value from
/// stopping early at a later slot's opener (`the man on the moon on monday`).
pub(crate) fn value_regex(kind: &ValueKind) -> String {
    match kind {
        ValueKind::Count => r"\d+".to_string(),
        ValueKind::DayOfWeek => {
            "monday|tuesday|wednesday|thursday|friday|saturday|sunday".to_string()
        }
        ValueKind::Categorical(options) => {
            let mut sorted: Vec<&String> = options.iter().collect();
            sorted.sort_by_key(|o| std::cmp::Reverse(o.len()));
            sorted.iter().map(|o| escape(o)).collect::<Vec<_>>().join("|")
        }
        _ => "[^,]+?".to_string(),
    }
}

impl fmt::Display for PhraseTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

fn starts_with_vowel(value: &str) -> bool {
    matches!(
        value.chars().next().map(|c| c.to_ascii_lowercase()),
        Some('a' | 'e' | 'i' | 'o' | 'u')
    )
}
