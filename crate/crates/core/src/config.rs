use serde::{Deserialize, Serialize};

/// Subject phrases: the first sentence always uses the first entry,
/// later sentences alternate between the other two when paraphrasing.
pub const SUBJECT_VARIANTS: [&str; 3] = ["The user is looking for", "he is searching for", "he looks for"];

/// Conjunction that opens every sentence after the first domain sentence.
pub const CONJUNCTION: &str = "Also,";

/// How domain sentences are ordered in a multi-domain summary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainOrder {
    /// Domains in order of their first slot in the state.
    #[default]
    Canonical,
    /// Domains permuted by the caller-supplied RNG.
    Shuffled,
}

/// Converter options.
///
/// The unnatural form (`naturalness = false`) lists raw `value as slot of
/// domain` triples and has neither paraphrasing nor a dontcare clause, so
/// those flags are forced off for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateConfig {
    naturalness: bool,
    paraphrasing: bool,
    dontcare_concat: bool,
    domain_order: DomainOrder,
}

impl Default for TemplateConfig {
    fn default() -> Self {
        TemplateConfig::natural(true, true)
    }
}

impl TemplateConfig {
    pub fn natural(paraphrasing: bool, dontcare_concat: bool) -> Self {
        Self {
            naturalness: true,
            paraphrasing,
            dontcare_concat,
            domain_order: DomainOrder::Canonical,
        }
    }

    pub fn unnatural() -> Self {
        Self {
            naturalness: false,
            paraphrasing: false,
            dontcare_concat: false,
            domain_order: DomainOrder::Canonical,
        }
    }

    pub fn with_order(mut self, order: DomainOrder) -> Self {
        self.domain_order = order;
        self
    }

    /// The five converter variants of the naturalness ablation, best first:
    /// full, without dontcare concatenation, without paraphrasing, without
    /// both, and the unnatural form.
    pub fn ablation_variants() -> [TemplateConfig; 5] {
        [
            TemplateConfig::natural(true, true),
            TemplateConfig::natural(true, false),
            TemplateConfig::natural(false, true),
            TemplateConfig::natural(false, false),
            TemplateConfig::unnatural(),
        ]
    }

    pub fn naturalness(&self) -> bool {
        self.naturalness
    }

    pub fn paraphrasing(&self) -> bool {
        self.paraphrasing
    }

    pub fn dontcare_concat(&self) -> bool {
        self.dontcare_concat
    }

    pub fn domain_order(&self) -> DomainOrder {
        self.domain_order
    }
}
