use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{normalize_value, DialogueState, Ontology, SlotValue};

/// Candidate literal values per slot name.
pub type ValuePool = BTreeMap<String, Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenerationError {
    #[error("max_domains must be in 1..={max}, got {got}")]
    MaxDomains { got: usize, max: usize },
    #[error("value pool for slot `{0}` is empty")]
    EmptyPool(String),
    #[error("pool value `{value}` for slot `{slot}` is not normalized")]
    BadPoolValue { slot: String, value: String },
}

/// Seeded generator of valid dialogue states, used as a fuzzing source.
///
/// Each call to [`StateGenerator::generate`] is a pure function of the seed.
#[derive(Clone, Debug)]
pub struct StateGenerator<'a> {
    ont: &'a Ontology,
    pool: ValuePool,
    max_domains: usize,
    dontcare_probability: f64,
    slot_probability: f64,
}

impl<'a> StateGenerator<'a> {
    /// Generator using the schema's value pools and dontcare probability.
    pub fn new(ont: &'a Ontology) -> Self {
        let pool = ont
            .slots()
            .map(|s| (s.name().to_string(), s.values().to_vec()))
            .collect();
        Self {
            ont,
            pool,
            max_domains: ont.domains().len(),
            dontcare_probability: ont.dontcare_probability(),
            slot_probability: 0.5,
        }
    }

    pub fn max_domains(mut self, max_domains: usize) -> Self {
        self.max_domains = max_domains;
        self
    }

    /// Replaces the pools of the slots listed in `pool`.
    pub fn pool(mut self, pool: ValuePool) -> Self {
        self.pool.extend(pool);
        self
    }

    pub fn dontcare_probability(mut self, p: f64) -> Self {
        self.dontcare_probability = p;
        self
    }

    /// Probability that a slot of a chosen domain is filled.
    pub fn slot_probability(mut self, p: f64) -> Self {
        self.slot_probability = p;
        self
    }

    pub fn generate(&self, seed: u64) -> Result<DialogueState, GenerationError> {
        let n_domains = self.ont.domains().len();
        if self.max_domains == 0 || self.max_domains > n_domains {
            return Err(GenerationError::MaxDomains {
                got: self.max_domains,
                max: n_domains,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = rng.gen_range(1..=self.max_domains);
        let chosen: Vec<_> = self
            .ont
            .domains()
            .choose_multiple(&mut rng, count)
            .collect();

        let mut entries = Vec::new();
        for spec in chosen {
            let slots = spec.slots();
            let mut picked: Vec<bool> = slots
                .iter()
                .map(|_| rng.gen_bool(self.slot_probability))
                .collect();
            if !picked.iter().any(|&p| p) {
                picked[rng.gen_range(0..slots.len())] = true;
            }
            for (slot, _) in slots.iter().zip(picked).filter(|(_, p)| *p) {
                let pool = self
                    .pool
                    .get(slot.name())
                    .filter(|p| !p.is_empty())
                    .ok_or_else(|| GenerationError::EmptyPool(slot.name().to_string()))?;
                let value = if rng.gen_bool(self.dontcare_probability) {
                    SlotValue::Dontcare
                } else {
                    let v = pool.choose(&mut rng).expect("non-empty pool");
                    if normalize_value(v) != *v || v.is_empty() {
                        return Err(GenerationError::BadPoolValue {
                            slot: slot.name().to_string(),
                            value: v.clone(),
                        });
                    }
                    SlotValue::Literal(v.clone())
                };
                entries.push((slot.name().to_string(), value));
            }
        }
        entries.shuffle(&mut rng);
        Ok(entries.into_iter().collect())
    }
}

/// One seeded state with at most `max_domains` domains drawn from `pool`
/// (slots missing from `pool` fall back to the schema's values).
pub fn random_state(
    ont: &Ontology,
    seed: u64,
    max_domains: usize,
    pool: &ValuePool,
) -> Result<DialogueState, GenerationError> {
    StateGenerator::new(ont)
        .max_domains(max_domains)
        .pool(pool.clone())
        .generate(seed)
}
