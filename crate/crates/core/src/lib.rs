//! Dialogue-state tracking as summarization: a reversible mapping between
//! dialogue states and template summaries, plus the corpus and metric
//! plumbing around it.
//!
//! ```
//! use ds2_core::{DialogueState, Ontology, StateParser, Summarizer, TemplateConfig};
//! use rand::SeedableRng;
//!
//! let ont = Ontology::multiwoz();
//! let state: DialogueState = [
//!     ("attraction-name", "byard art"),
//!     ("attraction-type", "museum"),
//!     ("attraction-area", "center"),
//! ]
//! .into_iter()
//! .collect();
//!
//! let cfg = TemplateConfig::default();
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
//! let summary = Summarizer::new(&ont).state_to_summary(&state, &cfg, &mut rng).unwrap();
//! assert_eq!(
//!     summary.as_str(),
//!     "The user is looking for an attraction called byard art which is a museum located in the center."
//! );
//!
//! let parsed = StateParser::new(&ont).summary_to_state(summary.as_str(), &cfg);
//! assert_eq!(parsed.state, state);
//! ```

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub mod config;
pub mod corpus;
pub mod destate;
pub mod metrics;
pub mod ontology;
pub mod summarize;

pub use config::{DomainOrder, TemplateConfig};
pub use destate::{summary_to_state, Diagnostic, ParseOutcome, StateParser};
pub use ontology::{DialogueState, Domain, Ontology, SlotValue};
pub use summarize::{state_to_summary, Summarizer, Summary};

/// Guide chapters, compiled as doctests so the book stays in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ontology.md")]
    mod ontology {}
    #[doc = include_str!("../../../book/src/summaries.md")]
    mod summaries {}
    #[doc = include_str!("../../../book/src/parsing.md")]
    mod parsing {}
    #[doc = include_str!("../../../book/src/corpus.md")]
    mod corpus {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

/// Writes `path` through a temporary file in the same directory, renamed
/// into place only once `write` succeeds.
pub(crate) fn write_atomic(
    path: &Path,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    let mut writer = BufWriter::new(tmp);
    write(&mut writer)?;
    let tmp = writer.into_inner().map_err(|e| e.into_error())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
