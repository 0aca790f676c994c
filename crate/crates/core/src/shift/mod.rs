//! Alphabets, words, presentations and the context machinery behind
//! predecessor sets.

mod alphabet;
mod context;
pub mod io;
mod presentation;
mod word;

pub use alphabet::Alphabet;
pub use context::{Context, ContextSystem, StateSet};
pub use presentation::{Edge, FiniteShift, Sft, SftMatrix, ShiftPresentation, SoficGraph};
pub use word::{EventuallyPeriodicPoint, Word};

use serde::{Deserialize, Serialize};

/// Resource limits for enumerations that may blow up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Words returned by a single language or predecessor-set query.
    pub max_words: usize,
    /// Realizable contexts (and sofic subset-construction nodes).
    pub max_contexts: usize,
    /// Words kept per exported class signature before eliding.
    pub max_signature_words: usize,
    /// Size of a generated alphabet (higher-block recoding).
    pub max_alphabet: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_words: 250_000,
            max_contexts: 50_000,
            max_signature_words: 4096,
            max_alphabet: 4096,
        }
    }
}
