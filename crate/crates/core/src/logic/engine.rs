//! Entailment engines: interchangeable sound and complete decision
//! procedures for `premises ⊢ conclusion`, looked up by name.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logic::dpll::Dpll;
use crate::logic::formula::{Formula, Theory, Vocabulary};
use crate::logic::truth_table::TruthTable;

/// Largest vocabulary the exhaustive engine will accept.
pub const EXHAUSTIVE_ATOM_LIMIT: usize = 24;

pub const DEFAULT_ENGINE: &str = TruthTable::NAME;

pub trait EntailmentEngine: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    /// Largest vocabulary this engine accepts, if bounded.
    fn atom_limit(&self) -> Option<usize>;

    /// True iff every assignment over `vocab` satisfying all `premises` satisfies `conclusion`.
    fn entails(&self, premises: &Theory, conclusion: &Formula, vocab: &Vocabulary) -> Result<bool>;

    /// True iff `premises` entail every member of `conclusions` (vacuously true when empty).
    fn theory_entails(&self, premises: &Theory, conclusions: &Theory, vocab: &Vocabulary) -> Result<bool> {
        for c in conclusions {
            if !self.entails(premises, c, vocab)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Validates the inputs of an entailment query and returns the atoms they
/// mention, in first-occurrence order.
pub(crate) fn relevant_atoms<'f>(
    premises: &'f Theory,
    conclusions: &[&'f Formula],
    vocab: &Vocabulary,
    limit: Option<usize>,
) -> Result<Vec<&'f str>> {
    if let Some(limit) = limit {
        if vocab.len() > limit {
            return Err(Error::VocabularyTooLarge {
                size: vocab.len(),
                limit,
            });
        }
    }
    let mut atoms: Vec<&str> = Vec::new();
    let mut missing: Option<&str> = None;
    let mut note = |n: &'f str| {
        if !atoms.contains(&n) {
            if !vocab.contains(n) && missing.is_none() {
                missing = Some(n);
            }
            atoms.push(n);
        }
    };
    for f in premises.iter().chain(conclusions.iter().copied()) {
        f.visit_atoms(&mut note);
    }
    match missing {
        Some(n) => Err(Error::UnknownAtom {
            name: n.to_string(),
            pos: None,
        }),
        None => Ok(atoms),
    }
}

/// Name-keyed set of available engines.
#[derive(Debug, Clone)]
pub struct EngineRegistry {
    engines: Vec<Arc<dyn EntailmentEngine>>,
}

impl Default for EngineRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl EngineRegistry {
    pub fn empty() -> Self {
        EngineRegistry { engines: Vec::new() }
    }

    /// `truth-table` (exhaustive, the default) and `dpll`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(TruthTable));
        r.register(Arc::new(Dpll));
        r
    }

    /// Adds `engine`, replacing any engine registered under the same name.
    pub fn register(&mut self, engine: Arc<dyn EntailmentEngine>) {
        self.engines.retain(|e| e.name() != engine.name());
        self.engines.push(engine);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn EntailmentEngine>> {
        self.engines
            .iter()
            .find(|e| e.name() == name)
            .cloned()
            .ok_or_else(|| Error::UnknownEngine {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.engines.iter().map(|e| e.name()).collect()
    }
}

pub fn default_engine() -> &'static dyn EntailmentEngine {
    &TruthTable
}

/// Decides `premises ⊢ conclusion` with the default engine.
pub fn entails(premises: &Theory, conclusion: &Formula, vocab: &Vocabulary) -> Result<bool> {
    default_engine().entails(premises, conclusion, vocab)
}

/// Decides `premises ⊢ c` for every `c` in `conclusions` with the default engine.
pub fn theory_entails(premises: &Theory, conclusions: &Theory, vocab: &Vocabulary) -> Result<bool> {
    default_engine().theory_entails(premises, conclusions, vocab)
}

/// An engine paired with the vocabulary it decides over.
#[derive(Clone, Copy)]
pub struct Entailer<'a> {
    pub engine: &'a dyn EntailmentEngine,
    pub vocab: &'a Vocabulary,
}

impl<'a> Entailer<'a> {
    pub fn new(engine: &'a dyn EntailmentEngine, vocab: &'a Vocabulary) -> Self {
        Entailer { engine, vocab }
    }

    pub fn with_default(vocab: &'a Vocabulary) -> Self {
        Entailer::new(default_engine(), vocab)
    }

    pub fn entails(&self, premises: &Theory, conclusion: &Formula) -> Result<bool> {
        self.engine.entails(premises, conclusion, self.vocab)
    }

    pub fn theory_entails(&self, premises: &Theory, conclusions: &Theory) -> Result<bool> {
        self.engine.theory_entails(premises, conclusions, self.vocab)
    }
}

impl fmt::Debug for Entailer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Entailer")
            .field("engine", &self.engine.name())
            .field("atoms", &self.vocab.len())
            .finish()
    }
}
