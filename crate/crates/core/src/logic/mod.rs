//! Propositional formulas, their parser, and entailment engines.

pub mod dpll;
pub mod engine;
pub mod formula;
pub mod parse;
pub mod truth_table;

pub use engine::{
    default_engine, entails, theory_entails, EngineRegistry, Entailer, EntailmentEngine, DEFAULT_ENGINE,
    EXHAUSTIVE_ATOM_LIMIT,
};
pub use formula::{is_atom_name, Atom, Formula, Theory, Vocabulary};
pub use parse::parse_formula;
