//! Spanning-layer analysis over finite propositional specification
//! universes.
//!
//! A [`Universe`] declares atoms, layer [`Specification`]s, [`Program`]s
//! (guarded production rules), a set of necessary applications and value
//! weights. [`Analysis`] decides the weakness order and the implements
//! relation over it, from which pre/post images, sufficiency, minimal
//! sufficiency, ε-genericness and the tradeoff table follow.
//!
//! Entailment is pluggable: [`EngineRegistry`] holds the exhaustive
//! `truth-table` engine (default, capped at 24 atoms) and an uncapped `dpll`
//! engine. Weakening quantifiers range over a [`CandidateSpace`] chosen the
//! same way.

pub mod analysis;
pub mod error;
mod lexer;
pub mod logic;
pub mod program;
pub mod report;
pub mod scenario;
pub mod spec;
pub mod sufficiency;
pub mod universe;

pub use analysis::{Analysis, ImageKind, ImageMember, ImageSet, LatticeEdge, VerificationReport, Violation};
pub use error::{Error, Pos, Result};
pub use logic::{
    entails, parse_formula, theory_entails, Atom, EngineRegistry, Entailer, EntailmentEngine, Formula, Theory,
    Vocabulary,
};
pub use program::{apply, implements, ProductionRule, Program};
pub use scenario::{bundled_scenarios, parse_scenario, parse_scenario_with, render_scenario, ParseOptions};
pub use spec::{equivalent, strictly_weaker, weaker_than, Specification};
pub use sufficiency::{
    generic, minimally_sufficient, sufficient, tradeoff_table, value_of, CandidateSpace, CandidateSpaces, ClosureSpace,
    DeclaredSpace, GenericVerdict, GenericnessQuery, TradeoffRow,
};
pub use universe::{Universe, UniverseBuilder};
