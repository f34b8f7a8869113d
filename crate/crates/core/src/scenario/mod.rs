//! The `.hgl` scenario format and the bundled case studies.
//!
//! ```text
//! file      := stmt* ;
//! stmt      := atom | spec | program | necessary | value | annotate ;
//! atom      := "atom" IDENT STRING? ;
//! spec      := "spec" IDENT "{" ( formula ("," formula)* )? "}" ;
//! program   := "program" IDENT "{" rule* "}" ;
//! rule      := "when" formula "gives" formula ";" ;
//! necessary := "necessary" "{" IDENT ("," IDENT)* "}" ;
//! value     := "value" IDENT "=" NUMBER ;
//! annotate  := "annotate" IDENT IDENT "=" STRING ;
//! ```
//!
//! `#` starts a comment running to end of line. Every name must be declared
//! before it is used.

mod bundled;
mod parse;
mod render;

pub use bundled::{bundled_scenarios, BundledScenario, Claim, ClaimResult};
pub use parse::{parse_scenario, parse_scenario_with, ParseOptions};
pub use render::render_scenario;
