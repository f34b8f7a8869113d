//! Programs as guarded production rules, and the implements relation.

use serde::Serialize;

use crate::error::Result;
use crate::logic::{Entailer, Formula, Theory};
use crate::spec::Specification;

/// When the lower layer guarantees `guard`, the program guarantees `gives`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductionRule {
    pub guard: Formula,
    pub gives: Formula,
}

impl ProductionRule {
    pub fn new(guard: Formula, gives: Formula) -> Self {
        ProductionRule { guard, gives }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Program {
    pub name: String,
    pub rules: Vec<ProductionRule>,
}

impl Program {
    /// Builds a program; structurally repeated rules are dropped.
    pub fn new(name: impl Into<String>, rules: impl IntoIterator<Item = ProductionRule>) -> Self {
        let mut kept: Vec<ProductionRule> = Vec::new();
        for r in rules {
            if !kept.contains(&r) {
                kept.push(r);
            }
        }
        Program {
            name: name.into(),
            rules: kept,
        }
    }

    /// Rules `when f gives f` for each `f`: lifts exactly those statements.
    pub fn identity(name: impl Into<String>, lifted: impl IntoIterator<Item = Formula>) -> Self {
        Program::new(name, lifted.into_iter().map(|f| ProductionRule::new(f.clone(), f)))
    }
}

/// The strongest theory `program` guarantees atop any correct instance of
/// `lower`: the `gives` of every rule whose guard `lower` entails. Nothing of
/// `lower` passes through unless a rule re-derives it.
pub fn apply(program: &Program, lower: &Specification, logic: &Entailer<'_>) -> Result<Theory> {
    let mut out = Theory::new();
    for rule in &program.rules {
        if logic.entails(&lower.theory, &rule.guard)? {
            out.insert(rule.gives.clone());
        }
    }
    Ok(out)
}

/// `lower <_P upper`: running `program` atop `lower` meets `upper`.
pub fn implements(
    lower: &Specification,
    program: &Program,
    upper: &Specification,
    logic: &Entailer<'_>,
) -> Result<bool> {
    let provided = apply(program, lower, logic)?;
    logic.theory_entails(&provided, &upper.theory)
}
