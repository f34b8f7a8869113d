//! Layer specifications and the weakness preorder between them.

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::Result;
use crate::logic::{Entailer, Theory};

/// A named theory describing the guarantees of one interface.
///
/// Annotations are free-form passthrough text; they take no part in any
/// analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Specification {
    pub name: String,
    pub theory: Theory,
    #[serde(skip_serializing_if = "IndexMap::is_empty")]
    pub annotations: IndexMap<String, String>,
}

impl Specification {
    pub fn new(name: impl Into<String>, theory: Theory) -> Self {
        Specification {
            name: name.into(),
            theory,
            annotations: IndexMap::new(),
        }
    }

    pub fn with_annotation(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.annotations.insert(key.into(), value.into());
        self
    }
}

/// `s1` is weaker than `s2` iff `s2` entails every statement of `s1`.
pub fn weaker_than(s1: &Specification, s2: &Specification, logic: &Entailer<'_>) -> Result<bool> {
    logic.theory_entails(&s2.theory, &s1.theory)
}

pub fn strictly_weaker(s1: &Specification, s2: &Specification, logic: &Entailer<'_>) -> Result<bool> {
    Ok(weaker_than(s1, s2, logic)? && !weaker_than(s2, s1, logic)?)
}

pub fn equivalent(s1: &Specification, s2: &Specification, logic: &Entailer<'_>) -> Result<bool> {
    Ok(weaker_than(s1, s2, logic)? && weaker_than(s2, s1, logic)?)
}
