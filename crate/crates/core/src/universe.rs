//! A declared finite analysis frame: vocabulary, specifications, the
//! program set, the necessary applications, and value weights.

use std::collections::HashMap;

use indexmap::IndexMap;

use crate::error::{Error, Pos, Result};
use crate::logic::{Atom, Vocabulary};
use crate::program::Program;
use crate::spec::Specification;

/// Weight of a specification with no declared value.
pub const DEFAULT_WEIGHT: f64 = 1.0;

pub fn is_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    pub name: String,
    vocab: Vocabulary,
    specs: Vec<Specification>,
    programs: Vec<Program>,
    necessary: Vec<String>,
    values: IndexMap<String, f64>,
    spec_index: HashMap<String, usize>,
}

impl Universe {
    pub fn builder(name: impl Into<String>) -> UniverseBuilder {
        UniverseBuilder::new(name)
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn specs(&self) -> &[Specification] {
        &self.specs
    }

    pub fn programs(&self) -> &[Program] {
        &self.programs
    }

    /// Names of the necessary applications, in declaration order.
    pub fn necessary(&self) -> &[String] {
        &self.necessary
    }

    /// Explicitly declared weights, in declaration order.
    pub fn values(&self) -> &IndexMap<String, f64> {
        &self.values
    }

    pub fn spec_index(&self, name: &str) -> Result<usize> {
        self.spec_index.get(name).copied().ok_or_else(|| Error::UnknownSpec {
            name: name.to_string(),
            pos: None,
        })
    }

    pub fn spec(&self, name: &str) -> Result<&Specification> {
        Ok(&self.specs[self.spec_index(name)?])
    }

    pub fn necessary_indices(&self) -> Vec<usize> {
        self.necessary.iter().map(|n| self.spec_index[n]).collect()
    }

    /// Weight of a specification: its declared value, or [`DEFAULT_WEIGHT`].
    pub fn weight(&self, name: &str) -> f64 {
        self.values.get(name).copied().unwrap_or(DEFAULT_WEIGHT)
    }
}

/// Incremental, validating constructor for [`Universe`]. Every reference
/// must name something already added.
#[derive(Debug, Clone)]
pub struct UniverseBuilder {
    name: String,
    atom_limit: Option<usize>,
    vocab: Vocabulary,
    specs: Vec<Specification>,
    programs: Vec<Program>,
    necessary: Option<Vec<String>>,
    values: IndexMap<String, f64>,
    spec_index: HashMap<String, usize>,
}

impl UniverseBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        UniverseBuilder {
            name: name.into(),
            atom_limit: None,
            vocab: Vocabulary::new(),
            specs: Vec::new(),
            programs: Vec::new(),
            necessary: None,
            values: IndexMap::new(),
            spec_index: HashMap::new(),
        }
    }

    /// Caps the vocabulary size; exceeding it fails with `VocabularyTooLarge`.
    pub fn atom_limit(mut self, limit: Option<usize>) -> Self {
        self.atom_limit = limit;
        self
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn has_spec(&self, name: &str) -> bool {
        self.spec_index.contains_key(name)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.spec_index.contains_key(name) || self.programs.iter().any(|p| p.name == name)
    }

    fn check_new_name(&self, name: &str, pos: Option<Pos>) -> Result<()> {
        if !is_name(name) {
            return Err(Error::InvalidName {
                name: name.to_string(),
                pos,
            });
        }
        if self.name_taken(name) {
            return Err(Error::DuplicateName {
                name: name.to_string(),
                pos,
            });
        }
        Ok(())
    }

    fn known_spec(&self, name: &str, pos: Option<Pos>) -> Result<usize> {
        self.spec_index.get(name).copied().ok_or_else(|| Error::UnknownSpec {
            name: name.to_string(),
            pos,
        })
    }

    pub fn add_atom(&mut self, atom: Atom, pos: Option<Pos>) -> Result<()> {
        if let Some(limit) = self.atom_limit {
            if self.vocab.len() >= limit {
                return Err(Error::VocabularyTooLarge {
                    size: self.vocab.len() + 1,
                    limit,
                });
            }
        }
        self.vocab.insert(atom, pos)
    }

    pub fn add_spec(&mut self, spec: Specification, pos: Option<Pos>) -> Result<()> {
        self.check_new_name(&spec.name, pos)?;
        spec.theory.check(&self.vocab)?;
        self.spec_index.insert(spec.name.clone(), self.specs.len());
        self.specs.push(spec);
        Ok(())
    }

    pub fn add_program(&mut self, program: Program, pos: Option<Pos>) -> Result<()> {
        self.check_new_name(&program.name, pos)?;
        for r in &program.rules {
            self.vocab.check(&r.guard)?;
            self.vocab.check(&r.gives)?;
        }
        self.programs.push(program);
        Ok(())
    }

    pub fn set_necessary(&mut self, names: Vec<(String, Option<Pos>)>, pos: Option<Pos>) -> Result<()> {
        if self.necessary.is_some() {
            return Err(Error::DuplicateNecessary { pos });
        }
        let mut out: Vec<String> = Vec::new();
        for (n, npos) in names {
            self.known_spec(&n, npos)?;
            if out.contains(&n) {
                return Err(Error::DuplicateName { name: n, pos: npos });
            }
            out.push(n);
        }
        self.necessary = Some(out);
        Ok(())
    }

    pub fn set_value(&mut self, name: &str, value: f64, pos: Option<Pos>) -> Result<()> {
        self.known_spec(name, pos)?;
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidValue {
                name: name.to_string(),
                value,
                pos,
            });
        }
        if self.values.contains_key(name) {
            return Err(Error::DuplicateValue {
                name: name.to_string(),
                pos,
            });
        }
        self.values.insert(name.to_string(), value);
        Ok(())
    }

    pub fn annotate(&mut self, spec: &str, key: &str, text: &str, pos: Option<Pos>) -> Result<()> {
        let i = self.known_spec(spec, pos)?;
        let annotations = &mut self.specs[i].annotations;
        if annotations.contains_key(key) {
            return Err(Error::DuplicateAnnotation {
                spec: spec.to_string(),
                key: key.to_string(),
                pos,
            });
        }
        annotations.insert(key.to_string(), text.to_string());
        Ok(())
    }

    pub fn build(self) -> Universe {
        Universe {
            name: self.name,
            vocab: self.vocab,
            specs: self.specs,
            programs: self.programs,
            necessary: self.necessary.unwrap_or_default(),
            values: self.values,
            spec_index: self.spec_index,
        }
    }
}
