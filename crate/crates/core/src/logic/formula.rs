use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Pos, Result};

/// Words that cannot name an atom: formula literals and scenario keywords.
pub const RESERVED_WORDS: &[&str] = &[
    "true",
    "false",
    "atom",
    "spec",
    "program",
    "when",
    "gives",
    "necessary",
    "value",
    "annotate",
];

pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && !RESERVED_WORDS.contains(&name)
}

/// A propositional variable standing for one capability guarantee.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl Atom {
    pub fn new(name: impl Into<String>) -> Self {
        Atom {
            name: name.into(),
            description: None,
        }
    }

    pub fn described(name: impl Into<String>, description: impl Into<String>) -> Self {
        Atom {
            name: name.into(),
            description: Some(description.into()),
        }
    }
}

/// Ordered set of atoms with unique names.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    atoms: Vec<Atom>,
    index: HashMap<String, usize>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms
    }
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vocabulary from bare names, failing on invalid or repeated names.
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v = Vocabulary::new();
        for n in names {
            v.insert(Atom::new(n), None)?;
        }
        Ok(v)
    }

    pub fn insert(&mut self, atom: Atom, pos: Option<Pos>) -> Result<()> {
        if !is_atom_name(&atom.name) {
            return Err(Error::InvalidAtomName { name: atom.name, pos });
        }
        if self.index.contains_key(&atom.name) {
            return Err(Error::DuplicateName { name: atom.name, pos });
        }
        self.index.insert(atom.name.clone(), self.atoms.len());
        self.atoms.push(atom);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Fails with `UnknownAtom` on the first atom of `f` missing from this vocabulary.
    pub fn check(&self, f: &Formula) -> Result<()> {
        let mut missing = None;
        f.visit_atoms(&mut |name| {
            if missing.is_none() && !self.contains(name) {
                missing = Some(name.to_string());
            }
        });
        match missing {
            Some(name) => Err(Error::UnknownAtom { name, pos: None }),
            None => Ok(()),
        }
    }
}

/// Propositional formula tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction of `parts`; `true` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    pub fn visit_atoms<'a>(&'a self, f: &mut dyn FnMut(&'a str)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(n) => f(n),
            Formula::Not(x) => x.visit_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// Distinct atom names in first-occurrence order.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        self.visit_atoms(&mut |n| {
            if !out.contains(&n) {
                out.push(n);
            }
        });
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(x) => 1 + x.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Evaluates under `value`, which maps atom names to truth values.
    pub fn eval(&self, value: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(n) => value(n),
            Formula::Not(x) => !x.eval(value),
            Formula::And(a, b) => a.eval(value) && b.eval(value),
            Formula::Or(a, b) => a.eval(value) || b.eval(value),
            Formula::Implies(a, b) => !a.eval(value) || b.eval(value),
        }
    }

    /// Canonical, minimally parenthesized text.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s, PREC_IMPLIES);
        s
    }

    fn render_into(&self, out: &mut String, ctx: u8) {
        let prec = self.precedence();
        let paren = prec < ctx;
        if paren {
            out.push('(');
        }
        match self {
            Formula::True => out.push_str("true"),
            Formula::False => out.push_str("false"),
            Formula::Atom(n) => out.push_str(n),
            Formula::Not(x) => {
                out.push('!');
                x.render_into(out, PREC_NOT);
            }
            // `|` and `&` fold left, `->` nests right.
            Formula::Or(a, b) => {
                a.render_into(out, PREC_OR);
                out.push_str(" | ");
                b.render_into(out, PREC_AND);
            }
            Formula::And(a, b) => {
                a.render_into(out, PREC_AND);
                out.push_str(" & ");
                b.render_into(out, PREC_NOT);
            }
            Formula::Implies(a, b) => {
                a.render_into(out, PREC_OR);
                out.push_str(" -> ");
                b.render_into(out, PREC_IMPLIES);
            }
        }
        if paren {
            out.push(')');
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => PREC_IMPLIES,
            Formula::Or(..) => PREC_OR,
            Formula::And(..) => PREC_AND,
            Formula::Not(_) => PREC_NOT,
            _ => PREC_ATOM,
        }
    }
}

const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_NOT: u8 = 4;
const PREC_ATOM: u8 = 5;

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Duplicate-free, declaration-ordered set of formulas.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Theory {
    formulas: Vec<Formula>,
}

impl Theory {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `f` unless a structurally equal formula is present. Returns whether it was added.
    pub fn insert(&mut self, f: Formula) -> bool {
        if self.formulas.contains(&f) {
            false
        } else {
            self.formulas.push(f);
            true
        }
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.formulas.contains(f)
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.formulas.iter()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn is_subset_of(&self, other: &Theory) -> bool {
        self.formulas.iter().all(|f| other.contains(f))
    }

    pub fn union(&self, other: &Theory) -> Theory {
        let mut t = self.clone();
        t.extend(other.iter().cloned());
        t
    }

    pub fn check(&self, vocab: &Vocabulary) -> Result<()> {
        self.formulas.iter().try_for_each(|f| vocab.check(f))
    }
}

impl Extend<Formula> for Theory {
    fn extend<I: IntoIterator<Item = Formula>>(&mut self, iter: I) {
        for f in iter {
            self.insert(f);
        }
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        let mut t = Theory::new();
        t.extend(iter);
        t
    }
}

impl<'a> IntoIterator for &'a Theory {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.iter()
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.formulas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}
