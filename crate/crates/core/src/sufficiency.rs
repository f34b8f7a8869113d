//! Sufficiency, minimal sufficiency, value metrics, ε-genericness and the
//! tradeoff table.
//!
//! "Strictly weaker" candidates are drawn from a [`CandidateSpace`]: either
//! the declared specs of the universe, or those plus every
//! conjunction-of-atoms spec over the vocabulary.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::logic::{Formula, Theory};
use crate::spec::Specification;
use crate::universe::Universe;

/// Largest vocabulary the closure space will enumerate (2^16 candidates).
pub const CLOSURE_ATOM_LIMIT: usize = 16;

/// Which reading of the ε condition the genericness verdicts use.
pub const GENERICNESS_READING: &str =
    "value loss: every strict weakening S' must satisfy v(N) - v(post(S') & N) >= epsilon";

/// Sum of weights of the named specs; undeclared weights count as 1.0.
pub fn value_of<S: AsRef<str>>(universe: &Universe, names: &[S]) -> Result<f64> {
    let mut total = 0.0;
    for n in names {
        let n = n.as_ref();
        universe.spec_index(n)?;
        total += universe.weight(n);
    }
    Ok(total)
}

/// One spec a weakening quantifier ranges over.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub spec: Specification,
    /// Declaration index when the candidate is a declared spec.
    pub declared: Option<usize>,
}

pub trait CandidateSpace: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;
    fn candidates(&self, universe: &Universe) -> Result<Vec<Candidate>>;
}

/// The universe's own specs.
#[derive(Debug, Clone, Copy, Default)]
pub struct DeclaredSpace;

impl DeclaredSpace {
    pub const NAME: &'static str = "declared";
}

impl CandidateSpace for DeclaredSpace {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn candidates(&self, universe: &Universe) -> Result<Vec<Candidate>> {
        Ok(universe
            .specs()
            .iter()
            .enumerate()
            .map(|(i, s)| Candidate {
                spec: s.clone(),
                declared: Some(i),
            })
            .collect())
    }
}

/// Declared specs followed by one spec per subset of the vocabulary, whose
/// theory is that subset's atoms. Subsets are enumerated by bitmask, bit `i`
/// standing for the `i`-th declared atom.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosureSpace;

impl ClosureSpace {
    pub const NAME: &'static str = "closure";

    /// Display name of a synthesized candidate, e.g. `[a & b]` or `[true]`.
    pub fn candidate_name(theory: &Theory) -> String {
        format!("[{}]", Formula::conjunction(theory.iter().cloned()).render())
    }
}

impl CandidateSpace for ClosureSpace {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn candidates(&self, universe: &Universe) -> Result<Vec<Candidate>> {
        let atoms = universe.vocab().atoms();
        if atoms.len() > CLOSURE_ATOM_LIMIT {
            return Err(Error::VocabularyTooLarge {
                size: atoms.len(),
                limit: CLOSURE_ATOM_LIMIT,
            });
        }
        let mut out = DeclaredSpace.candidates(universe)?;
        for mask in 0u32..(1u32 << atoms.len()) {
            let theory: Theory = atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| Formula::atom(&a.name))
                .collect();
            out.push(Candidate {
                spec: Specification::new(Self::candidate_name(&theory), theory),
                declared: None,
            });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct CandidateSpaces {
    spaces: Vec<Arc<dyn CandidateSpace>>,
}

impl Default for CandidateSpaces {
    fn default() -> Self {
        Self::builtin()
    }
}

impl CandidateSpaces {
    pub fn builtin() -> Self {
        CandidateSpaces {
            spaces: vec![Arc::new(DeclaredSpace), Arc::new(ClosureSpace)],
        }
    }

    pub fn register(&mut self, space: Arc<dyn CandidateSpace>) {
        self.spaces.retain(|s| s.name() != space.name());
        self.spaces.push(space);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn CandidateSpace>> {
        self.spaces
            .iter()
            .find(|s| s.name() == name)
            .cloned()
            .ok_or_else(|| Error::UnknownCandidateSpace {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.spaces.iter().map(|s| s.name()).collect()
    }
}

/// How a candidate relates to a subject: strictly weaker or not, and which
/// necessary applications its post-image covers (only computed when
/// strictly weaker).
struct Profile {
    strictly_weaker: bool,
    covered: Vec<bool>,
}

fn profile(analysis: &Analysis<'_>, subject: usize, cand: &Candidate, necessary: &[usize]) -> Result<Profile> {
    match cand.declared {
        Some(j) => Ok(Profile {
            strictly_weaker: analysis.strictly_weaker_idx(j, subject),
            covered: necessary.iter().map(|&n| analysis.in_post(j, n)).collect(),
        }),
        None => {
            let logic = analysis.logic();
            let subject_theory = &analysis.universe().specs()[subject].theory;
            let strictly_weaker = logic.theory_entails(subject_theory, &cand.spec.theory)?
                && !logic.theory_entails(&cand.spec.theory, subject_theory)?;
            let covered = if strictly_weaker {
                analysis.covered_by_theory(&cand.spec.theory, necessary)?
            } else {
                vec![false; necessary.len()]
            };
            Ok(Profile {
                strictly_weaker,
                covered,
            })
        }
    }
}

fn covered_value(universe: &Universe, necessary: &[usize], covered: &[bool]) -> f64 {
    let specs = universe.specs();
    necessary
        .iter()
        .zip(covered)
        .filter(|(_, c)| **c)
        .fold(0.0, |acc, (&n, _)| acc + universe.weight(&specs[n].name))
}

fn necessary_value(universe: &Universe) -> f64 {
    universe.necessary().iter().fold(0.0, |acc, n| acc + universe.weight(n))
}

/// N ⊆ post(`subject`).
pub fn sufficient(analysis: &Analysis<'_>, subject: &str) -> Result<bool> {
    let s = analysis.universe().spec_index(subject)?;
    Ok(sufficient_idx(analysis, s))
}

fn sufficient_idx(analysis: &Analysis<'_>, s: usize) -> bool {
    analysis
        .universe()
        .necessary_indices()
        .into_iter()
        .all(|n| analysis.in_post(s, n))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalityVerdict {
    pub subject: String,
    pub candidate_space: String,
    pub sufficient: bool,
    pub minimal: bool,
    /// A strictly weaker sufficient candidate, when one exists.
    pub sufficient_weakening: Option<String>,
}

/// Sufficient, with no strictly weaker sufficient candidate.
pub fn minimally_sufficient(
    analysis: &Analysis<'_>,
    subject: &str,
    space: &dyn CandidateSpace,
) -> Result<MinimalityVerdict> {
    let universe = analysis.universe();
    let s = universe.spec_index(subject)?;
    let necessary = universe.necessary_indices();
    let is_sufficient = sufficient_idx(analysis, s);
    let mut weakening = None;
    for cand in space.candidates(universe)? {
        let p = profile(analysis, s, &cand, &necessary)?;
        if p.strictly_weaker && p.covered.iter().all(|c| *c) {
            weakening = Some(cand.spec.name);
            break;
        }
    }
    Ok(MinimalityVerdict {
        subject: subject.to_string(),
        candidate_space: space.name().to_string(),
        sufficient: is_sufficient,
        minimal: is_sufficient && weakening.is_none(),
        sufficient_weakening: weakening,
    })
}

/// Minimal sufficiency relative to the value metric, read literally:
/// sufficient, and no strictly weaker candidate with v(post(S') ∩ N) > v(N).
/// With nonnegative weights the second clause never fails, so this equals
/// [`sufficient`]; it exists for completeness, [`generic`] is the useful test.
pub fn minimally_sufficient_relative(
    analysis: &Analysis<'_>,
    subject: &str,
    space: &dyn CandidateSpace,
) -> Result<bool> {
    let universe = analysis.universe();
    let s = universe.spec_index(subject)?;
    if !sufficient_idx(analysis, s) {
        return Ok(false);
    }
    let necessary = universe.necessary_indices();
    let total = necessary_value(universe);
    for cand in space.candidates(universe)? {
        let p = profile(analysis, s, &cand, &necessary)?;
        if p.strictly_weaker && covered_value(universe, &necessary, &p.covered) > total {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenericnessQuery {
    pub subject: String,
    pub epsilon: f64,
}

impl GenericnessQuery {
    pub fn new(subject: impl Into<String>, epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::InvalidEpsilon { value: epsilon });
        }
        Ok(GenericnessQuery {
            subject: subject.into(),
            epsilon,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Weakening {
    pub spec: String,
    pub loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericVerdict {
    pub subject: String,
    pub epsilon: f64,
    pub candidate_space: String,
    pub reading: &'static str,
    pub necessary_value: f64,
    pub sufficient: bool,
    pub generic: bool,
    /// The strictly weaker candidate losing the least value.
    pub worst_weakening: Option<Weakening>,
}

/// Sufficient, and every strictly weaker candidate loses at least ε of
/// necessary-application value.
pub fn generic(
    analysis: &Analysis<'_>,
    query: &GenericnessQuery,
    space: &dyn CandidateSpace,
) -> Result<GenericVerdict> {
    if !(query.epsilon.is_finite() && query.epsilon >= 0.0) {
        return Err(Error::InvalidEpsilon { value: query.epsilon });
    }
    let universe = analysis.universe();
    let s = universe.spec_index(&query.subject)?;
    let necessary = universe.necessary_indices();
    let total = necessary_value(universe);
    let is_sufficient = sufficient_idx(analysis, s);

    let mut worst: Option<Weakening> = None;
    for cand in space.candidates(universe)? {
        let p = profile(analysis, s, &cand, &necessary)?;
        if !p.strictly_weaker {
            continue;
        }
        let loss = total - covered_value(universe, &necessary, &p.covered);
        if worst.as_ref().is_none_or(|w| loss < w.loss) {
            worst = Some(Weakening {
                spec: cand.spec.name,
                loss,
            });
        }
    }
    let generic = is_sufficient && worst.as_ref().is_none_or(|w| w.loss >= query.epsilon);
    Ok(GenericVerdict {
        subject: query.subject.clone(),
        epsilon: query.epsilon,
        candidate_space: space.name().to_string(),
        reading: GENERICNESS_READING,
        necessary_value: total,
        sufficient: is_sufficient,
        generic,
        worst_weakening: worst,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TradeoffRow {
    pub spec: String,
    pub pre_count: usize,
    pub post_count: usize,
    pub covered: usize,
    pub value: f64,
    pub sufficient: bool,
    pub minimal: bool,
}

/// One row per declared spec, most implementations first, ties by name.
/// Minimality is judged over the declared candidate space.
pub fn tradeoff_table(analysis: &Analysis<'_>) -> Result<Vec<TradeoffRow>> {
    let universe = analysis.universe();
    let necessary = universe.necessary_indices();
    let mut rows = Vec::with_capacity(universe.specs().len());
    for (s, spec) in universe.specs().iter().enumerate() {
        let covered: Vec<bool> = necessary.iter().map(|&n| analysis.in_post(s, n)).collect();
        let verdict = minimally_sufficient(analysis, &spec.name, &DeclaredSpace)?;
        rows.push(TradeoffRow {
            spec: spec.name.clone(),
            pre_count: analysis.pre_indices(s).len(),
            post_count: analysis.post_indices(s).len(),
            covered: covered.iter().filter(|c| **c).count(),
            value: covered_value(universe, &necessary, &covered),
            sufficient: verdict.sufficient,
            minimal: verdict.minimal,
        });
    }
    rows.sort_by(|a, b| b.pre_count.cmp(&a.pre_count).then_with(|| a.spec.cmp(&b.spec)));
    Ok(rows)
}
