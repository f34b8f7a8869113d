//! Pre/post images, richness, the weakness lattice, and the hourglass
//! property checker, all over one declared universe.
//!
//! [`Analysis::new`] decides the full weakness matrix and implements cube up
//! front (`|specs|² · |programs|` theory entailments). Every query after that
//! is a lookup, so results never depend on evaluation order.

use serde::Serialize;

use crate::error::Result;
use crate::logic::{Entailer, EntailmentEngine, Theory};
use crate::program::{apply, Program};
use crate::spec::Specification;
use crate::universe::Universe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ImageKind {
    /// Possible implementations: specs atop which some program meets the subject.
    Pre,
    /// Possible applications: specs some program meets atop the subject.
    Post,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageMember {
    pub spec: String,
    /// First witnessing program in declaration order.
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageSet {
    pub subject: String,
    pub kind: ImageKind,
    pub members: Vec<ImageMember>,
}

impl ImageSet {
    pub fn spec_names(&self) -> Vec<&str> {
        self.members.iter().map(|m| m.spec.as_str()).collect()
    }

    pub fn contains(&self, spec: &str) -> bool {
        self.members.iter().any(|m| m.spec == spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeEdge {
    pub weaker: String,
    pub stronger: String,
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HourglassProperty {
    /// post(weaker) ⊆ post(stronger)
    Applications,
    /// pre(weaker) ⊇ pre(stronger)
    Implementations,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub weaker: String,
    pub stronger: String,
    pub property: HourglassProperty,
    /// Specs breaking the inclusion.
    pub offending: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedPair {
    pub weaker: String,
    pub stronger: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pairs_checked: usize,
    pub checked: Vec<CheckedPair>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub struct Analysis<'u> {
    universe: &'u Universe,
    engine: &'u dyn EntailmentEngine,
    weaker: Vec<bool>,
    implements: Vec<bool>,
}

impl<'u> Analysis<'u> {
    pub fn new(universe: &'u Universe, engine: &'u dyn EntailmentEngine) -> Result<Self> {
        let logic = Entailer::new(engine, universe.vocab());
        let specs = universe.specs();
        let programs = universe.programs();
        let (n, m) = (specs.len(), programs.len());

        let mut weaker = vec![false; n * n];
        for (i, si) in specs.iter().enumerate() {
            for (j, sj) in specs.iter().enumerate() {
                weaker[i * n + j] = i == j || logic.theory_entails(&sj.theory, &si.theory)?;
            }
        }

        let mut implements = vec![false; n * m * n];
        for (l, lower) in specs.iter().enumerate() {
            for (p, program) in programs.iter().enumerate() {
                let provided = apply(program, lower, &logic)?;
                for (u, upper) in specs.iter().enumerate() {
                    implements[(l * m + p) * n + u] = logic.theory_entails(&provided, &upper.theory)?;
                }
            }
        }

        Ok(Analysis {
            universe,
            engine,
            weaker,
            implements,
        })
    }

    pub fn universe(&self) -> &'u Universe {
        self.universe
    }

    pub fn engine(&self) -> &'u dyn EntailmentEngine {
        self.engine
    }

    pub fn logic(&self) -> Entailer<'u> {
        Entailer::new(self.engine, self.universe.vocab())
    }

    fn n(&self) -> usize {
        self.universe.specs().len()
    }

    fn m(&self) -> usize {
        self.universe.programs().len()
    }

    /// Whether spec `i` is weaker than spec `j` (declaration indices).
    pub fn weaker_idx(&self, i: usize, j: usize) -> bool {
        self.weaker[i * self.n() + j]
    }

    pub fn strictly_weaker_idx(&self, i: usize, j: usize) -> bool {
        self.weaker_idx(i, j) && !self.weaker_idx(j, i)
    }

    pub fn equivalent_idx(&self, i: usize, j: usize) -> bool {
        self.weaker_idx(i, j) && self.weaker_idx(j, i)
    }

    /// Whether `lower <_program upper` (declaration indices).
    pub fn implements_idx(&self, lower: usize, program: usize, upper: usize) -> bool {
        self.implements[(lower * self.m() + program) * self.n() + upper]
    }

    fn witnesses(&self, lower: usize, upper: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.m()).filter(move |&p| self.implements_idx(lower, p, upper))
    }

    /// Indices in post(`s`), in declaration order.
    pub fn post_indices(&self, s: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&t| self.witnesses(s, t).next().is_some())
            .collect()
    }

    /// Indices in pre(`s`), in declaration order.
    pub fn pre_indices(&self, s: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&t| self.witnesses(t, s).next().is_some())
            .collect()
    }

    pub fn in_post(&self, s: usize, t: usize) -> bool {
        self.witnesses(s, t).next().is_some()
    }

    pub fn image(&self, subject: &str, kind: ImageKind, all_witnesses: bool) -> Result<ImageSet> {
        let s = self.universe.spec_index(subject)?;
        let specs = self.universe.specs();
        let programs = self.universe.programs();
        let members = (0..self.n())
            .filter_map(|t| {
                let (lower, upper) = match kind {
                    ImageKind::Post => (s, t),
                    ImageKind::Pre => (t, s),
                };
                let ws: Vec<usize> = self.witnesses(lower, upper).collect();
                let first = *ws.first()?;
                Some(ImageMember {
                    spec: specs[t].name.clone(),
                    witness: programs[first].name.clone(),
                    witnesses: all_witnesses.then(|| ws.iter().map(|&p| programs[p].name.clone()).collect()),
                })
            })
            .collect();
        Ok(ImageSet {
            subject: subject.to_string(),
            kind,
            members,
        })
    }

    pub fn post_image(&self, subject: &str) -> Result<ImageSet> {
        self.image(subject, ImageKind::Post, false)
    }

    pub fn pre_image(&self, subject: &str) -> Result<ImageSet> {
        self.image(subject, ImageKind::Pre, false)
    }

    /// post(`s1`) ⊇ post(`s2`) as spec sets.
    pub fn more_application_rich(&self, s1: &str, s2: &str) -> Result<bool> {
        let (i, j) = (self.universe.spec_index(s1)?, self.universe.spec_index(s2)?);
        Ok((0..self.n()).all(|t| !self.in_post(j, t) || self.in_post(i, t)))
    }

    /// pre(`s1`) ⊇ pre(`s2`) as spec sets.
    pub fn more_implementation_rich(&self, s1: &str, s2: &str) -> Result<bool> {
        let (i, j) = (self.universe.spec_index(s1)?, self.universe.spec_index(s2)?);
        Ok((0..self.n()).all(|t| !self.in_post(t, j) || self.in_post(t, i)))
    }

    /// Every ordered pair related by weakness, reflexive pairs included.
    pub fn weakness_lattice(&self) -> Vec<LatticeEdge> {
        let specs = self.universe.specs();
        let mut edges = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.weaker_idx(i, j) {
                    edges.push(LatticeEdge {
                        weaker: specs[i].name.clone(),
                        stronger: specs[j].name.clone(),
                        strict: !self.weaker_idx(j, i),
                    });
                }
            }
        }
        edges
    }

    /// Partition of the specs into equivalence classes, ordered by first member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n() {
            match classes.iter_mut().find(|c| self.equivalent_idx(c[0], i)) {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }

    /// Covering pairs `(weaker class, stronger class)` of the quotient order,
    /// as indices into [`Analysis::equivalence_classes`].
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let classes = self.equivalence_classes();
        let below = |a: usize, b: usize| a != b && self.weaker_idx(classes[a][0], classes[b][0]);
        let k = classes.len();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Checks both hourglass inclusions for every pair related by weakness.
    pub fn verify_hourglass(&self) -> VerificationReport {
        let specs = self.universe.specs();
        let n = self.n();
        let post: Vec<Vec<bool>> = (0..n).map(|s| (0..n).map(|t| self.in_post(s, t)).collect()).collect();
        let pre: Vec<Vec<bool>> = (0..n).map(|s| (0..n).map(|t| self.in_post(t, s)).collect()).collect();
        let names = |ix: Vec<usize>| ix.into_iter().map(|t| specs[t].name.clone()).collect::<Vec<_>>();

        let mut checked = Vec::new();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.weaker_idx(i, j) {
                    continue;
                }
                checked.push(CheckedPair {
                    weaker: specs[i].name.clone(),
                    stronger: specs[j].name.clone(),
                });
                let extra_apps: Vec<usize> = (0..n).filter(|&t| post[i][t] && !post[j][t]).collect();
                if !extra_apps.is_empty() {
                    violations.push(Violation {
                        weaker: specs[i].name.clone(),
                        stronger: specs[j].name.clone(),
                        property: HourglassProperty::Applications,
                        offending: names(extra_apps),
                    });
                }
                let lost_impls: Vec<usize> = (0..n).filter(|&t| pre[j][t] && !pre[i][t]).collect();
                if !lost_impls.is_empty() {
                    violations.push(Violation {
                        weaker: specs[i].name.clone(),
                        stronger: specs[j].name.clone(),
                        property: HourglassProperty::Implementations,
                        offending: names(lost_impls),
                    });
                }
            }
        }
        VerificationReport {
            pairs_checked: checked.len(),
            checked,
            violations,
        }
    }

    /// Which of `targets` some program implements atop a spec with theory
    /// `lower`, which need not be declared in the universe.
    pub fn covered_by_theory(&self, lower: &Theory, targets: &[usize]) -> Result<Vec<bool>> {
        let logic = self.logic();
        let specs = self.universe.specs();
        let probe = Specification::new("", lower.clone());
        let mut covered = vec![false; targets.len()];
        for program in self.universe.programs() {
            if covered.iter().all(|c| *c) {
                break;
            }
            let provided = apply(program, &probe, &logic)?;
            for (k, &t) in targets.iter().enumerate() {
                if !covered[k] {
                    covered[k] = logic.theory_entails(&provided, &specs[t].theory)?;
                }
            }
        }
        Ok(covered)
    }

    pub fn program(&self, name: &str) -> Option<&'u Program> {
        self.universe.programs().iter().find(|p| p.name == name)
    }
}
