//! Serializable analysis reports and their JSON, DOT and CSV renderings.

use std::fmt::Write;

use indexmap::IndexMap;
use serde::Serialize;

use crate::analysis::{Analysis, ImageKind, ImageSet, LatticeEdge, VerificationReport};
use crate::error::Result;
use crate::logic::Atom;
use crate::program::Program;
use crate::scenario::{BundledScenario, ClaimResult};
use crate::spec::Specification;
use crate::sufficiency::{tradeoff_table, TradeoffRow};
use crate::universe::Universe;

pub const TRADEOFF_CSV_HEADER: &str = "spec,pre_count,post_count,covered,value,sufficient,minimal";

#[derive(Debug, Clone, Serialize)]
pub struct UniverseSummary<'u> {
    pub name: &'u str,
    pub atoms: &'u [Atom],
    pub specs: &'u [Specification],
    pub programs: &'u [Program],
    pub necessary: &'u [String],
    pub values: &'u IndexMap<String, f64>,
}

impl<'u> UniverseSummary<'u> {
    pub fn new(u: &'u Universe) -> Self {
        UniverseSummary {
            name: &u.name,
            atoms: u.vocab().atoms(),
            specs: u.specs(),
            programs: u.programs(),
            necessary: u.necessary(),
            values: u.values(),
        }
    }
}

/// Everything computed for one universe. Field names are stable.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport<'u> {
    pub universe: UniverseSummary<'u>,
    pub lattice: Vec<LatticeEdge>,
    pub images: Vec<ImageSet>,
    pub tradeoff: Vec<TradeoffRow>,
    pub verification: VerificationReport,
}

impl<'u> AnalysisReport<'u> {
    /// Pre and post image of every spec in declaration order.
    pub fn build(analysis: &Analysis<'u>) -> Result<Self> {
        let u = analysis.universe();
        let mut images = Vec::with_capacity(2 * u.specs().len());
        for s in u.specs() {
            images.push(analysis.image(&s.name, ImageKind::Pre, false)?);
            images.push(analysis.image(&s.name, ImageKind::Post, false)?);
        }
        Ok(AnalysisReport {
            universe: UniverseSummary::new(u),
            lattice: analysis.weakness_lattice(),
            images,
            tradeoff: tradeoff_table(analysis)?,
            verification: analysis.verify_hourglass(),
        })
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Golden report for a bundled scenario: claim verdicts plus the full report.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport<'u> {
    pub scenario: &'static str,
    pub claims: Vec<ClaimResult>,
    pub report: AnalysisReport<'u>,
}

impl<'u> ScenarioReport<'u> {
    pub fn build(bundled: &BundledScenario, analysis: &Analysis<'u>) -> Result<Self> {
        Ok(ScenarioReport {
            scenario: bundled.name,
            claims: bundled.check_claims(analysis)?,
            report: AnalysisReport::build(analysis)?,
        })
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}

pub fn tradeoff_csv(rows: &[TradeoffRow]) -> String {
    let mut out = String::from(TRADEOFF_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.spec, r.pre_count, r.post_count, r.covered, r.value, r.sufficient, r.minimal
        );
    }
    out
}

fn dot_id(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Hasse diagram of the weakness order, weaker specs at the bottom.
/// Equivalence classes are drawn as boxed clusters joined by dashed edges;
/// strict covering edges are solid.
pub fn lattice_dot(analysis: &Analysis<'_>) -> String {
    let specs = analysis.universe().specs();
    let classes = analysis.equivalence_classes();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph {} {{",
        dot_id(&format!("{} weakness", analysis.universe().name))
    );
    out.push_str("  rankdir=BT;\n  node [shape=ellipse];\n");
    for (k, class) in classes.iter().enumerate() {
        if class.len() == 1 {
            let _ = writeln!(out, "  {};", dot_id(&specs[class[0]].name));
            continue;
        }
        let _ = writeln!(out, "  subgraph cluster_{k} {{");
        out.push_str("    style=rounded; label=\"equivalent\";\n");
        for &i in class {
            let _ = writeln!(out, "    {};", dot_id(&specs[i].name));
        }
        for w in class.windows(2) {
            let _ = writeln!(
                out,
                "    {} -> {} [style=dashed, dir=both];",
                dot_id(&specs[w[0]].name),
                dot_id(&specs[w[1]].name)
            );
        }
        out.push_str("  }\n");
    }
    for (a, b) in analysis.hasse_edges() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            dot_id(&specs[classes[a][0]].name),
            dot_id(&specs[classes[b][0]].name)
        );
    }
    out.push_str("}\n");
    out
}

/// The hourglass around one spec: implementations fan in from below,
/// applications fan out above. Edges are labelled with the witness program.
pub fn hourglass_dot(pre: &ImageSet, post: &ImageSet) -> String {
    let subject = &pre.subject;
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_id(&format!("{subject} hourglass")));
    out.push_str("  rankdir=BT;\n");
    let _ = writeln!(
        out,
        "  {} [shape=box, style=bold];",
        dot_id(&format!("layer:{subject}"))
    );
    for m in &pre.members {
        let _ = writeln!(
            out,
            "  {} [label={}];",
            dot_id(&format!("impl:{}", m.spec)),
            dot_id(&m.spec)
        );
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(&format!("impl:{}", m.spec)),
            dot_id(&format!("layer:{subject}")),
            dot_id(&m.witness)
        );
    }
    for m in &post.members {
        let _ = writeln!(
            out,
            "  {} [label={}];",
            dot_id(&format!("app:{}", m.spec)),
            dot_id(&m.spec)
        );
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(&format!("layer:{subject}")),
            dot_id(&format!("app:{}", m.spec)),
            dot_id(&m.witness)
        );
    }
    out.push_str("}\n");
    out
}
