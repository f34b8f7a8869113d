//! The `hourglass` command line. [`run`] does all the work so tests can drive
//! it in-process; `main` only wires it to the real streams.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict or
//! hourglass violations, 2 for usage, parse and validation errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hourglass::report::{hourglass_dot, lattice_dot, to_json, tradeoff_csv, AnalysisReport, TRADEOFF_CSV_HEADER};
use hourglass::sufficiency::minimally_sufficient_relative;
use hourglass::{
    generic, minimally_sufficient, parse_scenario_with, tradeoff_table, Analysis, CandidateSpace, CandidateSpaces,
    ClosureSpace, DeclaredSpace, EngineRegistry, EntailmentEngine, GenericnessQuery, ImageKind, ImageSet, ParseOptions,
    Universe,
};
use serde_json::json;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hourglass",
    version,
    about = "Analyse spanning layers of a layered system described in a .hgl scenario"
)]
struct Cli {
    /// Output format; each subcommand supports a subset.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Entailment engine (truth-table, dpll).
    #[arg(long, global = true, value_name = "NAME", default_value = hourglass::logic::DEFAULT_ENGINE)]
    engine: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a scenario; with --format json, print the full analysis report.
    Check { file: PathBuf },
    /// Does the theory of S1 entail the theory of S2?
    Entails { file: PathBuf, s1: String, s2: String },
    /// Is S1 weaker than S2?
    Weaker { file: PathBuf, s1: String, s2: String },
    /// Implementations (pre-image) and applications (post-image) of SPEC.
    Images {
        file: PathBuf,
        spec: String,
        /// List every witnessing program, not just the first.
        #[arg(long)]
        all_witnesses: bool,
    },
    /// The weakness order over declared specs.
    Lattice { file: PathBuf },
    /// Check both hourglass inclusions for every weaker pair.
    Verify { file: PathBuf },
    /// Does SPEC support every necessary application?
    Sufficient { file: PathBuf, spec: String },
    /// Is SPEC sufficient with no strictly weaker sufficient candidate?
    Minimal {
        file: PathBuf,
        spec: String,
        /// Also consider every conjunction of atoms as a candidate.
        #[arg(long)]
        closure: bool,
    },
    /// Is SPEC sufficient, with every strict weakening losing at least EPSILON of value?
    Generic {
        file: PathBuf,
        spec: String,
        #[arg(long, value_name = "E")]
        epsilon: f64,
        #[arg(long)]
        closure: bool,
    },
    /// One row per spec: image sizes, necessary coverage and verdicts.
    Tradeoff { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Entails { .. } => "entails",
            Command::Weaker { .. } => "weaker",
            Command::Images { .. } => "images",
            Command::Lattice { .. } => "lattice",
            Command::Verify { .. } => "verify",
            Command::Sufficient { .. } => "sufficient",
            Command::Minimal { .. } => "minimal",
            Command::Generic { .. } => "generic",
            Command::Tradeoff { .. } => "tradeoff",
        }
    }

    fn formats(&self) -> &'static [Format] {
        match self {
            Command::Images { .. } | Command::Lattice { .. } => &[Format::Text, Format::Json, Format::Dot],
            Command::Tradeoff { .. } => &[Format::Text, Format::Json, Format::Csv],
            _ => &[Format::Text, Format::Json],
        }
    }

    fn file(&self) -> &Path {
        match self {
            Command::Check { file }
            | Command::Entails { file, .. }
            | Command::Weaker { file, .. }
            | Command::Images { file, .. }
            | Command::Lattice { file }
            | Command::Verify { file }
            | Command::Sufficient { file, .. }
            | Command::Minimal { file, .. }
            | Command::Generic { file, .. }
            | Command::Tradeoff { file } => file,
        }
    }
}

/// Rendered output plus the exit code it implies.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn verdict(text: String, holds: bool) -> Self {
        Output {
            text,
            code: if holds { EXIT_TRUE } else { EXIT_FALSE },
        }
    }

    fn ok(text: String) -> Self {
        Output { text, code: EXIT_TRUE }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_TRUE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => out.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_ERROR
                }
            }
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, String> {
    let cmd = &cli.command;
    if !cmd.formats().contains(&cli.format) {
        let supported: Vec<&str> = cmd.formats().iter().map(|f| f.name()).collect();
        return Err(format!(
            "`{}` does not support --format {} (supported: {})",
            cmd.name(),
            cli.format.name(),
            supported.join(", ")
        ));
    }
    let engine = EngineRegistry::builtin().get(&cli.engine).map_err(|e| e.to_string())?;
    let universe = load(cmd.file(), engine.as_ref())?;
    let analysis = Analysis::new(&universe, engine.as_ref()).map_err(|e| e.to_string())?;
    let ctx = Ctx {
        analysis: &analysis,
        format: cli.format,
    };
    let result = match cmd {
        Command::Check { .. } => ctx.check(),
        Command::Entails { s1, s2, .. } => ctx.entails(s1, s2),
        Command::Weaker { s1, s2, .. } => ctx.weaker(s1, s2),
        Command::Images {
            spec, all_witnesses, ..
        } => ctx.images(spec, *all_witnesses),
        Command::Lattice { .. } => ctx.lattice(),
        Command::Verify { .. } => ctx.verify(),
        Command::Sufficient { spec, .. } => ctx.sufficient(spec),
        Command::Minimal { spec, closure, .. } => ctx.minimal(spec, &*space(*closure)),
        Command::Generic {
            spec, epsilon, closure, ..
        } => ctx.generic(spec, *epsilon, &*space(*closure)),
        Command::Tradeoff { .. } => ctx.tradeoff(),
    };
    result.map_err(|e| e.to_string())
}

fn space(closure: bool) -> Arc<dyn CandidateSpace> {
    let name = if closure {
        ClosureSpace::NAME
    } else {
        DeclaredSpace::NAME
    };
    CandidateSpaces::builtin().get(name).expect("builtin candidate space")
}

fn load(path: &Path, engine: &dyn EntailmentEngine) -> Result<Universe, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".to_string());
    let options = ParseOptions {
        atom_limit: engine.atom_limit(),
    };
    parse_scenario_with(&name, &text, options).map_err(|e| format!("{}: {e}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

struct Ctx<'a, 'u> {
    analysis: &'a Analysis<'u>,
    format: Format,
}

type CmdResult = hourglass::Result<Output>;

impl Ctx<'_, '_> {
    fn universe(&self) -> &Universe {
        self.analysis.universe()
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }

    fn check(&self) -> CmdResult {
        if self.json() {
            return Ok(Output::ok(AnalysisReport::build(self.analysis)?.to_json()));
        }
        let u = self.universe();
        Ok(Output::ok(format!(
            "ok: {} ({} atoms, {} specs, {} programs, necessary {{{}}})\n",
            u.name,
            u.vocab().len(),
            u.specs().len(),
            u.programs().len(),
            u.necessary().join(", ")
        )))
    }

    fn entails(&self, s1: &str, s2: &str) -> CmdResult {
        let u = self.universe();
        let (a, b) = (u.spec(s1)?, u.spec(s2)?);
        let holds = self.analysis.logic().theory_entails(&a.theory, &b.theory)?;
        let text = if self.json() {
            to_json(&json!({ "premises": s1, "conclusions": s2, "entails": holds }))
        } else {
            format!("{}\n", yes_no(holds))
        };
        Ok(Output::verdict(text, holds))
    }

    fn weaker(&self, s1: &str, s2: &str) -> CmdResult {
        let u = self.universe();
        let (i, j) = (u.spec_index(s1)?, u.spec_index(s2)?);
        let holds = self.analysis.weaker_idx(i, j);
        let strict = self.analysis.strictly_weaker_idx(i, j);
        let text = if self.json() {
            to_json(&json!({
                "weaker": s1,
                "stronger": s2,
                "holds": holds,
                "strict": strict,
                "equivalent": self.analysis.equivalent_idx(i, j),
            }))
        } else if strict {
            format!("true\n{s1} is strictly weaker than {s2}\n")
        } else if holds {
            format!("true\n{s1} and {s2} are equivalent\n")
        } else {
            "false\n".to_string()
        };
        Ok(Output::verdict(text, holds))
    }

    fn images(&self, spec: &str, all_witnesses: bool) -> CmdResult {
        let pre = self.analysis.image(spec, ImageKind::Pre, all_witnesses)?;
        let post = self.analysis.image(spec, ImageKind::Post, all_witnesses)?;
        let text = match self.format {
            Format::Json => to_json(&json!({ "pre": pre, "post": post })),
            Format::Dot => hourglass_dot(&pre, &post),
            _ => {
                let mut out = String::new();
                write_image(&mut out, "pre", &pre);
                write_image(&mut out, "post", &post);
                out
            }
        };
        Ok(Output::ok(text))
    }

    fn lattice(&self) -> CmdResult {
        let specs = self.universe().specs();
        let classes = self.analysis.equivalence_classes();
        let class_names: Vec<Vec<&str>> = classes
            .iter()
            .map(|c| c.iter().map(|&i| specs[i].name.as_str()).collect())
            .collect();
        let covering: Vec<(&str, &str)> = self
            .analysis
            .hasse_edges()
            .into_iter()
            .map(|(a, b)| (class_names[a][0], class_names[b][0]))
            .collect();
        let text = match self.format {
            Format::Dot => lattice_dot(self.analysis),
            Format::Json => to_json(&json!({
                "classes": class_names,
                "covering": covering
                    .iter()
                    .map(|(w, s)| json!({ "weaker": w, "stronger": s }))
                    .collect::<Vec<_>>(),
                "edges": self.analysis.weakness_lattice(),
            })),
            _ => {
                let mut out = String::new();
                for c in class_names.iter().filter(|c| c.len() > 1) {
                    let _ = writeln!(out, "equivalent: {}", c.join(" = "));
                }
                for (w, s) in &covering {
                    let _ = writeln!(out, "{w} < {s}");
                }
                if out.is_empty() {
                    out.push_str("no weakness relations\n");
                }
                out
            }
        };
        Ok(Output::ok(text))
    }

    fn verify(&self) -> CmdResult {
        let report = self.analysis.verify_hourglass();
        let holds = report.holds();
        let text = if self.json() {
            to_json(&report)
        } else {
            let mut out = format!("checked {} weaker pairs\n", report.pairs_checked);
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "violation: {} weaker than {}: {:?} [{}]",
                    v.weaker,
                    v.stronger,
                    v.property,
                    v.offending.join(", ")
                );
            }
            let _ = writeln!(out, "{} violations", report.violations.len());
            out
        };
        Ok(Output::verdict(text, holds))
    }

    /// Coverage of each necessary spec with its first witness.
    fn coverage(&self, spec: &str) -> hourglass::Result<Vec<(String, Option<String>)>> {
        let post = self.analysis.image(spec, ImageKind::Post, false)?;
        Ok(self
            .universe()
            .necessary()
            .iter()
            .map(|n| {
                let witness = post.members.iter().find(|m| &m.spec == n).map(|m| m.witness.clone());
                (n.clone(), witness)
            })
            .collect())
    }

    fn sufficient(&self, spec: &str) -> CmdResult {
        let holds = hourglass::sufficient(self.analysis, spec)?;
        let coverage = self.coverage(spec)?;
        let text = if self.json() {
            to_json(&json!({
                "subject": spec,
                "sufficient": holds,
                "coverage": coverage
                    .iter()
                    .map(|(n, w)| json!({ "necessary": n, "witness": w }))
                    .collect::<Vec<_>>(),
            }))
        } else {
            let mut out = format!("{}\n", yes_no(holds));
            for (n, w) in &coverage {
                match w {
                    Some(w) => writeln!(out, "  {n}: covered via {w}"),
                    None => writeln!(out, "  {n}: not covered"),
                }
                .unwrap();
            }
            out
        };
        Ok(Output::verdict(text, holds))
    }

    fn minimal(&self, spec: &str, space: &dyn CandidateSpace) -> CmdResult {
        let v = minimally_sufficient(self.analysis, spec, space)?;
        let text = if self.json() {
            let relative = minimally_sufficient_relative(self.analysis, spec, space)?;
            to_json(&json!({ "verdict": v, "minimal_relative_to_value": relative }))
        } else {
            let mut out = format!("{}\n", yes_no(v.minimal));
            let _ = writeln!(out, "  candidates: {}", v.candidate_space);
            let _ = writeln!(out, "  sufficient: {}", v.sufficient);
            match &v.sufficient_weakening {
                Some(w) => writeln!(out, "  strictly weaker sufficient candidate: {w}"),
                None => writeln!(out, "  strictly weaker sufficient candidate: none"),
            }
            .unwrap();
            out
        };
        Ok(Output::verdict(text, v.minimal))
    }

    fn generic(&self, spec: &str, epsilon: f64, space: &dyn CandidateSpace) -> CmdResult {
        let query = GenericnessQuery::new(spec, epsilon)?;
        let v = generic(self.analysis, &query, space)?;
        let text = if self.json() {
            to_json(&v)
        } else {
            let mut out = format!("{}\n", yes_no(v.generic));
            let _ = writeln!(out, "  reading: {}", v.reading);
            let _ = writeln!(out, "  candidates: {}", v.candidate_space);
            let _ = writeln!(out, "  epsilon: {}", v.epsilon);
            let _ = writeln!(out, "  necessary value: {}", v.necessary_value);
            let _ = writeln!(out, "  sufficient: {}", v.sufficient);
            match &v.worst_weakening {
                Some(w) => writeln!(out, "  least-loss weakening: {} (loss {})", w.spec, w.loss),
                None => writeln!(out, "  least-loss weakening: none"),
            }
            .unwrap();
            out
        };
        Ok(Output::verdict(text, v.generic))
    }

    fn tradeoff(&self) -> CmdResult {
        let rows = tradeoff_table(self.analysis)?;
        let text = match self.format {
            Format::Csv => tradeoff_csv(&rows),
            Format::Json => to_json(&rows),
            _ => {
                let header: Vec<&str> = TRADEOFF_CSV_HEADER.split(',').collect();
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.spec.clone(),
                            r.pre_count.to_string(),
                            r.post_count.to_string(),
                            r.covered.to_string(),
                            r.value.to_string(),
                            r.sufficient.to_string(),
                            r.minimal.to_string(),
                        ]
                    })
                    .collect();
                let widths: Vec<usize> = (0..header.len())
                    .map(|c| cells.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap())
                    .collect();
                let mut out = String::new();
                let line = |out: &mut String, row: Vec<&str>| {
                    let padded: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
                    let _ = writeln!(out, "{}", padded.join("  ").trim_end());
                };
                line(&mut out, header.clone());
                for r in &cells {
                    line(&mut out, r.iter().map(String::as_str).collect());
                }
                out
            }
        };
        Ok(Output::ok(text))
    }
}

fn write_image(out: &mut String, label: &str, img: &ImageSet) {
    let _ = writeln!(out, "{label}({}): {} specs", img.subject, img.members.len());
    for m in &img.members {
        let via = match &m.witnesses {
            Some(all) => all.join(", "),
            None => m.witness.clone(),
        };
        let _ = writeln!(out, "  {} via {via}", m.spec);
    }
}
