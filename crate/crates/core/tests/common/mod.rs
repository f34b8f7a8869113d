//! Test-only helpers: a brute-force semantic oracle that shares no code path
//! with the library's engines or `Analysis`, and seeded random generators.
#![allow(dead_code)]

use hourglass::{Atom, Formula, ProductionRule, Program, Specification, Theory, Universe};
use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------- oracle

fn eval(f: &Formula, atoms: &[String], assignment: u64) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(n) => {
            let i = atoms.iter().position(|a| a == n).expect("atom in vocabulary");
            assignment >> i & 1 == 1
        }
        Formula::Not(x) => !eval(x, atoms, assignment),
        Formula::And(a, b) => eval(a, atoms, assignment) && eval(b, atoms, assignment),
        Formula::Or(a, b) => eval(a, atoms, assignment) || eval(b, atoms, assignment),
        Formula::Implies(a, b) => !eval(a, atoms, assignment) || eval(b, atoms, assignment),
    }
}

/// Enumerates every assignment over the whole vocabulary.
pub fn oracle_entails(premises: &[Formula], conclusion: &Formula, atoms: &[String]) -> bool {
    assert!(atoms.len() <= 16, "oracle is for small vocabularies");
    (0..1u64 << atoms.len()).all(|m| !premises.iter().all(|p| eval(p, atoms, m)) || eval(conclusion, atoms, m))
}

pub fn oracle_theory_entails(premises: &[Formula], conclusions: &[Formula], atoms: &[String]) -> bool {
    conclusions.iter().all(|c| oracle_entails(premises, c, atoms))
}

pub fn atom_names(u: &Universe) -> Vec<String> {
    u.vocab().atoms().iter().map(|a| a.name.clone()).collect()
}

pub fn oracle_weaker(s1: &Specification, s2: &Specification, atoms: &[String]) -> bool {
    oracle_theory_entails(s2.theory.formulas(), s1.theory.formulas(), atoms)
}

pub fn oracle_strictly_weaker(s1: &Specification, s2: &Specification, atoms: &[String]) -> bool {
    oracle_weaker(s1, s2, atoms) && !oracle_weaker(s2, s1, atoms)
}

pub fn oracle_apply(p: &Program, lower: &[Formula], atoms: &[String]) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    for r in &p.rules {
        if oracle_entails(lower, &r.guard, atoms) && !out.contains(&r.gives) {
            out.push(r.gives.clone());
        }
    }
    out
}

pub fn oracle_implements(lower: &[Formula], p: &Program, upper: &[Formula], atoms: &[String]) -> bool {
    oracle_theory_entails(&oracle_apply(p, lower, atoms), upper, atoms)
}

/// post(lower) restricted to `targets`, for a theory that need not be declared.
pub fn oracle_post_covers(u: &Universe, lower: &[Formula], target: &Specification) -> bool {
    let atoms = atom_names(u);
    u.programs()
        .iter()
        .any(|p| oracle_implements(lower, p, target.theory.formulas(), &atoms))
}

pub fn oracle_sufficient(u: &Universe, lower: &[Formula]) -> bool {
    u.necessary()
        .iter()
        .all(|n| oracle_post_covers(u, lower, u.spec(n).unwrap()))
}

/// Minimal sufficiency by enumerating every declared candidate.
pub fn oracle_minimally_sufficient(u: &Universe, subject: &str) -> bool {
    let atoms = atom_names(u);
    let s = u.spec(subject).unwrap();
    oracle_sufficient(u, s.theory.formulas())
        && !u
            .specs()
            .iter()
            .any(|c| oracle_strictly_weaker(c, s, &atoms) && oracle_sufficient(u, c.theory.formulas()))
}

// ------------------------------------------------------------ generators

pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..20) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(atoms.choose(rng).unwrap().clone()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Formula::not(random_formula(rng, atoms, d)),
        1 => Formula::and(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        2 => Formula::or(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        _ => Formula::implies(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
    }
}

/// Mostly plain atoms and small conjunctions, so that guards fire often.
pub fn random_simple<R: Rng>(rng: &mut R, atoms: &[String]) -> Formula {
    let k = rng.gen_range(1..=2);
    Formula::conjunction((0..k).map(|_| Formula::atom(atoms.choose(rng).unwrap().clone())))
}

pub fn random_theory<R: Rng>(rng: &mut R, atoms: &[String], max_formulas: usize, depth: usize) -> Theory {
    let n = rng.gen_range(0..=max_formulas);
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                random_simple(rng, atoms)
            } else {
                random_formula(rng, atoms, depth)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct UniverseShape {
    pub max_atoms: usize,
    pub max_specs: usize,
    pub max_programs: usize,
    pub depth: usize,
    pub max_necessary: usize,
}

pub const ACCEPTANCE_SHAPE: UniverseShape = UniverseShape {
    max_atoms: 10,
    max_specs: 30,
    max_programs: 12,
    depth: 4,
    max_necessary: 3,
};

/// A random valid universe. Some specs are weakenings or strengthenings of
/// earlier ones so that the weakness order is not mostly empty.
pub fn random_universe<R: Rng>(rng: &mut R, shape: UniverseShape, name: &str) -> Universe {
    let k = rng.gen_range(1..=shape.max_atoms);
    let atoms: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
    let mut b = Universe::builder(name);
    for a in &atoms {
        let atom = if rng.gen_bool(0.2) {
            Atom::described(a.clone(), format!("atom \"{a}\" \\ described"))
        } else {
            Atom::new(a.clone())
        };
        b.add_atom(atom, None).unwrap();
    }

    let n_specs = rng.gen_range(0..=shape.max_specs);
    let mut theories: Vec<Theory> = Vec::new();
    for i in 0..n_specs {
        let theory = if !theories.is_empty() && rng.gen_bool(0.4) {
            let base = theories.choose(rng).unwrap().clone();
            if rng.gen_bool(0.5) {
                // weakening: a subset, possibly with a disjunct added
                let mut weaker = Theory::new();
                for f in base.iter() {
                    if !rng.gen_bool(0.6) {
                        continue;
                    }
                    if rng.gen_bool(0.3) {
                        weaker.insert(Formula::or(f.clone(), random_simple(rng, &atoms)));
                    } else {
                        weaker.insert(f.clone());
                    }
                }
                weaker
            } else {
                // strengthening
                base.union(&random_theory(rng, &atoms, 2, shape.depth))
            }
        } else {
            random_theory(rng, &atoms, 3, shape.depth)
        };
        theories.push(theory.clone());
        let mut spec = Specification::new(format!("S{i}"), theory);
        if rng.gen_bool(0.1) {
            spec = spec.with_annotation("notes", "random \"note\"");
        }
        b.add_spec(spec, None).unwrap();
    }

    let n_programs = rng.gen_range(0..=shape.max_programs);
    for i in 0..n_programs {
        let n_rules = rng.gen_range(0..=4);
        let rules: Vec<ProductionRule> = (0..n_rules)
            .map(|_| {
                let guard = if rng.gen_bool(0.7) {
                    random_simple(rng, &atoms)
                } else {
                    random_formula(rng, &atoms, 2)
                };
                let gives = if rng.gen_bool(0.7) {
                    random_simple(rng, &atoms)
                } else {
                    random_formula(rng, &atoms, 2)
                };
                ProductionRule::new(guard, gives)
            })
            .collect();
        b.add_program(Program::new(format!("P{i}"), rules), None).unwrap();
    }

    if n_specs > 0 && shape.max_necessary > 0 && rng.gen_bool(0.85) {
        let mut idx: Vec<usize> = (0..n_specs).collect();
        idx.shuffle(rng);
        let take = rng.gen_range(1..=shape.max_necessary.min(n_specs));
        let names = idx[..take].iter().map(|i| (format!("S{i}"), None)).collect();
        b.set_necessary(names, None).unwrap();
    }
    for i in 0..n_specs {
        if rng.gen_bool(0.25) {
            let w = rng.gen_range(0..8) as f64 * 0.25;
            b.set_value(&format!("S{i}"), w, None).unwrap();
        }
    }
    b.build()
}

// ---------------------------------------------------------------- golden

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// The report JSON and tradeoff CSV for one bundled scenario.
pub fn golden_outputs(bundled: &hourglass::scenario::BundledScenario) -> (String, String) {
    use hourglass::report::{tradeoff_csv, ScenarioReport};
    let u = hourglass::parse_scenario(bundled.name, bundled.source).expect("bundled scenario parses");
    let analysis = hourglass::Analysis::new(&u, hourglass::logic::default_engine()).unwrap();
    let report = ScenarioReport::build(bundled, &analysis).unwrap();
    let csv = tradeoff_csv(&hourglass::tradeoff_table(&analysis).unwrap());
    (report.to_json(), csv)
}
