//! Entailment by refutation: `premises ⊢ c` iff `premises ∧ ¬c` is
//! unsatisfiable. The query is Tseitin-encoded to CNF and decided by a
//! DPLL search with unit propagation. No vocabulary cap.

use crate::error::Result;
use crate::logic::engine::{relevant_atoms, EntailmentEngine};
use crate::logic::formula::{Formula, Theory, Vocabulary};

#[derive(Debug, Clone, Copy, Default)]
pub struct Dpll;

impl Dpll {
    pub const NAME: &'static str = "dpll";
}

type Lit = i32;

#[derive(Default)]
struct Cnf<'f> {
    atoms: Vec<&'f str>,
    vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl<'f> Cnf<'f> {
    fn fresh(&mut self) -> Lit {
        self.vars += 1;
        self.vars as Lit
    }

    /// Returns a literal equivalent to `f`, adding its defining clauses.
    fn encode(&mut self, f: &'f Formula) -> Lit {
        match f {
            Formula::True => {
                let v = self.fresh();
                self.clauses.push(vec![v]);
                v
            }
            Formula::False => {
                let v = self.fresh();
                self.clauses.push(vec![-v]);
                v
            }
            Formula::Atom(n) => {
                let i = self.atoms.iter().position(|a| a == n).expect("validated atom");
                (i + 1) as Lit
            }
            Formula::Not(x) => -self.encode(x),
            Formula::And(a, b) => {
                let (a, b) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.extend([vec![-v, a], vec![-v, b], vec![v, -a, -b]]);
                v
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.extend([vec![-v, a, b], vec![v, -a], vec![v, -b]]);
                v
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.extend([vec![-v, -a, b], vec![v, a], vec![v, -b]]);
                v
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unset,
    True,
    False,
}

struct Solver<'c> {
    clauses: &'c [Vec<Lit>],
    assign: Vec<Value>,
    trail: Vec<usize>,
}

impl<'c> Solver<'c> {
    fn value(&self, lit: Lit) -> Value {
        match self.assign[lit.unsigned_abs() as usize] {
            Value::Unset => Value::Unset,
            v if (v == Value::True) == (lit > 0) => Value::True,
            _ => Value::False,
        }
    }

    fn set(&mut self, lit: Lit) {
        let var = lit.unsigned_abs() as usize;
        self.assign[var] = if lit > 0 { Value::True } else { Value::False };
        self.trail.push(var);
    }

    fn undo_to(&mut self, mark: usize) {
        for var in self.trail.drain(mark..) {
            self.assign[var] = Value::Unset;
        }
    }

    /// Propagates unit clauses to a fixpoint; false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for clause in self.clauses {
                let mut unset = None;
                let mut unset_count = 0;
                let mut satisfied = false;
                for &l in clause {
                    match self.value(l) {
                        Value::True => {
                            satisfied = true;
                            break;
                        }
                        Value::Unset => {
                            unset_count += 1;
                            unset = Some(l);
                        }
                        Value::False => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match unset_count {
                    0 => return false,
                    1 => {
                        self.set(unset.unwrap());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        let Some(var) = (1..self.assign.len()).find(|&v| self.assign[v] == Value::Unset) else {
            return true;
        };
        for lit in [var as Lit, -(var as Lit)] {
            let mark = self.trail.len();
            self.set(lit);
            if self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

fn satisfiable(cnf: &Cnf<'_>) -> bool {
    let mut s = Solver {
        clauses: &cnf.clauses,
        assign: vec![Value::Unset; cnf.vars + 1],
        trail: Vec::new(),
    };
    s.search()
}

impl EntailmentEngine for Dpll {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn atom_limit(&self) -> Option<usize> {
        None
    }

    fn entails(&self, premises: &Theory, conclusion: &Formula, vocab: &Vocabulary) -> Result<bool> {
        let atoms = relevant_atoms(premises, &[conclusion], vocab, None)?;
        let mut cnf = Cnf {
            vars: atoms.len(),
            atoms,
            clauses: Vec::new(),
        };
        for p in premises {
            let l = cnf.encode(p);
            cnf.clauses.push(vec![l]);
        }
        let c = cnf.encode(conclusion);
        cnf.clauses.push(vec![-c]);
        Ok(!satisfiable(&cnf))
    }
}
