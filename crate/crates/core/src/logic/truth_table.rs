//! Exhaustive truth-table entailment, evaluated bit-parallel: each formula
//! becomes a bit vector with one bit per assignment of the atoms involved.

use crate::error::Result;
use crate::logic::engine::{relevant_atoms, EntailmentEngine, EXHAUSTIVE_ATOM_LIMIT};
use crate::logic::formula::{Formula, Theory, Vocabulary};

#[derive(Debug, Clone, Copy, Default)]
pub struct TruthTable;

impl TruthTable {
    pub const NAME: &'static str = "truth-table";
}

/// Low-word patterns for atoms 0..6: bit `j` is set iff bit `i` of `j` is set.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

struct Table<'f> {
    atoms: Vec<&'f str>,
    words: usize,
    /// Mask of meaningful bits in each word (only short of all-ones below 6 atoms).
    valid: u64,
}

impl<'f> Table<'f> {
    fn new(atoms: Vec<&'f str>) -> Self {
        let k = atoms.len();
        let (words, valid) = if k >= 6 {
            (1usize << (k - 6), u64::MAX)
        } else {
            (1, (1u64 << (1u32 << k)) - 1)
        };
        Table { atoms, words, valid }
    }

    fn atom(&self, name: &str) -> Vec<u64> {
        let i = self
            .atoms
            .iter()
            .position(|a| *a == name)
            .expect("atom collected during validation");
        if i < 6 {
            vec![LOW_PATTERNS[i]; self.words]
        } else {
            (0..self.words)
                .map(|w| if (w >> (i - 6)) & 1 == 1 { u64::MAX } else { 0 })
                .collect()
        }
    }

    fn eval(&self, f: &Formula) -> Vec<u64> {
        match f {
            Formula::True => vec![u64::MAX; self.words],
            Formula::False => vec![0; self.words],
            Formula::Atom(n) => self.atom(n),
            Formula::Not(x) => {
                let mut v = self.eval(x);
                v.iter_mut().for_each(|w| *w = !*w);
                v
            }
            Formula::And(a, b) => zip(self.eval(a), &self.eval(b), |x, y| x & y),
            Formula::Or(a, b) => zip(self.eval(a), &self.eval(b), |x, y| x | y),
            Formula::Implies(a, b) => zip(self.eval(a), &self.eval(b), |x, y| !x | y),
        }
    }

    fn models(&self, premises: &Theory) -> Vec<u64> {
        let mut acc = vec![self.valid; self.words];
        for p in premises {
            let v = self.eval(p);
            acc.iter_mut().zip(&v).for_each(|(a, b)| *a &= b);
        }
        acc
    }

    fn holds_on(&self, models: &[u64], conclusion: &Formula) -> bool {
        let c = self.eval(conclusion);
        models.iter().zip(&c).all(|(m, c)| m & !c == 0)
    }
}

fn zip(mut a: Vec<u64>, b: &[u64], op: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x = op(*x, *y));
    a
}

impl EntailmentEngine for TruthTable {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn atom_limit(&self) -> Option<usize> {
        Some(EXHAUSTIVE_ATOM_LIMIT)
    }

    fn entails(&self, premises: &Theory, conclusion: &Formula, vocab: &Vocabulary) -> Result<bool> {
        let atoms = relevant_atoms(premises, &[conclusion], vocab, self.atom_limit())?;
        let table = Table::new(atoms);
        let models = table.models(premises);
        Ok(table.holds_on(&models, conclusion))
    }

    fn theory_entails(&self, premises: &Theory, conclusions: &Theory, vocab: &Vocabulary) -> Result<bool> {
        let concl: Vec<&Formula> = conclusions.iter().collect();
        let atoms = relevant_atoms(premises, &concl, vocab, self.atom_limit())?;
        if concl.is_empty() {
            return Ok(true);
        }
        let table = Table::new(atoms);
        let models = table.models(premises);
        if models.iter().all(|w| *w == 0) {
            return Ok(true);
        }
        Ok(concl.iter().all(|c| table.holds_on(&models, c)))
    }
}
