//! Recursive-descent parser for formula expressions.
//!
//! Precedence, tightest first: `!`, `&`, `|`, `->`. `&` and `|` fold to the
//! left, `->` nests to the right.

use crate::error::{Error, Pos, Result};
use crate::lexer::{tokenize, Cursor, Tok};
use crate::logic::formula::{is_atom_name, Formula, Vocabulary};

const MAX_NESTING: usize = 512;

/// Parses a standalone formula; every atom must be in `vocab`.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    let mut resolve = |name: &str, pos: Pos| {
        if vocab.contains(name) {
            Ok(())
        } else {
            Err(Error::UnknownAtom {
                name: name.to_string(),
                pos: Some(pos),
            })
        }
    };
    let f = FormulaParser::new(&mut cur, &mut resolve).formula()?;
    if cur.peek().tok != Tok::Eof {
        return Err(cur.unexpected("an operator or end of input"));
    }
    Ok(f)
}

/// Parses one formula starting at the cursor. `resolve` validates each atom
/// reference as it is read.
pub(crate) fn parse_formula_at(
    cur: &mut Cursor<'_>,
    resolve: &mut dyn FnMut(&str, Pos) -> Result<()>,
) -> Result<Formula> {
    FormulaParser::new(cur, resolve).formula()
}

struct FormulaParser<'c, 't, 'r> {
    cur: &'c mut Cursor<'t>,
    resolve: &'r mut dyn FnMut(&str, Pos) -> Result<()>,
    depth: usize,
}

impl<'c, 't, 'r> FormulaParser<'c, 't, 'r> {
    fn new(cur: &'c mut Cursor<'t>, resolve: &'r mut dyn FnMut(&str, Pos) -> Result<()>) -> Self {
        FormulaParser { cur, resolve, depth: 0 }
    }

    fn formula(&mut self) -> Result<Formula> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Error::Syntax {
                pos: self.cur.peek().pos,
                message: "formula nested too deeply".to_string(),
            });
        }
        let f = self.implication();
        self.depth -= 1;
        f
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.cur.eat(&Tok::Pipe) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.negation()?;
        while self.cur.eat(&Tok::Amp) {
            f = Formula::and(f, self.negation()?);
        }
        Ok(f)
    }

    fn negation(&mut self) -> Result<Formula> {
        if self.cur.eat(&Tok::Bang) {
            self.depth += 1;
            if self.depth > MAX_NESTING {
                return Err(Error::Syntax {
                    pos: self.cur.peek().pos,
                    message: "formula nested too deeply".to_string(),
                });
            }
            let inner = self.negation();
            self.depth -= 1;
            Ok(Formula::not(inner?))
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        let t = self.cur.peek();
        match &t.tok {
            Tok::Ident(s) if s == "true" => {
                self.cur.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.cur.bump();
                Ok(Formula::False)
            }
            Tok::Ident(s) if is_atom_name(s) => {
                self.cur.bump();
                (self.resolve)(s, t.pos)?;
                Ok(Formula::Atom(s.clone()))
            }
            Tok::LParen => {
                self.cur.bump();
                let f = self.formula()?;
                self.cur.expect(&Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.cur.unexpected("a formula (atom, `true`, `false`, `!` or `(`)")),
        }
    }
}
