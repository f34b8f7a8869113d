//! Parser and validator for `.hgl` scenario files.

use std::collections::HashSet;

use crate::error::{Error, Pos, Result};
use crate::lexer::{tokenize, Cursor, Tok};
use crate::logic::parse::parse_formula_at;
use crate::logic::{Atom, Formula, Theory, EXHAUSTIVE_ATOM_LIMIT};
use crate::program::{ProductionRule, Program};
use crate::spec::Specification;
use crate::universe::{Universe, UniverseBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Vocabulary cap; `None` lifts it (only sensible with an uncapped engine).
    pub atom_limit: Option<usize>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            atom_limit: Some(EXHAUSTIVE_ATOM_LIMIT),
        }
    }
}

/// Parses and validates a scenario with the default atom cap.
pub fn parse_scenario(name: &str, text: &str) -> Result<Universe> {
    parse_scenario_with(name, text, ParseOptions::default())
}

pub fn parse_scenario_with(name: &str, text: &str, options: ParseOptions) -> Result<Universe> {
    let toks = tokenize(text)?;
    let declared = Declared::scan(&toks);
    let mut p = ScenarioParser {
        cur: Cursor::new(&toks),
        builder: Universe::builder(name).atom_limit(options.atom_limit),
        declared,
    };
    p.file()?;
    Ok(p.builder.build())
}

/// Names introduced anywhere in the file, used to tell a forward reference
/// from a reference to nothing at all.
struct Declared {
    atoms: HashSet<String>,
    specs: HashSet<String>,
}

impl Declared {
    fn scan(toks: &[crate::lexer::Token]) -> Self {
        let mut d = Declared {
            atoms: HashSet::new(),
            specs: HashSet::new(),
        };
        for w in toks.windows(2) {
            if let (Tok::Ident(kw), Tok::Ident(name)) = (&w[0].tok, &w[1].tok) {
                match kw.as_str() {
                    "atom" => {
                        d.atoms.insert(name.clone());
                    }
                    "spec" => {
                        d.specs.insert(name.clone());
                    }
                    _ => {}
                }
            }
        }
        d
    }
}

struct ScenarioParser<'t> {
    cur: Cursor<'t>,
    builder: UniverseBuilder,
    declared: Declared,
}

impl<'t> ScenarioParser<'t> {
    fn file(&mut self) -> Result<()> {
        loop {
            let t = self.cur.peek();
            match &t.tok {
                Tok::Eof => return Ok(()),
                Tok::Ident(kw) => match kw.as_str() {
                    "atom" => self.atom()?,
                    "spec" => self.spec()?,
                    "program" => self.program()?,
                    "necessary" => self.necessary()?,
                    "value" => self.value()?,
                    "annotate" => self.annotate()?,
                    _ => return Err(self.cur.unexpected("a statement keyword")),
                },
                _ => return Err(self.cur.unexpected("a statement keyword")),
            }
        }
    }

    fn atom(&mut self) -> Result<()> {
        self.cur.bump();
        let (name, pos) = self.cur.expect_ident("an atom name")?;
        let description = match &self.cur.peek().tok {
            Tok::Str(s) => {
                let s = s.clone();
                self.cur.bump();
                Some(s)
            }
            _ => None,
        };
        self.builder.add_atom(Atom { name, description }, Some(pos))
    }

    fn formula(&mut self) -> Result<Formula> {
        let vocab = self.builder.vocab();
        let declared = &self.declared.atoms;
        let mut resolve = |name: &str, pos: Pos| {
            if vocab.contains(name) {
                Ok(())
            } else if declared.contains(name) {
                Err(Error::ForwardReference {
                    name: name.to_string(),
                    pos: Some(pos),
                })
            } else {
                Err(Error::UnknownAtom {
                    name: name.to_string(),
                    pos: Some(pos),
                })
            }
        };
        parse_formula_at(&mut self.cur, &mut resolve)
    }

    fn spec(&mut self) -> Result<()> {
        self.cur.bump();
        let (name, pos) = self.cur.expect_ident("a specification name")?;
        self.cur.expect(&Tok::LBrace)?;
        let mut theory = Theory::new();
        if !self.cur.eat(&Tok::RBrace) {
            loop {
                theory.insert(self.formula()?);
                if self.cur.eat(&Tok::RBrace) {
                    break;
                }
                if !self.cur.eat(&Tok::Comma) {
                    return Err(self.cur.unexpected("`,` or `}`"));
                }
            }
        }
        self.builder.add_spec(Specification::new(name, theory), Some(pos))
    }

    fn program(&mut self) -> Result<()> {
        self.cur.bump();
        let (name, pos) = self.cur.expect_ident("a program name")?;
        self.cur.expect(&Tok::LBrace)?;
        let mut rules = Vec::new();
        loop {
            match &self.cur.peek().tok {
                Tok::RBrace => {
                    self.cur.bump();
                    break;
                }
                Tok::Ident(kw) if kw == "when" => {
                    self.cur.bump();
                    let guard = self.formula()?;
                    match &self.cur.peek().tok {
                        Tok::Ident(kw) if kw == "gives" => {
                            self.cur.bump();
                        }
                        _ => return Err(self.cur.unexpected("`gives`")),
                    }
                    let gives = self.formula()?;
                    self.cur.expect(&Tok::Semi)?;
                    rules.push(ProductionRule::new(guard, gives));
                }
                _ => return Err(self.cur.unexpected("`when` or `}`")),
            }
        }
        self.builder.add_program(Program::new(name, rules), Some(pos))
    }

    fn spec_ref(&self, name: &str, pos: Pos) -> Result<()> {
        if self.builder.has_spec(name) {
            Ok(())
        } else if self.declared.specs.contains(name) {
            Err(Error::ForwardReference {
                name: name.to_string(),
                pos: Some(pos),
            })
        } else {
            Err(Error::UnknownSpec {
                name: name.to_string(),
                pos: Some(pos),
            })
        }
    }

    fn necessary(&mut self) -> Result<()> {
        let kw_pos = self.cur.bump().pos;
        self.cur.expect(&Tok::LBrace)?;
        let mut names = Vec::new();
        loop {
            let (name, pos) = self.cur.expect_ident("a specification name")?;
            self.spec_ref(&name, pos)?;
            names.push((name, Some(pos)));
            if self.cur.eat(&Tok::RBrace) {
                break;
            }
            if !self.cur.eat(&Tok::Comma) {
                return Err(self.cur.unexpected("`,` or `}`"));
            }
        }
        self.builder.set_necessary(names, Some(kw_pos))
    }

    fn value(&mut self) -> Result<()> {
        self.cur.bump();
        let (name, pos) = self.cur.expect_ident("a specification name")?;
        self.spec_ref(&name, pos)?;
        self.cur.expect(&Tok::Eq)?;
        let t = self.cur.peek();
        let number = match &t.tok {
            Tok::Num(n) => {
                self.cur.bump();
                n.parse::<f64>().map_err(|_| Error::Syntax {
                    pos: t.pos,
                    message: format!("malformed number `{n}`"),
                })?
            }
            _ => return Err(self.cur.unexpected("a nonnegative number")),
        };
        self.builder.set_value(&name, number, Some(pos))
    }

    fn annotate(&mut self) -> Result<()> {
        self.cur.bump();
        let (spec, pos) = self.cur.expect_ident("a specification name")?;
        self.spec_ref(&spec, pos)?;
        let (key, _) = self.cur.expect_ident("an annotation key")?;
        self.cur.expect(&Tok::Eq)?;
        let text = match &self.cur.peek().tok {
            Tok::Str(s) => {
                let s = s.clone();
                self.cur.bump();
                s
            }
            _ => return Err(self.cur.unexpected("a string literal")),
        };
        self.builder.annotate(&spec, &key, &text, Some(pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let u = parse_scenario("m", "atom a\nspec S { a }").unwrap();
        assert_eq!(u.vocab().len(), 1);
        assert_eq!(u.specs().len(), 1);
        assert!(u.programs().is_empty());
    }

    #[test]
    fn full_statement_set() {
        let u = parse_scenario(
            "full",
            r#"
            # comment
            atom a "first atom"
            atom x
            spec S { a }
            spec T { x, a -> x }
            spec E { }
            program P {
                when a gives x;
                when a & x gives a | x;
            }
            program NOP { }
            necessary { T, E }
            value T = 2.5
            annotate S notes = "a \"quoted\" note"
            "#,
        )
        .unwrap();
        assert_eq!(u.vocab().atoms()[0].description.as_deref(), Some("first atom"));
        assert_eq!(u.spec("T").unwrap().theory.len(), 2);
        assert!(u.spec("E").unwrap().theory.is_empty());
        assert_eq!(u.programs()[0].rules.len(), 2);
        assert!(u.programs()[1].rules.is_empty());
        assert_eq!(u.necessary(), &["T".to_string(), "E".to_string()]);
        assert_eq!(u.weight("T"), 2.5);
        assert_eq!(u.weight("S"), 1.0);
        assert_eq!(u.spec("S").unwrap().annotations["notes"], "a \"quoted\" note");
    }

    #[test]
    fn forward_reference_vs_unknown() {
        match parse_scenario("f", "spec S { a }\natom a") {
            Err(Error::ForwardReference { name, pos }) => {
                assert_eq!(name, "a");
                assert_eq!(pos, Some(Pos::new(1, 10)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_scenario("f", "atom a spec S { b }"),
            Err(Error::UnknownAtom { ref name, pos: Some(_) }) if name == "b"
        ));
        assert!(matches!(
            parse_scenario("f", "atom a necessary { S } spec S { a }"),
            Err(Error::ForwardReference { ref name, .. }) if name == "S"
        ));
        assert!(matches!(
            parse_scenario("f", "atom a value S = 1"),
            Err(Error::UnknownSpec { ref name, pos: Some(_) }) if name == "S"
        ));
    }

    #[test]
    fn validation_errors_carry_positions() {
        #[allow(clippy::type_complexity)]
        let cases: &[(&str, fn(&Error) -> bool)] = &[
            (
                "atom a atom a",
                |e| matches!(e, Error::DuplicateName { pos: Some(p), .. } if p.col == 13),
            ),
            ("atom a spec S { a } spec S { a }", |e| {
                matches!(e, Error::DuplicateName { .. })
            }),
            ("atom a spec S { a } value S = 1 value S = 2", |e| {
                matches!(e, Error::DuplicateValue { pos: Some(_), .. })
            }),
            ("atom a spec S { a } necessary { S } necessary { S }", |e| {
                matches!(e, Error::DuplicateNecessary { pos: Some(_) })
            }),
            ("atom a spec S { a } necessary { S, S }", |e| {
                matches!(e, Error::DuplicateName { .. })
            }),
            ("atom Big", |e| matches!(e, Error::InvalidAtomName { .. })),
            ("atom gives", |e| matches!(e, Error::InvalidAtomName { .. })),
            ("atom a spec S { a } annotate S k = \"1\" annotate S k = \"2\"", |e| {
                matches!(e, Error::DuplicateAnnotation { .. })
            }),
        ];
        for (text, check) in cases {
            let err = parse_scenario("v", text).unwrap_err();
            assert!(check(&err), "{text}: {err:?}");
        }
    }

    #[test]
    fn syntax_errors() {
        for text in [
            "atom",
            "spec S a",
            "atom a spec S { a b }",
            "atom a program P { when a x; }",
            "atom a program P { when a gives a }",
            "atom a spec S { a } value S = x",
            "atom a spec S { a } necessary { }",
            "frobnicate",
            "atom a spec S { a } annotate S k = 3",
        ] {
            assert!(matches!(parse_scenario("s", text), Err(Error::Syntax { .. })), "{text}");
        }
    }

    #[test]
    fn vocabulary_cap() {
        let text: String = (0..25).map(|i| format!("atom p{i}\n")).collect();
        assert_eq!(
            parse_scenario("big", &text),
            Err(Error::VocabularyTooLarge { size: 25, limit: 24 })
        );
        let u = parse_scenario_with("big", &text, ParseOptions { atom_limit: None }).unwrap();
        assert_eq!(u.vocab().len(), 25);
    }
}
