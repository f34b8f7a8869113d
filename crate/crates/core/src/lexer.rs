//! Tokenizer shared by the formula grammar and the scenario DSL.

use crate::error::{Error, Pos, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Num(String),
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Bang => "`!`".to_string(),
            Tok::Amp => "`&`".to_string(),
            Tok::Pipe => "`|`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::LBrace => "`{`".to_string(),
            Tok::RBrace => "`}`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Semi => "`;`".to_string(),
            Tok::Eq => "`=`".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits `text` into tokens. `#` starts a comment running to end of line.
/// The returned vector always ends with a single [`Tok::Eof`].
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos::new(line, col);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let tok = match c {
            '!' => {
                bump!();
                Tok::Bang
            }
            '&' => {
                bump!();
                Tok::Amp
            }
            '|' => {
                bump!();
                Tok::Pipe
            }
            '(' => {
                bump!();
                Tok::LParen
            }
            ')' => {
                bump!();
                Tok::RParen
            }
            '{' => {
                bump!();
                Tok::LBrace
            }
            '}' => {
                bump!();
                Tok::RBrace
            }
            ',' => {
                bump!();
                Tok::Comma
            }
            ';' => {
                bump!();
                Tok::Semi
            }
            '=' => {
                bump!();
                Tok::Eq
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    Tok::Arrow
                } else {
                    return Err(Error::Syntax {
                        pos,
                        message: "expected `->` after `-`".to_string(),
                    });
                }
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        None => {
                            return Err(Error::Syntax {
                                pos,
                                message: "unterminated string literal".to_string(),
                            })
                        }
                        Some('"') => break,
                        Some('\\') => {
                            let esc_pos = Pos::new(line, col);
                            match bump!() {
                                Some('"') => s.push('"'),
                                Some('\\') => s.push('\\'),
                                other => {
                                    return Err(Error::Syntax {
                                        pos: esc_pos,
                                        message: format!(
                                            "invalid escape `\\{}` in string literal",
                                            other.map(String::from).unwrap_or_default()
                                        ),
                                    })
                                }
                            }
                        }
                        Some(c) => s.push(c),
                    }
                }
                Tok::Str(s)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'.') {
                    s.push('.');
                    bump!();
                    let before = s.len();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            bump!();
                        } else {
                            break;
                        }
                    }
                    if s.len() == before {
                        return Err(Error::Syntax {
                            pos,
                            message: format!("malformed number `{s}`"),
                        });
                    }
                }
                Tok::Num(s)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos::new(line, col),
    });
    Ok(out)
}

/// Cursor over a token vector, shared by the recursive-descent parsers.
pub struct Cursor<'t> {
    toks: &'t [Token],
    idx: usize,
}

impl<'t> Cursor<'t> {
    pub fn new(toks: &'t [Token]) -> Self {
        Cursor { toks, idx: 0 }
    }

    pub fn peek(&self) -> &'t Token {
        &self.toks[self.idx.min(self.toks.len() - 1)]
    }

    pub fn bump(&mut self) -> &'t Token {
        let t = self.peek();
        if self.idx < self.toks.len() - 1 {
            self.idx += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<Pos> {
        let t = self.peek();
        if &t.tok == tok {
            self.bump();
            Ok(t.pos)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(String, Pos)> {
        let t = self.peek();
        match &t.tok {
            Tok::Ident(s) => {
                self.bump();
                Ok((s.clone(), t.pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Syntax {
            pos: t.pos,
            message: format!("expected {expected}, found {}", t.tok.describe()),
        }
    }
}
