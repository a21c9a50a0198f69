//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula := impl ('<->' impl)*
//! impl    := or ('->' impl)?
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | quant | atom | '(' formula ')'
//! quant   := ('exists' | 'forall' | 'existsS' | 'forallS') IDENT '.' formula
//! atom    := 'true' | 'false' | 'E' '(' term ',' term ')' | 'D' '(' term ',' term ')'
//!          | term ('=' | '!=') term | term 'in' IDENT
//! term    := IDENT | '@' IDENT
//! ```
//!
//! `#` starts a comment running to the end of the line. In `t in Name`, the
//! name is a set variable when an enclosing set quantifier binds it and a
//! color otherwise.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Formula, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Label(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Equals,
    NotEquals,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let mut push = |tok, len: usize, i: &mut usize, column: &mut usize| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            });
            *i += len;
            *column += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            ',' => push(Tok::Comma, 1, &mut i, &mut column),
            '.' => push(Tok::Dot, 1, &mut i, &mut column),
            '&' => push(Tok::Amp, 1, &mut i, &mut column),
            '|' => push(Tok::Pipe, 1, &mut i, &mut column),
            '=' => push(Tok::Equals, 1, &mut i, &mut column),
            '!' if chars.get(i + 1) == Some(&'=') => push(Tok::NotEquals, 2, &mut i, &mut column),
            '!' => push(Tok::Bang, 1, &mut i, &mut column),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut column),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(Tok::DoubleArrow, 3, &mut i, &mut column)
            }
            '@' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(syntax(line, column, "expected a label name after '@'"));
                }
                let name: String = chars[i + 1..j].iter().collect();
                push(Tok::Label(name), j - i, &mut i, &mut column);
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                push(Tok::Ident(name), j - i, &mut i, &mut column);
            }
            other => return Err(syntax(line, column, format!("unexpected character '{other}'"))),
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

const KEYWORDS: [&str; 7] = ["exists", "forall", "existsS", "forallS", "in", "true", "false"];

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: Vec<&'a str>,
    sets: Vec<&'a str>,
    owned_vars: Vec<String>,
    owned_sets: Vec<String>,
    unbound: Option<Error>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(syntax(line, column, message))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut left = self.implication()?;
        while *self.peek() == Tok::DoubleArrow {
            self.bump();
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Ident(word) => match word.as_str() {
                "exists" | "forall" | "existsS" | "forallS" => self.quantifier(&word),
                "true" => {
                    self.bump();
                    Ok(Formula::True)
                }
                "false" => {
                    self.bump();
                    Ok(Formula::False)
                }
                "E" | "D" if *self.peek_at(1) == Tok::LParen => {
                    self.bump();
                    self.bump();
                    let a = self.term()?;
                    self.expect(Tok::Comma, "','")?;
                    let b = self.term()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(if word == "E" {
                        Formula::Edge(a, b)
                    } else {
                        Formula::Arc(a, b)
                    })
                }
                _ => self.term_atom(),
            },
            Tok::Label(_) => self.term_atom(),
            Tok::Eof => self.error("unexpected end of input"),
            _ => self.error("expected a formula"),
        }
    }

    fn quantifier(&mut self, kw: &str) -> Result<Formula> {
        self.bump();
        let var = self.binder_name()?;
        self.expect(Tok::Dot, "'.' after the bound variable")?;
        let is_set = kw.ends_with('S');
        if is_set {
            self.owned_sets.push(var.clone());
        } else {
            self.owned_vars.push(var.clone());
        }
        let body = self.formula();
        if is_set {
            self.owned_sets.pop();
        } else {
            self.owned_vars.pop();
        }
        let body = body?;
        Ok(match kw {
            "exists" => Formula::exists(&var, body),
            "forall" => Formula::forall(&var, body),
            "existsS" => Formula::exists_set(&var, body),
            _ => Formula::forall_set(&var, body),
        })
    }

    fn binder_name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                Ok(name)
            }
            _ => self.error("expected a variable name"),
        }
    }

    fn var_bound(&self, name: &str) -> bool {
        self.owned_vars.iter().any(|v| v == name) || self.vars.contains(&name)
    }

    fn set_bound(&self, name: &str) -> bool {
        self.owned_sets.iter().any(|v| v == name) || self.sets.contains(&name)
    }

    fn term(&mut self) -> Result<Term> {
        let (line, column) = self.here();
        match self.peek().clone() {
            Tok::Label(name) => {
                self.bump();
                Ok(Term::Label(name))
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                // Syntax errors take precedence, so unbound names are
                // reported only once the whole input has parsed.
                if !self.var_bound(&name) && self.unbound.is_none() {
                    self.unbound = Some(Error::UnboundVariable {
                        name: name.clone(),
                        line,
                        column,
                    });
                }
                self.bump();
                Ok(Term::Var(name))
            }
            _ => self.error("expected a variable or @label"),
        }
    }

    fn term_atom(&mut self) -> Result<Formula> {
        let a = self.term()?;
        match self.bump() {
            Tok::Equals => Ok(Formula::Eq(a, self.term()?)),
            Tok::NotEquals => Ok(Formula::neq(a, self.term()?)),
            Tok::Ident(kw) if kw == "in" => match self.peek().clone() {
                Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                    self.bump();
                    if self.set_bound(&name) {
                        Ok(Formula::InSet(a, name))
                    } else {
                        Ok(Formula::InColor(a, name))
                    }
                }
                _ => self.error("expected a set or color name after 'in'"),
            },
            _ => {
                self.pos -= 1;
                self.error("expected '=', '!=' or 'in'")
            }
        }
    }
}

/// Parses a sentence. Every vertex variable must be bound by a quantifier.
pub fn parse(text: &str) -> Result<Formula> {
    parse_open(text, &[], &[])
}

/// Parses a formula whose free vertex and set variables are listed up front.
pub fn parse_open(text: &str, free_vars: &[&str], free_sets: &[&str]) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: free_vars.to_vec(),
        sets: free_sets.to_vec(),
        owned_vars: Vec::new(),
        owned_sets: Vec::new(),
        unbound: None,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error("unexpected trailing input");
    }
    match p.unbound {
        Some(e) => Err(e),
        None => Ok(f),
    }
}
