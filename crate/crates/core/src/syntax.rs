//! Text syntax for polynomials and presentations.
//!
//! ```text
//! group T = < a, b | a*b*a^-1*b^-1, a^3 >
//! algebra A = < x1, x2 | 2*x1*x2 - 1, x1^2 >
//! ```
//!
//! Polynomials use `+`, `-`, `*`, integer or fractional coefficients and
//! `^` for positive powers of a single generator. Identifiers in
//! presentations match `[A-Za-z][A-Za-z0-9_]*`; inside DGA and certificate
//! files `#` is also accepted so that generated names such as `y#1` parse.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::coeff::RingSpec;
use crate::reduce::{inverse_name, AlgebraPresentation, GroupPresentation, Letter};
use crate::tensor::{Generator, NcPoly, Signature, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<String>, found: String },
    DuplicateGenerator(String),
    UnknownGenerator(String),
    InvalidIdentifier(String),
    Coefficient(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "syntax error: expected one of {{{}}}, found {found}", expected.join(", "))
            }
            ParseErrorKind::DuplicateGenerator(n) => write!(f, "duplicate generator {n:?}"),
            ParseErrorKind::UnknownGenerator(n) => write!(f, "unknown generator {n:?}"),
            ParseErrorKind::InvalidIdentifier(n) => write!(f, "invalid identifier {n:?}"),
            ParseErrorKind::Coefficient(m) => write!(f, "bad coefficient: {m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while matches!(chars.peek(), Some(&c) if c.is_ascii_alphanumeric() || c == '_' || c == '#') {
                s.push(bump(&mut chars));
            }
            out.push(Spanned { tok: Tok::Ident(s), line: l, column: col });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            out.push(Spanned { tok: Tok::Int(s.parse().unwrap()), line: l, column: col });
        } else if "*^+-/,|<>=()".contains(c) {
            bump(&mut chars);
            out.push(Spanned { tok: Tok::Sym(c), line: l, column: col });
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                kind: ParseErrorKind::Syntax { expected: vec!["token".into()], found: format!("character {c:?}") },
            });
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

fn is_plain_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.here();
        ParseError { line, column, kind }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.error(ParseErrorKind::Syntax {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("'{c}'")]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => Err(self.unexpected(&["number"])),
        }
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let n = self.int()?;
        n.to_u32().ok_or_else(|| self.error(ParseErrorKind::Coefficient(format!("exponent {n} too large"))))
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    fn poly(&mut self, sig: &Signature) -> Result<NcPoly, ParseError> {
        let ring = sig.ring();
        let mut acc = NcPoly::zero(ring);
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let term = self.term(sig)?;
            acc = if negative { &acc - &term } else { &acc + &term };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, sig: &Signature) -> Result<NcPoly, ParseError> {
        let ring = sig.ring();
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        let mut word = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Int(n) => {
                    self.advance();
                    num *= n;
                    if self.eat('/') {
                        let d = self.int()?;
                        if d == BigInt::from(0) {
                            return Err(self.error(ParseErrorKind::Coefficient("division by zero".into())));
                        }
                        den *= d;
                    }
                }
                Tok::Ident(name) => {
                    let index = sig
                        .index_of(&name)
                        .ok_or_else(|| self.error(ParseErrorKind::UnknownGenerator(name.clone())))?;
                    self.advance();
                    let power = if self.eat('^') { self.small_int()? } else { 1 };
                    word.extend(std::iter::repeat_n(index, power as usize));
                }
                _ => return Err(self.unexpected(&["number", "identifier"])),
            }
            if !self.eat('*') {
                break;
            }
        }
        let c = ring
            .from_fraction(&num, &den)
            .map_err(|e| self.error(ParseErrorKind::Coefficient(e.to_string())))?;
        Ok(NcPoly::monomial(c, Word(word)))
    }

    fn group_word(&mut self, names: &[String]) -> Result<Vec<Letter>, ParseError> {
        if let Tok::Int(n) = self.peek().clone() {
            if n == BigInt::one() {
                self.advance();
                return Ok(Vec::new());
            }
            return Err(self.unexpected(&["identifier", "1"]));
        }
        let mut letters = Vec::new();
        loop {
            let name = match self.peek().clone() {
                Tok::Ident(s) => s,
                _ => return Err(self.unexpected(&["identifier"])),
            };
            let generator = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| self.error(ParseErrorKind::UnknownGenerator(name.clone())))? as u32;
            self.advance();
            let mut exponent: i64 = 1;
            if self.eat('^') {
                let sign = if self.eat('-') { -1 } else { 1 };
                exponent = sign * self.small_int()? as i64;
            }
            for _ in 0..exponent.unsigned_abs() {
                letters.push(Letter { generator, inverse: exponent < 0 });
            }
            if !self.eat('*') {
                return Ok(letters);
            }
        }
    }

    /// With `inverses`, also rejects `g` next to `g_inv`, whose name the group reduction takes.
    fn generator_list(&mut self, inverses: bool) -> Result<Vec<String>, ParseError> {
        let mut names: Vec<String> = Vec::new();
        if matches!(self.peek(), Tok::Sym('|')) {
            return Ok(names);
        }
        loop {
            let (line, column) = self.here();
            let name = self.ident()?;
            if !is_plain_identifier(&name) {
                return Err(ParseError { line, column, kind: ParseErrorKind::InvalidIdentifier(name) });
            }
            if names.contains(&name) {
                return Err(ParseError { line, column, kind: ParseErrorKind::DuplicateGenerator(name) });
            }
            if inverses {
                let clash = names.iter().find(|n| inverse_name(n) == name || inverse_name(&name) == **n);
                if let Some(other) = clash {
                    let taken = if inverse_name(other) == name { name } else { other.clone() };
                    return Err(ParseError { line, column, kind: ParseErrorKind::DuplicateGenerator(taken) });
                }
            }
            names.push(name);
            if !self.eat(',') {
                return Ok(names);
            }
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Tok::Sym('>')) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }
}

/// A parsed presentation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Group(GroupPresentation),
    Algebra(AlgebraPresentation),
}

/// Parses a presentation file. `ring` is used for the coefficients of algebra relations.
pub fn parse_presentation(text: &str, ring: RingSpec) -> Result<Presentation, ParseError> {
    let mut p = Parser::new(text)?;
    let kind = match p.peek() {
        Tok::Ident(k) if k == "group" || k == "algebra" => k.clone(),
        _ => return Err(p.unexpected(&["group", "algebra"])),
    };
    p.advance();
    let name = p.ident()?;
    p.expect('=')?;
    p.expect('<')?;
    let names = p.generator_list(kind == "group")?;
    p.expect('|')?;
    let out = if kind == "group" {
        let relators = p.list(|p| p.group_word(&names))?;
        Presentation::Group(GroupPresentation::new(name, names, relators).expect("names validated"))
    } else {
        let sig = Signature::new(ring, names.iter().map(|n| Generator::new(n.clone(), 0)).collect())
            .expect("names validated");
        let relations = p.list(|p| p.poly(&sig))?;
        Presentation::Algebra(AlgebraPresentation::new(name, sig, relations).expect("relations parsed in signature"))
    };
    p.expect('>')?;
    p.expect_eof()?;
    Ok(out)
}

/// Parses one polynomial over `sig`.
pub fn parse_poly(text: &str, sig: &Signature) -> Result<NcPoly, ParseError> {
    let mut p = Parser::new(text)?;
    let poly = p.poly(sig)?;
    p.expect_eof()?;
    Ok(poly)
}

/// Parses a coefficient such as `-3`, `1/2` or `5`.
pub fn parse_coefficient(text: &str, ring: RingSpec) -> Result<crate::coeff::Coefficient, ParseError> {
    let empty = Signature::empty(ring);
    let poly = parse_poly(text, &empty)?;
    match poly.len() {
        0 => Ok(ring.zero()),
        1 if poly.max_generator().is_none() => Ok(poly.constant_term()),
        _ => Err(ParseError { line: 1, column: 1, kind: ParseErrorKind::Coefficient(text.to_string()) }),
    }
}
