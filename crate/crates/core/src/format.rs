//! Line-oriented text format for models and extensions.
//!
//! ```text
//! # comment
//! model M2
//! gen u1 : 3
//! gen u2 : 3
//! gen v12 : 5
//! d v12 = u1*u2
//! ```
//!
//! Statements are separated by newlines or `;`. A polynomial is a sum of
//! terms `[p[/q]*] g1[^e1] * g2[^e2] * ...` joined by `+`/`-`. Extension
//! files additionally use `base <ident> : <degree>` and `D <ident> = <poly>`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{format_scalar, AlgebraError, GenId, GeneratorTable, Polynomial, Scalar};
use crate::model::{ModelError, SullivanModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown generator `{name}`")]
    UnknownGenerator {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: {source}")]
    Algebra { line: usize, source: AlgebraError },
    #[error("line {line}: {source}")]
    Model { line: usize, source: ModelError },
    #[error("line {line}: differential of `{name}` given twice")]
    DuplicateDifferential { line: usize, name: String },
    #[error("line {line}: `{keyword}` statements are not allowed in a plain model file")]
    UnexpectedStatement { line: usize, keyword: String },
}

impl FormatError {
    pub fn line(&self) -> usize {
        match self {
            FormatError::Syntax { line, .. }
            | FormatError::UnknownGenerator { line, .. }
            | FormatError::Algebra { line, .. }
            | FormatError::Model { line, .. }
            | FormatError::DuplicateDifferential { line, .. }
            | FormatError::UnexpectedStatement { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Caret,
    Plus,
    Minus,
    Eq,
    Colon,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(line: usize, start_col: usize, text: &str) -> Result<Vec<Spanned>, FormatError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = start_col + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '/' => Some(Tok::Slash),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '=' => Some(Tok::Eq),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, column });
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                column,
            });
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[s..i].iter().collect()),
                column,
            });
        } else {
            return Err(syntax(line, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// A polynomial as written: coefficient and named factors with exponents.
#[derive(Debug, Clone)]
pub(crate) struct RawTerm {
    coef: Scalar,
    factors: Vec<(String, u32, usize)>,
}

#[derive(Debug, Clone)]
pub(crate) struct RawPoly {
    pub line: usize,
    terms: Vec<RawTerm>,
}

impl RawPoly {
    pub fn resolve(&self, table: &GeneratorTable) -> Result<Polynomial, FormatError> {
        let mut raw: Vec<(Scalar, Vec<GenId>)> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut factors = Vec::new();
            for (name, e, column) in &t.factors {
                let id = table.id(name).ok_or_else(|| FormatError::UnknownGenerator {
                    line: self.line,
                    column: *column,
                    name: name.clone(),
                })?;
                factors.extend(std::iter::repeat_n(id, *e as usize));
            }
            raw.push((t.coef.clone(), factors));
        }
        Ok(table.normalize(&raw))
    }
}

struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |s| s.column)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> FormatError {
        syntax(self.line, self.column(), message)
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize), FormatError> {
        let col = self.column();
        match self.next() {
            Some(Tok::Ident(s)) => Ok((s, col)),
            _ => Err(syntax(self.line, col, format!("expected {what}"))),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), FormatError> {
        let col = self.column();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(syntax(self.line, col, format!("expected `{what}`"))),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt, FormatError> {
        let col = self.column();
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(syntax(self.line, col, format!("expected {what}"))),
        }
    }

    fn done(&self) -> Result<(), FormatError> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

fn small_int(c: &Cursor, n: &BigInt, what: &str) -> Result<i64, FormatError> {
    i64::try_from(n).map_err(|_| c.err(format!("{what} is too large")))
}

fn parse_poly(c: &mut Cursor) -> Result<RawPoly, FormatError> {
    let mut terms = Vec::new();
    let mut negative = match c.peek() {
        Some(Tok::Minus) => {
            c.next();
            true
        }
        Some(Tok::Plus) => {
            c.next();
            false
        }
        _ => false,
    };
    loop {
        let mut coef = Scalar::one();
        let mut factors = Vec::new();
        let mut expect_factor = true;
        if let Some(Tok::Int(_)) = c.peek() {
            let num = c.expect_int("coefficient")?;
            let mut value = Scalar::from_integer(num);
            if let Some(Tok::Slash) = c.peek() {
                c.next();
                let den = c.expect_int("denominator")?;
                if den.is_zero() {
                    return Err(c.err("zero denominator"));
                }
                value /= Scalar::from_integer(den);
            }
            coef = value;
            if let Some(Tok::Star) = c.peek() {
                c.next();
            } else {
                expect_factor = false;
            }
        }
        if expect_factor {
            loop {
                let (name, col) = c.expect_ident("generator name")?;
                let mut e = 1u32;
                if let Some(Tok::Caret) = c.peek() {
                    c.next();
                    let n = c.expect_int("exponent")?;
                    let n = small_int(c, &n, "exponent")?;
                    if n < 0 || n > u32::MAX as i64 {
                        return Err(c.err("exponent out of range"));
                    }
                    e = n as u32;
                }
                factors.push((name, e, col));
                if let Some(Tok::Star) = c.peek() {
                    c.next();
                } else {
                    break;
                }
            }
        }
        if negative {
            coef = -coef;
        }
        terms.push(RawTerm { coef, factors });
        match c.peek() {
            Some(Tok::Plus) => {
                c.next();
                negative = false;
            }
            Some(Tok::Minus) => {
                c.next();
                negative = true;
            }
            None => break,
            Some(_) => return Err(c.err("expected `+`, `-` or end of statement")),
        }
    }
    Ok(RawPoly { line: c.line, terms })
}

/// One parsed statement of a model or extension file.
#[derive(Debug, Clone)]
pub(crate) enum Statement {
    Model { name: String },
    Gen { name: String, degree: i64, line: usize },
    Base { name: String, degree: i64, line: usize },
    Diff { name: String, column: usize, poly: RawPoly, total: bool },
}

/// Splits text into `(line, start column, statement text)` triples.
fn statements(text: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    for (k, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in line.split(';') {
            let trimmed = piece.trim_start();
            let lead = piece.chars().count() - trimmed.chars().count();
            let body = trimmed.trim_end();
            if !body.is_empty() {
                out.push((k + 1, offset + lead + 1, body));
            }
            offset += piece.chars().count() + 1;
        }
    }
    out
}

pub(crate) fn parse_statements(text: &str) -> Result<Vec<Statement>, FormatError> {
    let mut out = Vec::new();
    for (line, col, body) in statements(text) {
        let (keyword, rest) = match body.find(char::is_whitespace) {
            Some(i) => (&body[..i], &body[i..]),
            None => (body, ""),
        };
        let rest_col = col + keyword.chars().count();
        match keyword {
            "model" => {
                let name = rest.trim();
                if name.is_empty() {
                    return Err(syntax(line, rest_col, "expected model name"));
                }
                out.push(Statement::Model { name: name.to_string() });
            }
            "gen" | "base" => {
                let toks = lex(line, rest_col, rest)?;
                let mut c = Cursor { toks: &toks, pos: 0, line, end_col: rest_col + rest.chars().count() };
                let (name, _) = c.expect_ident("generator name")?;
                c.expect(Tok::Colon, ":")?;
                let negative = matches!(c.peek(), Some(Tok::Minus));
                if negative {
                    c.next();
                }
                let n = c.expect_int("degree")?;
                let mut degree = small_int(&c, &n, "degree")?;
                if negative {
                    degree = -degree;
                }
                c.done()?;
                if keyword == "gen" {
                    out.push(Statement::Gen { name, degree, line });
                } else {
                    out.push(Statement::Base { name, degree, line });
                }
            }
            "d" | "D" => {
                let toks = lex(line, rest_col, rest)?;
                let mut c = Cursor { toks: &toks, pos: 0, line, end_col: rest_col + rest.chars().count() };
                let (name, column) = c.expect_ident("generator name")?;
                c.expect(Tok::Eq, "=")?;
                let poly = parse_poly(&mut c)?;
                c.done()?;
                out.push(Statement::Diff { name, column, poly, total: keyword == "D" });
            }
            other => {
                return Err(syntax(line, col, format!("unknown statement `{other}`")));
            }
        }
    }
    Ok(out)
}

/// Parses a single polynomial over `table`, e.g. `a^3*w - 2*x`.
pub fn parse_polynomial(table: &GeneratorTable, text: &str) -> Result<Polynomial, FormatError> {
    let toks = lex(1, 1, text)?;
    let mut c = Cursor { toks: &toks, pos: 0, line: 1, end_col: text.chars().count() + 1 };
    let poly = parse_poly(&mut c)?;
    c.done()?;
    poly.resolve(table)
}

/// Parses a plain model file.
pub fn parse_model(text: &str) -> Result<SullivanModel, FormatError> {
    let stmts = parse_statements(text)?;
    let mut name = String::new();
    let mut table = GeneratorTable::new();
    let mut diffs: Vec<(String, usize, RawPoly)> = Vec::new();
    for s in stmts {
        match s {
            Statement::Model { name: n } => name = n,
            Statement::Gen { name, degree, line } => {
                table
                    .push(&name, degree)
                    .map_err(|source| FormatError::Algebra { line, source })?;
            }
            Statement::Base { line, .. } => {
                return Err(FormatError::UnexpectedStatement { line, keyword: "base".into() })
            }
            Statement::Diff { poly, total: true, .. } => {
                return Err(FormatError::UnexpectedStatement { line: poly.line, keyword: "D".into() })
            }
            Statement::Diff { name, column, poly, total: false } => diffs.push((name, column, poly)),
        }
    }
    let values = resolve_differentials(&table, &diffs)?;
    build_model(name, table, values)
}

pub(crate) fn resolve_differentials(
    table: &GeneratorTable,
    diffs: &[(String, usize, RawPoly)],
) -> Result<BTreeMap<GenId, (usize, Polynomial)>, FormatError> {
    let mut values = BTreeMap::new();
    for (name, column, poly) in diffs {
        let g = table.id(name).ok_or_else(|| FormatError::UnknownGenerator {
            line: poly.line,
            column: *column,
            name: name.clone(),
        })?;
        if values.contains_key(&g) {
            return Err(FormatError::DuplicateDifferential { line: poly.line, name: name.clone() });
        }
        values.insert(g, (poly.line, poly.resolve(table)?));
    }
    Ok(values)
}

pub(crate) fn build_model(
    name: String,
    table: GeneratorTable,
    values: BTreeMap<GenId, (usize, Polynomial)>,
) -> Result<SullivanModel, FormatError> {
    let lines: BTreeMap<String, usize> = values
        .iter()
        .map(|(g, (l, _))| (table.name(*g).to_string(), *l))
        .collect();
    let map = values.into_iter().map(|(g, (_, p))| (g, p)).collect();
    SullivanModel::from_map(name, table, map).map_err(|source| {
        let line = match &source {
            ModelError::Inhomogeneous { generator, .. } => lines.get(generator).copied().unwrap_or(0),
            _ => 0,
        };
        FormatError::Model { line, source }
    })
}

pub fn print_polynomial(table: &GeneratorTable, p: &Polynomial) -> String {
    table.display(p).to_string()
}

pub fn print_scalar(c: &Scalar) -> String {
    format_scalar(c)
}

/// Canonical text of a model; `parse_model(print_model(m)) == m`.
pub fn print_model(m: &SullivanModel) -> String {
    let mut out = String::new();
    if !m.name().is_empty() {
        out.push_str(&format!("model {}\n", m.name()));
    }
    for g in m.table().generators() {
        out.push_str(&format!("gen {} : {}\n", g.name, g.degree));
    }
    for (g, p) in m.differentials().iter().enumerate() {
        if !p.is_zero() {
            out.push_str(&format!("d {} = {}\n", m.table().name(g), print_polynomial(m.table(), p)));
        }
    }
    out
}
