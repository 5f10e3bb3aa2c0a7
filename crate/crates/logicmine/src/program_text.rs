//! Program text: one clause per line.
//!
//! ```text
//! # comment
//! A <- B, C.
//! D <- B.
//! C <-.
//! <- A, D.
//! ```
//!
//! Body atoms are separated by commas or whitespace. Atoms are registered in
//! order of first appearance, so printing a parsed program and parsing it
//! again gives the same program.

use logicmine_core::logic::{AtomTable, Clause, Program};

use crate::error::{FormatError, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl std::fmt::Display) -> FormatError {
        FormatError::at(self.line, self.column(), message)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn identifier(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

fn parse_clause(atoms: &mut AtomTable, line_no: usize, text: &str) -> Result<Clause> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: line_no,
    };
    cur.skip_ws();
    let head = match cur.identifier() {
        Some(name) => Some(atoms.intern(name).map_err(|e| cur.error(e))?),
        None => None,
    };
    cur.skip_ws();
    if !cur.eat("<-") {
        return Err(cur.error("expected '<-'"));
    }
    let mut body = Vec::new();
    loop {
        cur.skip_ws();
        if cur.eat(".") {
            break;
        }
        if !body.is_empty() && cur.eat(",") {
            cur.skip_ws();
        }
        let start = cur.column();
        let Some(name) = cur.identifier() else {
            return Err(cur.error("expected an atom or '.'"));
        };
        let atom = atoms.intern(name).map_err(|e| cur.error(e))?;
        if body.contains(&atom) {
            return Err(FormatError::at(line_no, start, format!("atom {name} repeated in body")));
        }
        if head == Some(atom) {
            return Err(FormatError::at(line_no, start, format!("head atom {name} repeated in body")));
        }
        body.push(atom);
    }
    cur.skip_ws();
    if !cur.rest().is_empty() {
        return Err(cur.error("unexpected text after '.'"));
    }
    Clause::new(head, body).map_err(|e| FormatError::on_line(line_no, e))
}

pub fn parse_program(text: &str) -> Result<Program> {
    let mut program = Program::empty();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let clause = parse_clause(program.atoms_mut(), i + 1, line)?;
        program
            .push(clause)
            .map_err(|e| FormatError::on_line(i + 1, e))?;
    }
    Ok(program)
}

/// Parses a single clause against an existing atom table; unknown atoms are
/// an error.
pub fn parse_clause_with(atoms: &AtomTable, text: &str) -> Result<Clause> {
    let mut scratch = atoms.clone();
    let clause = parse_clause(&mut scratch, 1, text)?;
    if scratch.len() != atoms.len() {
        let unknown = &scratch.names()[atoms.len()];
        return Err(logicmine_core::Error::UnknownAtom(unknown.clone()).into());
    }
    Ok(clause)
}

pub fn format_clause(atoms: &AtomTable, c: &Clause) -> String {
    let name = |i: usize| atoms.name(i).unwrap_or("?");
    let mut out = String::new();
    if let Some(h) = c.head() {
        out.push_str(name(h));
        out.push(' ');
    }
    out.push_str("<-");
    if !c.body().is_empty() {
        out.push(' ');
        let body: Vec<&str> = c.body().iter().map(|&b| name(b)).collect();
        out.push_str(&body.join(", "));
    }
    out.push('.');
    out
}

pub fn print_program(p: &Program) -> String {
    p.clauses()
        .iter()
        .map(|c| format_clause(p.atoms(), c) + "\n")
        .collect()
}
