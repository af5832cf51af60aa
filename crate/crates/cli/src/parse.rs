//! Recursive-descent parser for the spec expression language.
//!
//! Grammar (whitespace-insensitive between tokens):
//!
//! ```text
//! Spec := "R" INT
//!       | "TT" INT
//!       | "R" INT "(" Spec ("," Spec)* ")"
//! ```
//!
//! `R1` and `TT1` both denote the one-vertex tournament and parse to the
//! same tree, matching the canonical printer, which writes both as `R1`.
//! A parenthesized `R m` requires odd `m ≥ 3` and exactly `m` blocks; a
//! bare `R m` requires odd `m ≥ 1`. Errors carry 1-based line and column
//! positions.

use sectour_core::{Error, Result, SectionableSpec};

/// Parses one spec expression, requiring it to span the whole input
/// (trailing whitespace aside).
pub fn parse_spec(text: &str) -> Result<SectionableSpec> {
    let mut cursor = Cursor::new(text);
    let spec = cursor.spec()?;
    cursor.skip_ws();
    if let Some(c) = cursor.peek() {
        return Err(cursor.error(format!("unexpected {} after the spec", describe(Some(c)))));
    }
    spec.validate()?;
    Ok(spec)
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

fn describe(c: Option<char>) -> String {
    match c {
        Some(c) => format!("{c:?}"),
        None => "end of input".to_string(),
    }
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0, line: 1, col: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    /// Error at the current position.
    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.line, self.col, msg)
    }

    /// Error at a remembered position (e.g. the start of the token that
    /// turned out to be wrong as a whole).
    fn error_at(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::MalformedInput { line, msg: format!("column {}: {}", col, msg.into()) }
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().expect("peeked digit"));
        }
        if digits.is_empty() {
            return Err(self.error(format!("expected a number, found {}", describe(self.peek()))));
        }
        digits
            .parse::<usize>()
            .map_err(|_| self.error_at(line, col, format!("number {digits} is out of range")))
    }

    fn spec(&mut self) -> Result<SectionableSpec> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        match self.peek() {
            Some('T') => {
                self.bump();
                if self.peek() != Some('T') {
                    return Err(self.error_at(line, col, "expected \"TT\""));
                }
                self.bump();
                let k = self.integer()?;
                if k == 0 {
                    return Err(self.error_at(line, col, "TT0 has no vertices; orders start at 1"));
                }
                Ok(SectionableSpec::Transitive(k))
            }
            Some('R') => {
                self.bump();
                let m = self.integer()?;
                self.skip_ws();
                if self.peek() == Some('(') {
                    self.bump();
                    if m % 2 == 0 || m < 3 {
                        return Err(self.error_at(
                            line,
                            col,
                            format!("R{m} cannot carry blocks; compositions need odd order >= 3"),
                        ));
                    }
                    let mut blocks = vec![self.spec()?];
                    loop {
                        self.skip_ws();
                        match self.peek() {
                            Some(',') => {
                                self.bump();
                                blocks.push(self.spec()?);
                            }
                            Some(')') => {
                                self.bump();
                                break;
                            }
                            other => {
                                return Err(self.error(format!(
                                    "expected \",\" or \")\", found {}",
                                    describe(other)
                                )))
                            }
                        }
                    }
                    if blocks.len() != m {
                        return Err(self.error_at(
                            line,
                            col,
                            format!("R{m} expects {m} blocks, found {}", blocks.len()),
                        ));
                    }
                    Ok(SectionableSpec::Compose(m, blocks))
                } else if m == 0 {
                    Err(self.error_at(line, col, "R0 has no vertices; orders start at 1"))
                } else if m % 2 == 0 {
                    Err(self.error_at(
                        line,
                        col,
                        format!("R{m} has even order; highly regular orders are odd"),
                    ))
                } else if m == 1 {
                    // One vertex: R1 and TT1 are the same tournament.
                    Ok(SectionableSpec::Transitive(1))
                } else {
                    Ok(SectionableSpec::HighlyRegular(m))
                }
            }
            other => Err(self.error(format!(
                "expected a spec (\"R<m>\", \"TT<k>\", or \"R<m>(block,...)\"), found {}",
                describe(other)
            ))),
        }
    }
}
