//! Line-oriented input language for candidate systems.
//!
//! ```text
//! # two physically indistinguishable particles
//! hidden 1 = 1/2
//! hidden 2 = 3
//! state A
//! particle p1 = (A,1) micro
//! particle p2 = (A,2) micro
//! ```
//!
//! Declarations may appear in any order. Parsing only checks syntax,
//! duplicate declarations and references; a repeated hidden value parses
//! fine and is left for the axiom checker.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::{CandidateLabel, CandidateParticle, CandidateSystem, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Syntax,
    MalformedRational,
    InvalidIndex,
    Duplicate,
    DanglingReference,
    /// Unreadable input or bad command-line argument.
    Input,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::MalformedRational => "malformed rational",
            DiagnosticKind::InvalidIndex => "invalid index",
            DiagnosticKind::Duplicate => "duplicate declaration",
            DiagnosticKind::DanglingReference => "dangling reference",
            DiagnosticKind::Input => "input error",
        })
    }
}

/// A parse problem at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
    pub message: String,
    /// Tokens that would have been accepted, for syntax errors.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}: {}",
            self.line, self.column, self.kind, self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.diagnostics.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Character cursor over one line, with the comment already stripped.
struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    text: &'a str,
}

type Step<T> = std::result::Result<T, Diagnostic>;

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor {
            chars: text.char_indices().collect(),
            pos: 0,
            line,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn found(&mut self) -> String {
        match self.peek() {
            None => "end of line".to_string(),
            Some(_) => {
                let word = self.peek_word();
                if word.is_empty() {
                    format!("'{}'", self.chars[self.pos].1)
                } else {
                    format!("'{word}'")
                }
            }
        }
    }

    fn peek_word(&self) -> &'a str {
        let start = self
            .chars
            .get(self.pos)
            .map_or(self.text.len(), |&(b, _)| b);
        let end = self.chars[self.pos..]
            .iter()
            .find(|(_, c)| !is_ident_char(*c))
            .map_or(self.text.len(), |&(b, _)| b);
        &self.text[start..end]
    }

    fn error(&mut self, expected: &[&str]) -> Diagnostic {
        let found = self.found();
        Diagnostic {
            line: self.line,
            column: self.column(),
            kind: DiagnosticKind::Syntax,
            message: format!("unexpected {found}"),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn punct(&mut self, p: char) -> Step<()> {
        if self.peek() == Some(p) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[&format!("'{p}'")]))
        }
    }

    /// Identifier and its column.
    fn ident(&mut self, what: &str) -> Step<(String, usize)> {
        let col = {
            self.skip_ws();
            self.column()
        };
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {
                let word = self.peek_word().to_string();
                self.pos += word.chars().count();
                Ok((word, col))
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn keyword(&mut self, options: &[&str]) -> Step<String> {
        self.skip_ws();
        let word = self.peek_word();
        if options.contains(&word) {
            self.pos += word.chars().count();
            Ok(word.to_string())
        } else {
            Err(self.error(options))
        }
    }

    fn index(&mut self, what: &str) -> Step<(usize, usize)> {
        self.skip_ws();
        let col = self.column();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(&[what]));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        let value: usize = digits.parse().map_err(|_| Diagnostic {
            line: self.line,
            column: col,
            kind: DiagnosticKind::InvalidIndex,
            message: format!("index {digits} is out of range"),
            expected: Vec::new(),
        })?;
        if value == 0 {
            return Err(Diagnostic {
                line: self.line,
                column: col,
                kind: DiagnosticKind::InvalidIndex,
                message: "label indices start at 1".into(),
                expected: Vec::new(),
            });
        }
        Ok((value, col))
    }

    /// The remainder of the line as a rational literal `[-]p[/q]`.
    fn rational(&mut self) -> Step<Rational> {
        self.skip_ws();
        let col = self.column();
        let start = self
            .chars
            .get(self.pos)
            .map_or(self.text.len(), |&(b, _)| b);
        let raw = self.text[start..].trim_end();
        self.pos = self.chars.len();
        parse_rational(raw).ok_or_else(|| Diagnostic {
            line: self.line,
            column: col,
            kind: DiagnosticKind::MalformedRational,
            message: if raw.is_empty() {
                "missing value".to_string()
            } else {
                format!("`{raw}` is not of the form p or p/q with q > 0")
            },
            expected: Vec::new(),
        })
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn parse_rational(raw: &str) -> Option<Rational> {
    let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
    let (num, den) = match raw.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (raw, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return None;
    }
    let p: BigInt = num.parse().ok()?;
    match den {
        None => Some(Rational::from_integer(p)),
        Some(q) if digits(q) => {
            let q: BigInt = q.parse().ok()?;
            if q == BigInt::from(0) {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        Some(_) => None,
    }
}

enum Decl {
    Hidden {
        index: usize,
        col: usize,
        value: Rational,
    },
    State {
        name: String,
        col: usize,
    },
    Particle {
        name: String,
        name_col: usize,
        state: String,
        state_col: usize,
        label: usize,
        label_col: usize,
        micro: bool,
        macro_: bool,
    },
}

fn parse_line(text: &str, line: usize) -> Step<Option<Decl>> {
    let mut cur = Cursor::new(text, line);
    if cur.at_end() {
        return Ok(None);
    }
    let decl = match cur.keyword(&["hidden", "state", "particle"])?.as_str() {
        "hidden" => {
            let (index, col) = cur.index("label index")?;
            cur.punct('=')?;
            let value = cur.rational()?;
            Decl::Hidden { index, col, value }
        }
        "state" => {
            let (name, col) = cur.ident("state identifier")?;
            Decl::State { name, col }
        }
        _ => {
            let (name, name_col) = cur.ident("particle identifier")?;
            cur.punct('=')?;
            cur.punct('(')?;
            let (state, state_col) = cur.ident("state identifier")?;
            cur.punct(',')?;
            let (label, label_col) = cur.index("label index")?;
            cur.punct(')')?;
            let (mut micro, mut macro_) = (false, false);
            while !cur.at_end() {
                let col = cur.column();
                let flag = cur.keyword(&["micro", "macro"])?;
                let slot = if flag == "micro" {
                    &mut micro
                } else {
                    &mut macro_
                };
                if *slot {
                    return Err(Diagnostic {
                        line,
                        column: col,
                        kind: DiagnosticKind::Syntax,
                        message: format!("repeated flag '{flag}'"),
                        expected: Vec::new(),
                    });
                }
                *slot = true;
            }
            Decl::Particle {
                name,
                name_col,
                state,
                state_col,
                label,
                label_col,
                micro,
                macro_,
            }
        }
    };
    if !cur.at_end() {
        return Err(cur.error(&["end of line"]));
    }
    Ok(Some(decl))
}

/// Parses source text into a candidate system, reporting every problem found.
pub fn parse_spec(src: &str) -> Result<CandidateSystem, ParseError> {
    let mut diagnostics = Vec::new();
    let mut decls = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let text = raw.split_once('#').map_or(raw, |(code, _)| code);
        match parse_line(text, line) {
            Ok(Some(d)) => decls.push((line, d)),
            Ok(None) => {}
            Err(d) => diagnostics.push(d),
        }
    }

    let mut out = CandidateSystem::default();
    let mut hidden_lines: BTreeMap<usize, usize> = BTreeMap::new();
    let mut state_lines: HashMap<String, usize> = HashMap::new();
    let mut particle_lines: HashMap<String, usize> = HashMap::new();
    let duplicate = |line: usize, column: usize, message: String| Diagnostic {
        line,
        column,
        kind: DiagnosticKind::Duplicate,
        message,
        expected: Vec::new(),
    };

    for (line, d) in &decls {
        match d {
            Decl::Hidden { index, col, value } => {
                if let Some(first) = hidden_lines.insert(*index, *line) {
                    hidden_lines.insert(*index, first);
                    diagnostics.push(duplicate(
                        *line,
                        *col,
                        format!("hidden label {index} already declared on line {first}"),
                    ));
                } else {
                    out.labels.push(CandidateLabel {
                        index: *index,
                        value: value.clone(),
                    });
                }
            }
            Decl::State { name, col } => {
                if let Some(&first) = state_lines.get(name) {
                    diagnostics.push(duplicate(
                        *line,
                        *col,
                        format!("state `{name}` already declared on line {first}"),
                    ));
                } else {
                    state_lines.insert(name.clone(), *line);
                    out.states.push(name.clone());
                }
            }
            Decl::Particle { .. } => {}
        }
    }

    for (line, d) in &decls {
        let Decl::Particle {
            name,
            name_col,
            state,
            state_col,
            label,
            label_col,
            micro,
            macro_,
        } = d
        else {
            continue;
        };
        let mut ok = true;
        if let Some(&first) = particle_lines.get(name) {
            diagnostics.push(duplicate(
                *line,
                *name_col,
                format!("particle `{name}` already declared on line {first}"),
            ));
            ok = false;
        }
        if !state_lines.contains_key(state) {
            diagnostics.push(Diagnostic {
                line: *line,
                column: *state_col,
                kind: DiagnosticKind::DanglingReference,
                message: format!("state `{state}` is not declared"),
                expected: Vec::new(),
            });
            ok = false;
        }
        if !hidden_lines.contains_key(label) {
            diagnostics.push(Diagnostic {
                line: *line,
                column: *label_col,
                kind: DiagnosticKind::DanglingReference,
                message: format!("hidden label {label} is not declared"),
                expected: Vec::new(),
            });
            ok = false;
        }
        if ok {
            particle_lines.insert(name.clone(), *line);
            out.particles.push(CandidateParticle {
                name: name.clone(),
                state: state.clone(),
                label: *label,
                micro: *micro,
                macro_: *macro_,
            });
        }
    }

    if diagnostics.is_empty() {
        Ok(out)
    } else {
        diagnostics.sort_by_key(|d| (d.line, d.column));
        Err(ParseError { diagnostics })
    }
}

/// Writes a candidate back in the input language.
pub fn render_spec(c: &CandidateSystem) -> String {
    let mut out = String::new();
    for l in &c.labels {
        out.push_str(&format!("hidden {} = {}\n", l.index, l.value));
    }
    for s in &c.states {
        out.push_str(&format!("state {s}\n"));
    }
    for p in &c.particles {
        out.push_str(&format!("particle {} = ({},{})", p.name, p.state, p.label));
        if p.micro {
            out.push_str(" micro");
        }
        if p.macro_ {
            out.push_str(" macro");
        }
        out.push('\n');
    }
    out
}
