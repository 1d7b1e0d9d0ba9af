//! Chained loop nests: a small line-oriented DSL, its closed-form analysis
//! and a literal simulator.
//!
//! ```text
//! n = 100            # optional
//! for i = 1 to n
//! for j = 1 to i
//! for k = 1 to j
//! ```
//!
//! Each loop runs from 1 to its bound inclusive, and each bound is the index
//! of the immediately enclosing loop. A nest of depth `d` then executes its
//! body `n^(d-1)` (order `d-1` termirial) times, which is `C(n+d-1, d)` and
//! grows as `n^d`.

use std::fmt;

use thiserror::Error;

use crate::error::GuardError;
use crate::termirial::{termirial_p, Natural, Order};

const KEYWORDS: [&str; 2] = ["for", "to"];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoundRef {
    /// The program parameter (outermost loop only).
    Param,
    /// The index of the immediately enclosing loop.
    Index(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Loop {
    pub index: String,
    pub bound: BoundRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LoopNestProgram {
    pub param_name: String,
    pub param_value: Option<u64>,
    pub loops: Vec<Loop>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("bound '{found}' is not the enclosing index '{expected}'")]
    NonChainBound { found: String, expected: String },
    #[error("duplicate index '{0}'")]
    DuplicateIndex(String),
}

impl ParseErrorKind {
    /// Short stable name, used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            ParseErrorKind::Syntax(_) => "SyntaxError",
            ParseErrorKind::UnknownIdentifier(_) => "UnknownIdentifier",
            ParseErrorKind::NonChainBound { .. } => "NonChainBound",
            ParseErrorKind::DuplicateIndex(_) => "DuplicateIndex",
        }
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Int(s) => write!(f, "'{s}'"),
            Tok::Eq => f.write_str("'='"),
        }
    }
}

fn is_keyword(s: &str, kw: &str) -> bool {
    s.eq_ignore_ascii_case(kw)
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '=' {
            toks.push((Tok::Eq, column));
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), column));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Int(chars[start..i].iter().collect()), column));
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax(format!("unexpected character '{c}'")),
                line: line_no,
                column,
            });
        }
    }
    Ok(toks)
}

struct LineCursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> LineCursor<'a> {
    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            line: self.line,
            column: self.column(),
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = match self.toks.get(self.pos) {
            Some((t, _)) => t.to_string(),
            None => "end of line".to_string(),
        };
        self.error(ParseErrorKind::Syntax(format!(
            "expected {expected}, found {found}"
        )))
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.0);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(s), _)) if is_keyword(s, kw) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("'{kw}'"))),
        }
    }

    /// Returns the identifier and its column.
    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(s), col)) if !KEYWORDS.iter().any(|k| is_keyword(s, k)) => {
                self.pos += 1;
                Ok((s.clone(), *col))
            }
            Some((Tok::Ident(s), _)) => Err(self.error(ParseErrorKind::Syntax(format!(
                "expected identifier, found keyword '{s}'"
            )))),
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn eq(&mut self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Eq, _)) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected("'='")),
        }
    }

    fn integer(&mut self) -> Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Int(s), col)) => {
                self.pos += 1;
                Ok((s.clone(), *col))
            }
            _ => Err(self.unexpected("integer")),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected("end of line"))
        } else {
            Ok(())
        }
    }
}

/// Parse a loop-nest program.
pub fn parse(source: &str) -> Result<LoopNestProgram, ParseError> {
    let mut param: Option<(String, Option<u64>)> = None;
    let mut loops: Vec<Loop> = Vec::new();
    let mut last_line = 1;
    let mut last_len = 0;

    for (idx, raw) in source.split('\n').enumerate() {
        let line_no = idx + 1;
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        last_line = line_no;
        last_len = text.chars().count();

        let toks = tokenize(text, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = LineCursor {
            toks: &toks,
            pos: 0,
            line: line_no,
            end_column: last_len + 1,
        };

        let first = &toks[0].0;
        let is_for = matches!(first, Tok::Ident(s) if is_keyword(s, "for"));
        if !is_for {
            if param.is_some() || !loops.is_empty() || !matches!(first, Tok::Ident(_)) {
                return Err(cur.unexpected("'for'"));
            }
            let (name, _) = cur.ident()?;
            cur.eq()?;
            let (digits, col) = cur.integer()?;
            let value: u64 = digits.parse().map_err(|_| ParseError {
                kind: ParseErrorKind::Syntax(format!("integer literal {digits} is too large")),
                line: line_no,
                column: col,
            })?;
            cur.end()?;
            param = Some((name, Some(value)));
            continue;
        }

        cur.next();
        let (index, index_col) = cur.ident()?;
        cur.eq()?;
        let (lower, lower_col) = cur.integer()?;
        if lower != "1" {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax(format!("expected lower bound '1', found '{lower}'")),
                line: line_no,
                column: lower_col,
            });
        }
        cur.keyword("to")?;
        let (bound_name, bound_col) = cur.ident()?;
        cur.end()?;

        let dup = loops.iter().any(|l| l.index == index)
            || param.as_ref().is_some_and(|(p, _)| *p == index);
        if dup {
            return Err(ParseError {
                kind: ParseErrorKind::DuplicateIndex(index),
                line: line_no,
                column: index_col,
            });
        }

        let at_bound = |kind| ParseError {
            kind,
            line: line_no,
            column: bound_col,
        };
        let bound = match loops.last() {
            None => {
                match &param {
                    Some((p, _)) if *p == bound_name => {}
                    Some(_) => {
                        return Err(at_bound(ParseErrorKind::UnknownIdentifier(bound_name)));
                    }
                    None if bound_name == index => {
                        return Err(at_bound(ParseErrorKind::UnknownIdentifier(bound_name)));
                    }
                    None => param = Some((bound_name, None)),
                }
                BoundRef::Param
            }
            Some(enclosing) => {
                if enclosing.index == bound_name {
                    BoundRef::Index(bound_name)
                } else if loops.iter().any(|l| l.index == bound_name)
                    || param.as_ref().is_some_and(|(p, _)| *p == bound_name)
                {
                    return Err(at_bound(ParseErrorKind::NonChainBound {
                        found: bound_name,
                        expected: enclosing.index.clone(),
                    }));
                } else {
                    return Err(at_bound(ParseErrorKind::UnknownIdentifier(bound_name)));
                }
            }
        };
        loops.push(Loop { index, bound });
    }

    let Some((param_name, param_value)) = param.filter(|_| !loops.is_empty()) else {
        return Err(ParseError {
            kind: ParseErrorKind::Syntax("expected at least one 'for' loop".into()),
            line: last_line,
            column: last_len + 1,
        });
    };
    Ok(LoopNestProgram {
        param_name,
        param_value,
        loops,
    })
}

impl LoopNestProgram {
    pub fn depth(&self) -> usize {
        self.loops.len()
    }

    /// Canonical DSL text; [`parse`] reads it back to an identical program.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(v) = self.param_value {
            out.push_str(&format!("{} = {}\n", self.param_name, v));
        }
        for l in &self.loops {
            let bound = match &l.bound {
                BoundRef::Param => &self.param_name,
                BoundRef::Index(name) => name,
            };
            out.push_str(&format!("for {} = 1 to {}\n", l.index, bound));
        }
        out
    }

    /// A chain nest of the given depth over `param_name`, indices `i1, i2, ...`.
    pub fn chain(param_name: &str, param_value: Option<u64>, depth: usize) -> Self {
        let loops = (1..=depth)
            .map(|k| Loop {
                index: format!("i{k}"),
                bound: if k == 1 {
                    BoundRef::Param
                } else {
                    BoundRef::Index(format!("i{}", k - 1))
                },
            })
            .collect();
        LoopNestProgram {
            param_name: param_name.to_string(),
            param_value,
            loops,
        }
    }
}

/// Closed form of a nest's iteration count in terms of the parameter symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub n_symbol: String,
    pub order: Order,
    /// Count equals `C(n + top_offset, bottom)`.
    pub top_offset: u64,
    pub bottom: u64,
}

impl ClosedForm {
    pub fn termirial_notation(&self) -> String {
        format!("{}^({})", self.n_symbol, self.order)
    }

    pub fn binomial_notation(&self) -> String {
        if self.top_offset == 0 {
            format!("C({}, {})", self.n_symbol, self.bottom)
        } else {
            format!("C({}+{}, {})", self.n_symbol, self.top_offset, self.bottom)
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}",
            self.termirial_notation(),
            self.binomial_notation()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisResult {
    pub depth: u64,
    pub exact_count: Option<Natural>,
    pub closed_form: ClosedForm,
    /// The count is Θ(n^theta_exponent).
    pub theta_exponent: u64,
}

/// Closed-form iteration count of a chain nest.
pub fn analyze(prog: &LoopNestProgram) -> AnalysisResult {
    let depth = prog.depth() as u64;
    let order = Order::new(depth as i64 - 1).expect("at least one loop");
    AnalysisResult {
        depth,
        exact_count: prog.param_value.map(|n| termirial_p(n, order)),
        closed_form: ClosedForm {
            n_symbol: prog.param_name.clone(),
            order,
            top_offset: depth - 1,
            bottom: depth,
        },
        theta_exponent: depth,
    }
}

/// Run the nest literally with parameter `n`, counting body executions.
///
/// Refuses when the projected count exceeds `budget`.
pub fn simulate(prog: &LoopNestProgram, n: u64, budget: u64) -> Result<Natural, GuardError> {
    let depth = prog.depth();
    if depth == 0 {
        return Err(GuardError::OutOfDomain("program has no loops".into()));
    }
    let order = Order::new(depth as i64 - 1).expect("depth >= 1");
    GuardError::check(termirial_p(n, order), budget)?;

    fn run(level: usize, depth: usize, bound: u64, count: &mut u64) {
        for i in 1..=bound {
            if level + 1 == depth {
                *count += 1;
            } else {
                run(level + 1, depth, i, count);
            }
        }
    }
    let mut count = 0u64;
    run(0, depth, n, &mut count);
    Ok(Natural::from(count))
}
