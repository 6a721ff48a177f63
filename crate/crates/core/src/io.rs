//! The line-oriented algebra format, its printer, and DOT export.
//!
//! ```text
//! # three-element chain
//! algebra chain
//! elements 0 c 1
//! order 0<c<1
//! knot 0:1 c:c 1:0
//! neg 0:1 c:1 1:0
//! center c
//! ```
//!
//! Keywords other than `algebra` may repeat; repeated lines extend the same
//! section.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::lattice::{build_lattice, Elem, LatticeError, PosetInput};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("document must start with `algebra NAME`")]
    MissingHeader,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("{op} already maps `{element}`")]
    DuplicateTableEntry { op: &'static str, element: String },
    #[error("{op} table is missing {}", .missing.join(", "))]
    PartialTable { op: &'static str, missing: Vec<String> },
    #[error("center declared twice")]
    DuplicateCenter,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A parse failure. `line` and `column` are 1-based; errors about the
/// document as a whole (such as the order not forming a lattice) point at
/// the line where the offending section starts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

#[derive(Default)]
struct Table {
    entries: Vec<Option<Elem>>,
    line: usize,
}

struct Doc<'a> {
    name: String,
    elements: Vec<String>,
    element_line: usize,
    index: HashMap<&'a str, Elem>,
    order: Vec<(&'a str, &'a str)>,
    order_line: usize,
    knot: Option<Table>,
    neg: Option<Table>,
    star: Option<Table>,
    center: Option<Elem>,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

/// Parses one algebra document.
pub fn parse(text: &str) -> Result<Algebra, ParseError> {
    let mut doc: Option<Doc<'_>> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some((kw, args)) = toks.split_first() else { continue };
        let Some(d) = doc.as_mut() else {
            if kw.text != "algebra" {
                return Err(err(line_no, kw.column, ParseErrorKind::MissingHeader));
            }
            let [name] = args else {
                return Err(err(line_no, kw.column, ParseErrorKind::Syntax("expected `algebra NAME`".into())));
            };
            doc = Some(Doc {
                name: name.text.to_string(),
                elements: Vec::new(),
                element_line: 0,
                index: HashMap::new(),
                order: Vec::new(),
                order_line: 0,
                knot: None,
                neg: None,
                star: None,
                center: None,
            });
            continue;
        };
        match kw.text {
            "algebra" => {
                return Err(err(line_no, kw.column, ParseErrorKind::Syntax("second `algebra` header".into())));
            }
            "elements" => {
                if d.element_line == 0 {
                    d.element_line = line_no;
                }
                for t in args {
                    if let Some(bad) = t.text.chars().find(|c| matches!(c, '<' | ':')) {
                        return Err(err(line_no, t.column, ParseErrorKind::Syntax(format!("`{bad}` is not allowed in element names"))));
                    }
                    if d.index.insert(t.text, d.elements.len()).is_some() {
                        return Err(err(line_no, t.column, ParseErrorKind::DuplicateElement(t.text.to_string())));
                    }
                    d.elements.push(t.text.to_string());
                }
            }
            "order" => {
                if d.order_line == 0 {
                    d.order_line = line_no;
                }
                for t in args {
                    let parts: Vec<&str> = t.text.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(err(line_no, t.column, ParseErrorKind::Syntax(format!("expected `x<y`, found `{}`", t.text))));
                    }
                    let mut col = t.column;
                    for p in &parts {
                        if !d.index.contains_key(p) {
                            return Err(err(line_no, col, ParseErrorKind::UnknownElement(p.to_string())));
                        }
                        col += p.chars().count() + 1;
                    }
                    for w in parts.windows(2) {
                        d.order.push((w[0], w[1]));
                    }
                }
            }
            "knot" | "neg" | "star" => {
                let op: &'static str = match kw.text {
                    "knot" => "knot",
                    "neg" => "neg",
                    _ => "star",
                };
                let n = d.elements.len();
                let index = &d.index;
                let slot = match op {
                    "knot" => &mut d.knot,
                    "neg" => &mut d.neg,
                    _ => &mut d.star,
                };
                let table = slot.get_or_insert_with(|| Table { entries: vec![None; n], line: line_no });
                table.entries.resize(n, None);
                for t in args {
                    let Some((from, to)) = t.text.split_once(':') else {
                        return Err(err(line_no, t.column, ParseErrorKind::Syntax(format!("expected `x:y`, found `{}`", t.text))));
                    };
                    let &x = index.get(from).ok_or_else(|| err(line_no, t.column, ParseErrorKind::UnknownElement(from.to_string())))?;
                    let to_col = t.column + from.chars().count() + 1;
                    let &y = index.get(to).ok_or_else(|| err(line_no, to_col, ParseErrorKind::UnknownElement(to.to_string())))?;
                    if table.entries[x].replace(y).is_some() {
                        return Err(err(line_no, t.column, ParseErrorKind::DuplicateTableEntry { op, element: from.to_string() }));
                    }
                }
            }
            "center" => {
                let [c] = args else {
                    return Err(err(line_no, kw.column, ParseErrorKind::Syntax("expected `center ELEMENT`".into())));
                };
                let &x = d.index.get(c.text).ok_or_else(|| err(line_no, c.column, ParseErrorKind::UnknownElement(c.text.to_string())))?;
                if d.center.replace(x).is_some() {
                    return Err(err(line_no, kw.column, ParseErrorKind::DuplicateCenter));
                }
            }
            other => {
                return Err(err(line_no, kw.column, ParseErrorKind::Syntax(format!("unknown keyword `{other}`"))));
            }
        }
    }
    let Some(d) = doc else {
        return Err(err(1, 1, ParseErrorKind::MissingHeader));
    };
    let mut input = PosetInput::new(d.elements.iter().cloned());
    for (lo, hi) in &d.order {
        input = input.with(lo, hi);
    }
    let at = if d.order_line > 0 { d.order_line } else { d.element_line.max(1) };
    let lattice = build_lattice(&input).map_err(|e| err(at, 1, e.into()))?;
    let mut alg = Algebra::new(d.name, lattice);
    let finish = |op: &'static str, t: Table| -> Result<(Vec<Elem>, usize), ParseError> {
        let missing: Vec<String> =
            t.entries.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(i, _)| d.elements[i].clone()).collect();
        if !missing.is_empty() {
            return Err(err(t.line, 1, ParseErrorKind::PartialTable { op, missing }));
        }
        Ok((t.entries.into_iter().map(Option::unwrap).collect(), t.line))
    };
    if let Some(t) = d.knot {
        let (tab, line) = finish("knot", t)?;
        alg = alg.with_knot(tab).map_err(|e| err(line, 1, e.into()))?;
    }
    if let Some(t) = d.neg {
        let (tab, line) = finish("neg", t)?;
        alg = alg.with_neg(tab).map_err(|e| err(line, 1, e.into()))?;
    }
    if let Some(t) = d.star {
        let (tab, line) = finish("star", t)?;
        alg = alg.with_star(tab).map_err(|e| err(line, 1, e.into()))?;
    }
    alg = alg.with_center(d.center).expect("center index comes from the element table");
    Ok(alg)
}

fn table_line(out: &mut String, kw: &str, a: &Algebra, t: &[Elem]) {
    out.push_str(kw);
    for (x, &y) in t.iter().enumerate() {
        let _ = write!(out, " {}:{}", a.element_name(x), a.element_name(y));
    }
    out.push('\n');
}

/// Renders `a` in the document format. `parse(&print(a)) == a`.
pub fn print(a: &Algebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}", a.name());
    out.push_str("elements");
    for name in a.lattice().names() {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    let covers = a.lattice().covers();
    if !covers.is_empty() {
        out.push_str("order");
        for (x, y) in covers {
            let _ = write!(out, " {}<{}", a.element_name(x), a.element_name(y));
        }
        out.push('\n');
    }
    if let Some(t) = a.knot_table() {
        table_line(&mut out, "knot", a, t);
    }
    if let Some(t) = a.neg_table() {
        table_line(&mut out, "neg", a, t);
    }
    if let Some(t) = a.declared_star() {
        table_line(&mut out, "star", a, t);
    }
    if let Some(c) = a.center() {
        let _ = writeln!(out, "center {}", a.element_name(c));
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Hasse diagram as a DOT digraph, drawn bottom to top.
pub fn export_dot(a: &Algebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(a.name()));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for name in a.lattice().names() {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for (x, y) in a.lattice().covers() {
        let _ = writeln!(out, "  {} -> {};", quote(a.element_name(x)), quote(a.element_name(y)));
    }
    out.push_str("}\n");
    out
}

/// Reads and parses a file.
pub fn read_file(path: &std::path::Path) -> Result<Algebra, ReadError> {
    let text = std::fs::read_to_string(path).map_err(|e| ReadError::Io(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| ReadError::Parse(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
}
