//! Ring expression language.
//!
//! ```text
//! ring     := "Z" INT | "M(" INT "," ring ")" | "T(" INT "," ring ")"
//!           | "prod(" ring { "," ring } ")" | "quot(" ring ";" elemlist ")"
//!           | "corner(" ring ";" elem ")" | "grpring(" ring "," group ")"
//! group    := "C" INT | "gprod(" group { "," group } ")"
//! elem     := "idx:" INT | "label:" STRING
//! elemlist := elem { "," elem }
//! ```
//!
//! Whitespace between tokens is ignored. A `STRING` is either a double-quoted
//! string (with `\"` and `\\` escapes) or a bare run of characters up to the
//! next `,`, `;` or unbalanced `)`, with whitespace removed.

use std::fmt;

use crate::constructors::{
    make_corner, make_group_ring, make_matrix_ring, make_product, make_quotient,
    make_upper_triangular, make_zmod, GroupRing, Limits,
};
use crate::group::{make_cyclic_group, make_group_product, FiniteGroup};
use crate::ring::{Elem, FiniteRing};
use crate::structure::ideal_generated;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemRef {
    Index(usize),
    Label(String),
}

impl ElemRef {
    pub fn resolve(&self, r: &FiniteRing) -> Result<Elem, Error> {
        match self {
            ElemRef::Index(i) => r.elem(*i),
            ElemRef::Label(l) => r.elem_by_label(l),
        }
    }
}

impl fmt::Display for ElemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemRef::Index(i) => write!(f, "idx:{i}"),
            ElemRef::Label(l) => f.write_str(&elem_ref_text(l)),
        }
    }
}

/// `label:` reference text for a label, quoted when a bare token would not
/// survive the tokenizer.
pub fn elem_ref_text(label: &str) -> String {
    let bare_ok = !label.is_empty()
        && !label
            .chars()
            .any(|c| matches!(c, ',' | ';' | '(' | ')' | '"' | '\\') || c.is_whitespace());
    if bare_ok {
        format!("label:{label}")
    } else {
        let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
        format!("label:\"{escaped}\"")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Product(Vec<GroupExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Zmod(u64),
    Matrix(usize, Box<RingExpr>),
    Triangular(usize, Box<RingExpr>),
    Product(Vec<RingExpr>),
    Quotient(Box<RingExpr>, Vec<ElemRef>),
    Corner(Box<RingExpr>, ElemRef),
    GroupRing(Box<RingExpr>, GroupExpr),
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Product(gs) => write!(f, "gprod({})", join(gs, ",")),
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Z{n}"),
            RingExpr::Matrix(n, r) => write!(f, "M({n},{r})"),
            RingExpr::Triangular(n, r) => write!(f, "T({n},{r})"),
            RingExpr::Product(rs) => write!(f, "prod({})", join(rs, ",")),
            RingExpr::Quotient(r, es) => write!(f, "quot({r}; {})", join(es, ", ")),
            RingExpr::Corner(r, e) => write!(f, "corner({r}; {e})"),
            RingExpr::GroupRing(r, g) => write!(f, "grpring({r},{g})"),
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => self.err(format!("expected {c:?}, found {found:?}")),
            None => self.err(format!("expected {c:?}, found end of input")),
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a keyword");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected an integer");
        }
        let value = rest[..len]
            .parse::<u64>()
            .or_else(|_| self.err("integer too large"))?;
        self.pos += len;
        Ok(value)
    }

    fn small_int(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn ring(&mut self) -> Result<RingExpr, ParseError> {
        let start = self.pos;
        let kw = self.ident()?;
        match kw {
            "Z" => Ok(RingExpr::Zmod(self.int()?)),
            "M" | "T" => {
                self.expect('(')?;
                let n = self.small_int()?;
                self.expect(',')?;
                let r = Box::new(self.ring()?);
                self.expect(')')?;
                Ok(if kw == "M" {
                    RingExpr::Matrix(n, r)
                } else {
                    RingExpr::Triangular(n, r)
                })
            }
            "prod" => {
                self.expect('(')?;
                let mut rs = vec![self.ring()?];
                while self.peek() == Some(',') {
                    self.expect(',')?;
                    rs.push(self.ring()?);
                }
                self.expect(')')?;
                Ok(RingExpr::Product(rs))
            }
            "quot" => {
                self.expect('(')?;
                let r = Box::new(self.ring()?);
                self.expect(';')?;
                let mut es = vec![self.elem()?];
                while self.peek() == Some(',') {
                    self.expect(',')?;
                    es.push(self.elem()?);
                }
                self.expect(')')?;
                Ok(RingExpr::Quotient(r, es))
            }
            "corner" => {
                self.expect('(')?;
                let r = Box::new(self.ring()?);
                self.expect(';')?;
                let e = self.elem()?;
                self.expect(')')?;
                Ok(RingExpr::Corner(r, e))
            }
            "grpring" => {
                self.expect('(')?;
                let r = Box::new(self.ring()?);
                self.expect(',')?;
                let g = self.group()?;
                self.expect(')')?;
                Ok(RingExpr::GroupRing(r, g))
            }
            other => {
                self.pos = start;
                self.skip_ws();
                self.err(format!("unknown ring constructor {other:?}"))
            }
        }
    }

    fn group(&mut self) -> Result<GroupExpr, ParseError> {
        let start = self.pos;
        match self.ident()? {
            "C" => Ok(GroupExpr::Cyclic(self.small_int()?)),
            "gprod" => {
                self.expect('(')?;
                let mut gs = vec![self.group()?];
                while self.peek() == Some(',') {
                    self.expect(',')?;
                    gs.push(self.group()?);
                }
                self.expect(')')?;
                Ok(GroupExpr::Product(gs))
            }
            other => {
                self.pos = start;
                self.skip_ws();
                self.err(format!("unknown group constructor {other:?}"))
            }
        }
    }

    fn elem(&mut self) -> Result<ElemRef, ParseError> {
        let start = self.pos;
        match self.ident()? {
            "idx" => {
                self.expect(':')?;
                Ok(ElemRef::Index(self.small_int()?))
            }
            "label" => {
                self.expect(':')?;
                Ok(ElemRef::Label(self.string()?))
            }
            other => {
                self.pos = start;
                self.skip_ws();
                self.err(format!("expected idx: or label:, found {other:?}"))
            }
        }
    }

    fn string(&mut self) -> Result<String, ParseError> {
        if self.peek() == Some('"') {
            self.pos += 1;
            let mut out = String::new();
            let mut chars = self.rest().char_indices();
            while let Some((i, c)) = chars.next() {
                match c {
                    '"' => {
                        self.pos += i + 1;
                        return Ok(out);
                    }
                    '\\' => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => out.push(e),
                        _ => {
                            self.pos += i;
                            return self.err("bad escape in string");
                        }
                    },
                    c => out.push(c),
                }
            }
            return self.err("unterminated string");
        }
        // Bare token: stop at a separator or at a ')' that closes an
        // enclosing constructor.
        let rest = self.rest();
        let mut depth = 0usize;
        let mut end = rest.len();
        for (i, c) in rest.char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    end = i;
                    break;
                }
                ')' => depth -= 1,
                ',' | ';' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        let token: String = rest[..end].chars().filter(|c| !c.is_whitespace()).collect();
        if token.is_empty() {
            return self.err("expected a label");
        }
        self.pos += end;
        Ok(token)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected trailing {c:?}")),
        }
    }
}

pub fn parse_ring_expr(text: &str) -> Result<RingExpr, ParseError> {
    let mut p = Parser::new(text);
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

/// Parses an element reference (`idx:INT` or `label:STRING`).
pub fn parse_elem_ref(text: &str) -> Result<ElemRef, ParseError> {
    let mut p = Parser::new(text);
    let e = p.elem()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_group_expr(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser::new(text);
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

/// A built ring together with the structure it was assembled from, which
/// some verifiers need (product factors, group ring data).
#[derive(Clone, Debug)]
pub struct Subject {
    pub ring: FiniteRing,
    pub factors: Option<Vec<FiniteRing>>,
    pub group_ring: Option<GroupRing>,
}

impl Subject {
    pub fn plain(ring: FiniteRing) -> Self {
        Subject {
            ring,
            factors: None,
            group_ring: None,
        }
    }

    pub fn from_group_ring(gr: GroupRing) -> Self {
        Subject {
            ring: gr.ring.clone(),
            factors: None,
            group_ring: Some(gr),
        }
    }
}

impl GroupExpr {
    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup, Error> {
        match self {
            GroupExpr::Cyclic(n) => make_cyclic_group(*n),
            GroupExpr::Product(gs) => {
                let gs = gs
                    .iter()
                    .map(|g| g.build(limits))
                    .collect::<Result<Vec<_>, _>>()?;
                make_group_product(&gs, limits)
            }
        }
    }
}

impl RingExpr {
    pub fn build(&self, limits: &Limits) -> Result<FiniteRing, Error> {
        Ok(self.build_subject(limits)?.ring)
    }

    pub fn build_subject(&self, limits: &Limits) -> Result<Subject, Error> {
        Ok(match self {
            RingExpr::Zmod(n) => Subject::plain(make_zmod(*n, limits)?),
            RingExpr::Matrix(n, r) => {
                Subject::plain(make_matrix_ring(*n, &r.build(limits)?, limits)?)
            }
            RingExpr::Triangular(n, r) => {
                Subject::plain(make_upper_triangular(*n, &r.build(limits)?, limits)?)
            }
            RingExpr::Product(rs) => {
                let factors = rs
                    .iter()
                    .map(|r| r.build(limits))
                    .collect::<Result<Vec<_>, _>>()?;
                Subject {
                    ring: make_product(&factors, limits)?,
                    factors: Some(factors),
                    group_ring: None,
                }
            }
            RingExpr::Quotient(r, es) => {
                let r = r.build(limits)?;
                let gens = es
                    .iter()
                    .map(|e| e.resolve(&r))
                    .collect::<Result<Vec<_>, _>>()?;
                let ideal = ideal_generated(&r, &gens)?;
                Subject::plain(make_quotient(&r, &ideal)?.ring)
            }
            RingExpr::Corner(r, e) => {
                let r = r.build(limits)?;
                let e = e.resolve(&r)?;
                Subject::plain(make_corner(&r, e)?.ring)
            }
            RingExpr::GroupRing(r, g) => {
                let r = r.build(limits)?;
                let g = g.build(limits)?;
                Subject::from_group_ring(make_group_ring(&r, &g, limits)?)
            }
        })
    }
}
