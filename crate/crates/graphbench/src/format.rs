//! Canonical text format for graphs.
//!
//! ```text
//! GRAPHBENCH v1
//! <n> <m>
//! <color of vertex 0>
//! ...
//! <u> <v> <w>      (u < v, sorted by (u, v))
//! ```
//!
//! Floats are written in scientific notation with 17 significant digits,
//! which is enough for every `f64` to survive a round trip bit-exactly.
//! Lines end in LF, nothing trails on a line, and the file ends in exactly
//! one newline. Every abstract graph has exactly one serialization.

use std::fmt::{self, Write as _};
use std::hash::Hasher;

use graphbench_core::{BuildGraph, EdgeTriple, Graph, GraphError};

pub const HEADER: &str = "GRAPHBENCH v1";

/// Renders a float with 17 significant digits.
pub fn fmt_real(x: f64) -> RealDisplay {
    RealDisplay(x)
}

#[derive(Debug, Clone, Copy)]
pub struct RealDisplay(f64);

impl fmt::Display for RealDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str(if self.0 > 0.0 { "inf" } else { "-inf" })
        } else {
            write!(f, "{:.16e}", self.0)
        }
    }
}

pub fn serialize<G: Graph>(g: &G) -> String {
    let edges = g.edges();
    let mut out = String::with_capacity(32 * (g.vertex_count() + edges.len()) + 32);
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(out, "{} {}", g.vertex_count(), edges.len());
    for &c in g.colors() {
        let _ = writeln!(out, "{}", fmt_real(c));
    }
    for e in &edges {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, fmt_real(e.w));
    }
    out
}

/// FNV-1a, 64 bit.
pub fn checksum(bytes: &[u8]) -> u64 {
    let mut h = fnv::FnvHasher::default();
    h.write(bytes);
    h.finish()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseCause {
    #[error("expected header {HEADER:?}")]
    BadHeader,
    #[error("expected `<n> <m>`")]
    BadCounts,
    #[error("file ended early")]
    UnexpectedEof,
    #[error("missing trailing newline")]
    MissingNewline,
    #[error("content after the last edge line")]
    TrailingContent,
    #[error("carriage return or trailing whitespace")]
    StrayWhitespace,
    #[error("expected {expected} fields, found {found}")]
    FieldCount { expected: usize, found: usize },
    #[error("invalid integer {0:?}")]
    InvalidInteger(String),
    #[error("invalid number {0:?}")]
    InvalidReal(String),
    #[error("color {0} is outside [0, 1]")]
    ColorOutOfRange(f64),
    #[error("weight {0} is outside [0, 1]")]
    WeightOutOfRange(f64),
    #[error("endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("edge must satisfy u < v")]
    NotCanonical,
    #[error("edges out of order")]
    Unsorted,
    #[error("duplicate edge")]
    DuplicateEdge,
}

/// A malformed graph file. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {cause}")]
pub struct ParseError {
    pub line: usize,
    pub cause: ParseCause,
}

fn err<T>(line: usize, cause: ParseCause) -> Result<T, ParseError> {
    Err(ParseError { line, cause })
}

fn int(line: usize, s: &str) -> Result<usize, ParseError> {
    // `usize::from_str` accepts a leading '+', which is not canonical.
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return err(line, ParseCause::InvalidInteger(s.to_owned()));
    }
    s.parse()
        .or_else(|_| err(line, ParseCause::InvalidInteger(s.to_owned())))
}

fn real(line: usize, s: &str) -> Result<f64, ParseError> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => err(line, ParseCause::InvalidReal(s.to_owned())),
    }
}

fn fields<const N: usize>(line: usize, text: &str) -> Result<[&str; N], ParseError> {
    let parts: Vec<&str> = text.split(' ').collect();
    if parts.len() != N {
        return err(
            line,
            ParseCause::FieldCount {
                expected: N,
                found: parts.len(),
            },
        );
    }
    Ok(parts.try_into().expect("length checked"))
}

/// Parses a graph file into any representation.
pub fn parse<G: BuildGraph>(text: &str) -> Result<G, ParseError> {
    let (n, colors, edges) = parse_parts(text)?;
    G::build(n, colors, &edges).map_err(|e| {
        // Parsing already rules these out; kept as a backstop.
        let cause = match e {
            GraphError::DuplicateEdge { .. } => ParseCause::DuplicateEdge,
            GraphError::SelfLoop(_) => ParseCause::NotCanonical,
            GraphError::EndpointOutOfRange { vertex, n } => {
                ParseCause::EndpointOutOfRange { vertex, n }
            }
            GraphError::ColorOutOfRange { value, .. } => ParseCause::ColorOutOfRange(value),
            GraphError::WeightOutOfRange { value, .. } => ParseCause::WeightOutOfRange(value),
            GraphError::ColorCountMismatch { .. } => ParseCause::BadCounts,
        };
        ParseError { line: 0, cause }
    })
}

fn parse_parts(text: &str) -> Result<(usize, Vec<f64>, Vec<EdgeTriple>), ParseError> {
    let Some(body) = text.strip_suffix('\n') else {
        let last = text.lines().count().max(1);
        return err(last, ParseCause::MissingNewline);
    };
    let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let mut next = || -> Result<(usize, &str), ParseError> {
        match lines.next() {
            Some((no, l)) if l.contains('\r') || l.ends_with(' ') || l.starts_with(' ') => {
                err(no, ParseCause::StrayWhitespace)
            }
            Some(pair) => Ok(pair),
            None => err(0, ParseCause::UnexpectedEof),
        }
    };
    let eof_at = |line: usize| {
        move |mut e: ParseError| {
            if e.cause == ParseCause::UnexpectedEof {
                e.line = line;
            }
            e
        }
    };

    let (no, header) = next()?;
    if header != HEADER {
        return err(no, ParseCause::BadHeader);
    }
    let (no, counts) = next().map_err(eof_at(2))?;
    let [n, m] = fields::<2>(no, counts).or_else(|_| err(no, ParseCause::BadCounts))?;
    let (n, m) = (int(no, n)?, int(no, m)?);

    let mut colors = Vec::with_capacity(n);
    for i in 0..n {
        let (no, l) = next().map_err(eof_at(3 + i))?;
        let c = real(no, l)?;
        if !(0.0..=1.0).contains(&c) {
            return err(no, ParseCause::ColorOutOfRange(c));
        }
        colors.push(c);
    }

    let mut edges: Vec<EdgeTriple> = Vec::with_capacity(m);
    for i in 0..m {
        let (no, l) = next().map_err(eof_at(3 + n + i))?;
        let [u, v, w] = fields::<3>(no, l)?;
        let (u, v, w) = (int(no, u)?, int(no, v)?, real(no, w)?);
        for vertex in [u, v] {
            if vertex >= n {
                return err(no, ParseCause::EndpointOutOfRange { vertex, n });
            }
        }
        if u >= v {
            return err(no, ParseCause::NotCanonical);
        }
        if !(0.0..=1.0).contains(&w) {
            return err(no, ParseCause::WeightOutOfRange(w));
        }
        if let Some(prev) = edges.last() {
            match (prev.u, prev.v).cmp(&(u, v)) {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => return err(no, ParseCause::DuplicateEdge),
                std::cmp::Ordering::Greater => return err(no, ParseCause::Unsorted),
            }
        }
        edges.push(EdgeTriple::new(u, v, w));
    }

    if let Ok((no, _)) = next() {
        return err(no, ParseCause::TrailingContent);
    }
    Ok((n, colors, edges))
}
