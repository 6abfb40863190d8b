//! Plain-text graph format.
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v> <w>      (m times; 0 <= u, v < n; w a non-negative decimal)
//! ```

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{EdgeKind, GraphError, VertexId, WeightedGraph};
use crate::weight::{Decimal, DecimalError};

#[derive(Debug, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to a line (e.g. a short file).
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum ParseErrorKind {
    #[error("expected header `p <n> <m>` before edges")]
    MissingHeader,
    #[error("second header")]
    DuplicateHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error(transparent)]
    Weight(#[from] DecimalError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn err(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError {
        line,
        kind: kind.into(),
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| err(line, ParseErrorKind::Malformed(format!("missing {what}"))))?;
    tok.parse().map_err(|_| {
        err(
            line,
            ParseErrorKind::Malformed(format!("bad {what} `{tok}`")),
        )
    })
}

/// Reads and validates a graph; all edges are `EdgeKind::Original`.
pub fn load_graph<R: BufRead>(reader: R) -> Result<WeightedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, VertexId, VertexId, Decimal)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| err(lineno, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(lineno, ParseErrorKind::DuplicateHeader));
                }
                let n = parse_usize(toks.next(), lineno, "vertex count")?;
                let m = parse_usize(toks.next(), lineno, "edge count")?;
                if n >= u32::MAX as usize {
                    return Err(err(
                        lineno,
                        ParseErrorKind::Malformed("vertex count too large".into()),
                    ));
                }
                header = Some((n, m));
                edges.reserve(m.min(1 << 24));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(err(lineno, ParseErrorKind::MissingHeader));
                }
                let u = parse_usize(toks.next(), lineno, "endpoint")?;
                let v = parse_usize(toks.next(), lineno, "endpoint")?;
                let w = toks.next().ok_or_else(|| {
                    err(lineno, ParseErrorKind::Malformed("missing weight".into()))
                })?;
                let w = Decimal::parse(w).map_err(|e| err(lineno, e))?;
                edges.push((lineno, u, v, w));
            }
            Some(tok) => {
                return Err(err(
                    lineno,
                    ParseErrorKind::Malformed(format!("unknown record `{tok}`")),
                ))
            }
            None => unreachable!(),
        }
        if toks.next().is_some() {
            return Err(err(
                lineno,
                ParseErrorKind::Malformed("trailing tokens".into()),
            ));
        }
    }
    let (n, m) = header.ok_or_else(|| err(0, ParseErrorKind::MissingHeader))?;
    let scale = edges.iter().map(|e| e.3.digits).max().unwrap_or(0);
    let mut g = WeightedGraph::new(n, scale);
    for &(lineno, u, v, w) in &edges {
        g.add_edge(u, v, w.to_weight(scale), EdgeKind::Original)
            .map_err(|e| err(lineno, e))?;
    }
    if g.m() != m {
        return Err(err(
            0,
            ParseErrorKind::EdgeCount {
                expected: m,
                found: g.m(),
            },
        ));
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    load_graph(text.as_bytes())
}

/// Writes `g` in the format accepted by [`load_graph`].
pub fn write_graph<W: Write>(g: &WeightedGraph, mut out: W) -> io::Result<()> {
    writeln!(out, "p {} {}", g.n(), g.m())?;
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.w.display(g.scale()))?;
    }
    Ok(())
}
