//! Edge-list file format and small argument parsers.
//!
//! Files hold optional `#` comment lines, a header `n m`, then `m` lines
//! `u v` with `u < v`, 0-indexed, newline-terminated. Writing emits the
//! canonical form: no comments, edges ascending.

use std::fmt;

use cosecure::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((header_line, header)) = lines.next() else {
        return err(1, "missing header line `n m`");
    };
    let mut parts = header.split_whitespace();
    let (Some(n), Some(m), None) = (parts.next(), parts.next(), parts.next()) else {
        return err(header_line, format!("expected header `n m`, found `{header}`"));
    };
    let n: usize = match n.parse() {
        Ok(v) => v,
        Err(_) => return err(header_line, format!("bad vertex count `{n}`")),
    };
    let m: usize = match m.parse() {
        Ok(v) => v,
        Err(_) => return err(header_line, format!("bad edge count `{m}`")),
    };

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, content) in lines {
        if edges.len() == m {
            return err(line, format!("unexpected extra line after {m} edges"));
        }
        let mut parts = content.split_whitespace();
        let (Some(u), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return err(line, format!("expected edge `u v`, found `{content}`"));
        };
        let u: usize = match u.parse() {
            Ok(x) => x,
            Err(_) => return err(line, format!("bad vertex `{u}`")),
        };
        let v: usize = match v.parse() {
            Ok(x) => x,
            Err(_) => return err(line, format!("bad vertex `{v}`")),
        };
        if u >= v {
            if u == v {
                return err(line, format!("self-loop ({u}, {v})"));
            }
            return err(line, format!("edge ({u}, {v}) must be written with u < v"));
        }
        // build incrementally so duplicate and range errors carry the line
        if let Err(e) = Graph::new(n, &[(u, v)]) {
            match e {
                GraphError::EndpointOutOfRange(..) => {
                    return err(line, format!("edge ({u}, {v}) outside 0..{n}"))
                }
                _ => return err(line, e.to_string()),
            }
        }
        if edges.contains(&(u, v)) {
            return err(line, format!("duplicate edge ({u}, {v})"));
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return err(
            last_line,
            format!("header announced {m} edges, found {}", edges.len()),
        );
    }
    Graph::new(n, &edges).map_err(|e| ParseError {
        line: header_line,
        message: e.to_string(),
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses `0,2,3` into a vertex set of the given capacity.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet, String> {
    let mut set = VertexSet::empty(n);
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = token
            .parse()
            .map_err(|_| format!("bad vertex `{token}` in set"))?;
        if v >= n {
            return Err(format!("vertex {v} outside 0..{n}"));
        }
        set.insert(v);
    }
    Ok(set)
}

/// Parses `0-1,2-3` into an ordered edge list.
pub fn parse_edge_order(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut out = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let Some((u, v)) = token.split_once('-') else {
            return Err(format!("bad edge `{token}`; expected `u-v`"));
        };
        let u: usize = u.trim().parse().map_err(|_| format!("bad vertex `{u}`"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bad vertex `{v}`"))?;
        out.push((u, v));
    }
    Ok(out)
}
