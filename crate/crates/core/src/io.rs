//! Text formats: problem files (`ring:` / `ideal:` / `tuple:`) and graph
//! edge lists.

use std::collections::BTreeSet;

use crate::error::{Error, ParseError, Result};
use crate::expansion::ExpansionTuple;
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, RingDescriptor};

/// One parsed problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub ring: RingDescriptor,
    pub ideal: MonomialIdeal,
    pub tuple: Option<ExpansionTuple>,
}

// Lines with comments stripped: (1-based line number, column of the first
// kept character, text), blank lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        (!line.trim().is_empty()).then_some((i + 1, line))
    })
}

// Splits `key: value`, returning the value and its 1-based column.
fn keyed<'a>(line: &'a str, lineno: usize, key: &str) -> Result<(&'a str, usize), ParseError> {
    let lead = line.len() - line.trim_start().len();
    let rest = &line[lead..];
    match rest.split_once(':') {
        Some((k, v)) if k.trim() == key => Ok((v, lead + k.len() + 2)),
        Some((k, _)) => Err(ParseError::new(lineno, lead + 1, format!("expected '{key}:', found '{}:'", k.trim()))),
        None => Err(ParseError::new(lineno, lead + 1, format!("expected '{key}:'"))),
    }
}

// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, base_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((base_col + st, &s[st..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((base_col + st, &s[st..]));
    }
    out
}

pub fn parse_problem(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut lines = content_lines(text);
    let (ln, line) = lines.next().ok_or_else(|| ParseError::new(1, 1, "expected 'ring:'"))?;
    let (value, col) = keyed(line, ln, "ring")?;
    let names: Vec<String> = tokens(value, col).into_iter().map(|(_, t)| t.to_string()).collect();
    let ring = RingDescriptor::new(names).map_err(|e| ParseError::new(ln, col, e.to_string()))?;

    let (ln, line) = lines
        .next()
        .ok_or_else(|| ParseError::new(ln + 1, 1, "expected 'ideal:'"))?;
    let (value, col) = keyed(line, ln, "ideal")?;
    let mut gens = Vec::new();
    if !value.trim().is_empty() {
        let mut offset = 0;
        for part in value.split(',') {
            gens.push(ring.parse_monomial_at(part, ln, col + offset)?);
            offset += part.len() + 1;
        }
    }
    let ideal = MonomialIdeal::new(ring.clone(), gens).expect("parsed over this ring");

    let tuple = match lines.next() {
        None => None,
        Some((ln, line)) => {
            let (value, col) = keyed(line, ln, "tuple")?;
            let toks = tokens(value, col);
            let mut entries = Vec::with_capacity(toks.len());
            for (c, t) in &toks {
                let v: usize = t
                    .parse()
                    .ok()
                    .filter(|v| *v > 0)
                    .ok_or_else(|| ParseError::new(ln, *c, format!("'{t}' is not a positive integer")))?;
                entries.push(v);
            }
            if entries.len() != ring.nvars() {
                return Err(ParseError::new(
                    ln,
                    col,
                    format!("tuple has {} entries but the ring has {} variables", entries.len(), ring.nvars()),
                ));
            }
            Some(ExpansionTuple::new(entries).map_err(|e| ParseError::new(ln, col, e.to_string()))?)
        }
    };
    if let Some((ln, line)) = lines.next() {
        let lead = line.len() - line.trim_start().len();
        return Err(ParseError::new(ln, lead + 1, "unexpected content after the problem"));
    }
    Ok(ProblemInstance { ring, ideal, tuple })
}

pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let gens: Vec<String> = ideal.gens().iter().map(|g| ideal.ring().format_monomial(g)).collect();
    format!("ring: {}\nideal: {}\n", ideal.ring().names().join(" "), gens.join(", "))
}

pub fn format_problem(ideal: &MonomialIdeal, tuple: Option<&ExpansionTuple>) -> String {
    let mut out = format_ideal(ideal);
    if let Some(t) = tuple {
        let entries: Vec<String> = t.entries().iter().map(usize::to_string).collect();
        out.push_str(&format!("tuple: {}\n", entries.join(" ")));
    }
    out
}

/// A simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges as 1-based vertex pairs; self-loops are rejected.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidArgument("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > vertices || v > vertices {
                return Err(Error::InvalidArgument(format!("edge {u} {v} outside 1..={vertices}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self { vertices, edges: set })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// `I(G) = (x_u x_v : uv ∈ E)` over `x1, ..., xn`.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let ring = RingDescriptor::standard(self.vertices);
        let gens = self.edges().map(|(u, v)| ring.var(u - 1).mul(&ring.var(v - 1)));
        MonomialIdeal::new(ring.clone(), gens).expect("same ring")
    }

    /// The graph with vertex `v` replaced by `copies[v - 1]` independent
    /// copies, each adjacent to every copy of every neighbour of `v`.
    /// Vertices are renumbered block by block.
    pub fn duplicate(&self, copies: &[usize]) -> Result<Graph> {
        if copies.len() != self.vertices || copies.contains(&0) {
            return Err(Error::InvalidArgument("one positive copy count per vertex".into()));
        }
        let mut offset = vec![0; self.vertices + 1];
        for v in 0..self.vertices {
            offset[v + 1] = offset[v] + copies[v];
        }
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            for a in 0..copies[u - 1] {
                for b in 0..copies[v - 1] {
                    edges.push((offset[u - 1] + a + 1, offset[v - 1] + b + 1));
                }
            }
        }
        Graph::new(offset[self.vertices], edges)
    }
}

/// Lines `u v` with 1-based vertices, plus an optional `vertices: n` line;
/// without it the largest vertex mentioned sets `n`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut declared = None;
    let mut edges = Vec::new();
    let mut max_vertex = 0;
    for (ln, line) in content_lines(text) {
        if line.trim_start().starts_with("vertices") {
            let (value, col) = keyed(line, ln, "vertices")?;
            let v = value.trim();
            declared = Some(
                v.parse::<usize>()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| ParseError::new(ln, col, format!("'{v}' is not a positive vertex count")))?,
            );
            continue;
        }
        let toks = tokens(line, 1);
        if toks.len() != 2 {
            let col = toks.get(2).map_or(1, |(c, _)| *c);
            return Err(ParseError::new(ln, col, "expected an edge 'u v'"));
        }
        let mut ends = [0usize; 2];
        for (k, (c, t)) in toks.iter().enumerate() {
            ends[k] = t
                .parse()
                .ok()
                .filter(|v| *v > 0)
                .ok_or_else(|| ParseError::new(ln, *c, format!("'{t}' is not a vertex number")))?;
        }
        if ends[0] == ends[1] {
            return Err(ParseError::new(ln, toks[0].0, format!("self-loop at vertex {}", ends[0])));
        }
        max_vertex = max_vertex.max(ends[0]).max(ends[1]);
        edges.push((ln, toks[0].0, ends[0], ends[1]));
    }
    let n = declared.unwrap_or(max_vertex);
    if n == 0 {
        return Err(ParseError::new(1, 1, "graph has no vertices"));
    }
    if let Some((ln, col, u, v)) = edges.iter().find(|(_, _, u, v)| *u > n || *v > n) {
        return Err(ParseError::new(*ln, *col, format!("edge {u} {v} exceeds the declared {n} vertices")));
    }
    Graph::new(n, edges.into_iter().map(|(_, _, u, v)| (u, v))).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

/// Parses a standalone monomial list `m1, m2, ...` over `ring`.
pub fn parse_monomial_list(ring: &RingDescriptor, text: &str) -> Result<Vec<Monomial>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut offset = 0;
    let mut out = Vec::new();
    for part in text.split(',') {
        out.push(ring.parse_monomial_at(part, 1, 1 + offset)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::ExpandedRing;

    const WORKED: &str = "# worked example\nring: x1 x2 x3\n\nideal: x1*x2, x3^2\ntuple: 1 3 2\n";

    #[test]
    fn parses_problem() {
        let p = parse_problem(WORKED).unwrap();
        assert_eq!(p.ring.names(), &["x1", "x2", "x3"]);
        assert_eq!(p.ideal.gens().len(), 2);
        assert_eq!(p.tuple.unwrap().entries(), &[1, 3, 2]);
    }

    #[test]
    fn tuple_is_optional_and_ideal_may_be_zero() {
        let p = parse_problem("ring: a b\nideal:\n").unwrap();
        assert!(p.ideal.is_zero());
        assert!(p.tuple.is_none());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_problem("ring: x1 x2\nideal: x1*x2, x1*y\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 18));
        let e = parse_problem("ring: x1 x2\nideal: x1\ntuple: 1 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 10));
        let e = parse_problem("ring: x1 x2\nideal: x1\ntuple: 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_problem("ideal: x1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_problem("ring: x1 x1\nideal: x1\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_problem("ring: x1\nideal: x1^0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));
    }

    #[test]
    fn round_trip() {
        let p = parse_problem(WORKED).unwrap();
        let e = ExpandedRing::new(p.ring.clone(), p.tuple.clone().unwrap()).unwrap();
        let star = e.expand_ideal(&p.ideal).unwrap();
        let text = format_ideal(&star);
        let back = parse_problem(&text).unwrap();
        assert_eq!(back.ideal, star);
        assert_eq!(parse_problem(&format_problem(&p.ideal, p.tuple.as_ref())).unwrap(), p);
    }

    #[test]
    fn graphs() {
        let g = parse_graph("1 2\n2 3\n").unwrap();
        let i = g.edge_ideal();
        assert_eq!(i.to_string(), "(x1*x2, x2*x3)");
        let empty = parse_graph("vertices: 3\n").unwrap();
        assert!(empty.edge_ideal().is_zero());
        assert!(parse_graph("1 1\n").is_err());
        assert!(parse_graph("1 2 3\n").is_err());
        assert!(parse_graph("vertices: 2\n1 3\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn duplication_matches_expansion() {
        let g = parse_graph("1 2\n").unwrap();
        let d = g.duplicate(&[1, 2]).unwrap();
        assert_eq!(d.edge_ideal().to_string(), "(x1*x2, x1*x3)");
        let e = ExpandedRing::new(g.edge_ideal().ring().clone(), ExpansionTuple::new(vec![1, 2]).unwrap()).unwrap();
        let star = e.expand_ideal(&g.edge_ideal()).unwrap();
        assert_eq!(star.gens(), d.edge_ideal().gens());
        assert_eq!(star.to_string(), "(x1_1*x2_1, x1_1*x2_2)");
    }
}
