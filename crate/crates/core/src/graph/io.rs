//! Graph readers and writers.
//!
//! Three interchangeable formats:
//!
//! * DIMACS `.col`: `p edge n m` header, `e i j` edge lines, `c` comments;
//! * plain edge lists: one `i j` pair per line, `#` comments, and an optional
//!   `n=K` header for isolated trailing vertices (otherwise `n` is the largest
//!   endpoint);
//! * JSON: `{"n": 5, "edges": [[1,2], ...]}`.
//!
//! Parsers report the offending line number; repeated edges collapse to one.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    EdgeList,
    Json,
}

impl Format {
    /// Guess from a file name; `.col`/`.dimacs` and `.json` are recognized,
    /// anything else is treated as an edge list.
    pub fn from_path(path: &str) -> Format {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".col") || lower.ends_with(".dimacs") {
            Format::Dimacs
        } else if lower.ends_with(".json") {
            Format::Json
        } else {
            Format::EdgeList
        }
    }
}

pub fn parse(format: Format, text: &str) -> Result<Graph, GraphError> {
    match format {
        Format::Dimacs => parse_dimacs(text),
        Format::EdgeList => parse_edge_list(text),
        Format::Json => parse_json(text),
    }
}

pub fn write(format: Format, g: &Graph) -> String {
    match format {
        Format::Dimacs => write_dimacs(g),
        Format::EdgeList => write_edge_list(g),
        Format::Json => write_json(g),
    }
}

fn err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn parse_endpoint(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, format!("expected a vertex label, got \"{tok}\"")))
}

fn checked_edge(
    n: usize,
    i: usize,
    j: usize,
    line: usize,
) -> Result<(usize, usize), GraphError> {
    if i == 0 || i > n {
        return Err(err(line, format!("vertex {i} out of range 1..={n}")));
    }
    if j == 0 || j > n {
        return Err(err(line, format!("vertex {j} out of range 1..={n}")));
    }
    if i == j {
        return Err(err(line, format!("self-loop at vertex {i}")));
    }
    Ok((i, j))
}

pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next().unwrap() {
            "c" => continue,
            "p" => {
                if n.is_some() {
                    return Err(err(line, "duplicate problem line"));
                }
                let kind = toks.next().ok_or_else(|| err(line, "missing problem type"))?;
                if kind != "edge" && kind != "col" {
                    return Err(err(line, format!("unsupported problem type \"{kind}\"")));
                }
                let nv = parse_endpoint(
                    toks.next().ok_or_else(|| err(line, "missing vertex count"))?,
                    line,
                )?;
                // The declared edge count is not enforced: repeated `e` lines
                // collapse, and real-world files disagree with their headers.
                let _ = toks.next();
                n = Some(nv);
            }
            "e" => {
                let n = n.ok_or_else(|| err(line, "edge before problem line"))?;
                let i = parse_endpoint(
                    toks.next().ok_or_else(|| err(line, "edge needs two endpoints"))?,
                    line,
                )?;
                let j = parse_endpoint(
                    toks.next().ok_or_else(|| err(line, "edge needs two endpoints"))?,
                    line,
                )?;
                edges.push(checked_edge(n, i, j, line)?);
            }
            other => return Err(err(line, format!("unrecognized line type \"{other}\""))),
        }
    }
    let n = n.ok_or_else(|| err(text.lines().count().max(1), "missing problem line"))?;
    Graph::from_edges(n, &edges)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n_declared: Option<usize> = None;
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new(); // (i, j, line)
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.split('#').next().unwrap_or("").trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("n=") {
            if n_declared.is_some() {
                return Err(err(line, "duplicate n= header"));
            }
            if !pairs.is_empty() {
                return Err(err(line, "n= header must precede all edges"));
            }
            n_declared = Some(parse_endpoint(rest.trim(), line)?);
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(line, format!("expected \"i j\", got \"{trimmed}\"")));
        }
        let i = parse_endpoint(toks[0], line)?;
        let j = parse_endpoint(toks[1], line)?;
        pairs.push((i, j, line));
    }
    let n = match n_declared {
        Some(n) => n,
        None => pairs.iter().map(|&(i, j, _)| i.max(j)).max().unwrap_or(0),
    };
    let mut edges = Vec::with_capacity(pairs.len());
    for (i, j, line) in pairs {
        edges.push(checked_edge(n, i, j, line)?);
    }
    Graph::from_edges(n, &edges)
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        JsonGraph { n: self.n(), edges: self.edges().collect() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let jg = JsonGraph::deserialize(de)?;
        Graph::from_edges(jg.n, &jg.edges).map_err(serde::de::Error::custom)
    }
}

pub fn parse_json(text: &str) -> Result<Graph, GraphError> {
    let jg: JsonGraph =
        serde_json::from_str(text).map_err(|e| err(e.line(), e.to_string()))?;
    for &(i, j) in &jg.edges {
        checked_edge(jg.n, i, j, 1)?;
    }
    Graph::from_edges(jg.n, &jg.edges)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (i, j) in g.edges() {
        out.push_str(&format!("e {i} {j}\n"));
    }
    out
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

pub fn write_json(g: &Graph) -> String {
    let jg = JsonGraph { n: g.n(), edges: g.edges().collect() };
    let mut s = serde_json::to_string(&jg).expect("graph serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_parses_with_comments() {
        let text = "c five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
        let g = parse_dimacs(text).unwrap();
        assert_eq!(g, Graph::cycle(5));
    }

    #[test]
    fn dimacs_errors_name_lines() {
        let e = parse_dimacs("p edge 3 1\ne 1 4\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: vertex 4 out of range 1..=3");
        let e = parse_dimacs("p edge 3 1\ne 2 2\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: self-loop at vertex 2");
        let e = parse_dimacs("e 1 2\n").unwrap_err();
        assert!(e.to_string().starts_with("line 1:"));
        let e = parse_dimacs("p edge 3 1\nq 1 2\n").unwrap_err();
        assert!(e.to_string().contains("unrecognized"));
    }

    #[test]
    fn edge_list_infers_or_declares_n() {
        let g = parse_edge_list("1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        let g = parse_edge_list("n=5\n1 2\n2 3 # chord next\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 2);
        let e = parse_edge_list("1 2\nn=5\n").unwrap_err();
        assert!(e.to_string().contains("precede"));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_edge_list("1 2\n2 1\n1 2\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let g = Graph::cycle(6).delete_edge(2, 3).unwrap();
        let s = write_json(&g);
        assert_eq!(parse_json(&s).unwrap(), g);
    }

    #[test]
    fn all_writers_roundtrip() {
        let g = Graph::complete(4).disjoint_union(&Graph::empty(2));
        for format in [Format::Dimacs, Format::EdgeList, Format::Json] {
            let text = write(format, &g);
            assert_eq!(parse(format, &text).unwrap(), g, "{format:?}");
        }
    }

    #[test]
    fn format_guess_from_extension() {
        assert_eq!(Format::from_path("a/b/queen5.col"), Format::Dimacs);
        assert_eq!(Format::from_path("G.JSON"), Format::Json);
        assert_eq!(Format::from_path("graph.txt"), Format::EdgeList);
    }
}
