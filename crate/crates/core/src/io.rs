//! Text formats: the diagonal-list graph file, generic edge lists, JSON-lines
//! result records and DOT drawings of grid embeddings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dim_two::GridEmbedding;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::mop::MopGraph;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_labels(line: &str, lineno: usize) -> Result<(u32, u32)> {
    let mut it = line.split_whitespace();
    let bad = || Error::Parse(format!("line {lineno}: expected two labels, got {line:?}"));
    let a = it
        .next()
        .ok_or_else(bad)?
        .parse::<u32>()
        .map_err(|_| bad())?;
    let b = it
        .next()
        .ok_or_else(bad)?
        .parse::<u32>()
        .map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

/// Reads `n` followed by the `n - 3` diagonals, one pair per line.
pub fn parse_mop(text: &str) -> Result<MopGraph> {
    let (n, pairs) = parse_pairs(text)?;
    MopGraph::from_diagonals(n, &pairs)
}

/// Header and pairs of a diagonal or edge file, without validation.
pub fn parse_pairs(text: &str) -> Result<(usize, Vec<(u32, u32)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    let n = header.parse::<usize>().map_err(|_| {
        Error::Parse(format!(
            "line {lineno}: expected the vertex count, got {header:?}"
        ))
    })?;
    let pairs = lines
        .map(|(k, l)| parse_labels(l, k))
        .collect::<Result<Vec<_>>>()?;
    Ok((n, pairs))
}

/// Reads an arbitrary labelling of a MOP as `n` followed by all `2n - 3` edges.
///
/// Returns the graph in clockwise labels and the map from input labels to them.
pub fn parse_edge_list(text: &str) -> Result<(MopGraph, std::collections::BTreeMap<u32, u32>)> {
    let (n, edges) = parse_pairs(text)?;
    let (g, map) = MopGraph::recognize(&edges)?;
    if g.n() != n {
        return Err(Error::Parse(format!(
            "header says {n} vertices, edges use {}",
            g.n()
        )));
    }
    Ok((g, map))
}

/// Writes the diagonal file, keeping the diagonal order and orientation of `g`.
pub fn write_mop(g: &MopGraph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(a, b) in g.diagonals() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Several graphs in one stream, separated by blank lines.
pub fn write_mop_stream<'a>(graphs: impl IntoIterator<Item = &'a MopGraph>) -> String {
    graphs
        .into_iter()
        .map(write_mop)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Splits a stream written by [`write_mop_stream`] back into graphs.
pub fn parse_mop_stream(text: &str) -> Result<Vec<MopGraph>> {
    let mut out = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if strip_comment(line).is_empty() && line.trim().is_empty() {
            if !block.trim().is_empty() {
                out.push(parse_mop(&block)?);
            }
            block.clear();
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(out)
}

/// The answer field of a [`ResultRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Answer {
    Bool(bool),
    Count(u64),
    Text(String),
}

/// One line of structured output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub graph: String,
    pub n: usize,
    pub operation: String,
    pub answer: Answer,
    pub witness: Option<VertexSet>,
    pub micros: u64,
}

impl ResultRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// DOT drawing with each vertex pinned at its grid point.
pub fn embedding_dot(g: &MopGraph, emb: &GridEmbedding) -> String {
    let mut out = String::from("graph mop {\n  node [shape=circle];\n");
    for v in 1..=g.n() as u32 {
        let (i, j) = emb.coord(v);
        let _ = writeln!(out, "  {v} [pos=\"{i},{j}!\", i={i}, j={j}];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// DOT drawing of the polygon with the boundary laid out on a circle.
pub fn mop_dot(g: &MopGraph) -> String {
    let n = g.n() as f64;
    let mut out = String::from("graph mop {\n  node [shape=circle];\n");
    for v in 1..=g.n() {
        let angle = std::f64::consts::FRAC_PI_2 - std::f64::consts::TAU * (v - 1) as f64 / n;
        let (x, y) = (3.0 * angle.cos(), 3.0 * angle.sin());
        let _ = writeln!(out, "  {v} [pos=\"{x:.3},{y:.3}!\"];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let g = parse_mop("# pentagon\n5\n1 3 # first\n\n1 4\n").unwrap();
        assert_eq!(g.diagonals(), &[(1, 3), (1, 4)]);
    }

    #[test]
    fn write_keeps_orientation() {
        let text = "6\n4 1\n6 4\n2 4\n";
        assert_eq!(write_mop(&parse_mop(text).unwrap()), text);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_mop(""), Err(Error::Parse(_))));
        assert!(matches!(parse_mop("5\n1 x\n1 4\n"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_mop("4\n"),
            Err(Error::WrongDiagonalCount { .. })
        ));
    }

    #[test]
    fn record_round_trip() {
        let r = ResultRecord {
            graph: "fan-7".into(),
            n: 7,
            operation: "dim2".into(),
            answer: Answer::Bool(false),
            witness: None,
            micros: 12,
        };
        assert_eq!(ResultRecord::from_line(&r.to_line()).unwrap(), r);
        let r = ResultRecord {
            answer: Answer::Count(3),
            witness: Some(VertexSet::from_labels([1, 2, 5])),
            ..r
        };
        let line = r.to_line();
        assert!(line.contains("\"witness\":[1,2,5]"));
        assert_eq!(ResultRecord::from_line(&line).unwrap(), r);
    }

    #[test]
    fn stream_round_trip() {
        let gs = vec![parse_mop("3\n").unwrap(), parse_mop("4\n2 4\n").unwrap()];
        let text = write_mop_stream(&gs);
        assert_eq!(parse_mop_stream(&text).unwrap(), gs);
    }
}
