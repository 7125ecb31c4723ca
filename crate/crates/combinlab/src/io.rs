//! Text formats. Graph files and DIMACS are 1-based; everything in memory
//! and in JSON is 0-based.
//!
//! Graph text format, `#` starting a comment:
//!
//! ```text
//! p 3 2        # undirected: n vertices, m edges
//! e 1 2
//! e 2 3 5/2    # optional weight, integer or p/q
//! ```
//!
//! A digraph uses `pd n m` and `a u v [w]` lines.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::complexity::Cnf;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};
use crate::paths::{Weight, WeightedDigraph, WeightedGraph};

/// Lines with comments stripped, blank ones dropped, numbered from 1.
fn content_lines(text: &str, comment: Option<char>) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(move |(i, l)| {
        let l = match comment.and_then(|c| l.find(c)) {
            Some(c) => &l[..c],
            None => l,
        };
        let l = l.trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// `7`, `-2` or `3/4`.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let bad = || Error::invalid(format!("bad weight {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Weight::new(p, q))
        }
        None => Ok(Weight::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub directed: bool,
    pub n: usize,
    /// 0-based ends, in file order.
    pub edges: Vec<(usize, usize, Option<Weight>)>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(bool, usize, usize)> = None;
    let mut edges = Vec::new();
    for (line, l) in content_lines(text, Some('#')) {
        let tok: Vec<&str> = l.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            tok.get(i)
                .ok_or_else(|| Error::parse(line, "missing field"))?
                .parse()
                .map_err(|_| Error::parse(line, format!("bad number {:?}", tok[i])))
        };
        match tok[0] {
            "p" | "pd" => {
                if header.is_some() {
                    return Err(Error::parse(line, "second header line"));
                }
                if tok.len() != 3 {
                    return Err(Error::parse(line, "header is `p n m` or `pd n m`"));
                }
                header = Some((tok[0] == "pd", num(1)?, num(2)?));
            }
            kind @ ("e" | "a") => {
                let Some((directed, n, _)) = header else {
                    return Err(Error::parse(line, "edge before header"));
                };
                if directed != (kind == "a") {
                    return Err(Error::parse(line, if directed { "use `a` lines in a `pd` file" } else { "use `e` lines in a `p` file" }));
                }
                if !(3..=4).contains(&tok.len()) {
                    return Err(Error::parse(line, format!("expected `{kind} u v [w]`")));
                }
                let (u, v) = (num(1)?, num(2)?);
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(line, format!("vertex out of range 1..={n}")));
                }
                let w = tok.get(3).map(|s| parse_weight(s)).transpose().map_err(|e| Error::parse(line, e.to_string()))?;
                edges.push((u - 1, v - 1, w));
            }
            other => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let (directed, n, m) = header.ok_or_else(|| Error::parse(1, "missing `p n m` header"))?;
    if edges.len() != m {
        return Err(Error::invalid(format!("header promises {m} edges, file has {}", edges.len())));
    }
    Ok(GraphFile { directed, n, edges })
}

impl GraphFile {
    fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v, _)| (u, v)).collect()
    }

    fn weighted(&self) -> Vec<(usize, usize, Weight)> {
        self.edges.iter().map(|&(u, v, w)| (u, v, w.unwrap_or(Weight::from_integer(1)))).collect()
    }

    fn expect(&self, directed: bool) -> Result<()> {
        match (self.directed, directed) {
            (false, true) => Err(Error::invalid("expected a digraph (`pd` header)")),
            (true, false) => Err(Error::invalid("expected an undirected graph (`p` header)")),
            _ => Ok(()),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        self.expect(false)?;
        Graph::new(self.n, self.pairs())
    }

    pub fn digraph(&self) -> Result<Digraph> {
        self.expect(true)?;
        Digraph::new(self.n, self.pairs())
    }

    /// Missing weights count as 1.
    pub fn weighted_graph(&self) -> Result<WeightedGraph> {
        self.expect(false)?;
        WeightedGraph::new(self.n, self.weighted())
    }

    /// Missing weights count as 1. An undirected file gives both arc directions.
    pub fn weighted_digraph(&self) -> Result<WeightedDigraph> {
        if self.directed {
            WeightedDigraph::new(self.n, self.weighted())
        } else {
            Ok(self.weighted_graph()?.doubled())
        }
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut s = format!("pd {} {}\n", g.n(), g.arcs().len());
    for &(u, v) in g.arcs() {
        writeln!(s, "a {} {}", u + 1, v + 1).unwrap();
    }
    s
}

pub fn write_weighted_graph(g: &WeightedGraph) -> String {
    let edges = g.edges();
    let mut s = format!("p {} {}\n", g.n(), edges.len());
    for (u, v, w) in edges {
        writeln!(s, "e {} {} {}", u + 1, v + 1, w).unwrap();
    }
    s
}

/// DIMACS CNF: `c` comment lines, a `p cnf n m` header, then signed literals
/// with each clause closed by `0`. Clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    let mut last = 1;
    for (line, l) in content_lines(text, None) {
        last = line;
        if l.starts_with('c') {
            continue;
        }
        if l.starts_with('%') {
            break;
        }
        if l.starts_with('p') {
            let tok: Vec<&str> = l.split_whitespace().collect();
            if header.is_some() || tok.len() != 4 || tok[1] != "cnf" {
                return Err(Error::parse(line, "header is `p cnf n m`"));
            }
            let n = tok[2].parse().map_err(|_| Error::parse(line, "bad variable count"))?;
            let m = tok[3].parse().map_err(|_| Error::parse(line, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::parse(line, "clause before `p cnf` header"));
        };
        for t in l.split_whitespace() {
            let x: i64 = t.parse().map_err(|_| Error::parse(line, format!("bad literal {t:?}")))?;
            if x == 0 {
                if cur.is_empty() {
                    return Err(Error::parse(line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut cur));
            } else if x.unsigned_abs() as usize > n {
                return Err(Error::parse(line, format!("variable {} above n = {n}", x.unsigned_abs())));
            } else {
                cur.push(x);
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(1, "missing `p cnf n m` header"))?;
    if !cur.is_empty() {
        return Err(Error::parse(last, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(Error::invalid(format!("header promises {m} clauses, file has {}", clauses.len())));
    }
    Cnf::from_signed(n, &clauses)
}

pub fn write_dimacs(f: &Cnf) -> String {
    let mut s = format!("p cnf {} {}\n", f.n(), f.clauses().len());
    for c in f.signed_clauses() {
        for x in c {
            write!(s, "{x} ").unwrap();
        }
        s.push_str("0\n");
    }
    s
}

/// Whitespace-separated integer grid, one row per line, `#` comments.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for (line, l) in content_lines(text, Some('#')) {
        let row = l
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| Error::parse(line, format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::parse(line, format!("row has {} entries, expected {first}", row.len())));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_matrix(m: &[Vec<i64>]) -> String {
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut s = String::new();
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// Whitespace- or comma-separated integers, `#` comments.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text, Some('#')) {
        for t in l.split(|c: char| c.is_whitespace() || matches!(c, ',' | '[' | ']')).filter(|t| !t.is_empty()) {
            out.push(t.parse().map_err(|_| Error::parse(line, format!("bad integer {t:?}")))?);
        }
    }
    Ok(out)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("values serialize");
    s.push('\n');
    s
}
