//! Text formats: graph files, measurement setups, CSV helpers.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduction::{Axis, PauliSetup};
use crate::tags::{AttributedGraph, CliffordTag};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses `N`, then `i j` edge lines and optional `tag i TAG` lines.
/// `#` starts a comment. Line numbers in errors are 1-based.
pub fn parse_graph(text: &str) -> Result<AttributedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines.next().ok_or_else(|| perr(1, "empty graph file"))?;
    let n: usize = first.parse().map_err(|_| perr(ln, format!("expected node count, got {first:?}")))?;
    let mut g = Graph::empty(n);
    let mut tags = vec![CliffordTag::I; n];
    let node = |ln: usize, s: &str| -> Result<usize> {
        let i: usize = s.parse().map_err(|_| perr(ln, format!("bad node {s:?}")))?;
        if i >= n {
            return Err(perr(ln, format!("node {i} out of range (N = {n})")));
        }
        Ok(i)
    };
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["tag", i, t] => {
                let i = node(ln, i)?;
                tags[i] = CliffordTag::parse(t).ok_or_else(|| perr(ln, format!("unknown tag {t:?}")))?;
            }
            [i, j] => {
                let (i, j) = (node(ln, i)?, node(ln, j)?);
                if i == j {
                    return Err(perr(ln, format!("self-loop at {i}")));
                }
                g.set_edge(i, j, true);
            }
            _ => return Err(perr(ln, format!("cannot parse {line:?}"))),
        }
    }
    AttributedGraph::with_tags(g, tags)
}

pub fn write_graph(ag: &AttributedGraph) -> String {
    let mut out = format!("{}\n", ag.n_nodes());
    for (i, j) in ag.graph.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    for (i, t) in ag.tags.iter().enumerate() {
        if *t != CliffordTag::I {
            out.push_str(&format!("tag {i} {t}\n"));
        }
    }
    out
}

/// Parses `pms: 3:X 4:Y ...`; the `pms:` prefix is optional.
pub fn parse_pms(text: &str, n: usize) -> Result<PauliSetup> {
    let body = text.trim().strip_prefix("pms:").unwrap_or(text.trim());
    let mut assignments = Vec::new();
    for tok in body.split_whitespace() {
        let (i, a) = tok
            .split_once(':')
            .ok_or_else(|| perr(1, format!("expected node:axis, got {tok:?}")))?;
        let i: usize = i.parse().map_err(|_| perr(1, format!("bad node {i:?}")))?;
        let a = match a {
            "X" | "x" | "1" => Axis::X,
            "Y" | "y" | "2" => Axis::Y,
            "Z" | "z" | "3" => Axis::Z,
            _ => return Err(perr(1, format!("bad axis {a:?}"))),
        };
        if i >= n {
            return Err(perr(1, format!("node {i} out of range (N = {n})")));
        }
        assignments.push((i, a));
    }
    PauliSetup::new(n, &assignments)
}

/// Nine significant digits, as used in every CSV column.
pub fn fmt9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = 8 - x.abs().log10().floor() as i32;
    if (0..=17).contains(&digits) {
        format!("{:.*}", digits as usize, x)
    } else {
        format!("{x:.8e}")
    }
}
