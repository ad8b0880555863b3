//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`.

use std::fmt::Write as _;
use std::path::Path;

use super::partition::parse_ints;
use super::Graph;
use crate::error::{Error, Result};

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * g.m() + 16);
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let nums = parse_ints(hline, header)?;
    let [n, m] = nums[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "header must be `n m`".into(),
        });
    };
    let n = n as usize;
    let mut seen = std::collections::HashMap::with_capacity(m as usize);
    let mut edges = Vec::with_capacity(m as usize);
    for (line, l) in lines {
        let nums = parse_ints(line, l)?;
        let [u, v] = nums[..] else {
            return Err(Error::Parse {
                line,
                msg: "expected `u v`".into(),
            });
        };
        let (u, v) = (u as usize, v as usize);
        let fail = |msg: String| Err(Error::Parse { line, msg });
        if u == v {
            return fail(format!("self-loop at vertex {u}"));
        }
        if u > v {
            return fail(format!("endpoints must satisfy u < v, got {u} {v}"));
        }
        if v >= n {
            return fail(format!("vertex {v} out of range for n = {n}"));
        }
        if let Some(first) = seen.insert((u, v), line) {
            return fail(format!("duplicate edge {u} {v} (first on line {first})"));
        }
        edges.push((u, v));
    }
    if edges.len() as u64 != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn write_edge_list(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    std::fs::write(path, format_edge_list(g))?;
    Ok(())
}
