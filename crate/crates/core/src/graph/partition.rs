use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Assignment of every vertex to one of `k` non-empty parts with ids
/// `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    assign: Vec<u32>,
    k: usize,
}

impl Partition {
    /// Validates that ids are contiguous: every id in `0..k` is used, where
    /// `k - 1` is the largest id present.
    pub fn new(assign: Vec<u32>) -> Result<Self> {
        if assign.is_empty() {
            return Err(Error::InvalidPartition("no vertices".into()));
        }
        let k = *assign.iter().max().unwrap() as usize + 1;
        let mut used = vec![false; k];
        for &a in &assign {
            used[a as usize] = true;
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidPartition(format!("part {missing} is empty")));
        }
        Ok(Partition { assign, k })
    }

    /// Relabels arbitrary labels to contiguous ids in order of first
    /// appearance.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("no vertices".into()));
        }
        let mut ids = std::collections::HashMap::new();
        let assign = labels
            .iter()
            .map(|l| {
                let next = ids.len() as u32;
                *ids.entry(*l).or_insert(next)
            })
            .collect();
        let k = ids.len();
        Ok(Partition { assign, k })
    }

    /// Builds a partition from explicit parts; they must cover `0..n` exactly
    /// once. Part ids follow the order given.
    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut assign = vec![u32::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!("part {i} is empty")));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if assign[v] != u32::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in two parts"
                    )));
                }
                assign[v] = i as u32;
            }
        }
        if let Some(v) = assign.iter().position(|&a| a == u32::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is unassigned")));
        }
        Ok(Partition {
            assign,
            k: parts.len(),
        })
    }

    /// The one-part partition.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        Partition {
            assign: vec![0; n],
            k: 1,
        }
    }

    pub fn singletons(n: usize) -> Self {
        assert!(n >= 1);
        Partition {
            assign: (0..n as u32).collect(),
            k: n,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.assign.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn part_of(&self, v: usize) -> usize {
        self.assign[v] as usize
    }

    #[inline]
    pub fn assignment(&self) -> &[u32] {
        &self.assign
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &a) in self.assign.iter().enumerate() {
            parts[a as usize].push(v);
        }
        parts
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &a in &self.assign {
            sizes[a as usize] += 1;
        }
        sizes
    }

    /// Same partition with ids renumbered by first appearance.
    pub fn canonical(&self) -> Partition {
        Partition::from_labels(&self.assign).expect("non-empty")
    }

    /// Partition of the relabelled vertex set where `v` becomes `perm[v]`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Partition {
        let mut assign = vec![0u32; self.n()];
        for (v, &a) in self.assign.iter().enumerate() {
            assign[perm[v]] = a;
        }
        Partition { assign, k: self.k }
    }
}

/// Text form: `n k` on the first line, then one part id per vertex.
pub fn format_partition(p: &Partition) -> String {
    let mut out = String::with_capacity(4 * p.n() + 16);
    writeln!(out, "{} {}", p.n(), p.k()).unwrap();
    for &a in p.assignment() {
        writeln!(out, "{a}").unwrap();
    }
    out
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let nums = parse_ints(line, header)?;
    let [n, k] = nums[..] else {
        return Err(Error::Parse {
            line,
            msg: "header must be `n k`".into(),
        });
    };
    let mut assign = Vec::with_capacity(n as usize);
    for (line, l) in lines {
        let ids = parse_ints(line, l)?;
        let [id] = ids[..] else {
            return Err(Error::Parse {
                line,
                msg: "expected one part id".into(),
            });
        };
        if id >= k {
            return Err(Error::Parse {
                line,
                msg: format!("part id {id} not below k = {k}"),
            });
        }
        assign.push(id as u32);
    }
    if assign.len() as u64 != n {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares {n} vertices, found {}", assign.len()),
        });
    }
    let p = Partition::new(assign)?;
    if p.k() as u64 != k {
        return Err(Error::InvalidPartition(format!(
            "header declares {k} parts, found {}",
            p.k()
        )));
    }
    Ok(p)
}

pub(crate) fn parse_ints(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<u64>().map_err(|_| Error::Parse {
                line,
                msg: format!("not a non-negative integer: {t:?}"),
            })
        })
        .collect()
}

pub fn read_partition(path: impl AsRef<Path>) -> Result<Partition> {
    parse_partition(&std::fs::read_to_string(path)?)
}

pub fn write_partition(path: impl AsRef<Path>, p: &Partition) -> Result<()> {
    std::fs::write(path, format_partition(p))?;
    Ok(())
}
