//! Finite simple graphs and the families used throughout the crate:
//! complete multipartite graphs, cycles, disjoint unions and lexicographic
//! blow-ups `G ∘ K̄ₐ`.
//!
//! Vertex ids are dense integers `0..n`. Structural facts about a graph (part
//! membership, union copy, blow-up layer) are kept as side metadata so that
//! the adjacency itself stays generic for the verifier and the oracle.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sizes of the parts of a complete multipartite graph, kept nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartiteSpec(Vec<usize>);

impl PartiteSpec {
    /// Builds a spec from part sizes in any order. Sizes are sorted.
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPartite("no parts".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidPartite("empty part".into()));
        }
        sizes
            .iter()
            .try_fold(0usize, |acc, &s| acc.checked_add(s))
            .ok_or(Error::Overflow("summing part sizes"))?;
        sizes.sort_unstable();
        Ok(PartiteSpec(sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts.
    pub fn parts(&self) -> usize {
        self.0.len()
    }

    /// Total number of vertices.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Some(a)` when every part has the same size `a`.
    pub fn common_size(&self) -> Option<usize> {
        let first = self.0[0];
        self.0.iter().all(|&s| s == first).then_some(first)
    }

    /// Part index of every vertex, in vertex order.
    pub fn assignment(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect()
    }

    /// Vertex id range of part `i`.
    pub fn part_range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.0[..i].iter().sum();
        start..start + self.0[i]
    }
}

impl TryFrom<Vec<usize>> for PartiteSpec {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        PartiteSpec::new(v)
    }
}

impl From<PartiteSpec> for Vec<usize> {
    fn from(s: PartiteSpec) -> Self {
        s.0
    }
}

impl fmt::Display for PartiteSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Part structure of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteMeta {
    pub spec: PartiteSpec,
    pub part_of: Vec<usize>,
}

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    partite: Option<PartiteMeta>,
    copy_size: Option<usize>,
    layer_size: Option<usize>,
}

impl Graph {
    /// Builds a graph from neighbor lists, checking symmetry and the absence
    /// of loops and repeated edges.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("repeated edge at vertex {u}")));
            }
            if let Some(&v) = nbrs.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGraph(format!("vertex {u} lists unknown neighbor {v}")));
            }
            if nbrs.binary_search(&u).is_ok() {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
        }
        for (u, nbrs) in adjacency.iter().enumerate() {
            for &v in nbrs {
                if adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::InvalidGraph(format!(
                        "edge {u}-{v} is not listed at vertex {v}"
                    )));
                }
            }
        }
        Ok(Graph {
            adjacency,
            partite: None,
            copy_size: None,
            layer_size: None,
        })
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adjacency.iter().all(|n| n.len() == d).then_some(d)
    }

    pub fn partite(&self) -> Option<&PartiteMeta> {
        self.partite.as_ref()
    }

    /// Index of the union copy containing `v`, for graphs built by
    /// [`disjoint_union`].
    pub fn copy_index(&self, v: usize) -> Option<usize> {
        self.copy_size.map(|s| v / s)
    }

    /// Index of the blow-up layer containing `v`, for graphs built by
    /// [`lex_blowup`] (possibly inside a union).
    pub fn layer(&self, v: usize) -> Option<usize> {
        self.layer_size.map(|s| v / s)
    }

    pub fn layer_size(&self) -> Option<usize> {
        self.layer_size
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// Reads the adjacency file format: one `id: n1 n2 …` line per vertex,
    /// 0-based, `#` comments and blank lines ignored.
    pub fn read_adjacency_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_adjacency(&text)
    }

    pub fn parse_adjacency(text: &str) -> Result<Self> {
        let mut rows: Vec<Option<Vec<usize>>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::AdjacencyFormat { line: line_no, msg };
            let (id, rest) = line
                .split_once(':')
                .ok_or_else(|| bad("expected `id: neighbors`".into()))?;
            let id: usize = id
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad vertex id `{}`", id.trim())))?;
            let nbrs = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad neighbor `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if rows.len() <= id {
                rows.resize(id + 1, None);
            }
            if rows[id].replace(nbrs).is_some() {
                return Err(bad(format!("vertex {id} listed twice")));
            }
        }
        let adjacency = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::InvalidGraph(format!("vertex {i} missing"))))
            .collect::<Result<Vec<_>>>()?;
        Graph::from_adjacency(adjacency)
    }

    /// Serializes to the adjacency file format.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.push_str(&u.to_string());
            out.push(':');
            for v in nbrs {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// The complete multipartite graph whose parts have the given sizes. Part
/// `i` occupies a contiguous id range, parts in spec order.
pub fn build_complete_multipartite(spec: &PartiteSpec) -> Graph {
    let part_of = spec.assignment();
    let n = part_of.len();
    let adjacency = (0..n)
        .map(|u| (0..n).filter(|&v| part_of[v] != part_of[u]).collect())
        .collect();
    Graph {
        adjacency,
        partite: Some(PartiteMeta {
            spec: spec.clone(),
            part_of,
        }),
        copy_size: None,
        layer_size: None,
    }
}

/// The cycle `C_b`.
pub fn build_cycle(b: usize) -> Result<Graph> {
    if b < 3 {
        return Err(Error::domain("cycle", format!("length {b} < 3")));
    }
    let adjacency = (0..b)
        .map(|i| {
            let mut n = vec![(i + 1) % b, (i + b - 1) % b];
            n.sort_unstable();
            n
        })
        .collect();
    Ok(Graph {
        adjacency,
        partite: None,
        copy_size: None,
        layer_size: None,
    })
}

/// `m` disjoint copies of `g`; copy `k` occupies ids `k·|V(g)|..`.
pub fn disjoint_union(m: usize, g: &Graph) -> Result<Graph> {
    if m == 0 {
        return Err(Error::domain("disjoint union", "zero copies"));
    }
    if m == 1 {
        return Ok(g.clone());
    }
    let n = g.order();
    n.checked_mul(m).ok_or(Error::Overflow("sizing a union"))?;
    let adjacency = (0..m)
        .flat_map(|k| {
            g.adjacency
                .iter()
                .map(move |nbrs| nbrs.iter().map(|&v| v + k * n).collect())
        })
        .collect();
    Ok(Graph {
        adjacency,
        partite: None,
        copy_size: Some(n),
        layer_size: g.layer_size,
    })
}

/// The lexicographic product `g ∘ K̄ₐ`: vertex `(u, i)` gets id `u·a + i`,
/// and the `a` vertices replacing `u` form layer `u`.
pub fn lex_blowup(g: &Graph, a: usize) -> Result<Graph> {
    if a == 0 {
        return Err(Error::domain("lexicographic blow-up", "empty second factor"));
    }
    g.order()
        .checked_mul(a)
        .ok_or(Error::Overflow("sizing a blow-up"))?;
    let adjacency = g
        .adjacency
        .iter()
        .flat_map(|nbrs| {
            let row: Vec<usize> = nbrs
                .iter()
                .flat_map(|&v| (0..a).map(move |j| v * a + j))
                .collect();
            std::iter::repeat_n(row, a)
        })
        .collect();
    Ok(Graph {
        adjacency,
        partite: None,
        copy_size: None,
        layer_size: Some(a),
    })
}
