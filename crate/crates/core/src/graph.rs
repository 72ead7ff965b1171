//! Undirected simple graphs with stable original node labels.
//!
//! Nodes carry two identities: a dense internal index in `0..N` used by every
//! algorithm, and an opaque string label preserved from the source data used
//! only for scoring. Indices are deliberately information-free; samplers
//! shuffle them so that positional order never encodes the ground truth.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Population statistics of a degree sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub mean: f64,
    pub variance: f64,
    pub max_degree: usize,
    pub n: usize,
}

/// An undirected simple graph: no self-loops, no parallel edges.
///
/// Adjacency lists are sorted by neighbor index and mirror each other
/// exactly: `j` appears in `adjacency[i]` with weight `w` iff `i` appears in
/// `adjacency[j]` with weight `w`. Unweighted graphs store weight 1.0 on
/// every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    index_of: HashMap<String, usize>,
    adj: Vec<Vec<(usize, f64)>>,
    edge_count: usize,
    weighted: bool,
}

impl Graph {
    /// Builds a graph over `labels` from index edges. Intended for
    /// generators and samplers that construct clean edge sets; self-loops
    /// and duplicates are rejected as data errors rather than sanitized.
    pub fn from_index_edges(
        labels: Vec<String>,
        edges: &[(usize, usize, f64)],
        weighted: bool,
    ) -> Result<Graph> {
        let n = labels.len();
        let mut index_of = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index_of.insert(l.clone(), i).is_some() {
                return Err(Error::Data(format!("duplicate node label {l:?}")));
            }
        }
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::Data(format!("edge ({u}, {v}) out of range for {n} nodes")));
            }
            if u == v {
                return Err(Error::Data(format!("self-loop on node {u}")));
            }
            if !weighted && w != 1.0 {
                return Err(Error::Data(format!("weight {w} on edge ({u}, {v}) of unweighted graph")));
            }
            if weighted && !(w > 0.0) {
                return Err(Error::Data(format!("non-positive weight {w} on edge ({u}, {v})")));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for (i, list) in adj.iter_mut().enumerate() {
            list.sort_unstable_by_key(|&(j, _)| j);
            if list.windows(2).any(|p| p[0].0 == p[1].0) {
                return Err(Error::Data(format!("parallel edge at node {i}")));
            }
        }
        Ok(Graph {
            labels,
            index_of,
            adj,
            edge_count: edges.len(),
            weighted,
        })
    }

    /// Convenience constructor for tests and small examples: unweighted,
    /// labels are whatever strings the edge list mentions, node order is
    /// first-appearance order.
    pub fn from_label_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(false);
        for (u, v) in edges {
            b.add_edge(u.as_ref(), v.as_ref(), 1.0)?;
        }
        let (g, _, _) = b.build();
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Unweighted neighbor count, also on weighted graphs.
    ///
    /// Panics if `i` is out of range.
    pub fn degree(&self, i: usize) -> usize {
        assert!(i < self.adj.len(), "node index {i} out of range (n = {})", self.adj.len());
        self.adj[i].len()
    }

    /// Sorted `(neighbor index, weight)` list of node `i`.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        assert!(i < self.adj.len(), "node index {i} out of range (n = {})", self.adj.len());
        &self.adj[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index_of.get(label).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(|s| s.as_str())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search_by_key(&j, |&(v, _)| v).is_ok()
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> Option<f64> {
        self.adj[i]
            .binary_search_by_key(&j, |&(v, _)| v)
            .ok()
            .map(|k| self.adj[i][k].1)
    }

    /// Edges in canonical order: `(u, v, w)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&(v, _)| u < v).map(move |&(v, w)| (u, v, w)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// Population mean and variance of the degree sequence.
    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.node_count();
        if n == 0 {
            return DegreeStats { mean: 0.0, variance: 0.0, max_degree: 0, n: 0 };
        }
        let mean = self.adj.iter().map(|l| l.len() as f64).sum::<f64>() / n as f64;
        let variance = self
            .adj
            .iter()
            .map(|l| {
                let d = l.len() as f64 - mean;
                d * d
            })
            .sum::<f64>()
            / n as f64;
        DegreeStats { mean, variance, max_degree: self.max_degree(), n }
    }

    /// Edge density `2|E| / (N (N-1))`; 0 for graphs with fewer than 2 nodes.
    pub fn density(&self) -> f64 {
        let n = self.node_count();
        if n < 2 {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / (n as f64 * (n as f64 - 1.0))
    }

    /// Watts-Strogatz average local clustering coefficient. Nodes of degree
    /// below 2 contribute 0.
    pub fn average_clustering(&self) -> f64 {
        let n = self.node_count();
        if n == 0 {
            return 0.0;
        }
        let mut total = 0.0;
        for i in 0..n {
            let nbrs = &self.adj[i];
            let d = nbrs.len();
            if d < 2 {
                continue;
            }
            let mut triangles = 0usize;
            for a in 0..d {
                for b in (a + 1)..d {
                    if self.has_edge(nbrs[a].0, nbrs[b].0) {
                        triangles += 1;
                    }
                }
            }
            total += 2.0 * triangles as f64 / (d as f64 * (d as f64 - 1.0));
        }
        total / n as f64
    }

    /// Induced subgraph on `nodes`; the output's node order is the order of
    /// `nodes`, labels travel with their node.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Graph> {
        let mut new_index = HashMap::with_capacity(nodes.len());
        for (new, &old) in nodes.iter().enumerate() {
            if old >= self.node_count() {
                return Err(Error::Param(format!("node index {old} out of range")));
            }
            if new_index.insert(old, new).is_some() {
                return Err(Error::Param(format!("node index {old} listed twice")));
            }
        }
        let labels: Vec<String> = nodes.iter().map(|&i| self.labels[i].clone()).collect();
        let mut edges = Vec::new();
        for (new_u, &old_u) in nodes.iter().enumerate() {
            for &(old_v, w) in &self.adj[old_u] {
                if let Some(&new_v) = new_index.get(&old_v) {
                    if new_u < new_v {
                        edges.push((new_u, new_v, w));
                    }
                }
            }
        }
        Graph::from_index_edges(labels, &edges, self.weighted)
    }

    /// Reorders node indices by `perm`, where `perm[old] = new`. Labels and
    /// edges travel with their node.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::Param(format!("permutation length {} != node count {n}", perm.len())));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::Param("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut labels = vec![String::new(); n];
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for old in 0..n {
            labels[perm[old]] = self.labels[old].clone();
            let mut list: Vec<(usize, f64)> =
                self.adj[old].iter().map(|&(v, w)| (perm[v], w)).collect();
            list.sort_unstable_by_key(|&(j, _)| j);
            adj[perm[old]] = list;
        }
        let index_of = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(Graph {
            labels,
            index_of,
            adj,
            edge_count: self.edge_count,
            weighted: self.weighted,
        })
    }

    /// Isomorphic copy under a uniform random permutation of the internal
    /// index order. Returns the permutation used (`perm[old] = new`).
    pub fn relabel_shuffle(&self, seed: u64) -> (Graph, Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..self.node_count()).collect();
        perm.shuffle(&mut rng);
        let g = self.permuted(&perm).expect("shuffle produced a valid permutation");
        (g, perm)
    }

    /// The same graph re-flagged as weighted, keeping its existing (unit)
    /// weights. Used to feed unweighted data to the weighted pipeline.
    pub fn as_weighted(&self) -> Graph {
        let mut g = self.clone();
        g.weighted = true;
        g
    }

    /// Writes the edge-list text format: `u v` or `u v w`, one edge per line.
    pub fn write_edge_list<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for (u, v, w) in self.edges() {
            if self.weighted {
                writeln!(out, "{} {} {}", self.labels[u], self.labels[v], w)?;
            } else {
                writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
            }
        }
        Ok(())
    }

    pub fn save_edge_list<P: AsRef<Path>>(&self, path: P) -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(File::create(path)?);
        self.write_edge_list(&mut f)
    }
}

/// Incremental construction with sanitization counters. Node order is
/// first-appearance order; duplicate edges collapse keeping the first
/// weight; self-loops are dropped but still record their node.
pub struct GraphBuilder {
    weighted: bool,
    labels: Vec<String>,
    index_of: HashMap<String, usize>,
    edges: HashMap<(usize, usize), f64>,
    edge_order: Vec<(usize, usize)>,
    self_loops_dropped: usize,
    duplicates_collapsed: usize,
}

impl GraphBuilder {
    pub fn new(weighted: bool) -> Self {
        GraphBuilder {
            weighted,
            labels: Vec::new(),
            index_of: HashMap::new(),
            edges: HashMap::new(),
            edge_order: Vec::new(),
            self_loops_dropped: 0,
            duplicates_collapsed: 0,
        }
    }

    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index_of.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index_of.insert(label.to_string(), i);
        i
    }

    pub fn add_edge(&mut self, u: &str, v: &str, w: f64) -> Result<()> {
        if self.weighted && !(w > 0.0) {
            return Err(Error::Data(format!("non-positive weight {w} on edge {u:?} -- {v:?}")));
        }
        let ui = self.add_node(u);
        let vi = self.add_node(v);
        if ui == vi {
            self.self_loops_dropped += 1;
            return Ok(());
        }
        let key = (ui.min(vi), ui.max(vi));
        if self.edges.contains_key(&key) {
            self.duplicates_collapsed += 1;
        } else {
            self.edges.insert(key, if self.weighted { w } else { 1.0 });
            self.edge_order.push(key);
        }
        Ok(())
    }

    /// Returns `(graph, self_loops_dropped, duplicates_collapsed)`.
    pub fn build(self) -> (Graph, usize, usize) {
        let edges: Vec<(usize, usize, f64)> =
            self.edge_order.iter().map(|&(u, v)| (u, v, self.edges[&(u, v)])).collect();
        let g = Graph::from_index_edges(self.labels, &edges, self.weighted)
            .expect("builder enforces simple-graph invariants");
        (g, self.self_loops_dropped, self.duplicates_collapsed)
    }
}

/// A parsed edge-list file plus sanitization counters.
#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

/// Parses an edge-list text file: one edge per line (`u v` or `u v w`),
/// whitespace- or comma-delimited, `#`-prefixed comment lines and blank
/// lines skipped. A fixed delimiter may be forced with `delimiter`.
///
/// In unweighted mode a third token is ignored (SNAP files often carry
/// timestamps there). In weighted mode a missing third token defaults to 1.0
/// and `w <= 0` is a data error.
pub fn load_edge_list<P: AsRef<Path>>(
    path: P,
    weighted: bool,
    delimiter: Option<char>,
) -> Result<LoadedGraph> {
    let reader = BufReader::new(File::open(path)?);
    parse_edge_list(reader, weighted, delimiter)
}

/// Same as [`load_edge_list`] but from any reader.
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    weighted: bool,
    delimiter: Option<char>,
) -> Result<LoadedGraph> {
    let mut b = GraphBuilder::new(weighted);
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = match delimiter {
            Some(c) => line.split(c).map(str::trim).filter(|t| !t.is_empty()).collect(),
            None => line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect(),
        };
        match tokens.len() {
            2 => b.add_edge(tokens[0], tokens[1], 1.0),
            3 => {
                let w = if weighted {
                    let w: f64 = tokens[2].parse().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("bad weight {:?}", tokens[2]),
                    })?;
                    if w.is_nan() {
                        return Err(Error::Parse { line: lineno, message: "NaN weight".into() });
                    }
                    w
                } else {
                    1.0
                };
                b.add_edge(tokens[0], tokens[1], w)
            }
            k => Err(Error::Parse {
                line: lineno,
                message: format!("expected 2 or 3 tokens, found {k}"),
            }),
        }
        .map_err(|e| match e {
            // attach the line number to weight-range violations
            Error::Data(msg) => Error::Data(format!("line {lineno}: {msg}")),
            other => other,
        })?;
    }
    let (graph, self_loops_dropped, duplicates_collapsed) = b.build();
    Ok(LoadedGraph { graph, self_loops_dropped, duplicates_collapsed })
}
