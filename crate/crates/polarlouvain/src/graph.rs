//! Undirected weighted graphs: CSV ingestion, component analysis,
//! partition aggregation, and DOT / node-link JSON export.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::Serialize;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Symmetric nonnegative weight matrix with zero diagonal, plus per-node
/// self-weights accumulated by partition aggregation.
///
/// Self-weights hold intra-community mass (unordered pair total) separately
/// from the adjacency, and count twice toward a node's strength so the grand
/// total `2m` survives aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMatrix {
    adj: SquareMatrix,
    self_weight: Vec<f64>,
    strengths: Vec<f64>,
    total_weight: f64,
}

impl WeightedMatrix {
    /// Wraps an adjacency matrix, checking the structural invariants.
    pub fn new(adj: SquareMatrix, self_weight: Vec<f64>) -> Self {
        let n = adj.n();
        assert_eq!(self_weight.len(), n, "self-weight length mismatch");
        for (i, &sw) in self_weight.iter().enumerate() {
            assert_eq!(adj.get(i, i), 0.0, "diagonal must be zero at {i}");
            assert!(sw >= 0.0, "negative self-weight at {i}");
            for j in (i + 1)..n {
                let w = adj.get(i, j);
                assert!(w >= 0.0, "negative weight at ({i},{j})");
                assert_eq!(w, adj.get(j, i), "asymmetric at ({i},{j})");
            }
        }
        let strengths: Vec<f64> = (0..n)
            .map(|i| adj.row_sum(i) + 2.0 * self_weight[i])
            .collect();
        let total_weight = strengths.iter().sum::<f64>() / 2.0;
        WeightedMatrix {
            adj,
            self_weight,
            strengths,
            total_weight,
        }
    }

    pub fn from_adjacency(adj: SquareMatrix) -> Self {
        let n = adj.n();
        WeightedMatrix::new(adj, vec![0.0; n])
    }

    /// Builds from `(u, v, w)` triples, accumulating duplicates.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut adj = SquareMatrix::zeros(n);
        for &(u, v, w) in edges {
            assert_ne!(u, v, "self-loop in edge list");
            adj.set(u, v, adj.get(u, v) + w);
            adj.set(v, u, adj.get(v, u) + w);
        }
        WeightedMatrix::from_adjacency(adj)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.n()
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adj.get(i, j)
    }

    #[inline]
    pub fn self_weight(&self, i: usize) -> f64 {
        self.self_weight[i]
    }

    /// Node strength `k_i`: adjacency row sum plus twice the self-weight.
    #[inline]
    pub fn strength(&self, i: usize) -> f64 {
        self.strengths[i]
    }

    pub fn strengths(&self) -> &[f64] {
        &self.strengths
    }

    /// Total weight `m`, with `2m` equal to the sum of all strengths.
    #[inline]
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn adjacency(&self) -> &SquareMatrix {
        &self.adj
    }

    /// Neighbors of `i`: nodes joined by positive weight, ascending.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row(i).iter().enumerate().filter_map(
            |(j, &w)| {
                if w > 0.0 {
                    Some(j)
                } else {
                    None
                }
            },
        )
    }

    /// Count of unordered node pairs with positive weight.
    pub fn edge_count(&self) -> usize {
        let n = self.n();
        (0..n)
            .map(|i| ((i + 1)..n).filter(|&j| self.weight(i, j) > 0.0).count())
            .sum()
    }

    /// Collapses each community of `p` into a single node. Inter-community
    /// weights add up; intra-community mass (including prior self-weights)
    /// becomes the super-node's self-weight, preserving `2m`.
    pub fn aggregate(&self, p: &Partition) -> WeightedMatrix {
        assert_eq!(p.len(), self.n(), "partition does not cover the matrix");
        let nc = p.community_count();
        let mut adj = SquareMatrix::zeros(nc);
        let mut self_weight = vec![0.0; nc];
        for i in 0..self.n() {
            let ci = p.community_of(i);
            self_weight[ci] += self.self_weight[i];
            for j in (i + 1)..self.n() {
                let w = self.adj.get(i, j);
                if w == 0.0 {
                    continue;
                }
                let cj = p.community_of(j);
                if ci == cj {
                    self_weight[ci] += w;
                } else {
                    adj.set(ci, cj, adj.get(ci, cj) + w);
                    adj.set(cj, ci, adj.get(cj, ci) + w);
                }
            }
        }
        WeightedMatrix::new(adj, self_weight)
    }

    /// Connected components over positive weights, largest first; equally
    /// sized components are ordered by their smallest node index.
    pub fn components(&self) -> ComponentDecomposition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        ComponentDecomposition { components }
    }

    /// Induced sub-matrix on `nodes` (given ascending).
    pub fn induced(&self, nodes: &[usize]) -> WeightedMatrix {
        let mut adj = SquareMatrix::zeros(nodes.len());
        for (a, &i) in nodes.iter().enumerate() {
            for (b, &j) in nodes.iter().enumerate() {
                if a != b {
                    adj.set(a, b, self.adj.get(i, j));
                }
            }
        }
        let self_weight = nodes.iter().map(|&i| self.self_weight[i]).collect();
        WeightedMatrix::new(adj, self_weight)
    }

    /// Replaces every positive weight with 1.
    pub fn binarized(&self) -> WeightedMatrix {
        let n = self.n();
        let mut adj = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if self.adj.get(i, j) > 0.0 {
                    adj.set(i, j, 1.0);
                }
            }
        }
        WeightedMatrix::new(adj, self.self_weight.clone())
    }
}

/// Node sets of the connected components, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDecomposition {
    pub components: Vec<Vec<usize>>,
}

impl ComponentDecomposition {
    pub fn largest(&self) -> &[usize] {
        &self.components[0]
    }
}

/// Undirected weighted graph with opaque node labels.
///
/// Immutable after construction; node indices follow first appearance in
/// the input so permutation-seeded runs replay exactly.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    matrix: WeightedMatrix,
}

/// Ingestion switches for [`load_edge_list`].
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Accumulate `(i,j)` and `(j,i)` rows into one undirected weight
    /// (retweet-style directed input). When off, a repeated unordered pair
    /// is an error.
    pub collapse_directed: bool,
    /// After accumulation, replace every positive weight with 1.
    pub binarize: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            collapse_directed: true,
            binarize: false,
        }
    }
}

/// Loads the edge CSV format: header `source,target[,weight]`, `#` comments
/// skipped, weight defaulting to 1.
pub fn load_edge_list(path: &Path, options: LoadOptions) -> Result<WeightedGraph> {
    let file = std::fs::File::open(path)?;
    load_edge_list_from_reader(file, options)
}

pub fn load_edge_list_from_reader<R: io::Read>(
    reader: R,
    options: LoadOptions,
) -> Result<WeightedGraph> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| csv_error(&e))?
        .iter()
        .map(str::to_owned)
        .collect::<Vec<_>>();
    let has_weight = match headers.as_slice() {
        [s, t] if s == "source" && t == "target" => false,
        [s, t, w] if s == "source" && t == "target" && w == "weight" => true,
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header source,target[,weight], got {headers:?}"),
            })
        }
    };

    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut weights: HashMap<(usize, usize), f64> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();

    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(&e))?;
        let line = record.position().map_or(0, |p| p.line());
        let source = record.get(0).unwrap_or("");
        let target = record.get(1).unwrap_or("");
        if source.is_empty() || target.is_empty() {
            return Err(Error::Parse {
                line,
                msg: "empty node label".into(),
            });
        }
        let weight = if has_weight {
            let raw = record.get(2).unwrap_or("");
            if raw.is_empty() {
                1.0
            } else {
                let w: f64 = raw.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad weight {raw:?}"),
                })?;
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::Parse {
                        line,
                        msg: format!("weight must be finite and >= 0, got {raw}"),
                    });
                }
                w
            }
        } else {
            1.0
        };
        if source == target {
            return Err(Error::SelfLoop {
                line,
                label: source.to_owned(),
            });
        }
        let mut intern = |label: &str| -> usize {
            *index.entry(label.to_owned()).or_insert_with(|| {
                labels.push(label.to_owned());
                labels.len() - 1
            })
        };
        let u = intern(source);
        let v = intern(target);
        let key = (u.min(v), u.max(v));
        match weights.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                if !options.collapse_directed {
                    return Err(Error::DuplicateEdge {
                        line,
                        a: source.to_owned(),
                        b: target.to_owned(),
                    });
                }
                *e.get_mut() += weight;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(weight);
                order.push(key);
            }
        }
    }

    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut adj = SquareMatrix::zeros(labels.len());
    for &(u, v) in &order {
        let w = if options.binarize {
            if weights[&(u, v)] > 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            weights[&(u, v)]
        };
        adj.set(u, v, w);
        adj.set(v, u, w);
    }

    Ok(WeightedGraph {
        labels,
        index,
        matrix: WeightedMatrix::from_adjacency(adj),
    })
}

fn csv_error(e: &csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Parse {
        line,
        msg: e.to_string(),
    }
}

impl WeightedGraph {
    pub fn from_parts(labels: Vec<String>, matrix: WeightedMatrix) -> Self {
        assert_eq!(labels.len(), matrix.n(), "label count mismatch");
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect::<HashMap<_, _>>();
        assert_eq!(index.len(), labels.len(), "duplicate node labels");
        WeightedGraph {
            labels,
            index,
            matrix,
        }
    }

    /// Test/demo constructor with numeric labels `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        WeightedGraph::from_parts(labels, WeightedMatrix::from_edges(n, edges))
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.matrix.n()
    }

    pub fn edge_count(&self) -> usize {
        self.matrix.edge_count()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn matrix(&self) -> &WeightedMatrix {
        &self.matrix
    }

    pub fn components(&self) -> ComponentDecomposition {
        self.matrix.components()
    }

    /// Induced subgraph on the largest connected component (ties broken by
    /// the component containing the smallest node index). Identity on
    /// connected graphs.
    pub fn largest_component(&self) -> WeightedGraph {
        let decomposition = self.components();
        let nodes = decomposition.largest();
        if nodes.len() == self.node_count() {
            return self.clone();
        }
        self.induced(nodes)
    }

    /// Induced subgraph on `nodes` (ascending indices keep label order).
    pub fn induced(&self, nodes: &[usize]) -> WeightedGraph {
        let labels = nodes.iter().map(|&i| self.labels[i].clone()).collect();
        WeightedGraph::from_parts(labels, self.matrix.induced(nodes))
    }

    /// One node per community of `p`; see [`WeightedMatrix::aggregate`].
    /// Super-node labels are the compacted community ids.
    pub fn aggregate_by_partition(&self, p: &Partition) -> WeightedGraph {
        assert_eq!(p.len(), self.node_count(), "partition does not cover graph");
        let matrix = self.matrix.aggregate(p);
        let labels = (0..p.community_count()).map(|c| c.to_string()).collect();
        WeightedGraph::from_parts(labels, matrix)
    }

    pub fn binarized(&self) -> WeightedGraph {
        WeightedGraph::from_parts(self.labels.clone(), self.matrix.binarized())
    }

    /// DOT rendering, nodes by index and edges by `(min,max)` endpoints.
    /// With a partition, nodes get a fill color per community.
    pub fn to_dot(&self, partition: Option<&Partition>) -> String {
        const PALETTE: &[&str] = &[
            "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3",
            "#8c8c8c", "#ccb974", "#64b5cd", "#5a9bd4", "#e377c2",
        ];
        let mut out = String::from("graph {\n");
        for i in 0..self.node_count() {
            let _ = match partition {
                Some(p) => {
                    let c = p.community_of(i);
                    writeln!(
                        out,
                        "  n{} [label=\"{}\", community={}, style=filled, fillcolor=\"{}\"];",
                        i,
                        self.labels[i],
                        c,
                        PALETTE[c % PALETTE.len()]
                    )
                }
                None => writeln!(out, "  n{} [label=\"{}\"];", i, self.labels[i]),
            };
        }
        for i in 0..self.node_count() {
            for j in (i + 1)..self.node_count() {
                let w = self.matrix.weight(i, j);
                if w > 0.0 {
                    let _ = writeln!(out, "  n{i} -- n{j} [weight={w}];");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Node-link JSON with stable ordering: nodes by index, links by
    /// `(min,max)` endpoint pair.
    pub fn to_node_link_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Node<'a> {
            id: &'a str,
        }
        #[derive(Serialize)]
        struct Link<'a> {
            source: &'a str,
            target: &'a str,
            weight: f64,
        }
        let nodes: Vec<Node> = self.labels.iter().map(|l| Node { id: l }).collect();
        let mut links = Vec::new();
        for i in 0..self.node_count() {
            for j in (i + 1)..self.node_count() {
                let w = self.matrix.weight(i, j);
                if w > 0.0 {
                    links.push(Link {
                        source: &self.labels[i],
                        target: &self.labels[j],
                        weight: w,
                    });
                }
            }
        }
        serde_json::json!({
            "directed": false,
            "nodes": nodes,
            "links": links,
        })
    }
}
