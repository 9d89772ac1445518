//! Undirected loopless multigraphs.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// An undirected multigraph without loops on the vertices `0..n`.
///
/// The multiplicity map is the source of truth. Adjacency lists and valences
/// are derived from it at construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    multiplicity: BTreeMap<(usize, usize), u32>,
    labels: Option<Vec<String>>,
    adjacency: Vec<Vec<(usize, u32)>>,
    valence: Vec<u64>,
}

impl Multigraph {
    /// Builds a graph from an edge list. Repeated pairs add multiplicity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut multiplicity = BTreeMap::new();
        for &(u, v) in edges {
            check_pair(n, u, v)?;
            *multiplicity.entry(ordered(u, v)).or_insert(0) += 1;
        }
        Self::from_multiplicities(n, multiplicity)
    }

    /// Builds a graph from `(u, v, multiplicity)` triples.
    pub fn from_weighted_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut multiplicity = BTreeMap::new();
        for &(u, v, m) in edges {
            check_pair(n, u, v)?;
            *multiplicity.entry(ordered(u, v)).or_insert(0) += m;
        }
        Self::from_multiplicities(n, multiplicity)
    }

    fn from_multiplicities(n: usize, mut multiplicity: BTreeMap<(usize, usize), u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        multiplicity.retain(|_, m| *m > 0);
        let mut adjacency = vec![Vec::new(); n];
        let mut valence = vec![0u64; n];
        for (&(u, v), &m) in &multiplicity {
            adjacency[u].push((v, m));
            adjacency[v].push((u, m));
            valence[u] += m as u64;
            valence[v] += m as u64;
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        Ok(Multigraph {
            n,
            multiplicity,
            labels: None,
            adjacency,
            valence,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.multiplicity.values().map(|&m| m as u64).sum()
    }

    /// Edge multiplicity between `u` and `v`; zero on the diagonal.
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        if u == v {
            return 0;
        }
        self.multiplicity.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    /// Distinct adjacent pairs `(u, v, m)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.multiplicity.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Neighbours of `v` with the multiplicity of the joining edge.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.adjacency[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.n,
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.bound() > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: s.bound() - 1,
                count: self.n,
            });
        }
        Ok(())
    }

    pub fn valence(&self, v: usize) -> Result<u64> {
        self.check_vertex(v)?;
        Ok(self.valence[v])
    }

    /// Valences of every vertex, indexed by vertex.
    #[inline]
    pub fn valences(&self) -> &[u64] {
        &self.valence
    }

    pub fn min_degree(&self) -> u64 {
        self.valence.iter().copied().min().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity.values().all(|&m| m == 1)
    }

    /// `Some(k)` when every vertex has valence `k`.
    pub fn regular_degree(&self) -> Option<u64> {
        let k = self.valence[0];
        self.valence.iter().all(|&d| d == k).then_some(k)
    }

    /// The cyclomatic number `|E| - |V| + 1`.
    pub fn genus(&self) -> Result<u64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edge_count() + 1 - self.n as u64)
    }

    pub fn is_connected(&self) -> bool {
        self.is_set_connected(&VertexSet::full(self.n))
    }

    /// Whether the subgraph induced by `s` is connected. The empty set is not.
    pub fn is_set_connected(&self, s: &VertexSet) -> bool {
        let Some(start) = s.first() else {
            return false;
        };
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(w, _) in self.neighbors(u) {
                if s.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == s.len()
    }

    /// Induced subgraph on `s`, relabelled to `0..|s|` in increasing order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Multigraph> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let index: BTreeMap<usize, usize> = s.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let edges: Vec<_> = self
            .edges()
            .filter(|(u, v, _)| s.contains(*u) && s.contains(*v))
            .map(|(u, v, m)| (index[&u], index[&v], m))
            .collect();
        Multigraph::from_weighted_edges(s.len(), &edges)
    }

    /// Edges (with multiplicity) with both endpoints in `s`.
    pub fn internal_edges(&self, s: &VertexSet) -> u64 {
        s.iter()
            .flat_map(|u| self.neighbors(u).iter().map(move |&(w, m)| (u, w, m)))
            .filter(|&(u, w, _)| u < w && s.contains(w))
            .map(|(_, _, m)| m as u64)
            .sum()
    }

    /// Edges with exactly one endpoint in `s`, without precondition checks.
    pub fn boundary_size(&self, s: &VertexSet) -> u64 {
        s.iter()
            .flat_map(|u| self.neighbors(u).iter())
            .filter(|(w, _)| !s.contains(*w))
            .map(|&(_, m)| m as u64)
            .sum()
    }

    /// Number of edges leaving a nonempty proper subset `s`.
    pub fn outdegree(&self, s: &VertexSet) -> Result<u64> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        if s.len() == self.n {
            return Err(Error::FullSet);
        }
        Ok(self.boundary_size(s))
    }

    /// Breadth-first distances from `source`; `usize::MAX` marks unreachable.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Underlying simple graph (every multiplicity clamped to one).
    pub fn simplified(&self) -> Multigraph {
        let edges: Vec<_> = self.edges().map(|(u, v, _)| (u, v)).collect();
        Multigraph::from_edges(self.n, &edges).expect("edges already validated")
    }

    pub fn to_json(&self) -> GraphJson {
        let mut edges = Vec::new();
        for (u, v, m) in self.edges() {
            for _ in 0..m {
                edges.push([u, v]);
            }
        }
        GraphJson {
            vertices: self.n,
            edges,
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let edges: Vec<_> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Multigraph::from_edges(json.vertices, &edges)?;
        match &json.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }

    /// Graphviz rendering, one line per parallel edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match &self.labels {
                Some(l) => out.push_str(&format!("  {v} [label=\"{}\"];\n", l[v].replace('"', "'"))),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for (u, v, m) in self.edges() {
            for _ in 0..m {
                out.push_str(&format!("  {u} -- {v};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Wire format: `{"vertices": n, "edges": [[u, v], ...]}`; repeated pairs
/// encode multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Serialize for Multigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        Multigraph::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[inline]
fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    for w in [u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, count: n });
        }
    }
    if u == v {
        return Err(Error::Loop(u));
    }
    Ok(())
}
