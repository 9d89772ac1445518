//! Divisors (chip configurations) and firing moves.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::vertex_set::VertexSet;

/// An integer chip count per vertex of a specific graph. Negative entries
/// are debt.
#[derive(Clone)]
pub struct Divisor {
    graph: Arc<Multigraph>,
    chips: Vec<i64>,
}

/// Net number of times each vertex fires.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiringScript {
    pub fire_count: Vec<i64>,
}

impl FiringScript {
    pub fn zero(n: usize) -> Self {
        FiringScript { fire_count: vec![0; n] }
    }

    /// Fires every vertex of `s` once.
    pub fn indicator(n: usize, s: &VertexSet) -> Self {
        FiringScript {
            fire_count: (0..n).map(|v| s.contains(v) as i64).collect(),
        }
    }
}

impl Divisor {
    pub fn new(graph: Arc<Multigraph>, chips: Vec<i64>) -> Result<Self> {
        if chips.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                got: chips.len(),
            });
        }
        // firing preserves the degree, so it only needs checking once
        chips
            .iter()
            .try_fold(0i64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow)?;
        Ok(Divisor { graph, chips })
    }

    pub fn zero(graph: Arc<Multigraph>) -> Self {
        let n = graph.vertex_count();
        Divisor {
            graph,
            chips: vec![0; n],
        }
    }

    /// `count` chips on vertex `v`, nothing elsewhere.
    pub fn point(graph: Arc<Multigraph>, v: usize, count: i64) -> Result<Self> {
        graph.check_vertex(v)?;
        let mut d = Divisor::zero(graph);
        d.chips[v] = count;
        Ok(d)
    }

    pub(crate) fn from_raw(graph: Arc<Multigraph>, chips: Vec<i64>) -> Self {
        debug_assert_eq!(chips.len(), graph.vertex_count());
        Divisor { graph, chips }
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    pub fn chips(&self) -> &[i64] {
        &self.chips
    }

    pub fn into_chips(self) -> Vec<i64> {
        self.chips
    }

    pub fn get(&self, v: usize) -> i64 {
        self.chips[v]
    }

    pub fn degree(&self) -> i64 {
        self.chips.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.chips.iter().all(|&c| c >= 0)
    }

    pub fn same_graph(&self, other: &Divisor) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph
    }

    fn check_same_graph(&self, other: &Divisor) -> Result<()> {
        if self.same_graph(other) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// Entrywise sum.
    pub fn plus(&self, other: &Divisor) -> Result<Divisor> {
        self.check_same_graph(other)?;
        let chips = self
            .chips
            .iter()
            .zip(&other.chips)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Divisor::new(self.graph.clone(), chips)
    }

    /// Entrywise difference.
    pub fn minus(&self, other: &Divisor) -> Result<Divisor> {
        self.check_same_graph(other)?;
        let chips = self
            .chips
            .iter()
            .zip(&other.chips)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Divisor::new(self.graph.clone(), chips)
    }

    /// `v` donates one chip along each incident edge.
    pub fn fire_vertex(&self, v: usize) -> Result<Divisor> {
        self.graph.check_vertex(v)?;
        self.fire_set(&VertexSet::singleton(v))
    }

    /// Fires every vertex of `s` once. Only edges leaving `s` move chips.
    pub fn fire_set(&self, s: &VertexSet) -> Result<Divisor> {
        self.graph.check_set(s)?;
        let mut chips = self.chips.clone();
        fire_set_times(&self.graph, &mut chips, s, 1)?;
        Ok(Divisor::from_raw(self.graph.clone(), chips))
    }

    /// `result(v) = d(v) - f(v) val(v) + sum_u f(u) mult(u, v)`.
    pub fn apply_script(&self, script: &FiringScript) -> Result<Divisor> {
        let n = self.graph.vertex_count();
        if script.fire_count.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: script.fire_count.len(),
            });
        }
        let mut chips = self.chips.clone();
        for v in 0..n {
            let f = script.fire_count[v];
            if f == 0 {
                continue;
            }
            for &(w, m) in self.graph.neighbors(v) {
                let moved = f.checked_mul(m as i64).ok_or(Error::Overflow)?;
                chips[v] = chips[v].checked_sub(moved).ok_or(Error::Overflow)?;
                chips[w] = chips[w].checked_add(moved).ok_or(Error::Overflow)?;
            }
        }
        Ok(Divisor::from_raw(self.graph.clone(), chips))
    }

    /// Whether some sequence of firings turns `self` into `other`. Decided by
    /// comparing reduced forms with respect to vertex 0.
    pub fn is_equivalent(&self, other: &Divisor) -> Result<bool> {
        self.check_same_graph(other)?;
        if self.degree() != other.degree() {
            return Ok(false);
        }
        let a = crate::dhar::q_reduce(self, 0)?;
        let b = crate::dhar::q_reduce(other, 0)?;
        Ok(a.chips == b.chips)
    }

    /// Zero-free rendering, e.g. `{v0: 3, v4: -1}`.
    pub fn pretty(&self) -> String {
        let entries: Vec<String> = self
            .chips
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, c)| match self.graph.labels() {
                Some(l) => format!("{}: {c}", l[v]),
                None => format!("v{v}: {c}"),
            })
            .collect();
        format!("{{{}}}", entries.join(", "))
    }

    pub fn to_json(&self) -> DivisorJson {
        DivisorJson {
            chips: self.chips.clone(),
        }
    }
}

/// `val(v) - 2` chips on each vertex.
pub fn canonical_divisor(graph: &Arc<Multigraph>) -> Divisor {
    let chips = graph.valences().iter().map(|&d| d as i64 - 2).collect();
    Divisor::from_raw(graph.clone(), chips)
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        self.chips == other.chips && self.same_graph(other)
    }
}

impl Eq for Divisor {}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor{:?}", self.chips)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Wire format: `{"chips": [c0, c1, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub chips: Vec<i64>,
}

impl DivisorJson {
    pub fn bind(self, graph: Arc<Multigraph>) -> Result<Divisor> {
        Divisor::new(graph, self.chips)
    }
}

/// Fires `s` a total of `times` times in place, with overflow checks.
pub(crate) fn fire_set_times(g: &Multigraph, chips: &mut [i64], s: &VertexSet, times: i64) -> Result<()> {
    for u in s {
        for &(w, m) in g.neighbors(u) {
            if s.contains(w) {
                continue;
            }
            let moved = times.checked_mul(m as i64).ok_or(Error::Overflow)?;
            chips[u] = chips[u].checked_sub(moved).ok_or(Error::Overflow)?;
            chips[w] = chips[w].checked_add(moved).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}
