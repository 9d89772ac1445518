//! Minimum edge cuts between vertex sets via integer max-flow.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::vertex_set::VertexSet;

/// Minimum number of edges whose deletion disconnects every vertex of `a`
/// from every vertex of `b`.
pub fn min_edge_cut(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> Result<u64> {
    g.check_set(a)?;
    g.check_set(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.intersects(b) {
        return Err(Error::Overlapping);
    }
    Ok(CutNetwork::new(g).min_cut(a, b, u64::MAX))
}

/// Residual network reused across many source/sink pairs on the same graph.
///
/// Vertices of the source set are contracted into node `n`, the sink set
/// into node `n + 1`.
pub(crate) struct CutNetwork<'g> {
    g: &'g Multigraph,
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
}

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    cap: i64,
}

impl<'g> CutNetwork<'g> {
    pub(crate) fn new(g: &'g Multigraph) -> Self {
        CutNetwork {
            g,
            arcs: Vec::with_capacity(4 * g.edges().count()),
            head: vec![Vec::new(); g.vertex_count() + 2],
        }
    }

    /// Min cut value, or any value `>= cap` once the flow reaches `cap`.
    pub(crate) fn min_cut(&mut self, a: &VertexSet, b: &VertexSet, cap: u64) -> u64 {
        let n = self.g.vertex_count();
        let (s, t) = (n, n + 1);
        let node = |v: usize| {
            if a.contains(v) {
                s
            } else if b.contains(v) {
                t
            } else {
                v
            }
        };
        self.arcs.clear();
        for h in &mut self.head {
            h.clear();
        }
        for (u, v, m) in self.g.edges() {
            let (x, y) = (node(u), node(v));
            if x == y {
                continue;
            }
            // undirected edge: two arcs that are each other's residual
            let i = self.arcs.len();
            self.arcs.push(Arc { to: y, cap: m as i64 });
            self.arcs.push(Arc { to: x, cap: m as i64 });
            self.head[x].push(i);
            self.head[y].push(i + 1);
        }
        let mut flow = 0u64;
        let mut parent = vec![usize::MAX; n + 2];
        while flow < cap {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; n + 2];
            seen[s] = true;
            'bfs: while let Some(x) = queue.pop_front() {
                for &i in &self.head[x] {
                    let arc = self.arcs[i];
                    if arc.cap > 0 && !seen[arc.to] {
                        seen[arc.to] = true;
                        parent[arc.to] = i;
                        if arc.to == t {
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck = i64::MAX;
            let mut x = t;
            while x != s {
                let i = parent[x];
                bottleneck = bottleneck.min(self.arcs[i].cap);
                x = self.arcs[i ^ 1].to;
            }
            let mut x = t;
            while x != s {
                let i = parent[x];
                self.arcs[i].cap -= bottleneck;
                self.arcs[i ^ 1].cap += bottleneck;
                x = self.arcs[i ^ 1].to;
            }
            flow += bottleneck as u64;
        }
        flow
    }
}
