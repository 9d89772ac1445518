//! Enumeration of connected vertex subsets.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::vertex_set::VertexSet;

/// Every `k`-subset inducing a connected subgraph, each exactly once.
pub fn connected_subsets(g: &Multigraph, k: usize) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for_each_connected_subset(g, k, |s| {
        out.push(s.clone());
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// Visits every connected `k`-subset. Each set is grown from its minimum
/// vertex, only ever adding larger vertices drawn from the exclusive
/// neighbourhood of the newest member, which yields every set exactly once
/// without a seen-set.
pub fn for_each_connected_subset<B, F>(g: &Multigraph, k: usize, mut visit: F) -> Result<Option<B>>
where
    F: FnMut(&VertexSet) -> ControlFlow<B>,
{
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::SizeOutOfRange {
            value: k,
            min: 1,
            max: n,
        });
    }
    let nbrs: Vec<VertexSet> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    for root in 0..n {
        let sub = VertexSet::singleton(root);
        let ext: VertexSet = nbrs[root].iter().filter(|&w| w > root).collect();
        let closed = nbrs[root].union(&sub);
        if let ControlFlow::Break(b) = extend(&nbrs, k, root, sub, closed, ext, &mut visit) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

fn extend<B, F>(
    nbrs: &[VertexSet],
    k: usize,
    root: usize,
    sub: VertexSet,
    closed: VertexSet,
    mut ext: VertexSet,
    visit: &mut F,
) -> ControlFlow<B>
where
    F: FnMut(&VertexSet) -> ControlFlow<B>,
{
    if sub.len() == k {
        return visit(&sub);
    }
    while let Some(w) = ext.first() {
        ext.remove(w);
        // vertices adjacent to w but not to the current subset or its boundary
        let exclusive: VertexSet = nbrs[w].difference(&closed).iter().filter(|&u| u > root).collect();
        let mut next = sub.clone();
        next.insert(w);
        let next_closed = closed.union(&nbrs[w]);
        extend(nbrs, k, root, next, next_closed, ext.union(&exclusive), visit)?;
    }
    ControlFlow::Continue(())
}
