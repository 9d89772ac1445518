//! Maximum independent sets by branch and bound.

use crate::graph::Multigraph;
use crate::vertex_set::VertexSet;

/// Size of a largest independent set. Any multiplicity counts as adjacency.
pub fn independence_number(g: &Multigraph) -> usize {
    maximum_independent_set(g).len()
}

/// One maximum independent set; ties resolve to the first found.
pub fn maximum_independent_set(g: &Multigraph) -> VertexSet {
    let n = g.vertex_count();
    let nbrs: Vec<VertexSet> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    let mut search = Search {
        nbrs: &nbrs,
        best: VertexSet::new(),
    };
    search.branch(VertexSet::full(n), VertexSet::new());
    search.best
}

struct Search<'a> {
    nbrs: &'a [VertexSet],
    best: VertexSet,
}

impl Search<'_> {
    fn branch(&mut self, candidates: VertexSet, chosen: VertexSet) {
        if chosen.len() + candidates.len() <= self.best.len() {
            return;
        }
        // degree within the remaining candidates drives the branching choice
        let mut pick = None;
        let mut pick_deg = 0;
        for v in &candidates {
            let d = self.nbrs[v].intersection(&candidates).len();
            if d <= 1 {
                // a vertex of degree at most one can always be taken
                let mut c = chosen.clone();
                c.insert(v);
                let rest = candidates
                    .difference(&self.nbrs[v])
                    .difference(&VertexSet::singleton(v));
                return self.branch(rest, c);
            }
            if pick.is_none() || d > pick_deg {
                pick = Some(v);
                pick_deg = d;
            }
        }
        let Some(v) = pick else {
            if chosen.len() > self.best.len() {
                self.best = chosen;
            }
            return;
        };
        let mut with_v = chosen.clone();
        with_v.insert(v);
        let rest = candidates
            .difference(&self.nbrs[v])
            .difference(&VertexSet::singleton(v));
        self.branch(rest, with_v);
        let mut without = candidates;
        without.remove(v);
        self.branch(without, chosen);
    }
}
