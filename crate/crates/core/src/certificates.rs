//! Lower-bound certificates (scrambles, brambles) and tree-cut
//! decompositions.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flow::CutNetwork;
use crate::graph::Multigraph;
use crate::subsets::{connected_subsets, for_each_connected_subset};
use crate::vertex_set::VertexSet;

/// A size that may be unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(x) => Some(x),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(x) => write!(f, "{x}"),
            Order::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(x) => s.serialize_u64(*x),
            Order::Infinite => s.serialize_str("infinity"),
        }
    }
}

fn check_family(g: &Multigraph, sets: &[VertexSet], what: &str) -> Result<()> {
    if sets.is_empty() {
        return Err(Error::InvalidCertificate(format!("a {what} needs at least one set")));
    }
    for (i, s) in sets.iter().enumerate() {
        g.check_set(s)?;
        if s.is_empty() {
            return Err(Error::InvalidCertificate(format!("set {i} is empty")));
        }
        if !g.is_set_connected(s) {
            return Err(Error::InvalidCertificate(format!("set {i} {s:?} is not connected")));
        }
    }
    let mut sorted: Vec<&VertexSet> = sets.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidCertificate(format!("duplicate set {:?}", w[0])));
    }
    Ok(())
}

/// Connected vertex sets ("eggs") with no touching requirement.
#[derive(Clone, Debug)]
pub struct Scramble {
    graph: Arc<Multigraph>,
    eggs: Vec<VertexSet>,
}

impl Scramble {
    pub fn new(graph: Arc<Multigraph>, eggs: Vec<VertexSet>) -> Result<Self> {
        check_family(&graph, &eggs, "scramble")?;
        Ok(Scramble { graph, eggs })
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    pub fn eggs(&self) -> &[VertexSet] {
        &self.eggs
    }
}

/// Every connected `k`-subset as an egg.
pub fn uniform_scramble(g: &Arc<Multigraph>, k: usize) -> Result<Scramble> {
    let eggs = connected_subsets(g, k)?;
    Ok(Scramble { graph: g.clone(), eggs })
}

/// Connected, pairwise touching vertex sets.
#[derive(Clone, Debug)]
pub struct Bramble {
    graph: Arc<Multigraph>,
    sets: Vec<VertexSet>,
}

impl Bramble {
    pub fn new(graph: Arc<Multigraph>, sets: Vec<VertexSet>) -> Result<Self> {
        check_family(&graph, &sets, "bramble")?;
        if let Some((i, j)) = untouching_pair(&graph, &sets) {
            return Err(Error::InvalidCertificate(format!(
                "sets {i} {:?} and {j} {:?} do not touch",
                sets[i], sets[j]
            )));
        }
        Ok(Bramble { graph, sets })
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }
}

/// Two sets touch when they share a vertex or an edge joins them.
pub fn touches(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> bool {
    a.intersects(b) || a.iter().any(|u| g.neighbors(u).iter().any(|&(w, _)| b.contains(w)))
}

/// First pair of sets that fails to touch.
pub fn untouching_pair(g: &Multigraph, sets: &[VertexSet]) -> Option<(usize, usize)> {
    (0..sets.len())
        .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !touches(g, &sets[i], &sets[j]))
}

/// Whether `sets` is a valid bramble on `g`. On failure the error names
/// the offending set or pair.
pub fn validate_bramble(g: &Arc<Multigraph>, sets: &[VertexSet]) -> Result<()> {
    Bramble::new(g.clone(), sets.to_vec()).map(|_| ())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingSet {
    pub size: u64,
    pub set: VertexSet,
}

/// Exact minimum set meeting every egg.
pub fn hitting_number(s: &Scramble) -> Result<HittingSet> {
    min_hitting_set(s.graph.vertex_count(), &s.eggs)
}

pub fn bramble_order(b: &Bramble) -> Result<HittingSet> {
    min_hitting_set(b.graph.vertex_count(), &b.sets)
}

fn to_mask(s: &VertexSet) -> u128 {
    s.iter().fold(0u128, |m, v| m | 1 << v)
}

fn from_mask(mut m: u128) -> VertexSet {
    let mut s = VertexSet::new();
    while m != 0 {
        s.insert(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    s
}

/// Drops every set that contains another one; those are hit for free.
fn minimal_masks(sets: &[VertexSet]) -> Vec<u128> {
    let mut masks: Vec<u128> = sets.iter().map(to_mask).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u128> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| k & !m == 0) {
            kept.push(m);
        }
    }
    kept
}

fn min_hitting_set(n: usize, sets: &[VertexSet]) -> Result<HittingSet> {
    if n > 128 {
        return Err(Error::Precondition(
            "hitting-set search supports at most 128 vertices".into(),
        ));
    }
    let eggs = minimal_masks(sets);
    let greedy = greedy_hitting(&eggs);
    let lower = packing_bound(&eggs, 0, 0);
    let mut best = greedy;
    for k in lower..greedy.count_ones() {
        if let Some(found) = hit_within(&eggs, 0, 0, k) {
            best = found;
            break;
        }
    }
    Ok(HittingSet {
        size: best.count_ones() as u64,
        set: from_mask(best),
    })
}

fn greedy_hitting(eggs: &[u128]) -> u128 {
    let mut chosen = 0u128;
    loop {
        let unhit: Vec<u128> = eggs.iter().copied().filter(|e| e & chosen == 0).collect();
        if unhit.is_empty() {
            return chosen;
        }
        let mut counts = [0u32; 128];
        for e in &unhit {
            let mut m = *e;
            while m != 0 {
                counts[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        let v = (0..128).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap_or(0);
        chosen |= 1 << v;
    }
}

/// Greedy count of unhit eggs with pairwise disjoint allowed parts; each
/// needs its own vertex.
fn packing_bound(eggs: &[u128], chosen: u128, forbidden: u128) -> u32 {
    let mut used = 0u128;
    let mut count = 0;
    for &e in eggs {
        if e & chosen != 0 {
            continue;
        }
        let allowed = e & !forbidden;
        if allowed & used == 0 {
            used |= allowed;
            count += 1;
        }
    }
    count
}

/// A hitting set of at most `k` more vertices avoiding `forbidden`.
fn hit_within(eggs: &[u128], chosen: u128, forbidden: u128, k: u32) -> Option<u128> {
    let mut branch: Option<u128> = None;
    for &e in eggs {
        if e & chosen != 0 {
            continue;
        }
        let allowed = e & !forbidden;
        if allowed == 0 {
            return None;
        }
        if branch.is_none_or(|b| allowed.count_ones() < b.count_ones()) {
            branch = Some(allowed);
        }
    }
    let Some(mut choices) = branch else {
        return Some(chosen);
    };
    if k == 0 || packing_bound(eggs, chosen, forbidden) > k {
        return None;
    }
    // single-vertex eggs force their vertex; larger ones branch, and a
    // rejected vertex stays rejected for the later branches
    let mut forbidden = forbidden;
    while choices != 0 {
        let v = choices & choices.wrapping_neg();
        choices &= choices - 1;
        if let Some(found) = hit_within(eggs, chosen | v, forbidden, k - 1) {
            return Some(found);
        }
        forbidden |= v;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EggCut {
    pub value: Order,
    /// Indices of two disjoint eggs realising the value.
    pub eggs: Option<(usize, usize)>,
}

/// Minimum over disjoint egg pairs of the edge cut separating them.
pub fn egg_cut_number(s: &Scramble) -> Result<EggCut> {
    egg_cut_number_with(s, Exec::default())
}

pub fn egg_cut_number_with(s: &Scramble, exec: Exec) -> Result<EggCut> {
    let g = &*s.graph;
    let eggs = &s.eggs;
    let outdeg: Vec<u64> = eggs.iter().map(|e| g.boundary_size(e)).collect();
    let masks: Vec<u128> = if g.vertex_count() <= 128 {
        eggs.iter().map(to_mask).collect()
    } else {
        Vec::new()
    };
    let disjoint = |i: usize, j: usize| {
        if masks.is_empty() {
            !eggs[i].intersects(&eggs[j])
        } else {
            masks[i] & masks[j] == 0
        }
    };
    // a cut never needs more edges than either egg's boundary
    let mut seed: Option<(u64, usize, usize)> = None;
    for i in 0..eggs.len() {
        for j in i + 1..eggs.len() {
            if disjoint(i, j) {
                let v = outdeg[i].min(outdeg[j]);
                if seed.is_none_or(|(b, _, _)| v < b) {
                    seed = Some((v, i, j));
                }
            }
        }
    }
    let Some((seed_value, si, sj)) = seed else {
        return Ok(EggCut {
            value: Order::Infinite,
            eggs: None,
        });
    };
    let best = AtomicU64::new(seed_value);
    let rows: Vec<usize> = (0..eggs.len()).collect();
    let per_row = exec.map(&rows, |&i| {
        let mut net = CutNetwork::new(g);
        let mut local: Option<(u64, usize)> = None;
        for j in i + 1..eggs.len() {
            if !disjoint(i, j) {
                continue;
            }
            let cap = best.load(Ordering::Relaxed);
            if cap == 0 {
                break;
            }
            let cut = net.min_cut(&eggs[i], &eggs[j], cap);
            if cut < cap {
                best.fetch_min(cut, Ordering::Relaxed);
                if local.is_none_or(|(b, _)| cut < b) {
                    local = Some((cut, j));
                }
            }
        }
        local.map(|(v, j)| (v, i, j))
    });
    let improved = per_row.into_iter().flatten().min();
    let (value, i, j) = match improved {
        Some(x) if x.0 < seed_value => x,
        _ => (seed_value, si, sj),
    };
    Ok(EggCut {
        value: Order::Finite(value),
        eggs: Some((i, j)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScrambleOrder {
    pub hitting_number: HittingSet,
    pub egg_cut: EggCut,
    pub order: u64,
}

/// `min(h, e)`; always finite since the hitting number is.
pub fn scramble_order(s: &Scramble) -> Result<ScrambleOrder> {
    scramble_order_with(s, Exec::default())
}

pub fn scramble_order_with(s: &Scramble, exec: Exec) -> Result<ScrambleOrder> {
    let h = hitting_number(s)?;
    let e = egg_cut_number_with(s, exec)?;
    let order = match e.value {
        Order::Finite(x) => x.min(h.size),
        Order::Infinite => h.size,
    };
    Ok(ScrambleOrder {
        hitting_number: h,
        egg_cut: e,
        order,
    })
}

/// A tree with every graph vertex placed on one of its nodes.
#[derive(Clone, Debug)]
pub struct TreeCutDecomposition {
    tree: Multigraph,
    placement: Vec<usize>,
}

impl TreeCutDecomposition {
    pub fn new(nodes: usize, links: &[(usize, usize)], placement: Vec<usize>) -> Result<Self> {
        let tree = Multigraph::from_edges(nodes, links)?;
        if !tree.is_simple() || !tree.is_connected() || tree.edge_count() + 1 != nodes as u64 {
            return Err(Error::InvalidCertificate("links must form a tree on the nodes".into()));
        }
        if let Some((v, &p)) = placement.iter().enumerate().find(|(_, &p)| p >= nodes) {
            return Err(Error::InvalidCertificate(format!(
                "vertex {v} placed on missing node {p}"
            )));
        }
        Ok(TreeCutDecomposition { tree, placement })
    }

    pub fn node_count(&self) -> usize {
        self.tree.vertex_count()
    }

    pub fn links(&self) -> Vec<(usize, usize)> {
        self.tree.edges().map(|(a, b, _)| (a, b)).collect()
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCutWidth {
    pub width: u64,
    /// `(a, b, edges routed through the link)`.
    pub links: Vec<(usize, usize, u64)>,
    /// Vertices plus tunneling edges, per node.
    pub nodes: Vec<u64>,
}

/// Largest link load or node load. Each edge is routed along the tree path
/// between its endpoints' nodes; it tunnels through the interior nodes of
/// that path.
pub fn treecut_width(tcd: &TreeCutDecomposition, g: &Multigraph) -> Result<TreeCutWidth> {
    if tcd.placement.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            got: tcd.placement.len(),
        });
    }
    let t = &tcd.tree;
    let k = t.vertex_count();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![0usize; k];
    let mut order = vec![0usize];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let a = order[i];
        for &(b, _) in t.neighbors(a) {
            if parent[b] == usize::MAX {
                parent[b] = a;
                depth[b] = depth[a] + 1;
                order.push(b);
            }
        }
        i += 1;
    }
    // link load is stored on the child end of each link
    let mut link_load = vec![0u64; k];
    let mut node_load = vec![0u64; k];
    for &p in &tcd.placement {
        node_load[p] += 1;
    }
    for (u, v, m) in g.edges() {
        let (mut a, mut b) = (tcd.placement[u], tcd.placement[v]);
        let (ends_a, ends_b) = (a, b);
        let m = m as u64;
        let mut passed = Vec::new();
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            link_load[a] += m;
            a = parent[a];
            passed.push(a);
        }
        // both sides can reach the meeting node
        passed.sort_unstable();
        passed.dedup();
        for x in passed {
            if x != ends_a && x != ends_b {
                node_load[x] += m;
            }
        }
    }
    let links: Vec<(usize, usize, u64)> = (1..k)
        .map(|c| (parent[c].min(c), parent[c].max(c), link_load[c]))
        .collect();
    let width = links
        .iter()
        .map(|l| l.2)
        .chain(node_load.iter().copied())
        .max()
        .unwrap_or(0);
    Ok(TreeCutWidth {
        width,
        links,
        nodes: node_load,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutdegreeCheck {
    pub holds: bool,
    pub subsets_checked: u64,
    pub smallest_outdegree: Option<u64>,
    /// First connected set found below the claimed bound.
    pub counterexample: Option<(VertexSet, u64)>,
}

/// Checks `outdeg(H) >= claimed` for every connected `H` with
/// `min_size <= |H| <= max_size`.
pub fn verify_outdegree_bounds(
    g: &Multigraph,
    min_size: usize,
    max_size: usize,
    claimed: u64,
) -> Result<OutdegreeCheck> {
    let n = g.vertex_count();
    if min_size == 0 || max_size >= n || min_size > max_size {
        return Err(Error::SizeOutOfRange {
            value: if min_size == 0 { 0 } else { max_size },
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    let mut checked = 0u64;
    let mut smallest: Option<u64> = None;
    for size in min_size..=max_size {
        let found = for_each_connected_subset(g, size, |h| {
            checked += 1;
            let out = g.boundary_size(h);
            smallest = Some(smallest.map_or(out, |s| s.min(out)));
            if out < claimed {
                ControlFlow::Break((h.clone(), out))
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if let Some(witness) = found {
            return Ok(OutdegreeCheck {
                holds: false,
                subsets_checked: checked,
                smallest_outdegree: smallest,
                counterexample: Some(witness),
            });
        }
    }
    Ok(OutdegreeCheck {
        holds: true,
        subsets_checked: checked,
        smallest_outdegree: smallest,
        counterexample: None,
    })
}

/// Wire format for certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CertificateJson {
    Scramble {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eggs: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        uniform: Option<usize>,
    },
    Bramble {
        sets: Vec<Vec<usize>>,
    },
    Treecut {
        nodes: usize,
        links: Vec<[usize; 2]>,
        placement: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Scramble(Scramble),
    Bramble(Bramble),
    TreeCut(TreeCutDecomposition),
}

fn sets_of(lists: &[Vec<usize>]) -> Vec<VertexSet> {
    lists.iter().map(|l| VertexSet::from(l.as_slice())).collect()
}

impl CertificateJson {
    pub fn bind(&self, g: &Arc<Multigraph>) -> Result<Certificate> {
        match self {
            CertificateJson::Scramble {
                eggs: Some(eggs),
                uniform: None,
            } => Ok(Certificate::Scramble(Scramble::new(g.clone(), sets_of(eggs))?)),
            CertificateJson::Scramble {
                eggs: None,
                uniform: Some(k),
            } => Ok(Certificate::Scramble(uniform_scramble(g, *k)?)),
            CertificateJson::Scramble { .. } => Err(Error::InvalidCertificate(
                "a scramble needs exactly one of \"eggs\" and \"uniform\"".into(),
            )),
            CertificateJson::Bramble { sets } => Ok(Certificate::Bramble(Bramble::new(g.clone(), sets_of(sets))?)),
            CertificateJson::Treecut {
                nodes,
                links,
                placement,
            } => {
                let links: Vec<(usize, usize)> = links.iter().map(|l| (l[0], l[1])).collect();
                let tcd = TreeCutDecomposition::new(*nodes, &links, placement.clone())?;
                if placement.len() != g.vertex_count() {
                    return Err(Error::LengthMismatch {
                        expected: g.vertex_count(),
                        got: placement.len(),
                    });
                }
                Ok(Certificate::TreeCut(tcd))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn arc(g: Multigraph) -> Arc<Multigraph> {
        Arc::new(g)
    }

    fn sets(lists: &[&[usize]]) -> Vec<VertexSet> {
        lists.iter().map(|l| VertexSet::from(*l)).collect()
    }

    fn brute_hitting(n: usize, eggs: &[VertexSet]) -> u64 {
        let masks: Vec<u32> = eggs.iter().map(|e| to_mask(e) as u32).collect();
        (0u32..1 << n)
            .filter(|h| masks.iter().all(|m| m & h != 0))
            .map(|h| h.count_ones() as u64)
            .min()
            .unwrap()
    }

    /// Deletes every edge subset and looks for two pieces that each hold a
    /// whole egg.
    fn brute_egg_cut(g: &Multigraph, eggs: &[VertexSet]) -> Order {
        let edges: Vec<(usize, usize)> = g
            .edges()
            .flat_map(|(u, v, m)| std::iter::repeat_n((u, v), m as usize))
            .collect();
        let n = g.vertex_count();
        let mut best = Order::Infinite;
        for mask in 0u32..1 << edges.len() {
            let kept: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 0)
                .map(|(_, &e)| e)
                .collect();
            let mut comp: Vec<usize> = (0..n).collect();
            fn find(c: &mut Vec<usize>, x: usize) -> usize {
                if c[x] != x {
                    let r = find(c, c[x]);
                    c[x] = r;
                }
                c[x]
            }
            for (u, v) in kept {
                let (a, b) = (find(&mut comp, u), find(&mut comp, v));
                comp[a] = b;
            }
            let holder: Vec<Option<usize>> = eggs
                .iter()
                .map(|e| {
                    let roots: Vec<usize> = e.iter().map(|v| find(&mut comp, v)).collect();
                    roots.iter().all(|&r| r == roots[0]).then(|| roots[0])
                })
                .collect();
            let split = holder.iter().flatten().any(|a| holder.iter().flatten().any(|b| a != b));
            if split {
                best = best.min(Order::Finite(mask.count_ones() as u64));
            }
        }
        best
    }

    #[test]
    fn cube_spoke_scramble() {
        let cube = arc(generators::cube());
        let s = Scramble::new(cube, sets(&[&[0, 4], &[1, 5], &[2, 6], &[3, 7]])).unwrap();
        let o = scramble_order(&s).unwrap();
        assert_eq!(o.hitting_number.size, 4);
        assert_eq!(o.egg_cut.value, Order::Finite(4));
        assert_eq!(o.order, 4);
    }

    #[test]
    fn icosahedron_edge_scramble() {
        let ico = arc(generators::icosahedron());
        let s = uniform_scramble(&ico, 2).unwrap();
        assert_eq!(s.eggs().len(), 30);
        let o = scramble_order(&s).unwrap();
        assert_eq!(o.hitting_number.size, 9);
        assert_eq!(o.egg_cut.value, Order::Finite(8));
        assert_eq!(o.order, 8);
    }

    #[test]
    fn overlapping_eggs_have_no_cut() {
        let k4 = arc(generators::complete(4).unwrap());
        let s = Scramble::new(k4, sets(&[&[0, 1], &[1, 2], &[1, 3]])).unwrap();
        assert_eq!(egg_cut_number(&s).unwrap().value, Order::Infinite);
        assert_eq!(scramble_order(&s).unwrap().order, 1);
    }

    #[test]
    fn invalid_families_are_rejected() {
        let c5 = arc(generators::cycle(5).unwrap());
        assert!(Scramble::new(c5.clone(), sets(&[&[0, 2]])).is_err());
        assert!(Scramble::new(c5.clone(), sets(&[&[0, 1], &[1, 0]])).is_err());
        assert!(Scramble::new(c5.clone(), vec![]).is_err());
        let err = Bramble::new(c5, sets(&[&[0], &[2]])).unwrap_err();
        assert!(err.to_string().contains("sets 0"));
    }

    #[test]
    fn bramble_orders() {
        let k4 = arc(generators::complete(4).unwrap());
        let b = Bramble::new(k4, sets(&[&[0], &[1], &[2], &[3]])).unwrap();
        assert_eq!(bramble_order(&b).unwrap().size, 4);

        // u = (0, 3), v = (1, 4), w = (2, 5) are the non-adjacent pairs
        let oct = arc(generators::octahedron());
        let b = Bramble::new(oct, sets(&[&[0], &[1], &[2], &[3, 4], &[3, 5], &[4, 5]])).unwrap();
        assert_eq!(bramble_order(&b).unwrap().size, 5);
    }

    #[test]
    fn hitting_matches_brute_force() {
        let g = arc(generators::cube());
        for k in 1..=5 {
            let s = uniform_scramble(&g, k).unwrap();
            assert_eq!(hitting_number(&s).unwrap().size, brute_hitting(8, s.eggs()), "k = {k}");
        }
        let p = arc(generators::complete_multipartite(&[2, 3, 4]).unwrap());
        for k in [2, 4, 6] {
            let s = uniform_scramble(&p, k).unwrap();
            assert_eq!(hitting_number(&s).unwrap().size, brute_hitting(9, s.eggs()));
        }
    }

    #[test]
    fn egg_cut_matches_brute_force() {
        let graphs = [
            generators::cycle(6).unwrap(),
            generators::path(5).unwrap(),
            generators::complete(4).unwrap(),
            Multigraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
            Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
        ];
        for g in graphs {
            let g = arc(g);
            for k in 1..g.vertex_count() {
                let s = uniform_scramble(&g, k).unwrap();
                assert_eq!(
                    egg_cut_number(&s).unwrap().value,
                    brute_egg_cut(&g, s.eggs()),
                    "{g:?} k = {k}"
                );
            }
        }
    }

    #[test]
    fn egg_cut_modes_agree() {
        let g = arc(generators::dodecahedron());
        let s = uniform_scramble(&g, 4).unwrap();
        let a = egg_cut_number_with(&s, Exec::Sequential).unwrap();
        let b = egg_cut_number_with(&s, Exec::Parallel).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn tree_cut_widths() {
        let c4 = generators::cycle(4).unwrap();
        let one = TreeCutDecomposition::new(1, &[], vec![0; 4]).unwrap();
        assert_eq!(treecut_width(&one, &c4).unwrap().width, 4);

        // path of three nodes; the edge 0-3 tunnels through the middle node
        let p = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let tcd = TreeCutDecomposition::new(3, &[(0, 1), (1, 2)], vec![0, 1, 1, 2]).unwrap();
        let w = treecut_width(&tcd, &p).unwrap();
        assert_eq!(w.nodes, vec![1, 3, 1]);
        assert_eq!(w.links, vec![(0, 1, 2), (1, 2, 2)]);

        let tcd = TreeCutDecomposition::new(3, &[(0, 1), (1, 2)], vec![0, 2, 2, 2]).unwrap();
        let w = treecut_width(&tcd, &p).unwrap();
        assert_eq!(w.nodes, vec![1, 2, 3]);

        assert!(TreeCutDecomposition::new(3, &[(0, 1)], vec![0]).is_err());
        assert!(TreeCutDecomposition::new(2, &[(0, 1)], vec![0, 5]).is_err());
    }

    #[test]
    fn outdegree_checks() {
        let dodeca = generators::dodecahedron();
        let tight = verify_outdegree_bounds(&dodeca, 6, 10, 7).unwrap();
        assert!(!tight.holds);
        let (h, out) = tight.counterexample.unwrap();
        assert_eq!(h.len(), 6);
        assert_eq!(out, 6);
        assert_eq!(out, 3 * 6 - 2 * dodeca.internal_edges(&h));
        assert!(verify_outdegree_bounds(&dodeca, 0, 3, 1).is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let text = r#"{"type": "treecut", "nodes": 2, "links": [[0, 1]], "placement": [0, 1, 1]}"#;
        let cert: CertificateJson = serde_json::from_str(text).unwrap();
        let g = arc(generators::path(3).unwrap());
        let Certificate::TreeCut(t) = cert.bind(&g).unwrap() else {
            panic!("wrong kind")
        };
        assert_eq!(treecut_width(&t, &g).unwrap().width, 2);
        let uniform: CertificateJson = serde_json::from_str(r#"{"type": "scramble", "uniform": 2}"#).unwrap();
        assert!(matches!(uniform.bind(&g).unwrap(), Certificate::Scramble(_)));
        let both: CertificateJson =
            serde_json::from_str(r#"{"type": "scramble", "uniform": 2, "eggs": [[0]]}"#).unwrap();
        assert!(both.bind(&g).is_err());
    }
}
