//! Graph families with fixed, documented vertex numbering.
//!
//! Platonic graphs follow the usual planar drawing: the outer ring is
//! numbered first, then each inner ring working inwards.

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Complete graph `K_n` on `0..n`.
pub fn complete(n: usize) -> Result<Multigraph> {
    positive(n, "n")?;
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Multigraph::from_edges(n, &edges)
}

/// Complete multipartite graph. Parts are numbered consecutively in the
/// order given: the first part holds `0..parts[0]`, and so on.
pub fn complete_multipartite(parts: &[usize]) -> Result<Multigraph> {
    if parts.is_empty() {
        return Err(Error::Precondition("at least one part is required".into()));
    }
    let mut owner = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        positive(p, "part size")?;
        owner.extend(std::iter::repeat_n(i, p));
    }
    let n = owner.len();
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| owner[u] != owner[v])
        .collect();
    Multigraph::from_edges(n, &edges)
}

/// Cycle `C_n`, `n >= 3`, with `i` adjacent to `i + 1 mod n`.
pub fn cycle(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(Error::SizeOutOfRange {
            value: n,
            min: 3,
            max: usize::MAX,
        });
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Multigraph::from_edges(n, &edges)
}

/// Path on `n` vertices, `i` adjacent to `i + 1`.
pub fn path(n: usize) -> Result<Multigraph> {
    positive(n, "n")?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Multigraph::from_edges(n, &edges)
}

/// Hypercube `Q_d`. Vertex `x` is the bit string of `x`; edges join strings
/// that differ in exactly one bit.
pub fn hypercube(d: u32) -> Result<Multigraph> {
    if d == 0 || d > 20 {
        return Err(Error::SizeOutOfRange {
            value: d as usize,
            min: 1,
            max: 20,
        });
    }
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|x| (0..d).map(move |b| (x, x ^ (1 << b))))
        .filter(|&(x, y)| x < y)
        .collect();
    Multigraph::from_edges(n, &edges)
}

/// Cartesian product `G □ H`. Vertex `(i, j)` with `i` in `G` and `j` in `H`
/// is numbered `i * |V(H)| + j`, so each fixed `i` is a copy of `H` and each
/// fixed `j` a copy of `G`.
pub fn cartesian_product(g: &Multigraph, h: &Multigraph) -> Multigraph {
    let (m, n) = (g.vertex_count(), h.vertex_count());
    let at = |i: usize, j: usize| i * n + j;
    let mut edges = Vec::new();
    for (a, b, mult) in g.edges() {
        for j in 0..n {
            edges.push((at(a, j), at(b, j), mult));
        }
    }
    for (a, b, mult) in h.edges() {
        for i in 0..m {
            edges.push((at(i, a), at(i, b), mult));
        }
    }
    Multigraph::from_weighted_edges(m * n, &edges).expect("product of valid graphs")
}

/// `K_4`: outer triangle `0, 1, 2` around the centre `3`.
pub fn tetrahedron() -> Multigraph {
    platonic(complete(4).expect("K_4"), 4, 6, 3)
}

/// Outer triangle `0, 1, 2`, inner triangle `3, 4, 5`. Inner vertex `3 + i`
/// is opposite (not adjacent to) outer vertex `i`, so the parts of
/// `K_{2,2,2}` are `{i, i + 3}`.
pub fn octahedron() -> Multigraph {
    let mut edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                edges.push((i, 3 + j));
            }
        }
    }
    platonic(Multigraph::from_edges(6, &edges).expect("octahedron"), 6, 12, 4)
}

/// Outer square `0..4`, inner square `4..8`, spoke `i -- i + 4`.
pub fn cube() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push((i, (i + 1) % 4));
        edges.push((4 + i, 4 + (i + 1) % 4));
        edges.push((i, i + 4));
    }
    platonic(Multigraph::from_edges(8, &edges).expect("cube"), 8, 12, 3)
}

/// Outer pentagon `0..5`, middle 10-cycle `5..15`, inner pentagon `15..20`.
/// Outer `i` meets middle `5 + 2i`; middle `6 + 2i` meets inner `15 + i`.
pub fn dodecahedron() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((6 + 2 * i, 15 + i));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    platonic(Multigraph::from_edges(20, &edges).expect("dodecahedron"), 20, 30, 3)
}

/// Outer triangle `0, 1, 2`, middle hexagon `3..9`, inner triangle `9..12`.
/// Outer `i` meets hexagon positions `2i - 1, 2i, 2i + 1`; inner `9 + i`
/// meets hexagon positions `2i, 2i + 1, 2i + 2` (positions mod 6).
pub fn icosahedron() -> Multigraph {
    let hex = |p: usize| 3 + p % 6;
    let mut edges = Vec::new();
    for i in 0..3 {
        edges.push((i, (i + 1) % 3));
        edges.push((9 + i, 9 + (i + 1) % 3));
        for p in [2 * i + 5, 2 * i, 2 * i + 1] {
            edges.push((i, hex(p)));
        }
        for p in [2 * i, 2 * i + 1, 2 * i + 2] {
            edges.push((9 + i, hex(p)));
        }
    }
    for p in 0..6 {
        edges.push((hex(p), hex(p + 1)));
    }
    platonic(Multigraph::from_edges(12, &edges).expect("icosahedron"), 12, 30, 5)
}

/// Looks up a named family, as used by the command line.
pub fn by_name(family: &str, size: Option<usize>) -> Result<Multigraph> {
    let need = || size.ok_or_else(|| Error::Precondition(format!("family `{family}` needs a size")));
    match family {
        "tetrahedron" => Ok(tetrahedron()),
        "octahedron" => Ok(octahedron()),
        "cube" => Ok(cube()),
        "dodecahedron" => Ok(dodecahedron()),
        "icosahedron" => Ok(icosahedron()),
        "complete" => complete(need()?),
        "cycle" => cycle(need()?),
        "path" => path(need()?),
        "hypercube" => hypercube(need()? as u32),
        other => Err(Error::Precondition(format!("unknown graph family `{other}`"))),
    }
}

fn platonic(g: Multigraph, v: usize, e: u64, k: u64) -> Multigraph {
    assert_eq!(g.vertex_count(), v);
    assert_eq!(g.edge_count(), e);
    assert_eq!(g.regular_degree(), Some(k));
    assert_eq!(g.genus().ok(), Some(e + 1 - v as u64));
    g
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition(format!("{what} must be positive")));
    }
    Ok(())
}

/// Backtracking isomorphism test for small graphs (a dozen or so vertices).
pub fn is_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<u64> = g.valences().to_vec();
    let mut dh: Vec<u64> = h.valences().to_vec();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_iso(g, h, 0, &mut map, &mut used)
}

fn extend_iso(g: &Multigraph, h: &Multigraph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    for cand in 0..h.vertex_count() {
        if used[cand] || g.valences()[v] != h.valences()[cand] {
            continue;
        }
        let consistent = (0..v).all(|u| g.multiplicity(u, v) == h.multiplicity(map[u], cand));
        if consistent {
            map[v] = cand;
            used[cand] = true;
            if extend_iso(g, h, v + 1, map, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}
