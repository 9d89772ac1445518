//! Complete linear systems: every effective divisor equivalent to a given one.

use std::collections::HashSet;

use crate::compositions::Compositions;
use crate::dhar::{dollar_game_winnable, q_reduce};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Multigraph;
use crate::subsets::for_each_connected_subset;
use crate::vertex_set::VertexSet;

/// All effective divisors equivalent to `d`, sorted lexicographically.
///
/// Starts from the reduced form and closes under legal firings of connected
/// proper subsets. Any two equivalent effective divisors are joined by a
/// chain of legal set-firings, and a legal set splits into legal connected
/// pieces, so the closure is the whole system.
pub fn linear_system(d: &Divisor) -> Result<Vec<Divisor>> {
    linear_system_with(d, Exec::default())
}

pub fn linear_system_with(d: &Divisor, exec: Exec) -> Result<Vec<Divisor>> {
    let g = d.graph();
    if d.degree() < 0 || !dollar_game_winnable(d)? {
        return Ok(Vec::new());
    }
    let start = q_reduce(d, 0)?.into_chips();
    let moves = firing_moves(g)?;

    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let expanded = exec.map(&frontier, |chips| {
            moves
                .iter()
                .filter(|m| m.is_legal(chips))
                .map(|m| m.apply(chips))
                .collect::<Vec<_>>()
        });
        frontier = expanded
            .into_iter()
            .flatten()
            .filter(|c| seen.insert(c.clone()))
            .collect();
    }
    let mut all: Vec<Vec<i64>> = seen.into_iter().collect();
    all.sort();
    Ok(all.into_iter().map(|c| Divisor::from_raw(g.clone(), c)).collect())
}

/// Same set, computed the slow way: every effective divisor of the right
/// degree is reduced and compared. Work is split into chunks of
/// compositions.
pub fn linear_system_filtered(d: &Divisor, exec: Exec) -> Result<Vec<Divisor>> {
    let g = d.graph();
    if d.degree() < 0 {
        return Ok(Vec::new());
    }
    let target = q_reduce(d, 0)?.into_chips();
    let mut out = Vec::new();
    let mut comps = Compositions::new(d.degree(), g.vertex_count());
    loop {
        let chunk: Vec<Vec<i64>> = comps.by_ref().take(8192).collect();
        if chunk.is_empty() {
            break;
        }
        let keep = exec.map(&chunk, |c| {
            let e = Divisor::from_raw(g.clone(), c.clone());
            q_reduce(&e, 0).map(|r| r.chips() == target.as_slice())
        });
        for (c, k) in chunk.into_iter().zip(keep) {
            if k? {
                out.push(Divisor::from_raw(g.clone(), c));
            }
        }
    }
    Ok(out)
}

struct Move {
    set: VertexSet,
    /// (vertex in set, edges leaving the set)
    losses: Vec<(usize, i64)>,
    /// (vertex outside set, edges entering)
    gains: Vec<(usize, i64)>,
}

impl Move {
    fn is_legal(&self, chips: &[i64]) -> bool {
        self.losses.iter().all(|&(u, k)| chips[u] >= k)
    }

    fn apply(&self, chips: &[i64]) -> Vec<i64> {
        let mut out = chips.to_vec();
        for &(u, k) in &self.losses {
            out[u] -= k;
        }
        for &(w, k) in &self.gains {
            out[w] += k;
        }
        out
    }
}

fn firing_moves(g: &Multigraph) -> Result<Vec<Move>> {
    let n = g.vertex_count();
    let mut moves = Vec::new();
    for k in 1..n {
        for_each_connected_subset(g, k, |s| {
            let mut losses = Vec::new();
            let mut gains = vec![0i64; n];
            for u in s {
                let mut out = 0;
                for &(w, m) in g.neighbors(u) {
                    if !s.contains(w) {
                        out += m as i64;
                        gains[w] += m as i64;
                    }
                }
                if out > 0 {
                    losses.push((u, out));
                }
            }
            moves.push(Move {
                set: s.clone(),
                losses,
                gains: gains.into_iter().enumerate().filter(|&(_, x)| x > 0).collect(),
            });
            std::ops::ControlFlow::<()>::Continue(())
        })?;
    }
    debug_assert!(moves.iter().all(|m| !m.set.is_empty()));
    Ok(moves)
}

/// Whether `d` has at most `val(v) - 1` chips on every vertex and no edge
/// joins two vertices that both sit at that maximum.
pub fn is_spread(d: &Divisor) -> bool {
    let g = d.graph();
    let cap = |v: usize| g.valences()[v] as i64 - 1;
    let at_cap = |v: usize| d.get(v) == cap(v);
    (0..g.vertex_count()).all(|v| d.get(v) >= 0 && d.get(v) <= cap(v))
        && g.edges().all(|(u, v, _)| !(at_cap(u) && at_cap(v)))
}

/// First spread member of the linear system of `d`. For effective `d` with
/// `deg(d) <= |E| - |V|` one always exists.
pub fn find_spread_representative(d: &Divisor) -> Result<Option<Divisor>> {
    let g = d.graph();
    if !d.is_effective() {
        return Err(Error::Precondition("divisor must be effective".into()));
    }
    let limit = g.edge_count() as i64 - g.vertex_count() as i64;
    if d.degree() > limit {
        return Err(Error::Precondition(format!(
            "degree {} exceeds |E| - |V| = {limit}",
            d.degree()
        )));
    }
    Ok(linear_system(d)?.into_iter().find(is_spread))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::generators;

    #[test]
    fn triangle_single_chip() {
        let c3 = Arc::new(generators::cycle(3).unwrap());
        let d = Divisor::point(c3.clone(), 0, 1).unwrap();
        let sys: Vec<Vec<i64>> = linear_system(&d)
            .unwrap()
            .into_iter()
            .map(Divisor::into_chips)
            .collect();
        // v0 - v1 has order 3 in the Jacobian, so the class is a single point
        assert_eq!(sys, vec![vec![1, 0, 0]]);
        assert_eq!(linear_system_filtered(&d, Exec::Sequential).unwrap().len(), 1);
        let two = Divisor::new(c3, vec![1, 1, 0]).unwrap();
        let sys: Vec<Vec<i64>> = linear_system(&two)
            .unwrap()
            .into_iter()
            .map(Divisor::into_chips)
            .collect();
        assert_eq!(sys, vec![vec![0, 0, 2], vec![1, 1, 0]]);
    }

    #[test]
    fn negative_degree_is_empty() {
        let c3 = Arc::new(generators::cycle(3).unwrap());
        let d = Divisor::new(c3, vec![1, -1, -1]).unwrap();
        assert!(linear_system(&d).unwrap().is_empty());
    }

    #[test]
    fn k4_three_chips_contains_the_spread() {
        let k4 = Arc::new(generators::complete(4).unwrap());
        let d = Divisor::point(k4.clone(), 0, 3).unwrap();
        let sys = linear_system(&d).unwrap();
        assert!(sys.iter().any(|e| e.chips() == [0, 1, 1, 1]));
        assert!(!sys.iter().any(|e| e.chips() == [1, 1, 1, 0]));
        assert!(sys.iter().all(|e| e.is_effective() && e.is_equivalent(&d).unwrap()));
    }

    #[test]
    fn agrees_with_filtering() {
        let cases: Vec<(Multigraph, Vec<i64>)> = vec![
            (generators::cube(), vec![2, 0, 0, 1, 0, 0, 1, 0]),
            (generators::octahedron(), vec![3, 0, 1, 0, 0, 0]),
            (generators::complete(5).unwrap(), vec![0, 0, 4, 0, 0]),
            (
                Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap(),
                vec![2, 1, 0],
            ),
            (generators::cycle(5).unwrap(), vec![0, 0, 0, 1, -1]),
            (generators::path(4).unwrap(), vec![1, 0, 1, 0]),
        ];
        for (g, chips) in cases {
            let d = Divisor::new(Arc::new(g), chips).unwrap();
            let fast = linear_system_with(&d, Exec::Sequential).unwrap();
            let slow = linear_system_filtered(&d, Exec::Parallel).unwrap();
            assert_eq!(fast, slow, "{d:?}");
            assert_eq!(linear_system_with(&d, Exec::Parallel).unwrap(), fast);
        }
    }

    #[test]
    fn spread_representatives() {
        let c3 = Arc::new(generators::cycle(3).unwrap());
        let zero = Divisor::zero(c3);
        assert_eq!(find_spread_representative(&zero).unwrap(), Some(zero.clone()));

        let c4 = Arc::new(generators::cycle(4).unwrap());
        let one = Divisor::point(c4, 0, 1).unwrap();
        assert!(matches!(find_spread_representative(&one), Err(Error::Precondition(_))));

        let ico = Arc::new(generators::icosahedron());
        let eight = Divisor::point(ico, 0, 8).unwrap();
        let s = find_spread_representative(&eight).unwrap().unwrap();
        assert!(is_spread(&s));
        assert!(s.chips().iter().all(|&c| c <= 4));
        assert!(s.is_equivalent(&eight).unwrap());
    }
}
