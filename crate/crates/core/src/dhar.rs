//! Burning, reduction, the Dollar Game and divisor rank.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::divisor::{canonical_divisor, fire_set_times, Divisor, FiringScript};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Multigraph;
use crate::vertex_set::VertexSet;

/// Result of one burning pass started at `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnOutcome {
    pub q: usize,
    pub burned: VertexSet,
    pub unburned: VertexSet,
    /// Vertices in the order they caught fire, starting with `q`.
    pub burn_order: Vec<usize>,
}

impl BurnOutcome {
    pub fn all_burned(&self) -> bool {
        self.unburned.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    DebtClearing,
    Burning,
}

/// One recorded set-firing, repeated `times` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiringStep {
    pub stage: Stage,
    pub set: VertexSet,
    pub times: i64,
    pub chips_after: Vec<i64>,
}

/// A full reduction run, kept for replay.
#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub q: usize,
    pub reduced: Divisor,
    pub steps: Vec<FiringStep>,
    /// Net firing script taking the input to `reduced`.
    pub script: FiringScript,
    pub final_burn: BurnOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankResult {
    pub rank: i64,
    /// Effective divisor of degree `rank + 1` whose removal is unwinnable.
    pub witness: Divisor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RiemannRoch {
    pub rank: i64,
    pub rank_of_complement: i64,
    pub degree: i64,
    pub genus: u64,
    pub holds: bool,
}

/// Burns from `q`. Requires no debt away from `q`.
pub fn burn(d: &Divisor, q: usize) -> Result<BurnOutcome> {
    let g = d.graph();
    g.check_vertex(q)?;
    if let Some(v) = (0..g.vertex_count()).find(|&v| v != q && d.get(v) < 0) {
        return Err(Error::DebtOffSink(v));
    }
    Ok(burn_raw(g, d.chips(), q))
}

pub(crate) fn burn_raw(g: &Multigraph, chips: &[i64], q: usize) -> BurnOutcome {
    let n = g.vertex_count();
    let mut burning_edges = vec![0i64; n];
    let mut burned = vec![false; n];
    let mut order = vec![q];
    burned[q] = true;
    let mut queue = VecDeque::from([q]);
    while let Some(u) = queue.pop_front() {
        for &(w, m) in g.neighbors(u) {
            if burned[w] {
                continue;
            }
            burning_edges[w] += m as i64;
            if burning_edges[w] > chips[w] {
                burned[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let burned_set: VertexSet = order.iter().copied().collect();
    BurnOutcome {
        q,
        unburned: burned_set.complement(n),
        burned: burned_set,
        burn_order: order,
    }
}

/// Moves all debt onto `q`. Vertices are handled farthest first; a vertex
/// in debt is paid by firing the breadth-first prefix before it, which
/// only ever adds chips to the vertices already handled.
fn clear_debt(
    g: &Multigraph,
    chips: &mut [i64],
    q: usize,
    mut trace: Option<&mut Vec<FiringStep>>,
    script: &mut [i64],
) -> Result<()> {
    let order = bfs_order(g, q);
    let mut pos = vec![0usize; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for i in (1..order.len()).rev() {
        let v = order[i];
        if chips[v] >= 0 {
            continue;
        }
        let into: i64 = g
            .neighbors(v)
            .iter()
            .filter(|&&(w, _)| pos[w] < i)
            .map(|&(_, m)| m as i64)
            .sum();
        let times = (-chips[v] + into - 1) / into;
        let prefix: VertexSet = order[..i].iter().copied().collect();
        fire_set_times(g, chips, &prefix, times)?;
        for u in &prefix {
            script[u] += times;
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(FiringStep {
                stage: Stage::DebtClearing,
                set: prefix,
                times,
                chips_after: chips.to_vec(),
            });
        }
    }
    Ok(())
}

fn bfs_order(g: &Multigraph, q: usize) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    seen[q] = true;
    let mut order = vec![q];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &(w, _) in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    order
}

/// Reduces in place. With `stop_when_paid` the loop ends as soon as `q` is
/// out of debt, which is all the Dollar Game needs.
fn reduce_raw(
    g: &Multigraph,
    chips: &mut [i64],
    q: usize,
    stop_when_paid: bool,
    mut trace: Option<&mut Vec<FiringStep>>,
    script: &mut [i64],
) -> Result<BurnOutcome> {
    clear_debt(g, chips, q, trace.as_deref_mut(), script)?;
    loop {
        let outcome = burn_raw(g, chips, q);
        if outcome.all_burned() || (stop_when_paid && chips[q] >= 0) {
            return Ok(outcome);
        }
        let u_set = &outcome.unburned;
        // fire the unburned set as many times as it stays legal
        let mut times = i64::MAX;
        for u in u_set {
            let out: i64 = g
                .neighbors(u)
                .iter()
                .filter(|&&(w, _)| !u_set.contains(w))
                .map(|&(_, m)| m as i64)
                .sum();
            if out > 0 {
                times = times.min(chips[u] / out);
            }
        }
        debug_assert!((1..i64::MAX).contains(&times));
        if stop_when_paid && chips[q] < 0 {
            // no point overshooting far beyond what q needs
            let gain: i64 = g
                .neighbors(q)
                .iter()
                .filter(|&&(w, _)| u_set.contains(w))
                .map(|&(_, m)| m as i64)
                .sum();
            if gain > 0 {
                times = times.min((-chips[q] + gain - 1) / gain);
            }
        }
        fire_set_times(g, chips, u_set, times)?;
        for u in u_set {
            script[u] += times;
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(FiringStep {
                stage: Stage::Burning,
                set: u_set.clone(),
                times,
                chips_after: chips.to_vec(),
            });
        }
    }
}

/// The `q`-reduced representative of the class of `d`.
pub fn q_reduce(d: &Divisor, q: usize) -> Result<Divisor> {
    let g = d.graph();
    g.check_vertex(q)?;
    let mut chips = d.chips().to_vec();
    let mut script = vec![0; g.vertex_count()];
    reduce_raw(g, &mut chips, q, false, None, &mut script)?;
    Ok(Divisor::from_raw(g.clone(), chips))
}

/// Like [`q_reduce`] but records every set-firing.
pub fn q_reduce_traced(d: &Divisor, q: usize) -> Result<Reduction> {
    let g = d.graph();
    g.check_vertex(q)?;
    let mut chips = d.chips().to_vec();
    let mut script = vec![0; g.vertex_count()];
    let mut steps = Vec::new();
    let final_burn = reduce_raw(g, &mut chips, q, false, Some(&mut steps), &mut script)?;
    Ok(Reduction {
        q,
        reduced: Divisor::from_raw(g.clone(), chips),
        steps,
        script: normalize_script(script),
        final_burn,
    })
}

/// Shifts a script so its minimum entry is zero; firing everything is a no-op.
fn normalize_script(mut script: Vec<i64>) -> FiringScript {
    let m = script.iter().copied().min().unwrap_or(0);
    script.iter_mut().for_each(|x| *x -= m);
    FiringScript { fire_count: script }
}

/// Whether firing moves can clear all debt. Decided by reducing toward
/// vertex 0.
pub fn dollar_game_winnable(d: &Divisor) -> Result<bool> {
    if d.degree() < 0 {
        return Ok(false);
    }
    if d.is_effective() {
        return Ok(true);
    }
    winnable_at(d.graph(), d.chips(), 0)
}

pub(crate) fn winnable_at(g: &Multigraph, chips: &[i64], q: usize) -> Result<bool> {
    let mut chips = chips.to_vec();
    let mut script = vec![0; g.vertex_count()];
    reduce_raw(g, &mut chips, q, true, None, &mut script)?;
    Ok(chips[q] >= 0)
}

/// Full Dollar Game run toward `q`, recording the moves. Exactly one of
/// "q paid" and "everything burned" ends the loop.
pub fn dollar_game(d: &Divisor, q: usize) -> Result<(bool, Reduction)> {
    let red = q_reduce_traced(d, q)?;
    Ok((red.reduced.get(q) >= 0, red))
}

/// `rank(d) >= 1`: every single chip of debt can be paid. For vertices
/// without chips the check reduces toward the vertex in debt.
pub(crate) fn has_rank_at_least_one(g: &Multigraph, chips: &[i64]) -> Result<bool> {
    let mut work = chips.to_vec();
    for v in 0..g.vertex_count() {
        if chips[v] >= 1 {
            continue;
        }
        work.copy_from_slice(chips);
        work[v] -= 1;
        if !winnable_at(g, &work, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `rank(d) >= r` by checking every effective removal of degree `r`.
pub(crate) fn has_rank_at_least(g: &Multigraph, chips: &[i64], r: i64) -> Result<bool> {
    match r {
        i64::MIN..=-1 => Ok(true),
        0 => {
            if chips.iter().sum::<i64>() < 0 {
                return Ok(false);
            }
            winnable_at(g, chips, 0)
        }
        1 => has_rank_at_least_one(g, chips),
        _ => Ok(first_unwinnable_removal(g, chips, r, Exec::Sequential)?.is_none()),
    }
}

const CHUNK: usize = 4096;

/// First degree-`r` effective `e` (lexicographic order) with `chips - e`
/// unwinnable.
fn first_unwinnable_removal(g: &Multigraph, chips: &[i64], r: i64, exec: Exec) -> Result<Option<Vec<i64>>> {
    let n = g.vertex_count();
    let mut comps = crate::compositions::Compositions::new(r, n);
    loop {
        let chunk: Vec<Vec<i64>> = comps.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(None);
        }
        let verdicts = exec.map(&chunk, |e| {
            let diff: Vec<i64> = chips.iter().zip(e).map(|(a, b)| a - b).collect();
            if diff.iter().sum::<i64>() < 0 {
                return Ok(false);
            }
            winnable_at(g, &diff, 0)
        });
        for (e, ok) in chunk.into_iter().zip(verdicts) {
            if !ok? {
                return Ok(Some(e));
            }
        }
    }
}

/// Baker-Norine rank by enumeration.
pub fn rank(d: &Divisor) -> Result<RankResult> {
    rank_with(d, Exec::default())
}

pub fn rank_with(d: &Divisor, exec: Exec) -> Result<RankResult> {
    let g = d.graph();
    if !dollar_game_winnable(d)? {
        return Ok(RankResult {
            rank: -1,
            witness: Divisor::zero(g.clone()),
        });
    }
    // removing a divisor of degree deg + 1 always leaves negative degree
    for r in 1..=d.degree() + 1 {
        if let Some(e) = first_unwinnable_removal(g, d.chips(), r, exec)? {
            return Ok(RankResult {
                rank: r - 1,
                witness: Divisor::from_raw(g.clone(), e),
            });
        }
    }
    unreachable!("a removal of degree deg + 1 is never winnable")
}

/// Compares `r(D) - r(K - D)` with `deg(D) + 1 - g`.
pub fn verify_riemann_roch(g: &Arc<Multigraph>, d: &Divisor) -> Result<RiemannRoch> {
    if !d.same_graph(&Divisor::zero(g.clone())) {
        return Err(Error::GraphMismatch);
    }
    let genus = g.genus()?;
    let k = canonical_divisor(g);
    let r = rank(d)?.rank;
    let rc = rank(&k.minus(d)?)?.rank;
    let degree = d.degree();
    Ok(RiemannRoch {
        rank: r,
        rank_of_complement: rc,
        degree,
        genus,
        holds: r - rc == degree + 1 - genus as i64,
    })
}
